"""Modified Hurwitz class numbers H^{n+,n-}(d).

Two independent routes are provided: the defining sum over square divisors
c^2 | d, and the Euler-product form built from the fundamental discriminant
d0 and the local unit indices.  They must agree exactly.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DomainError, NotCoprimeError, NotMonicError, NotSquarefreeError
from .ff_core import Poly, bracket_symbol, factor, gcd, is_imaginary, is_squarefree, squarefree_decompose
from .quad_class import class_data, class_number_maximal, unit_index_local

# Exact rationals throughout; H(0) has denominator dividing q^2 - 1, H(d) for
# d != 0 has denominator dividing q + 1.
HurwitzValue = Fraction


class Strategy(enum.Enum):
    DEFINITION_SUM = "definition"
    LOCAL_PRODUCT = "product"


@dataclass(frozen=True)
class LevelPair:
    """Squarefree coprime monic levels n+ (split primes) and n- (ramified primes)."""

    n_plus: Poly
    n_minus: Poly

    def __post_init__(self):
        if self.n_plus.q != self.n_minus.q:
            raise DomainError("levels live over different fields")
        for name, n in (("n_plus", self.n_plus), ("n_minus", self.n_minus)):
            if not n.is_monic():
                raise NotMonicError(f"{name} = {n} must be monic")
            if not is_squarefree(n):
                raise NotSquarefreeError(f"{name} = {n} must be squarefree")
        if not gcd(self.n_plus, self.n_minus).is_one():
            raise NotCoprimeError(f"gcd({self.n_plus}, {self.n_minus}) != 1")

    @property
    def q(self) -> int:
        return self.n_plus.q

    @property
    def plus_primes(self) -> tuple[Poly, ...]:
        return factor(self.n_plus).primes if self.n_plus.deg > 0 else ()

    @property
    def minus_primes(self) -> tuple[Poly, ...]:
        return factor(self.n_minus).primes if self.n_minus.deg > 0 else ()

    def sign_at(self, p: Poly) -> int:
        """+1 if p | n+, -1 if p | n-, 0 otherwise."""
        if self.n_plus.deg > 0 and p.divides(self.n_plus):
            return 1
        if self.n_minus.deg > 0 and p.divides(self.n_minus):
            return -1
        return 0


def _monic_divisors(f: Poly) -> list[Poly]:
    if f.is_constant():
        return [f.ctx.one]
    fac = factor(f)
    out = []
    for exps in product(*(range(e + 1) for _, e in fac.factors)):
        c = f.ctx.one
        for (p, _), k in zip(fac.factors, exps):
            c = c * p**k
        out.append(c)
    return sorted(out, key=Poly.sort_key)


def level_weight(levels: LevelPair, d: Poly) -> int:
    """prod_{p | n+} (1 + {d/p}) * prod_{p | n-} (1 - {d/p})."""
    w = 1
    for p in levels.plus_primes:
        w *= 1 + bracket_symbol(d, p)
    for p in levels.minus_primes:
        w *= 1 - bracket_symbol(d, p)
    return w


def local_e(levels: LevelPair, d0: Poly, p: Poly, level: int) -> int:
    """e_p(l) = 1 +- {d0 p^(2l) / p} at level primes, 1 elsewhere."""
    s = levels.sign_at(p)
    if s == 0:
        return 1
    return 1 + s * bracket_symbol(d0 * p ** (2 * level), p)


def local_factor(levels: LevelPair, d0: Poly, p: Poly, c: int) -> int:
    """sum_{l=0}^{c} [O_{d0} : O_{d0 p^2l}]_units * e_p(l)."""
    return sum(unit_index_local(d0, p, k) * local_e(levels, d0, p, k) for k in range(c + 1))


def _check_d(levels: LevelPair, d: Poly) -> None:
    if d.q != levels.q:
        raise DomainError("d and levels live over different fields")
    if not d:
        raise DomainError("d = 0: use hurwitz_H_zero")
    if not is_imaginary(d):
        raise DomainError(f"{d} is not imaginary")


@functools.lru_cache(maxsize=65536)
def _definition_sum(levels: LevelPair, d: Poly) -> Fraction:
    _, f = squarefree_decompose(d)
    total = Fraction(0)
    for c in _monic_divisors(f):
        dc = d.exact_div(c * c)
        wt = level_weight(levels, dc)
        if wt:
            total += class_data(dc).h_over_w * wt
    return total


@functools.lru_cache(maxsize=65536)
def _local_product(levels: LevelPair, d: Poly) -> Fraction:
    d0, f = squarefree_decompose(d)
    cond = {} if f.is_constant() else dict(factor(f).factors)
    primes = set(cond) | set(levels.plus_primes) | set(levels.minus_primes)
    val = class_number_maximal(d0).h_over_w
    for p in sorted(primes, key=Poly.sort_key):
        val *= local_factor(levels, d0, p, cond.get(p, 0))
        if not val:
            break
    return val


def hurwitz_H(levels: LevelPair, d: Poly, strategy: Strategy = Strategy.DEFINITION_SUM) -> Fraction:
    _check_d(levels, d)
    if strategy is Strategy.DEFINITION_SUM:
        val = _definition_sum(levels, d)
    else:
        val = _local_product(levels, d)
    if (levels.q + 1) % val.denominator:
        raise AssertionError(f"H({d}) = {val} has denominator not dividing q+1")
    return val


def _level_product(levels: LevelPair) -> int:
    prod_ = 1
    for p in levels.plus_primes:
        prod_ *= p.norm + 1
    for p in levels.minus_primes:
        prod_ *= p.norm - 1
    return prod_


def hurwitz_H_zero(levels: LevelPair) -> Fraction:
    q = levels.q
    return -Fraction(_level_product(levels), q * q - 1)


def tamagawa_unit_volume(levels: LevelPair) -> Fraction:
    q = levels.q
    return Fraction((q - 1) * (q * q - 1), _level_product(levels))


__all__ = [
    "HurwitzValue",
    "LevelPair",
    "Strategy",
    "hurwitz_H",
    "hurwitz_H_zero",
    "level_weight",
    "local_e",
    "local_factor",
    "tamagawa_unit_volume",
]
