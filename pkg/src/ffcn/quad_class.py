"""Class numbers h(d) and unit indices w(d) of the orders A[sqrt d], d imaginary.

The maximal order is handled through the completed L-value at s = 1,

    h(O_K) = L(1) * (2/e) * q^((deg d0 + e - 1)/2 - 1)      (w = 1),

where e = e_inf is the ramification index at infinity and L(1) includes the
Euler factor (1 + 1/q)^-1 at an inert infinite place.  Non-maximal orders
pick up the local conductor indices ||p||^(l-1) (||p|| - {d0/p}).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import DomainError, SplitAlgebraError
from .ff_core import (
    InfinityType,
    Poly,
    _require_prime,
    bracket_symbol,
    factor,
    infinity_type,
    is_squarefree,
    squarefree_decompose,
)


@dataclass(frozen=True)
class QuadDiscriminant:
    d: Poly
    d0: Poly
    f: Poly
    itype: InfinityType
    genus: int | None  # None for constant d0 (constant-field extension)
    disc_norm: int

    @property
    def constant_field_case(self) -> bool:
        return self.d0.is_constant()


@dataclass(frozen=True)
class ClassData:
    h: int
    w: int

    @property
    def h_over_w(self) -> Fraction:
        return Fraction(self.h, self.w)


def quad_discriminant(d: Poly) -> QuadDiscriminant:
    if not d:
        raise DomainError("d = 0 has no quadratic order")
    itype = infinity_type(d)
    if not itype.is_imaginary:
        raise DomainError(f"{d} is real (infinity splits), not imaginary")
    d0, f = squarefree_decompose(d)
    if d0.is_constant():
        genus = None
    elif itype is InfinityType.RAMIFIED:
        genus = (int(d0.deg) - 1) // 2
    else:
        genus = (int(d0.deg) - 2) // 2
    return QuadDiscriminant(d, d0, f, itype, genus, d.q ** max(int(d0.deg), 0))


def _check_fundamental(d0: Poly) -> InfinityType:
    if not d0:
        raise DomainError("d0 = 0")
    if not is_squarefree(d0):
        raise DomainError(f"{d0} is not squarefree")
    itype = infinity_type(d0)
    if not itype.is_imaginary:
        raise DomainError(f"{d0} is real (infinity splits), not imaginary")
    return itype


def chi(d0: Poly, m: Poly) -> int:
    """The quadratic character of k(sqrt d0) at a monic m (Jacobi symbol)."""
    return kernels.jacobi(list(d0.coeffs), list(m.coeffs), d0.q)


def character_sums(d0: Poly, nmax: int) -> list[int]:
    """[S_0, ..., S_nmax], S_n = sum of chi(d0, m) over monic m of degree n."""
    return kernels.char_sums(d0.q, list(d0.coeffs), nmax)


@functools.lru_cache(maxsize=4096)
def dirichlet_L_one(d0: Poly) -> Fraction:
    """Completed L(1, chi_K) for K = k(sqrt d0), d0 squarefree imaginary
    non-constant."""
    itype = _check_fundamental(d0)
    if d0.is_constant():
        raise DomainError("L-value not defined here for constant d0")
    q = d0.q
    n = int(d0.deg)
    sums = character_sums(d0, n - 1)
    val = sum(Fraction(s, q**k) for k, s in enumerate(sums))
    if itype is InfinityType.INERT:
        val *= Fraction(q, q + 1)
    return val


@functools.lru_cache(maxsize=4096)
def class_number_maximal(d0: Poly) -> ClassData:
    itype = _check_fundamental(d0)
    q = d0.q
    if d0.is_constant():
        # O_K = F_{q^2}[t] is Euclidean
        return ClassData(1, q + 1)
    e = itype.e_inf
    exp = (int(d0.deg) + e - 1) // 2 - 1
    h = dirichlet_L_one(d0) * Fraction(2, e) * Fraction(q) ** exp
    if h.denominator != 1 or h < 1:
        raise AssertionError(f"class number formula gave {h} for d0 = {d0}")
    return ClassData(int(h), 1)


def unit_index_local(d0: Poly, p: Poly, level: int) -> int:
    """#(O_{d0,p}^x / O_{d0 p^(2 level),p}^x)."""
    _require_prime(p)
    if level < 0:
        raise DomainError("level must be >= 0")
    if level == 0:
        return 1
    n = p.norm
    return n ** (level - 1) * (n - bracket_symbol(d0, p))


@functools.lru_cache(maxsize=65536)
def class_data(d: Poly) -> ClassData:
    """(h(d), w(d)) for the order A[sqrt d], d imaginary."""
    if not d:
        raise DomainError("d = 0: use the H(0) convention instead")
    disc = quad_discriminant(d)
    base = class_number_maximal(disc.d0)
    ratio = base.h_over_w
    if not disc.f.is_one():
        for p, c in factor(disc.f).factors:
            ratio *= unit_index_local(disc.d0, p, c)
    w = d.q + 1 if d.is_constant() else 1
    h = ratio * w
    if h.denominator != 1:
        raise AssertionError(f"h(d) = {h} is not an integer for d = {d}")
    return ClassData(int(h), w)


__all__ = [
    "ClassData",
    "QuadDiscriminant",
    "SplitAlgebraError",
    "character_sums",
    "chi",
    "class_data",
    "class_number_maximal",
    "dirichlet_L_one",
    "quad_discriminant",
    "unit_index_local",
]
