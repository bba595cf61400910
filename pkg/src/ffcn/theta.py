"""Fourier-coefficient tables of the two theta series.

``ThetaO`` has coefficients M(d), the CM-point masses, which equal modified
Hurwitz class numbers.  ``ThetaLambda`` has coefficients Z_1 . Z(a), the
intersection numbers 2 * sum_t H(frak_d (t^2 - 4a)) of the base divisor with
the Hirzebruch-Zagier divisors.  Both are computed from the class-number side.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ConfigurationError,
    LevelAssumptionError,
    NotCoprimeError,
    NotMonicError,
    NotSquarefreeError,
    OddDegreeError,
    ResourceLimitError,
)
from .ff_core import Poly, factor, gcd, is_imaginary, is_nonpositive, is_squarefree, legendre_symbol
from .hurwitz import LevelPair, Strategy, hurwitz_H, hurwitz_H_zero

MAX_DEG_CEILING = 8


class TableKind(enum.Enum):
    THETA_O = "theta-o"
    THETA_LAMBDA = "theta-lambda"


def _primes(n: Poly) -> tuple[Poly, ...]:
    return factor(n).primes if n.deg > 0 else ()


@dataclass(frozen=True)
class ThetaOParams:
    levels: LevelPair

    def __post_init__(self):
        k = len(self.levels.minus_primes)
        if k == 0 or k % 2:
            raise ConfigurationError(
                f"n_minus must have a positive even number of prime factors, got {k}"
            )


@dataclass(frozen=True)
class ThetaLambdaParams:
    frak_d: Poly
    frak_n: Poly
    n_plus: Poly
    n_minus: Poly
    d_plus: Poly
    d_minus: Poly

    @property
    def levels(self) -> LevelPair:
        """(d+ n+, d- n-): the level of the Hurwitz numbers in the coefficients."""
        return LevelPair(self.d_plus * self.n_plus, self.d_minus * self.n_minus)

    @property
    def ramified_primes(self) -> tuple[Poly, ...]:
        return _primes(self.d_minus) + _primes(self.n_minus)


def split_level(frak_d: Poly, frak_n: Poly) -> ThetaLambdaParams:
    """Split frak_n by (frak_d / p) and frak_d by (frak_n / p)."""
    if frak_d.q != frak_n.q:
        raise ConfigurationError("frak_d and frak_n live over different fields")
    for name, x in (("frak_d", frak_d), ("frak_n", frak_n)):
        if not x.is_monic():
            raise NotMonicError(f"{name} = {x} must be monic")
        if not is_squarefree(x):
            raise NotSquarefreeError(f"{name} = {x} must be squarefree")
    if frak_d.deg % 2:
        raise OddDegreeError(f"frak_d = {frak_d} must have even degree")
    if not gcd(frak_d, frak_n).is_one():
        raise NotCoprimeError(f"gcd({frak_d}, {frak_n}) != 1")
    one = frak_d.ctx.one
    n_plus = n_minus = d_plus = d_minus = one
    for p in _primes(frak_n):
        if legendre_symbol(frak_d, p) == 1:
            n_plus = n_plus * p
        else:
            n_minus = n_minus * p
    for p in _primes(frak_d):
        if legendre_symbol(frak_n, p) == 1:
            d_plus = d_plus * p
        else:
            d_minus = d_minus * p
    if (d_minus * n_minus).deg == 0:
        raise LevelAssumptionError("deg(d- n-) = 0 violates the level assumption")
    params = ThetaLambdaParams(frak_d, frak_n, n_plus, n_minus, d_plus, d_minus)
    if len(params.ramified_primes) % 2:
        raise AssertionError("odd number of primes in d- n- contradicts reciprocity")
    return params


def mass(params: ThetaOParams, d: Poly) -> Fraction:
    """M(d): H(d) for imaginary d, H(0) for d = 0, and 0 otherwise."""
    if not d:
        return hurwitz_H_zero(params.levels)
    if not is_imaginary(d):
        return Fraction(0)
    return hurwitz_H(params.levels, d, Strategy.LOCAL_PRODUCT)


def t_support(a: Poly, extra: int = 0) -> list[Poly]:
    """All t with t^2 - 4a imaginary or zero.

    For deg t > ceil(deg a / 2) the leading term of t^2 - 4a is a square, so
    those t are excluded; ``extra`` widens the scan to check this.
    """
    if not a:
        raise ConfigurationError("t_support needs a != 0")
    ctx = a.ctx
    bound = math.ceil(int(a.deg) / 2) + extra
    four_a = a.scale(4)
    return [t for t in ctx.polys_upto(bound, include_zero=True) if is_nonpositive(t * t - four_a)]


def _theta_lambda_terms(params: ThetaLambdaParams, a: Poly) -> list[tuple[Poly, Fraction]]:
    levels = params.levels
    out = []
    for t in t_support(a):
        x = t * t - a.scale(4)
        val = hurwitz_H_zero(levels) if not x else hurwitz_H(levels, params.frak_d * x, Strategy.LOCAL_PRODUCT)
        out.append((t, val))
    return out


def intersection_number(params: ThetaLambdaParams, a: Poly) -> Fraction:
    """Z_1 . Z(a) = 2 * sum over t in t_support(a) of H(frak_d (t^2 - 4a))."""
    if not a:
        raise ConfigurationError("a = 0: use the constant term")
    return 2 * sum((v for _, v in _theta_lambda_terms(params, a)), Fraction(0))


@dataclass
class FourierTable:
    kind: TableKind
    q: int
    max_deg: int
    constant_term: Fraction
    coefficients: dict[Poly, Fraction] = field(default_factory=dict)

    def rows(self) -> list[tuple[Poly, Fraction]]:
        return sorted(self.coefficients.items(), key=lambda kv: kv[0].sort_key())


def _coefficient(args) -> tuple[Poly, Fraction]:
    params, x = args
    if isinstance(params, ThetaOParams):
        return x, mass(params, x)
    return x, intersection_number(params, x)


def theta_table(
    params: ThetaOParams | ThetaLambdaParams,
    max_deg: int,
    ceiling: int = MAX_DEG_CEILING,
    threads: int = 1,
) -> FourierTable:
    if max_deg < 0:
        raise ConfigurationError("max_deg must be >= 0")
    if max_deg > ceiling:
        raise ResourceLimitError(f"max_deg {max_deg} exceeds the ceiling {ceiling}")
    if isinstance(params, ThetaOParams):
        kind = TableKind.THETA_O
        levels = params.levels
        constant = hurwitz_H_zero(levels)
    else:
        kind = TableKind.THETA_LAMBDA
        levels = params.levels
        constant = -2 * hurwitz_H_zero(levels)
    ctx = levels.n_plus.ctx
    indices = list(ctx.polys_upto(max_deg))
    jobs = [(params, x) for x in indices]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_coefficient, jobs, chunksize=max(1, len(jobs) // (4 * threads))))
    else:
        results = [_coefficient(j) for j in jobs]
    coeffs = dict(sorted(results, key=lambda kv: kv[0].sort_key()))
    return FourierTable(kind, ctx.q, max_deg, constant, coeffs)


@dataclass(frozen=True)
class QPower:
    """The exact real number base ** exponent with a non-integral exponent."""

    base: int
    exponent: Fraction

    def __float__(self) -> float:
        return float(self.base) ** float(self.exponent)

    def __str__(self) -> str:
        return f"{self.base}^({self.exponent})"


def bessel(a: Poly, s: Fraction | int, y_ord: int) -> Fraction | QPower:
    """Truncated Bessel factor: q^(-y_ord s / 2) when deg a + 2 <= y_ord, else 0.

    The zero polynomial is treated as having degree 0 here.
    """
    s = Fraction(s)
    deg_a = int(a.deg) if a else 0
    if deg_a + 2 > y_ord:
        return Fraction(0)
    e = -Fraction(y_ord) * s / 2
    if e.denominator == 1:
        return Fraction(a.q) ** int(e)
    return QPower(a.q, e)


__all__ = [
    "MAX_DEG_CEILING",
    "FourierTable",
    "QPower",
    "TableKind",
    "ThetaLambdaParams",
    "ThetaOParams",
    "bessel",
    "intersection_number",
    "mass",
    "split_level",
    "t_support",
    "theta_table",
]
