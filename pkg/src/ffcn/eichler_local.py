"""Local optimal-embedding numbers of quadratic orders into quaternion orders.

A local quadratic order is O(l) = O_L + pi^l O_E inside a separable quadratic
algebra E over a local field L.  The quaternion side is the maximal order of
the division algebra or of M_2(L), or the hereditary (Iwahori) order of M_2(L).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .ff_core import Poly, bracket_symbol


class QuadKind(enum.Enum):
    SPLIT_ETALE = "split"
    UNRAMIFIED_FIELD = "inert"
    RAMIFIED_FIELD = "ramified"

    @property
    def symbol(self) -> int:
        """The value of {d0/p} for this kind."""
        return {"split": 1, "inert": -1, "ramified": 0}[self.value]


class Algebra(enum.Enum):
    DIVISION = "division"
    MATRIX = "matrix"


class OrderType(enum.Enum):
    MAXIMAL = "maximal"
    HEREDITARY = "hereditary"


@dataclass(frozen=True)
class LocalQuadKind:
    kind: QuadKind
    residue_norm: int

    def __post_init__(self):
        if self.residue_norm < 3 or self.residue_norm % 2 == 0:
            raise DomainError(f"residue norm {self.residue_norm} must be an odd prime power")


@dataclass(frozen=True)
class LocalOrderSpec:
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise DomainError("level must be >= 0")

    @property
    def is_maximal(self) -> bool:
        return self.level == 0


@dataclass(frozen=True)
class LocalQuatKind:
    algebra: Algebra
    order: OrderType

    def __post_init__(self):
        if self.order is OrderType.HEREDITARY and self.algebra is Algebra.DIVISION:
            raise DomainError("hereditary orders are only considered in M_2(L)")


@dataclass(frozen=True)
class OrbitalIntegral:
    """A dimensionless local sum with its volume-ratio prefactor left symbolic."""

    value: Fraction
    prefactor: str = "vol(O_D^x)/vol(O_E^x)"


def local_kind_at(d0: Poly, p: Poly) -> LocalQuadKind:
    """Kind of k_p(sqrt d0) for squarefree d0 and a monic prime p."""
    s = bracket_symbol(d0, p)
    kind = {1: QuadKind.SPLIT_ETALE, -1: QuadKind.UNRAMIFIED_FIELD, 0: QuadKind.RAMIFIED_FIELD}[s]
    return LocalQuadKind(kind, p.norm)


def embed_count(e_kind: LocalQuadKind, spec: LocalOrderSpec, d_kind: LocalQuatKind) -> int:
    """Number of optimal embeddings of O(l) into the quaternion order, up to
    conjugation by its unit group."""
    k = e_kind.kind
    ell = spec.level
    if d_kind.algebra is Algebra.DIVISION:
        if ell >= 1 or k is QuadKind.SPLIT_ETALE:
            return 0
        return 2 if k is QuadKind.UNRAMIFIED_FIELD else 1
    if d_kind.order is OrderType.MAXIMAL:
        return 1
    if ell >= 1:
        return 2
    return {QuadKind.UNRAMIFIED_FIELD: 0, QuadKind.RAMIFIED_FIELD: 1, QuadKind.SPLIT_ETALE: 2}[k]


def _unit_index(norm: int, symbol: int, ell: int) -> int:
    return 1 if ell == 0 else norm ** (ell - 1) * (norm - symbol)


def local_orbital_sum(e_kind: LocalQuadKind, c_x: int, d_kind: LocalQuatKind, d0_symbol: int) -> OrbitalIntegral:
    """sum_{l=0}^{c_x} [O_E^x : O(l)^x] * e(O(l), O_D)."""
    if c_x < 0:
        raise DomainError("c_x must be >= 0")
    if d0_symbol != e_kind.kind.symbol:
        raise DomainError(f"symbol {d0_symbol} inconsistent with {e_kind.kind.value} algebra")
    n = e_kind.residue_norm
    total = sum(
        _unit_index(n, d0_symbol, ell) * embed_count(e_kind, LocalOrderSpec(ell), d_kind)
        for ell in range(c_x + 1)
    )
    return OrbitalIntegral(Fraction(total))


def archimedean_combination(e_kind: LocalQuadKind) -> Fraction:
    """Weight 1/e(E/L) when E is a field, 0 when E is split."""
    return {
        QuadKind.SPLIT_ETALE: Fraction(0),
        QuadKind.UNRAMIFIED_FIELD: Fraction(1),
        QuadKind.RAMIFIED_FIELD: Fraction(1, 2),
    }[e_kind.kind]


__all__ = [
    "Algebra",
    "LocalOrderSpec",
    "LocalQuadKind",
    "LocalQuatKind",
    "OrbitalIntegral",
    "OrderType",
    "QuadKind",
    "archimedean_combination",
    "embed_count",
    "local_kind_at",
    "local_orbital_sum",
]
