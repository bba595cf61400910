from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F3, F5, polys
from ffcn.eichler_local import (
    Algebra,
    LocalOrderSpec,
    LocalQuadKind,
    LocalQuatKind,
    OrderType,
    QuadKind,
    archimedean_combination,
    embed_count,
    local_kind_at,
    local_orbital_sum,
)
from ffcn.errors import DomainError
from ffcn.ff_core import factor, is_imaginary, squarefree_decompose
from ffcn.hurwitz import LevelPair, local_factor

DIV_MAX = LocalQuatKind(Algebra.DIVISION, OrderType.MAXIMAL)
MAT_MAX = LocalQuatKind(Algebra.MATRIX, OrderType.MAXIMAL)
MAT_HER = LocalQuatKind(Algebra.MATRIX, OrderType.HEREDITARY)


def K(kind, norm=3):
    return LocalQuadKind(kind, norm)


def test_embed_examples():
    assert embed_count(K(QuadKind.UNRAMIFIED_FIELD), LocalOrderSpec(0), DIV_MAX) == 2
    assert embed_count(K(QuadKind.RAMIFIED_FIELD), LocalOrderSpec(1), DIV_MAX) == 0
    assert embed_count(K(QuadKind.UNRAMIFIED_FIELD), LocalOrderSpec(0), MAT_HER) == 0


def test_table_complete():
    for kind, ell, quat in product(QuadKind, range(4), (DIV_MAX, MAT_MAX, MAT_HER)):
        assert embed_count(K(kind), LocalOrderSpec(ell), quat) in (0, 1, 2)
    with pytest.raises(DomainError):
        LocalQuatKind(Algebra.DIVISION, OrderType.HEREDITARY)


def test_spec_validation():
    with pytest.raises(DomainError):
        LocalOrderSpec(-1)
    with pytest.raises(DomainError):
        LocalQuadKind(QuadKind.SPLIT_ETALE, 4)


def test_orbital_sum_examples():
    assert local_orbital_sum(K(QuadKind.SPLIT_ETALE), 0, MAT_MAX, 1).value == 1
    assert local_orbital_sum(K(QuadKind.RAMIFIED_FIELD), 1, MAT_MAX, 0).value == 4
    assert local_orbital_sum(K(QuadKind.UNRAMIFIED_FIELD), 1, DIV_MAX, -1).value == 2
    assert "vol" in local_orbital_sum(K(QuadKind.SPLIT_ETALE), 0, MAT_MAX, 1).prefactor


def test_orbital_sum_rejects_bad_symbol():
    with pytest.raises(DomainError):
        local_orbital_sum(K(QuadKind.SPLIT_ETALE), 1, MAT_MAX, -1)
    with pytest.raises(DomainError):
        local_orbital_sum(K(QuadKind.SPLIT_ETALE), -1, MAT_MAX, 1)


def test_archimedean_weights():
    assert archimedean_combination(K(QuadKind.SPLIT_ETALE)) == 0
    assert archimedean_combination(K(QuadKind.UNRAMIFIED_FIELD)) == 1
    assert archimedean_combination(K(QuadKind.RAMIFIED_FIELD)) == Fraction(1, 2)


@given(st.data())
def test_orbital_sum_matches_hurwitz_local_factor(data):
    """The bracketed local factor of the Euler product is the orbital sum with
    matrix-maximal, hereditary or division-maximal orders at p."""
    ctx = data.draw(st.sampled_from([F3, F5]))
    d = data.draw(polys(ctx, 4, nonzero=True))
    if not is_imaginary(d) or d.is_constant():
        return
    d0, f = squarefree_decompose(d)
    p = data.draw(st.sampled_from(factor(d).primes))
    c = f.ord(p)
    kind = local_kind_at(d0, p)
    role = data.draw(st.sampled_from(["none", "plus", "minus"]))
    one = ctx.one
    levels = {"none": LevelPair(one, one), "plus": LevelPair(p, one), "minus": LevelPair(one, p)}[role]
    quat = {"none": MAT_MAX, "plus": MAT_HER, "minus": DIV_MAX}[role]
    got = local_orbital_sum(kind, c, quat, kind.kind.symbol).value
    assert got == local_factor(levels, d0, p, c)
