from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F3, F5, polys
from ffcn.errors import DomainError, NotCoprimeError, NotMonicError, NotSquarefreeError
from ffcn.ff_core import gcd, is_imaginary, is_squarefree, squarefree_decompose
from ffcn.hurwitz import (
    LevelPair,
    Strategy,
    hurwitz_H,
    hurwitz_H_zero,
    local_e,
    local_factor,
    tamagawa_unit_volume,
)


def L(np, nm, ctx=F3):
    return LevelPair(ctx.parse(np), ctx.parse(nm))


@pytest.mark.parametrize(
    "levels, d, expected",
    [
        (("1", "1"), "2*t", 1),
        (("1", "1"), "t^3", 4),
        (("t", "1"), "2*t", 1),
    ],
)
@pytest.mark.parametrize("strategy", list(Strategy))
def test_hurwitz_examples(levels, d, expected, strategy):
    assert hurwitz_H(L(*levels), F3.parse(d), strategy) == expected


@pytest.mark.parametrize(
    "levels, h0, vol",
    [
        (("1", "1"), Fraction(-1, 8), 16),
        (("1", "t^2+t"), Fraction(-1, 2), 4),
        (("t", "t+1"), Fraction(-1), 2),
        (("t", "1"), Fraction(-1, 2), 4),
    ],
)
def test_h_zero_and_volume(levels, h0, vol):
    lv = L(*levels)
    assert hurwitz_H_zero(lv) == h0
    assert tamagawa_unit_volume(lv) == vol
    assert tamagawa_unit_volume(lv) * hurwitz_H_zero(lv) == -2


def test_level_validation():
    with pytest.raises(NotMonicError):
        L("2*t", "1")
    with pytest.raises(NotSquarefreeError):
        L("t^2", "1")
    with pytest.raises(NotCoprimeError):
        L("t", "t^2+t")


def test_hurwitz_domain_errors():
    lv = L("1", "1")
    with pytest.raises(DomainError):
        hurwitz_H(lv, F3.zero)
    with pytest.raises(DomainError):
        hurwitz_H(lv, F3.parse("t^2+1"))
    with pytest.raises(DomainError):
        hurwitz_H(lv, F5.t)


@st.composite
def levels_and_d(draw):
    ctx = draw(st.sampled_from([F3, F5]))
    np_ = draw(polys(ctx, 2, monic=True))
    nm = draw(polys(ctx, 2, monic=True))
    if draw(st.booleans()):
        c = draw(polys(ctx, 1, monic=True))
        d = draw(polys(ctx, 2, nonzero=True)) * c * c
    else:
        d = draw(polys(ctx, 4, nonzero=True))
    return np_, nm, d


@given(levels_and_d())
def test_strategies_agree(args):
    np_, nm, d = args
    if not (is_squarefree(np_) and is_squarefree(nm) and gcd(np_, nm).is_one() and is_imaginary(d)):
        return
    lv = LevelPair(np_, nm)
    a = hurwitz_H(lv, d, Strategy.DEFINITION_SUM)
    b = hurwitz_H(lv, d, Strategy.LOCAL_PRODUCT)
    assert a == b
    assert a >= 0
    assert (d.q + 1) % a.denominator == 0


@given(levels_and_d())
def test_local_factors_in_range(args):
    np_, nm, d = args
    if not (is_squarefree(np_) and is_squarefree(nm) and gcd(np_, nm).is_one() and is_imaginary(d)):
        return
    lv = LevelPair(np_, nm)
    d0, _ = squarefree_decompose(d)
    for p in lv.plus_primes + lv.minus_primes:
        for ell in range(3):
            assert local_e(lv, d0, p, ell) in (0, 1, 2)


def test_local_factor_matches_theta_cube():
    # d = t^3 = t * t^2: bracketed sum 1 + 3 * 1 at p = t
    lv = L("1", "1")
    assert local_factor(lv, F3.t, F3.t, 1) == 4
