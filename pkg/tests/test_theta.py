from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F3, F5, polys
from ffcn.errors import (
    ConfigurationError,
    LevelAssumptionError,
    NotCoprimeError,
    NotMonicError,
    NotSquarefreeError,
    OddDegreeError,
    ResourceLimitError,
)
from ffcn.ff_core import is_imaginary
from ffcn.hurwitz import LevelPair, hurwitz_H, hurwitz_H_zero
from ffcn.theta import (
    QPower,
    TableKind,
    ThetaOParams,
    bessel,
    intersection_number,
    mass,
    split_level,
    t_support,
    theta_table,
)

P = F3.parse


@pytest.fixture
def lam():
    return split_level(P("t^2+1"), P("t+1"))


@pytest.fixture
def theta_o():
    return ThetaOParams(LevelPair(F3.one, P("t^2+t")))


def test_split_level_example(lam):
    assert (lam.n_plus, lam.n_minus) == (F3.one, P("t+1"))
    assert (lam.d_plus, lam.d_minus) == (F3.one, P("t^2+1"))
    assert lam.levels == LevelPair(F3.one, P("t^3+t^2+t+1"))


@pytest.mark.parametrize(
    "fd, fn, exc",
    [
        ("t^2+1", "t", LevelAssumptionError),
        ("t^2+1", "t^2", NotSquarefreeError),
        ("t^2+1", "t^2+1", NotCoprimeError),
        ("t", "t+1", OddDegreeError),
        ("2*t^2+1", "t", NotMonicError),
    ],
)
def test_split_level_errors(fd, fn, exc):
    with pytest.raises(exc):
        split_level(P(fd), P(fn))


@st.composite
def level_inputs(draw):
    ctx = draw(st.sampled_from([F3, F5]))
    fd = draw(polys(ctx, 4, monic=True))
    fn = draw(polys(ctx, 3, monic=True))
    return fd, fn


@given(level_inputs())
def test_split_level_parity(args):
    fd, fn = args
    try:
        params = split_level(fd, fn)
    except ConfigurationError:
        return
    assert len(params.ramified_primes) % 2 == 0
    assert params.d_plus * params.d_minus == fd
    assert params.n_plus * params.n_minus == fn


def test_theta_o_params_need_even_ramification():
    with pytest.raises(ConfigurationError):
        ThetaOParams(LevelPair(F3.one, F3.t))
    with pytest.raises(ConfigurationError):
        ThetaOParams(LevelPair(F3.t, F3.one))


def test_mass_examples(theta_o):
    assert mass(theta_o, P("t^2+1")) == 0
    assert mass(theta_o, F3.zero) == Fraction(-1, 2)
    assert mass(theta_o, P("2*t")) == 0
    # h/w(2) = 1/4, factors (1 - (-1)) (1 - (2 / t+1)) = 2 * 2
    assert mass(theta_o, P("2")) == 1


def test_t_support_examples():
    assert t_support(P("t")) == [F3.zero, F3.one, P("2")]
    assert set(t_support(P("1"))) >= {F3.one, P("2")}
    # 4a = 2: t = 0 gives 1 (a square constant, split), t = +-1 give 1 - 2 = 2
    assert t_support(P("2")) == [F3.one, P("2")]
    with pytest.raises(ConfigurationError):
        t_support(F3.zero)


@given(polys(F3, 4, nonzero=True))
def test_t_support_stable_and_symmetric(a):
    s = t_support(a)
    assert t_support(a, extra=1) == s
    assert {-t for t in s} == set(s)


def test_intersection_example(lam):
    levels = lam.levels
    fd = lam.frak_d
    a = F3.t
    expected = 2 * (hurwitz_H(levels, fd * P("2*t")) + 2 * hurwitz_H(levels, fd * P("2*t+1")))
    assert intersection_number(lam, a) == expected


def test_intersection_zero_term(lam):
    # a = 1: t = +-1 makes t^2 - 4a = 0 and contributes H(0) twice
    h0 = hurwitz_H_zero(lam.levels)
    assert intersection_number(lam, F3.one) == 2 * (hurwitz_H(lam.levels, lam.frak_d * P("2")) + 2 * h0)


def test_intersection_empty_support(lam, monkeypatch):
    import ffcn.theta as theta

    monkeypatch.setattr(theta, "t_support", lambda a: [])
    assert intersection_number(lam, F3.t) == 0


def test_theta_lambda_table(lam):
    table = theta_table(lam, 1)
    assert table.kind is TableKind.THETA_LAMBDA
    assert table.constant_term == -2 * hurwitz_H_zero(lam.levels) == 4
    assert [str(x) for x, _ in table.rows()] == ["1", "2", "t", "t+1", "t+2", "2*t", "2*t+1", "2*t+2"]


def test_theta_o_table(theta_o):
    table = theta_table(theta_o, 0)
    assert table.constant_term == Fraction(-1, 2)
    assert table.coefficients == {F3.one: 0, P("2"): 1}


def test_theta_o_coefficients_nonnegative(theta_o):
    table = theta_table(theta_o, 2)
    for d, v in table.rows():
        assert v >= 0 and 4 % v.denominator == 0
        if not is_imaginary(d):
            assert v == 0


def test_table_threads_deterministic(lam):
    a = theta_table(lam, 2, threads=1)
    b = theta_table(lam, 2, threads=2)
    assert a.rows() == b.rows() and a.constant_term == b.constant_term


def test_table_ceiling(lam):
    with pytest.raises(ResourceLimitError):
        theta_table(lam, 9)
    with pytest.raises(ConfigurationError):
        theta_table(lam, -1)
    with pytest.raises(ResourceLimitError):
        theta_table(lam, 3, ceiling=2)


def test_bessel_examples():
    assert bessel(F3.zero, 2, 2) == Fraction(1, 9)
    assert bessel(F3.zero, 2, 1) == 0
    assert bessel(F3.t, Fraction(3, 2), 4) == Fraction(1, 27)
    half = bessel(F3.t, Fraction(3, 2), 3)
    assert half == QPower(3, Fraction(-9, 4))
    assert abs(float(half) - 3 ** (-9 / 4)) < 1e-12
    assert bessel(F3.t, Fraction(3, 2), 2) == 0
