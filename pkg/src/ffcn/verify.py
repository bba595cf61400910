"""Oracle-backed verification suites.

Each criterion compares closed-form values with an independent computation
and records every compared pair.  The CLI ``verify`` command and the test
suite both run these.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Callable

from . import kernels
from .eichler_local import (
    Algebra,
    LocalOrderSpec,
    LocalQuadKind,
    LocalQuatKind,
    OrderType,
    QuadKind,
    embed_count,
    local_kind_at,
)
from .errors import (
    ConfigurationError,
    DomainError,
    LevelAssumptionError,
    NotCoprimeError,
    NotSquarefreeError,
    OddDegreeError,
)
from .ff_core import (
    DEFAULT_SEED,
    FieldCtx,
    Poly,
    bracket_symbol,
    factor,
    gcd,
    is_imaginary,
    is_squarefree,
)
from .hurwitz import LevelPair, Strategy, hurwitz_H, hurwitz_H_zero, tamagawa_unit_volume
from .oracle import brute_class_group, brute_embed_count, brute_unit_count, brute_unit_index, point_count_P1
from .quad_class import character_sums, class_data, class_number_maximal, unit_index_local
from .serialize import split_params, table_json
from .theta import ThetaOParams, split_level, t_support, theta_table

GOLDEN_THETA_LAMBDA = "theta_lambda_q3_deg2.json"
GOLDEN_ARGS = (3, "t^2+1", "t+1", 2)  # q, frak_d, frak_n, max_deg


@dataclass
class Comparison:
    label: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class CriterionResult:
    name: str
    comparisons: list[Comparison] = field(default_factory=list)
    error: str | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.error is None and bool(self.comparisons) and all(c.ok for c in self.comparisons)

    def check(self, label: str, expected: Any, actual: Any) -> None:
        self.comparisons.append(Comparison(label, expected, actual))

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        bad = sum(not c.ok for c in self.comparisons)
        extra = f"; error: {self.error}" if self.error else ""
        return f"[{status}] {self.name}: {len(self.comparisons)} comparisons, {bad} mismatches ({self.seconds:.1f}s){extra}"


def _criterion(name: str):
    def wrap(fn: Callable[[CriterionResult, int], None]):
        def run(seed: int = DEFAULT_SEED) -> CriterionResult:
            res = CriterionResult(name)
            t0 = time.perf_counter()
            try:
                fn(res, seed)
            except Exception as exc:  # report, never hide
                res.error = f"{type(exc).__name__}: {exc}"
            res.seconds = time.perf_counter() - t0
            return res

        run.criterion_name = name
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


def _random_squarefree(ctx: FieldCtx, rng: random.Random, deg: int, monic: bool = False) -> Poly:
    while True:
        p = ctx.random_poly(rng, deg, monic=monic)
        if is_squarefree(p):
            return p


def _random_imaginary_squarefree(ctx: FieldCtx, rng: random.Random, lo: int, hi: int) -> Poly:
    while True:
        p = _random_squarefree(ctx, rng, rng.randint(lo, hi))
        if is_imaginary(p):
            return p


# ---------------------------------------------------------------------------
# class numbers


@_criterion("maximal-order class numbers (q=3, deg d0 <= 3)")
def maximal_class_numbers(res: CriterionResult, seed: int) -> None:
    """class_number_maximal against ideal-class enumeration, and against the
    L-polynomial from point counts when deg d0 is odd."""
    ctx = FieldCtx(3)
    for d0 in ctx.polys_upto(3):
        if not is_squarefree(d0) or not is_imaginary(d0):
            continue
        cd = class_number_maximal(d0)
        res.check(f"h({d0}) vs ideal classes", brute_class_group(d0), cd.h)
        res.check(f"w({d0}) vs unit count", brute_unit_count(d0), cd.w)
        if d0.deg % 2:
            res.check(f"h({d0}) vs P(1) from point counts", point_count_P1(d0), cd.h)


@_criterion("order class numbers (q=3 conductor family, q=5 deg d <= 2)")
def order_class_numbers(res: CriterionResult, seed: int) -> None:
    """class_data against ideal-class enumeration for non-maximal orders."""
    ctx = FieldCtx(3)
    t = ctx.t
    ds = [t**3, t.scale(2) * t**2]
    cases = ds + [t * c * c for c in [ctx.one, *ctx.monic_polys(1)]]
    res.check("h(t^3) worked value", 3, class_data(t**3).h)
    ctx5 = FieldCtx(5)
    cases += [d for d in ctx5.polys_upto(2) if is_imaginary(d)]
    for d in cases:
        cd = class_data(d)
        res.check(f"q={d.q} h({d})", brute_class_group(d), cd.h)
        res.check(f"q={d.q} w({d})", brute_unit_count(d), cd.w)


@_criterion("character-sum vanishing (S_n = 0, deg d0 <= n <= deg d0 + 2)")
def character_sum_vanishing(res: CriterionResult, seed: int) -> None:
    rng = random.Random(seed)
    for q in (3, 5):
        ctx = FieldCtx(q)
        for _ in range(20):
            d0 = _random_imaginary_squarefree(ctx, rng, 1, 4 if q == 3 else 3)
            n = int(d0.deg)
            sums = character_sums(d0, n + 2)
            for k in range(n, n + 3):
                res.check(f"q={q} S_{k}({d0})", 0, sums[k])


# ---------------------------------------------------------------------------
# Hurwitz class numbers


def _random_levels(ctx: FieldCtx, rng: random.Random, max_deg: int = 2) -> LevelPair:
    while True:
        a = _random_squarefree(ctx, rng, rng.randint(0, max_deg), monic=True)
        b = _random_squarefree(ctx, rng, rng.randint(0, max_deg), monic=True)
        if gcd(a, b).is_one():
            return LevelPair(a, b)


def _random_discriminant(ctx: FieldCtx, rng: random.Random, max_deg: int = 4) -> Poly:
    while True:
        if rng.random() < 0.5:
            d = ctx.random_poly(rng, rng.randint(0, max_deg))
        else:
            d0 = ctx.random_poly(rng, rng.randint(0, max_deg - 2))
            c = ctx.random_poly(rng, 1, monic=True)
            d = d0 * c * c
        if d and d.deg <= max_deg and is_imaginary(d):
            return d


@_criterion("Hurwitz class numbers: definition sum = local product (100 cases)")
def hurwitz_strategies(res: CriterionResult, seed: int) -> None:
    ctx = FieldCtx(3)
    t = ctx.t
    one = ctx.one
    res.check("H^{1,1}(t^3) definition sum", Fraction(4), hurwitz_H(LevelPair(one, one), t**3, Strategy.DEFINITION_SUM))
    res.check("H^{1,1}(t^3) local product", Fraction(4), hurwitz_H(LevelPair(one, one), t**3, Strategy.LOCAL_PRODUCT))
    res.check("H^{t,1}(2t)", Fraction(1), hurwitz_H(LevelPair(t, one), t.scale(2)))
    rng = random.Random(seed)
    for i in range(100):
        ctx = FieldCtx((3, 5)[i % 2])
        levels = _random_levels(ctx, rng)
        d = _random_discriminant(ctx, rng)
        res.check(
            f"q={ctx.q} ({levels.n_plus}, {levels.n_minus}) d={d}",
            hurwitz_H(levels, d, Strategy.DEFINITION_SUM),
            hurwitz_H(levels, d, Strategy.LOCAL_PRODUCT),
        )


@_criterion("volume identity: vol * H(0) = -(q-1) (20 level pairs per q)")
def volume_identity(res: CriterionResult, seed: int) -> None:
    rng = random.Random(seed + 1)
    for q in (3, 5):
        ctx = FieldCtx(q)
        for _ in range(20):
            levels = _random_levels(ctx, rng, max_deg=3)
            res.check(
                f"q={q} ({levels.n_plus}, {levels.n_minus})",
                Fraction(-(q - 1)),
                tamagawa_unit_volume(levels) * hurwitz_H_zero(levels),
            )


# ---------------------------------------------------------------------------
# local tables


# Optimal embedding numbers e(O(l), order), indexed by (kind, l >= 1).
EMBED_TABLE = {
    (Algebra.DIVISION, OrderType.MAXIMAL): {
        (QuadKind.UNRAMIFIED_FIELD, False): 2,
        (QuadKind.RAMIFIED_FIELD, False): 1,
        (QuadKind.SPLIT_ETALE, False): 0,
        (QuadKind.UNRAMIFIED_FIELD, True): 0,
        (QuadKind.RAMIFIED_FIELD, True): 0,
        (QuadKind.SPLIT_ETALE, True): 0,
    },
    (Algebra.MATRIX, OrderType.MAXIMAL): {(k, deep): 1 for k in QuadKind for deep in (False, True)},
    (Algebra.MATRIX, OrderType.HEREDITARY): {
        (QuadKind.UNRAMIFIED_FIELD, False): 0,
        (QuadKind.RAMIFIED_FIELD, False): 1,
        (QuadKind.SPLIT_ETALE, False): 2,
        (QuadKind.UNRAMIFIED_FIELD, True): 2,
        (QuadKind.RAMIFIED_FIELD, True): 2,
        (QuadKind.SPLIT_ETALE, True): 2,
    },
}

# d0 realising each kind at p = t over F_3
_KIND_D0 = {QuadKind.SPLIT_ETALE: "1", QuadKind.UNRAMIFIED_FIELD: "2", QuadKind.RAMIFIED_FIELD: "t"}


@_criterion("local embedding tables (table regression and matrix-order enumeration)")
def embedding_tables(res: CriterionResult, seed: int) -> None:
    for norm in (3, 5, 9):
        for kind in QuadKind:
            for ell in range(4):
                e_kind = LocalQuadKind(kind, norm)
                for (alg, order), table in EMBED_TABLE.items():
                    got = embed_count(e_kind, LocalOrderSpec(ell), LocalQuatKind(alg, order))
                    res.check(f"||p||={norm} {kind.value} l={ell} {alg.value}/{order.value}", table[(kind, ell >= 1)], got)
    try:
        LocalQuatKind(Algebra.DIVISION, OrderType.HEREDITARY)
        res.check("division/hereditary rejected", "DomainError", "accepted")
    except DomainError:
        res.check("division/hereditary rejected", "DomainError", "DomainError")
    ctx = FieldCtx(3)
    p = ctx.t
    for kind, text in _KIND_D0.items():
        d0 = ctx.parse(text)
        for ell in (0, 1):
            for order in (OrderType.MAXIMAL, OrderType.HEREDITARY):
                expected = embed_count(local_kind_at(d0, p), LocalOrderSpec(ell), LocalQuatKind(Algebra.MATRIX, order))
                res.check(
                    f"brute {kind.value} l={ell} matrix/{order.value}",
                    expected,
                    brute_embed_count(d0, p, ell, order),
                )


def _d0_with_symbol(ctx: FieldCtx, p: Poly, symbol: int) -> Poly:
    if symbol == 0:
        return p
    for d0 in ctx.polys_upto(2):
        if d0.ord(p) == 0 and bracket_symbol(d0, p) == symbol:
            return d0
    raise AssertionError("no d0 with the requested symbol")


@_criterion("local unit indices (||p|| in {3,5,9}, l in {0,1,2})")
def unit_indices(res: CriterionResult, seed: int) -> None:
    for q, ptext in ((3, "t"), (5, "t"), (3, "t^2+1")):
        ctx = FieldCtx(q)
        p = ctx.parse(ptext)
        for symbol in (1, -1, 0):
            d0 = _d0_with_symbol(ctx, p, symbol)
            for ell in (0, 1, 2):
                res.check(
                    f"||p||={p.norm} d0={d0} l={ell}",
                    brute_unit_index(d0, p, ell),
                    unit_index_local(d0, p, ell),
                )


# ---------------------------------------------------------------------------
# theta tables and level splitting


def golden_text(name: str = GOLDEN_THETA_LAMBDA) -> str:
    return resources.files("ffcn").joinpath("data", name).read_text(encoding="utf-8")


def golden_theta_lambda(seed: int = DEFAULT_SEED) -> str:
    q, fd, fn, max_deg = GOLDEN_ARGS
    ctx = FieldCtx(q)
    params = split_level(ctx.parse(fd), ctx.parse(fn))
    return table_json(theta_table(params, max_deg), seed, split_params(params))


@_criterion("theta tables (golden file, term-by-term recomputation, ThetaO sanity)")
def theta_tables(res: CriterionResult, seed: int) -> None:
    q, fd, fn, max_deg = GOLDEN_ARGS
    ctx = FieldCtx(q)
    res.check("golden file byte-identical", golden_text(), golden_theta_lambda(DEFAULT_SEED))
    params = split_level(ctx.parse(fd), ctx.parse(fn))
    levels = params.levels
    table = theta_table(params, max_deg)
    h0 = hurwitz_H_zero(levels)
    res.check("constant term = -2 H(0)", -2 * h0, table.constant_term)
    for a, value in table.rows():
        support = t_support(a)
        res.check(f"t_support({a}) stable one degree higher", support, t_support(a, extra=1))
        total = Fraction(0)
        for t in support:
            x = t * t - a.scale(4)
            total += h0 if not x else hurwitz_H(levels, params.frak_d * x, Strategy.DEFINITION_SUM)
        res.check(f"coefficient at {a}", 2 * total, value)
    o_params = ThetaOParams(LevelPair(ctx.one, ctx.parse("t^2+t")))
    o_table = theta_table(o_params, 2)
    for d, v in o_table.rows():
        res.check(f"ThetaO M({d}) >= 0", True, v >= 0)
        res.check(f"ThetaO M({d}) denominator | q+1", 0, (q + 1) % v.denominator)
        if not is_imaginary(d):
            res.check(f"ThetaO M({d}) = 0 at split index", Fraction(0), v)


def _error_name(fn: Callable[[], Any]) -> str:
    try:
        fn()
    except ConfigurationError as exc:
        return type(exc).__name__
    return "accepted"


@_criterion("level splitting parity (100 valid pairs) and configuration errors")
def level_splitting(res: CriterionResult, seed: int) -> None:
    rng = random.Random(seed + 2)
    found = 0
    while found < 100:
        q = rng.choice((3, 5))
        ctx = FieldCtx(q)
        fd = _random_squarefree(ctx, rng, rng.choice((2, 4)), monic=True)
        fn = _random_squarefree(ctx, rng, rng.randint(0, 3), monic=True)
        if not gcd(fd, fn).is_one():
            continue
        try:
            params = split_level(fd, fn)
        except LevelAssumptionError:
            continue
        found += 1
        count = sum(len(factor(x).primes) for x in (params.d_minus, params.n_minus) if x.deg > 0)
        res.check(f"q={q} frak_d={fd} frak_n={fn} primes of d-n- even", 0, count % 2)
        res.check(f"q={q} frak_d={fd} frak_n={fn} factors multiply back", (fd, fn),
                  (params.d_plus * params.d_minus, params.n_plus * params.n_minus))
    ctx = FieldCtx(3)
    P = ctx.parse
    res.check("non-squarefree frak_n", NotSquarefreeError.__name__, _error_name(lambda: split_level(P("t^2+1"), P("t^2"))))
    res.check("non-coprime", NotCoprimeError.__name__, _error_name(lambda: split_level(P("t^2+1"), P("t^2+1"))))
    res.check("odd-degree frak_d", OddDegreeError.__name__, _error_name(lambda: split_level(P("t"), P("t+1"))))
    res.check("deg(d-n-) = 0", LevelAssumptionError.__name__, _error_name(lambda: split_level(P("t^2+1"), P("t"))))


SUITES: dict[str, list[Callable[..., CriterionResult]]] = {
    "classnum": [maximal_class_numbers, order_class_numbers, character_sum_vanishing],
    "hurwitz": [hurwitz_strategies, volume_identity],
    "embed": [embedding_tables, unit_indices],
    "theta": [theta_tables, level_splitting],
}
SUITES["all"] = [c for k in ("classnum", "hurwitz", "embed", "theta") for c in SUITES[k]]


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    if name not in SUITES:
        raise ConfigurationError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [crit(seed) for crit in SUITES[name]]


def backend() -> str:
    return kernels.BACKEND
