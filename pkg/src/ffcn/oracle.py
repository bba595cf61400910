"""Brute-force oracles, independent of the closed forms they check.

Nothing here calls the class number formula, the Jacobi-symbol kernels or the
embedding tables.  Each oracle either returns a certified exact answer or
raises an :class:`~ffcn.errors.OracleError`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .eichler_local import OrderType
from .errors import BoundError, DomainError, PrecisionError, ResourceLimitError
from .ff_core import FieldCtx, Poly, is_imaginary, is_irreducible, is_squarefree, xgcd


# ---------------------------------------------------------------------------
# ideal classes of A[sqrt d]


@dataclass(frozen=True)
class IdealRep:
    """The O_d-ideal [m, b + sqrt d] = mA + (b + sqrt d)A."""

    m: Poly
    b: Poly

    def conjugate(self) -> IdealRep:
        return IdealRep(self.m, (-self.b) % self.m)


def _ideal_reps(d: Poly, deg_m: int) -> list[IdealRep]:
    """Primitive invertible ideals with norm generator of degree deg_m."""
    ctx = d.ctx
    out = []
    for m in ctx.monic_polys(deg_m):
        for b in itertools.chain([ctx.zero], ctx.polys_upto(deg_m - 1)):
            c, r = divmod(b * b - d, m)
            if r:
                continue
            # invertible <=> the form (m, 2b, c) is primitive
            g = xgcd(xgcd(m, b)[0], c)[0]
            if g.is_one():
                out.append(IdealRep(m, b))
    return out


def _hnf_ideal(gens: list[tuple[Poly, Poly]]) -> IdealRep:
    """Reduce an A-lattice sum of x + y sqrt d to g * [m, b + sqrt d]; return
    the primitive part."""
    ctx = gens[0][0].ctx
    rows = [list(r) for r in gens]
    pivot = None
    rest = []
    for x, y in rows:
        if not y:
            rest.append((x, y))
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        g, u, v = xgcd(py, y)
        a1, a2 = py.exact_div(g), y.exact_div(g)
        pivot = (u * px + v * x, g)
        rest.append((a1 * x - a2 * px, ctx.zero))
    if pivot is None:
        raise DomainError("lattice of rank < 2")
    a = ctx.zero
    for x, _ in rest:
        a = xgcd(a, x)[0]
    e, g = pivot
    if not a or a % g or e % g:
        raise DomainError("not an O-ideal lattice")
    m = a.exact_div(g)
    return IdealRep(m, e.exact_div(g) % m)


def _multiply(i: IdealRep, j: IdealRep, d: Poly) -> IdealRep:
    m1, b1, m2, b2 = i.m, i.b, j.m, j.b
    zero = d.ctx.zero
    gens = [
        (m1 * m2, zero),
        (m1 * b2, m1),
        (m2 * b1, m2),
        (b1 * b2 + d, b1 + b2),
    ]
    return _hnf_ideal(gens)


def _is_principal(i: IdealRep, d: Poly) -> bool:
    """Search for x + y sqrt d in I with norm of degree deg m.

    The norm form is definite at infinity (d imaginary), so
    deg(x^2 - d y^2) = max(2 deg x, deg d + 2 deg y) and the search space is
    finite: deg y <= (deg m - deg d)/2 and x = y b mod m.
    """
    m, b = i.m, i.b
    if m.is_one():
        return True
    dm = int(m.deg)
    dd = int(d.deg) if d else 0
    ymax = (dm - dd) // 2 if dm >= dd else -1
    if ymax < 0:
        return False
    for y in d.ctx.polys_upto(ymax):
        x = (y * b) % m
        if 2 * x.deg > dm:
            continue
        if (x * x - d * y * y).deg == dm:
            return True
    return False


def _class_count(ideals: list[IdealRep], d: Poly) -> int:
    reps: list[IdealRep] = []
    for i in ideals:
        if not any(_is_principal(_multiply(i, r.conjugate(), d), d) for r in reps):
            reps.append(i)
    return len(reps)


def brute_class_group(d: Poly, deg_bound: int | None = None) -> int:
    """Number of invertible ideal classes of A[sqrt d] by exhaustive search.

    Ideals of norm degree <= deg_bound are enumerated and merged whenever
    I * conj(J) is principal.  The count must already be stable one degree
    below the bound; otherwise :class:`BoundError` asks for a larger bound.
    By default the bound is one more than deg d // 2, since every class
    contains a reduced ideal [m, b + sqrt d] with 2 deg m <= deg d.
    """
    if not is_imaginary(d):
        raise DomainError(f"{d} is not imaginary")
    reduced = int(d.deg) // 2 + 1
    if deg_bound is None:
        deg_bound = reduced
    if deg_bound < reduced:
        raise BoundError(f"deg_bound {deg_bound} is below deg d // 2 + 1 = {reduced}")
    ideals: list[IdealRep] = []
    counts = []
    for k in range(deg_bound + 1):
        ideals.extend(_ideal_reps(d, k))
        if k >= deg_bound - 1:
            counts.append(_class_count(ideals, d))
    if counts[0] != counts[1]:
        raise BoundError(f"class count not stable at bound {deg_bound} for d = {d}; raise the bound")
    return counts[1]


def brute_unit_count(d: Poly) -> int:
    """w(d) = #(A[sqrt d]^x)/(q - 1), by enumerating x + y sqrt d of
    constant norm."""
    if not is_imaginary(d):
        raise DomainError(f"{d} is not imaginary")
    ctx = d.ctx
    ymax = -int(d.deg) // 2 if d.deg <= 0 else -1
    count = 0
    ys = [ctx.zero] + (list(ctx.polys_upto(ymax)) if ymax >= 0 else [])
    for x in [ctx.zero] + list(ctx.polys_upto(0)):
        for y in ys:
            if (x * x - d * y * y).deg == 0:
                count += 1
    return count // (ctx.q - 1)


# ---------------------------------------------------------------------------
# hyperelliptic point counts


def _irreducible_of_degree(ctx: FieldCtx, n: int) -> Poly:
    for m in ctx.monic_polys(n):
        if is_irreducible(m):
            return m
    raise AssertionError("no irreducible polynomial found")


def point_count_P1(d0: Poly) -> int:
    """P(1) for the L-polynomial of y^2 = d0, deg d0 odd, from point counts.

    N_n = q^n + 1 + sum_{x in F_{q^n}} chi(d0(x)) for n = 1..g gives the
    power sums of the Frobenius roots; Newton's identities yield the first g
    coefficients and the functional equation c_{2g-k} = q^{g-k} c_k the rest.
    """
    if not d0 or d0.deg % 2 == 0:
        raise DomainError("point_count_P1 handles odd-degree d0 only")
    if not is_squarefree(d0):
        raise DomainError(f"{d0} is not squarefree")
    ctx = d0.ctx
    q = ctx.q
    g = (int(d0.deg) - 1) // 2
    power_sums = []
    for n in range(1, g + 1):
        modulus = _irreducible_of_degree(ctx, n)
        affine_excess = kernels.quadratic_char_sum(q, list(modulus.coeffs), list(d0.coeffs))
        count = q**n + 1 + affine_excess
        power_sums.append(q**n + 1 - count)
    c = [Fraction(1)]
    for k in range(1, g + 1):
        c.append(-sum(power_sums[i - 1] * c[k - i] for i in range(1, k + 1)) / k)
    for k in range(g + 1, 2 * g + 1):
        c.append(q ** (k - g) * c[2 * g - k])
    total = sum(c)
    if total.denominator != 1:
        raise AssertionError(f"non-integral L-polynomial for {d0}")
    return int(total)


# ---------------------------------------------------------------------------
# local unit indices


def _residues(ctx: FieldCtx, n: int) -> list[Poly]:
    """All polynomials of degree < n (a full residue system mod a degree-n modulus)."""
    return [ctx.poly(list(c)) for c in itertools.product(range(ctx.q), repeat=n)]


def _unit_index_at(d0: Poly, p: Poly, ell: int, prec: int) -> Fraction:
    ctx = d0.ctx
    k = int(p.deg)
    mod_p = _residues(ctx, k)
    index_p = {r: i for i, r in enumerate(mod_p)}
    pl = p**ell
    res = _residues(ctx, k * prec)
    red = np.array([index_p[r % p] for r in res])
    in_order = np.array([not (r % pl) for r in res]) if ell else np.ones(len(res), bool)
    norm_unit = np.array(
        [[bool((x * x - d0 * y * y) % p) for y in mod_p] for x in mod_p], dtype=np.int64
    )
    # a pair (x, y) mod p^prec is a unit iff its norm is a unit mod p
    cnt_x = np.bincount(red, minlength=len(mod_p))
    cnt_y_order = np.bincount(red[in_order], minlength=len(mod_p))
    units_max = int(cnt_x @ norm_unit @ cnt_x)
    units_ord = int(cnt_x @ norm_unit @ cnt_y_order)
    return Fraction(units_max, units_ord)


def brute_unit_index(d0: Poly, p: Poly, ell: int) -> int:
    """[O_{K,p}^x : O(ell)_p^x] by counting unit residues x + y sqrt d0 modulo
    p^N for two precisions N and comparing."""
    if ell < 0 or ell > 2:
        raise DomainError("brute_unit_index supports 0 <= ell <= 2")
    if not p.is_monic() or not is_irreducible(p):
        raise DomainError(f"{p} is not a monic prime")
    if p.norm > 9:
        raise ResourceLimitError("brute_unit_index supports ||p|| <= 9")
    if d0.ord(p) > 1:
        raise DomainError(f"{d0} is not squarefree at {p}")
    if ell == 0:
        return 1
    n = max(ell, 1)
    a = _unit_index_at(d0, p, ell, n)
    b = _unit_index_at(d0, p, ell, n + 1)
    if a != b or a.denominator != 1:
        raise PrecisionError(f"unit index unstable: {a} vs {b}")
    return int(a)


# ---------------------------------------------------------------------------
# local optimal embeddings into 2x2 matrix orders


class _TruncRing:
    """F_q[s]/s^N with elements indexed by sum c_i q^i."""

    def __init__(self, q: int, n: int):
        self.q, self.n = q, n
        self.size = q**n
        idx = np.arange(self.size)
        self.coeffs = np.stack([(idx // q**i) % q for i in range(n)], axis=1)
        self._w = q ** np.arange(n)
        self.add = self._encode((self.coeffs[:, None, :] + self.coeffs[None, :, :]) % q)
        self.neg = self._encode((-self.coeffs) % q)
        prod = np.zeros((self.size, self.size, n), dtype=np.int64)
        for i in range(n):
            for j in range(n - i):
                prod[:, :, i + j] += self.coeffs[:, None, i] * self.coeffs[None, :, j]
        self.mul = self._encode(prod % q)
        self.is_unit = self.coeffs[:, 0] != 0
        self.inv = np.full(self.size, -1)
        for u in np.nonzero(self.is_unit)[0]:
            self.inv[u] = int(np.nonzero(self.mul[u] == 1)[0][0])

    def _encode(self, c: np.ndarray) -> np.ndarray:
        return (c * self._w).sum(axis=-1)

    def element(self, coeffs) -> int:
        c = list(coeffs)[: self.n] + [0] * max(0, self.n - len(coeffs))
        return int(sum(int(x) % self.q * self.q**i for i, x in enumerate(c)))

    def monomial(self, i: int) -> int:
        return self.q**i if i < self.n else 0

    def valuation_at_least(self, k: int) -> np.ndarray:
        if k <= 0:
            return np.ones(self.size, bool)
        return (self.coeffs[:, : min(k, self.n)] == 0).all(axis=1)


def _solutions(d0: Poly, r: int, ell: int, hered: bool, prec: int) -> np.ndarray:
    """All (a, b, c) mod s^prec with a^2 + bc = s^(2 ell) d0(s + r), as indices."""
    R = _TruncRing(d0.q, prec)
    target = R.element([0] * (2 * ell) + list(d0.shift(r).coeffs))
    sq = R.mul[np.arange(R.size), np.arange(R.size)]
    c_ok = R.valuation_at_least(1) if hered else np.ones(R.size, bool)
    sols = []
    for a in range(R.size):
        need = R.add[target, R.neg[sq[a]]]
        bs, cs = np.nonzero(R.mul == need)
        keep = c_ok[cs]
        sols.append(np.stack([np.full(int(keep.sum()), a), bs[keep], cs[keep]], axis=1))
    return np.concatenate(sols)


def _embedding_orbits(d0: Poly, r: int, ell: int, order: OrderType, prec: int) -> int:
    q = d0.q
    hered = order is OrderType.HEREDITARY
    R = _TruncRing(q, prec)
    # Solve one digit deeper and reduce: a congruence mod s^prec alone leaves
    # b free in its top digit when v(c) = 1, and those residues do not lift.
    X = np.unique(_solutions(d0, r, ell, hered, prec + 1) % R.size, axis=0)
    if ell >= 1:
        # optimal iff X is not in pi * (order)
        v1, v2 = R.valuation_at_least(1), R.valuation_at_least(2)
        in_pi_order = v1[X[:, 0]] & v1[X[:, 1]] & (v2 if hered else v1)[X[:, 2]]
        X = X[~in_pi_order]
    if len(X) == 0:
        return 0
    M = R.size
    codes = (X[:, 0] * M + X[:, 1]) * M + X[:, 2]
    order_idx = np.argsort(codes)
    codes_sorted = codes[order_idx]

    def ids(a, b, c):
        cc = (a * M + b) * M + c
        pos = np.searchsorted(codes_sorted, cc)
        if np.any(pos >= len(codes_sorted)) or np.any(codes_sorted[pos] != cc):
            raise AssertionError("conjugate left the solution set")
        return order_idx[pos]

    a, b, c = X[:, 0], X[:, 1], X[:, 2]
    two = R.element([2])
    edges = []
    upper = [R.monomial(i) for i in range(prec)]
    lower = [R.monomial(i) for i in range(1 if hered else 0, prec)]
    for x in upper:
        # [[1, x], [0, 1]] X [[1, -x], [0, 1]]
        a2 = R.add[a, R.mul[x, c]]
        b2 = R.add[R.add[b, R.neg[R.mul[R.mul[two, x], a]]], R.neg[R.mul[R.mul[x, x], c]]]
        edges.append(ids(a2, b2, c))
    for x in lower:
        a2 = R.add[a, R.neg[R.mul[x, b]]]
        c2 = R.add[R.add[c, R.mul[R.mul[two, x], a]], R.neg[R.mul[R.mul[x, x], b]]]
        edges.append(ids(a2, b, c2))
    unit_gens = [R.element([g]) for g in range(2, q)] + [R.add[1, R.monomial(i)] for i in range(1, prec)]
    for u in unit_gens:
        edges.append(ids(a, R.mul[u, b], R.mul[R.inv[u], c]))
    n = len(X)
    src = np.concatenate([np.arange(n)] * len(edges))
    dst = np.concatenate(edges)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    ncomp, _ = connected_components(graph, directed=True, connection="weak")
    return int(ncomp)


def brute_embed_count(d0: Poly, p: Poly, ell: int, order: OrderType, precision: int | None = None) -> int:
    """Optimal embeddings of O(ell) = O_L[pi^ell sqrt d0] into M_2(O_L) or its
    Iwahori order, up to unit conjugation, counted as conjugation orbits of
    trace-zero X with X^2 = pi^(2 ell) d0 modulo pi^N for N and N + 1."""
    if p.deg != 1 or not p.is_monic():
        raise DomainError("brute_embed_count needs a monic degree-1 prime")
    if d0.ord(p) > 1:
        raise DomainError(f"{d0} is not squarefree at {p}")
    if ell < 0:
        raise DomainError("level must be >= 0")
    n = 2 * ell + 2 if precision is None else precision
    if n < 2 * ell + 2:
        raise DomainError("precision must be >= 2 ell + 2")
    if d0.q ** (n + 2) > 729:
        raise ResourceLimitError("residue ring too large for brute_embed_count")
    r = (-p.coeffs[0]) % d0.q
    a = _embedding_orbits(d0, r, ell, order, n)
    b = _embedding_orbits(d0, r, ell, order, n + 1)
    if a != b:
        raise PrecisionError(f"embedding count unstable: {a} at N={n}, {b} at N={n + 1}")
    return a


__all__ = [
    "IdealRep",
    "brute_class_group",
    "brute_embed_count",
    "brute_unit_count",
    "brute_unit_index",
    "point_count_P1",
]
