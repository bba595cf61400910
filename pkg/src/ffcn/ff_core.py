"""Exact arithmetic in F_q and A = F_q[t] for an odd prime q.

Polynomials are immutable :class:`Poly` values holding a tuple of residues
mod q, lowest degree first, with no trailing zeros (the zero polynomial is
the empty tuple).  The text format used for I/O writes monomials ``c*t^e`` in
descending degree, e.g. ``t^3+2*t+1``; see :func:`format_poly`.
"""

from __future__ import annotations

import enum
import functools
import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ConfigurationError, DomainError, SplitAlgebraError

NEG_INF = float("-inf")
DEFAULT_SEED = 1729


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldCtx:
    """The base field F_q; q must be an odd prime."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 3 or not _is_prime(self.q):
            raise ConfigurationError(f"q must be an odd prime, got {self.q!r}")

    # -- field elements ------------------------------------------------------
    def inv(self, c: int) -> int:
        c %= self.q
        if c == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return pow(c, self.q - 2, self.q)

    def is_square(self, c: int) -> bool:
        """True for nonzero squares of F_q."""
        c %= self.q
        return c != 0 and pow(c, (self.q - 1) // 2, self.q) == 1

    def quadratic_char(self, c: int) -> int:
        c %= self.q
        if c == 0:
            return 0
        return 1 if pow(c, (self.q - 1) // 2, self.q) == 1 else -1

    @functools.cached_property
    def nonsquare(self) -> int:
        return next(c for c in range(2, self.q) if not self.is_square(c))

    # -- constructors --------------------------------------------------------
    def poly(self, coeffs: Sequence[int] | int) -> Poly:
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        return Poly(self, coeffs)

    @property
    def zero(self) -> Poly:
        return Poly(self, ())

    @property
    def one(self) -> Poly:
        return Poly(self, (1,))

    @property
    def t(self) -> Poly:
        return Poly(self, (0, 1))

    def parse(self, text: str) -> Poly:
        return parse_poly(self, text)

    # -- enumeration ---------------------------------------------------------
    def monic_polys(self, n: int) -> Iterator[Poly]:
        """All monic polynomials of degree exactly n, in canonical order."""
        q = self.q
        for tail in itertools.product(range(q), repeat=n):
            yield Poly._raw(self, tuple(reversed(tail)) + (1,))

    def polys_of_degree(self, n: int) -> Iterator[Poly]:
        """All polynomials of degree exactly n (n >= 0), canonical order."""
        q = self.q
        for lead in range(1, q):
            for tail in itertools.product(range(q), repeat=n):
                yield Poly._raw(self, tuple(reversed(tail)) + (lead,))

    def polys_upto(self, n: int, include_zero: bool = False) -> Iterator[Poly]:
        """All polynomials of degree <= n ordered by (degree, coefficients)."""
        if include_zero:
            yield self.zero
        for k in range(n + 1):
            yield from self.polys_of_degree(k)

    def random_poly(self, rng: random.Random, deg: int, monic: bool = False) -> Poly:
        if deg < 0:
            return self.zero
        lead = 1 if monic else rng.randrange(1, self.q)
        return Poly._raw(self, tuple(rng.randrange(self.q) for _ in range(deg)) + (lead,))


class Poly:
    """An element of F_q[t].  Immutable and hashable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Sequence[int]):
        q = ctx.q
        c = [int(x) % q for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def _raw(cls, ctx: FieldCtx, coeffs: tuple) -> Poly:
        # caller guarantees canonical form
        p = object.__new__(cls)
        object.__setattr__(p, "ctx", ctx)
        object.__setattr__(p, "coeffs", coeffs)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.ctx, self.coeffs))

    # -- basic properties ----------------------------------------------------
    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def deg(self) -> int | float:
        """Degree; ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def norm(self) -> int:
        """||a|| = q^deg a = #(A/a) for a != 0."""
        if not self.coeffs:
            raise DomainError("norm of the zero polynomial")
        return self.ctx.q ** (len(self.coeffs) - 1)

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self.scale(self.ctx.inv(self.coeffs[-1]))

    def sort_key(self) -> tuple:
        """(degree, coefficients from the leading one down)."""
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    # -- comparison / hashing ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx.q == other.ctx.q and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly(self.ctx, (other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.q, self.coeffs))

    def __lt__(self, other: Poly):
        return self.sort_key() < other.sort_key()

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly(q={self.ctx.q}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ctx.q != self.ctx.q:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly(self.ctx, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        q = self.ctx.q
        c = list(a)
        for i, x in enumerate(b):
            c[i] = (c[i] + x) % q
        while c and c[-1] == 0:
            c.pop()
        return Poly._raw(self.ctx, tuple(c))

    __radd__ = __add__

    def __neg__(self):
        q = self.ctx.q
        return Poly._raw(self.ctx, tuple((q - x) % q for x in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> Poly:
        q = self.ctx.q
        c %= q
        if c == 0:
            return self.ctx.zero
        return Poly._raw(self.ctx, tuple(x * c % q for x in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self.ctx.zero
        q = self.ctx.q
        # schoolbook; degrees here stay small
        c = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return Poly._raw(self.ctx, tuple(x % q for x in c))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        q = self.ctx.q
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(r) - 1 < db:
            return self.ctx.zero, self
        inv = pow(b[-1], q - 2, q)
        quo = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] * inv % q
            if c:
                quo[k - db] = c
                s = k - db
                for j in range(db + 1):
                    r[s + j] = (r[s + j] - c * b[j]) % q
        del r[db:]
        while r and r[-1] == 0:
            r.pop()
        return Poly._raw(self.ctx, tuple(quo)), Poly._raw(self.ctx, tuple(r))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        quo, rem = divmod(self, other)
        if rem:
            raise DomainError(f"{other} does not divide {self}")
        return quo

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def powmod(self, e: int, m: Poly) -> Poly:
        result = self.ctx.one % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def divides(self, other: Poly) -> bool:
        return not (other % self).coeffs

    def derivative(self) -> Poly:
        q = self.ctx.q
        return Poly(self.ctx, [i * c % q for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: int) -> int:
        acc = 0
        q = self.ctx.q
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % q
        return acc

    def shift(self, r: int) -> Poly:
        """The polynomial a(t + r)."""
        out = self.ctx.zero
        lin = Poly(self.ctx, (r, 1))
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def ord(self, p: Poly) -> int:
        """Multiplicity of p in self (self != 0)."""
        if not self.coeffs:
            raise DomainError("ord of zero")
        k = 0
        a = self
        while True:
            quo, rem = divmod(a, p)
            if rem:
                return k
            a = quo
            k += 1


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    ctx = a.ctx
    r0, r1 = a, b
    s0, s1 = ctx.one, ctx.zero
    t0, t1 = ctx.zero, ctx.one
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if not r0:
        return r0, s0, t0
    inv = ctx.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# ---------------------------------------------------------------------------
# text format

def format_poly(a: Poly) -> str:
    if not a.coeffs:
        return "0"
    parts = []
    for e in range(len(a.coeffs) - 1, -1, -1):
        c = a.coeffs[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
            continue
        mono = "t" if e == 1 else f"t^{e}"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts)


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    """Parse the text format.  Integer coefficients are reduced mod q."""
    s = text.replace(" ", "").replace("θ", "t")
    if not s:
        raise ConfigurationError("empty polynomial")
    s = s.replace("-", "+-")
    terms = [x for x in s.split("+") if x]
    if not terms:
        raise ConfigurationError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for term in terms:
        neg = term.startswith("-")
        body = term[1:] if neg else term
        if body.startswith("t"):
            c_str, rest = "1", body
        else:
            m = re.match(r"^(\d+)(.*)$", body)
            if not m:
                raise ConfigurationError(f"cannot parse term {term!r} in {text!r}")
            c_str, rest = m.group(1), m.group(2)
            if rest.startswith("*"):
                rest = rest[1:]
                if not rest:
                    raise ConfigurationError(f"cannot parse term {term!r} in {text!r}")
        if rest == "":
            e = 0
        elif rest == "t":
            e = 1
        elif rest.startswith("t^") and rest[2:].isdigit():
            e = int(rest[2:])
        else:
            raise ConfigurationError(f"cannot parse term {term!r} in {text!r}")
        c = int(c_str) * (-1 if neg else 1)
        coeffs[e] = coeffs.get(e, 0) + c
    top = max(coeffs)
    return Poly(ctx, [coeffs.get(i, 0) for i in range(top + 1)])


# ---------------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class Factorization:
    unit: int
    factors: tuple[tuple[Poly, int], ...]

    def expand(self, ctx: FieldCtx) -> Poly:
        out = ctx.poly(self.unit)
        for p, e in self.factors:
            out = out * p**e
        return out

    @property
    def primes(self) -> tuple[Poly, ...]:
        return tuple(p for p, _ in self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


def _pth_root(a: Poly) -> Poly:
    # f(t) = g(t^q) = g(t)^q over the prime field
    q = a.ctx.q
    return Poly(a.ctx, a.coeffs[::q])


def _squarefree_parts(f: Poly) -> list[tuple[Poly, int]]:
    """Squarefree factorization of a monic f: [(g_i, i)] with f = prod g_i^i."""
    ctx = f.ctx
    out: list[tuple[Poly, int]] = []
    if f.deg < 1:
        return out
    df = f.derivative()
    if not df:
        return [(g, e * ctx.q) for g, e in _squarefree_parts(_pth_root(f))]
    c = gcd(f, df)
    w = f // c
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        fac = w // y
        if not fac.is_one():
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        out.extend((g, e * ctx.q) for g, e in _squarefree_parts(_pth_root(c)))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    ctx = f.ctx
    out = []
    x = ctx.t
    h = x
    i = 1
    g = f
    while g.deg >= 2 * i:
        h = h.powmod(ctx.q, g)
        gi = gcd(g, h - x)
        if not gi.is_one():
            out.append((gi, i))
            g = g // gi
            h = h % g
        i += 1
    if g.deg >= 1:
        out.append((g, int(g.deg)))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.deg == d:
        return [f]
    ctx = f.ctx
    n = int(f.deg)
    e = (ctx.q**d - 1) // 2
    while True:
        a = ctx.random_poly(rng, rng.randrange(1, n))
        g = gcd(f, a)
        if 0 < g.deg < n:
            break
        b = a.powmod(e, f) - 1
        g = gcd(f, b)
        if 0 < g.deg < n:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


@functools.lru_cache(maxsize=65536)
def factor(a: Poly, seed: int = DEFAULT_SEED) -> Factorization:
    """Factor a nonzero polynomial into monic irreducibles.

    Squarefree split, distinct-degree split, then Cantor-Zassenhaus with a
    per-call ``random.Random(seed)``.  The result is canonical (sorted), so
    the seed only affects running time.
    """
    if not a:
        raise DomainError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    unit = a.lc
    mult: dict[Poly, int] = {}
    for g, e in _squarefree_parts(a.monic()):
        for h, d in _distinct_degree(g):
            for p in _equal_degree(h, d, rng):
                mult[p] = mult.get(p, 0) + e
    return Factorization(unit, tuple(sorted(mult.items(), key=lambda pe: pe[0].sort_key())))


def is_irreducible(p: Poly) -> bool:
    if p.deg < 1:
        return False
    f = factor(p)
    return len(f.factors) == 1 and f.factors[0][1] == 1


def _require_prime(p: Poly) -> None:
    if not p.is_monic() or not is_irreducible(p):
        raise DomainError(f"{p} is not a monic irreducible polynomial")


def is_squarefree(a: Poly) -> bool:
    return a.deg < 1 or gcd(a, a.derivative()).is_one()


# ---------------------------------------------------------------------------
# residue symbols


def legendre_symbol(d: Poly, p: Poly) -> int:
    """(d/p) for monic irreducible p, by Euler's criterion in A/p."""
    _require_prime(p)
    r = d % p
    if not r:
        return 0
    v = r.powmod((p.norm - 1) // 2, p)
    if v.is_one():
        return 1
    if v == p.ctx.poly(-1):
        return -1
    raise AssertionError(f"Euler criterion gave {v} for ({d}/{p})")


def bracket_symbol(d: Poly, p: Poly) -> int:
    """The three-case symbol {d/p}: 0 if ord_p d = 1, +1 if p^2 | d,
    otherwise the Legendre symbol."""
    if not d:
        raise DomainError("{d/p} undefined for d = 0")
    _require_prime(p)
    k = d.ord(p)
    if k == 1:
        return 0
    if k >= 2:
        return 1
    return legendre_symbol(d, p)


# ---------------------------------------------------------------------------
# squarefree part and behaviour at infinity


def squarefree_decompose(d: Poly) -> tuple[Poly, Poly]:
    """Return (d0, f) with d = d0 * f^2, d0 squarefree, f monic."""
    if not d:
        raise DomainError("squarefree part of 0")
    ctx = d.ctx
    fac = factor(d)
    d0 = ctx.poly(fac.unit)
    f = ctx.one
    for p, e in fac.factors:
        if e % 2:
            d0 = d0 * p
        f = f * p ** (e // 2)
    return d0, f


def is_perfect_square(d: Poly) -> bool:
    if not d:
        return True
    d0, _ = squarefree_decompose(d)
    return d0.is_constant() and d.ctx.is_square(d0.lc)


class InfinityType(enum.Enum):
    RAMIFIED = "ramified"
    INERT = "inert"
    SPLIT = "split"

    @property
    def e_inf(self) -> int:
        return 2 if self is InfinityType.RAMIFIED else 1

    @property
    def is_imaginary(self) -> bool:
        return self is not InfinityType.SPLIT


def _infinity_kind(d: Poly) -> InfinityType:
    if d.deg % 2:
        return InfinityType.RAMIFIED
    return InfinityType.SPLIT if d.ctx.is_square(d.lc) else InfinityType.INERT


def infinity_type(d: Poly) -> InfinityType:
    """Behaviour of the infinite place in k(sqrt d).

    Odd degree ramifies; even degree splits iff the leading coefficient is a
    square in F_q.
    """
    if not d:
        raise DomainError("infinity type of d = 0 (use is_nonpositive)")
    if is_perfect_square(d):
        raise SplitAlgebraError(f"{d} is a square: split quadratic algebra, not a field")
    return _infinity_kind(d)


def is_imaginary(d: Poly) -> bool:
    """d < 0: k(sqrt d) is a field in which infinity does not split."""
    # perfect squares have even degree and square leading coefficient
    return bool(d) and _infinity_kind(d) is not InfinityType.SPLIT


def is_nonpositive(d: Poly) -> bool:
    """d <= 0: d = 0 or d imaginary."""
    return not d or is_imaginary(d)
