"""Pure-Python kernels, used when the compiled extension is unavailable.

Polynomials are plain lists of residues mod q, lowest degree first, no
trailing zeros.  Signatures match ``_kernels.pyx`` exactly.
"""

from __future__ import annotations


def _polymod(a: list[int], b: list[int], q: int) -> list[int]:
    # b monic
    r = list(a)
    db = len(b) - 1
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            s = k - db
            for j in range(db + 1):
                r[s + j] = (r[s + j] - c * b[j]) % q
    del r[db:]
    while r and r[-1] == 0:
        r.pop()
    return r


def _mulmod(a: list[int], b: list[int], m: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _polymod([x % q for x in c], m, q)


def jacobi(a: list[int], b: list[int], q: int) -> int:
    """Jacobi symbol (a/b) in F_q[t] for monic b, via quadratic reciprocity."""
    half = (q - 1) // 2
    res = 1
    a = _polymod(list(a), b, q) if len(b) > 1 else []
    b = list(b)
    while len(b) > 1:
        if not a:
            return 0
        c = a[-1]
        if c != 1:
            # (c/b) = chi(c)^deg b
            if (len(b) - 1) % 2 and pow(c, half, q) != 1:
                res = -res
            inv = pow(c, q - 2, q)
            a = [x * inv % q for x in a]
        da, db = len(a) - 1, len(b) - 1
        if half % 2 and da % 2 and db % 2:
            res = -res
        a, b = _polymod(b, a, q) if da > 0 else [], a
    return res


def char_sums(q: int, d0: list[int], nmax: int) -> list[int]:
    """[S_0, ..., S_nmax] with S_n = sum of (d0/m) over monic m of degree n."""
    out = []
    for n in range(nmax + 1):
        m = [0] * n + [1]
        total = 0
        while True:
            total += jacobi(d0, m, q)
            i = 0
            while i < n:
                m[i] += 1
                if m[i] < q:
                    break
                m[i] = 0
                i += 1
            if i == n:
                break
        out.append(total)
    return out


def quadratic_char_sum(q: int, modulus: list[int], f: list[int]) -> int:
    """Sum over x in A/(modulus) of the quadratic character of f(x).

    ``modulus`` must be monic irreducible of degree n, so A/(modulus) is the
    field with q^n elements; the character is evaluated by Euler's criterion.
    """
    n = len(modulus) - 1
    e = (q**n - 1) // 2
    total = 0
    x = [0] * n
    while True:
        xs = list(x)
        while xs and xs[-1] == 0:
            xs.pop()
        # Horner evaluation of f at xs
        y: list[int] = []
        for c in reversed(f):
            y = _mulmod(y, xs, modulus, q)
            if c:
                if y:
                    y[0] = (y[0] + c) % q
                else:
                    y = [c % q]
                while y and y[-1] == 0:
                    y.pop()
        if y:
            r = [1]
            base = y
            k = e
            while k:
                if k & 1:
                    r = _mulmod(r, base, modulus, q)
                k >>= 1
                if k:
                    base = _mulmod(base, base, modulus, q)
            if r == [1]:
                total += 1
            else:
                total -= 1
        i = 0
        while i < n:
            x[i] += 1
            if x[i] < q:
                break
            x[i] = 0
            i += 1
        if i == n:
            break
    return total
