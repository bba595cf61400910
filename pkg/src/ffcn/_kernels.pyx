# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot loops (character sums over F_q[t]).

Same signatures and semantics as ``_kernels_py``.  Polynomials are passed as
Python lists of residues, lowest degree first; internally they live in fixed
C arrays, which caps degrees at MAXD - 1.
"""

cdef enum:
    MAXD = 64


cdef inline int _deg(const long *a, int n) noexcept nogil:
    # n = allocated length; returns -1 for zero
    cdef int i = n - 1
    while i >= 0 and a[i] == 0:
        i -= 1
    return i


cdef int _mod_inplace(long *r, int dr, const long *b, int db, long q) noexcept nogil:
    # r <- r mod b, b monic of degree db; returns new degree of r
    cdef int k, j, s
    cdef long c
    k = dr
    while k >= db:
        c = r[k]
        if c:
            s = k - db
            for j in range(db + 1):
                r[s + j] = (r[s + j] - c * b[j]) % q
                if r[s + j] < 0:
                    r[s + j] += q
        k -= 1
    if dr >= db:
        for j in range(db, dr + 1):
            r[j] = 0
        dr = db - 1
    while dr >= 0 and r[dr] == 0:
        dr -= 1
    return dr


cdef long _powmod_int(long base, long e, long q) noexcept nogil:
    cdef long r = 1
    base %= q
    while e:
        if e & 1:
            r = r * base % q
        base = base * base % q
        e >>= 1
    return r


cdef int _jacobi(long *a, int da, long *b, int db, long q) noexcept nogil:
    # destroys a and b; b monic
    cdef int res = 1, j
    cdef long half = (q - 1) // 2
    cdef long c, inv
    cdef long *tmp
    cdef int tdeg
    if db <= 0:
        return 1
    da = _mod_inplace(a, da, b, db, q)
    while db > 0:
        if da < 0:
            return 0
        c = a[da]
        if c != 1:
            if (db & 1) and _powmod_int(c, half, q) != 1:
                res = -res
            inv = _powmod_int(c, q - 2, q)
            for j in range(da + 1):
                a[j] = a[j] * inv % q
        if (half & 1) and (da & 1) and (db & 1):
            res = -res
        if da == 0:
            return res
        # (a, b) <- (b mod a, a)
        db = _mod_inplace(b, db, a, da, q)
        tmp = a
        a = b
        b = tmp
        tdeg = da
        da = db
        db = tdeg
    return res


def jacobi(list a, list b, long q):
    cdef long A[MAXD]
    cdef long B[MAXD]
    cdef int i
    if len(a) >= MAXD or len(b) >= MAXD:
        raise ValueError("degree too large for compiled kernel")
    for i in range(MAXD):
        A[i] = 0
        B[i] = 0
    for i in range(len(a)):
        A[i] = a[i] % q
    for i in range(len(b)):
        B[i] = b[i] % q
    return _jacobi(A, _deg(A, MAXD), B, _deg(B, MAXD), q)


def char_sums(long q, list d0, int nmax):
    cdef long D[MAXD]
    cdef long M[MAXD]
    cdef long A[MAXD]
    cdef long B[MAXD]
    cdef int i, n, dd
    cdef long total
    if len(d0) >= MAXD or nmax + 1 >= MAXD:
        raise ValueError("degree too large for compiled kernel")
    for i in range(MAXD):
        D[i] = 0
    for i in range(len(d0)):
        D[i] = d0[i] % q
    dd = _deg(D, MAXD)
    out = []
    for n in range(nmax + 1):
        for i in range(MAXD):
            M[i] = 0
        M[n] = 1
        total = 0
        with nogil:
            while True:
                for i in range(MAXD):
                    A[i] = D[i]
                    B[i] = M[i]
                total += _jacobi(A, dd, B, n, q)
                i = 0
                while i < n:
                    M[i] += 1
                    if M[i] < q:
                        break
                    M[i] = 0
                    i += 1
                if i == n:
                    break
        out.append(total)
    return out


cdef void _mulmod(const long *x, const long *y, long *out, const long *m, int n, long q) noexcept nogil:
    # out <- x*y mod m; x, y reduced (length n), m monic degree n
    cdef long prod[2 * MAXD]
    cdef int i, j
    for i in range(2 * n):
        prod[i] = 0
    for i in range(n):
        if x[i]:
            for j in range(n):
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % q
    _mod_inplace(prod, 2 * n - 1, m, n, q)
    for i in range(n):
        out[i] = prod[i]


def quadratic_char_sum(long q, list modulus, list f):
    cdef long Mod[MAXD]
    cdef long X[MAXD]
    cdef long Y[MAXD]
    cdef long R[MAXD]
    cdef long Bs[MAXD]
    cdef long T[MAXD]
    cdef long F[MAXD]
    cdef int n, i, j, nf
    cdef long e, k, total = 0
    cdef bint is_one
    n = len(modulus) - 1
    nf = len(f)
    if n + 1 >= MAXD or nf >= MAXD:
        raise ValueError("degree too large for compiled kernel")
    size = (<object>q) ** n
    if size > 2 ** 40:
        raise ValueError("field too large for compiled kernel")
    for i in range(MAXD):
        Mod[i] = 0
        X[i] = 0
        F[i] = 0
    for i in range(n + 1):
        Mod[i] = modulus[i] % q
    for i in range(nf):
        F[i] = f[i] % q
    e = (size - 1) // 2
    with nogil:
        while True:
            # Horner: Y = f(X) mod Mod
            for i in range(n):
                Y[i] = 0
            for j in range(nf - 1, -1, -1):
                _mulmod(Y, X, T, Mod, n, q)
                for i in range(n):
                    Y[i] = T[i]
                Y[0] = (Y[0] + F[j]) % q
            if _deg(Y, n) >= 0:
                for i in range(n):
                    R[i] = 0
                    Bs[i] = Y[i]
                R[0] = 1
                k = e
                while k:
                    if k & 1:
                        _mulmod(R, Bs, T, Mod, n, q)
                        for i in range(n):
                            R[i] = T[i]
                    k >>= 1
                    if k:
                        _mulmod(Bs, Bs, T, Mod, n, q)
                        for i in range(n):
                            Bs[i] = T[i]
                is_one = R[0] == 1
                for i in range(1, n):
                    if R[i] != 0:
                        is_one = False
                if is_one:
                    total += 1
                else:
                    total -= 1
            i = 0
            while i < n:
                X[i] += 1
                if X[i] < q:
                    break
                X[i] = 0
                i += 1
            if i == n:
                break
    return total
