# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense polynomial kernel over F_p; mirrors ``_fpoly_py``."""

from libc.stdlib cimport malloc, free


cdef tuple _pack(long *a, Py_ssize_t n):
    while n > 0 and a[n - 1] == 0:
        n -= 1
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = a[i]
    return tuple(out)


cdef long _inv(long a, long p):
    # extended Euclid; p is prime and a is a nonzero residue
    cdef long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def trim(f):
    cdef Py_ssize_t n = len(f)
    while n and not f[n - 1]:
        n -= 1
    return tuple(f[:n])


def add(tuple f, tuple g, long p):
    cdef Py_ssize_t nf = len(f), ng = len(g), n, i
    if nf < ng:
        f, g = g, f
        nf, ng = ng, nf
    n = nf
    if n == 0:
        return ()
    cdef long *a = <long *> malloc(n * sizeof(long))
    try:
        for i in range(nf):
            a[i] = <long> f[i]
        for i in range(ng):
            a[i] = (a[i] + <long> g[i]) % p
        return _pack(a, n)
    finally:
        free(a)


def sub(tuple f, tuple g, long p):
    cdef Py_ssize_t nf = len(f), ng = len(g), i
    cdef Py_ssize_t n = nf if nf > ng else ng
    if n == 0:
        return ()
    cdef long *a = <long *> malloc(n * sizeof(long))
    try:
        for i in range(n):
            a[i] = 0
        for i in range(nf):
            a[i] = <long> f[i]
        for i in range(ng):
            a[i] = (a[i] - <long> g[i] + p) % p
        return _pack(a, n)
    finally:
        free(a)


def neg(tuple f, long p):
    return tuple([(p - <long> c) % p for c in f])


def scale(tuple f, long c, long p):
    c %= p
    if c == 0:
        return ()
    if c == 1:
        return f
    return tuple([(<long> a * c) % p for a in f])


def mul(tuple f, tuple g, long p):
    cdef Py_ssize_t nf = len(f), ng = len(g), i, j, n
    if nf == 0 or ng == 0:
        return ()
    n = nf + ng - 1
    cdef long *a = <long *> malloc(nf * sizeof(long))
    cdef long *b = <long *> malloc(ng * sizeof(long))
    cdef long *out = <long *> malloc(n * sizeof(long))
    cdef long ai
    try:
        for i in range(nf):
            a[i] = <long> f[i]
        for i in range(ng):
            b[i] = <long> g[i]
        for i in range(n):
            out[i] = 0
        for i in range(nf):
            ai = a[i]
            if ai:
                for j in range(ng):
                    out[i + j] = (out[i + j] + ai * b[j]) % p
        return _pack(out, n)
    finally:
        free(a)
        free(b)
        free(out)


cdef tuple _divmod(tuple f, tuple g, long p, bint want_q):
    cdef Py_ssize_t nf = len(f), ng = len(g), i, j, k, dg
    if ng == 0:
        raise ZeroDivisionError("polynomial division by zero")
    dg = ng - 1
    if nf <= dg:
        return (), f
    cdef long *r = <long *> malloc(nf * sizeof(long))
    cdef long *b = <long *> malloc(ng * sizeof(long))
    cdef long *q = <long *> malloc((nf - dg) * sizeof(long))
    cdef long c, inv
    try:
        for i in range(nf):
            r[i] = <long> f[i]
        for i in range(ng):
            b[i] = <long> g[i]
        for i in range(nf - dg):
            q[i] = 0
        inv = _inv(b[dg], p)
        for k in range(nf - 1, dg - 1, -1):
            c = r[k] % p
            if c:
                c = (c * inv) % p
                q[k - dg] = c
                for j in range(ng):
                    r[k - dg + j] = (r[k - dg + j] - c * b[j]) % p
                    if r[k - dg + j] < 0:
                        r[k - dg + j] += p
        if want_q:
            return _pack(q, nf - dg), _pack(r, dg)
        return (), _pack(r, dg)
    finally:
        free(r)
        free(b)
        free(q)


def divmod_(tuple f, tuple g, long p):
    return _divmod(f, g, p, True)


def rem(tuple f, tuple g, long p):
    return _divmod(f, g, p, False)[1]


def quo(tuple f, tuple g, long p):
    return _divmod(f, g, p, True)[0]


def monic(tuple f, long p):
    if not f:
        return ()
    cdef long lc = f[len(f) - 1]
    if lc == 1:
        return f
    return scale(f, _inv(lc, p), p)


def gcd(tuple f, tuple g, long p):
    while g:
        f, g = g, _divmod(f, g, p, False)[1]
    return monic(f, p)


def deriv(tuple f, long p):
    cdef Py_ssize_t n = len(f), i
    if n <= 1:
        return ()
    cdef long *a = <long *> malloc((n - 1) * sizeof(long))
    try:
        for i in range(1, n):
            a[i - 1] = (i * <long> f[i]) % p
        return _pack(a, n - 1)
    finally:
        free(a)
