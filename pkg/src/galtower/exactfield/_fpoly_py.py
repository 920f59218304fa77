"""Dense polynomial kernel over a prime field F_p (pure Python).

Polynomials are tuples of ints in ``range(p)``, lowest degree first, with no
trailing zeros.  ``_fpoly_ext`` is the compiled twin with the same API.
"""


def trim(f):
    n = len(f)
    while n and not f[n - 1]:
        n -= 1
    return tuple(f[:n])


def add(f, g, p):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    if len(f) == len(g):
        return trim(out)
    return tuple(out)


def sub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return trim(out)


def neg(f, p):
    return tuple((-c) % p for c in f)


def scale(f, c, p):
    c %= p
    if not c:
        return ()
    if c == 1:
        return f
    return tuple((a * c) % p for a in f)


def mul(f, g, p):
    if not f or not g:
        return ()
    if len(f) == 1:
        return scale(g, f[0], p)
    if len(g) == 1:
        return scale(f, g[0], p)
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(c % p for c in out)


def divmod_(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    if len(f) <= dg:
        return (), f
    inv = pow(g[-1], p - 2, p)
    r = list(f)
    q = [0] * (len(f) - dg)
    for k in range(len(f) - 1, dg - 1, -1):
        c = r[k] % p
        if c:
            c = (c * inv) % p
            q[k - dg] = c
            base = k - dg
            for j in range(dg + 1):
                r[base + j] -= c * g[j]
    return trim(q), trim([c % p for c in r[:dg]])


def rem(f, g, p):
    return divmod_(f, g, p)[1]


def quo(f, g, p):
    return divmod_(f, g, p)[0]


def monic(f, p):
    if not f:
        return ()
    lc = f[-1]
    if lc == 1:
        return f
    return scale(f, pow(lc, p - 2, p), p)


def gcd(f, g, p):
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def deriv(f, p):
    return trim([(i * f[i]) % p for i in range(1, len(f))])
