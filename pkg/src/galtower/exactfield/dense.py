"""Dense univariate polynomial arithmetic over an exact field domain.

A polynomial is a tuple of domain elements, constant term first, with no
trailing zeros.  Over a prime field the work is delegated to the F_p kernel.
"""

from galtower.errors import DegreeOverflow, DivisionByZero
from galtower.exactfield._kernel import fpoly


def dtrim(F, f):
    zero = F.zero
    n = len(f)
    while n and f[n - 1] == zero:
        n -= 1
    return tuple(f[:n])


def ddegree(f):
    return len(f) - 1


def dconst(F, c):
    return () if c == F.zero else (c,)


def dadd(F, f, g):
    if F.prime:
        return fpoly.add(f, g, F.prime)
    if not f:
        return g
    if not g:
        return f
    if len(f) < len(g):
        f, g = g, f
    add = F.add
    out = list(f)
    for i, c in enumerate(g):
        out[i] = add(out[i], c)
    if len(f) == len(g):
        return dtrim(F, out)
    return tuple(out)


def dneg(F, f):
    if F.prime:
        return fpoly.neg(f, F.prime)
    neg = F.neg
    return tuple(neg(c) for c in f)


def dsub(F, f, g):
    if F.prime:
        return fpoly.sub(f, g, F.prime)
    if not g:
        return f
    return dadd(F, f, dneg(F, g))


def dscale(F, f, c):
    if F.prime:
        return fpoly.scale(f, c, F.prime)
    if c == F.zero:
        return ()
    if c == F.one:
        return f
    mul = F.mul
    return tuple(mul(a, c) for a in f)


def dmul(F, f, g, cap=None):
    if not f or not g:
        return ()
    if cap is not None and len(f) + len(g) - 2 > cap:
        raise DegreeOverflow(f"polynomial degree {len(f) + len(g) - 2} exceeds cap {cap}")
    if F.prime:
        return fpoly.mul(f, g, F.prime)
    if len(f) == 1:
        return dscale(F, g, f[0])
    if len(g) == 1:
        return dscale(F, f, g[0])
    zero = F.zero
    add, mul = F.add, F.mul
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == zero:
            continue
        for j, b in enumerate(g):
            if b != zero:
                out[i + j] = add(out[i + j], mul(a, b))
    return dtrim(F, out)


def ddivmod(F, f, g):
    if not g:
        raise DivisionByZero("polynomial division by zero")
    if F.prime:
        return fpoly.divmod_(f, g, F.prime)
    dg = len(g) - 1
    if len(f) <= dg:
        return (), f
    zero = F.zero
    sub, mul = F.sub, F.mul
    lc = g[-1]
    inv = None if lc == F.one else F.inv(lc)
    r = list(f)
    q = [zero] * (len(f) - dg)
    for k in range(len(f) - 1, dg - 1, -1):
        c = r[k]
        if c == zero:
            continue
        if inv is not None:
            c = mul(c, inv)
        q[k - dg] = c
        base = k - dg
        for j in range(dg):
            if g[j] != zero:
                r[base + j] = sub(r[base + j], mul(c, g[j]))
        r[k] = zero
    return dtrim(F, q), dtrim(F, r[:dg])


def dquo(F, f, g):
    if F.prime:
        return fpoly.quo(f, g, F.prime)
    return ddivmod(F, f, g)[0]


def drem(F, f, g):
    if F.prime:
        return fpoly.rem(f, g, F.prime)
    return ddivmod(F, f, g)[1]


def dmonic(F, f):
    if F.prime:
        return fpoly.monic(f, F.prime)
    if not f or f[-1] == F.one:
        return f
    return dscale(F, f, F.inv(f[-1]))


def dgcd(F, f, g):
    """Monic gcd; gcd(0, 0) is 0."""
    if F.prime:
        return fpoly.gcd(f, g, F.prime)
    while g:
        f, g = g, drem(F, f, g)
    return dmonic(F, f)


def dderiv(F, f):
    if F.prime:
        return fpoly.deriv(f, F.prime)
    return dtrim(F, [F.mul(F.from_int(i), f[i]) for i in range(1, len(f))])


def dpow(F, f, e, cap=None):
    if e < 0:
        raise ValueError("negative exponent")
    result = (F.one,)
    base = f
    while e:
        if e & 1:
            result = dmul(F, result, base, cap)
        e >>= 1
        if e:
            base = dmul(F, base, base, cap)
    return result


def deval(F, f, x):
    """Horner evaluation; ``x`` must be an element of ``F``."""
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def dcompose(F, f, g):
    """f(g(t))."""
    acc = ()
    for c in reversed(f):
        acc = dadd(F, dmul(F, acc, g), dconst(F, c))
    return acc


def dinflate(F, f, k):
    """f(t^k)."""
    if k == 1 or not f:
        return f
    out = [F.zero] * ((len(f) - 1) * k + 1)
    for i, c in enumerate(f):
        out[i * k] = c
    return tuple(out)
