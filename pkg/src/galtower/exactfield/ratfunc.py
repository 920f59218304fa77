"""Nested univariate rational function fields F_q(x1)(x2)...(xk).

An element of ``RationalFunctionField(lower, var)`` is a pair ``(num, den)``
of dense polynomials in ``var`` with coefficients in ``lower``.  The pair is
always normalized: ``den`` monic, ``gcd(num, den) = 1`` and zero is
``((), (1,))``.  Normalized pairs compare equal exactly when the rational
functions are equal, so plain tuple equality and hashing are correct.
"""

from galtower.errors import DegreeOverflow, DivisionByZero
from galtower.exactfield.dense import (
    dadd,
    dconst,
    dgcd,
    dmul,
    dneg,
    dpow,
    dquo,
    dscale,
    dsub,
    dtrim,
)

DEFAULT_DEGREE_CAP = 512


class RationalFunctionField:
    prime = 0

    def __init__(self, lower, var, degree_cap=DEFAULT_DEGREE_CAP):
        if var in lower.variables:
            raise ValueError(f"variable {var!r} already used")
        self.lower = lower
        self.var = var
        self.variables = lower.variables + (var,)
        self.depth = lower.depth + 1
        self.p = self.char = lower.p
        self.ff = lower.ff
        self.cap = degree_cap
        lo = lower.one
        self._one_poly = (lo,)
        self.zero = ((), self._one_poly)
        self.one = ((lo,), self._one_poly)

    def __repr__(self):
        return f"{self.lower!r}({self.var})"

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and self.var == other.var
            and self.lower == other.lower
        )

    def __hash__(self):
        return hash((self.var, self.lower))

    # -- construction -----------------------------------------------------

    def embed(self, c):
        """Embed an element of the lower field."""
        return (dconst(self.lower, c), self._one_poly)

    def embed_from(self, field, c):
        """Embed an element of any field below this one in the nesting."""
        if field == self:
            return c
        return self.embed(self.lower.embed_from(field, c))

    def from_int(self, n):
        return self.embed(self.lower.from_int(n))

    def gen(self):
        lo = self.lower
        return ((lo.zero, lo.one), self._one_poly)

    def gens(self):
        """Elements for every variable, innermost first."""
        below = [self.embed(g) for g in self.lower.gens()] if self.depth > 1 else []
        return below + [self.gen()]

    def from_poly(self, num, den=None):
        L = self.lower
        num = dtrim(L, tuple(num))
        den = self._one_poly if den is None else dtrim(L, tuple(den))
        if not den:
            raise DivisionByZero("zero denominator")
        return self._normalize(num, den)

    def _normalize(self, num, den):
        L = self.lower
        if not num:
            return self.zero
        if len(den) > 1:
            g = dgcd(L, num, den)
            if len(g) > 1:
                num = dquo(L, num, g)
                den = dquo(L, den, g)
        lc = den[-1]
        if lc != L.one:
            inv = L.inv(lc)
            num = dscale(L, num, inv)
            den = dscale(L, den, inv)
        if len(num) > self.cap + 1 or len(den) > self.cap + 1:
            raise DegreeOverflow(f"degree exceeds cap {self.cap} in {self.var}")
        return (num, den)

    def is_zero(self, a):
        return not a[0]

    def is_polynomial(self, a):
        return len(a[1]) == 1

    def constant_value(self, a):
        """The lower-field value if ``a`` is constant in this variable, else None."""
        num, den = a
        if len(den) != 1 or len(num) > 1:
            return None
        return num[0] if num else self.lower.zero

    # -- arithmetic -------------------------------------------------------

    def add(self, a, b):
        n1, d1 = a
        if not n1:
            return b
        n2, d2 = b
        if not n2:
            return a
        L = self.lower
        if d1 == d2:
            num = dadd(L, n1, n2)
            if not num:
                return self.zero
            if len(d1) == 1:
                return (num, d1)
            return self._normalize(num, d1)
        # p/1 + r/s with gcd(r, s) = 1 needs no gcd: gcd(p*s + r, s) = gcd(r, s)
        if len(d1) == 1:
            return (dadd(L, dmul(L, n1, d2, self.cap), n2), d2)
        if len(d2) == 1:
            return (dadd(L, n1, dmul(L, n2, d1, self.cap)), d1)
        g = dgcd(L, d1, d2)
        if len(g) == 1:
            num = dadd(L, dmul(L, n1, d2), dmul(L, n2, d1))
            if not num:
                return self.zero
            return (num, dmul(L, d1, d2, self.cap))
        e1 = dquo(L, d1, g)
        e2 = dquo(L, d2, g)
        num = dadd(L, dmul(L, n1, e2), dmul(L, n2, e1))
        return self._normalize(num, dmul(L, dmul(L, e1, e2), g, self.cap))

    def neg(self, a):
        if not a[0]:
            return a
        return (dneg(self.lower, a[0]), a[1])

    def sub(self, a, b):
        if not b[0]:
            return a
        return self.add(a, (dneg(self.lower, b[0]), b[1]))

    def mul(self, a, b):
        n1, d1 = a
        n2, d2 = b
        if not n1 or not n2:
            return self.zero
        L = self.lower
        cap = self.cap
        one = self._one_poly
        if len(d1) == 1 and len(d2) == 1:
            return (dmul(L, n1, n2, cap), one)
        if len(n1) == 1 and len(d1) == 1:
            return (dscale(L, n2, n1[0]), d2)
        if len(n2) == 1 and len(d2) == 1:
            return (dscale(L, n1, n2[0]), d1)
        if len(d2) > 1:
            g1 = dgcd(L, n1, d2)
            if len(g1) > 1:
                n1 = dquo(L, n1, g1)
                d2 = dquo(L, d2, g1)
        if len(d1) > 1:
            g2 = dgcd(L, n2, d1)
            if len(g2) > 1:
                n2 = dquo(L, n2, g2)
                d1 = dquo(L, d1, g2)
        return (dmul(L, n1, n2, cap), dmul(L, d1, d2, cap))

    def inv(self, a):
        num, den = a
        if not num:
            raise DivisionByZero("inverse of zero in " + repr(self))
        L = self.lower
        lc = num[-1]
        if lc == L.one:
            return (den, num)
        c = L.inv(lc)
        return (dscale(L, den, c), dscale(L, num, c))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return self.one
        if not a[0]:
            return self.zero
        L = self.lower
        num, den = a
        den_e = den if len(den) == 1 else dpow(L, den, e, self.cap)
        return (dpow(L, num, e, self.cap), den_e)

    def frobenius(self, a, e=1):
        """a^(p^e), computed coefficientwise."""
        return (self._frob_poly(a[0], e), self._frob_poly(a[1], e))

    def _frob_poly(self, f, e):
        L = self.lower
        k = self.p**e
        if len(f) <= 1:
            return tuple(L.frobenius(c, e) for c in f)
        out = [L.zero] * ((len(f) - 1) * k + 1)
        for i, c in enumerate(f):
            if c != L.zero:
                out[i * k] = L.frobenius(c, e)
        return tuple(out)

    # -- roots ------------------------------------------------------------

    def pth_root(self, a, e=1):
        """b with b^(p^e) = a, or None.

        A normalized fraction is a p^e-th power iff every exponent occurring in
        numerator and denominator is divisible by p^e and every coefficient is
        a p^e-th power in the lower field.
        """
        num = self._pth_root_poly(a[0], e)
        if num is None:
            return None
        den = self._pth_root_poly(a[1], e)
        if den is None:
            return None
        return (num, den)

    def _pth_root_poly(self, f, e):
        L = self.lower
        k = self.p**e
        if len(f) and (len(f) - 1) % k:
            return None
        out = []
        for i, c in enumerate(f):
            if i % k:
                if c != L.zero:
                    return None
                continue
            r = L.pth_root(c, e)
            if r is None:
                return None
            out.append(r)
        return tuple(out)

    def nth_root(self, a, m):
        """An m-th root of ``a`` for m coprime to p, or None.

        Numerator and denominator are rooted separately (both must be m-th
        powers of coprime polynomials); each polynomial root is found from the
        top coefficient down and then verified.
        """
        if m % self.p == 0:
            raise ValueError("nth_root needs m coprime to the characteristic")
        if not a[0]:
            return self.zero
        num = self._nth_root_poly(a[0], m)
        if num is None:
            return None
        den = self._nth_root_poly(a[1], m)
        if den is None:
            return None
        return self._normalize(num, den)

    def _nth_root_poly(self, f, m):
        L = self.lower
        deg = len(f) - 1
        if deg % m:
            return None
        # lowest nonzero exponent must also be divisible by m
        low = next(i for i, c in enumerate(f) if c != L.zero)
        if low % m:
            return None
        lead = L.nth_root(f[-1], m)
        if lead is None:
            return None
        s = deg // m
        root = [L.zero] * (s + 1)
        root[s] = lead
        denom = L.mul(L.from_int(m), L.pow(lead, m - 1))
        for k in range(1, s + 1):
            cur = dpow(L, dtrim(L, root), m)
            idx = deg - k
            have = cur[idx] if idx < len(cur) else L.zero
            diff = L.sub(f[idx], have)
            root[s - k] = L.div(diff, denom)
        root = dtrim(L, root)
        if dpow(L, root, m) != f:
            return None
        return root

    def roots_of_unity(self, m):
        return [self.embed_from(self.ff, z) for z in self.ff.roots_of_unity(m)]

    # -- decomposition over the subfield of p^e-th powers ------------------

    def decompose(self, a, e=1):
        """Write a = sum_alpha theta_alpha^(p^e) * x^alpha.

        Returns a dict mapping exponent tuples alpha (one entry per variable,
        innermost first, each in range(p^e)) to theta_alpha in this field;
        zero components are omitted.
        """
        num, den = a
        if not num:
            return {}
        L = self.lower
        k = self.p**e
        # a = num * den^(k-1) / den^k and den^k is a k-th power
        big = num if len(den) == 1 else dmul(L, num, dpow(L, den, k - 1))
        den_root = den
        pieces = {}
        for i, c in enumerate(big):
            if c == L.zero:
                continue
            r, s = i % k, i // k
            for beta, theta in L.decompose(c, e).items():
                pieces.setdefault((beta, r), {})[s] = theta
        out = {}
        for (beta, r), coeffs in pieces.items():
            poly = [L.zero] * (max(coeffs) + 1)
            for s, theta in coeffs.items():
                poly[s] = theta
            out[beta + (r,)] = self._normalize(dtrim(L, poly), den_root)
        return out

    def monomial(self, alpha):
        """x^alpha for an exponent tuple, innermost variable first."""
        *below, top = alpha
        base = self.embed(self.lower.monomial(tuple(below))) if self.depth > 1 else self.one
        if top == 0:
            return base
        L = self.lower
        return self.mul(base, ((L.zero,) * top + (L.one,), self._one_poly))

    # -- misc -------------------------------------------------------------

    def random(self, rng, degree=2, density=0.7):
        L = self.lower

        def poly(monic=False):
            d = rng.randint(0, degree)
            coeffs = [
                L.random(rng, degree=max(degree - 1, 1), density=density)
                if rng.random() < density
                else L.zero
                for _ in range(d + 1)
            ]
            if monic:
                coeffs[-1] = L.one
            return coeffs

        num = poly()
        den = poly(monic=True) if rng.random() < 0.5 else [L.one]
        return self.from_poly(num, den)

    def to_str(self, a):
        from galtower.exactfield.text import element_to_str

        return element_to_str(self, a)
