"""Small finite fields F_q, q = p^d, with elements encoded as ints.

An element of F_q is the int whose base-p digits are its coefficients in the
power basis 1, a, a^2, ... of F_p[a]/(modulus).  For d = 1 this is simply the
residue mod p.  Multiplication for d > 1 goes through exp/log tables, which is
why q is bounded.
"""

import itertools

from galtower.errors import DivisionByZero, FieldTooLarge, NotIrreducible
from galtower.exactfield import _fpoly_py as fp

DEFAULT_ENUMERATION_BOUND = 2**16


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(modulus, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    d = len(modulus) - 1
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if fp.rem(modulus, tuple(low) + (1,), p) == ():
                return False
    return True


class FiniteField:
    depth = 0
    variables = ()

    def __init__(self, p, modulus=None, bound=DEFAULT_ENUMERATION_BOUND):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = self.char = p
        if modulus is None or len(modulus) <= 2:
            modulus = None
            self.d = 1
        else:
            modulus = fp.trim(tuple(c % p for c in modulus))
            if modulus[-1] != 1:
                raise ValueError("modulus must be monic")
            self.d = len(modulus) - 1
        self.modulus = modulus
        self.q = p**self.d
        if self.q > bound:
            raise FieldTooLarge(f"q = {self.q} exceeds the enumeration bound {bound}")
        self.prime = p if self.d == 1 else 0
        self.zero = 0
        self.one = 1
        self.ff = self
        if self.d > 1:
            if not is_irreducible_mod_p(modulus, p):
                raise NotIrreducible(f"modulus {modulus} is reducible over F_{p}")
            self._build_tables()

    def __repr__(self):
        if self.d == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.d})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # -- encoding ---------------------------------------------------------

    def _to_poly(self, a):
        out = []
        while a:
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def _from_poly(self, f):
        v = 0
        for c in reversed(f):
            v = v * self.p + c
        return v

    def _build_tables(self):
        p, q, mod = self.p, self.q, self.modulus
        order = q - 1
        factors = prime_factors(order)
        for cand in range(2, q):
            g = self._to_poly(cand)

            def power(e, g=g):
                r, b = (1,), g
                while e:
                    if e & 1:
                        r = fp.rem(fp.mul(r, b, p), mod, p)
                    b = fp.rem(fp.mul(b, b, p), mod, p)
                    e >>= 1
                return r

            if all(power(order // ell) != (1,) for ell in factors):
                break
        exp = [0] * order
        log = [0] * q
        cur = (1,)
        for k in range(order):
            v = self._from_poly(cur)
            exp[k] = v
            log[v] = k
            cur = fp.rem(fp.mul(cur, g, p), mod, p)
        self._exp = exp
        self._log = log

    # -- arithmetic -------------------------------------------------------

    def add(self, a, b):
        p = self.p
        if self.d == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        r, m = 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * m
            a //= p
            b //= p
            m *= p
        return r

    def neg(self, a):
        p = self.p
        if self.d == 1:
            return (-a) % p
        if p == 2:
            return a
        r, m = 0, 1
        while a:
            r += ((-(a % p)) % p) * m
            a //= p
            m *= p
        return r

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.d == 1:
            return (a * b) % self.p
        if not a or not b:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero in " + repr(self))
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if self.d == 1:
            return pow(a, e, self.p)
        if e == 0:
            return 1
        if not a:
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n):
        return n % self.p

    def is_zero(self, a):
        return a == 0

    def frobenius(self, a, e=1):
        return self.pow(a, self.p**e)

    def pth_root(self, a, e=1):
        """Inverse Frobenius; F_q is perfect so the root always exists."""
        if self.d == 1:
            return a
        # a^(p^(d-1)) is the inverse of x -> x^p
        k = ((self.d - 1) * e) % self.d
        return self.pow(a, self.p**k)

    def elements(self):
        return range(self.q)

    def nonzero_elements(self):
        return range(1, self.q)

    def generator(self):
        """The class of ``a`` (d > 1) as an element."""
        if self.d == 1:
            raise ValueError("prime field has no named generator")
        return self.p

    def roots(self, a, m):
        """All z in F_q with z^m = a, by exhaustive scan."""
        return [z for z in self.elements() if self.pow(z, m) == a]

    def nth_root(self, a, m):
        for z in self.elements():
            if self.pow(z, m) == a:
                return z
        return None

    def roots_of_unity(self, m):
        if m < 1:
            raise ValueError("m must be positive")
        return [z for z in self.nonzero_elements() if self.pow(z, m) == 1]

    def random(self, rng, **_):
        return rng.randrange(self.q)

    # -- text -------------------------------------------------------------

    def to_str(self, a):
        if self.d == 1:
            return str(a)
        terms = []
        for k, c in reversed(list(enumerate(self._to_poly(a)))):
            if not c:
                continue
            mono = "" if k == 0 else ("a" if k == 1 else f"a^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    # -- nesting protocol shared with RationalFunctionField ---------------

    def embed_from(self, field, c):
        if field != self:
            raise ValueError(f"cannot embed from {field!r} into {self!r}")
        return c

    def gens(self):
        return []

    def monomial(self, alpha):
        return 1

    def decompose(self, a, e=1):
        return {(): self.pth_root(a, e)} if a else {}

    def constant_value(self, a):
        return a
