"""Univariate polynomials over an exact field, and separable presentations.

In characteristic p an irreducible polynomial f can be written uniquely as
f(t) = f_sep(t^(p^n)) with f_sep separable; ``separable_presentation`` finds
that pair by repeatedly deflating t^p -> t while f' vanishes.
"""

from dataclasses import dataclass

from galtower.errors import (
    ConstantPolynomial,
    DivisionByZero,
    NoRoot,
    NotReducible,
    PresentationFailure,
)
from galtower.exactfield.dense import (
    dadd,
    dcompose,
    dconst,
    dderiv,
    ddivmod,
    deval,
    dgcd,
    dinflate,
    dmonic,
    dmul,
    dneg,
    dsub,
    dtrim,
)
from galtower.exactfield.text import element_to_str


@dataclass(frozen=True, eq=False)
class UniPoly:
    """A polynomial over ``domain`` (a base field or a tower), constant term first."""

    domain: object
    coeffs: tuple
    var: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", dtrim(self.domain, tuple(self.coeffs)))

    @classmethod
    def from_terms(cls, domain, terms, var="t"):
        """Build from a mapping exponent -> coefficient."""
        if not terms:
            return cls(domain, (), var)
        out = [domain.zero] * (max(terms) + 1)
        for k, c in terms.items():
            out[k] = domain.add(out[k], c)
        return cls(domain, tuple(out), var)

    @classmethod
    def monomial(cls, domain, k, c=None, var="t"):
        c = domain.one if c is None else c
        return cls(domain, (domain.zero,) * k + (c,), var)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1]

    def _new(self, coeffs):
        return UniPoly(self.domain, coeffs, self.var)

    def __add__(self, other):
        return self._new(dadd(self.domain, self.coeffs, other.coeffs))

    def __sub__(self, other):
        return self._new(dsub(self.domain, self.coeffs, other.coeffs))

    def __neg__(self):
        return self._new(dneg(self.domain, self.coeffs))

    def __mul__(self, other):
        return self._new(dmul(self.domain, self.coeffs, other.coeffs))

    def __divmod__(self, other):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q, r = ddivmod(self.domain, self.coeffs, other.coeffs)
        return self._new(q), self._new(r)

    def __call__(self, x):
        return deval(self.domain, self.coeffs, x)

    def gcd(self, other):
        return self._new(dgcd(self.domain, self.coeffs, other.coeffs))

    def monic(self):
        return self._new(dmonic(self.domain, self.coeffs))

    def derivative(self):
        return self._new(dderiv(self.domain, self.coeffs))

    def compose(self, other):
        return self._new(dcompose(self.domain, self.coeffs, other.coeffs))

    def inflate(self, k):
        """f(t^k)."""
        return self._new(dinflate(self.domain, self.coeffs, k))

    def exponents(self):
        zero = self.domain.zero
        return [i for i, c in enumerate(self.coeffs) if c != zero]

    def to_str(self):
        D = self.domain
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == D.zero:
                continue
            cs = D.to_str(c) if hasattr(D, "to_str") else element_to_str(D, c)
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if not mono:
                terms.append(cs)
            elif c == D.one:
                terms.append(mono)
            elif any(ch in cs for ch in "+/*"):
                terms.append(f"({cs})*{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"UniPoly({self.to_str()})"


def poly_arith(f, g, op):
    """Dispatch helper mirroring the operation table: add, mul, divmod, gcd,
    derivative (of f), compose (f(g)), eval (f at the domain element g)."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "divmod":
        return divmod(f, g)
    if op == "gcd":
        return f.gcd(g)
    if op == "derivative":
        return f.derivative()
    if op == "compose":
        return f.compose(g)
    if op == "eval":
        return f(g)
    raise ValueError(f"unknown operation {op!r}")


def is_separable_poly(f):
    if f.degree < 1:
        raise ConstantPolynomial("separability is undefined for constants")
    return f.gcd(f.derivative()).degree == 0


def deflate(f, k):
    """g with f(t) = g(t^k); requires every occurring exponent divisible by k."""
    bad = [i for i in f.exponents() if i % k]
    if bad:
        raise NotReducible(f"exponent {bad[0]} not divisible by {k}")
    return f._new(f.coeffs[::k])


@dataclass(frozen=True)
class SeparablePresentation:
    f_sep: UniPoly
    n: int

    def reconstruct(self):
        p = self.f_sep.domain.p
        return self.f_sep.inflate(p**self.n)


def separable_presentation(f):
    """Return (f_sep, n) with f = f_sep(t^(p^n)) and f_sep separable.

    Accepts any nonconstant input; raises PresentationFailure when the terminal
    polynomial is still inseparable (only possible for reducible inputs such as
    t^2 in characteristic > 2).
    """
    if f.degree < 1:
        raise ConstantPolynomial("constant polynomial has no separable presentation")
    p = f.domain.p
    n = 0
    g = f
    while g.derivative().is_zero():
        g = deflate(g, p)
        n += 1
    if not is_separable_poly(g):
        raise PresentationFailure(f"{f.to_str()}: terminal polynomial {g.to_str()} is inseparable")
    return SeparablePresentation(g, n)


def descend_coefficients(sp):
    """The polynomial with coefficients lambda_i^(1/p^n); NoRoot names the first failure."""
    f = sp.f_sep
    if sp.n == 0:
        return f
    D = f.domain
    out = []
    for i, c in enumerate(f.coeffs):
        if c == D.zero:
            out.append(c)
            continue
        r = D.pth_root(c, sp.n)
        if r is None:
            raise NoRoot(f"coefficient {i} has no {D.p}^{sp.n}-th root", index=i)
        out.append(r)
    return f._new(tuple(out))


def constant_poly(domain, c, var="t"):
    return UniPoly(domain, dconst(domain, c), var)
