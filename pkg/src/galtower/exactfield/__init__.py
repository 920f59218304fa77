"""Exact arithmetic in K = F_q(x1, ..., xk).

Fields are *domains*: objects with ``zero``, ``one`` and methods ``add``,
``mul``, ``inv`` ... acting on plain immutable values (ints for F_q, nested
tuples for rational functions).  Values carry no reference to their field.
"""

from dataclasses import dataclass

from galtower.errors import FieldTooLarge, NoRoot
from galtower.exactfield._kernel import BACKEND
from galtower.exactfield.finite import DEFAULT_ENUMERATION_BOUND, FiniteField, is_prime
from galtower.exactfield.ratfunc import DEFAULT_DEGREE_CAP, RationalFunctionField
from galtower.exactfield.text import element_to_str

__all__ = [
    "BACKEND",
    "BaseFieldDesc",
    "FiniteField",
    "FiniteFieldDesc",
    "RationalFunctionField",
    "element_to_str",
    "make_base_field",
    "pth_power_root",
    "roots_of_unity",
]


@dataclass(frozen=True)
class FiniteFieldDesc:
    p: int
    modulus: tuple = None  # monic, constant term first; None for d = 1

    @property
    def d(self):
        return 1 if self.modulus is None else len(self.modulus) - 1

    def build(self, bound=DEFAULT_ENUMERATION_BOUND):
        return FiniteField(self.p, self.modulus, bound=bound)


@dataclass(frozen=True)
class BaseFieldDesc:
    ff: FiniteFieldDesc
    variables: tuple = ()

    def build(self, bound=DEFAULT_ENUMERATION_BOUND, degree_cap=DEFAULT_DEGREE_CAP):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        K = self.ff.build(bound)
        for v in self.variables:
            K = RationalFunctionField(K, v, degree_cap=degree_cap)
        return K


def make_base_field(p, variables=(), modulus=None, **kwargs):
    """Shorthand: ``make_base_field(3, "xy")`` is F_3(x)(y)."""
    mod = tuple(modulus) if modulus is not None else None
    return BaseFieldDesc(FiniteFieldDesc(p, mod), tuple(variables)).build(**kwargs)


def pth_power_root(K, a, e=1):
    """The unique b in K with b^(p^e) = a; raises NoRoot if there is none."""
    if e < 1:
        raise ValueError("e must be at least 1")
    b = K.pth_root(a, e)
    if b is None:
        raise NoRoot(f"{element_to_str(K, a)} is not a {K.p}^{e}-th power")
    return b


def roots_of_unity(K, m, bound=DEFAULT_ENUMERATION_BOUND):
    """All m-th roots of unity of the constant field F_q, embedded in K."""
    if K.ff.q > bound:
        raise FieldTooLarge(f"q = {K.ff.q} exceeds the enumeration bound {bound}")
    return K.roots_of_unity(m)
