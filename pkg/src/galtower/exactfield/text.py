"""Canonical text form of field elements.

Finite-field scalars print as integers (or polynomials in ``a`` when d > 1);
rational functions print as ``num`` or ``(num)/(den)`` with terms in
descending degree and ``^`` for powers.  The output parses back to the same
value with :func:`galtower.expr.parse_element`.
"""


def _atomic(s):
    return not any(ch in s for ch in "+*/")


def _wrap(s):
    return s if _atomic(s) else f"({s})"


def poly_to_str(F, coeffs, var):
    """Coefficients over ``F`` (constant first) as an infix polynomial in ``var``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == F.zero:
            continue
        cs = element_to_str(F, c)
        if i == 0:
            terms.append(cs)
            continue
        mono = var if i == 1 else f"{var}^{i}"
        if c == F.one:
            terms.append(mono)
        elif "+" in cs or "/" in cs:
            terms.append(f"({cs})*{mono}")
        else:
            terms.append(f"{cs}*{mono}")
    return "+".join(terms) if terms else "0"


def element_to_str(F, a):
    if F.depth == 0:
        return F.to_str(a)
    num, den = a
    ns = poly_to_str(F.lower, num, F.var)
    if len(den) == 1:
        return ns
    return f"{_wrap(ns)}/{_wrap(poly_to_str(F.lower, den, F.var))}"
