import random

import pytest

from galtower.errors import ConstantPolynomial, DivisionByZero, NoRoot, NotReducible, PresentationFailure
from galtower.exactfield import make_base_field
from galtower.expr import parse_element
from galtower.unipoly import (
    SeparablePresentation,
    UniPoly,
    deflate,
    descend_coefficients,
    is_separable_poly,
    poly_arith,
    separable_presentation,
)


def P(K, terms):
    """Polynomial from {exponent: coefficient text}."""
    return UniPoly.from_terms(K, {k: parse_element(K, c) for k, c in terms.items()})


def random_poly(K, rng, degree):
    coeffs = [K.random(rng, degree=1) for _ in range(degree)] + [K.one]
    return UniPoly(K, tuple(coeffs))


def test_derivative_kills_pth_powers():
    K = make_base_field(3, "x")
    assert P(K, {3: "1", 0: "-x"}).derivative().is_zero()


def test_gcd_common_factor():
    K = make_base_field(5, "x")
    g = P(K, {2: "1", 0: "-x^2"}).gcd(P(K, {1: "1", 0: "-x"}))
    assert g == P(K, {1: "1", 0: "-x"})


def test_divmod_example():
    K = make_base_field(2, "x")
    q, r = poly_arith(P(K, {3: "1", 0: "x"}), P(K, {1: "1", 0: "1"}), "divmod")
    assert q == P(K, {2: "1", 1: "1", 0: "1"})
    assert r == P(K, {0: "1+x"})


def test_divmod_by_zero():
    K = make_base_field(2, "x")
    with pytest.raises(DivisionByZero):
        divmod(P(K, {1: "1"}), UniPoly(K, ()))


def test_separability_examples():
    K = make_base_field(3, "x")
    assert is_separable_poly(P(K, {2: "1", 0: "-x"}))
    assert not is_separable_poly(P(K, {3: "1", 0: "-x"}))
    K2 = make_base_field(2, "x")
    assert not is_separable_poly(P(K2, {4: "1", 0: "-x"}))
    with pytest.raises(ConstantPolynomial):
        is_separable_poly(P(K, {0: "x"}))


def test_separable_presentation_examples():
    K = make_base_field(3, "xy")
    sp = separable_presentation(P(K, {3: "1", 0: "-y"}))
    assert (sp.f_sep, sp.n) == (P(K, {1: "1", 0: "-y"}), 1)
    sp = separable_presentation(P(K, {2: "1", 0: "-x"}))
    assert (sp.f_sep, sp.n) == (P(K, {2: "1", 0: "-x"}), 0)
    K2 = make_base_field(2, "xy")
    sp = separable_presentation(P(K2, {8: "1", 4: "x", 0: "y"}))
    assert (sp.f_sep, sp.n) == (P(K2, {2: "1", 1: "x", 0: "y"}), 2)


def test_presentation_failure_on_reducible_input():
    K = make_base_field(3, "x")
    with pytest.raises(PresentationFailure):
        separable_presentation(P(K, {2: "1"}))


def test_deflate_rejects_bad_exponent():
    K = make_base_field(3, "x")
    with pytest.raises(NotReducible):
        deflate(P(K, {4: "1", 0: "1"}), 3)


def test_descend_coefficients():
    K = make_base_field(3, "xy")
    with pytest.raises(NoRoot) as info:
        descend_coefficients(SeparablePresentation(P(K, {1: "1", 0: "-y"}), 1))
    assert info.value.index == 0
    K2 = make_base_field(2, "xy")
    out = descend_coefficients(SeparablePresentation(P(K2, {1: "1", 0: "-y^2"}), 1))
    assert out == P(K2, {1: "1", 0: "-y"})
    with pytest.raises(NoRoot) as info:
        descend_coefficients(SeparablePresentation(P(K2, {2: "1", 1: "x^2", 0: "y^4"}), 2))
    assert info.value.index == 1


@pytest.mark.parametrize("p", [2, 3])
def test_derivative_laws(p):
    K = make_base_field(p, "x")
    rng = random.Random(p)
    for _ in range(100):
        f = random_poly(K, rng, rng.randrange(0, 5))
        g = random_poly(K, rng, rng.randrange(0, 5))
        assert (f + g).derivative() == f.derivative() + g.derivative()
        assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


def test_gcd_divides_inputs():
    K = make_base_field(3, "x")
    rng = random.Random(11)
    for _ in range(40):
        h = random_poly(K, rng, rng.randrange(1, 3))
        f = random_poly(K, rng, 2) * h
        g = random_poly(K, rng, 2) * h
        d = f.gcd(g)
        assert d.leading() == K.one
        assert divmod(f, d)[1].is_zero() and divmod(g, d)[1].is_zero()
        assert divmod(d, h.monic())[1].is_zero()


def test_compose_and_eval():
    K = make_base_field(5, "x")
    f = P(K, {2: "1", 0: "x"})
    g = P(K, {1: "2", 0: "1"})
    assert f.compose(g) == P(K, {2: "4", 1: "4", 0: "x+1"})
    assert f(parse_element(K, "x")) == parse_element(K, "x^2+x")
