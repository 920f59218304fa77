import random

import pytest

from galtower.cli.towerfile import parse_tower_text
from galtower.errors import DegreeOverflow, DivisionByZero, NoRoot, ReducibleBinomial, StrategyPreconditionFailed
from galtower.tower import (
    FieldTower,
    compositum,
    purely_inseparable_part,
    subfield_generate,
    tensor_decomposition_check,
)
from galtower.unipoly import UniPoly


def build(text, **kw):
    return FieldTower(parse_tower_text(text).spec, **kw)


def test_degrees(mixed, nonmodular):
    assert mixed[0].n == 6
    assert nonmodular[0].n == 8
    assert build("field 3\nvars x\n").n == 1


@pytest.mark.parametrize(
    "text, index, ell",
    [
        ("field 3\nvars x\ngen u^2 = x^2\n", 0, 2),
        ("field 3\nvars x y\ngen u^3 = y^3*x^6\n", 0, 3),
        ("field 3\nvars x\ngen u^4 = 2*x^4\n", 0, 4),
        ("field 3\nvars x\ngen s^2 = x\ngen r^2 = 4*x\n", 1, 2),
        ("field 2\nvars x\ngen s^2 = x\ngen r^2 = x^3\n", 1, 2),
        ("field 5\nvars x\ngen u^6 = x^3\n", 0, 3),
    ],
)
def test_reducible_binomials(text, index, ell):
    with pytest.raises(ReducibleBinomial) as info:
        build(text)
    assert (info.value.index, info.value.ell) == (index, ell)


def test_char_two_quartic_is_not_rejected(nonmodular):
    # z^4 = c is irreducible in characteristic 2; the -4c test is vacuous there
    assert nonmodular[0].ms == (4, 2)


def test_degree_overflow():
    with pytest.raises(DegreeOverflow):
        build("field 2\nvars x y\ngen u^9 = x\ngen v^9 = y\n")
    assert build("field 2\nvars x y\ngen u^9 = x\ngen v^9 = y\n", degree_cap=81).n == 81


def test_unverified_flag():
    T = build("field 3\nvars x\ngen s^2 = x\ngen r^2 = s\n")
    assert T.unverified_irreducible
    assert not build("field 3\nvars x y\ngen s^2 = x\ngen r^2 = y\n").unverified_irreducible


def test_arithmetic_examples(mixed):
    T = mixed[0]
    u, v = T.gen("u"), T.gen("v")
    assert T.mul(u, T.mul(u, u)) == T.parse("y")
    assert T.mul(T.add(u, v), T.sub(u, v)) == T.parse("u^2 - x")
    n = T.n
    ident = tuple(T.K.one if i == j else T.K.zero for i in range(n) for j in range(n))
    assert T.mult_matrix(T.one) == ident


def test_inverse_and_division(mixed):
    T = mixed[0]
    a = T.parse("u + v*x + 1")
    assert T.mul(a, T.inv(a)) == T.one
    with pytest.raises(DivisionByZero):
        T.inv(T.zero)


def test_mult_matrix_is_embedding(mixed):
    T = mixed[0]
    from galtower import exactla as la

    a, b = T.parse("u+v"), T.parse("u^2*v + x")
    assert la.matmul(T.K, T.mult_matrix(a), T.mult_matrix(b), T.n) == T.mult_matrix(T.mul(a, b))


def test_text_round_trip(mixed, nonmodular):
    for T in (mixed[0], nonmodular[0]):
        rng = random.Random(1)
        for _ in range(20):
            a = tuple(T.K.random(rng, degree=1) if rng.random() < 0.5 else T.K.zero for _ in range(T.n))
            assert T.parse(T.to_str(a)) == a


def test_min_poly_examples(mixed, nonmodular):
    T = mixed[0]
    assert T.min_poly(T.gen("u")) == UniPoly(T.K, (T.K.neg(T.parse("y")[0]), T.K.zero, T.K.zero, T.K.one))
    assert T.min_poly(T.parse("u*v")).degree == 6
    W = nonmodular[0]
    Kz = subfield_generate(W, [W.gen("z")])
    f = W.min_poly(W.gen("w"), over=Kz)
    assert f == UniPoly(W, (W.neg(W.parse("a*z^2+b")), W.zero, W.one))


def test_min_poly_properties(mixed, kummer):
    for T in (mixed[0], kummer[0]):
        rng = random.Random(4)
        names = list(T.K.variables)
        for _ in range(10):
            a = T.parse(" + ".join(f"{rng.randrange(1, 3)}*{rng.choice(names)}*{T.monomial_str(i) or 1}" for i in rng.sample(range(T.n), 2)))
            f = T.min_poly(a)
            acc = T.zero
            for c in reversed(f.coeffs):
                acc = T.add(T.mul(acc, a), T.embed(c))
            assert acc == T.zero
            assert T.n % f.degree == 0


def test_subfield_generate_examples(mixed):
    T = mixed[0]
    assert subfield_generate(T, [T.gen("u")]).degree == 3
    assert subfield_generate(T, []).degree == 1
    M = subfield_generate(T, [T.parse("u*v")])
    assert M.degree == 6 and M == T.full_subfield()


def test_subfield_invariants(mixed, nonmodular, kummer):
    for T, subs, _ in (mixed, nonmodular, kummer):
        for M in subs.values():
            assert M.contains(T.one)
            assert M.is_product_closed()
            assert T.n % M.degree == 0


def test_roots_and_frobenius(mixed):
    T = mixed[0]
    assert T.pth_root_in_tower(T.parse("y")) == T.gen("u")
    with pytest.raises(NoRoot):
        T.pth_root_in_tower(T.parse("x"))
    assert T.frobenius_power(T.parse("u+v")) == T.parse("y + x*v")


def test_frobenius_additive(nonmodular, mixed):
    for T in (nonmodular[0], mixed[0]):
        rng = random.Random(2)
        for _ in range(10):
            a = tuple(T.K.random(rng, degree=1) for _ in range(T.n))
            b = tuple(T.K.random(rng, degree=1) for _ in range(T.n))
            assert T.frobenius_power(T.add(a, b)) == T.add(T.frobenius_power(a), T.frobenius_power(b))


def test_pth_root_dependent_case(nonmodular):
    W = nonmodular[0]
    w = W.gen("w")
    assert W.pth_root(W.mul(w, w)) == w
    assert W.pth_root(W.parse("a*z^2+b*z+1")) is None
    assert W.pth_root(W.parse("a*z^2 + b"), 1) == w


def test_purely_inseparable_part_examples(mixed, nonmodular, galois):
    T = mixed[0]
    assert purely_inseparable_part(T) == subfield_generate(T, [T.gen("u")])
    assert purely_inseparable_part(nonmodular[0]).degree == 8
    assert purely_inseparable_part(galois[0]).degree == 1


def test_purely_inseparable_strategies_agree(mixed, nonmodular, kummer, galois, pinsep):
    for T, _, _ in (mixed, nonmodular, kummer, galois, pinsep):
        assert purely_inseparable_part(T, "via-automorphisms") == purely_inseparable_part(T)


def test_via_automorphisms_needs_normal(nonnormal):
    with pytest.raises(StrategyPreconditionFailed):
        purely_inseparable_part(nonnormal[0], "via-automorphisms")


def test_compositum_and_tensor(mixed):
    T = mixed[0]
    Ku = subfield_generate(T, [T.gen("u")])
    Kv = subfield_generate(T, [T.gen("v")])
    assert compositum(Ku, Kv) == T.full_subfield()
    assert tensor_decomposition_check(Ku, Kv)
    assert compositum(Ku, Ku) == Ku
    assert not tensor_decomposition_check(Ku, Ku)
    assert tensor_decomposition_check(T.base_subfield(), T.full_subfield())


def test_structure_table_checks(mixed, nonmodular):
    for T in (mixed[0], nonmodular[0]):
        assert T.check_table()


def test_content_hash_stable(mixed):
    spec = mixed[0].spec
    assert spec.content_hash() == parse_tower_text(spec.canonical_text()).spec.content_hash()
