import pytest

from galtower import exactla as la
from galtower.cli.towerfile import parse_tower_text
from galtower.errors import GroupTooLarge, NotASubgroup, NotStable
from galtower.operators import EndoAlgebra
from galtower.symmetry import (
    classify_extension,
    enumerate_automorphisms,
    fixed_field,
    g_stable_check,
    is_homomorphism,
    skew_group_algebra,
    stabilizer_subgroup,
    subgroup_lattice,
)
from galtower.tower import FieldTower, subfield_generate

ALL = ["galois", "pinsep", "nonnormal", "kummer", "mixed", "nonmodular"]


def test_mixed_group(mixed):
    T, _, ctx = mixed
    G = ctx.G
    assert len(G) == 2 and G.complete
    sigma = G.elements[1]
    assert sigma.images == (T.gen("u"), T.neg(T.gen("v")))


def test_trivial_groups(nonmodular, nonnormal):
    assert len(nonmodular[2].G) == 1
    assert len(nonnormal[2].G) == 1
    assert nonnormal[2].G.complete


def test_cube_roots_of_unity_over_f4():
    T = FieldTower(parse_tower_text("field 2 modulus a^2+a+1\nvars x\ngen t^3 = x\n").spec)
    G = enumerate_automorphisms(T)
    assert len(G) == 3 and G.complete
    assert classify_extension(T, G=G).galois


def test_lower_bound_flag():
    T = FieldTower(parse_tower_text("field 3\nvars x\ngen s^2 = x\ngen r^2 = s\n").spec)
    G = enumerate_automorphisms(T)
    assert not G.complete


@pytest.mark.parametrize("name", ALL)
def test_group_invariants(name, request):
    T, _, ctx = request.getfixturevalue(name)
    G = ctx.G
    assert G.elements[0].matrix == la.identity(T.K, T.n)
    for i, a in enumerate(G.elements):
        assert is_homomorphism(T, a.matrix)
        assert a.apply(T.K, T.one) == T.one
        assert G.table[i][G.inverses[i]] == 0
        for j, b in enumerate(G.elements):
            assert G.elements[G.table[i][j]].matrix == la.matmul(T.K, a.matrix, b.matrix, T.n)
    if ctx.D.dim == T.n:
        assert len(G) <= T.n


def test_fixed_fields(mixed, kummer):
    T, _, ctx = mixed
    assert fixed_field(ctx.G, [0, 1]) == subfield_generate(T, [T.gen("u")])
    assert fixed_field(ctx.G, [0]) == T.full_subfield()
    K4, subs, kctx = kummer
    G = kctx.G
    both = [i for i, a in enumerate(G.elements) if a.images == (K4.neg(K4.gen("s")), K4.neg(K4.gen("r")))]
    assert fixed_field(G, [0] + both) == subs["Ksr"]
    with pytest.raises(NotASubgroup):
        fixed_field(G, [1])


def test_stabilizers(mixed):
    T, subs, ctx = mixed
    assert stabilizer_subgroup(T.base_subfield(), ctx.G) == (0, 1)
    assert stabilizer_subgroup(subs["Lgal"], ctx.G) == (0,)
    assert stabilizer_subgroup(subs["Lpi"], ctx.G) == (0, 1)


def test_skew_group_algebras(mixed, galois):
    T, _, ctx = mixed
    S = skew_group_algebra(ctx.D.total, ctx.G)
    assert S.dim == 36 and S.direct and S.span == la.Subspace.full(T.K, 36)
    L = EndoAlgebra(T).L
    assert skew_group_algebra(L, ctx.G, [0]).span == L
    Tg, _, gctx = galois
    assert skew_group_algebra(gctx.L_ops, gctx.G).dim == 4


def test_skew_requires_stability(mixed):
    T, _, ctx = mixed
    v_only = la.Subspace.span(T.K, [la.identity(T.K, T.n), T.mult_matrix(T.gen("v"))], T.n * T.n)
    u_ops = la.Subspace.span(T.K, [T.mult_matrix(T.gen("u"))], T.n * T.n)
    skew_group_algebra(v_only, ctx.G)
    lop = la.Subspace.span(T.K, [T.mult_matrix(T.parse("u+v"))], T.n * T.n)
    with pytest.raises(NotStable):
        skew_group_algebra(lop, ctx.G)
    assert len(u_ops) == 1


def test_classification_examples(mixed, nonnormal, nonmodular):
    C = mixed[2].classification
    assert C.normal and C.B_ext and not C.galois and not C.purely_inseparable
    C = nonnormal[2].classification
    assert C.separable and not C.normal and C.dim_B == 3
    C = nonmodular[2].classification
    assert C.purely_inseparable and C.D_ext and C.B_ext


@pytest.mark.parametrize("name", ALL)
def test_classification_equivalences(name, request):
    C = request.getfixturevalue(name)[2].classification
    assert C.galois == C.G_ext
    assert C.purely_inseparable == C.D_ext
    assert C.normal == C.B_ext


def test_subgroup_lattices(mixed, kummer, nonmodular):
    assert [normal for _, normal in subgroup_lattice(mixed[2].G)] == [True, True]
    lat = subgroup_lattice(kummer[2].G)
    assert len(lat) == 5 and all(normal for _, normal in lat)
    assert len(subgroup_lattice(nonmodular[2].G)) == 1
    with pytest.raises(GroupTooLarge):
        subgroup_lattice(kummer[2].G, limit=3)


def test_antitone_fixed_fields(kummer):
    T, _, ctx = kummer
    lat = subgroup_lattice(ctx.G)
    for H1, _ in lat:
        for H2, _ in lat:
            if set(H1) <= set(H2):
                assert fixed_field(ctx.G, H2).le(fixed_field(ctx.G, H1))


def test_g_stable(mixed, galois):
    T, subs, ctx = mixed
    assert g_stable_check(la.Subspace.full(T.K, T.n * T.n), ctx.G)
    Tg, _, gctx = galois
    assert g_stable_check(gctx.L_ops, gctx.G)
    M = subs["Lpi"]
    H = stabilizer_subgroup(M, ctx.G)
    A = skew_group_algebra(ctx.diffops(M).total, ctx.G, H).span
    assert g_stable_check(A, ctx.G)
