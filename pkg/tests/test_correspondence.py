import pytest

from galtower import exactla as la
from galtower.correspondence import (
    Analysis,
    classical_galois_suite,
    count_failures,
    forward_map,
    inverse_map,
    largest_subfields,
    normal_subfield_suite,
    purely_insep_suite,
    run_report,
    verify_roundtrip,
)
from galtower.symmetry import skew_group_algebra
from galtower.tower import subfield_generate

NORMAL = ["galois", "pinsep", "kummer", "mixed", "nonmodular"]


def subfields_of(T, subs):
    return [T.base_subfield()] + list(subs.values()) + [T.full_subfield()]


def test_forward_examples(mixed):
    T, subs, ctx = mixed
    assert len(forward_map(T, subs["Lpi"], ctx)) == 12
    assert len(forward_map(T, T.base_subfield(), ctx)) == 36
    assert forward_map(T, T.full_subfield(), ctx) == ctx.L_ops


def test_inverse_examples(mixed, galois):
    T, subs, ctx = mixed
    assert inverse_map(T, la.Subspace.full(T.K, 36), ctx) == T.base_subfield()
    assert inverse_map(T, forward_map(T, subs["Lpi"], ctx), ctx) == subs["Lpi"]
    Tg, _, gctx = galois
    A = skew_group_algebra(gctx.L_ops, gctx.G).span
    assert inverse_map(Tg, A, gctx) == Tg.base_subfield()


def test_mixed_triples(mixed):
    T, subs, ctx = mixed
    got = {}
    for name, M in [("K", T.base_subfield()), ("Lpi", subs["Lpi"]), ("Lgal", subs["Lgal"]), ("L", T.full_subfield())]:
        rec = verify_roundtrip(T, M, ctx, name)
        assert rec.passed, rec.checks
        got[name] = rec.triple
    assert got == {"K": (1, 2, 18), "Lpi": (3, 2, 6), "Lgal": (2, 1, 18), "L": (6, 1, 6)}


def test_other_triples(pinsep, galois):
    T, _, ctx = pinsep
    assert verify_roundtrip(T, T.base_subfield(), ctx).triple == (1, 1, 4)
    T, _, ctx = galois
    assert verify_roundtrip(T, T.base_subfield(), ctx).triple == (1, 2, 2)


@pytest.mark.parametrize("name", NORMAL)
def test_round_trips_on_normal_towers(name, request):
    T, subs, ctx = request.getfixturevalue(name)
    for M in subfields_of(T, subs):
        rec = verify_roundtrip(T, M, ctx)
        assert rec.passed, rec.checks
        a, b, c = rec.triple
        assert a * b * c == T.n * T.n


@pytest.mark.parametrize("name", NORMAL)
def test_maps_antitone_and_closed(name, request):
    T, subs, ctx = request.getfixturevalue(name)
    fields = subfields_of(T, subs)
    images = {M: forward_map(T, M, ctx) for M in fields}
    for M, A in images.items():
        assert ctx.L_ops.le(A)
        assert la.is_product_closed(T.K, A, T.n)
        back = inverse_map(T, A, ctx)
        assert back.contains(T.one) and back.is_product_closed()
    for M1 in fields:
        for M2 in fields:
            if M1.le(M2):
                assert images[M2].le(images[M1])


def test_non_normal_records_failures(nonnormal):
    T, _, ctx = nonnormal
    recs = [verify_roundtrip(T, M, ctx) for M in (T.base_subfield(), T.full_subfield())]
    observed = [o for r in recs for o in r.info["observations"]]
    assert not ctx.classification.B_ext or any(not o["holds"] for o in observed)
    assert all(r.passed for r in recs)  # nothing asserted on a non-normal tower


def test_largest_subfields(mixed, nonnormal, nonmodular):
    T, subs, ctx = mixed
    out = largest_subfields(T, ctx)
    assert out["L_pi"] == subs["Lpi"] and out["L_gal"] == subs["Lgal"] and out["tensor"]
    T, _, ctx = nonnormal
    out = largest_subfields(T, ctx)
    assert out["L_pi"].degree == 1 and out["L_sep"].degree == 3
    assert "L_gal" not in out and out["notes"]
    T, _, ctx = nonmodular
    out = largest_subfields(T, ctx)
    assert out["L_pi"].degree == 8 and out["L_sep"].degree == 1


def test_normal_subfield_suite(mixed, kummer):
    T, subs, ctx = mixed
    rec = normal_subfield_suite(T, subs["Lpi"], ctx)
    assert rec["passed"], rec["checks"]
    assert rec["M_pi"]["degree"] == 3 and rec["M_gal"]["degree"] == 1
    rec = normal_subfield_suite(T, T.full_subfield(), ctx)
    assert rec["passed"] and rec["M_pi"]["degree"] == 3 and rec["M_gal"]["degree"] == 2
    T, subs, ctx = kummer
    rec = normal_subfield_suite(T, subs["Ksr"], ctx)
    assert rec["passed"] and rec["M_pi"]["degree"] == 1 and rec["M_gal"]["degree"] == 2 and rec["g_stable"]


def test_purely_insep_suite(nonmodular, pinsep):
    T, subs, ctx = nonmodular
    rec = purely_insep_suite(T, subs["Kz"], ctx)
    assert rec["passed"] and rec["dim_D_LM"] == 16
    T, _, ctx = pinsep
    rec = purely_insep_suite(T, T.base_subfield(), ctx)
    assert rec["passed"] and rec["dim_D_LM"] == 4
    rec = purely_insep_suite(T, T.full_subfield(), ctx)
    assert rec["passed"] and rec["dim_D_LM"] == 2


def test_classical_galois_suite(kummer, galois):
    out = classical_galois_suite(kummer[0], kummer[2])
    assert out["passed"] and out["subgroups"] == 5
    out = classical_galois_suite(galois[0], galois[2])
    assert out["passed"] and out["subgroups"] == 2


def test_run_report(mixed, nonmodular):
    T, subs, ctx = mixed
    rep = run_report(T, [("u", subs["Lpi"]), ("v", subs["Lgal"]), ("uv", subs["UV"])], "auto", ctx)
    assert count_failures(rep) == 0
    uv = [r for r in rep["records"] if r["name"] == "uv"][0]
    assert uv["generated_equals_L"]
    T, subs, ctx = nonmodular
    rep = run_report(T, [("z", subs["Kz"]), ("z2", subs["Kz2"]), ("w", subs["Kw"])], "pi", ctx)
    assert rep["summary"]["failed"] == 0 and "purely_inseparable" in rep["suites"]


def test_trivial_tower_report():
    from galtower.cli.towerfile import parse_tower_text
    from galtower.tower import FieldTower

    T = FieldTower(parse_tower_text("field 3\nvars x\n").spec)
    rep = run_report(T, (), "auto", Analysis(T))
    assert [r["triple"] for r in rep["records"]] == [[1, 1, 1], [1, 1, 1]]
    assert rep["summary"]["failed"] == 0
    assert subfield_generate(T, []).degree == 1
