"""Subfields of L/K versus subalgebras of E = End_K(L) containing L.

The forward map sends M to its centralizer C_E(M); the inverse map sends an
algebra A to C_E(A) intersected with L.  On normal extensions
C_E(M) = D(L/M) # G(L/M) and the maps are mutually inverse; the suites here
check that, and the dimension identity [M:K] |G(L/M)| dim_K D(L/M) = [L:K]^2,
exactly on explicit towers.
"""

from dataclasses import dataclass, field
from functools import cached_property

from galtower import __version__
from galtower import exactla as la
from galtower.errors import CrossCheckFailure, FormulaMismatch
from galtower.operators import (
    EndoAlgebra,
    constants,
    diffop_filtration,
    subfield_from_operators,
)
from galtower.symmetry import (
    classify_extension,
    enumerate_automorphisms,
    fixed_field,
    g_stable_check,
    skew_group_algebra,
    stabilizer_subgroup,
    subgroup_lattice,
)
from galtower.tower import (
    SubfieldHandle,
    compositum,
    purely_inseparable_part,
    subfield_generate,
    tensor_decomposition_check,
)

REPORT_SCHEMA = 1


def check(name, computed, expected):
    return {"name": name, "computed": computed, "expected": expected, "passed": computed == expected}


def observe(name, computed, expected):
    """Like ``check`` but informational: not counted towards pass/fail."""
    return {"name": name, "computed": computed, "expected": expected, "holds": computed == expected}


class Analysis:
    """Shared, lazily computed data for one tower."""

    def __init__(self, T, diffops_loader=None):
        self.T = T
        self.E = EndoAlgebra(T)
        self._relative = {}
        self._loader = diffops_loader

    @cached_property
    def D(self):
        return self.diffops(None)

    def diffops(self, M):
        key = None if M is None or M.degree == 1 else M.space
        if key not in self._relative:
            if self._loader is not None:
                self._relative[key] = self._loader(self.T, M)
            else:
                self._relative[key] = diffop_filtration(self.T, M)
        return self._relative[key]

    @cached_property
    def G(self):
        return enumerate_automorphisms(self.T)

    @cached_property
    def classification(self):
        return classify_extension(self.T, self.D, self.G)

    @cached_property
    def L_ops(self):
        return self.E.L

    @cached_property
    def dplus(self):
        return self.D.dplus

    def mult_span(self, M):
        return la.Subspace.span(self.T.K, [self.E.mult(b) for b in M.basis()], self.E.N)

    def centralizer_of_subfield(self, M):
        gens = [b for b in M.basis() if not self.T.in_base(b)]
        return la.centralizer(self.T.K, [self.E.mult(b) for b in gens], self.T.n)


# -- the two maps ----------------------------------------------------------------


def forward_map(T, M, ctx=None, strict=None):
    """C_E(M), cross-checked against D(L/M) # G(L/M) built two ways."""
    ctx = ctx or Analysis(T)
    C = ctx.centralizer_of_subfield(M)
    D_M = ctx.diffops(M).total
    H = stabilizer_subgroup(M, ctx.G)
    mats = ctx.G.matrices(H)
    closure = la.algebra_closure(T.K, list(D_M.rows) + mats, T.n)
    skew = skew_group_algebra(D_M, ctx.G, H, check_stable=False).span
    dims = {"centralizer": len(C), "closure": len(closure), "skew": len(skew)}
    if strict is None:
        strict = ctx.classification.normal
    if strict and not (C == closure == skew):
        raise CrossCheckFailure(dims)
    return C


def inverse_map(T, A, ctx=None):
    """C_E(A) intersected with L, compared with the constants/fixed-field formula."""
    ctx = ctx or Analysis(T)
    K = T.K
    n = T.n
    C = la.centralizer(K, list(A.rows), n, within=ctx.L_ops)
    first = subfield_from_operators(T, C)
    in_dplus = A.intersect(ctx.dplus)
    H = [i for i, g in enumerate(ctx.G.elements) if A.contains(g.matrix)]
    second = constants(T, in_dplus).intersect(fixed_field(ctx.G, H))
    if first != second:
        raise FormulaMismatch(first.basis(), second.basis())
    return first


# -- records --------------------------------------------------------------------


def subfield_payload(M):
    T = M.tower
    return {"degree": M.degree, "basis": [T.to_str(b) for b in M.basis()]}


@dataclass
class CorrespondenceRecord:
    name: str
    subfield: SubfieldHandle
    checks: list = field(default_factory=list)
    triple: tuple = ()
    info: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def as_dict(self):
        out = {
            "name": self.name,
            "subfield": subfield_payload(self.subfield),
            "triple": list(self.triple),
            "checks": self.checks,
            "passed": self.passed,
        }
        out.update(self.info)
        return out


def verify_roundtrip(T, M, ctx=None, name="M"):
    """Round trip M -> C_E(M) -> M plus the dimension identities.

    On non-normal towers the outcomes are recorded as observations only.
    """
    ctx = ctx or Analysis(T)
    rec = CorrespondenceRecord(name, M)
    n = T.n
    normal = ctx.classification.normal
    record = check if normal else observe
    results = []
    try:
        A = forward_map(T, M, ctx, strict=True)
        results.append(record("forward cross-check", True, True))
    except CrossCheckFailure as exc:
        A = ctx.centralizer_of_subfield(M)
        results.append(record("forward cross-check", exc.dims, "all equal"))
    try:
        M2 = inverse_map(T, A, ctx)
        results.append(record("inverse formula", True, True))
    except FormulaMismatch:
        results.append(record("inverse formula", False, True))
        M2 = subfield_from_operators(T, la.centralizer(T.K, list(A.rows), n, within=ctx.L_ops))
    results.append(record("round trip recovers M", M2 == M, True))
    double = la.centralizer(T.K, list(A.rows), n)
    results.append(record("double centralizer", double == ctx.mult_span(M), True))
    G_M = stabilizer_subgroup(M, ctx.G)
    D_M = ctx.diffops(M)
    triple = (M.degree, len(G_M), D_M.dim)
    rec.triple = triple
    rec.info["forward_dim"] = len(A)
    rec.info["generated_equals_L"] = M.degree == n
    rec.info["generated_equals_K"] = M.degree == 1
    product = triple[0] * triple[1] * triple[2]
    lm = n // M.degree
    second = triple[1] * (triple[2] // M.degree) if triple[2] % M.degree == 0 else None
    results.append(record("[M:K]|G(L/M)|dim D(L/M) = n^2", product, n * n))
    results.append(record("|G(L/M)| dim_M D(L/M) = [L:M]^2", second, lm * lm))
    if normal:
        rec.checks.extend(results)
    else:
        rec.info["observations"] = results
    return rec


# -- largest subfields ----------------------------------------------------------


def largest_subfields(T, ctx=None):
    ctx = ctx or Analysis(T)
    out = {"checks": [], "notes": []}
    L_sep = constants(T, ctx.dplus)
    L_pi = purely_inseparable_part(T)
    out["L_sep"] = L_sep
    out["L_pi"] = L_pi
    out["checks"].append(
        check("kernel and centralizing constants agree", constants(T, ctx.dplus, "centralizing") == L_sep, True)
    )
    comp = compositum(L_pi, L_sep)
    out["tensor"] = tensor_decomposition_check(L_pi, L_sep)
    out["compositum_is_L"] = comp.degree == T.n
    if ctx.classification.normal:
        out["L_gal"] = L_sep
        via_aut = fixed_field(ctx.G, range(len(ctx.G)))
        out["checks"].append(check("L^pi by both strategies", via_aut == L_pi, True))
        out["checks"].append(check("L = L^pi (x) L^gal", out["tensor"] and out["compositum_is_L"], True))
    elif out["tensor"] and out["compositum_is_L"]:
        out["notes"].append("degrees multiply, yet the extension is not normal; the B-check governs normality")
    return out


# -- suites ---------------------------------------------------------------------


def _embed_tensor_centralizers(T, M_pi, M_gal, L_pi, L_gal):
    """Span of X (x) Y inside E for X in C_E(L^pi)(M^pi), Y in C_E(L^gal)(M^gal)."""
    K = T.K
    n = T.n
    A1, A2 = L_pi.as_algebra(), L_gal.as_algebra()
    B1, B2 = A1.embedding, A2.embedding
    P_cols = [T.mul(a, b) for a in B1 for b in B2]
    P = la.from_columns(K, P_cols)
    Pinv = la.matinv(K, P, n)

    def local_centralizer(alg, M_sub, basis):
        cols = [list(c) for c in zip(*basis)]
        mats = []
        for m in M_sub.basis():
            coords = la.solve(K, cols, list(m))
            if any(x != K.zero for x in coords[1:]):
                mats.append(alg.mult_matrix(tuple(coords)))
        return la.centralizer(K, mats, alg.n)

    C1 = local_centralizer(A1, M_pi, B1)
    C2 = local_centralizer(A2, M_gal, B2)
    d1, d2 = A1.n, A2.n
    vecs = []
    for X in C1.rows:
        for Y in C2.rows:
            kron = [K.zero] * (n * n)
            for i1 in range(d1):
                for j1 in range(d1):
                    x = X[i1 * d1 + j1]
                    if x == K.zero:
                        continue
                    for i2 in range(d2):
                        for j2 in range(d2):
                            y = Y[i2 * d2 + j2]
                            if y != K.zero:
                                kron[(i1 * d2 + i2) * n + j1 * d2 + j2] = K.mul(x, y)
            vecs.append(la.matmul(K, la.matmul(K, P, tuple(kron), n), Pinv, n))
    return len(C1), len(C2), la.Subspace.span(K, vecs, n * n)


def normal_subfield_suite(T, M, ctx=None, largest=None, name="M"):
    ctx = ctx or Analysis(T)
    largest = largest or largest_subfields(T, ctx)
    L_pi, L_gal = largest["L_pi"], largest["L_sep"]
    checks = []
    M_pi = M.intersect(L_pi)
    M_gal = M.intersect(L_gal)
    checks.append(check("M^pi product-closed", M_pi.is_product_closed(), True))
    checks.append(check("M^gal product-closed", M_gal.is_product_closed(), True))
    comp = compositum(M_pi, M_gal)
    checks.append(check("M = M^pi (x) M^gal", tensor_decomposition_check(M_pi, M_gal) and comp == M, True))
    A = ctx.centralizer_of_subfield(M)
    stable_alg = g_stable_check(A, ctx.G)
    K = T.K
    stable_field = all(M.contains(g.apply(K, b)) for g in ctx.G.elements for b in M.basis())
    checks.append(check("C_E(M) G-stable iff M G-stable", stable_alg, stable_field))
    d1, d2, span = _embed_tensor_centralizers(T, M_pi, M_gal, L_pi, L_gal)
    checks.append(check("dim C_E(M) = product of component centralizers", len(A), d1 * d2))
    checks.append(check("component centralizers span C_E(M)", span == A, True))
    return {
        "name": name,
        "M_pi": subfield_payload(M_pi),
        "M_gal": subfield_payload(M_gal),
        "g_stable": stable_alg,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def purely_insep_suite(T, M, ctx=None, name="M"):
    ctx = ctx or Analysis(T)
    K = T.K
    n = T.n
    D_K = ctx.D.total
    D_M = ctx.diffops(M).total
    checks = []
    C_D_M = ctx.centralizer_of_subfield(M).intersect(D_K)
    checks.append(check("D(L/M) = C_D(M)", D_M == C_D_M, True))
    Z = la.center(K, D_M, n)
    checks.append(check("center of D(L/M) = M", Z == ctx.mult_span(M), True))
    lm = n // M.degree
    checks.append(check("dim_K D(L/M) = [L:M]^2 [M:K]", len(D_M), lm * lm * M.degree))
    back = subfield_from_operators(T, la.centralizer(K, list(D_M.rows), n, within=D_K))
    checks.append(check("D(L/C_D(D(L/M))) = D(L/M)", ctx.diffops(back).total == D_M, True))
    return {
        "name": name,
        "dim_D_LM": len(D_M),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def purely_insep_global_checks(T, ctx):
    K = T.K
    n = T.n
    D_K = ctx.D.total
    scalars = la.Subspace.span(K, [la.identity(K, n)], n * n)
    return [
        check("D(L/K) = E", len(D_K), n * n),
        check("center of D(L/K) = K", la.center(K, D_K, n, check=False) == scalars, True),
        check("End over D(L/K) of L = K", la.centralizer(K, list(D_K.rows), n) == scalars, True),
    ]


def classical_galois_suite(T, ctx=None):
    ctx = ctx or Analysis(T)
    G = ctx.G
    n = T.n
    lattice = subgroup_lattice(G)
    K = T.K
    entries = []
    fields = []
    checks = []
    for H, normal in lattice:
        M = fixed_field(G, H)
        fields.append(M)
        skew = skew_group_algebra(ctx.L_ops, G, H, check_stable=False).span
        A = ctx.centralizer_of_subfield(M)
        stable_field = all(M.contains(g.apply(K, b)) for g in G.elements for b in M.basis())
        local = [
            check("stabilizer of fixed field", stabilizer_subgroup(M, G), H),
            check("[M:K] |H| = n", M.degree * len(H), n),
            check("C_E(M) = L # H", A == skew, True),
            check("H normal iff L # H G-stable", normal, g_stable_check(skew, G)),
            check("H normal iff M G-stable", normal, stable_field),
        ]
        checks.extend(local)
        entries.append(
            {
                "subgroup": list(H),
                "normal": normal,
                "fixed_field": subfield_payload(M),
                "passed": all(c["passed"] for c in local),
            }
        )
    distinct = len(set(fields))
    checks.append(check("distinct fixed fields", distinct, len(lattice)))
    checks.append(check("dim L # G", skew_group_algebra(ctx.L_ops, G).dim, n * n))
    return {
        "subgroups": len(lattice),
        "entries": entries,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


# -- report ---------------------------------------------------------------------


def _classification_checks(C):
    return [
        check("purely inseparable iff D-extension", C.purely_inseparable, C.D_ext),
        check("normal iff B-extension", C.normal, C.B_ext),
        check("Galois iff G-extension", C.galois, C.G_ext),
    ]


def select_suites(suite, C):
    if suite == "auto":
        if C.galois:
            return ["galois", "normal"]
        if C.purely_inseparable:
            return ["pi"]
        if C.normal:
            return ["normal"]
        return []
    if suite == "full":
        applicable = [("normal", C.normal), ("pi", C.purely_inseparable), ("galois", C.galois)]
        return [name for name, ok in applicable if ok]
    return [suite]


def run_report(T, subfields=(), suite="auto", ctx=None):
    """Run classification, largest subfields, round trips and suites; JSON-ready dict."""
    ctx = ctx or Analysis(T)
    C = ctx.classification
    warnings = []
    if T.unverified_irreducible:
        warnings.append("unverified-irreducible: " + "; ".join(note.message for note in T.notes))
    if not ctx.G.complete:
        warnings.append("automorphism group is a lower bound")
    warnings.extend(C.notes)
    named = [("K", T.base_subfield())]
    named.extend(subfields)
    named.append(("L", T.full_subfield()))
    seen = set()
    unique = []
    for name, M in named:
        if name in seen:
            continue
        seen.add(name)
        unique.append((name, M))
    largest = largest_subfields(T, ctx)
    warnings.extend(largest["notes"])
    records = [verify_roundtrip(T, M, ctx, name).as_dict() for name, M in unique]
    if not C.normal:
        failures = [o for r in records for o in r.get("observations", []) if not o["holds"]]
        warnings.append("extension is not normal; round-trip identities are recorded, not asserted")
    suites = {}
    global_checks = _classification_checks(C) + largest["checks"]
    if not C.normal:
        global_checks.append(
            check("non-normal: B-equality or some round trip fails", (not C.B_ext) or bool(failures), True)
        )
    for s in select_suites(suite, C):
        if s == "normal":
            if not C.normal:
                global_checks.append(check("normal suite precondition", False, True))
                continue
            suites["normal"] = [normal_subfield_suite(T, M, ctx, largest, name) for name, M in unique]
        elif s == "pi":
            if not C.purely_inseparable:
                global_checks.append(check("purely inseparable suite precondition", False, True))
                continue
            suites["purely_inseparable"] = {
                "global": purely_insep_global_checks(T, ctx),
                "subfields": [purely_insep_suite(T, M, ctx, name) for name, M in unique],
            }
        elif s == "galois":
            if not C.galois:
                global_checks.append(check("Galois suite precondition", False, True))
                continue
            suites["galois"] = classical_galois_suite(T, ctx)
        else:
            raise ValueError(f"unknown suite {s!r}")
    largest_out = {"L_pi": subfield_payload(largest["L_pi"]), "L_sep": subfield_payload(largest["L_sep"])}
    if "L_gal" in largest:
        largest_out["L_gal"] = subfield_payload(largest["L_gal"])
    largest_out["tensor_check"] = largest["tensor"]
    report = {
        "schema": REPORT_SCHEMA,
        "tool_version": __version__,
        "tower_hash": T.spec.content_hash(),
        "tower": T.spec.canonical_text(),
        "degree": T.n,
        "unverified_irreducible": T.unverified_irreducible,
        "classification": C.as_dict(),
        "group": group_payload(ctx.G),
        "largest_subfields": largest_out,
        "records": records,
        "suites": suites,
        "checks": global_checks,
        "warnings": warnings,
    }
    failed = count_failures(report)
    report["summary"] = {"failed": failed, "passed": count_checks(report) - failed}
    return report


def group_payload(G):
    T = G.tower
    return {
        "order": len(G),
        "completeness": G.flag,
        "elements": [{T.names[i]: T.to_str(y) for i, y in enumerate(a.images)} for a in G.elements],
        "cayley_table": G.table,
    }


def _walk_checks(obj):
    if isinstance(obj, dict):
        if "passed" in obj and "name" in obj and "computed" in obj:
            yield obj
            return
        for v in obj.values():
            yield from _walk_checks(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _walk_checks(v)


def count_checks(report):
    return sum(1 for _ in _walk_checks(report))


def count_failures(report):
    return sum(1 for c in _walk_checks(report) if not c["passed"])


def subfield_from_exprs(T, exprs):
    return subfield_generate(T, [T.parse(e) for e in exprs])

