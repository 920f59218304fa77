"""Automorphism groups of binomial towers and the classification of L/K.

Automorphisms are found by backtracking over generator images.  A step
g^m = c with m a power of p has exactly one candidate (the p^e-th root of
sigma(c)); any other step tries k * zeta * b with b a basis monomial,
zeta in mu_r(F_q) and k in K fixed by k^m = sigma(c) / b^m.  Every complete
assignment is verified as a K-algebra homomorphism on all basis pairs.
"""

from dataclasses import dataclass, field

from galtower import exactla as la
from galtower.errors import EquivalenceViolation, GroupTooLarge, NotASubgroup, NotStable
from galtower.tower import SubfieldHandle, _p_part


@dataclass(frozen=True, eq=False)
class Automorphism:
    images: tuple  # image of each tower generator
    matrix: tuple  # n x n over K, flattened row-major

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def apply(self, K, v):
        n = len(v)
        return la.matvec(K, self.matrix, v, n)


@dataclass
class AutGroup:
    tower: object
    elements: list
    table: list  # table[i][j] = index of elements[i] o elements[j]
    complete: bool
    inverses: list = field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    @property
    def flag(self):
        return "proven" if self.complete else "lower-bound"

    def matrices(self, indices=None):
        idx = range(len(self.elements)) if indices is None else indices
        return [self.elements[i].matrix for i in idx]


def _image_matrix(T, images):
    """Matrix of the map sending generator i to images[i] (monomials multiply out)."""
    K = T.K
    n = T.n
    cols = []
    gen_powers = []
    for img, m in zip(images, T.ms):
        pw = [T.one]
        for _ in range(m - 1):
            pw.append(T.mul(pw[-1], img))
        gen_powers.append(pw)
    for exps in T.exponents:
        v = T.one
        for pw, a in zip(gen_powers, exps):
            if a:
                v = T.mul(v, pw[a])
        cols.append(v)
    return tuple(cols[j][i] for i in range(n) for j in range(n))


def _partial_apply(T, images, a, level):
    """sigma(a) for a in the prefix tower of the first ``level`` generators."""
    K = T.K
    prefix_n = 1
    for m in T.ms[:level]:
        prefix_n *= m
    out = T.zero
    powers = {}
    for idx in range(prefix_n):
        x = a[idx]
        if x == K.zero:
            continue
        v = T.one
        for i, e in enumerate(T.exponents[idx][:level]):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = T.pow(images[i], e)
                v = T.mul(v, powers[key])
        out = T.add(out, T.scale(x, v))
    return out


def _mu_complete(T, r):
    """mu_r(L) = mu_r(F_q): no new roots of unity of order dividing r in L."""
    q = T.K.ff.q
    divisors = [d for d in range(2, r + 1) if r % d == 0]
    for d in divisors:
        if (q - 1) % d == 0:
            continue
        order = 1
        acc = q % d
        while acc != 1:
            acc = acc * q % d
            order += 1
        if T.n % order == 0:
            return False
    return True


def _step_candidates(T, level, target, roots_cache):
    K = T.K
    p = T.p
    m = T.ms[level]
    e, r = _p_part(m, p)
    if r == 1:
        y = T.pth_root(target, e)
        return [] if y is None else [y]
    zetas = roots_cache.setdefault(r, K.ff.roots(K.ff.one, r))
    out = []
    for idx in range(T.n):
        b = T.basis_vector(idx)
        kappa = T.div(target, T.pow(b, m))
        if not T.in_base(kappa):
            continue
        k = kappa[0]
        if e:
            k = K.pth_root(k, e)
            if k is None:
                continue
        k = K.nth_root(k, r)
        if k is None:
            continue
        for z in zetas:
            y = T.scale(K.mul(K.embed_from(K.ff, z) if K.depth else z, k), b)
            if T.pow(y, m) == target:
                out.append(y)
    return out


def is_homomorphism(T, M):
    K = T.K
    n = T.n
    basis = T.basis_vectors()
    images = [la.column(M, n, j) for j in range(n)]
    if images[0] != T.one:
        return False
    for i in range(n):
        for j in range(i, n):
            lhs = la.matvec(K, M, T.mul(basis[i], basis[j]), n)
            if lhs != T.mul(images[i], images[j]):
                return False
    return True


def enumerate_automorphisms(T):
    K = T.K
    k = len(T.ms)
    roots_cache = {}
    found = []

    def extend(images):
        level = len(images)
        if level == k:
            M = _image_matrix(T, images)
            if is_homomorphism(T, M) and M not in {a.matrix for a in found}:
                found.append(Automorphism(tuple(images), M))
            return
        target = _partial_apply(T, images, T.lift(_prefix_value(T, level)), level)
        for y in _step_candidates(T, level, target, roots_cache):
            extend(images + [y])

    extend([])
    ident = la.identity(K, T.n)
    found.sort(key=lambda a: (a.matrix != ident, [T.to_str(y) for y in a.images]))
    complete = True
    for level in range(k):
        e, r = _p_part(T.ms[level], T.p)
        if r == 1:
            continue
        c = _prefix_value(T, level)
        if not _in_base_prefix(T, c) or not _mu_complete(T, r):
            complete = False
    return _group_from(T, found, complete)


def _prefix_value(T, level):
    """c_level as a coordinate tuple of the prefix tower."""
    t = T
    depth = len(T.ms)
    while depth > level + 1:
        t = t.parent
        depth -= 1
    return t.c


def _in_base_prefix(T, c):
    zero = T.K.zero
    return all(x == zero for x in c[1:])


def _group_from(T, elements, complete):
    K = T.K
    n = T.n
    index = {a.matrix: i for i, a in enumerate(elements)}
    table = []
    for a in elements:
        row = []
        for b in elements:
            prod = la.matmul(K, a.matrix, b.matrix, n)
            if prod not in index:
                raise EquivalenceViolation("group closure", len(elements), "product outside list")
            row.append(index[prod])
        table.append(row)
    inverses = [row.index(0) for row in table] if elements else []
    return AutGroup(T, elements, table, complete, inverses)


def _check_subgroup(G, H):
    H = sorted(set(H))
    if 0 not in H:
        raise NotASubgroup("identity missing")
    Hs = set(H)
    for i in H:
        if G.inverses[i] not in Hs:
            raise NotASubgroup("not closed under inverses")
        for j in H:
            if G.table[i][j] not in Hs:
                raise NotASubgroup("not closed under composition")
    return tuple(H)


def fixed_field(G, H):
    T = G.tower
    K = T.K
    n = T.n
    H = _check_subgroup(G, H)
    ident = la.identity(K, n)
    rows = []
    for i in H:
        diff = la.matsub(K, G.elements[i].matrix, ident)
        rows.extend(la.to_rows(diff, n))
    vecs = la.kernel(K, rows, n) if rows else T.basis_vectors()
    return SubfieldHandle(T, la.Subspace.span(K, vecs, n), ())


def stabilizer_subgroup(M, G):
    K = G.tower.K
    out = []
    for i, a in enumerate(G.elements):
        if all(a.apply(K, b) == b for b in M.basis()):
            out.append(i)
    return tuple(out)


@dataclass
class SkewGroupAlgebra:
    coefficients: la.Subspace
    subgroup: tuple
    span: la.Subspace
    direct: bool

    @property
    def dim(self):
        return len(self.span)


def skew_group_algebra(D, G, H=None, check_stable=True):
    T = G.tower
    K = T.K
    n = T.n
    H = tuple(range(len(G))) if H is None else _check_subgroup(G, H)
    if check_stable:
        for i in H:
            g = G.elements[i].matrix
            ginv = G.elements[G.inverses[i]].matrix
            for X in D.rows:
                if not D.contains(la.conjugate(K, g, X, ginv, n)):
                    raise NotStable("conjugation by a group element leaves D")
    vecs = [la.matmul(K, X, G.elements[i].matrix, n) for i in H for X in D.rows]
    span = la.Subspace.span(K, vecs, n * n)
    return SkewGroupAlgebra(D, H, span, len(span) == len(D) * len(H))


def g_stable_check(A, G):
    T = G.tower
    K = T.K
    n = T.n
    for i, a in enumerate(G.elements):
        ginv = G.elements[G.inverses[i]].matrix
        for X in A.rows:
            if not A.contains(la.conjugate(K, a.matrix, X, ginv, n)):
                return False
    return True


def subgroup_lattice(G, limit=64):
    """All subgroups (as sorted index tuples) with a normality flag."""
    order = len(G)
    if order > limit:
        raise GroupTooLarge(f"|G| = {order} exceeds {limit}")

    def close(gens):
        S = {0} | set(gens)
        frontier = list(S)
        while frontier:
            new = []
            for i in frontier:
                for j in list(S):
                    for x in (G.table[i][j], G.table[j][i]):
                        if x not in S:
                            S.add(x)
                            new.append(x)
            frontier = new
        return frozenset(S)

    seen = {close(())}
    frontier = list(seen)
    while frontier:
        new = []
        for H in frontier:
            for g in range(order):
                if g not in H:
                    H2 = close(H | {g})
                    if H2 not in seen:
                        seen.add(H2)
                        new.append(H2)
        frontier = new
    out = []
    for H in sorted(seen, key=lambda s: (len(s), sorted(s))):
        normal = all(
            G.table[G.table[g][h]][G.inverses[g]] in H for g in range(order) for h in H
        )
        out.append((tuple(sorted(H)), normal))
    return out


@dataclass
class Classification:
    separable: bool
    purely_inseparable: bool
    normal: bool
    galois: bool
    D_ext: bool
    G_ext: bool
    B_ext: bool
    degree: int
    group_order: int
    group_complete: bool
    dim_D: int
    dim_B: int
    dim_G: int
    separable_degree: int
    notes: list = field(default_factory=list)

    def as_dict(self):
        return {
            "separable": self.separable,
            "purely_inseparable": self.purely_inseparable,
            "normal": self.normal,
            "galois": self.galois,
            "D_ext": self.D_ext,
            "G_ext": self.G_ext,
            "B_ext": self.B_ext,
            "degree": self.degree,
            "group_order": self.group_order,
            "group_complete": "proven" if self.group_complete else "lower-bound",
            "dim_D": self.dim_D,
            "dim_D_skew_G": self.dim_B,
            "dim_L_skew_G": self.dim_G,
            "separable_degree": self.separable_degree,
        }


def classify_extension(T, D=None, G=None, strict=True):
    """Classify L/K, computing each property two independent ways."""
    from galtower.operators import EndoAlgebra, diffop_filtration

    n = T.n
    D = D or diffop_filtration(T)
    G = G or enumerate_automorphisms(T)
    L = EndoAlgebra(T).L
    dim_B = skew_group_algebra(D.total, G, check_stable=False).dim
    dim_G = skew_group_algebra(L, G, check_stable=False).dim
    B_ext = dim_B == n * n
    G_ext = dim_G == n * n
    D_ext = D.dim == n * n
    # independent sides: tower walk and |G| against the separable degree
    pure = all(_p_part(m, T.p)[1] == 1 for m in T.ms)
    separable = D.dim == n
    normal = len(G) == T.separable_degree
    galois = separable and normal
    notes = []
    checks = [("purely_inseparable", pure, D_ext), ("normal", normal, B_ext), ("galois", galois, G_ext)]
    for name, left, right in checks:
        if left != right:
            if name != "purely_inseparable" and not G.complete:
                notes.append(f"{name}: group is a lower bound, B/G-checks used")
                continue
            if strict:
                raise EquivalenceViolation(name, (left, len(G), T.separable_degree), (right, dim_B, dim_G))
            notes.append(f"{name}: equivalence violated")
    if not G.complete:
        normal, galois = B_ext, G_ext
    return Classification(
        separable, pure, normal, galois, D_ext, G_ext, B_ext, n, len(G), G.complete,
        D.dim, dim_B, dim_G, T.separable_degree, notes,
    )


def is_normal_by_b_check(T):
    from galtower.operators import diffop_filtration

    D = diffop_filtration(T)
    G = enumerate_automorphisms(T)
    return skew_group_algebra(D.total, G, check_stable=False).dim == T.n * T.n

