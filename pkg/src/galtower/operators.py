"""End_K(L), derivations and the algebra of differential operators on L.

Operators are n x n matrices over K, flattened row-major into K^(n^2).
The filtration is D^0 = L (multiplication operators) and
D^(m+1) = {X in End_M(L) : [X, a] in D^m for all a in L}.
Since every D^m is an L-bimodule, it is enough to test a against a set of
algebra generators of L, which keeps the linear systems small.
"""

from dataclasses import dataclass, field

from galtower import exactla as la
from galtower.errors import InvariantViolation, NotASubfield, SplitFailure
from galtower.tower import SubfieldHandle


class EndoAlgebra:
    """E = End_K(L) with its copy of L as multiplication operators."""

    def __init__(self, T):
        self.T = T
        self.K = T.K
        self.n = T.n
        self.N = T.n * T.n
        self.identity = la.identity(T.K, T.n)

    def mult(self, a):
        return self.T.mult_matrix(a)

    @property
    def L(self):
        return la.Subspace.span(self.K, [self.mult(b) for b in self.T.basis_vectors()], self.N)

    @property
    def full(self):
        return la.Subspace.full(self.K, self.N)

    def apply(self, X, v):
        return la.matvec(self.K, X, v, self.n)

    def mul(self, X, Y):
        return la.matmul(self.K, X, Y, self.n)

    def end_over(self, M):
        """End_M(L) = centralizer of the multiplication operators of M."""
        if M is None or M.degree == 1:
            return self.full
        gens = [b for b in M.basis() if not self.T.in_base(b)]
        return la.centralizer(self.K, [self.mult(b) for b in gens], self.n)


@dataclass
class DiffOpAlgebra:
    tower: object
    layers: list
    relative_to: object = None
    _dplus: object = field(default=None, repr=False)

    @property
    def total(self):
        return self.layers[-1]

    @property
    def dim(self):
        return len(self.total)

    @property
    def layer_dims(self):
        return [len(s) for s in self.layers]

    @property
    def dplus(self):
        if self._dplus is None:
            self._dplus = dplus_split(self)[1]
        return self._dplus

    def order(self, X):
        """Least m with X in D^m, or None when X is not a differential operator."""
        for m, layer in enumerate(self.layers):
            if layer.contains(X):
                return m
        return None

    def to_text(self):
        K = self.tower.K
        lines = [f"layers {len(self.layers)}"]
        for layer in self.layers:
            lines.append(f"layer {len(layer)}")
            for row in layer.rows:
                lines.append(" ; ".join(K.to_str(x) for x in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, T, text, relative_to=None):
        from galtower.expr import parse_element

        K = T.K
        lines = text.splitlines()
        count = int(lines[0].split()[1])
        pos = 1
        layers = []
        N = T.n * T.n
        for _ in range(count):
            head, dim = lines[pos].split()
            if head != "layer":
                raise ValueError("malformed layer header")
            dim = int(dim)
            rows = []
            for k in range(dim):
                entries = lines[pos + 1 + k].split(" ; ")
                if len(entries) != N:
                    raise ValueError("row length mismatch")
                rows.append(tuple(parse_element(K, e) for e in entries))
            pos += 1 + dim
            sp = la.Subspace.span(K, rows, N)
            if len(sp) != dim or sp.rows != tuple(rows):
                raise ValueError("stored layer is not in canonical form")
            layers.append(sp)
        return cls(T, layers, relative_to)


def diffop_filtration(T, relative_to=None, generators=None):
    """The order filtration of D(L/M) for M = relative_to (K by default)."""
    K = T.K
    n = T.n
    E = EndoAlgebra(T)
    gens = generators if generators is not None else T.algebra_generators()
    gen_mats = [E.mult(g) for g in gens if not T.in_base(g)]
    endo = E.end_over(relative_to)
    layer = E.L
    layers = [layer]
    basis = list(endo.rows)
    for _ in range(n):
        current = layer
        cond = lambda X: tuple(  # noqa: E731
            x for G in gen_mats for x in current.reduce(la.commutator(K, X, G, n))
        )
        nxt = la.Subspace.span(K, la.restrict(K, basis, cond) if gen_mats else basis, n * n)
        if not current.le(nxt):
            raise InvariantViolation("filtration layer does not contain the previous one")
        if nxt == current:
            return DiffOpAlgebra(T, layers, relative_to)
        layers.append(nxt)
        layer = nxt
    raise InvariantViolation(f"filtration did not stabilize within {n} steps")


def diffop_filtration_full(T, relative_to=None):
    """Same filtration, testing commutators against every basis element of L."""
    return diffop_filtration(T, relative_to, generators=T.basis_vectors())


def derivations(T, relative_to=None):
    """Der(L/M) by the Leibniz rule on all basis pairs, within End_M(L)."""
    K = T.K
    n = T.n
    E = EndoAlgebra(T)
    basis_vecs = T.basis_vectors()
    mults = [E.mult(b) for b in basis_vecs]
    products = {(i, j): T.mul(basis_vecs[i], basis_vecs[j]) for i in range(n) for j in range(i, n)}

    def leibniz(X):
        cols = [la.column(X, n, j) for j in range(n)]
        out = []
        for (i, j), prod in products.items():
            lhs = la.matvec(K, X, prod, n)
            r1 = la.matvec(K, mults[i], cols[j], n)
            r2 = la.matvec(K, mults[j], cols[i], n)
            out.extend(K.sub(K.sub(a, b), c) for a, b, c in zip(lhs, r1, r2))
        return tuple(out)

    endo = E.end_over(relative_to)
    return la.Subspace.span(K, la.restrict(K, list(endo.rows), leibniz), n * n)


def dplus_split(D):
    """(L, D_+) with D_+ = {delta in D : delta(1) = 0}; checks D = L (+) D_+."""
    T = D.tower
    K = T.K
    n = T.n
    E = EndoAlgebra(T)
    dplus = la.Subspace.span(K, la.restrict(K, list(D.total.rows), lambda X: la.column(X, n, 0)), n * n)
    L = E.L
    if len(L) + len(dplus) != D.dim or len(L.intersect(dplus)) != 0:
        raise SplitFailure(f"dim D = {D.dim}, dim L = {len(L)}, dim D+ = {len(dplus)}")
    for b in T.basis_vectors():
        Mb = E.mult(b)
        for X in dplus.rows:
            if not dplus.contains(la.matmul(K, Mb, X, n)):
                raise SplitFailure("D+ is not a left ideal under L")
    return L, dplus


def constants(T, S, mode="kernel"):
    """Subfield of L killed by (kernel) or commuting with (centralizing) the operators in S."""
    K = T.K
    n = T.n
    ops = list(S.rows) if isinstance(S, la.Subspace) else list(S)
    if mode == "kernel":
        rows = [row for X in ops for row in la.to_rows(X, n)]
        vecs = la.kernel(K, rows, n) if rows else T.basis_vectors()
    elif mode == "centralizing":
        E = EndoAlgebra(T)
        vecs = la.restrict(
            K,
            T.basis_vectors(),
            lambda v: tuple(x for X in ops for x in la.commutator(K, E.mult(v), X, n)),
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    M = SubfieldHandle(T, la.Subspace.span(K, vecs, n), ())
    if not M.contains(T.one) or not M.is_product_closed():
        raise NotASubfield("constants do not form a subfield")
    return M


def relative_matches_centralizer(D_rel, D_abs, M):
    """D(L/M) == C_E(M) intersected with D(L/K)."""
    T = D_abs.tower
    E = EndoAlgebra(T)
    return D_rel.total == E.end_over(M).intersect(D_abs.total)


def is_commutative(T, S):
    K = T.K
    n = T.n
    rows = list(S.rows)
    zero = tuple([K.zero] * (n * n))
    return all(
        la.commutator(K, X, Y, n) == zero for i, X in enumerate(rows) for Y in rows[i + 1 :]
    )


def subfield_from_operators(T, S):
    """The elements l whose multiplication operator lies in S."""
    K = T.K
    E = EndoAlgebra(T)
    basis = T.basis_vectors()
    mats = [E.mult(b) for b in basis]
    if not mats:
        return T.base_subfield()
    combos = la.left_kernel(K, [S.reduce(M) for M in mats])
    vecs = [la.combine_vectors(K, basis, c) for c in combos]
    return SubfieldHandle(T, la.Subspace.span(K, vecs, T.n), ())
