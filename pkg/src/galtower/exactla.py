"""Exact linear algebra over a field domain K.

Vectors are tuples of K-values.  An n x n matrix used as an element of
End_K(L) is stored flattened row-major (entry (i, j) at ``i*n + j``), so
subalgebras of End_K(L) are plain subspaces of K^(n^2).

Every subspace is kept in reduced row-echelon form with monic pivots, which
makes the representation canonical: equal subspaces have identical rows.
"""

from galtower.errors import DimensionMismatch, NoSolution, NotAnAlgebra

# -- row reduction -------------------------------------------------------------


def _eliminate(K, rows, ncols, track=None):
    """In-place Gauss-Jordan.  Returns the pivot list (column per pivot row).

    ``rows`` is a list of lists.  If ``track`` is given it is a parallel list of
    lists receiving the same row operations (used for left kernels).
    """
    zero, one = K.zero, K.one
    sub, mul, inv = K.sub, K.mul, K.inv
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != zero:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            if track is not None:
                track[r], track[piv] = track[piv], track[r]
        prow = rows[r]
        lead = prow[c]
        if lead != one:
            s = inv(lead)
            prow = rows[r] = [mul(v, s) if v != zero else zero for v in prow]
            if track is not None:
                track[r] = [mul(v, s) if v != zero else zero for v in track[r]]
        nz = [j for j in range(c, ncols) if prow[j] != zero]
        tnz = None
        if track is not None:
            trow = track[r]
            tnz = [j for j in range(len(trow)) if trow[j] != zero]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == zero:
                continue
            for j in nz:
                row[j] = sub(row[j], mul(f, prow[j])) if prow[j] != one else sub(row[j], f)
            if track is not None:
                t = track[i]
                for j in tnz:
                    t[j] = sub(t[j], mul(f, trow[j]))
        pivots.append(c)
        r += 1
    return pivots


def rref(K, rows, ncols=None):
    """Reduced row-echelon form: (nonzero rows as tuples, pivot columns)."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != ncols:
            raise DimensionMismatch("ragged matrix")
    pivots = _eliminate(K, rows, ncols)
    return [tuple(r) for r in rows[: len(pivots)]], pivots


def rank(K, rows, ncols=None):
    return len(rref(K, rows, ncols)[1])


def kernel(K, rows, ncols):
    """Basis of {x : A x = 0} for A given by ``rows`` (each of length ncols)."""
    red, pivots = rref(K, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [K.zero] * ncols
        v[f] = K.one
        for r, pc in enumerate(pivots):
            if red[r][f] != K.zero:
                v[pc] = K.neg(red[r][f])
        basis.append(tuple(v))
    return basis


def left_kernel(K, vectors):
    """Coefficient vectors c with sum_i c_i * vectors[i] = 0 (a basis)."""
    m = len(vectors)
    if m == 0:
        return []
    ncols = len(vectors[0])
    rows = [list(v) for v in vectors]
    track = [[K.one if i == j else K.zero for j in range(m)] for i in range(m)]
    pivots = _eliminate(K, rows, ncols, track)
    return [tuple(t) for t in track[len(pivots):]]


def solve(K, rows, rhs):
    """One solution x of A x = rhs; raises NoSolution if inconsistent."""
    if len(rows) != len(rhs):
        raise DimensionMismatch("rhs length does not match row count")
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = _eliminate(K, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        raise NoSolution("inconsistent linear system")
    x = [K.zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = aug[r][ncols]
    return tuple(x)


def is_zero_vector(K, v):
    zero = K.zero
    return all(c == zero for c in v)


# -- subspaces -----------------------------------------------------------------


class Subspace:
    """A K-subspace of K^dim held as canonical RREF rows."""

    __slots__ = ("K", "dim", "rows", "pivots", "_pivot_index")

    def __init__(self, K, dim, rows, pivots):
        self.K = K
        self.dim = dim
        self.rows = tuple(rows)
        self.pivots = tuple(pivots)
        self._pivot_index = {c: i for i, c in enumerate(self.pivots)}

    @classmethod
    def span(cls, K, vectors, dim):
        vectors = [v for v in vectors]
        for v in vectors:
            if len(v) != dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient {dim}")
        rows, pivots = rref(K, vectors, dim) if vectors else ([], [])
        return cls(K, dim, rows, pivots)

    @classmethod
    def zero(cls, K, dim):
        return cls(K, dim, (), ())

    @classmethod
    def full(cls, K, dim):
        rows = [tuple(K.one if i == j else K.zero for j in range(dim)) for i in range(dim)]
        return cls(K, dim, rows, range(dim))

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def basis(self):
        return list(self.rows)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.dim == other.dim and self.rows == other.rows

    def __hash__(self):
        return hash((self.dim, self.rows))

    def __repr__(self):
        return f"Subspace(rank={len(self.rows)}, ambient={self.dim})"

    def _check(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(f"ambient {self.dim} vs {other.dim}")

    def reduce(self, v):
        """Residue of v modulo the subspace (zero iff v is contained)."""
        K = self.K
        zero, sub, mul = K.zero, K.sub, K.mul
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f == zero:
                continue
            for j in range(c, self.dim):
                if row[j] != zero:
                    v[j] = sub(v[j], mul(f, row[j]))
        return tuple(v)

    def contains(self, v):
        if len(v) != self.dim:
            raise DimensionMismatch("vector length")
        return is_zero_vector(self.K, self.reduce(v))

    __contains__ = contains

    def coordinates(self, v):
        """Coefficients of v in the RREF basis; raises NoSolution if v is outside."""
        if not self.contains(v):
            raise NoSolution("vector not in subspace")
        return tuple(v[c] for c in self.pivots)

    def combine(self, coeffs):
        K = self.K
        out = [K.zero] * self.dim
        for c, row in zip(coeffs, self.rows):
            if c == K.zero:
                continue
            for j, x in enumerate(row):
                if x != K.zero:
                    out[j] = K.add(out[j], K.mul(c, x))
        return tuple(out)

    def le(self, other):
        """Containment self <= other."""
        self._check(other)
        return all(other.contains(r) for r in self.rows)

    __le__ = le

    def sum(self, other):
        self._check(other)
        return Subspace.span(self.K, list(self.rows) + list(other.rows), self.dim)

    __add__ = sum

    def intersect(self, other):
        """Intersection via the kernel of the stacked bases [U; -V]."""
        self._check(other)
        K = self.K
        if not self.rows or not other.rows:
            return Subspace.zero(K, self.dim)
        stacked = list(self.rows) + list(other.rows)
        combos = left_kernel(K, stacked)
        a = len(self.rows)
        vecs = [self.combine(c[:a]) for c in combos]
        return Subspace.span(K, vecs, self.dim)

    __and__ = intersect

    def complement_residues(self, vectors):
        return [self.reduce(v) for v in vectors]


def subspace_ops(U, V, op):
    if op == "sum":
        return U.sum(V)
    if op == "intersect":
        return U.intersect(V)
    if op == "equal":
        return U == V
    if op == "contains":
        return V.le(U)
    raise ValueError(f"unknown operation {op!r}")


# -- matrices (flattened) ------------------------------------------------------


def identity(K, n):
    return tuple(K.one if i == j else K.zero for i in range(n) for j in range(n))


def elementary(K, n, i, j):
    v = [K.zero] * (n * n)
    v[i * n + j] = K.one
    return tuple(v)


def to_rows(X, n):
    return [tuple(X[i * n : (i + 1) * n]) for i in range(n)]


def from_rows(rows):
    return tuple(x for r in rows for x in r)


def matmul(K, A, B, n):
    zero = K.zero
    add, mul = K.add, K.mul
    out = [zero] * (n * n)
    bnz = [[(j, B[k * n + j]) for j in range(n) if B[k * n + j] != zero] for k in range(n)]
    for i in range(n):
        base = i * n
        for k in range(n):
            a = A[base + k]
            if a == zero:
                continue
            for j, b in bnz[k]:
                out[base + j] = add(out[base + j], mul(a, b))
    return tuple(out)


def matvec(K, A, v, n):
    zero = K.zero
    out = []
    for i in range(n):
        acc = zero
        for j in range(n):
            a = A[i * n + j]
            if a != zero and v[j] != zero:
                acc = K.add(acc, K.mul(a, v[j]))
        out.append(acc)
    return tuple(out)


def matsub(K, A, B):
    return tuple(K.sub(a, b) for a, b in zip(A, B))


def commutator(K, A, B, n):
    return matsub(K, matmul(K, A, B, n), matmul(K, B, A, n))


def transpose(X, n):
    return tuple(X[j * n + i] for i in range(n) for j in range(n))


def column(X, n, j):
    return tuple(X[i * n + j] for i in range(n))


def from_columns(K, cols):
    n = len(cols)
    return tuple(cols[j][i] for i in range(n) for j in range(n))


def matinv(K, A, n):
    rows = to_rows(A, n)
    aug = [list(r) + [K.one if i == j else K.zero for j in range(n)] for i, r in enumerate(rows)]
    pivots = _eliminate(K, aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise NoSolution("singular matrix")
    return tuple(aug[i][n + j] for i in range(n) for j in range(n))


def restrict(K, basis, condition):
    """Sub-basis of span(basis) on which the linear map ``condition`` vanishes.

    ``condition(X)`` returns a vector; the result spans
    {sum c_k basis[k] : sum c_k condition(basis[k]) = 0}.
    """
    if not basis:
        return []
    images = [condition(B) for B in basis]
    combos = left_kernel(K, images)
    return [_combine_vectors(K, basis, c) for c in combos]


def _combine_vectors(K, vectors, coeffs):
    zero = K.zero
    out = [zero] * len(vectors[0])
    for c, v in zip(coeffs, vectors):
        if c == zero:
            continue
        for j, x in enumerate(v):
            if x != zero:
                out[j] = K.add(out[j], K.mul(c, x) if c != K.one else x)
    return tuple(out)


def combine_vectors(K, vectors, coeffs):
    return _combine_vectors(K, vectors, coeffs)


def algebra_closure(K, gens, n):
    """Smallest product-closed subspace of M_n(K) containing gens and the identity.

    The span is grown by right multiplication with the generators until it is
    stable, which yields the span of all words in the generators.
    """
    N = n * n
    current = Subspace.span(K, [identity(K, n)] + list(gens), N)
    # keep only generators that are needed, in order
    gen_list = []
    probe = Subspace.span(K, [identity(K, n)], N)
    for g in gens:
        if not probe.contains(g):
            gen_list.append(g)
            probe = Subspace.span(K, list(probe.rows) + [g], N)
    frontier = list(current.rows)
    while frontier and len(current) < N:
        new = []
        for X in frontier:
            for g in gen_list:
                P = matmul(K, X, g, n)
                if not current.contains(P):
                    current = Subspace.span(K, list(current.rows) + [P], N)
                    new.append(P)
                    if len(current) == N:
                        break
            if len(current) == N:
                break
        frontier = new
    return current


def is_product_closed(K, A, n):
    return all(A.contains(matmul(K, X, Y, n)) for X in A.rows for Y in A.rows)


def centralizer(K, S, n, within=None):
    """{X in within : X s = s X for all s in S} as a Subspace of K^(n^2)."""
    N = n * n
    if within is None:
        basis = [elementary(K, n, i, j) for i in range(n) for j in range(n)]
    else:
        basis = list(within.rows)
    for s in S:
        if not basis:
            break
        basis = restrict(K, basis, lambda X, s=s: commutator(K, X, s, n))
    return Subspace.span(K, basis, N)


def center(K, A, n, check=True):
    if check and not is_product_closed(K, A, n):
        raise NotAnAlgebra("subspace is not closed under products")
    return centralizer(K, A.rows, n, within=A)


def conjugate(K, g, X, g_inv, n):
    return matmul(K, matmul(K, g, X, n), g_inv, n)
