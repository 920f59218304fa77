"""Finite extensions L/K presented as binomial towers.

L = K(g1, ..., gk) with g_i^(m_i) = c_i, c_i an element of K(g1, ..., g_{i-1}).
Elements of L are coordinate tuples over the monomial basis
g1^a1 * ... * gk^ak (0 <= a_i < m_i), with g1 varying fastest; index 0 is 1.
"""

from dataclasses import dataclass, field
from functools import cached_property

from galtower import exactla as la
from galtower.errors import (
    DegreeOverflow,
    DivisionByZero,
    Inconclusive,
    NoRoot,
    NotASubfield,
    ReducibleBinomial,
    StrategyPreconditionFailed,
)
from galtower.exactfield import BaseFieldDesc
from galtower.exactfield.finite import prime_factors
from galtower.expr import base_env, evaluate, parse_expr
from galtower.unipoly import UniPoly

DEFAULT_DEGREE_CAP = 64
DEFAULT_DECOMPOSITION_CAP = 4096


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    m: int
    value: str


@dataclass(frozen=True)
class TowerSpec:
    base: BaseFieldDesc
    generators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        clash = set(names) & set(self.base.variables)
        if clash or ("a" in names and self.base.ff.d > 1):
            raise ValueError(f"generator names clash with base names: {sorted(clash) or ['a']}")
        for g in self.generators:
            if g.m < 2:
                raise ValueError(f"generator {g.name}: exponent must be at least 2")

    def prefix(self, k):
        return TowerSpec(self.base, self.generators[:k])

    def canonical_text(self):
        from galtower.cli.towerfile import spec_to_text

        return spec_to_text(self)

    def content_hash(self):
        import hashlib

        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:16]


def _p_part(m, p):
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e, m


class FiniteAlgebra:
    """A commutative K-algebra of dimension n given by sparse structure constants.

    ``struct[i][j]`` lists the nonzero (k, c) with e_i * e_j = sum c * e_k.
    Index 0 must be the identity.
    """

    def __init__(self, K, n, struct):
        self.K = K
        self.n = n
        self.struct = struct
        self.p = self.char = K.p
        self.prime = 0
        self.zero = tuple([K.zero] * n)
        self.one = tuple([K.one] + [K.zero] * (n - 1))

    # -- domain protocol ------------------------------------------------

    def basis_vector(self, i):
        K = self.K
        return tuple(K.one if j == i else K.zero for j in range(self.n))

    def basis_vectors(self):
        return [self.basis_vector(i) for i in range(self.n)]

    def embed(self, k):
        return tuple([k] + [self.K.zero] * (self.n - 1))

    def from_int(self, c):
        return self.embed(self.K.from_int(c))

    def add(self, a, b):
        add = self.K.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.K.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.K.neg
        return tuple(neg(x) for x in a)

    def scale(self, k, a):
        mul = self.K.mul
        return tuple(mul(k, x) for x in a)

    def mul(self, a, b):
        K = self.K
        zero, one = K.zero, K.one
        add, mul = K.add, K.mul
        out = [zero] * self.n
        bnz = [(j, y) for j, y in enumerate(b) if y != zero]
        struct = self.struct
        for i, x in enumerate(a):
            if x == zero:
                continue
            row = struct[i]
            for j, y in bnz:
                xy = mul(x, y)
                for k, c in row[j]:
                    out[k] = add(out[k], xy if c == one else mul(xy, c))
        return tuple(out)

    def is_zero(self, a):
        return a == self.zero

    def in_base(self, a):
        zero = self.K.zero
        return all(x == zero for x in a[1:])

    def mult_matrix(self, a):
        """Matrix of multiplication by a, flattened row-major."""
        K = self.K
        n = self.n
        zero, one = K.zero, K.one
        cols = [[zero] * n for _ in range(n)]
        struct = self.struct
        for i, x in enumerate(a):
            if x == zero:
                continue
            row = struct[i]
            for j in range(n):
                col = cols[j]
                for k, c in row[j]:
                    col[k] = K.add(col[k], x if c == one else K.mul(x, c))
        return tuple(cols[j][i] for i in range(n) for j in range(n))

    def inv(self, a):
        if a == self.zero:
            raise DivisionByZero("inverse of zero in the tower")
        M = la.to_rows(self.mult_matrix(a), self.n)
        return la.solve(self.K, M, self.one)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def frobenius_power(self, a, e=1):
        return self.pow(a, self.p**e)

    def algebra_generators(self):
        return [self.basis_vector(i) for i in range(1, self.n)]

    def check_table(self, samples=200, rng=None):
        """Commutativity and associativity of the structure constants."""
        n = self.n
        basis = self.basis_vectors()
        for i in range(n):
            for j in range(n):
                if self.mul(basis[i], basis[j]) != self.mul(basis[j], basis[i]):
                    return False
        if n <= 8:
            triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
        else:
            import random

            rng = rng or random.Random(0)
            triples = [tuple(rng.randrange(n) for _ in range(3)) for _ in range(samples)]
        for i, j, k in triples:
            a, b, c = basis[i], basis[j], basis[k]
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                return False
        return self.mul(self.one, basis[-1]) == basis[-1]


@dataclass(frozen=True)
class BuildNote:
    generator: int
    ell: int
    message: str


class FieldTower(FiniteAlgebra):
    """The extension L/K for a TowerSpec, built and validated."""

    def __init__(
        self,
        spec,
        degree_cap=DEFAULT_DEGREE_CAP,
        decomposition_cap=DEFAULT_DECOMPOSITION_CAP,
        check=True,
        struct=None,
        _K=None,
    ):
        self.spec = spec
        K = _K if _K is not None else spec.base.build()
        self.decomposition_cap = decomposition_cap
        self.degree_cap = degree_cap
        gens = spec.generators
        self.names = tuple(g.name for g in gens)
        self.ms = tuple(g.m for g in gens)
        n = 1
        for m in self.ms:
            n *= m
        if n > degree_cap:
            raise DegreeOverflow(f"[L:K] = {n} exceeds the cap {degree_cap}")
        self.notes = []
        if not gens:
            self.parent = None
            self.c = None
            super().__init__(K, 1, [[[(0, K.one)]]])
            self.exponents = [()]
            return
        parent = FieldTower(spec.prefix(len(gens) - 1), degree_cap, decomposition_cap, check, _K=K)
        self.parent = parent
        self.notes = list(parent.notes)
        g = gens[-1]
        c = parent.parse(g.value)
        if parent.is_zero(c):
            raise ValueError(f"generator {g.name}: defining value is zero")
        self.c = c
        if check:
            self._check_binomial(len(gens) - 1, g.m, c)
        self.exponents = [e + (t,) for t in range(g.m) for e in parent.exponents]
        if struct is None:
            struct = self._build_struct(parent, g.m, c)
        super().__init__(K, n, struct)
        if check and not self.check_table():
            raise ValueError("structure constants failed commutativity/associativity")

    @staticmethod
    def _build_struct(parent, m, c):
        K = parent.K
        zero = K.zero
        np_ = parent.n
        n = np_ * m
        pbasis = parent.basis_vectors()
        struct = [[None] * n for _ in range(n)]
        for i in range(n):
            ai, ti = i % np_, i // np_
            for j in range(i, n):
                aj, tj = j % np_, j // np_
                low = parent.mul(pbasis[ai], pbasis[aj])
                t = ti + tj
                if t >= m:
                    low = parent.mul(low, c)
                    t -= m
                entry = tuple((t * np_ + k, x) for k, x in enumerate(low) if x != zero)
                struct[i][j] = entry
                struct[j][i] = entry
        return struct

    # -- presentation ----------------------------------------------------

    @property
    def degree(self):
        return self.n

    def gen(self, name):
        i = self.names.index(name)
        idx = 1
        for m in self.ms[:i]:
            idx *= m
        return self.basis_vector(idx)

    def env(self):
        env = {k: self.embed(v) for k, v in base_env(self.K).items()}
        for name in self.names:
            env[name] = self.gen(name)
        return env

    def parse(self, text, line=None):
        return evaluate(parse_expr(text, line), self, self.env(), line)

    def lift(self, a):
        """Image of an element of a prefix tower (parent chain) in this tower."""
        if len(a) == self.n:
            return a
        return tuple(a) + tuple([self.K.zero] * (self.n - len(a)))

    def monomial_str(self, idx):
        parts = []
        for name, e in zip(self.names, self.exponents[idx]):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def to_str(self, a):
        K = self.K
        terms = []
        for idx in range(self.n - 1, -1, -1):
            x = a[idx]
            if x == K.zero:
                continue
            cs = K.to_str(x)
            mono = self.monomial_str(idx)
            if not mono:
                terms.append(cs if not any(ch in cs for ch in "+/") or not terms else f"({cs})")
            elif x == K.one:
                terms.append(mono)
            elif any(ch in cs for ch in "+/*"):
                terms.append(f"({cs})*{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        return "+".join(terms) if terms else "0"

    def algebra_generators(self):
        return [self.gen(name) for name in self.names]

    @cached_property
    def separable_degree(self):
        d = 1
        for m in self.ms:
            d *= _p_part(m, self.p)[1]
        return d

    @property
    def unverified_irreducible(self):
        return bool(self.notes)

    # -- irreducibility of the defining binomials -------------------------

    def _check_binomial(self, index, m, c):
        """Capelli's criterion for t^m - c over the parent field (self.parent)."""
        P = self.parent
        p = P.p
        for ell in prime_factors(m):
            if ell == p:
                try:
                    r = P.pth_root(c, 1)
                except Inconclusive as exc:
                    self.notes.append(BuildNote(index, ell, str(exc)))
                    continue
                if r is not None:
                    raise ReducibleBinomial(index, ell)
            else:
                status = P.nth_root_status(c, ell)
                if status == "yes":
                    raise ReducibleBinomial(index, ell)
                if status == "unknown":
                    self.notes.append(BuildNote(index, ell, "root search inconclusive"))
        # c in -4 L^4 makes t^4 - c reducible; vacuous in characteristic 2
        if m % 4 == 0 and p != 2:
            K = P.K
            d = P.scale(K.neg(K.inv(K.from_int(4))), c)
            status = P.nth_root_status(d, 4)
            if status == "yes":
                raise ReducibleBinomial(index, 4)
            if status == "unknown":
                self.notes.append(BuildNote(index, 4, "root search inconclusive (-4c test)"))

    def _kummer_complete(self, ell):
        q = self.K.ff.q
        if (q - 1) % ell:
            return False
        t = self
        while t.parent is not None:
            if not t.parent.in_base(t.c):
                return False
            r = _p_part(t.ms[-1], self.p)[1]
            if (q - 1) % r:
                return False
            t = t.parent
        return True

    def nth_root_status(self, c, ell):
        """'yes' / 'no' / 'unknown' for the existence of an ell-th root of c, ell prime to p."""
        K = self.K
        if self.in_base(c) and K.nth_root(c[0], ell) is not None:
            return "yes"
        if self.n == 1:
            return "no"
        if self.in_base(c) and _is_prime(ell) and self.separable_degree % ell:
            # K(c^(1/ell)) would be a separable subextension of degree ell
            return "no"
        if ell == 4 and self.nth_root_status(c, 2) == "no":
            return "no"
        for idx in range(self.n):
            b = self.basis_vector(idx)
            kappa = self.div(c, self.pow(b, ell))
            if not self.in_base(kappa):
                continue
            r = K.nth_root(kappa[0], ell)
            if r is not None and self.pow(self.scale(r, b), ell) == c:
                return "yes"
        if self.in_base(c) and self._kummer_complete(ell):
            return "no"
        return "unknown"

    # -- Frobenius and p-th roots -------------------------------------------

    @cached_property
    def _frobenius_basis(self):
        return [self.pow(b, self.p) for b in self.basis_vectors()]

    def pth_root(self, d, e=1):
        """beta with beta^(p^e) = d, or None; raises Inconclusive past the caps."""
        beta = d
        for _ in range(e):
            beta = self._pth_root_once(beta)
            if beta is None:
                return None
        return beta

    def _pth_root_once(self, d):
        K = self.K
        if self.n == 1:
            r = K.pth_root(d[0], 1)
            return None if r is None else (r,)
        E = self._frobenius_basis
        cols = [list(col) for col in zip(*E)]  # cols[j][i] = (e_i^p)_j
        red, pivots = la.rref(K, cols, self.n)
        if len(pivots) == self.n:
            try:
                u = la.solve(K, cols, list(d))
            except la.NoSolution:
                return None
            roots = []
            for x in u:
                r = K.pth_root(x, 1)
                if r is None:
                    return None
                roots.append(r)
            beta = tuple(roots)
        else:
            beta = self._semilinear_solve(E, d, 1)
            if beta is None:
                return None
        return beta if self.pow(beta, self.p) == d else None

    def _decompose_rows(self, vectors_by_unknown, rhs, e):
        """Rows of the K-linear system equivalent to sum_i b_i^(p^e) v_i = rhs.

        Each coordinate is split over K^(p^e) with the monomial basis x^alpha;
        the p^e-th roots of the components become the K-linear coefficients.
        """
        K = self.K
        n_unknown = len(vectors_by_unknown)
        ncoord = len(rhs) if rhs is not None else len(vectors_by_unknown[0])
        rows = {}
        for i, v in enumerate(vectors_by_unknown):
            for j in range(ncoord):
                if v[j] == K.zero:
                    continue
                for alpha, theta in K.decompose(v[j], e).items():
                    rows.setdefault((j, alpha), [K.zero] * (n_unknown + 1))[i] = theta
        if rhs is not None:
            for j in range(ncoord):
                if rhs[j] == K.zero:
                    continue
                for alpha, theta in K.decompose(rhs[j], e).items():
                    rows.setdefault((j, alpha), [K.zero] * (n_unknown + 1))[n_unknown] = theta
        if len(rows) > self.decomposition_cap:
            raise Inconclusive(
                f"decomposition over K^(p^{e}) needs {len(rows)} rows, cap {self.decomposition_cap}"
            )
        return [rows[key] for key in sorted(rows, key=repr)]

    def _semilinear_solve(self, E, d, e):
        K = self.K
        rows = self._decompose_rows(E, d, e)
        if not rows:
            return tuple([K.zero] * self.n)
        A = [r[:-1] for r in rows]
        b = [r[-1] for r in rows]
        try:
            return la.solve(K, A, b)
        except la.NoSolution:
            return None

    def pth_root_in_tower(self, d, e=1):
        r = self.pth_root(d, e)
        if r is None:
            raise NoRoot("no p^e-th root in L")
        return r

    def semilinear_kernel_space(self, e):
        """S_e = {beta in L : beta^(p^e) in K} as a K-subspace of L."""
        K = self.K
        k = self.p**e
        powers = [self.pow(b, k) for b in self.basis_vectors()]
        # drop coordinate 0: membership in K only constrains the others
        trimmed = [v[1:] for v in powers]
        rows = self._decompose_rows(trimmed, None, e)
        A = [r[:-1] for r in rows]
        basis = la.kernel(K, A, self.n) if A else [self.basis_vector(i) for i in range(self.n)]
        return la.Subspace.span(K, basis, self.n)

    # -- minimal polynomials and subfields -----------------------------------

    def min_poly(self, a, over=None):
        """Monic minimal polynomial of a over K (or over a SubfieldHandle)."""
        K = self.K
        if over is None or over.degree == 1:
            powers = [self.one]
            while True:
                nxt = self.mul(powers[-1], a)
                span = la.Subspace.span(K, powers, self.n)
                if span.contains(nxt):
                    cols = [list(col) for col in zip(*powers)]
                    coeffs = la.solve(K, cols, list(nxt))
                    out = [K.neg(x) for x in coeffs] + [K.one]
                    return UniPoly(K, tuple(out))
                powers.append(nxt)
        mbasis = list(over.space.rows)
        powers = [self.one]
        while True:
            nxt = self.mul(powers[-1], a)
            spanning = [self.mul(mb, pw) for pw in powers for mb in mbasis]
            span = la.Subspace.span(K, spanning, self.n)
            if span.contains(nxt):
                cols = [list(col) for col in zip(*spanning)]
                lam = la.solve(K, cols, list(nxt))
                r = len(mbasis)
                coeffs = []
                for i in range(len(powers)):
                    mu = self.zero
                    for j in range(r):
                        x = lam[i * r + j]
                        if x != K.zero:
                            mu = self.add(mu, self.scale(x, mbasis[j]))
                    coeffs.append(self.neg(mu))
                return UniPoly(self, tuple(coeffs) + (self.one,))
            powers.append(nxt)

    def subfield_generate(self, gens, verify=True):
        return subfield_generate(self, gens, verify=verify)

    def base_subfield(self):
        return SubfieldHandle(self, la.Subspace.span(self.K, [self.one], self.n), ())

    def full_subfield(self):
        return SubfieldHandle(
            self, la.Subspace.full(self.K, self.n), tuple(self.algebra_generators())
        )

    def elem_ops(self, a, b, op):
        return {
            "add": self.add,
            "sub": self.sub,
            "mul": self.mul,
            "div": self.div,
        }[op](a, b)


def _is_prime(n):
    return n > 1 and prime_factors(n) == [n]


@dataclass(frozen=True, eq=False)
class SubfieldHandle:
    """An intermediate field K <= M <= L, as a canonical K-subspace of L."""

    tower: object
    space: la.Subspace
    generators: tuple = field(default=())

    @property
    def degree(self):
        return len(self.space)

    def __eq__(self, other):
        return isinstance(other, SubfieldHandle) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return f"SubfieldHandle(degree={self.degree})"

    def basis(self):
        return list(self.space.rows)

    def contains(self, a):
        return self.space.contains(a)

    __contains__ = contains

    def le(self, other):
        return self.space.le(other.space)

    __le__ = le

    def intersect(self, other):
        space = self.space.intersect(other.space)
        return SubfieldHandle(self.tower, space, ())

    def mult_matrices(self):
        return [self.tower.mult_matrix(b) for b in self.basis()]

    def is_product_closed(self):
        T = self.tower
        rows = self.basis()
        return all(self.space.contains(T.mul(x, y)) for i, x in enumerate(rows) for y in rows[i:])

    def content_hash(self):
        import hashlib

        K = self.tower.K
        text = ";".join(",".join(K.to_str(x) for x in row) for row in self.space.rows)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def as_algebra(self):
        """This subfield as a FiniteAlgebra in its own RREF basis (1 first)."""
        T = self.tower
        K = T.K
        basis = self.basis()
        # rebase so that the identity is the first basis vector
        if basis[0] != T.one:
            basis = [T.one] + [b for b in basis if b != T.one]
            sp = la.Subspace.span(K, basis, T.n)
            ordered = [T.one]
            for row in sp.rows:
                if len(la.Subspace.span(K, ordered + [row], T.n)) > len(ordered):
                    ordered.append(row)
            basis = ordered
        r = len(basis)
        cols = [list(col) for col in zip(*basis)]
        struct = [[None] * r for _ in range(r)]
        for i in range(r):
            for j in range(i, r):
                prod = T.mul(basis[i], basis[j])
                coords = la.solve(K, cols, list(prod))
                entry = tuple((k, x) for k, x in enumerate(coords) if x != K.zero)
                struct[i][j] = struct[j][i] = entry
        alg = FiniteAlgebra(K, r, struct)
        alg.embedding = basis
        return alg


def subfield_generate(T, gens, verify=True):
    """Smallest K-subalgebra of L containing 1 and gens (a field, being finite-dimensional)."""
    K = T.K
    gens = [tuple(g) for g in gens]
    space = la.Subspace.span(K, [T.one] + gens, T.n)
    frontier = list(space.rows)
    while frontier and len(space) < T.n:
        new = []
        for x in frontier:
            for g in gens:
                y = T.mul(x, g)
                if not space.contains(y):
                    space = la.Subspace.span(K, list(space.rows) + [y], T.n)
                    new.append(y)
        frontier = new
    M = SubfieldHandle(T, space, tuple(gens))
    if verify and not M.is_product_closed():
        raise NotASubfield("generated subspace is not closed under products")
    return M


def build_tower(spec, **kwargs):
    return FieldTower(spec, **kwargs)


def frobenius_power(T, a, e=1):
    return T.frobenius_power(a, e)


def compositum(M1, M2):
    return subfield_generate(M1.tower, M1.basis() + M2.basis())


def tensor_decomposition_check(M1, M2):
    """True iff M1 (x)_K M2 -> M1 M2 is an isomorphism, i.e. degrees multiply."""
    return compositum(M1, M2).degree == M1.degree * M2.degree


def purely_inseparable_part(T, strategy="semilinear", group=None):
    """L^pi = {beta : beta^(p^e) in K for some e}.

    ``via-automorphisms`` takes the fixed field of the full automorphism group
    and is only valid for normal extensions; ``semilinear`` is general.
    """
    K = T.K
    if strategy == "via-automorphisms":
        from galtower.symmetry import enumerate_automorphisms, fixed_field, is_normal_by_b_check

        if not is_normal_by_b_check(T):
            raise StrategyPreconditionFailed("via-automorphisms needs a normal extension")
        G = group or enumerate_automorphisms(T)
        return fixed_field(G, range(len(G.elements)))
    if strategy != "semilinear":
        raise ValueError(f"unknown strategy {strategy!r}")
    space = la.Subspace.span(K, [T.one], T.n)
    e = 0
    limit = 0
    k = 1
    while k < T.n:
        k *= T.p
        limit += 1
    while e < limit:
        e += 1
        nxt = T.semilinear_kernel_space(e)
        if nxt == space:
            break
        space = nxt
    M = SubfieldHandle(T, space, ())
    if not M.is_product_closed():
        raise NotASubfield("purely inseparable part is not product-closed")
    return M
