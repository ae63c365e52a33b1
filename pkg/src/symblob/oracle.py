"""Brute-force ground truth for blocks.

Homomorphisms between cell modules are found by solving the equivariance
system directly.  Cell modules are cyclic on their representative vector,
so a map is determined by the image ``u`` of that vector; the unknowns are
then the coordinates of ``u`` rather than a whole matrix.  When the
representative fails to generate (it can at degenerate specialisations) the
full Kronecker system is used instead.

Blocks are the connected components of the graph with an edge wherever some
Hom space between distinct cell modules is nonzero.  By default arithmetic is
modular: ``x`` is sent to a rational point or to a root of unity inside
``GF(p)``, and the whole computation is repeated over a second prime.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from flint import fmpq_mat, nmod_mat

from .cellmod import build
from .exact import PointField, PrimeField, primes_congruent_one, _gauss
from .gram import algebra_for, gram_matrix
from .params import BLabel, ParameterError, all_labels, dn_labels


class OracleError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# matrix backends


class _ListBackend:
    """Dense matrices as lists of rows over an arbitrary exact field."""

    def __init__(self, field):
        self.f = field

    def mat(self, rows):
        return [list(r) for r in rows]

    def zeros(self, r, c):
        return [[self.f.zero] * c for _ in range(r)]

    def eye(self, n):
        f = self.f
        return [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]

    def mul(self, A, B):
        f = self.f
        k = len(B[0]) if B else 0
        out = []
        for row in A:
            acc = [f.zero] * k
            for t, a in enumerate(row):
                if f.is_zero(a):
                    continue
                Bt = B[t]
                for j in range(k):
                    acc[j] = acc[j] + a * Bt[j]
            out.append(acc)
        return out

    def add(self, A, B):
        return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]

    def sub(self, A, B):
        return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]

    def scale(self, c, A):
        return [[c * x for x in r] for r in A]

    def col(self, A, j):
        return [[r[j]] for r in A]

    def entry(self, A, i, j):
        return A[i][j]

    def rows(self, A):
        return len(A)

    def stack(self, blocks):
        return [r for b in blocks for r in b]

    def hstack(self, blocks):
        return [sum((b[i] for b in blocks), []) for i in range(len(blocks[0]))]

    def rank(self, A):
        if not A:
            return 0
        return _gauss(A, self.f)[1]

    def nullspace(self, A, ncols):
        """Basis of ``{u : A u = 0}`` as a list of column matrices."""
        f = self.f
        m = [list(r) for r in A]
        pivots = []
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(m)) if not f.is_zero(m[i][c])), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = f.one / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(len(m)):
                if i != r and not f.is_zero(m[i][c]):
                    t = m[i][c]
                    m[i] = [x - t * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        free = [c for c in range(ncols) if c not in pivots]
        out = []
        for fc in free:
            v = [f.zero] * ncols
            v[fc] = f.one
            for i, pc in enumerate(pivots):
                v[pc] = -m[i][fc]
            out.append([[x] for x in v])
        return out

    def solve(self, A, B):
        from .exact import solve
        return solve(A, B, self.f)

    def is_zero(self, A):
        return all(self.f.is_zero(x) for r in A for x in r)


class _FlintBackend(_ListBackend):
    """nmod_mat / fmpq_mat backed matrices."""

    def __init__(self, field):
        self.f = field
        if isinstance(field, PrimeField):
            self._new = lambda r, c, xs: nmod_mat(r, c, [int(x) for x in xs], field.p)
        else:
            self._new = lambda r, c, xs: fmpq_mat(r, c, list(xs))

    def mat(self, rows):
        r = len(rows)
        c = len(rows[0]) if r else 0
        return self._new(r, c, [x for row in rows for x in row])

    def zeros(self, r, c):
        return self._new(r, c, [0] * (r * c))

    def eye(self, n):
        return self._new(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def mul(self, A, B):
        return A * B

    def add(self, A, B):
        return A + B

    def sub(self, A, B):
        return A - B

    def scale(self, c, A):
        return A * c

    def col(self, A, j):
        return self._new(A.nrows(), 1, [A[i, j] for i in range(A.nrows())])

    def entry(self, A, i, j):
        return A[i, j]

    def rows(self, A):
        return A.nrows()

    def _to_list(self, A):
        return [[A[i, j] for j in range(A.ncols())] for i in range(A.nrows())]

    def stack(self, blocks):
        nc = blocks[0].ncols()
        xs = []
        nr = 0
        for b in blocks:
            nr += b.nrows()
            xs.extend(b.entries())
        return self._new(nr, nc, xs)

    def hstack(self, blocks):
        return self.stack([b.transpose() for b in blocks]).transpose()

    def rank(self, A):
        return A.rank()

    def nullspace(self, A, ncols):
        if hasattr(A, "nullspace"):
            X, k = A.nullspace()
            return [self.col(X, j) for j in range(k)]
        # fmpq_mat has no nullspace; read it off the reduced row echelon form
        R, r = A.rref()
        pivots = []
        for i in range(r):
            pivots.append(next(j for j in range(ncols) if R[i, j] != 0))
        out = []
        for free in (j for j in range(ncols) if j not in pivots):
            v = [0] * ncols
            v[free] = 1
            for i, pc in enumerate(pivots):
                v[pc] = -R[i, free]
            out.append(self._new(ncols, 1, v))
        return out

    def solve(self, A, B):
        return A.solve(B)

    def is_zero(self, A):
        return all(int(x) == 0 for x in A.entries()) if isinstance(self.f, PrimeField) \
            else all(x == 0 for x in A.entries())


def backend(field):
    if isinstance(field, (PrimeField, PointField)):
        return _FlintBackend(field)
    return _ListBackend(field)


# ---------------------------------------------------------------------------
# representations


@dataclass
class Rep:
    label: object
    dim: int
    gens: list
    rep_index: int
    frame: tuple = dc_field(default=None, repr=False)


def representation(label, params, field, be=None):
    be = be or backend(field)
    module = build(label)
    alg = algebra_for(label, params, field)
    gens = [be.mat(M) for M in module.generator_matrices(alg)]
    return Rep(label, module.dim, gens, module.index[module.rep])


@dataclass
class HomSpace:
    source: object
    target: object
    dimension: int
    basis: list = dc_field(default_factory=list, repr=False)
    method: str = "cyclic"


def _source_frame(src, be):
    """Spanning words for ``src`` grown from its representative.

    Returns ``(V, Vinv, steps)``: ``V`` has the spanning vectors as columns,
    vector ``k >= 1`` is ``gens[g] @ vector[parent]`` for ``steps[k-1] =
    (parent, g)``.  ``None`` if the representative does not generate.
    """
    if src.frame is not None:
        return src.frame or None
    d = src.dim
    vecs = [be.col(be.eye(d), src.rep_index)]
    steps = []
    k = 0
    while k < len(vecs) and len(vecs) < d:
        for g in range(len(src.gens)):
            v = be.mul(src.gens[g], vecs[k])
            if be.rank(be.hstack(vecs + [v])) > len(vecs):
                vecs.append(v)
                steps.append((k, g))
                if len(vecs) == d:
                    break
        k += 1
    if len(vecs) < d:
        src.frame = ()
        return None
    V = be.hstack(vecs)
    src.frame = (V, be.solve(V, be.eye(d)), steps)
    return src.frame


def _cyclic_frame(src, tgt, be):
    """``(V, Vinv, words)`` where ``words[k]`` is the word of vector ``k`` acting on ``tgt``."""
    frame = _source_frame(src, be)
    if frame is None:
        return None
    V, Vinv, steps = frame
    words = [be.eye(tgt.dim)]
    for parent, g in steps:
        words.append(be.mul(tgt.gens[g], words[parent]))
    return V, Vinv, words


def _hom_cyclic(src, tgt, be, want_basis):
    frame = _cyclic_frame(src, tgt, be)
    if frame is None:
        return None
    V, Vinv, words = frame
    f = be.f
    blocks = []
    for k in range(src.dim):
        vk = be.col(V, k)
        for g in range(len(src.gens)):
            c = be.mul(Vinv, be.mul(src.gens[g], vk))
            acc = be.scale(f.zero - f.one, be.mul(tgt.gens[g], words[k]))
            for j in range(src.dim):
                cj = be.entry(c, j, 0)
                if not f.is_zero(cj):
                    acc = be.add(acc, be.scale(cj, words[j]))
            if not be.is_zero(acc):
                blocks.append(acc)
    if blocks:
        sols = be.nullspace(be.stack(blocks), tgt.dim)
    else:
        sols = [be.col(be.eye(tgt.dim), i) for i in range(tgt.dim)]
    basis = []
    if want_basis:
        for u in sols:
            X = be.mul(be.hstack([be.mul(W, u) for W in words]), Vinv)
            basis.append(X)
    return len(sols), basis


def _hom_kron(src, tgt, be, want_basis, guard=4096):
    """Solve ``X A_g = B_g X`` on all entries of ``X``."""
    dA, dB = src.dim, tgt.dim
    K = dA * dB
    if K > guard:
        raise OracleError(f"Kronecker system of size {K} exceeds guard {guard}")
    f = be.f
    rows = []
    # unknown x[(i, j)] = X[i][j] at position i * dA + j
    for A, B in zip(src.gens, tgt.gens):
        for i in range(dB):
            for j in range(dA):
                row = [f.zero] * K
                for t in range(dA):
                    a = be.entry(A, t, j)
                    if not f.is_zero(a):
                        row[i * dA + t] = row[i * dA + t] + a
                for t in range(dB):
                    b = be.entry(B, i, t)
                    if not f.is_zero(b):
                        row[t * dA + j] = row[t * dA + j] - b
                rows.append(row)
    sols = be.nullspace(be.mat(rows), K)
    basis = []
    if want_basis:
        for u in sols:
            xs = [be.entry(u, r, 0) for r in range(K)]
            basis.append(be.mat([xs[i * dA:(i + 1) * dA] for i in range(dB)]))
    return len(sols), basis


def hom_between(src, tgt, be, want_basis=False):
    out = _hom_cyclic(src, tgt, be, want_basis)
    if out is not None:
        return HomSpace(src.label, tgt.label, out[0], out[1], "cyclic")
    dim, basis = _hom_kron(src, tgt, be, want_basis)
    return HomSpace(src.label, tgt.label, dim, basis, "kronecker")


# ---------------------------------------------------------------------------
# specialisations


_DEFAULT_POINTS = (Fraction(7, 3), Fraction(11, 5))


@dataclass(frozen=True)
class Specialization:
    """One concrete field in which the oracle computes."""

    params: object
    prime: int = None
    x0: Fraction = None
    seed: int = 0

    def field(self):
        p = self.params
        if self.prime is None:
            return p.field()
        if p.spec.mode == "generic":
            from .exact import PrimeField as PF
            return PF(p.D, self.prime, x0=self.x0)
        return p.field(prime=self.prime, seed=self.seed)


def specializations(params, count=2):
    """``count`` independent modular specialisations of ``params``."""
    spec = params.spec
    D = params.D
    if spec.mode == "root":
        primes = primes_congruent_one(2 * spec.ell * D, count)
        return [Specialization(params, p, seed=i) for i, p in enumerate(primes)]
    primes = primes_congruent_one(2, count)
    if spec.mode == "point":
        return [Specialization(params, p, x0=spec.x0) for p in primes]
    return [Specialization(params, p, x0=x0) for p, x0 in zip(primes, _DEFAULT_POINTS * count)]


def _labels(n, params):
    if params.theta is not None:
        return all_labels(n)
    return dn_labels(n)


def hom_space(l1, l2, params, spec=None, basis=True):
    """Hom(W(l1), W(l2)) at one specialisation (the first modular one by default)."""
    spec = spec or specializations(params, 1)[0]
    field = spec.field()
    be = backend(field)
    src = representation(l1, params, field, be)
    tgt = representation(l2, params, field, be)
    return hom_between(src, tgt, be, want_basis=basis)


def check_intertwiner(h, params, spec=None):
    """Every basis map of ``h`` commutes with all generators."""
    spec = spec or specializations(params, 1)[0]
    field = spec.field()
    be = backend(field)
    src = representation(h.source, params, field, be)
    tgt = representation(h.target, params, field, be)
    for X in h.basis:
        for A, B in zip(src.gens, tgt.gens):
            if not be.is_zero(be.sub(be.mul(X, A), be.mul(B, X))):
                return False
    return True


# ---------------------------------------------------------------------------
# blocks


class _UF:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            return True
        return False


def _partition_once(n, params, spec, labels, prune=None):
    field = spec.field()
    be = backend(field)
    reps = {l: representation(l, params, field, be) for l in labels}
    uf = _UF(labels)
    edges = []
    for a in labels:
        for b in labels:
            if a == b:
                continue
            if prune is not None and not prune(a, b):
                continue
            h = hom_between(reps[a], reps[b], be)
            if h.dimension:
                edges.append((a, b, h.dimension))
                uf.union(a, b)
    groups = {}
    for l in labels:
        groups.setdefault(uf.find(l), []).append(l)
    return groups, edges


def _canon(groups):
    return sorted((tuple(sorted(g, key=_label_key)) for g in groups.values()), key=lambda g: _label_key(g[0]))


def _label_key(l):
    if isinstance(l, BLabel):
        return (1, 0, 0, 0)
    return (0, l.m, -l.e1, -l.e2)


def linkage_blocks(n, params, repeats=2, guard=6, prune=None):
    """Blocks as connected components of the Hom quiver between cell modules.

    ``prune(a, b)`` may skip pairs known to have no maps (for instance
    different central eigenvalues); by default every ordered pair is solved.
    """
    from .blocks import BlockPartition
    if n > guard:
        raise ParameterError(f"n={n} exceeds the oracle guard {guard}")
    labels = _labels(n, params)
    results = []
    edges = None
    for spec in specializations(params, repeats):
        groups, e = _partition_once(n, params, spec, labels, prune)
        results.append(_canon(groups))
        edges = edges or e
    if any(r != results[0] for r in results[1:]):
        raise OracleError("partitions differ between specialisations")
    prov = [((a, b), f"hom dim {d}") for a, b, d in edges]
    return BlockPartition(n, params, [list(c) for c in results[0]], prov)


def gram_rank_semisimple(n, params, field=None, guard=8):
    """True iff every cell module of b'_n has a nondegenerate form."""
    if n > guard:
        raise ParameterError(f"n={n} exceeds the Gram guard {guard}")
    if field is None:
        field = specializations(params, 1)[0].field()
    for l in dn_labels(n):
        G = gram_matrix(l, params, field=field)
        if G.rank() < len(G.entries):
            return False
    return True
