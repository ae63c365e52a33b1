"""Lattice paths and the orthogonal path basis of W^n(b)."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cellmod import build
from .diagrams import BlobAlgebra
from .exact import solve, matmul
from .params import BLabel, scheme_convert, ParameterError


class GenericityError(ZeroDivisionError):
    pass


def enumerate_paths(n):
    """All 2^n paths of length n, as height tuples starting at 0."""
    out = []
    for steps in product((-1, 1), repeat=n):
        h = [0]
        for s in steps:
            h.append(h[-1] + s)
        out.append(tuple(h))
    return out


def fundamental(n):
    return tuple(0 if i % 2 == 0 else -1 for i in range(n + 1))


def is_path(p):
    return p[0] == 0 and all(abs(p[i + 1] - p[i]) == 1 for i in range(len(p) - 1))


@dataclass(frozen=True)
class TileMove:
    position: int
    kind: str          # "full" or "half"
    direction: str     # "above" or "below"
    h: int             # neighbouring height h_{i-1}


def available_move(c, i):
    """The tile that can be added to ``c`` at position ``i``, or None."""
    n = len(c) - 1
    if i < n:
        if c[i - 1] != c[i + 1]:
            return None
        h = c[i - 1]
        if h >= 0 and c[i] == h - 1:
            return TileMove(i, "full", "above", h)
        if h < 0 and c[i] == h + 1:
            return TileMove(i, "full", "below", h)
        return None
    h = c[n - 1]
    if h >= 0 and c[n] == h - 1:
        return TileMove(n, "half", "above", h)
    if h < 0 and c[n] == h + 1:
        return TileMove(n, "half", "below", h)
    return None


def apply_move(c, mv):
    c = list(c)
    c[mv.position] += 2 if mv.direction == "above" else -2
    return tuple(c)


def _toward(c, p, mv):
    i = mv.position
    new = c[i] + (2 if mv.direction == "above" else -2)
    return min(c[i], p[i]) <= new <= max(c[i], p[i])


def tile_sequence(p, start=None):
    """Ordered moves from ``start`` (default the fundamental path) to ``p``, lowest position first."""
    if not is_path(p):
        raise ParameterError(f"not a path: {p}")
    n = len(p) - 1
    c = fundamental(n) if start is None else tuple(start)
    seq = []
    while c != tuple(p):
        for i in range(1, n + 1):
            if c[i] == p[i]:
                continue
            mv = available_move(c, i)
            if mv is not None and _toward(c, p, mv):
                seq.append(mv)
                c = apply_move(c, mv)
                break
        else:
            raise ParameterError(f"no tile route to {p}" + ("" if start is None else f" from {start}"))
    return seq


def tile_count(p):
    return sum(abs(a - b) // 2 for a, b in zip(p, fundamental(len(p) - 1)))


def path_order(n):
    """Paths sorted by number of tiles, then lexicographically."""
    return sorted(enumerate_paths(n), key=lambda p: (tile_count(p), p))


# ---------------------------------------------------------------------------
# r(u), k(u) and the eigenvalue functions


class PathScalars:
    """r, k, f, g evaluated in a field context, with genericity checks."""

    def __init__(self, params, field):
        self.params = params
        self.field = field

    def _box(self, w, what):
        return self.field.box(w)

    def _nonzero(self, w, what):
        b = self.field.box(w)
        if self.field.is_zero(b):
            raise GenericityError(f"[{w}] vanishes in the denominator of {what}")
        return b

    def r(self, u):
        u = Fraction(u)
        return self.field.box(u + 1) / self._nonzero(u, f"r({u})")

    def k(self, u):
        p = self.params
        if p.theta is None:
            raise ParameterError("k(u) needs theta")
        u = Fraction(u)
        num = self.field.box((u - p.w2 + p.theta) / 2) * self.field.box((u - p.w2 - p.theta) / 2)
        den = self._nonzero(u, f"k({u})") * self._nonzero(p.w2 + 1, f"k({u})")
        return -num / den

    def f(self, h):
        w1 = self.params.w1
        return self.r(w1 - h) * self.r(-w1 + h)

    def g(self, h):
        w1 = self.params.w1
        return self.k(w1 - h) * self.k(-w1 + h)

    def x_scalar(self, mv):
        w1 = self.params.w1
        u = (w1 - mv.h) if mv.direction == "above" else (-w1 + mv.h)
        return self.r(u) if mv.kind == "full" else self.k(u)


def path_eigenvalue(p, params, field):
    """Gram eigenvalue of v_p: product of f / g over the tiles of ``p``."""
    sc = PathScalars(params, field)
    lam = field.one
    for mv in tile_sequence(p):
        lam = lam * (sc.f(mv.h) if mv.kind == "full" else sc.g(mv.h))
    return lam


# ---------------------------------------------------------------------------
# generator action on the path basis (closed formulas)


def generator_action(i, p, params, field):
    """``e_i v_p`` as a dict path -> coefficient."""
    n = len(p) - 1
    sc = PathScalars(params, field)
    w1 = params.w1
    if i == 0:
        if p[1] == -1:
            return {p: field.box(w1) / sc._nonzero(w1 + 1, "e_0 eigenvalue")}
        return {}
    if i < n:
        if abs(p[i - 1] - p[i + 1]) == 2:
            return {}
        h = p[i - 1]
        rs = sc.r
    else:
        h = p[n - 1]
        rs = sc.k
    a, b = rs(w1 - h), rs(-w1 + h)
    lo = list(p)
    hi = list(p)
    if h >= 0:
        lo[i], hi[i] = h - 1, h + 1
        first, second = a, b      # e v_p = v_p' + a v_p ; e v_p' = b v_p' + ab v_p
    else:
        lo[i], hi[i] = h + 1, h - 1
        first, second = b, a
    lo, hi = tuple(lo), tuple(hi)
    if p == lo:
        return _clean({hi: field.one, lo: first}, field)
    return _clean({hi: second, lo: a * b}, field)


def _clean(d, field):
    return {k: v for k, v in d.items() if not field.is_zero(v)}


# ---------------------------------------------------------------------------
# the module W^n(b) in diagram and path coordinates


class PathModule:
    """W^n(b) with its diagram basis (w_p) and path basis (v_p)."""

    def __init__(self, n, params, field=None):
        if params.theta is None:
            raise ParameterError("W^n(b) needs theta")
        self.n = n
        self.params = params
        self.field = field or params.field()
        self.alg = BlobAlgebra(n, scheme_convert(params, "DN", n).embed(self.field), self.field)
        self.cell = build(BLabel(n))
        self.gmats = self.cell.generator_matrices(self.alg)
        self.paths = path_order(n)
        self.pindex = {p: j for j, p in enumerate(self.paths)}
        self.sc = PathScalars(params, self.field)
        self._v = {}
        self._w = {}

    def _apply(self, i, vec):
        M = self.gmats[i]
        f = self.field
        out = [f.zero] * len(vec)
        for j, x in enumerate(vec):
            if f.is_zero(x):
                continue
            for r in range(len(vec)):
                if not f.is_zero(M[r][j]):
                    out[r] = out[r] + M[r][j] * x
        return out

    def _base(self):
        f = self.field
        v = [f.zero] * self.cell.dim
        v[self.cell.index[self.cell.rep]] = f.one
        return v

    def w_vector(self, p):
        """Diagram-basis element w_p in cell-module coordinates."""
        if p not in self._w:
            vec = self._base()
            for mv in tile_sequence(p):
                vec = self._apply(mv.position, vec)
            self._w[p] = vec
        return self._w[p]

    def v_vector(self, p, route=None):
        """Path-basis element v_p; ``route`` overrides the tile order."""
        if route is None and p in self._v:
            return self._v[p]
        vec = self._base()
        for mv in (route if route is not None else tile_sequence(p)):
            s = self.sc.x_scalar(mv)
            img = self._apply(mv.position, vec)
            vec = [a - s * b for a, b in zip(img, vec)]
        if route is None:
            self._v[p] = vec
        return vec

    def matrix_W(self):
        """Columns w_p in cell-module coordinates."""
        cols = [self.w_vector(p) for p in self.paths]
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.cell.dim)]

    def matrix_V(self):
        cols = [self.v_vector(p) for p in self.paths]
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.cell.dim)]

    def change_of_basis(self):
        """Matrix C with v_p = sum_q C[q][p] w_q (columns indexed by path order)."""
        return solve(self.matrix_W(), self.matrix_V(), self.field)

    def path_matrix(self, i):
        """Matrix of e_i in the path basis, computed from the diagram action."""
        V = self.matrix_V()
        return solve(V, matmul(self.gmats[i], V, self.field), self.field)

    def formula_matrix(self, i):
        """Matrix of e_i in the path basis from the closed formulas."""
        f = self.field
        N = len(self.paths)
        M = [[f.zero] * N for _ in range(N)]
        for j, p in enumerate(self.paths):
            for q, c in generator_action(i, p, self.params, f).items():
                M[self.pindex[q]][j] = c
        return M

    def submodule_basis(self, m, e1):
        if e1 == 1:
            return [p for p in self.paths if p[-1] >= m + 1]
        return [p for p in self.paths if p[-1] <= -m - 1]


def submodule_basis(n, m, e1, e2, params):
    """Paths spanning V^{(n,m)}_{e1,e2}; requires the critical theta."""
    from .exact import box_vanishes

    t = params.theta
    if t is None:
        raise ParameterError("submodule needs theta")
    c = -m + e1 * params.w1 + e2 * params.w2
    if not (box_vanishes((c + t) / 2, params.spec) or box_vanishes((c - t) / 2, params.spec)):
        raise ParameterError(f"theta={t} is not critical for ({n},{m},{e1},{e2})")
    paths = path_order(n)
    if e1 == 1:
        return [p for p in paths if p[-1] >= m + 1]
    return [p for p in paths if p[-1] <= -m - 1]


def closest_path(n, h):
    """Minimal-tile path of final height ``h``."""
    cands = [p for p in enumerate_paths(n) if p[-1] == h]
    return min(cands, key=lambda p: (tile_count(p), p))
