"""Cell modules of b^x_n realised on half-diagrams.

A basis vector is stored as the full diagram ``(top half | beta)`` where
``beta`` is the fixed bottom half of the cell representative.  The action of
a diagram is stacking followed by straightening; results whose bottom half or
line pattern differ from the representative lie in other cells and are
discarded.
"""

from collections import deque
from dataclasses import dataclass
from math import comb

from .diagrams import compose, d0, generator_diagram, representative, _ZERO6
from .params import BLabel, DN, Std, label_convert, line_pattern, ParameterError


_RANK = {"L": 0, "": 1, "R": 2, "LR": 3, "RL": 4}


def _std(label):
    if isinstance(label, DN):
        return label_convert(label)
    if isinstance(label, (Std, BLabel)):
        return label
    raise ParameterError(f"not a cell label: {label!r}")


def _order_key(d):
    arcs, lines = d.top_half()
    return (tuple((a, b, _RANK[w]) for a, b, w in arcs), tuple((a, _RANK[w]) for a, w in lines))


@dataclass(frozen=True)
class HalfDiagram:
    """Top half of a basis diagram: arcs and (node, top letter) of each line."""

    n: int
    arcs: tuple
    lines: tuple

    @classmethod
    def of(cls, d):
        arcs, lines = d.top_half()
        return cls(d.n, arcs, lines)

    def serialize(self):
        parts = [f"{a + 1}-{b + 1}" + (f":{w}" if w else "") for a, b, w in self.arcs]
        parts += [f"{a + 1}|" + w for a, w in self.lines]
        return " ".join(parts)


class CellModule:
    """The cell module of ``label`` with its half-diagram basis."""

    def __init__(self, label, guard=12):
        self.label = label
        std = _std(label)
        n = std.n
        if n > guard:
            raise ParameterError(f"n={n} exceeds the cell-module guard {guard}")
        self.n = n
        self.std = std
        is_b = isinstance(std, BLabel) or std.l == 0
        self.is_b = is_b
        self.rep = d0(n) if is_b else representative(n, std.l)
        self.beta = self.rep.bottom_half()
        self.pattern = None if is_b else line_pattern(std)
        gens = [generator_diagram(n, i) for i in range(n + 1)]
        seen = {self.rep}
        queue = deque([self.rep])
        while queue:
            d = queue.popleft()
            for g in gens:
                _, r = compose(g, d)
                if r not in seen and self.accepts(r):
                    seen.add(r)
                    queue.append(r)
        self.basis = sorted(seen, key=_order_key)
        self.index = {d: i for i, d in enumerate(self.basis)}

    def accepts(self, d):
        if d.bottom_half() != self.beta:
            return False
        words = d.line_words()
        if self.pattern is not None:
            return words == self.pattern
        if self.n % 2 == 0:
            return not words
        return len(words) == 1 and words[0] in ("L", "RL")

    @property
    def dim(self):
        return len(self.basis)

    def half_diagrams(self):
        return [HalfDiagram.of(d) for d in self.basis]

    # -- action

    def act_diagram(self, g, j):
        """Image of basis vector ``j`` under the diagram ``g``: (exponents, index) or None."""
        e, r = compose(g, self.basis[j])
        i = self.index.get(r)
        if i is None:
            return None
        return e, i

    def matrix(self, a):
        """Matrix of the algebra element ``a`` (columns are images of basis vectors)."""
        alg = a.alg
        f = alg.field
        N = self.dim
        M = [[f.zero] * N for _ in range(N)]
        for g, c in a.terms.items():
            for j in range(N):
                hit = self.act_diagram(g, j)
                if hit is None:
                    continue
                e, i = hit
                v = c if e == _ZERO6 else c * alg.mono(e)
                M[i][j] = M[i][j] + v
        return M

    def generator_matrices(self, alg):
        return [self.matrix(alg.gen(i)) for i in range(self.n + 1)]

    def act(self, a, v):
        """Apply the algebra element ``a`` to the coordinate vector ``v``."""
        alg = a.alg
        f = alg.field
        out = [f.zero] * self.dim
        for j, x in enumerate(v):
            if f.is_zero(x):
                continue
            for g, c in a.terms.items():
                hit = self.act_diagram(g, j)
                if hit is None:
                    continue
                e, i = hit
                out[i] = out[i] + x * c * alg.mono(e)
        return out

    def __repr__(self):
        return f"CellModule({self.label}, dim={self.dim})"


_cache = {}


def build(label):
    m = _cache.get(label)
    if m is None:
        m = CellModule(label)
        _cache[label] = m
    return m


def paths_dim(label):
    """Dimension from the final-height count of lattice paths."""
    std = _std(label)
    n = std.n
    if isinstance(std, BLabel) or std.l == 0:
        return 2 ** n
    dn = label_convert(std)
    return sum(comb(n, (n - h) // 2) for h in range(dn.m + 1, n + 1) if (n - h) % 2 == 0)


dim = paths_dim


@dataclass(frozen=True)
class RestrictionContent:
    side: str
    layers: tuple


def restriction_content(label, side):
    """Standard blob-module layers W_t(n) of the restriction (top layer first)."""
    if not isinstance(label, DN):
        label = label_convert(label)
        if not isinstance(label, DN):
            raise ParameterError("restriction content is defined for DN labels")
    sign = label.e1 if side == "left" else label.e2
    if side not in ("left", "right"):
        raise ParameterError("side must be left or right")
    n, m = label.n, label.m
    return RestrictionContent(side, tuple(sign * t for t in range(n, m, -2)))


def blob_standard_dim(t, n):
    t = abs(t)
    return comb(n, (n - t) // 2)
