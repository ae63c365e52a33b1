"""Block classification for b'_n and b^x_n.

Labels are DN triples ``(m, e1, e2)`` at a fixed ``n``.  Throughout,
``ell = 0`` means q is not a root of unity, which turns every congruence
mod ``2*ell`` into an equality.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .params import BLabel, DN, ParameterError, dn_labels, weight_coords


class UnsupportedRegime(ParameterError):
    """The parameter point violates the standing non-degeneracy assumption."""


# ---------------------------------------------------------------------------
# arithmetic helpers


def _is_int(x):
    return Fraction(x).denominator == 1


def congruent(a, b, ell):
    """``a == b`` when ``ell == 0``, else ``a = b (mod 2*ell)``."""
    d = Fraction(a) - Fraction(b)
    if ell == 0:
        return d == 0
    return _is_int(d / (2 * ell))


def pm_congruent(a, b, ell):
    """``a = +-b`` modulo ``2*ell``; the absolute-value comparison at ``ell = 0``."""
    return congruent(a, b, ell) or congruent(a, -b, ell)


def c_value(label, w1, w2):
    """``m - e1*w1 - e2*w2``; the central eigenvalue depends only on its sign class."""
    return label.m - label.e1 * w1 - label.e2 * w2


def _ell(params):
    spec = params.spec
    if spec.mode == "root":
        return spec.ell
    return 0


def check_supported(params):
    bad = [k for k, v in params.guards.items() if v]
    if bad:
        raise UnsupportedRegime(f"{', '.join(bad)} vanish at this point")


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class MasterSolution:
    eq: str
    source: tuple
    target: tuple
    ell: int


@dataclass
class BlockPartition:
    n: int
    params: object
    classes: list
    provenance: list = dc_field(default_factory=list)
    regime: str = None

    def class_of(self, label):
        for c in self.classes:
            if label in c:
                return c
        raise KeyError(label)

    def canonical(self):
        """Order-free form, suitable for equality tests."""
        return frozenset(frozenset(c) for c in self.classes)

    def nontrivial(self):
        return [c for c in self.classes if len(c) > 1]

    def to_json(self):
        p = self.params
        return {
            "n": self.n,
            "params": {
                "w1": str(p.w1), "w2": str(p.w2),
                "theta": None if p.theta is None else str(p.theta),
                "q": p.spec.mode, "ell": p.spec.ell,
                "x0": None if p.spec.x0 is None else str(p.spec.x0),
            },
            "regime": self.regime,
            "classes": [[str(l) for l in c] for c in self.classes],
            "provenance": [{"pair": [str(a), str(b)], "rule": r} for (a, b), r in self.provenance],
        }


@dataclass
class DecompGraph:
    vertices: list
    arrows: list
    dotted: list = dc_field(default_factory=list)
    shape: str = None


@dataclass(frozen=True)
class FunctorMap:
    which: str
    source: object
    target: object


# ---------------------------------------------------------------------------
# master equations


_FIRST = {(False, False): "w1w2neg", (False, True): "w1neg", (True, False): "w2neg", (True, True): "trivial"}
_SECOND = {(True, True): "w1w2pos", (True, False): "w1pos", (False, True): "w2pos", (False, False): "impossible"}


def master_solutions(m, e1, e2, t, h1, h2, w1, w2, ell=0):
    """Equation ids satisfied by the pair ``(m, e1, e2)``, ``(t, h1, h2)``.

    Each id names the form the equal-eigenvalue condition takes for the
    given sign pattern; ``*neg`` and ``trivial`` come from
    ``q^c = q^c'``, the ``*pos`` and ``impossible`` ones from ``q^c = q^-c'``.
    """
    w1, w2 = Fraction(w1), Fraction(w2)
    same1, same2 = e1 == h1, e2 == h2
    out = []
    # q^{-m+e.w} = q^{-t+h.w}
    if congruent(-(m - t) + (e1 - h1) * w1 + (e2 - h2) * w2, 0, ell):
        out.append(MasterSolution(_FIRST[same1, same2], (m, e1, e2), (t, h1, h2), ell))
    if congruent(-(m + t) + (e1 + h1) * w1 + (e2 + h2) * w2, 0, ell):
        out.append(MasterSolution(_SECOND[same1, same2], (m, e1, e2), (t, h1, h2), ell))
    return out


# ---------------------------------------------------------------------------
# homomorphism predicates


def _r_ok(value, ell):
    """``value`` is ``x + r*ell`` for integer ``r`` when ``x`` is the base; ell=0 forces r=0."""
    return value == 0 if ell == 0 else _is_int(value / ell)


def hom_exists(source, target, params):
    """Whether one of the standard-module homomorphism theorems gives ``source -> target``.

    Returns ``(True, rule)`` or ``(False, None)``.  Only predicates; no map is built.
    """
    if source.n != target.n:
        return False, None
    w1, w2, ell = params.w1, params.w2, _ell(params)
    m, e1, e2 = source.m, source.e1, source.e2
    t, h1, h2 = target.m, target.e1, target.e2
    if ell > 0 and not _is_int(w1) and not _is_int(w2):
        if (h1, h2) == (e1, e2) and t == m - 2 * ell and t >= 0:
            if t > 0 or (e1, e2) == (1, 1):
                return True, "qhom"
    if _is_int(w1) and (h1, h2) == (-e1, e2) and m > t > 0:
        # t = m - 2(e1 w1 + r ell)
        if _r_ok(Fraction(m - t, 2) - e1 * w1, ell):
            return True, "w1hom"
    if _is_int(w2) and (h1, h2) == (e1, -e2) and m > t > 0:
        if _r_ok(Fraction(m - t, 2) - e2 * w2, ell):
            return True, "w2hom"
    s = e1 * w1 + e2 * w2
    if _is_int(s) and (h1, h2) == (e1, e2) and m > t >= 0:
        if t > 0 or (e1, e2) == (1, 1):
            if _r_ok(Fraction(m + t, 2) - s, ell):
                return True, "w1w2hom"
    return False, None


def nohom_pair(m, w2):
    """The two labels shown to have no maps in either direction (needs ``m < w1 + w2``)."""
    return (m, 1, 1), (2 * w2 - m, -1, 1)


# ---------------------------------------------------------------------------
# globalisation and localisation


def functor_map(which, label):
    """Image of a DN label under G, G', F or F' (``None`` when annihilated)."""
    n, m, e1, e2 = label.n, label.m, label.e1, label.e2
    if which == "G":
        return DN(n + 1, m + e1, -e1, e2)
    if which == "G'":
        return DN(n + 1, m + e2, e1, -e2)
    if which == "F":
        if m == n - 1 and e1 == 1:
            return None
        return DN(n - 1, m + e1, -e1, e2)
    if which == "F'":
        if m == n - 1 and e2 == 1:
            return None
        return DN(n - 1, m + e2, e1, -e2)
    raise ParameterError(f"unknown functor {which!r}")


def functor_params(which, params):
    if which in ("G", "F"):
        return params.with_(w1=-params.w1 - 1)
    if which in ("G'", "F'"):
        return params.with_(w2=-params.w2 - 1)
    raise ParameterError(f"unknown functor {which!r}")


def figure_block(k, a, b):
    """Large-N decomposition graph of the eigenvalue class ``|c| = k``.

    Needs integers ``0 < a <= b`` standing for ``w1, w2``.  Vertices are
    ``(m, e1, e2)`` triples.
    """
    if not 0 < a <= b:
        raise ParameterError("figure blocks need 0 < a <= b")
    if k == 0:
        A = (a + b, 1, 1)
        if b > a:
            return DecompGraph([A, (b - a, -1, 1)], [(A, (b - a, -1, 1))], [], "m=w1+w2")
        return DecompGraph([A], [], [], "m=w1+w2")
    if k > a + b:
        A = (a + b + k, 1, 1)
        B = (k - a + b, -1, 1)
        C = (k + a - b, 1, -1)
        D = (k - a - b, -1, -1)
        return DecompGraph([A, B, C, D], [(A, B), (A, C), (B, D), (C, D)], [(A, D), (B, C)], "stable")
    mu = a + b - k
    A = (2 * a + 2 * b - mu, 1, 1)
    B = (mu, 1, 1)
    C = (2 * b - mu, -1, 1)
    if mu < 2 * a:
        D = (2 * a - mu, 1, -1)
        return DecompGraph([A, B, C, D], [(A, B), (A, C), (A, D)], [], "m<2w1")
    if mu == 2 * a:
        return DecompGraph([A, B, C], [(A, B), (A, C)], [], "m=2w1")
    E = (mu - 2 * a, -1, 1)
    return DecompGraph([A, B, C, E], [(A, B), (A, C), (B, E), (C, E)], [(A, E)], "m>2w1")


def _swap(v):
    return (v[0], v[2], v[1])


def figure_arrows(a, b, kmax):
    """All figure arrows for classes ``|c| <= kmax`` with positive integer weights ``a, b``."""
    swap = a > b
    lo, hi = (b, a) if swap else (a, b)
    arrows = []
    for k in range(kmax + 1):
        g = figure_block(k, lo, hi)
        for s, t in g.arrows:
            arrows.append((_swap(s), _swap(t)) if swap else (s, t))
    return arrows


def threshold(w1, w2):
    """Smallest n at which the both-integral blocks are plain eigenvalue classes."""
    s = (_sgn(w1) + _sgn(w2)) / Fraction(2)
    return 2 * abs(w1) + 2 * abs(w2) + s


def _sgn(x):
    return (x > 0) - (x < 0)


def localise(n, params):
    """Both-integral, q generic: globalise to positive weights, take the
    figure graphs on the surviving vertices and pull the components back.

    Returns ``(classes, provenance, graph)``.
    """
    w1, w2 = int(params.w1), int(params.w2)
    labels = dn_labels(n)
    image = {}
    for L in labels:
        M = L
        if w1 < 0:
            M = functor_map("G", M)
        if w2 < 0:
            M = functor_map("G'", M)
        image[(M.m, M.e1, M.e2)] = L
    a = w1 if w1 > 0 else -w1 - 1
    b = w2 if w2 > 0 else -w2 - 1
    kmax = max(abs(v[0] - v[1] * a - v[2] * b) for v in image) + 1
    arrows = [(s, t) for s, t in figure_arrows(a, b, kmax) if s in image and t in image]
    uf = _UF(labels)
    prov = []
    for s, t in arrows:
        if uf.union(image[s], image[t]):
            prov.append(((image[s], image[t]), "localised-figure-arrow"))
    graph = DecompGraph(labels, [(image[s], image[t]) for s, t in arrows])
    return uf.classes(), prov, graph


def endpoint_hom(source, target, params):
    """The ``t = 0`` end of the w1/w2 hom families, landing on ``(0,+,+)``.

    Not covered by ``hom_exists``; the oracle finds these maps at small n.
    """
    if source.n != target.n or target.m != 0 or (target.e1, target.e2) != (1, 1):
        return False
    w1, w2, ell = params.w1, params.w2, _ell(params)
    m, e1, e2 = source.m, source.e1, source.e2
    if m <= 0:
        return False
    if _is_int(w1) and (e1, e2) == (-1, 1) and _r_ok(Fraction(m, 2) - e1 * w1, ell):
        return True
    if _is_int(w2) and (e1, e2) == (1, -1) and _r_ok(Fraction(m, 2) - e2 * w2, ell):
        return True
    return False


def decomposition_graph(n, params, endpoints=False):
    """Arrows given by the hom theorems between labels of b'_n."""
    labels = dn_labels(n)
    arrows = []
    for s in labels:
        for t in labels:
            if s == t:
                continue
            if hom_exists(s, t, params)[0] or (endpoints and endpoint_hom(s, t, params)):
                arrows.append((s, t))
    return DecompGraph(labels, arrows)


def root_threshold(params):
    """Below this n the integral root-of-unity blocks come from the hom graph."""
    return 4 * _ell(params)


# ---------------------------------------------------------------------------
# regime dispatch


class _UF:
    def __init__(self, items):
        self.items = list(items)
        self.parent = {x: x for x in self.items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True

    def classes(self):
        out = {}
        for x in self.items:
            out.setdefault(self.find(x), []).append(x)
        return [sorted(c, key=label_key) for c in sorted(out.values(), key=lambda c: label_key(min(c, key=label_key)))]


def label_key(l):
    if isinstance(l, BLabel):
        return (1, 0, 0, 0)
    return (0, l.m, -l.e1, -l.e2)


def regime(params, n=None):
    w1, w2, ell = params.w1, params.w2, _ell(params)
    i1, i2 = _is_int(w1), _is_int(w2)
    ip, im = _is_int(w1 + w2), _is_int(w1 - w2)
    if i1 and i2:
        if ell:
            if n is not None and n < root_threshold(params):
                return "both-integral-root-localised"
            return "both-integral-root"
        if n is not None and n < threshold(w1, w2):
            return "both-integral-localised"
        return "both-integral"
    if i1:
        return "w1-integral"
    if i2:
        return "w2-integral"
    if ip and im:
        return "half-integral"
    if ip:
        return "w1+w2-integral"
    if im:
        return "w1-w2-integral"
    return "root-of-unity" if ell else "semisimple"


def same_block_rule(reg, x, y, params):
    """Pairwise linkage predicate of the closed-form regimes."""
    w1, w2, ell = params.w1, params.w2, _ell(params)
    cx, cy = c_value(x, w1, w2), c_value(y, w1, w2)
    same = (x.e1, x.e2) == (y.e1, y.e2)
    if reg == "semisimple":
        return x == y
    if reg == "root-of-unity":
        return same and congruent(x.m, y.m, ell)
    if reg == "w1-integral":
        return x.e2 == y.e2 and pm_congruent(cx, cy, ell)
    if reg == "w2-integral":
        return x.e1 == y.e1 and pm_congruent(cx, cy, ell)
    plus = x.e1 == x.e2 and same
    minus = x.e1 == -x.e2 and same
    if reg == "w1+w2-integral":
        return plus and pm_congruent(cx, cy, ell)
    if reg == "w1-w2-integral":
        return minus and pm_congruent(cx, cy, ell)
    if reg == "half-integral":
        return (plus or minus) and pm_congruent(cx, cy, ell)
    if reg in ("both-integral", "both-integral-root"):
        return pm_congruent(cx, cy, ell)
    raise ParameterError(f"no pairwise rule for regime {reg!r}")


def classify(n, params):
    """Blocks of b'_n at ``params``."""
    check_supported(params)
    reg = regime(params, n)
    labels = dn_labels(n)
    if reg == "both-integral-localised":
        classes, prov, _ = localise(n, params)
        return BlockPartition(n, params, classes, prov, reg)
    if reg == "both-integral-root-localised":
        g = decomposition_graph(n, params, endpoints=True)
        uf = _UF(labels)
        prov = [((s, t), "hom-arrow") for s, t in g.arrows if uf.union(s, t)]
        return BlockPartition(n, params, uf.classes(), prov, reg)
    uf = _UF(labels)
    prov = []
    for i, x in enumerate(labels):
        for y in labels[i + 1:]:
            if same_block_rule(reg, x, y, params) and uf.union(x, y):
                prov.append(((x, y), reg))
    return BlockPartition(n, params, uf.classes(), prov, reg)


# ---------------------------------------------------------------------------
# the extra cell module W^n(b)


@dataclass(frozen=True)
class CriticalWitness:
    m: int
    e1: int
    e2: int
    sign: int
    residue: Fraction


def _half_box_zero(x, ell):
    """``[x/2] = 0``."""
    return congruent(x, 0, ell)


def critical_theta(theta, params, n=None):
    """Smallest-m witness of ``theta = +-(-m + e1 w1 + e2 w2)`` (mod 2 ell).

    With ``n`` only labels of b'_n are searched; otherwise m runs up to the
    first period (or a bound large enough to decide at ``ell = 0``).
    """
    theta = Fraction(theta)
    w1, w2, ell = params.w1, params.w2, _ell(params)
    if n is not None:
        cands = [(L.m, L.e1, L.e2) for L in dn_labels(n)]
    else:
        bound = 2 * ell if ell else int(abs(theta) + abs(w1) + abs(w2)) + 2
        cands = [(m, e1, e2) for m in range(bound + 1) for e1 in (1, -1) for e2 in (1, -1)
                 if m > 0 or (e1, e2) == (1, 1)]
    for m, e1, e2 in sorted(cands):
        base = -m + e1 * w1 + e2 * w2
        for sign in (1, -1):
            if _half_box_zero(theta - sign * base, ell):
                r = (theta - sign * base) % (2 * ell) if ell else Fraction(0)
                return CriticalWitness(m, e1, e2, sign, r)
    return None


def wb_submodule_labels(n, params):
    """Labels whose Gram factor in the W^n(b) determinant vanishes."""
    theta, w1, w2, ell = params.theta, params.w1, params.w2, _ell(params)
    out = []
    for L in dn_labels(n):
        c = c_value(L, w1, w2)
        if _half_box_zero(c + theta, ell) or _half_box_zero(c - theta, ell):
            out.append(L)
    return out


def classify_bnx(n, params):
    """Blocks of b^x_n: those of b'_n plus W^n(b), merged with every block
    containing a label at which its Gram determinant vanishes."""
    if params.theta is None:
        raise ParameterError("classify_bnx needs theta")
    base = classify(n, params.with_(theta=None))
    wb = BLabel(n)
    hits = wb_submodule_labels(n, params)
    merged = [wb]
    rest = []
    prov = list(base.provenance)
    for c in base.classes:
        linked = [L for L in c if L in hits]
        if linked:
            merged.extend(c)
            prov.append(((wb, linked[0]), "wb-critical"))
        else:
            rest.append(c)
    classes = sorted(rest + [sorted(merged, key=label_key)], key=lambda c: label_key(c[0]))
    return BlockPartition(n, params, classes, prov, base.regime)


# ---------------------------------------------------------------------------
# refinement checks


def refines_alpha(partition, params, field=None):
    """Every class lies inside one central-eigenvalue class."""
    from .central import same_eigenvalue
    field = field or params.field()
    for c in partition.classes:
        dn = [L for L in c if isinstance(L, DN)]
        for L in dn[1:]:
            if not same_eigenvalue(dn[0], L, params, field):
                return False
    return True


# ---------------------------------------------------------------------------
# weight-plane picture


_ARMS = {(1, 1): "+,+", (-1, 1): "-,+", (1, -1): "+,-", (-1, -1): "-,-"}


def plot_weights(n, params, partition=None, scale=24, margin=40):
    """SVG of the labels at their weight coordinates with same-block dots joined."""
    w1, w2 = params.w1, params.w2
    labels = dn_labels(n)
    pts = {L: tuple(float(v) for v in weight_coords(L, w1, w2)) for L in labels}
    R = max(max(abs(x), abs(y)) for x, y in pts.values()) + 1
    size = 2 * (R * scale + margin)
    c0 = size / 2

    def X(x):
        return c0 + x * scale

    def Y(y):
        return c0 - y * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" height="{size:.0f}" '
           f'viewBox="0 0 {size:.0f} {size:.0f}">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<line x1="{X(-R):.2f}" y1="{Y(0):.2f}" x2="{X(R):.2f}" y2="{Y(0):.2f}" stroke="#999"/>',
           f'<line x1="{X(0):.2f}" y1="{Y(-R):.2f}" x2="{X(0):.2f}" y2="{Y(R):.2f}" stroke="#999"/>']
    for (e1, e2), name in _ARMS.items():
        arm = [pts[L] for L in labels if (L.e1, L.e2) == (e1, e2)]
        if not arm:
            continue
        near = min(arm, key=lambda p: abs(p[0]) + abs(p[1]))
        far = max(arm, key=lambda p: abs(p[0]) + abs(p[1]))
        out.append(f'<line x1="{X(near[0]):.2f}" y1="{Y(near[1]):.2f}" x2="{X(far[0]):.2f}" '
                   f'y2="{Y(far[1]):.2f}" stroke="black"/>')
        out.append(f'<text x="{X(far[0]) + 6 * e1:.2f}" y="{Y(far[1]) - 6 * e2:.2f}" font-size="12" '
                   f'text-anchor="{"start" if e1 > 0 else "end"}">{name}</text>')
    if partition is not None:
        for cls in partition.classes:
            dn = [L for L in cls if isinstance(L, DN)]
            for a, b in zip(dn, dn[1:]):
                (x1, y1), (x2, y2) = pts[a], pts[b]
                out.append(f'<line class="link" x1="{X(x1):.2f}" y1="{Y(y1):.2f}" x2="{X(x2):.2f}" '
                           f'y2="{Y(y2):.2f}" stroke="#c00" stroke-dasharray="4 3"/>')
    for L in labels:
        x, y = pts[L]
        out.append(f'<circle cx="{X(x):.2f}" cy="{Y(y):.2f}" r="3"><title>{L}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
