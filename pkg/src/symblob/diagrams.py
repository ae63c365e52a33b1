"""Decorated planar diagrams, straightening and the algebra b^x_n.

A diagram on ``n`` strands has boundary nodes ``0..n-1`` on top and
``n..2n-1`` on the bottom (both left to right).  It is stored as a sorted
tuple of ``(a, b, word)`` with ``a < b``; ``word`` lists the blobs met when
walking from ``a`` to ``b`` ("L" left blob, "R" right blob).  So propagating
lines are read top to bottom and arcs left to right.

Straightening scalars are monomials in the six parameters, kept as exponent
vectors indexed by ``D, DL, DR, KL, KR, KLR``.
"""

from collections import deque
from functools import lru_cache
from itertools import permutations

D, DL, DR, KL, KR, KLR = range(6)
_ZERO6 = (0, 0, 0, 0, 0, 0)


class DiagramError(ValueError):
    pass


class Diagram:
    __slots__ = ("n", "pairs", "_hash", "_adj")

    def __init__(self, n, pairs):
        self.n = n
        self.pairs = tuple(sorted(pairs))
        self._hash = hash((n, self.pairs))
        self._adj = None

    @property
    def adj(self):
        """``adj[node] = (partner, word read from node)``."""
        if self._adj is None:
            adj = [None] * (2 * self.n)
            for a, b, w in self.pairs:
                adj[a] = (b, w)
                adj[b] = (a, w[::-1])
            self._adj = adj
        return self._adj

    def __eq__(self, other):
        return isinstance(other, Diagram) and self.n == other.n and self.pairs == other.pairs

    def __lt__(self, other):
        return (self.n, self.pairs) < (other.n, other.pairs)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Diagram({self.n}, {serialize(self)!r})"

    # -- structure

    def lines(self):
        n = self.n
        return [(a, b, w) for a, b, w in self.pairs if a < n <= b]

    def top_arcs(self):
        return [(a, b, w) for a, b, w in self.pairs if b < self.n]

    def bottom_arcs(self):
        return [(a, b, w) for a, b, w in self.pairs if a >= self.n]

    def line_words(self):
        return tuple(w for _, _, w in self.lines())

    def top_half(self):
        """Top arcs plus (top node, top letter) of each line."""
        n = self.n
        arcs = tuple((a, b, w) for a, b, w in self.pairs if b < n)
        ls = tuple((a, w[:1]) for a, b, w in self.pairs if a < n <= b)
        return arcs, ls

    def bottom_half(self):
        n = self.n
        arcs = tuple((a - n, b - n, w) for a, b, w in self.pairs if a >= n)
        ls = tuple((b - n, w[-1:]) for a, b, w in self.pairs if a < n <= b)
        return arcs, ls

    def flip(self):
        """The anti-involution sigma (reflection in a horizontal line)."""
        n = self.n
        out = []
        for a, b, w in self.pairs:
            if b < n:
                out.append((a + n, b + n, w))
            elif a >= n:
                out.append((a - n, b - n, w))
            else:
                out.append((b - n, a + n, w[::-1]))
        return Diagram(n, out)


def identity(n, words=None):
    words = words or {}
    return Diagram(n, [(i, n + i, words.get(i, "")) for i in range(n)])


def generator_diagram(n, i):
    """e_0 = e (left blob on strand 1), e_i (cup-cap at i, i+1), e_n = f."""
    if not 0 <= i <= n:
        raise DiagramError(f"generator index {i} out of range for n={n}")
    if i == 0:
        return identity(n, {0: "L"})
    if i == n:
        return identity(n, {n - 1: "R"})
    pairs = [(j, n + j, "") for j in range(n) if j not in (i - 1, i)]
    pairs += [(i - 1, i, ""), (n + i - 1, n + i, "")]
    return Diagram(n, pairs)


# ---------------------------------------------------------------------------
# serialization


def serialize(d):
    """``"1-3:L 2-4"``: 1-based node pairs with optional blob word."""
    parts = []
    for a, b, w in d.pairs:
        parts.append(f"{a + 1}-{b + 1}" + (f":{w}" if w else ""))
    return " ".join(parts)


def parse(n, text):
    pairs = []
    for tok in text.split():
        ends, _, w = tok.partition(":")
        a, b = (int(t) - 1 for t in ends.split("-"))
        if a > b:
            a, b, w = b, a, w[::-1]
        if set(w) - {"L", "R"}:
            raise DiagramError(f"bad blob word {w!r}")
        pairs.append((a, b, w))
    nodes = sorted(x for a, b, _ in pairs for x in (a, b))
    if nodes != list(range(2 * n)):
        raise DiagramError("not a perfect matching on 2n nodes")
    return Diagram(n, pairs)


# ---------------------------------------------------------------------------
# word reduction


@lru_cache(maxsize=None)
def reduce_open(word):
    """Reduce the blob word on a line or arc.  Returns (word, exponents)."""
    e = [0] * 6
    runs = []
    for c in word:
        if runs and runs[-1][0] == c:
            runs[-1][1] += 1
        else:
            runs.append([c, 1])
    for c, r in runs:
        e[DL if c == "L" else DR] += r - 1
    k = len(runs)
    if k == 0:
        return "", tuple(e)
    e[KLR] += (k - 1) // 2
    first = runs[0][0]
    if k % 2:
        return first, tuple(e)
    return first + runs[1][0], tuple(e)


@lru_cache(maxsize=None)
def reduce_loop(word):
    """Scalar of a closed loop carrying the cyclic blob word ``word``."""
    e = [0] * 6
    if not word:
        e[D] = 1
        return tuple(e)
    if len(set(word)) == 1:
        c = word[0]
        e[DL if c == "L" else DR] += len(word) - 1
        e[KL if c == "L" else KR] += 1
        return tuple(e)
    # rotate so that the word starts at a run boundary
    i = next(j for j in range(len(word)) if word[j] != word[j - 1])
    w = word[i:] + word[:i]
    runs = []
    for c in w:
        if runs and runs[-1][0] == c:
            runs[-1][1] += 1
        else:
            runs.append([c, 1])
    for c, r in runs:
        e[DL if c == "L" else DR] += r - 1
    e[KLR] += len(runs) // 2
    return tuple(e)


def _add(e, f):
    return tuple(x + y for x, y in zip(e, f))


# ---------------------------------------------------------------------------
# composition


def _trace(n, A, B):
    """Glue A (above) to B (below); returns open components and loop words."""
    done = [False] * (2 * n)
    mid = [False] * n
    opens = []
    starts = [("A", i) for i in range(n)] + [("B", n + i) for i in range(n)]
    for side, s in starts:
        ext = s
        if done[ext]:
            continue
        node, word = s, []
        while True:
            adj = A if side == "A" else B
            p, w = adj[node]
            word.append(w)
            if side == "A":
                if p < n:
                    t = p
                    break
                mid[p - n] = True
                side, node = "B", p - n
            else:
                if p >= n:
                    t = p
                    break
                mid[p] = True
                side, node = "A", n + p
        done[ext] = True
        done[t] = True
        w = "".join(word)
        opens.append((ext, t, w) if ext < t else (t, ext, w[::-1]))
    loops = []
    for i in range(n):
        if mid[i]:
            continue
        word = []
        side, node = "A", n + i
        while True:
            adj = A if side == "A" else B
            p, w = adj[node]
            word.append(w)
            if side == "A":
                mid[p - n] = True
                side, node = "B", p - n
            else:
                mid[p] = True
                if p == i:
                    break
                side, node = "A", n + p
        loops.append("".join(word))
    return opens, loops


def _topological(n, pairs):
    """Apply the topological relation if it fires; returns (pairs, fired)."""
    if any(a < n <= b for a, b, _ in pairs):
        return pairs, False
    top = [p for p in pairs if p[1] < n and p[2] == "LR"]
    bot = [p for p in pairs if p[0] >= n and p[2] == "LR"]
    if not top or not bot:
        return pairs, False
    (i, j, _), (k, l, _) = top[0], bot[0]
    rest = [p for p in pairs if p is not top[0] and p is not bot[0]]
    return rest + [(i, k, "L"), (j, l, "R")], True


_compose_cache = {}


def compose(top, bottom):
    """Stack ``top`` over ``bottom`` and straighten.  Returns (exponents, Diagram)."""
    key = (top, bottom)
    hit = _compose_cache.get(key)
    if hit is not None:
        return hit
    if top.n != bottom.n:
        raise DiagramError("mismatched n")
    n = top.n
    opens, loops = _trace(n, top.adj, bottom.adj)
    e = _ZERO6
    pairs = []
    for a, b, w in opens:
        r, f = reduce_open(w)
        e = _add(e, f)
        pairs.append((a, b, r))
    for w in loops:
        e = _add(e, reduce_loop(w))
    pairs, fired = _topological(n, pairs)
    if fired:
        e = _add(e, (0, 0, 0, 0, 0, 1))
    out = (e, Diagram(n, pairs))
    if len(_compose_cache) > 2_000_000:
        _compose_cache.clear()
    _compose_cache[key] = out
    return out


# ---------------------------------------------------------------------------
# pseudo-diagrams and order-independent straightening


class PseudoDiagram:
    """Stacked picture before reduction: open strands and closed loops."""

    def __init__(self, n, opens, loops=()):
        self.n = n
        self.opens = [tuple(o) for o in opens]
        self.loops = list(loops)

    @classmethod
    def of(cls, d):
        return cls(d.n, d.pairs, ())

    def stack(self, other):
        """``self`` above ``other``."""
        n = self.n
        A = [None] * (2 * n)
        B = [None] * (2 * n)
        for adj, comps in ((A, self.opens), (B, other.opens)):
            for a, b, w in comps:
                adj[a] = (b, w)
                adj[b] = (a, w[::-1])
        opens, loops = _trace(n, A, B)
        return PseudoDiagram(n, opens, self.loops + other.loops + loops)


def stack(*diagrams):
    pd = PseudoDiagram.of(diagrams[0])
    for d in diagrams[1:]:
        pd = pd.stack(PseudoDiagram.of(d))
    return pd


def _open_moves(w):
    moves = []
    for i in range(len(w) - 1):
        if w[i] == w[i + 1]:
            moves.append(("merge", i))
    for i in range(len(w) - 2):
        if w[i] == w[i + 2] != w[i + 1]:
            moves.append(("alt", i))
    return moves


def straighten_exps(pd, rng=None):
    """Rewrite ``pd`` to a reduced diagram one local move at a time.

    With ``rng`` the next move is chosen at random; otherwise loop removals
    go first, then line reductions, then the topological move.
    Returns (exponents, Diagram).
    """
    n = pd.n
    opens = [list(o) for o in pd.opens]
    loops = list(pd.loops)
    e = [0] * 6
    while True:
        moves = []
        for k, w in enumerate(loops):
            if len(w) <= 1 or (len(w) == 2 and w[0] != w[1]):
                moves.append(("loop", k, None))
            else:
                for i in range(len(w)):
                    if w[i] == w[(i + 1) % len(w)]:
                        moves.append(("cyc", k, i))
        for k, (_, _, w) in enumerate(opens):
            for kind, i in _open_moves(w):
                moves.append((kind, k, i))
        pairs = [tuple(o) for o in opens]
        if not any(a < n <= b for a, b, _ in pairs):
            if any(b < n and w == "LR" for a, b, w in pairs) and \
                    any(a >= n and w == "LR" for a, b, w in pairs):
                moves.append(("top", None, None))
        if not moves:
            break
        kind, k, i = rng.choice(moves) if rng is not None else moves[0]
        if kind == "loop":
            w = loops.pop(k)
            if w == "":
                e[D] += 1
            elif w == "L":
                e[KL] += 1
            elif w == "R":
                e[KR] += 1
            else:
                e[KLR] += 1
        elif kind == "cyc":
            w = loops[k]
            e[DL if w[i] == "L" else DR] += 1
            j = (i + 1) % len(w)
            loops[k] = w[:j] + w[j + 1:] if j else w[1:]
        elif kind == "merge":
            w = opens[k][2]
            e[DL if w[i] == "L" else DR] += 1
            opens[k][2] = w[:i] + w[i + 1:]
        elif kind == "alt":
            w = opens[k][2]
            e[KLR] += 1
            opens[k][2] = w[:i + 1] + w[i + 3:]
        else:
            new, _ = _topological(n, pairs)
            opens = [list(o) for o in new]
            e[KLR] += 1
    return tuple(e), Diagram(n, [tuple(o) for o in opens])


# ---------------------------------------------------------------------------
# validity (independent planar-embedding check)


def is_valid(d):
    """Check that ``d`` can be drawn with every blob touching its wall.

    Each blob is replaced by a touch point on the corresponding wall; the
    diagram is realisable iff for some order of the touch points along the
    walls the resulting chords in the disc are pairwise non-crossing.
    """
    n = d.n
    for _, _, w in d.pairs:
        if any(w[i] == w[i + 1] for i in range(len(w) - 1)):
            return False
        if len(w) > 2 and not (d.pairs[0][0] < n <= d.pairs[0][1]):
            pass
    touchesL = []
    touchesR = []
    paths = []
    for idx, (a, b, w) in enumerate(d.pairs):
        pts = []
        for j, c in enumerate(w):
            t = (c, idx, j)
            (touchesL if c == "L" else touchesR).append(t)
            pts.append(t)
        paths.append((a, pts, b))
    if len(touchesL) > 6 or len(touchesR) > 6:
        raise DiagramError("too many touch points for the brute-force check")

    def pos_node(v):
        # circle order: top 0..n-1, right wall (top to bottom), bottom n-1..0, left wall (bottom to top)
        if v < n:
            return (0, v)
        return (2, 2 * n - 1 - v)

    for orderR in permutations(touchesR):
        posR = {t: (1, i) for i, t in enumerate(orderR)}
        for orderL in permutations(touchesL):
            posL = {t: (3, i) for i, t in enumerate(orderL)}
            pos = {**posR, **posL}
            chords = []
            for a, pts, b in paths:
                seq = [pos_node(a)] + [pos[t] for t in pts] + [pos_node(b)]
                chords += list(zip(seq, seq[1:]))
            if _noncrossing(chords):
                return True
    return False


def _noncrossing(chords):
    for i in range(len(chords)):
        a, b = sorted(chords[i])
        for j in range(i + 1, len(chords)):
            c, d = chords[j]
            if len({a, b, c, d}) < 4:
                continue
            if (a < c < b) != (a < d < b):
                return False
    return True


# ---------------------------------------------------------------------------
# enumeration and cells


def enumerate_basis(n, guard=8):
    """All diagrams of B^x_n, by closure of the identity under the generators."""
    if n > guard:
        raise DiagramError(f"n={n} exceeds the enumeration guard {guard}")
    gens = [generator_diagram(n, i) for i in range(n + 1)]
    start = identity(n)
    seen = {start}
    queue = deque([start])
    while queue:
        d = queue.popleft()
        for g in gens:
            _, r = compose(g, d)
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return sorted(seen)


def cell_of(d):
    """Standard label l of the cell containing the diagram ``d``."""
    n = d.n
    words = d.line_words()
    if not words:
        return 0
    if n % 2 and len(words) == 1 and words[0]:
        return 0
    if n % 2 == 0 and words == ("L", "R"):
        return 0
    undec = sum(1 for w in words if w == "")
    return undec if words[0] == "L" else -undec


def cell_level(l, n):
    return n if l == -n else abs(l)


def representative(n, l):
    """The cell representative: blobbed arcs at the left, then lines."""
    from .params import line_pattern, Std

    if l == 0:
        return d0(n)
    words = line_pattern(Std(n, l))
    k = len(words)
    pairs = []
    for j in range(0, n - k, 2):
        pairs.append((j, j + 1, "L"))
        pairs.append((n + j, n + j + 1, "L"))
    for t, w in enumerate(words):
        i = n - k + t
        pairs.append((i, n + i, w))
    return Diagram(n, pairs)


def d0(n):
    """Generator of the ideal I_n(0): blobbed cups and caps (plus one blobbed line for odd n)."""
    pairs = []
    for j in range(0, n - 1, 2):
        pairs.append((j, j + 1, "L"))
        pairs.append((n + j, n + j + 1, "L"))
    if n % 2:
        pairs.append((n - 1, 2 * n - 1, "L"))
    return Diagram(n, pairs)


# ---------------------------------------------------------------------------
# the algebra


class BlobAlgebra:
    """b^x_n over a field context with a fixed six-tuple of parameters."""

    def __init__(self, n, delta, field):
        self.n = n
        self.field = field
        self.delta = delta
        self._vals = [field.coerce(v) for v in delta.as_tuple()]
        self._mono = {}

    def mono(self, e):
        v = self._mono.get(e)
        if v is None:
            v = self.field.one
            for base, k in zip(self._vals, e):
                if k:
                    v = v * base ** k
            self._mono[e] = v
        return v

    def element(self, terms=None):
        return AlgebraElement(self, terms or {})

    def diagram(self, d, c=None):
        return AlgebraElement(self, {d: self.field.one if c is None else c})

    def one(self):
        return self.diagram(identity(self.n))

    def scalar(self, c):
        return self.diagram(identity(self.n), self.field.coerce(c))

    def gen(self, i):
        return self.diagram(generator_diagram(self.n, i))

    def generators(self):
        return [self.gen(i) for i in range(self.n + 1)]

    def multiply(self, a, b):
        f = self.field
        out = {}
        for d1, c1 in a.terms.items():
            for d2, c2 in b.terms.items():
                e, d = compose(d1, d2)
                c = c1 * c2
                if e != _ZERO6:
                    c = c * self.mono(e)
                out[d] = out[d] + c if d in out else c
        return AlgebraElement(self, {d: c for d, c in out.items() if not f.is_zero(c)})


class AlgebraElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.alg.scalar(other)
        f = self.alg.field
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return AlgebraElement(self.alg, {d: c for d, c in out.items() if not f.is_zero(c)})

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.alg, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.alg.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.alg.multiply(self, other)
        f = self.alg.field
        c0 = f.coerce(other)
        if f.is_zero(c0):
            return AlgebraElement(self.alg, {})
        return AlgebraElement(self.alg, {d: c * c0 for d, c in self.terms.items()})

    def __rmul__(self, other):
        f = self.alg.field
        c0 = f.coerce(other)
        if f.is_zero(c0):
            return AlgebraElement(self.alg, {})
        return AlgebraElement(self.alg, {d: c0 * c for d, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.alg.scalar(other)
        return (self - other).is_zero()

    def flip(self):
        return AlgebraElement(self.alg, {d.flip(): c for d, c in self.terms.items()})

    def coeff(self, d):
        return self.terms.get(d, self.alg.field.zero)

    def __repr__(self):
        return " + ".join(f"({c})*[{serialize(d)}]" for d, c in sorted(self.terms.items())) or "0"


def quotient_bprime(a):
    """Image in b'_n: drop every term lying in the ideal I_n(0)."""
    return AlgebraElement(a.alg, {d: c for d, c in a.terms.items() if cell_of(d) != 0})


def multiply(a, b):
    return a.alg.multiply(a, b)


def generators(n, delta, field):
    return BlobAlgebra(n, delta, field).generators()


def straighten(pd, alg, rng=None):
    e, d = straighten_exps(pd, rng)
    return alg.diagram(d, alg.mono(e))
