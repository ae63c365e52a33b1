"""Reference data: printed matrices and block partitions used by golden checks.

Partitions list only the non-singleton classes, as ``(m, e1, e2)`` triples.
"""

from fractions import Fraction as F

# Gram matrix of W^(5,2)_{-,-} in the diagram basis, as monomials in
# d, dL, dR, kL, kR, kLR (empty string = 0).
GRAM_52MM = [
    ["dL^2 dR kL", "dL dR kL", "dL^2 dR", "", "", ""],
    ["dL dR kL", "d dL dR", "dL dR", "", "", ""],
    ["dL^2 dR", "dL dR", "d dL dR", "dL dR", "", ""],
    ["", "", "dL dR", "d dL dR", "dL dR", "dL dR^2"],
    ["", "", "", "dL dR", "d dL dR", "dL dR kR"],
    ["", "", "", "dL dR^2", "dL dR kR", "dL dR^2 kR"],
]

SYMBOLS = ("d", "dL", "dR", "kL", "kR", "kLR")


def parse_monomial(s):
    """``"dL^2 dR"`` -> exponent 6-tuple, ``""`` or ``"0"`` -> None (zero entry)."""
    if not s or s == "0":
        return None
    e = [0] * 6
    for tok in s.split():
        name, _, k = tok.partition("^")
        e[SYMBOLS.index(name)] += int(k or 1)
    return tuple(e)


def format_monomial(e):
    if e is None:
        return "0"
    parts = []
    for name, k in zip(SYMBOLS, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return " ".join(parts) or "1"


# (n, w1, w2, ell, classes); ell = 0 means q generic.
FIGURE_PARTITIONS = {
    "none-integral-root": (8, F(1, 2), F(3, 4), 3, [
        [(1, -1, 1), (7, -1, 1)], [(1, 1, -1), (7, 1, -1)], [(1, 1, 1), (7, 1, 1)]]),
    "w1-integral": (8, F(1), F(3, 4), 0, [
        [(1, -1, 1), (3, 1, 1)], [(3, -1, -1), (5, 1, -1)], [(3, -1, 1), (5, 1, 1)],
        [(5, -1, -1), (7, 1, -1)], [(5, -1, 1), (7, 1, 1)]]),
    "w2-integral": (9, F(-1, 4), F(1), 0, [
        [(2, -1, -1), (4, -1, 1)], [(2, 1, -1), (4, 1, 1)], [(4, -1, -1), (6, -1, 1)],
        [(4, 1, -1), (6, 1, 1)], [(6, -1, -1), (8, -1, 1)], [(6, 1, -1), (8, 1, 1)]]),
    "w1+w2-integral": (9, F(1, 4), F(11, 4), 0, [
        [(0, 1, 1), (6, 1, 1)], [(2, 1, 1), (4, 1, 1)]]),
    "w1-w2-integral": (8, F(1, 4), F(-7, 4), 0, [
        [(1, 1, -1), (3, 1, -1)]]),
    "half-integral": (8, F(5, 2), F(-1, 2), 0, [
        [(1, 1, -1), (5, 1, -1)], [(1, 1, 1), (3, 1, 1)]]),
    "both-integral": (13, F(3), F(1), 0, [
        [(0, 1, 1), (2, -1, 1), (6, 1, -1), (8, 1, 1)],
        [(2, -1, -1), (4, -1, 1), (8, 1, -1), (10, 1, 1)],
        [(2, 1, -1), (4, 1, 1)],
        [(2, 1, 1), (4, 1, -1), (6, 1, 1)],
        [(4, -1, -1), (6, -1, 1), (10, 1, -1), (12, 1, 1)],
        [(6, -1, -1), (8, -1, 1), (12, 1, -1)],
        [(8, -1, -1), (10, -1, 1)],
        [(10, -1, -1), (12, -1, 1)]]),
}


def figure_params(name):
    from .exact import RootSpec
    from .params import WeightParams
    n, w1, w2, ell, _ = FIGURE_PARTITIONS[name]
    spec = RootSpec("root", ell=ell) if ell else RootSpec.generic()
    return n, WeightParams(w1, w2, spec=spec)


def as_triples(partition):
    """Non-singleton classes of a BlockPartition in the reference format."""
    return sorted(sorted((L.m, L.e1, L.e2) for L in c) for c in partition.nontrivial())


def expected_triples(name):
    return sorted(sorted(c) for c in FIGURE_PARTITIONS[name][4])
