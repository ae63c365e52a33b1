"""Contravariant forms on cell modules and their determinants."""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

from .cellmod import build, paths_dim
from .diagrams import BlobAlgebra, compose
from .exact import det as _det, rank as _rank
from .params import BLabel, DN, Std, label_convert, scheme_convert, ParameterError
from .paths import PathScalars, path_order, tile_sequence, closest_path


def _dn(label):
    if isinstance(label, Std):
        label = label_convert(label)
    return label


def algebra_for(label, params, field):
    n = _dn(label).n
    delta = scheme_convert(params, "DN", n).embed(field)
    return BlobAlgebra(n, delta, field)


# ---------------------------------------------------------------------------
# diagram basis


def inner_exps(module, i, j):
    """Exponent vector of <u_i, u_j>, or None when the pairing vanishes."""
    e, r = compose(module.basis[i].flip(), module.basis[j])
    return e if r == module.rep else None


def inner(module, i, j, alg):
    e = inner_exps(module, i, j)
    return alg.field.zero if e is None else alg.mono(e)


@dataclass
class GramMatrix:
    label: object
    basis: str
    entries: list
    field: object = dc_field(repr=False)

    def det(self):
        return _det(self.entries, self.field)

    def rank(self):
        return _rank(self.entries, self.field)

    def is_symmetric(self):
        N = len(self.entries)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(N) for j in range(N))


def gram_matrix(label, params, basis="diagram", field=None):
    field = field or params.field()
    label = _dn(label)
    if basis == "diagram":
        mod = build(label)
        alg = algebra_for(label, params, field)
        N = mod.dim
        G = [[inner(mod, i, j, alg) for j in range(N)] for i in range(N)]
        return GramMatrix(label, "diagram", G, field)
    if basis == "path":
        lams = path_eigenvalues(label, params, field)
        N = len(lams)
        G = [[lams[i] if i == j else field.zero for j in range(N)] for i in range(N)]
        return GramMatrix(label, "path", G, field)
    raise ParameterError(f"unknown basis {basis!r}")


# ---------------------------------------------------------------------------
# path basis


def critical_theta(label, params):
    return -label.m + label.e1 * params.w1 + label.e2 * params.w2


def submodule_paths(label):
    """Paths of the submodule V, ordered by the tiles needed from the top path."""
    n, m = label.n, label.m
    if label.e1 == 1:
        paths = [p for p in path_order(n) if p[-1] >= m + 1]
    else:
        paths = [p for p in path_order(n) if p[-1] <= -m - 1]
    top = top_path(label)

    def key(p):
        seq = tile_sequence(p, top)
        return len(seq), [mv.position for mv in seq]
    return sorted(paths, key=key)


def top_path(label):
    h = label.m + 1 if label.e1 == 1 else -label.m - 1
    return closest_path(label.n, h)


def path_eigenvalues(label, params, field=None):
    """Diagonal Gram entries in the path basis.

    For W^n(b) these are lambda_p over all paths.  For a DN label the
    parameters are moved to the critical theta and the entries are
    lambda_p / lambda_top over the paths of the submodule V.
    """
    field = field or params.field()
    label = _dn(label)
    if isinstance(label, BLabel):
        sc = PathScalars(params, field)
        return [_rel_lambda(p, sc) for p in path_order(label.n)]
    p2 = params.with_(theta=critical_theta(label, params))
    sc = PathScalars(p2, field)
    top = top_path(label)
    return [_rel_lambda(p, sc, top) for p in submodule_paths(label)]


def _rel_lambda(p, sc, start=None):
    """Product of f/g over the tiles from ``start`` (default p_0) to ``p``."""
    lam = sc.field.one
    for mv in tile_sequence(p, start):
        lam = lam * (sc.f(mv.h) if mv.kind == "full" else sc.g(mv.h))
    return lam


# ---------------------------------------------------------------------------
# factored determinants


@dataclass(frozen=True)
class BoxArg:
    """The argument a1*w1 + a2*w2 + a3*theta + c of a quantum number."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    c: Fraction

    def value(self, params):
        t = params.theta if params.theta is not None else 0
        return self.a1 * params.w1 + self.a2 * params.w2 + self.a3 * t + self.c

    def __str__(self):
        parts = []
        for coef, name in ((self.a1, "w1"), (self.a2, "w2"), (self.a3, "theta")):
            if coef:
                parts.append(f"{'+' if coef > 0 else '-'}{'' if abs(coef) == 1 else abs(coef)}{name}")
        if self.c or not parts:
            parts.append(f"{'+' if self.c >= 0 else '-'}{abs(self.c)}")
        s = "".join(parts)
        return "[" + (s[1:] if s.startswith("+") else s) + "]"


def _ba(a1=0, a2=0, a3=0, c=0):
    return BoxArg(Fraction(a1), Fraction(a2), Fraction(a3), Fraction(c))


@dataclass
class GramDet:
    """sign * dL^a * dR^b * prod [arg]^exp."""

    factors: dict
    dL: int = 0
    dR: int = 0
    sign: int = 1
    literal_sign: int = 1

    def value(self, params, field=None):
        field = field or params.field()
        v = field.one if self.sign == 1 else -field.one
        dt = scheme_convert(params, "DN").embed(field)
        v = v * dt.dL ** self.dL * dt.dR ** self.dR
        for arg, e in self.factors.items():
            b = field.box(arg.value(params))
            v = v * b ** e
        return v

    def vanishes(self, params):
        from .exact import box_vanishes

        for arg, e in self.factors.items():
            if e > 0 and box_vanishes(arg.value(params), params.spec):
                return True
        return False

    def __str__(self):
        parts = ["-" if self.sign < 0 else ""]
        if self.dL:
            parts.append(f"dL^{self.dL} ")
        if self.dR:
            parts.append(f"dR^{self.dR} ")
        for arg, e in sorted(self.factors.items(), key=lambda t: str(t[0])):
            parts.append(f"{arg}^{e} ")
        return "".join(parts).strip()


def _bump(fac, arg, e):
    """Add [arg]^e, normalising [-x] = -[x] so arguments have a canonical sign."""
    sign = 1
    key = (arg.a1, arg.a2, arg.a3, arg.c)
    if key < (0, 0, 0, 0) and any(key):
        arg = BoxArg(-arg.a1, -arg.a2, -arg.a3, -arg.c)
        sign = -1 if e % 2 else 1
    fac[arg] = fac.get(arg, 0) + e
    if fac[arg] == 0:
        del fac[arg]
    return sign


def closed_form_det(label):
    """The closed product formula for the Gram determinant of a DN label."""
    label = _dn(label)
    if not isinstance(label, DN):
        raise ParameterError("closed form is for DN labels; use gram_det_Wb for W^n(b)")
    n, m, e1, e2 = label.n, label.m, label.e1, label.e2
    dim = paths_dim(label)
    fac = {}
    sign = 1
    for k in range((n - m - 3) // 2 + 1):
        ex = paths_dim(DN(n, n - 1 - 2 * k, e1, e2))
        s = Fraction(-n + m + 2 * k + 1, 2)
        sign *= _bump(fac, _ba(c=Fraction(n - m - 2 * k - 1, 2)), ex)
        sign *= _bump(fac, _ba(a1=e1, c=-s), ex)
        sign *= _bump(fac, _ba(a2=e2, c=-s), ex)
        sign *= _bump(fac, _ba(a1=e1, a2=e2, c=-Fraction(n + m - 2 * k - 1, 2)), ex)
        sign *= _bump(fac, _ba(a1=1, c=1), -2 * ex)
        sign *= _bump(fac, _ba(a2=1, c=1), -2 * ex)
    # The displayed product is only meaningful up to sign: [-x] = -[x].
    return GramDet(fac, dL=dim * (1 - e1) // 2, dR=dim * (1 - e2) // 2, literal_sign=sign)


def gram_det_Wb(n):
    """Non-unit part of the Gram determinant of W^n(b) (product over theta boxes)."""
    fac = {}
    sign = 1
    if n % 2 == 0:
        for m in range((n - 2) // 2 + 1):
            ex = sum(comb(n, (n - 2 * m - 2 * i) // 2) for i in range(1, (n - 2 * m) // 2 + 1))
            for a in (1, -1):
                for b in (1, -1):
                    for c in (1, -1):
                        sign *= _bump(fac, _ba(Fraction(a, 2), Fraction(b, 2), Fraction(c, 2),
                                               Fraction(1 + 2 * m, 2)), ex)
    else:
        for b in (1, -1):
            for c in (1, -1):
                sign *= _bump(fac, _ba(Fraction(1, 2), Fraction(b, 2), Fraction(c, 2), 0), 2 ** (n - 1))
        for m in range(1, (n - 1) // 2 + 1):
            ex = sum(comb(n, (n - 2 * m - 2 * i + 1) // 2) for i in range(1, (n - 2 * m + 1) // 2 + 1))
            for a in (1, -1):
                for b in (1, -1):
                    for c in (1, -1):
                        sign *= _bump(fac, _ba(Fraction(a, 2), Fraction(b, 2), Fraction(c, 2), m), ex)
    return GramDet(fac, literal_sign=sign)


def alpha_exponent(n):
    """Exponent e with alpha_n = ([w1][w2+1])^e, up to units."""
    return -2 * sum(sum(comb(n, m - i + 1) for i in range(1, m + 2)) for m in range(n))


def gram_det(label, params, method="direct", field=None):
    field = field or params.field()
    label = _dn(label)
    if method == "direct":
        return gram_matrix(label, params, "diagram", field).det()
    if method == "path":
        v = field.one
        for x in path_eigenvalues(label, params, field):
            v = v * x
        return v
    if method == "closed-form":
        if isinstance(label, BLabel):
            return gram_det_Wb(label.n).value(params, field)
        return closed_form_det(label).value(params, field)
    raise ParameterError(f"unknown method {method!r}")


def is_simple(label, params, field=None):
    """Non-degeneracy of the form on the cell module."""
    field = field or params.field()
    G = gram_matrix(label, params, "diagram", field)
    return G.rank() == len(G.entries)


# ---------------------------------------------------------------------------
# monomial fitting


def _solve_float(A, b):
    n = len(A[0])
    # normal equations, then elimination with partial pivoting
    M = [[sum(A[k][i] * A[k][j] for k in range(len(A))) for j in range(n)]
         + [sum(A[k][i] * b[k] for k in range(len(A)))] for i in range(n)]
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(M[r][c]))
        M[c], M[piv] = M[piv], M[c]
        if abs(M[c][c]) < 1e-12:
            raise ArithmeticError("monomial bases are degenerate at these points")
        for r in range(n):
            if r != c:
                t = M[r][c] / M[c][c]
                M[r] = [x - t * y for x, y in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def _log_abs(x):
    from math import log

    x = Fraction(int(x.p), int(x.q)) if hasattr(x, "p") else Fraction(x)
    return log(abs(x.numerator)) - log(x.denominator)


def fit_monomial(samples, check):
    """Integer exponents e with ratio = +-prod base_i^e_i.

    ``samples`` is a list of (ratio, [base values]) over Q used for a
    logarithmic fit; ``check`` is a list of the same shape used for exact
    confirmation.  Returns (sign, exponents) or None when no monomial fits.
    """
    A, b = [], []
    for r, bases in samples:
        if r == 0 or any(x == 0 for x in bases):
            return None
        A.append([_log_abs(x) for x in bases])
        b.append(_log_abs(r))
    ex = [round(v) for v in _solve_float(A, b)]
    sign = None
    for r, bases in list(samples) + list(check):
        v = 1
        for x, e in zip(bases, ex):
            v = v * x ** e
        if r == v:
            s = 1
        elif r == -v:
            s = -1
        else:
            return None
        if sign is None:
            sign = s
        elif s != sign:
            return None
    return sign, tuple(ex)


def _at_points(params, n_points):
    """Rational x with q = x^D spread over a moderate range.

    Large q would make every log|[a]| nearly proportional to a and the
    logarithmic fit ill-conditioned.
    """
    from .exact import RootSpec

    D = params.D
    return [params.with_(spec=RootSpec.point(1 + Fraction(k, D))) for k in range(1, n_points + 1)]


def closed_form_ratio(label, params, n_points=6):
    """(sign, (a, b)) with direct / closed-form = sign * dL^a * dR^b, or None.

    Evaluated at several rational values of x with the weights of ``params``.
    """
    label = _dn(label)
    cf = closed_form_det(label)
    samples = []
    for p in _at_points(params, n_points):
        f = p.field()
        d = gram_det(label, p, "direct", f)
        dt = scheme_convert(p, "DN").embed(f)
        samples.append((d / cf.value(p, f), [dt.dL, dt.dR]))
    return fit_monomial(samples[:3], samples[3:])


def diagram_path_ratio(label, params, n_points=6):
    """(sign, (a, b)) with det(diagram) / det(path) = sign * dL^a * dR^b, or None."""
    label = _dn(label)
    samples = []
    for p in _at_points(params, n_points):
        f = p.field()
        d = gram_det(label, p, "direct", f)
        dt = scheme_convert(p, "DN").embed(f)
        samples.append((d / gram_det(label, p, "path", f), [dt.dL, dt.dR]))
    return fit_monomial(samples[:3], samples[3:])


def wb_unit_ratio(n, params, method="path", n_points=7):
    """Exponents of [w1], [w1+1], [w2], [w2+1] in det W^n(b) / (non-unit formula).

    Returns (sign, exponents) or None when the quotient is not a unit monomial.
    """
    label = BLabel(n)
    nu = gram_det_Wb(n)
    samples = []
    for p in _at_points(params, n_points):
        f = p.field()
        d = gram_det(label, p, method, f)
        bases = [f.box(p.w1), f.box(p.w1 + 1), f.box(p.w2), f.box(p.w2 + 1)]
        if method == "direct":
            dt = scheme_convert(p, "DN", n).embed(f)
            bases.append(dt.kLR)
        samples.append((d / nu.value(p, f), bases))
    k = len(samples[0][1])
    return fit_monomial(samples[:k], samples[k:])
