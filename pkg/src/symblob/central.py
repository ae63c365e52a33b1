"""The type-C Hecke surjection, Murphy elements and the central element Z_n.

Everything is computed inside b^x_n with the DN parameters, where
delta = [2], delta_L = [w1]/[w1+1], delta_R = [w2]/[w2+1], and
Q1 = q^w1, Q2 = q^w2.
"""

from dataclasses import dataclass

from .cellmod import build
from .diagrams import BlobAlgebra
from .params import DN, ParameterError, label_convert, scheme_convert


@dataclass(frozen=True)
class HeckeImage:
    index: int
    sign: int
    value: object


@dataclass(frozen=True)
class AlphaValue:
    label: object
    value: object


class Central:
    """Hecke images and Murphy elements in a fixed b^x_n."""

    def __init__(self, n, params, field=None, guard=6):
        if n > guard:
            raise ParameterError(f"n={n} exceeds the Murphy-element guard {guard}")
        self.n = n
        self.params = params
        self.field = field or params.field()
        delta = scheme_convert(params, "DN", n).embed(self.field)
        self.alg = BlobAlgebra(n, delta, self.field)
        self._g = {}
        self._J = {}

    def g(self, i, sign=1):
        """pi(g_i^{sign}) as an algebra element."""
        key = (i, sign)
        if key not in self._g:
            f, alg = self.field, self.alg
            e = alg.gen(i)
            if 0 < i < self.n:
                val = e - f.qpow(-sign)
            else:
                w = self.params.w1 if i == 0 else self.params.w2
                Q = f.qpow(sign * w)
                coef = f.qpow(sign * (w + 1)) - f.qpow(-sign * (w + 1))
                val = alg.scalar(Q) - e * coef
            self._g[key] = val
        return self._g[key]

    def hecke_image(self, i, sign=1):
        return HeckeImage(i, sign, self.g(i, sign))

    def _prod(self, factors):
        out = self.alg.one()
        for a in factors:
            out = out * a
        return out

    def murphy(self, i, sign=1):
        """J_i (sign=1) or J_i^{-1} (sign=-1)."""
        key = (i, sign)
        if key not in self._J:
            n = self.n
            if i == 0:
                if sign == 1:
                    fs = ([self.g(k, -1) for k in range(1, n)] + [self.g(n)]
                          + [self.g(k) for k in range(n - 1, 0, -1)] + [self.g(0)])
                else:
                    fs = ([self.g(0, -1)] + [self.g(k, -1) for k in range(1, n)] + [self.g(n, -1)]
                          + [self.g(k) for k in range(n - 1, 0, -1)])
                val = self._prod(fs)
            else:
                gi = self.g(i, sign)
                val = gi * self.murphy(i - 1, sign) * gi
            self._J[key] = val
        return self._J[key]

    def z(self):
        out = self.alg.element()
        for i in range(self.n):
            out = out + self.murphy(i) + self.murphy(i, -1)
        return out


def hecke_image(n, i, sign, params, field=None):
    return Central(n, params, field).hecke_image(i, sign)


def murphy(n, i, params, field=None):
    return Central(n, params, field).murphy(i)


def z_n(n, params, field=None):
    return Central(n, params, field).z()


def _c(label, params):
    return -label.m + label.e1 * params.w1 + label.e2 * params.w2


def alpha(label, params, field=None, form="expanded"):
    """Eigenvalue of Z_n on the cell module ``label``.

    ``form="quotient"`` uses [n][2c]/[c] and fails when [c] vanishes; the
    expanded [n](q^c + q^-c) is always defined.
    """
    field = field or params.field()
    if not isinstance(label, DN):
        label = label_convert(label)
        if not isinstance(label, DN):
            raise ParameterError("alpha is defined for DN labels")
    c = _c(label, params)
    bn = field.box(label.n)
    if form == "expanded":
        v = bn * (field.qpow(c) + field.qpow(-c))
    elif form == "quotient":
        den = field.box(c)
        if field.is_zero(den):
            raise ZeroDivisionError(f"[{c}] vanishes; use the expanded form")
        v = bn * field.box(2 * c) / den
    else:
        raise ParameterError(f"unknown form {form!r}")
    return AlphaValue(label, v)


def same_eigenvalue(l1, l2, params, field=None):
    field = field or params.field()
    return alpha(l1, params, field).value == alpha(l2, params, field).value


def action_matrix(z, label):
    """Matrix of the algebra element ``z`` on the cell module ``label``."""
    return build(label).matrix(z)


def acts_as_scalar(z, label, value):
    M = action_matrix(z, label)
    f = z.alg.field
    N = len(M)
    return all(f.is_zero(M[i][j] - (value if i == j else f.zero)) for i in range(N) for j in range(N))


def commutes_with_generators(z):
    alg = z.alg
    return all((z * g - g * z).is_zero() for g in alg.generators())
