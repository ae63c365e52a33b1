"""Parameter six-tuples, weight parameters and cell labels."""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

from .exact import RatFn, RootSpec, box, box_vanishes, choose_D, make_field, ConfigError

SCHEMES = ("DN", "GMP1", "GMP2")


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class DeltaTuple:
    """The six loop/blob parameters (delta, delta_L, delta_R, kappa_L, kappa_R, kappa_LR)."""

    d: object
    dL: object
    dR: object
    kL: object
    kR: object
    kLR: object

    def as_tuple(self):
        return (self.d, self.dL, self.dR, self.kL, self.kR, self.kLR)

    def embed(self, field):
        return DeltaTuple(*(field.embed(v) for v in self.as_tuple()))

    def rescale1(self):
        """Generator scaling e -> e/kL, f -> f/kR."""
        return DeltaTuple(self.d, self.dL / self.kL, self.dR / self.kR, RatFn.one(), RatFn.one(),
                          self.kLR / (self.kL * self.kR))

    def rescale2(self):
        """Generator scaling by -1."""
        return DeltaTuple(-self.d, -self.dL, -self.dR, self.kL, self.kR, self.kLR)


@dataclass(frozen=True)
class WeightParams:
    """Weights ``w1, w2``, optional ``theta``, a q-specialisation and a scheme."""

    w1: Fraction
    w2: Fraction
    theta: Fraction = None
    spec: RootSpec = dc_field(default_factory=RootSpec.generic)
    scheme: str = "DN"

    def __post_init__(self):
        object.__setattr__(self, "w1", Fraction(self.w1))
        object.__setattr__(self, "w2", Fraction(self.w2))
        if self.theta is not None:
            object.__setattr__(self, "theta", Fraction(self.theta))
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}")

    @cached_property
    def D(self):
        if self.theta is None:
            return choose_D(self.w1, self.w2)
        # half boxes [(w1 +- w2 +- theta + c)/2] occur only with theta
        return choose_D(self.w1, self.w2, self.theta, self.w1 / 2, self.w2 / 2, self.theta / 2)

    def box(self, w, a=0):
        return box(w, a, self.D)

    def field(self, prime=None, seed=0):
        return make_field(self.spec, self.D, prime=prime, seed=seed)

    @cached_property
    def guards(self):
        """Which of [w1], [w1+1], [w2], [w2+1] vanish under the specialisation."""
        return {
            "[w1]": box_vanishes(self.w1, self.spec),
            "[w1+1]": box_vanishes(self.w1 + 1, self.spec),
            "[w2]": box_vanishes(self.w2, self.spec),
            "[w2+1]": box_vanishes(self.w2 + 1, self.spec),
        }

    def is_generic_for_paths(self):
        return not any(self.guards.values())

    def with_(self, **kw):
        d = dict(w1=self.w1, w2=self.w2, theta=self.theta, spec=self.spec, scheme=self.scheme)
        d.update(kw)
        return WeightParams(**d)


def b_of_theta(n_parity, w1, w2, theta, D=None):
    """The W^n(b) parameter b as a function of theta."""
    w1, w2, theta = Fraction(w1), Fraction(w2), Fraction(theta)
    if D is None:
        D = choose_D(w1 / 2, w2 / 2, theta / 2)
    if n_parity % 2 == 0:
        return box((w1 + w2 + theta + 1) / 2, 0, D) * box((w1 + w2 - theta + 1) / 2, 0, D)
    return -box((w1 - w2 + theta) / 2, 0, D) * box((w1 - w2 - theta) / 2, 0, D)


def _nonzero(p, name, value):
    if p.spec.mode == "generic" and value.is_zero():
        raise ParameterError(f"vanishing denominator {name}")
    return value


def scheme_convert(p, scheme=None, n=None):
    """Six-tuple of the requested scheme as symbolic RatFns.

    ``kappa_LR`` needs ``theta`` and the parity of ``n``.  In the GMP schemes
    it equals ``b``; in DN it is ``b / ([w1+1][w2+1])`` (the rescaling "1"
    image of GMP1).  Without ``theta`` it is left as 1, which never affects
    the quotient ``b'_n``.
    """
    scheme = scheme or p.scheme
    D = p.D
    b1 = box(p.w1, 1, D)
    b2 = box(p.w2, 1, D)
    if p.theta is not None and n is not None:
        b = b_of_theta(n, p.w1, p.w2, p.theta, D)
    else:
        b = None
    if scheme == "DN":
        for name in ("[w1+1]", "[w2+1]"):
            if p.guards[name]:
                raise ParameterError(f"vanishing denominator {name}")
        klr = RatFn.one() if b is None else b / (b1 * b2)
        return DeltaTuple(box(2, 0, D), box(p.w1, 0, D) / b1, box(p.w2, 0, D) / b2,
                          RatFn.one(), RatFn.one(), klr)
    klr = RatFn.one() if b is None else b
    gmp1 = DeltaTuple(box(2, 0, D), box(p.w1, 0, D), box(p.w2, 0, D), b1, b2, klr)
    if scheme == "GMP1":
        return gmp1
    if scheme == "GMP2":
        return gmp1.rescale2()
    raise ConfigError(f"unknown scheme {scheme!r}")


# ---------------------------------------------------------------------------
# labels


def _sgn(x):
    return (x > 0) - (x < 0)


@dataclass(frozen=True, order=True)
class Std:
    """Standard label l of the cell module S_n(l), l in {-n, ..., n-1}."""

    n: int
    l: int

    def __post_init__(self):
        if not (-self.n <= self.l <= self.n - 1):
            raise ParameterError(f"label {self.l} outside Lambda_{self.n}")

    def __str__(self):
        return f"S_{self.n}({self.l})"


@dataclass(frozen=True, order=True)
class DN:
    """DN label W^{(n,m)}_{e1,e2}."""

    n: int
    m: int
    e1: int
    e2: int

    def __post_init__(self):
        if self.e1 not in (1, -1) or self.e2 not in (1, -1):
            raise ParameterError("signs must be +-1")
        if not (0 <= self.m <= self.n - 1) or (self.n - self.m) % 2 == 0:
            raise ParameterError(f"invalid DN label {self}")
        low = {(1, 1): 0, (-1, 1): 1, (1, -1): 1, (-1, -1): 2}[(self.e1, self.e2)]
        if self.m < low:
            raise ParameterError(f"invalid DN label {self}")

    def __str__(self):
        s = {1: "+", -1: "-"}
        return f"W^({self.n},{self.m})_{s[self.e1]}{s[self.e2]}"


@dataclass(frozen=True, order=True)
class BLabel:
    """The cell module W^n(b) with no undecorated propagating lines."""

    n: int

    def __str__(self):
        return f"W^{self.n}(b)"


def label_convert(label):
    """Standard <-> DN labelling; S_n(0) <-> W^n(b)."""
    if isinstance(label, BLabel):
        return Std(label.n, 0)
    if isinstance(label, DN):
        l = -label.e1 * (label.m + (label.e1 + label.e2) // 2)
        return Std(label.n, l)
    if isinstance(label, Std):
        n, l = label.n, label.l
        if l == 0:
            return BLabel(n)
        s = _sgn(l)
        if (n - l) % 2:
            return DN(n, abs(l), -s, s)
        return DN(n, abs(l + 1), -s, -s)
    raise ParameterError(f"malformed label {label!r}")


def standard_labels(n):
    return [Std(n, l) for l in range(-n, n)]


def dn_labels(n):
    """All DN labels of b'_n (W^n(b) excluded), ordered by (m, e1, e2)."""
    out = []
    for m in range(n):
        for e1 in (1, -1):
            for e2 in (1, -1):
                try:
                    out.append(DN(n, m, e1, e2))
                except ParameterError:
                    pass
    return out


def all_labels(n):
    return dn_labels(n) + [BLabel(n)]


def line_pattern(label):
    """Words on the propagating lines of the canonical cell representative.

    Returns a tuple of words ("L", "", "R") read left to right, or ``None`` for
    W^n(b), whose line count is n mod 2 with a free top letter.
    """
    if isinstance(label, DN):
        label = label_convert(label)
    if isinstance(label, BLabel) or label.l == 0:
        return None
    n, l = label.n, label.l
    words = (["L"] if l > 0 else []) + [""] * abs(l)
    if (abs(l) + (l > 0)) % 2 != n % 2:
        words.append("R")
    return tuple(words)


def weight_coords(label, w1, w2):
    w1, w2 = Fraction(w1), Fraction(w2)
    t = label.m - label.e1 * w1 - label.e2 * w2
    return (label.e1 * t, label.e2 * t)


@dataclass(frozen=True)
class EtaPair:
    eta1: int
    eta2: int
