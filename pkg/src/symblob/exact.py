"""Exact scalars for the symplectic blob algebra.

Everything is expressed in an auxiliary variable ``x`` with ``q = x**D``.
Choosing ``D`` as the lcm of 2 and the denominators of the weights makes
``q**w`` a Laurent monomial in ``x`` for every weight ``w`` that occurs.

Four evaluation contexts share one small interface (``embed``, ``zero``,
``one``, ``is_zero``, ``box``):

* ``SymbolicField``: elements are :class:`RatFn`, exact rational functions.
* ``PointField``: ``x`` is a rational number, elements are ``fmpq``.
* ``CyclotomicField``: ``x`` is a primitive ``2*ell*D``-th root of unity,
  elements are polynomials reduced modulo the cyclotomic polynomial.
* ``PrimeField``: arithmetic in ``GF(p)``, used by the brute-force oracle.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
import random

from flint import fmpq, fmpq_poly, fmpz_poly, fmpq_mat, nmod, nmod_mat


class ConfigError(ValueError):
    """Raised for parameter contexts that cannot be realised exactly."""


def _frac(a):
    if isinstance(a, fmpq):
        return Fraction(int(a.p), int(a.q))
    return Fraction(a)


def _fq(a):
    if isinstance(a, fmpq):
        return a
    a = Fraction(a)
    return fmpq(a.numerator, a.denominator)


def _valuation(p):
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    return 0


_X = fmpq_poly([0, 1])
_ONE = fmpq_poly([1])
_ZERO = fmpq_poly([])


# ---------------------------------------------------------------------------
# Laurent polynomials and rational functions


class LPoly:
    """Laurent polynomial in ``x`` with rational coefficients (``q = x**D``)."""

    __slots__ = ("coeffs", "D")

    def __init__(self, coeffs=None, D=1):
        if D < 1:
            raise ConfigError("D must be positive")
        self.D = D
        self.coeffs = {k: Fraction(v) for k, v in (coeffs or {}).items() if v != 0}

    @classmethod
    def monomial(cls, e, c=1, D=1):
        return cls({e: c}, D)

    def _check(self, other):
        if isinstance(other, LPoly):
            if other.D != self.D:
                raise ConfigError("mixed D")
            return other
        return LPoly({0: other}, self.D)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LPoly(out, self.D)

    __radd__ = __add__

    def __neg__(self):
        return LPoly({k: -v for k, v in self.coeffs.items()}, self.D)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for a, u in self.coeffs.items():
            for b, v in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + u * v
        return LPoly(out, self.D)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LPoly):
            return self.D == other.D and self.coeffs == other.coeffs
        if isinstance(other, RatFn):
            return self.to_ratfn() == other
        return self.coeffs == LPoly({0: other}, self.D).coeffs

    def __hash__(self):
        return hash((self.D, tuple(sorted(self.coeffs.items()))))

    def is_zero(self):
        return not self.coeffs

    def to_ratfn(self):
        if not self.coeffs:
            return RatFn.zero()
        lo = min(self.coeffs)
        hi = max(self.coeffs)
        poly = fmpq_poly([_fq(self.coeffs.get(lo + i, 0)) for i in range(hi - lo + 1)])
        return RatFn(poly, _ONE, lo)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*x^{k}" for k, v in sorted(self.coeffs.items(), reverse=True))


class RatFn:
    """Reduced fraction ``x**shift * num / den``.

    ``num`` and ``den`` are coprime, neither is divisible by ``x`` and ``den``
    is monic, so equality is structural.
    """

    __slots__ = ("num", "den", "shift")

    def __init__(self, num=0, den=None, shift=0):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([_fq(num)]) if num != 0 else fmpq_poly([])
        if den is None:
            den = _ONE
        elif not isinstance(den, fmpq_poly):
            den = fmpq_poly([_fq(den)])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den, self.shift = _ZERO, _ONE, 0
            return
        v = _valuation(num)
        if v:
            num = num.right_shift(v)
            shift += v
        v = _valuation(den)
        if v:
            den = den.right_shift(v)
            shift -= v
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num, self.den, self.shift = num, den, shift

    @staticmethod
    def zero():
        return RatFn(0)

    @staticmethod
    def one():
        return RatFn(1)

    @staticmethod
    def x(e=1):
        return RatFn(_ONE, _ONE, e)

    @staticmethod
    def coerce(a):
        if isinstance(a, RatFn):
            return a
        if isinstance(a, LPoly):
            return a.to_ratfn()
        return RatFn(a)

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = RatFn.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b = (self, other) if self.shift <= other.shift else (other, self)
        d = b.shift - a.shift
        if a.den == b.den:
            return RatFn(a.num + b.num.left_shift(d), a.den, a.shift)
        return RatFn(a.num * b.den + (b.num * a.den).left_shift(d), a.den * b.den, a.shift)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFn)
        r.num, r.den, r.shift = -self.num, self.den, self.shift
        return r

    def __sub__(self, other):
        return self + (-RatFn.coerce(other))

    def __rsub__(self, other):
        return RatFn.coerce(other) - self

    def __mul__(self, other):
        other = RatFn.coerce(other)
        if self.is_zero() or other.is_zero():
            return RatFn.zero()
        return RatFn(self.num * other.num, self.den * other.den, self.shift + other.shift)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFn(self.den, self.num, -self.shift)

    def __truediv__(self, other):
        return self * RatFn.coerce(other).inv()

    def __rtruediv__(self, other):
        return RatFn.coerce(other) * self.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = RatFn.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            try:
                other = RatFn.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.shift, str(self.num), str(self.den)))

    def reduce(self):
        return RatFn(self.num, self.den, self.shift)

    def is_laurent(self):
        return self.den.degree() == 0

    def to_lpoly(self, D=1):
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial")
        return LPoly({self.shift + i: _frac(c) for i, c in enumerate(self.num.coeffs())}, D)

    def eval_at(self, x0):
        """Evaluate at a rational ``x0``; raises ZeroDivisionError at a pole."""
        x0 = _fq(x0)
        d = self.den(x0)
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        if self.shift and x0 == 0:
            if self.shift < 0:
                raise ZeroDivisionError("pole at 0")
            return fmpq(0)
        return self.num(x0) / d * x0 ** self.shift

    def eval_mod(self, x0, p):
        """Evaluate at ``x0`` (an int mod ``p``) in ``GF(p)``."""
        num = _poly_mod(self.num, x0, p)
        den = _poly_mod(self.den, x0, p)
        if int(den) == 0:
            raise ZeroDivisionError("pole modulo p")
        x = nmod(x0, p)
        if self.shift >= 0:
            return num / den * x ** self.shift
        return num / (den * x ** (-self.shift))

    def reduce_mod_cyclotomic(self, N):
        return CycElt.from_ratfn(self, N)

    def __repr__(self):
        s = f"x^{self.shift}*" if self.shift else ""
        if self.den.is_one():
            return f"{s}({self.num})"
        return f"{s}({self.num})/({self.den})"


def _poly_mod(poly, x0, p):
    acc = nmod(0, p)
    x = nmod(x0, p)
    for c in reversed(poly.coeffs()):
        cq = int(c.q)
        if cq % p == 0:
            raise ZeroDivisionError("coefficient denominator divisible by p")
        acc = acc * x + nmod(int(c.p), p) / nmod(cq, p)
    return acc


# ---------------------------------------------------------------------------
# quantum integers


def qint(m, half=False, D=1):
    """Quantum integer ``[m]`` as a Laurent polynomial in ``x`` (``q = x**D``).

    With ``half=True`` the base is ``q**(1/2)``, i.e. the result is ``[m]``
    for the variable ``q**(1/2) = x**(D/2)``; this needs ``D`` even.
    """
    if half and D % 2:
        raise ConfigError("half-integer quantum integers need an even D")
    step = D // 2 if half else D
    if m < 0:
        return -qint(-m, half, D)
    return LPoly({step * (m - 1 - 2 * j): 1 for j in range(m)}, D)


def box(w, a=0, D=1):
    """``[w + a] = (q**(w+a) - q**-(w+a)) / (q - q**-1)`` as a RatFn in ``x``."""
    t = Fraction(w) + a
    k = t * D
    if k.denominator != 1:
        raise ConfigError(f"weight {w} is not compatible with D={D}")
    return _box_int(int(k), D)


@lru_cache(maxsize=4096)
def _box_int(k, D):
    if k == 0:
        return RatFn.zero()
    if k < 0:
        return -_box_int(-k, D)
    # x^-k (x^2k - 1) * x^D / (x^2D - 1)
    num = _X ** (2 * k) - 1
    den = _X ** (2 * D) - 1
    return RatFn(num, den, D - k)


def _as_root_integer(w, ell):
    t = Fraction(w) / ell
    return t.denominator == 1


def qint_vanishes(m, spec):
    """True iff ``[m] = 0`` under ``spec``."""
    return box_vanishes(m, spec)


def box_vanishes(w, spec):
    """True iff ``[w] = 0`` for a rational ``w`` under ``spec``."""
    w = Fraction(w)
    if spec.mode == "root":
        return _as_root_integer(w, spec.ell)
    return w == 0


# ---------------------------------------------------------------------------
# root specifications and evaluation contexts


@dataclass(frozen=True)
class RootSpec:
    """How ``q`` is specialised.

    ``mode`` is ``"generic"``, ``"point"`` (``x = x0`` rational, so
    ``q = x0**D``) or ``"root"`` (``q`` a primitive ``2*ell``-th root of
    unity).
    """

    mode: str = "generic"
    x0: Fraction = None
    ell: int = None

    def __post_init__(self):
        if self.mode not in ("generic", "point", "root"):
            raise ConfigError(f"unknown q-mode {self.mode!r}")
        if self.mode == "point":
            if self.x0 is None:
                raise ConfigError("point mode needs x0")
            x0 = Fraction(self.x0)
            if x0 == 0 or abs(x0) == 1:
                raise ConfigError("x0 must avoid 0 and +-1")
            object.__setattr__(self, "x0", x0)
        if self.mode == "root" and (self.ell is None or self.ell < 1):
            raise ConfigError("root mode needs a positive ell")

    @classmethod
    def generic(cls):
        return cls("generic")

    @classmethod
    def point(cls, x0):
        return cls("point", x0=Fraction(x0))

    @classmethod
    def root(cls, ell):
        return cls("root", ell=int(ell))


def choose_D(*weights):
    D = 2
    for w in weights:
        if w is not None:
            D = lcm(D, Fraction(w).denominator)
    return D


class _Field:
    D = 1

    def box(self, w, a=0):
        key = Fraction(w) + a
        c = self._box_cache.get(key)
        if c is None:
            c = self.embed(box(key, 0, self.D))
            self._box_cache[key] = c
        return c

    def qpow(self, e):
        k = Fraction(e) * self.D
        if k.denominator != 1:
            raise ConfigError(f"q^{e} not defined for D={self.D}")
        return self.embed(RatFn.x(int(k)))

    def coerce(self, a):
        if isinstance(a, int):
            return self.embed(RatFn(a)) if a not in (0, 1) else (self.zero if a == 0 else self.one)
        return a


class SymbolicField(_Field):
    name = "symbolic"

    def __init__(self, D):
        self.D = D
        self.zero = RatFn.zero()
        self.one = RatFn.one()
        self._box_cache = {}

    def embed(self, r):
        return RatFn.coerce(r)

    def is_zero(self, a):
        return a.is_zero()


class PointField(_Field):
    name = "point"

    def __init__(self, D, x0):
        self.D = D
        self.x0 = _fq(x0)
        self.zero = fmpq(0)
        self.one = fmpq(1)
        self._box_cache = {}

    def embed(self, r):
        if isinstance(r, (int, Fraction)):
            return _fq(r)
        return RatFn.coerce(r).eval_at(self.x0)

    def is_zero(self, a):
        return a == 0


def cyclotomic_poly(N):
    return fmpq_poly(fmpz_poly.cyclotomic(N))


class CycElt:
    """Element of ``Q[x]/Phi_N(x)``."""

    __slots__ = ("poly", "N", "phi")

    def __init__(self, poly, N, phi=None):
        self.N = N
        self.phi = phi if phi is not None else _phi(N)
        self.poly = poly % self.phi

    @classmethod
    def from_ratfn(cls, r, N):
        phi = _phi(N)
        r = RatFn.coerce(r)
        num = CycElt(r.num, N, phi)
        den = CycElt(r.den, N, phi)
        if den.is_zero():
            raise ZeroDivisionError("pole at root of unity")
        xs = CycElt(_X ** (r.shift % N), N, phi)
        return num * xs * den.inv()

    def _wrap(self, poly):
        return CycElt(poly, self.N, self.phi)

    def _c(self, o):
        if isinstance(o, CycElt):
            return o
        return self._wrap(fmpq_poly([_fq(o)]))

    def __add__(self, o):
        return self._wrap(self.poly + self._c(o).poly)

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(self.poly - self._c(o).poly)

    def __rsub__(self, o):
        return self._c(o) - self

    def __neg__(self):
        return self._wrap(-self.poly)

    def __mul__(self, o):
        return self._wrap(self.poly * self._c(o).poly)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = self.poly.xgcd(self.phi)
        return self._wrap(s / g)

    def __truediv__(self, o):
        return self * self._c(o).inv()

    def __rtruediv__(self, o):
        return self._c(o) * self.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = self._wrap(_ONE)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self):
        return self.poly.is_zero()

    def __eq__(self, o):
        return (self - o).is_zero()

    def __hash__(self):
        return hash(str(self.poly))

    def __repr__(self):
        return f"[{self.poly} mod Phi_{self.N}]"


@lru_cache(maxsize=None)
def _phi(N):
    return cyclotomic_poly(N)


class CyclotomicField(_Field):
    name = "cyclotomic"

    def __init__(self, D, ell):
        self.D = D
        self.ell = ell
        self.N = 2 * ell * D
        self.zero = CycElt(_ZERO, self.N)
        self.one = CycElt(_ONE, self.N)
        self._box_cache = {}

    def embed(self, r):
        return CycElt.from_ratfn(RatFn.coerce(r), self.N)

    def is_zero(self, a):
        return a.is_zero()


def _is_prime(p):
    if p < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % d == 0:
            return p == d
    dd, s = p - 1, 0
    while dd % 2 == 0:
        dd //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        y = pow(a, dd, p)
        if y in (1, p - 1):
            continue
        for _ in range(s - 1):
            y = y * y % p
            if y == p - 1:
                break
        else:
            return False
    return True


def _prime_factors(n):
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def primes_congruent_one(N, count, start=2 ** 30):
    """First ``count`` primes ``p > start`` with ``p = 1 mod N``."""
    out = []
    k = start // N + 1
    while len(out) < count:
        p = k * N + 1
        if _is_prime(p):
            out.append(p)
        k += 1
    return out


def primitive_root_of_unity(N, p, seed=0):
    """An element of exact order ``N`` in ``GF(p)``; needs ``N | p-1``."""
    if (p - 1) % N:
        raise ConfigError(f"{N} does not divide {p}-1")
    rng = random.Random(seed)
    fac = _prime_factors(N)
    while True:
        a = rng.randrange(2, p - 1)
        t = pow(a, (p - 1) // N, p)
        if all(pow(t, N // r, p) != 1 for r in fac):
            return t


class PrimeField(_Field):
    """``GF(p)`` with ``x`` sent to ``x0``.

    Either ``x0`` is a rational number reduced mod ``p`` or, when ``ell`` is
    given, a primitive ``2*ell*D``-th root of unity.
    """

    name = "prime"

    def __init__(self, D, p, x0=None, ell=None, seed=0):
        self.D = D
        self.p = p
        if ell is not None:
            self.x0 = primitive_root_of_unity(2 * ell * D, p, seed)
        else:
            x0 = Fraction(x0)
            if x0.denominator % p == 0:
                raise ConfigError("x0 denominator divisible by p")
            self.x0 = x0.numerator * pow(x0.denominator, -1, p) % p
        self.zero = nmod(0, p)
        self.one = nmod(1, p)
        self._box_cache = {}

    def embed(self, r):
        if isinstance(r, (int, Fraction)):
            r = Fraction(r)
            return nmod(r.numerator, self.p) / nmod(r.denominator, self.p)
        return RatFn.coerce(r).eval_mod(self.x0, self.p)

    def is_zero(self, a):
        return int(a) == 0


def make_field(spec, D, prime=None, seed=0):
    """Evaluation context for ``spec``; ``prime`` selects modular arithmetic."""
    if prime is not None:
        if spec.mode == "root":
            return PrimeField(D, prime, ell=spec.ell, seed=seed)
        if spec.mode == "point":
            return PrimeField(D, prime, x0=spec.x0)
        raise ConfigError("modular evaluation needs a point or a root of unity")
    if spec.mode == "generic":
        return SymbolicField(D)
    if spec.mode == "point":
        return PointField(D, spec.x0)
    return CyclotomicField(D, spec.ell)


# ---------------------------------------------------------------------------
# linear algebra over a context


def _gauss(rows, field):
    """Row reduce a copy of ``rows``; returns (det_sign_product, rank)."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    det = field.one
    rank = 0
    for c in range(nc):
        piv = None
        for r in range(rank, nr):
            if not field.is_zero(m[r][c]):
                piv = r
                break
        if piv is None:
            det = field.zero
            continue
        if piv != rank:
            m[piv], m[rank] = m[rank], m[piv]
            det = -det
        pv = m[rank][c]
        det = det * pv
        inv = field.one / pv
        for r in range(rank + 1, nr):
            if field.is_zero(m[r][c]):
                continue
            f = m[r][c] * inv
            row, prow = m[r], m[rank]
            for k in range(c, nc):
                row[k] = row[k] - f * prow[k]
        rank += 1
    return det, rank


def det(rows, field):
    n = len(rows)
    if n == 0:
        return field.one
    if isinstance(field, PointField):
        return fmpq_mat(n, n, [x for r in rows for x in r]).det()
    if isinstance(field, PrimeField):
        return nmod_mat(n, n, [int(x) for r in rows for x in r], field.p).det()
    d, _ = _gauss(rows, field)
    return d


def rank(rows, field):
    if not rows:
        return 0
    nr, nc = len(rows), len(rows[0])
    if isinstance(field, PointField):
        return fmpq_mat(nr, nc, [x for r in rows for x in r]).rank()
    if isinstance(field, PrimeField):
        return nmod_mat(nr, nc, [int(x) for r in rows for x in r], field.p).rank()
    return _gauss(rows, field)[1]


def solve(A, B, field):
    """Solve ``A X = B`` for square invertible ``A`` (lists of rows)."""
    n = len(A)
    k = len(B[0]) if B else 0
    if isinstance(field, PointField):
        X = fmpq_mat(n, n, [x for r in A for x in r]).solve(fmpq_mat(n, k, [x for r in B for x in r]))
        return [[X[i, j] for j in range(k)] for i in range(n)]
    if isinstance(field, PrimeField):
        X = nmod_mat(n, n, [int(x) for r in A for x in r], field.p).solve(
            nmod_mat(n, k, [int(x) for r in B for x in r], field.p))
        return [[X[i, j] for j in range(k)] for i in range(n)]
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not field.is_zero(M[r][c])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = field.one / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and not field.is_zero(M[r][c]):
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def matmul(A, B, field):
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    out = [[field.zero] * k for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(m):
            a = Ai[t]
            if field.is_zero(a):
                continue
            Bt = B[t]
            row = out[i]
            for j in range(k):
                if not field.is_zero(Bt[j]):
                    row[j] = row[j] + a * Bt[j]
    return out
