"""Exact scalar field: rational functions of a formal circle constant.

Every constant used by the kernel constructors (powers of 2*pi*i,
factorials, the angular-form constants with odd powers of pi) lives in
Q(i)(pi): Gaussian rationals extended by one formal transcendental ``pi``.
No floating point enters until numeric evaluation.
"""

from __future__ import annotations

import math
from fractions import Fraction


class GaussianRational:
    """a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inverse(self):
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * other.inverse()

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def to_complex(self):
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i" if self.im != 1 else "i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        ipart = "i" if mag == 1 else f"{mag}*i"
        return f"({self.re}{sign}{ipart})"

    __repr__ = __str__


_GR_ZERO = GaussianRational(0)
_GR_ONE = GaussianRational(1)


# -- dense univariate polynomials in pi over Q(i), low degree first --------

def _ptrim(p):
    while p and not p[-1]:
        p = p[:-1]
    return p


def _padd(p, q):
    n = max(len(p), len(q))
    out = []
    for k in range(n):
        a = p[k] if k < len(p) else _GR_ZERO
        b = q[k] if k < len(q) else _GR_ZERO
        out.append(a + b)
    return _ptrim(tuple(out))


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [_GR_ZERO] * (len(p) + len(q) - 1)
    for a, ca in enumerate(p):
        if not ca:
            continue
        for b, cb in enumerate(q):
            if cb:
                out[a + b] = out[a + b] + ca * cb
    return _ptrim(tuple(out))


def _pscale(p, c):
    return _ptrim(tuple(x * c for x in p))


def _pdivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [_GR_ZERO] * max(0, len(p) - len(q) + 1)
    inv_lead = q[-1].inverse()
    for k in range(len(rem) - len(q), -1, -1):
        c = rem[k + len(q) - 1] * inv_lead
        if not c:
            continue
        quo[k] = c
        for j, qc in enumerate(q):
            rem[k + j] = rem[k + j] - c * qc
    return _ptrim(tuple(quo)), _ptrim(tuple(rem))


def _pgcd(p, q):
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return p


class Scalar:
    """Element of Q(i)(pi), stored as a reduced fraction of pi-polynomials.

    The representation is canonical: numerator and denominator share no
    polynomial factor and the denominator is monic, so structural equality
    is mathematical equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(_GR_ONE,), _normalized=False):
        if not _normalized:
            num = _ptrim(tuple(num))
            den = _ptrim(tuple(den))
            if not den:
                raise ZeroDivisionError("scalar with zero denominator")
            if not num:
                den = (_GR_ONE,)
            else:
                # a common factor can only exist when both sides are
                # non-constant; constants are units in Q(i)[pi]
                if len(num) > 1 and len(den) > 1:
                    g = _pgcd(num, den)
                    if len(g) > 1:
                        num = _pdivmod(num, g)[0]
                        den = _pdivmod(den, g)[0]
                lead = den[-1]
                if lead != _GR_ONE:
                    inv = lead.inverse()
                    num = _pscale(num, inv)
                    den = _pscale(den, inv)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(k):
        return Scalar((GaussianRational(k),)) if k else Scalar()

    @staticmethod
    def rational(p, q=1):
        return Scalar((GaussianRational(Fraction(p, q)),))

    @staticmethod
    def imaginary(k=1):
        return Scalar((GaussianRational(0, k),))

    @staticmethod
    def pi_power(k=1):
        if k >= 0:
            return Scalar((_GR_ZERO,) * k + (_GR_ONE,))
        return Scalar((_GR_ONE,), (_GR_ZERO,) * (-k) + (_GR_ONE,))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        return Scalar(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Scalar(_pneg(self.num), self.den, _normalized=True)

    def __mul__(self, other):
        return Scalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar(self.den, self.num)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return Scalar(
            tuple(c.conjugate() for c in self.num),
            tuple(c.conjugate() for c in self.den),
        )

    # -- predicates and conversions -------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == (_GR_ONE,) and self.den == (_GR_ONE,)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def as_int(self):
        """Value as a plain int, or None if not a constant integer."""
        if self.is_zero():
            return 0
        if self.den != (_GR_ONE,) or len(self.num) != 1:
            return None
        c = self.num[0]
        if c.im or c.re.denominator != 1:
            return None
        return int(c.re)

    def evalf(self, pi_value=math.pi):
        num = 0j
        for k, c in enumerate(self.num):
            num += c.to_complex() * pi_value**k
        den = 0j
        for k, c in enumerate(self.den):
            den += c.to_complex() * pi_value**k
        return num / den

    # -- printing --------------------------------------------------------

    @staticmethod
    def _poly_str(p):
        if not p:
            return "0"
        parts = []
        for k, c in enumerate(p):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                pik = "pi" if k == 1 else f"pi^{k}"
                parts.append(pik if c == _GR_ONE else f"{c}*{pik}")
        return " + ".join(parts)

    def __str__(self):
        ns = self._poly_str(self.num)
        if self.den == (_GR_ONE,):
            return ns
        ds = self._poly_str(self.den)
        if len([c for c in self.num if c]) > 1:
            ns = f"({ns})"
        return f"{ns}/({ds})"

    __repr__ = __str__


ZERO = Scalar.from_int(0)
ONE = Scalar.from_int(1)
I = Scalar.imaginary()
PI = Scalar.pi_power()
TWO_PI_I = Scalar.from_int(2) * PI * I


def factorial(k):
    return Scalar.from_int(math.factorial(k))
