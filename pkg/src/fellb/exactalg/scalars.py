"""Exact arithmetic in the Gaussian rationals Q(i).

Rational parts are ``gmpy2.mpq``.  Values are immutable and hashable, and
compare equal to plain ints/fractions when the imaginary part vanishes.
"""

import re
from fractions import Fraction

from gmpy2 import mpq

_new = object.__new__


class Gauss:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @staticmethod
    def _raw(re, im):
        g = _new(Gauss)
        g.re = re
        g.im = im
        return g

    def __add__(self, other):
        if type(other) is not Gauss:
            other = coerce(other)
        return Gauss._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not Gauss:
            other = coerce(other)
        return Gauss._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return coerce(other) - self

    def __mul__(self, other):
        if type(other) is not Gauss:
            other = coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Gauss._raw(a * c, b)
        return Gauss._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not Gauss:
            other = coerce(other)
        c, d = other.re, other.im
        n = c * c + d * d
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b = self.re, self.im
        return Gauss._raw((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return coerce(other) / self

    def __neg__(self):
        return Gauss._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        if not self.im:
            return self
        return Gauss._raw(self.re, -self.im)

    def norm2(self):
        """|z|^2, a rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is not Gauss:
            try:
                other = coerce(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return "Gauss(%r)" % str(self)

    def __str__(self):
        return format_scalar(self)

    def __reduce__(self):
        return (parse_scalar, (str(self),))


ZERO = Gauss(0)
ONE = Gauss(1)
I = Gauss(0, 1)


def coerce(x):
    if type(x) is Gauss:
        return x
    if isinstance(x, (int, Fraction)) or type(x) is type(mpq(0)):
        return Gauss._raw(mpq(x), mpq(0))
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact: %r" % (x,))
    raise TypeError("cannot coerce %r to a Gaussian rational" % (x,))


def _fmt_q(q):
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def format_scalar(z):
    """Render as ``a/b+c/d*i``; zero parts are dropped."""
    re_, im = z.re, z.im
    if not im:
        return _fmt_q(re_)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = _fmt_q(im) + "*i"
    if not re_:
        return ims
    if ims.startswith("-"):
        return _fmt_q(re_) + ims
    return _fmt_q(re_) + "+" + ims


_RAT = r"[+-]?\d+(?:/\d+)?"
_COEF = r"(?:\d+(?:/\d+)?\*?)?i"
# a real part, when present, must be followed by a signed imaginary part
_IMAG = re.compile(r"^(?:(?P<re>%s)(?P<im>[+-]%s)|(?P<pure>[+-]?%s))$" % (_RAT, _COEF, _COEF))
_REAL = re.compile(r"^%s$" % _RAT)


def parse_scalar(text):
    """Parse ``"a/b+c/d*i"`` and the obvious abbreviations (``"i"``, ``"-1/2"``...)."""
    if isinstance(text, (int, Fraction)):
        return coerce(text)
    s = str(text).replace(" ", "")
    if _REAL.match(s):
        return Gauss._raw(mpq(s.lstrip("+")), mpq(0))
    m = _IMAG.match(s)
    if not m:
        raise ValueError("not a Gaussian rational: %r" % (text,))
    coeff = (m.group("im") or m.group("pure"))[:-1].rstrip("*")
    if coeff.startswith("+"):
        coeff = coeff[1:]
    if coeff == "":
        im = mpq(1)
    elif coeff == "-":
        im = mpq(-1)
    else:
        im = mpq(coeff)
    re_ = mpq(m.group("re").lstrip("+")) if m.group("re") else mpq(0)
    return Gauss._raw(re_, im)
