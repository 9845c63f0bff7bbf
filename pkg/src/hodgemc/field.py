"""Exact scalars in Q(i).

A scalar is a pair of gmpy2 rationals.  The class is immutable by
convention: nothing in the package assigns to ``re``/``im`` after
construction.
"""
from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

from .errors import InputError

_MPQ = type(mpq(0))


def _q(x) -> "mpq":
    if type(x) is _MPQ:
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars")
    return mpq(x)


class QI:
    """Element re + i*im of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    # -- coercion -------------------------------------------------------
    @staticmethod
    def coerce(x) -> "QI":
        if type(x) is QI:
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        return QI(x)

    # -- predicates -----------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic -----------------------------------------------------
    def __add__(self, o):
        if type(o) is not QI:
            try:
                o = QI.coerce(o)
            except (TypeError, ValueError):
                return NotImplemented
        return _mk(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        if type(o) is not QI:
            try:
                o = QI.coerce(o)
            except (TypeError, ValueError):
                return NotImplemented
        return _mk(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return QI.coerce(o) - self

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, o):
        if type(o) is not QI:
            try:
                o = QI.coerce(o)
            except (TypeError, ValueError):
                return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b:
            if not d:
                return _mk(a * c, _ZQ)
            return _mk(a * c, a * d)
        if not d:
            return _mk(a * c, b * c)
        return _mk(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inv(self) -> "QI":
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero scalar")
            return _mk(1 / a, _ZQ)
        n = a * a + b * b
        return _mk(a / n, -b / n)

    def __truediv__(self, o):
        if type(o) is not QI:
            o = QI.coerce(o)
        return self * o.inv()

    def __rtruediv__(self, o):
        return QI.coerce(o) * self.inv()

    def conj(self) -> "QI":
        if not self.im:
            return self
        return _mk(self.re, -self.im)

    def norm2(self):
        return self.re * self.re + self.im * self.im

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, o):
        if type(o) is not QI:
            try:
                o = QI.coerce(o)
            except (TypeError, ValueError):
                return NotImplemented
        return self.re == o.re and self.im == o.im

    def __ne__(self, o):
        r = self.__eq__(o)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- display --------------------------------------------------------
    def __repr__(self):
        return f"QI({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


_new = object.__new__
_ZQ = mpq(0)


def _mk(re, im) -> QI:
    z = _new(QI)
    z.re = re
    z.im = im
    return z


ZERO = _mk(mpq(0), mpq(0))
ONE = _mk(mpq(1), mpq(0))
I = _mk(mpq(0), mpq(1))


def sub_mul(a: QI, f: QI, b: QI) -> QI:
    """a - f*b with a single allocation (hot path of row reduction)."""
    fr, fi, br, bi = f.re, f.im, b.re, b.im
    z = _new(QI)
    if not fi and not bi:
        z.re = a.re - fr * br
        z.im = a.im
    else:
        z.re = a.re - (fr * br - fi * bi)
        z.im = a.im - (fr * bi + fi * br)
    return z


def qi(re=0, im=0) -> QI:
    return QI(re, im)


def _fmt_q(x) -> str:
    return str(x)


def format_scalar(z: QI) -> str:
    """Compact human form: '3/2', '-i', '1/2+3i'."""
    if not z.im:
        return _fmt_q(z.re)
    if z.im == 1:
        ims = "i"
    elif z.im == -1:
        ims = "-i"
    else:
        ims = _fmt_q(z.im) + "i"
    if not z.re:
        return ims
    sign = "" if ims.startswith("-") else "+"
    return _fmt_q(z.re) + sign + ims


def _parse_q(s: str):
    s = s.strip()
    if not s:
        raise InputError(f"empty rational {s!r}")
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            n, d = int(num), int(den)
            if d == 0:
                raise InputError(f"zero denominator in {s!r}")
            return mpq(n, d)
        return mpq(int(s))
    except ValueError:
        raise InputError(f"malformed rational {s!r}") from None


def parse_scalar(s) -> QI:
    """Accepts 'p/q', 'a+bi'-style strings, ints, or {"re","im"} dicts."""
    if type(s) is QI:
        return s
    if isinstance(s, bool):
        raise InputError(f"malformed scalar {s!r}")
    if isinstance(s, int):
        return QI(s)
    if isinstance(s, dict):
        extra = set(s) - {"re", "im"}
        if extra:
            raise InputError(f"unexpected scalar keys {sorted(extra)}")
        re = s.get("re", "0")
        im = s.get("im", "0")
        if not isinstance(re, (str, int)) or not isinstance(im, (str, int)):
            raise InputError(f"malformed scalar {s!r}")
        return _mk(_parse_q(str(re)), _parse_q(str(im)))
    if not isinstance(s, str):
        raise InputError(f"malformed scalar {s!r}")
    t = s.replace(" ", "")
    if not t.endswith("i"):
        return _mk(_parse_q(t), _ZQ)
    body = t[:-1]
    # split real and imaginary parts at the last sign that is not leading
    cut = -1
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] != "/":
            cut = k
            break
    if cut == -1:
        re_s, im_s = "0", body
    else:
        re_s, im_s = body[:cut], body[cut:]
    if im_s in ("", "+"):
        im_s = "1"
    elif im_s == "-":
        im_s = "-1"
    return _mk(_parse_q(re_s), _parse_q(im_s))


def scalar_to_json(z: QI):
    """Canonical JSON: real scalars as 'p/q' strings, others as {"re","im"}."""
    if not z.im:
        return _fmt_q(z.re)
    return {"re": _fmt_q(z.re), "im": _fmt_q(z.im)}
