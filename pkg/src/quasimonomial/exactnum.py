"""Exact numbers: rationals, real quadratic irrationals and continued fractions.

Rationals are plain :class:`fractions.Fraction` values.  Elements of a real
quadratic field are :class:`QuadNum` instances ``a + b*sqrt(D)``; their order
is decided by exact sign determination, never by floating point.
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Union

from .errors import DomainError

Number = Union[int, Fraction, "QuadNum"]

__all__ = [
    "Ordering",
    "QuadNum",
    "as_fraction",
    "cf_expand",
    "cf_value",
    "parse_rational",
    "quad_cmp",
    "sqrt_rational",
]


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and rational QuadNums to Fraction."""
    if isinstance(x, QuadNum):
        if x.b:
            raise DomainError(f"{x} is irrational")
        return x.a
    if isinstance(x, bool) or not isinstance(x, Rational):
        raise DomainError(f"not a rational number: {x!r}")
    return Fraction(x)


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer; decimal literals like ``"8.05"`` are accepted too."""
    m = _RATIONAL_RE.match(text)
    if m:
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise DomainError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"malformed rational {text!r}") from None


@lru_cache(maxsize=4096)
def _split_square(n: int) -> tuple[int, int]:
    """Return (f, core) with n = f**2 * core and core squarefree."""
    if n < 0:
        raise DomainError("negative radicand")
    if n in (0, 1):
        return (1, n)
    r = math.isqrt(n)
    if r * r == n:
        return (r, 1)
    from sympy import factorint

    f, core = 1, 1
    for p, e in factorint(n).items():
        f *= p ** (e // 2)
        if e % 2:
            core *= p
    return (f, core)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign_single(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of a + b*sqrt(d) for squarefree d > 1 (or b == 0)."""
    sa, sb = _sign(a), _sign(b)
    if sb == 0 or d == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger square wins; equality is impossible for non-square d
    return sa if a * a > b * b * d else sb


def _sign_double(a: Fraction, b: Fraction, p: int, c: Fraction, q: int) -> int:
    """Sign of a + b*sqrt(p) + c*sqrt(q) with p != q squarefree."""
    su = _sign_single(a, b, p)
    sw = _sign(c)
    if sw == 0:
        return su
    if su == 0 or su == sw:
        return su or sw
    # |a + b sqrt p| versus |c| sqrt q, compared after one squaring
    s2 = _sign_single(a * a + b * b * p - c * c * q, 2 * a * b, p)
    if s2 == 0:
        return 0
    return su if s2 > 0 else sw


class QuadNum:
    """An element ``a + b*sqrt(D)`` of a real quadratic field.

    The representation is canonical: ``D`` is squarefree and different from
    1, and ``D == 0`` exactly when ``b == 0``.  Arithmetic is closed within one
    field (rationals mix freely); ordering works across different fields.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int = 0):
        a = as_fraction(a)
        b = as_fraction(b)
        D = int(D)
        if D < 0:
            raise DomainError("only real quadratic fields are supported")
        if b and D:
            f, core = _split_square(D)
            b *= f
            D = core
            if D == 1:
                a, b, D = a + b, Fraction(0), 0
        else:
            b, D = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("QuadNum is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def coerce(cls, x) -> "QuadNum":
        if isinstance(x, QuadNum):
            return x
        return cls(x)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        return as_fraction(self)

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.a, -self.b, self.D)

    # -- arithmetic -------------------------------------------------------------

    def _field(self, other: "QuadNum") -> int:
        if self.D and other.D and self.D != other.D:
            raise ValueError(
                f"cannot combine elements of Q(sqrt({self.D})) and Q(sqrt({other.D}))"
            )
        return self.D or other.D

    def __add__(self, other):
        try:
            other = QuadNum.coerce(other)
        except DomainError:
            return NotImplemented
        D = self._field(other)
        return QuadNum(self.a + other.a, self.b + other.b, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.D)

    def __sub__(self, other):
        try:
            other = QuadNum.coerce(other)
        except DomainError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QuadNum.coerce(other)
        except DomainError:
            return NotImplemented
        D = self._field(other)
        a = self.a * other.a + self.b * other.b * D
        b = self.a * other.b + self.b * other.a
        return QuadNum(a, b, D)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def inverse(self) -> "QuadNum":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadNum division by zero")
        return QuadNum(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        try:
            other = QuadNum.coerce(other)
        except DomainError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadNum.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QuadNum(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- ordering ---------------------------------------------------------------

    def sign(self) -> int:
        return _sign_single(self.a, self.b, self.D)

    def _cmp(self, other) -> int:
        other = QuadNum.coerce(other)
        return int(quad_cmp(self, other))

    def __eq__(self, other):
        try:
            other = QuadNum.coerce(other)
        except DomainError:
            return NotImplemented
        return (self.a, self.b, self.D) == (other.a, other.b, other.D)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self.a or self.b)

    # -- approximation ----------------------------------------------------------

    def floor(self) -> int:
        """Exact floor."""
        if self.b == 0:
            return math.floor(self.a)
        r = self.b * self.b * self.D
        root = math.isqrt(r.numerator * r.denominator)
        approx = self.a + (1 if self.b > 0 else -1) * Fraction(root, r.denominator)
        n = math.floor(approx)
        while QuadNum(n + 1) <= self:
            n += 1
        while QuadNum(n) > self:
            n -= 1
        return n

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def to_decimal(self, digits: int = 30) -> str:
        """Round to ``digits`` places after the point (half up), exactly."""
        if digits < 0:
            raise DomainError("digits must be nonnegative")
        scale = 10**digits
        n = (self * scale + Fraction(1, 2)).floor()
        sign = "-" if n < 0 else ""
        n = abs(n)
        if digits == 0:
            return f"{sign}{n}"
        whole, frac = divmod(n, scale)
        return f"{sign}{whole}.{frac:0{digits}d}"

    # -- text -------------------------------------------------------------------

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"({self.a})+({self.b})*sqrt({self.D})"

    def __repr__(self):
        return f"QuadNum({self.a!s}, {self.b!s}, {self.D})"

    _TEXT_RE = re.compile(
        r"^\s*\(([^()]+)\)\s*\+\s*\(([^()]+)\)\s*\*\s*sqrt\((\d+)\)\s*$"
    )

    @classmethod
    def parse(cls, text: str) -> "QuadNum":
        """Inverse of ``str``: accepts ``"(a)+(b)*sqrt(D)"`` or a plain rational."""
        m = cls._TEXT_RE.match(text)
        if m:
            return cls(parse_rational(m.group(1)), parse_rational(m.group(2)), int(m.group(3)))
        return cls(parse_rational(text))


def quad_cmp(x, y) -> Ordering:
    """Exact three-way comparison of two QuadNums (or rationals), any fields."""
    x = QuadNum.coerce(x)
    y = QuadNum.coerce(y)
    a = x.a - y.a
    if x.D == y.D or x.D == 0 or y.D == 0:
        D = x.D or y.D
        b = x.b - y.b if x.D == y.D else (x.b if x.D else -y.b)
        s = _sign_single(a, b, D)
    else:
        s = _sign_double(a, x.b, x.D, -y.b, y.D)
    return Ordering(s)


def sqrt_rational(q) -> QuadNum:
    """Exact square root of a nonnegative rational as ``c*sqrt(D)``."""
    q = as_fraction(q)
    if q < 0:
        raise DomainError(f"square root of negative number {q}")
    n, d = q.numerator, q.denominator
    f, core = _split_square(n * d)
    c = Fraction(f, d)
    if core == 1 or core == 0:
        return QuadNum(c if core else 0)
    return QuadNum(0, c, core)


def cf_expand(t) -> list[int]:
    """Continued fraction ``[n1, ..., nr]`` of a rational ``t >= 1``.

    The expansion is canonical: the last term is at least 2 when ``r > 1``.
    """
    try:
        t = as_fraction(t)
    except DomainError:
        raise DomainError(f"continued fractions need a rational argument, got {t!r}") from None
    if t < 1:
        raise DomainError(f"t must be at least 1, got {t}")
    p, q = t.numerator, t.denominator
    terms = []
    while q:
        n, r = divmod(p, q)
        terms.append(n)
        p, q = q, r
    return terms


def cf_value(terms: Iterable[int]) -> Fraction:
    """Evaluate a finite continued fraction."""
    terms = list(terms)
    if not terms:
        raise DomainError("empty continued fraction")
    value = Fraction(terms[-1])
    for n in reversed(terms[:-1]):
        value = n + 1 / value
    return value
