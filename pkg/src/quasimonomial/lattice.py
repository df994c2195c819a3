"""Divisor classes on a blowup of the plane and their intersection form.

A class ``C = d*L - sum(m_i * E_i)`` is stored as its degree ``d`` and the
tuple of multiplicities ``m_i``.  The basis is orthogonal with ``L^2 = 1``
and ``E_i^2 = -1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DimensionError, RankError

Coeff = Union[int, Fraction]

__all__ = [
    "DivisorClass",
    "NegativeType",
    "canonical_class",
    "classify_negative",
    "dual_basis",
    "expected_dim",
    "intersect",
    "solve_exact",
]


@dataclass(frozen=True)
class DivisorClass:
    degree: Coeff
    mults: tuple[Coeff, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(self.mults))

    @classmethod
    def line(cls, s: int) -> "DivisorClass":
        return cls(1, (0,) * s)

    @classmethod
    def exceptional(cls, i: int, s: int) -> "DivisorClass":
        """The total transform ``E_i`` (1-based)."""
        mults = [0] * s
        mults[i - 1] = -1
        return cls(0, tuple(mults))

    @property
    def s(self) -> int:
        return len(self.mults)

    def dot(self, other: "DivisorClass") -> Coeff:
        if self.s != other.s:
            raise DimensionError(f"classes on {self.s} and {other.s} points")
        return self.degree * other.degree - sum(a * b for a, b in zip(self.mults, other.mults))

    def square(self) -> Coeff:
        return self.dot(self)

    def kappa_degree(self) -> Coeff:
        """``C . K`` for the canonical class ``K = -3L + sum E_i``."""
        return -3 * self.degree + sum(self.mults)

    def padded(self, s: int) -> "DivisorClass":
        if s < self.s:
            if any(self.mults[s:]):
                raise DimensionError("cannot drop nonzero multiplicities")
            return DivisorClass(self.degree, self.mults[:s])
        return DivisorClass(self.degree, self.mults + (0,) * (s - self.s))

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in (self.degree, *self.mults))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if self.s != other.s:
            raise DimensionError(f"classes on {self.s} and {other.s} points")
        return DivisorClass(
            self.degree + other.degree,
            tuple(a + b for a, b in zip(self.mults, other.mults)),
        )

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.degree, tuple(-m for m in self.mults))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __mul__(self, k: Coeff) -> "DivisorClass":
        return DivisorClass(k * self.degree, tuple(k * m for m in self.mults))

    __rmul__ = __mul__

    def render(self, first_index: int = 1) -> str:
        """Text form such as ``8L-3E1-E8``; zero terms are suppressed."""
        parts = []
        terms = [(self.degree, "L")] + [
            (-m, f"E{i}") for i, m in enumerate(self.mults, start=first_index)
        ]
        for coeff, name in terms:
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            body = name if mag == 1 else (f"{mag}{name}" if Fraction(mag).denominator == 1 else f"({mag}){name}")
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __str__(self):
        return self.render()


def intersect(c1: DivisorClass, c2: DivisorClass) -> Coeff:
    return c1.dot(c2)


def canonical_class(s: int) -> DivisorClass:
    """``K = -3L + E_1 + ... + E_s``."""
    if s < 1:
        raise ValueError("s must be positive")
    return DivisorClass(-3, (-1,) * s)


class NegativeType(enum.Enum):
    MINUS_ONE_CLASS = "MINUS_ONE_CLASS"
    MINUS_TWO_CLASS = "MINUS_TWO_CLASS"
    OTHER = "OTHER"


def classify_negative(c: DivisorClass) -> NegativeType:
    """Numerical type only; irreducibility is not decided here."""
    sq, k = c.square(), c.kappa_degree()
    if sq == -1 and k == -1:
        return NegativeType.MINUS_ONE_CLASS
    if sq == -2 and k == 0:
        return NegativeType.MINUS_TWO_CLASS
    return NegativeType.OTHER


def solve_exact(matrix: Sequence[Sequence[Coeff]], rhs: Sequence[Sequence[Coeff]]) -> list[list[Fraction]]:
    """Solve ``matrix @ X = rhs`` over Q by Gauss-Jordan elimination.

    ``rhs`` holds one right-hand side per row of ``X``'s columns, i.e. it is
    an n-by-k matrix; the n-by-k solution is returned.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise DimensionError("matrix must be square")
    k = len(rhs[0]) if rhs else 0
    aug = [[Fraction(x) for x in row] + [Fraction(x) for x in rrow] for row, rrow in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise RankError("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:n + k] for row in aug]


def _pairing_row(c: DivisorClass) -> list[Coeff]:
    # coefficients of x in  X . c  with X = (x0; x1..xs)
    return [c.degree] + [-m for m in c.mults]


def _from_vector(vec: Sequence[Fraction]) -> DivisorClass:
    vals = [v.numerator if v.denominator == 1 else v for v in vec]
    return DivisorClass(vals[0], tuple(vals[1:]))


def dual_basis(components: Sequence[DivisorClass]) -> list[DivisorClass]:
    """Classes ``D_i`` with ``D_i . components[j] == delta_ij``."""
    n = len(components)
    if n == 0:
        return []
    s = components[0].s
    if n != s + 1:
        raise DimensionError(f"need {s + 1} components on {s} points, got {n}")
    rows = [_pairing_row(c) for c in components]
    identity = [[int(i == j) for j in range(n)] for i in range(n)]
    sol = solve_exact(rows, identity)
    return [_from_vector([sol[r][i] for r in range(n)]) for i in range(n)]


def expected_dim(d: int, mults: Sequence[int]) -> int:
    """``max(0, (d+1)(d+2)/2 - sum m(m+1)/2)``."""
    value = (d + 1) * (d + 2) // 2 - sum(m * (m + 1) // 2 for m in mults)
    return max(0, value)
