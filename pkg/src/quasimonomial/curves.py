"""Supraminimal curves described by their branches at the valuation center.

A plane curve of degree ``d`` whose germ at the center splits into branches
with Puiseux data ``(n_i, m_i)`` (multiplicity ``n_i``, first characteristic
exponent ``m_i / n_i``) has, for a very general quasimonomial valuation of
exponent ``t``, value

    mu_f(t) = sum_i min(n_i * t, m_i).

The curve is supraminimal where ``mu_f(t) > d * sqrt(t)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import zip_longest
from typing import Iterator, Optional, Sequence

from .cluster import Cluster, exceptional_components
from .errors import DomainError
from .exactnum import QuadNum, as_fraction, sqrt_rational
from .lattice import DivisorClass

__all__ = [
    "BranchCurve",
    "SupraInterval",
    "affine_pieces",
    "branches_from_class",
    "catalog_json",
    "curve_from_class",
    "euclid_mults",
    "fibonacci",
    "fibonacci_curve",
    "fibonacci_curves",
    "golden_limit",
    "mu_trop",
    "mult_seq_from_branches",
    "sporadic_catalog",
    "supraminimal_interval",
    "supraminimal_intervals",
    "table_discrepancies",
    "tropical_key",
]


@dataclass(frozen=True)
class SupraInterval:
    """Closed interval ``[lo_root**2, hi_root**2]`` in ``t``.

    Endpoints are kept through their square roots so that ``sqrt(t)`` at an
    endpoint is available exactly; ``hi_root`` is ``None`` for an unbounded
    interval.
    """

    lo_root: QuadNum
    hi_root: Optional[QuadNum]

    @property
    def lo(self) -> QuadNum:
        return self.lo_root * self.lo_root

    @property
    def hi(self) -> Optional[QuadNum]:
        return None if self.hi_root is None else self.hi_root * self.hi_root

    def contains(self, t, *, closed: bool = True) -> bool:
        t = QuadNum.coerce(t)
        if closed:
            return self.lo <= t and (self.hi is None or t <= self.hi)
        return self.lo < t and (self.hi is None or t < self.hi)

    def endpoints(self) -> tuple[QuadNum, Optional[QuadNum]]:
        return self.lo, self.hi

    def to_json(self) -> list:
        return [str(self.lo), None if self.hi is None else str(self.hi)]

    def __str__(self):
        hi = "inf" if self.hi is None else str(self.hi)
        return f"[{self.lo}, {hi}]"


def euclid_mults(n: int, m: int) -> list[int]:
    """Multiplicity sequence of a branch ``(n, m)`` along its infinitely near points.

    This is the Euclidean algorithm on ``(m, n)``: ``n`` repeated
    ``floor(m/n)`` times, then the same for the remainder.
    """
    if n <= 0 or m < n:
        raise DomainError(f"need 0 < n <= m, got ({n}, {m})")
    seq = []
    while n:
        q, r = divmod(m, n)
        seq.extend([n] * q)
        m, n = n, r
    return seq


def mult_seq_from_branches(branches: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    """Aligned sum of the branch multiplicity sequences.

    All branches are taken to follow the same chain of free points, which is
    the situation on the cluster of a very general quasimonomial valuation.
    """
    columns = zip_longest(*(euclid_mults(n, m) for n, m in branches), fillvalue=0)
    return tuple(sum(col) for col in columns)


def tropical_key(branches: Sequence[tuple[int, int]]) -> tuple[tuple[Fraction, int], ...]:
    """Canonical form of ``sum min(n t, m)``: total ``n`` per exponent ``m/n``."""
    acc: dict[Fraction, int] = {}
    for n, m in branches:
        r = Fraction(m, n)
        acc[r] = acc.get(r, 0) + n
    return tuple(sorted(acc.items()))


@dataclass(frozen=True)
class BranchCurve:
    name: str
    degree: int
    branches: tuple[tuple[int, int], ...]
    mult_seq: Optional[tuple[int, ...]] = None
    table_interval: Optional[SupraInterval] = field(default=None, compare=False)
    source: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(tuple(b) for b in self.branches))
        if self.mult_seq is not None:
            object.__setattr__(self, "mult_seq", tuple(self.mult_seq))

    def mu(self, t) -> Fraction:
        return mu_trop(self, t)

    def value(self, t) -> Fraction:
        """``mu_f(t) / d``."""
        return mu_trop(self, t) / self.degree

    def intervals(self) -> list[SupraInterval]:
        return supraminimal_intervals(self)

    def interval(self) -> Optional[SupraInterval]:
        return supraminimal_interval(self)

    def as_class(self) -> DivisorClass:
        if self.mult_seq is None:
            raise DomainError(f"{self.name} has no multiplicity sequence")
        return DivisorClass(self.degree, self.mult_seq)

    def tropical_key(self):
        return tropical_key(self.branches)

    def to_json(self) -> dict:
        iv = self.interval()
        out = {
            "name": self.name,
            "degree": self.degree,
            "branches": [list(b) for b in self.branches],
            "mult_seq": None if self.mult_seq is None else list(self.mult_seq),
            "interval": None if iv is None else iv.to_json(),
        }
        if self.table_interval is not None:
            out["table_interval"] = self.table_interval.to_json()
            out["table_matches"] = _table_status(self, iv)
        return out


def mu_trop(curve: BranchCurve, t) -> Fraction:
    t = as_fraction(t)
    return sum((min(n * t, Fraction(m)) for n, m in curve.branches), Fraction(0))


def affine_pieces(curve: BranchCurve) -> list[tuple[Fraction, Optional[Fraction], Fraction, int]]:
    """``(lo, hi, a, b)`` with ``mu_f(t) = a + b t`` on ``[lo, hi]``, for ``t >= 1``."""
    cuts = sorted({Fraction(m, n) for n, m in curve.branches if Fraction(m, n) > 1})
    bounds: list = [Fraction(1)] + cuts + [None]
    pieces = []
    for lo, hi in zip(bounds, bounds[1:]):
        a = sum(Fraction(m) for n, m in curve.branches if Fraction(m, n) <= lo)
        b = sum(n for n, m in curve.branches if Fraction(m, n) > lo)
        pieces.append((lo, hi, a, b))
    return pieces


def _piece_parts(lo, hi, a, b, d) -> list[tuple[QuadNum, Optional[QuadNum]]]:
    # in u = sqrt(t): supraminimal iff b u^2 - d u + a > 0
    left = sqrt_rational(lo)
    right = None if hi is None else sqrt_rational(hi)
    if b == 0:
        top = QuadNum(a / d)
        if top <= left:
            return []
        return [(left, top if right is None or top < right else right)]
    disc = d * d - 4 * a * b
    if disc <= 0:
        return [(left, right)]
    sq = sqrt_rational(disc)
    u1 = (QuadNum(d) - sq) / (2 * b)
    u2 = (QuadNum(d) + sq) / (2 * b)
    parts = []
    if u1 > left:
        parts.append((left, u1 if right is None or u1 < right else right))
    if right is None or u2 < right:
        parts.append((u2 if u2 > left else left, right))
    return parts


def supraminimal_intervals(curve: BranchCurve) -> list[SupraInterval]:
    """Closures of the connected components of ``{t >= 1 : mu_f(t) > d sqrt(t)}``."""
    d = curve.degree
    merged: list[list] = []
    for lo, hi, a, b in affine_pieces(curve):
        for left, right in _piece_parts(lo, hi, a, b, d):
            if merged and merged[-1][1] is not None and merged[-1][1] == left:
                merged[-1][1] = right
            else:
                merged.append([left, right])
    return [SupraInterval(l, r) for l, r in merged if r is None or l < r]


def supraminimal_interval(curve: BranchCurve) -> Optional[SupraInterval]:
    """The supraminimal interval, or ``None`` if the curve is never supraminimal."""
    found = supraminimal_intervals(curve)
    if not found:
        return None
    if len(found) > 1:
        raise DomainError(f"{curve.name} is supraminimal on {len(found)} disjoint intervals")
    return found[0]


# -- Fibonacci family -------------------------------------------------------------


@lru_cache(maxsize=None)
def fibonacci(k: int) -> int:
    """``F_k`` with ``F_{-1} = 1``, ``F_0 = 0``."""
    if k < -1:
        raise DomainError("Fibonacci index must be at least -1")
    if k == -1:
        return 1
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def fibonacci_curve(i: int) -> BranchCurve:
    """Rational unicuspidal curve ``C_i`` of degree ``F_i`` (``i`` odd)."""
    if not isinstance(i, int) or i < 1 or i % 2 == 0:
        raise DomainError(f"Fibonacci curves are indexed by odd positive integers, got {i!r}")
    branch = (fibonacci(i - 2), fibonacci(i + 2))
    return BranchCurve(f"C{i}", fibonacci(i), (branch,), tuple(euclid_mults(*branch)))


def fibonacci_curves(start: int = 1) -> Iterator[BranchCurve]:
    i = start if start % 2 else start + 1
    while True:
        yield fibonacci_curve(i)
        i += 2


def golden_limit() -> QuadNum:
    """``phi**4 = (7 + 3 sqrt 5) / 2``, where the Fibonacci intervals accumulate."""
    return QuadNum(Fraction(7, 2), Fraction(3, 2), 5)


# -- Sporadic catalog ----------------------------------------------------------------


def _q(a, b=0, D=0) -> QuadNum:
    return QuadNum(Fraction(a), Fraction(b), D)


_PHI_SQ = _q(Fraction(3, 2), Fraction(1, 2), 5)

# name, degree, branches, printed multiplicity sequence, printed interval roots
_SPORADIC = (
    ("D1", 3, ((1, 1), (1, 7)), (2,) + (1,) * 6,
     (_PHI_SQ, _q(Fraction(8, 3))), None),
    ("D2*", 48, ((1, 7), (8, 57), (8, 57), (1, 8)), (18,) * 7 + (3,) + (2,) * 7,
     (_q(Fraction(24, 17), Fraction(1, 17), 457), _q(24, -1, 455)), "D2"),
    ("C1**", 64, ((1, 7), (1, 7), (15, 107), (7, 50)), (24,) * 7 + (3,) * 7 + (1,) * 2,
     (_q(Fraction(32, 7), Fraction(-1, 7), 177), _q(Fraction(16, 11), Fraction(1, 11), 179)), "C1*"),
    ("D1*", 24, ((1, 7), (7, 50), (1, 8)), (9,) * 7 + (2,) + (1,) * 6,
     (_q(Fraction(3, 2), Fraction(1, 4), 22), _q(12, -1, 87)), "D1"),
    ("C5*", 40, ((1, 7), (1, 7), (13, 93)), (15,) * 7 + (2,) * 6 + (1,) * 2,
     (_q(Fraction(20, 13), Fraction(1, 13), 218), _q(Fraction(107, 40))), "C5"),
    ("C3*", 16, ((1, 7), (5, 36)), (6,) * 7 + (1,) * 5,
     (_q(Fraction(8, 5), Fraction(1, 5), 29), _q(Fraction(43, 16))), "C3"),
    ("D3", 35, ((12, 87), (1, 8)), (13,) * 7 + (4,) + (3,) * 3,
     (_q(Fraction(35, 13)), _q(Fraction(35, 2), Fraction(-1, 2), 877)), None),
    ("C1*", 8, ((1, 7), (2, 15)), (3,) * 7 + (1,) * 2,
     (_q(2, Fraction(1, 2), 2), _q(Fraction(22, 8))), "C1"),
    ("D2", 6, ((1, 1), (1, 8), (1, 8)), (3,) + (2,) * 7,
     (_q(Fraction(3, 2), Fraction(1, 2), 7), _q(Fraction(17, 6))), None),
)


@lru_cache(maxsize=1)
def _catalog() -> tuple[BranchCurve, ...]:
    rows = []
    for name, d, branches, seq, (lo, hi), source in _SPORADIC:
        rows.append(BranchCurve(name, d, branches, seq, SupraInterval(lo, hi), source))
    return tuple(rows)


def sporadic_catalog() -> list[BranchCurve]:
    """The nine sporadic supraminimal curves, in the printed table order."""
    return list(_catalog())


def _table_status(curve: BranchCurve, derived: Optional[SupraInterval]) -> str:
    printed = curve.table_interval
    if printed is None or derived is None:
        return "n/a"
    if (derived.lo, derived.hi) == (printed.lo, printed.hi):
        return "verbatim"
    if (derived.lo, derived.hi) == (printed.hi, printed.lo):
        return "transposed"
    return "mismatch"


def table_discrepancies() -> list[tuple[str, str]]:
    """Rows whose printed interval differs from the derived one, with the kind of difference."""
    out = []
    for curve in _catalog():
        status = _table_status(curve, curve.interval())
        if status != "verbatim":
            out.append((curve.name, status))
    return out


def catalog_json() -> list[dict]:
    return [c.to_json() for c in _catalog()]


# -- From divisor classes ---------------------------------------------------------------


def branches_from_class(c: Cluster, cls: DivisorClass) -> tuple[tuple[int, int], ...]:
    """Branch data of a curve of class ``cls`` on the cluster of ``c``.

    The strict transform meets ``E~_j`` in ``C . E~_j`` points; each is a
    curvette of ``E_j``, i.e. a branch whose data is the ray of ``E_j``.
    """
    if cls.s != c.s:
        raise DomainError(f"class on {cls.s} points, cluster has {c.s}")
    out = []
    for comp, ray in zip(exceptional_components(c), c.rays):
        k = cls.dot(comp)
        if k < 0:
            raise DomainError(f"class {cls.render()} meets {comp.render()} negatively")
        out.extend([ray] * int(k))
    return tuple(out)


def curve_from_class(c: Cluster, cls: DivisorClass, name: Optional[str] = None) -> BranchCurve:
    mults = list(cls.mults)
    while mults and mults[-1] == 0:
        mults.pop()
    return BranchCurve(
        name or cls.render(),
        int(cls.degree),
        branches_from_class(c, cls),
        tuple(int(m) for m in mults),
    )
