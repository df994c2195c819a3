"""Exact evaluation of mu-hat(t) from the known supraminimal curves."""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional

from .curves import (
    BranchCurve,
    affine_pieces,
    fibonacci_curve,
    golden_limit,
    sporadic_catalog,
)
from .errors import DomainError
from .exactnum import QuadNum, as_fraction, quad_cmp, sqrt_rational

__all__ = [
    "CSV_HEADER",
    "MuHatResult",
    "Segment",
    "Status",
    "known_curves",
    "muhat_eval",
    "piecewise_segments",
    "plot_csv",
    "plot_rows",
    "render_affine",
]

CSV_HEADER = ("t", "muhat", "sqrt_t", "status", "witness")


class Status(enum.Enum):
    EXACT_WITNESS = "EXACT_WITNESS"
    EXACT_SQRT = "EXACT_SQRT"
    CONJECTURAL_SQRT = "CONJECTURAL_SQRT"


@dataclass(frozen=True)
class MuHatResult:
    t: Fraction
    value: QuadNum
    status: Status
    witnesses: tuple[str, ...] = ()

    def to_json(self, digits: int = 30) -> dict:
        out = {
            "t": str(self.t),
            "value": str(self.value),
            "value_decimal": self.value.to_decimal(digits),
            "status": self.status.value,
            "witnesses": list(self.witnesses),
        }
        if self.status is Status.CONJECTURAL_SQRT:
            out["note"] = "sqrt(t) is a proven lower bound; equality is conjectural"
        return out


def _fibonacci_around(t: Fraction) -> list[BranchCurve]:
    """Fibonacci curves whose interval contains ``t`` (two at an abutment)."""
    if QuadNum(t) >= golden_limit():
        return []
    i = 1
    while True:
        curve = fibonacci_curve(i)
        hi = curve.interval().hi
        if t < hi:
            return [curve]
        if t == hi:
            return [curve, fibonacci_curve(i + 2)]
        i += 2


def known_curves(t) -> list[BranchCurve]:
    """Curves that may compute mu-hat at ``t``: the relevant Fibonacci ones and the catalog."""
    t = as_fraction(t)
    return _fibonacci_around(t) + sporadic_catalog()


def _is_endpoint(curve: BranchCurve, t: Fraction) -> bool:
    iv = curve.interval()
    return iv is not None and (iv.lo == t or iv.hi == t)


def _is_int_square(t: Fraction) -> bool:
    if t.denominator != 1:
        return False
    return sqrt_rational(t).is_rational


def muhat_eval(t) -> MuHatResult:
    """``max(sqrt(t), mu_f(t)/d)`` over the known curves, with a status flag."""
    t = as_fraction(t)
    if t < 1:
        raise DomainError(f"t must be at least 1, got {t}")
    root = sqrt_rational(t)
    scored = [(c.value(t), c) for c in known_curves(t)]
    best = max(v for v, _ in scored)
    if best > root:
        names = tuple(c.name for v, c in scored if v == best)
        return MuHatResult(t, QuadNum(best), Status.EXACT_WITNESS, names)
    if best == root:
        names = tuple(c.name for v, c in scored if v == best and _is_endpoint(c, t))
        if names:
            return MuHatResult(t, root, Status.EXACT_SQRT, names)
    if _is_int_square(t):
        return MuHatResult(t, root, Status.EXACT_SQRT, ())
    return MuHatResult(t, root, Status.CONJECTURAL_SQRT, ())


# -- Piecewise description ----------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    lo: QuadNum
    hi: QuadNum
    form: str
    witness: str
    status: Status

    def to_json(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "form": self.form,
            "witness": self.witness,
            "status": self.status.value,
        }


def _coef_t(b: Fraction) -> str:
    if b == 1:
        return "t"
    if b.numerator == 1:
        return f"t/{b.denominator}"
    if b.denominator == 1:
        return f"{b}t"
    return f"({b})t"


def render_affine(a: Fraction, b: Fraction) -> str:
    """Text form of ``a + b t``, e.g. ``t/2``, ``(2/5)t``, ``1/3+t/3``."""
    if b == 0:
        return str(a)
    if a == 0:
        return _coef_t(b)
    return f"{a}+{_coef_t(b)}"


def _curve_segments(curve: BranchCurve, lo: QuadNum, hi: QuadNum) -> list[Segment]:
    iv = curve.interval()
    left = max(iv.lo, lo)
    right = min(iv.hi, hi)
    if not left < right:
        return []
    out = []
    d = curve.degree
    for plo, phi, a, b in affine_pieces(curve):
        s_lo = max(QuadNum(plo), left)
        s_hi = right if phi is None else min(QuadNum(phi), right)
        if s_lo < s_hi:
            out.append(Segment(s_lo, s_hi, render_affine(a / d, Fraction(b, d)), curve.name, Status.EXACT_WITNESS))
    return out


def piecewise_segments(lo, hi, *, max_fibonacci_index: int = 15) -> list[Segment]:
    """Ordered segments covering ``[lo, hi]``; gaps are explicit ``sqrt(t)`` segments.

    Fibonacci curves beyond ``max_fibonacci_index`` are folded into a single
    tail segment ending at their accumulation point.
    """
    lo, hi = as_fraction(lo), as_fraction(hi)
    if lo < 1 or not lo < hi:
        raise DomainError(f"need 1 <= lo < hi, got [{lo}, {hi}]")
    qlo, qhi = QuadNum(lo), QuadNum(hi)
    pieces: list[Segment] = []
    i = 1
    while i <= max_fibonacci_index:
        curve = fibonacci_curve(i)
        iv = curve.interval()
        if iv.lo >= qhi:
            break
        pieces.extend(_curve_segments(curve, qlo, qhi))
        i += 2
    else:
        tail_lo = max(fibonacci_curve(i - 2).interval().hi, qlo)
        tail_hi = min(golden_limit(), qhi)
        if tail_lo < tail_hi:
            pieces.append(Segment(tail_lo, tail_hi, "fibonacci_tail", f"C{i}..", Status.EXACT_WITNESS))
    for curve in sporadic_catalog():
        pieces.extend(_curve_segments(curve, qlo, qhi))
    pieces.sort(key=cmp_to_key(lambda x, y: quad_cmp(x.lo, y.lo)))
    out: list[Segment] = []
    cursor = qlo
    for seg in pieces:
        if seg.lo < cursor:
            raise DomainError(f"overlapping witness segments at {seg.lo}")
        if cursor < seg.lo:
            out.append(Segment(cursor, seg.lo, "sqrt(t)", "", Status.CONJECTURAL_SQRT))
        out.append(seg)
        cursor = seg.hi
    if cursor < qhi:
        out.append(Segment(cursor, qhi, "sqrt(t)", "", Status.CONJECTURAL_SQRT))
    return out


# -- Plot data -------------------------------------------------------------------------


def _render(x: QuadNum, digits: Optional[int]) -> str:
    if digits is None and x.is_rational:
        return str(x.a)
    return x.to_decimal(30 if digits is None else digits)


def plot_rows(lo, hi, step, *, decimal: Optional[int] = None) -> Iterable[tuple[str, ...]]:
    lo, hi, step = as_fraction(lo), as_fraction(hi), as_fraction(step)
    if step <= 0:
        raise DomainError("step must be positive")
    if lo < 1 or hi < lo:
        raise DomainError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    k = 0
    while True:
        t = lo + k * step
        if t > hi:
            break
        r = muhat_eval(t)
        yield (
            str(t) if decimal is None else QuadNum(t).to_decimal(decimal),
            _render(r.value, decimal),
            _render(sqrt_rational(t), decimal),
            r.status.value,
            ";".join(r.witnesses),
        )
        k += 1


def plot_csv(lo, hi, step, *, decimal: Optional[int] = None) -> str:
    """CSV text with header ``t,muhat,sqrt_t,status,witness``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(plot_rows(lo, hi, step, decimal=decimal))
    return buf.getvalue()
