"""Searches in the Picard lattice: (-1)-candidates, the infinite (-1)-family,
(-2)-classes and supraminimal classes over a window of exponents.

The supraminimality scan rests on one identity.  For a class with
``C^2 = C.K = -1`` on the cluster of ``t`` and ``V = sum v_i m_i``,

    |m - (d / sqrt t) v|^2 = 2 d^2 + 1 - 2 d V / sqrt t,

so ``V > d sqrt(t)`` forces ``m`` into the open unit ball around
``(d / sqrt t) v``: every ``m_i`` is the floor or the ceiling of its centre
coordinate.  Points of one weight level share a centre and, by the
proximity inequalities, carry nonincreasing multiplicities, so a level is
described by how many of its points round up.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Iterator, Optional, Sequence

from .cluster import Cluster, build_cluster, exceptional_components
from .curves import BranchCurve, SupraInterval, curve_from_class, tropical_key
from .errors import DomainError, InternalLimitError, RankError
from .exactnum import QuadNum, as_fraction, sqrt_rational
from .lattice import DivisorClass, NegativeType, canonical_class, classify_negative, dual_basis

__all__ = [
    "Finding",
    "SearchWindow",
    "infinite_family",
    "minus_one_candidates",
    "minus_two_enumerate",
    "sample_points",
    "scan_cluster",
    "scan_supraminimal",
]


# -- (-1)-candidates from the component systems -------------------------------------------


def minus_one_candidates(c: Cluster) -> list[tuple[int, DivisorClass]]:
    """Integral solutions of ``C . E~_j = delta_jk``, ``C . (-K) = 1`` with ``d > 0``.

    Returns ``(k, C)`` pairs, at most one per ``k``.
    """
    anti = -canonical_class(c.s)
    comps = [anti] + exceptional_components(c)
    try:
        duals = dual_basis(comps)
    except RankError as exc:
        raise InternalLimitError(f"component system is singular for t={c.t}") from exc
    out = []
    for k in range(1, c.s + 1):
        cand = duals[0] + duals[k]
        if cand.is_integral() and cand.degree > 0:
            cls = DivisorClass(int(cand.degree), tuple(int(m) for m in cand.mults))
            if classify_negative(cls) is NegativeType.MINUS_ONE_CLASS:
                out.append((k, cls))
    return out


# -- The infinite family on the nine points p'_8 .. p'_16 ----------------------------------


def _bounded_partitions(length: int, total: int, squares: int, top: int, low: int) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples in ``[low, top]`` with given sum and sum of squares."""
    if length == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    # the first entry is at least the mean and at most what the square budget allows
    hi = min(top, math.isqrt(max(squares, 0)) if squares >= 0 else -1)
    for first in range(hi, low - 1, -1):
        rest_total = total - first
        rest_sq = squares - first * first
        if rest_sq < 0:
            continue
        n = length - 1
        if rest_total > n * first or rest_total < n * low:
            continue
        if n and rest_total * rest_total > n * rest_sq:
            continue
        if n == 0 and (rest_total or rest_sq):
            continue
        yield from ((first,) + tail for tail in _bounded_partitions(n, rest_total, rest_sq, first, low))


def _family_level(k: int) -> list[DivisorClass]:
    out = []
    bound = math.isqrt(16 * k)
    for a in range(-bound, bound + 1):
        for b in _bounded_partitions(8, 3 * a, a * a + 2 * k, 3 * a + 8, -1):
            mults = tuple(x + k for x in b) + (k - 1,)
            degree = a + 3 * k
            if degree >= 0:
                out.append(DivisorClass(degree, mults))
    out.sort(key=lambda c: (c.degree, tuple(-m for m in c.mults)))
    return out


def infinite_family(count: int, *, max_norm: int = 10_000) -> list[DivisorClass]:
    """First ``count`` classes ``E'_16 + N + (N^2/2) K`` with monotone multiplicities.

    ``N`` runs over the classes orthogonal to ``K`` and ``E'_16`` (the E8
    lattice spanned by ``L'-E'_8-E'_9-E'_10`` and ``E'_i - E'_{i+1}``),
    ordered by ``-N^2/2``, then degree, then multiplicities.  Classes live on
    nine points indexed 8..16; render them with ``first_index=8``.
    """
    if count < 1:
        raise DomainError("count must be positive")
    out: list[DivisorClass] = []
    k = 0
    while len(out) < count:
        if k > max_norm:
            raise InternalLimitError(f"fewer than {count} classes with -N^2/2 <= {max_norm}")
        out.extend(_family_level(k))
        k += 1
    return out[:count]


# -- (-2)-classes for t = 7 + 1/n ---------------------------------------------------------


def minus_two_enumerate(s: int, *, bound: str = "paper") -> list[DivisorClass]:
    """Classes ``b(8L - 3(E_1+..+E_7)) - sum_{i>=8} m_i E_i`` with ``C^2 = -2``, ``C.K = 0``.

    ``bound="paper"`` keeps degrees ``d <= 11``; ``bound="exact"`` uses the
    sharp estimate ``b^2 <= 2(s-7)/(16-s)`` that follows from Cauchy-Schwarz.
    """
    if not isinstance(s, int) or not 8 <= s <= 15:
        raise DomainError(f"s must be an integer in 8..15, got {s!r}")
    if bound == "paper":
        b_max = 11 // 8
    elif bound == "exact":
        b_max = math.isqrt(Fraction(2 * (s - 7), 16 - s).__floor__())
    else:
        raise DomainError(f"unknown bound {bound!r}")
    n = s - 7
    out = []
    for b in range(1, b_max + 1):
        for tail in _bounded_partitions(n, 3 * b, b * b + 2, 3 * b, 0):
            out.append(DivisorClass(8 * b, (3 * b,) * 7 + tail))
    return out


# -- Supraminimality scan -------------------------------------------------------------------


@dataclass(frozen=True)
class SearchWindow:
    t_lo: Fraction
    t_hi: Fraction
    max_degree: int

    def __post_init__(self):
        lo, hi = as_fraction(self.t_lo), as_fraction(self.t_hi)
        if lo < 1 or not lo < hi:
            raise DomainError(f"need 1 <= t_lo < t_hi, got [{lo}, {hi}]")
        if not isinstance(self.max_degree, int) or self.max_degree < 1:
            raise DomainError("max_degree must be a positive integer")
        object.__setattr__(self, "t_lo", lo)
        object.__setattr__(self, "t_hi", hi)


@dataclass(frozen=True)
class Finding:
    cls: DivisorClass
    t_sample: Fraction
    curve: BranchCurve
    interval: SupraInterval
    window: tuple[QuadNum, QuadNum]

    def certificate(self, digits: int = 6) -> dict:
        lo, hi = self.window
        return {
            "class": self.cls.render(),
            "sq": self.cls.square(),
            "k": self.cls.kappa_degree(),
            "window": [lo.to_decimal(digits), hi.to_decimal(digits)],
            "window_exact": [str(lo), str(hi)],
            "interval": self.interval.to_json(),
            "t_sample": str(self.t_sample),
            "branches": [list(b) for b in self.curve.branches],
        }


def sample_points(window: SearchWindow, density: int = 1) -> list[Fraction]:
    """Window endpoints and every rational inside with denominator ``<= density * max_degree``.

    On each affine piece ``mu_f(t) / sqrt(t)`` first decreases and then
    increases, so a curve of degree ``<= max_degree`` that is supraminimal
    somewhere in the window is supraminimal at one of its breakpoints
    ``m_i/n_i`` with ``n_i <= d`` inside the window, or at an endpoint.
    """
    lo, hi = window.t_lo, window.t_hi
    pts = {lo, hi}
    for q in range(1, density * window.max_degree + 1):
        for p in range(math.ceil(lo * q), math.floor(hi * q) + 1):
            pts.add(Fraction(p, q))
    return sorted(pts)


def _levels(c: Cluster) -> list[tuple[int, int]]:
    """``(start, size)`` of each run of equal weights (0-based start)."""
    out = []
    pos = 0
    for _, run in groupby(c.weights):
        size = len(list(run))
        out.append((pos, size))
        pos += size
    return out


def _level_options(center: float, size: int) -> list[tuple[float, tuple[int, ...]]]:
    """Cheapest roundings of one level, as ``(cost, mults)`` with cost < 1 (plus slack)."""
    fl = math.floor(center)
    options = []
    for base in {fl - 1, fl, fl + 1}:
        # ``up`` points at base+1, the rest at base
        if base < 0:
            continue
        lo_err = (center - base) ** 2
        hi_err = (base + 1 - center) ** 2
        for up in range(size + 1):
            cost = up * hi_err + (size - up) * lo_err
            if cost < 1 + 1e-9:
                options.append((cost, (base + 1,) * up + (base,) * (size - up)))
    options.sort()
    return options


def _classes_at(c: Cluster, d: int, root_t: float) -> Iterator[tuple[int, ...]]:
    levels = _levels(c)
    wf = [float(c.weights[start]) for start, _ in levels]
    choices = [_level_options(d * w / root_t, size) for w, (start, size) in zip(wf, levels)]
    target_sum, target_sq = 3 * d - 1, d * d + 1
    # suffix bounds on multiplicity sums keep the recursion small
    n = len(levels)

    def rec(i: int, cost: float, acc: list[int], total: int, squares: int):
        if total > target_sum or squares > target_sq:
            return
        if i == n:
            if total == target_sum and squares == target_sq:
                yield tuple(acc)
            return
        for extra, mults in choices[i]:
            if cost + extra >= 1 + 1e-9:
                break
            acc.extend(mults)
            yield from rec(i + 1, cost + extra, acc, total + sum(mults), squares + sum(m * m for m in mults))
            del acc[len(acc) - len(mults):]

    yield from rec(0, 0.0, [], 0, 0)


def scan_cluster(t, max_degree: int) -> list[tuple[Fraction, DivisorClass]]:
    """(-1)-classes of degree ``<= max_degree`` on the cluster of ``t`` with ``V > d sqrt(t)``."""
    t = as_fraction(t)
    c = build_cluster(t)
    root = math.sqrt(t)
    found = []
    for d in range(1, max_degree + 1):
        for mults in _classes_at(c, d, root):
            if any(c.component_pairing(mults, j) < 0 for j in range(1, c.s + 1)):
                continue
            value = sum(v * m for v, m in zip(c.weights, mults))
            if value > 0 and value * value > d * d * t:
                found.append((t, DivisorClass(d, mults)))
    return found


def _scan_chunk(args: tuple[list[Fraction], int]) -> list[tuple[Fraction, DivisorClass]]:
    points, max_degree = args
    out = []
    for t in points:
        out.extend(scan_cluster(t, max_degree))
    return out


def _clip(iv: SupraInterval, lo: Fraction, hi: Fraction) -> Optional[tuple[QuadNum, QuadNum]]:
    a = max(iv.lo, QuadNum(lo))
    b = QuadNum(hi) if iv.hi is None else min(iv.hi, QuadNum(hi))
    if a > b:
        return None
    return a, b


def scan_supraminimal(window: SearchWindow, *, jobs: int = 1, density: int = 1) -> list[Finding]:
    """Supraminimal (-1)-classes over the window, deduplicated by their tropical form.

    Output is ordered by degree, then multiplicities.  ``jobs > 1`` spreads
    the sample points over worker processes; the result does not depend on it.
    """
    points = sample_points(window, density)
    if jobs > 1:
        chunks = [points[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            raw = [hit for part in pool.map(_scan_chunk, [(ch, window.max_degree) for ch in chunks]) for hit in part]
    else:
        raw = _scan_chunk((points, window.max_degree))
    raw.sort(key=lambda hit: (hit[1].degree, len(hit[1].mults), hit[0], hit[1].mults))
    seen: dict = {}
    for t, cls in raw:
        c = build_cluster(t)
        curve = curve_from_class(c, cls)
        key = (cls.degree, tropical_key(curve.branches))
        if key in seen:
            continue
        if curve.mu(t) * curve.mu(t) <= cls.degree ** 2 * t:
            raise InternalLimitError(f"branch data of {cls.render()} disagrees with its value at t={t}")
        iv = next(iv for iv in curve.intervals() if iv.contains(t))
        clipped = _clip(iv, window.t_lo, window.t_hi)
        seen[key] = Finding(cls, t, curve, iv, clipped)
    return sorted(seen.values(), key=lambda f: (f.cls.degree, f.cls.mults))
