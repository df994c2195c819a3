"""Unloading of multiplicity vectors, valuation ideals and values of classes.

A multiplicity vector ``m`` stands for the exceptional divisor
``D = -sum m_i E_i``.  Unloading subtracts exceptional components ``E~_j``
met negatively by ``D`` until ``D`` is nef on them.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .cluster import Cluster, Normalization, build_cluster
from .errors import DimensionError, DomainError, InternalLimitError
from .exactnum import as_fraction
from .lattice import DivisorClass, expected_dim

__all__ = [
    "anticanonical_by_unloading",
    "in_A",
    "in_B",
    "is_nef",
    "minus_kappa_minus_line_by_unloading",
    "unload",
    "valuation_ideal_mults",
    "value_of_class",
    "violated",
]

Chooser = Callable[[list[int]], int]


def violated(c: Cluster, mults: Sequence[int]) -> list[int]:
    """Indices ``j`` (1-based) with ``D . E~_j < 0``."""
    return [j for j in range(1, c.s + 1) if c.component_pairing(mults, j) < 0]


def is_nef(c: Cluster, mults: Sequence[int]) -> bool:
    """Proximity inequalities ``m_j >= sum_{p_i > p_j} m_i`` for all ``j``."""
    return not violated(c, mults)


def _component_gram(c: Cluster) -> np.ndarray:
    """``G[k, j] = -E~_j . E~_k``: the change of ``D . E~_k`` when ``E~_j`` is unloaded."""
    s = c.s
    a = np.zeros((s, s))
    for j in range(s):
        a[j, j] = 1.0
        for i in c.successors[j]:
            a[i - 1, j] = -1.0
    return a.T @ a


def _relaxed_start(c: Cluster, pairing: Sequence[int]) -> list[int]:
    """Integer lower bound for how often each component gets unloaded.

    The real least solution of ``z >= 0, q + G z >= 0`` (a Z-matrix
    complementarity problem, solved by growing the active set) is below the
    integer one; rounding down with a safety margin keeps it below.
    """
    g = _component_gram(c)
    q = np.asarray(pairing, dtype=float)
    active = np.zeros(c.s, dtype=bool)
    z = np.zeros(c.s)
    while True:
        w = q + g @ z
        new = (w < 0) & ~active
        if not new.any():
            break
        active |= new
        idx = np.flatnonzero(active)
        z = np.zeros(c.s)
        z[idx] = np.linalg.solve(g[np.ix_(idx, idx)], -q[idx])
    margin = 2.0 + 1e-9 * float(np.abs(z).max(initial=0.0))
    return [max(0, math.floor(x - margin)) for x in z]


def _apply(c: Cluster, m: list[int], j: int, times: int) -> None:
    m[j - 1] += times
    for i in c.successors[j - 1]:
        m[i - 1] -= times


def unload(
    c: Cluster,
    mults: Sequence[int],
    *,
    batch: bool = True,
    choose: Optional[Chooser] = None,
    max_steps: Optional[int] = None,
) -> tuple[int, ...]:
    """Unload ``mults`` on the cluster until every proximity inequality holds.

    With ``batch`` the vector is first advanced by a rounded-down real
    solution and each violated component is then fixed in one go; neither
    step overshoots the unit process, so both give the same final vector.
    ``choose`` picks among the violated indices (default: smallest first).
    """
    m = [int(x) for x in mults]
    if len(m) != c.s:
        raise DimensionError(f"expected {c.s} multiplicities, got {len(m)}")
    if max_steps is None:
        max_steps = 4 * (sum(abs(x) for x in m) + 1) * c.s * c.s
    pick = choose or min
    if batch and violated(c, m):
        start = _relaxed_start(c, [c.component_pairing(m, j) for j in range(1, c.s + 1)])
        for j, times in enumerate(start, start=1):
            if times:
                _apply(c, m, j, times)
    steps = 0
    while True:
        bad = violated(c, m)
        if not bad:
            return tuple(m)
        j = pick(bad)
        times = 1
        if batch:
            deficit = -c.component_pairing(m, j)
            times = -(-deficit // (1 + len(c.successors[j - 1])))
        _apply(c, m, j, times)
        steps += 1
        if steps > max_steps:
            raise InternalLimitError(f"unloading did not finish within {max_steps} steps")


def random_chooser(rng: random.Random) -> Chooser:
    return lambda bad: rng.choice(bad)


def valuation_ideal_mults(c: Cluster, m: int) -> tuple[int, ...]:
    """Multiplicities of a general member of ``{f : ord_{E_s} f >= m}``."""
    if not isinstance(m, int) or m <= 0:
        raise DomainError(f"m must be a positive integer, got {m!r}")
    start = [0] * c.s
    start[-1] = m
    return unload(c, start)


def value_of_class(
    c: Cluster,
    cls: DivisorClass,
    normalization: Normalization = Normalization.NORMALIZED,
) -> Fraction:
    """``sum v_i m_i``: the value of a curve with these multiplicities."""
    if cls.s != c.s:
        raise DimensionError(f"class on {cls.s} points, cluster has {c.s}")
    w = c.weights_for(normalization)
    return Fraction(sum(x * y for x, y in zip(w, cls.mults)))


def in_A(t) -> bool:
    """Anticanonical range ``[1, 7]``, the points ``7 + 1/n`` and ``9``."""
    t = as_fraction(t)
    if t < 1:
        raise DomainError(f"t must be at least 1, got {t}")
    if t <= 7 or t == 9:
        return True
    rest = t - 7
    return rest.numerator == 1 and rest <= 1


def in_B(t) -> bool:
    """``[1, 3]``, the points ``3 + 1/n``, and ``4, 5``."""
    t = as_fraction(t)
    if t < 1:
        raise DomainError(f"t must be at least 1, got {t}")
    if t <= 3 or t in (4, 5):
        return True
    rest = t - 3
    return rest.numerator == 1 and rest <= 1


def anticanonical_by_unloading(t) -> bool:
    """Whether the unloaded ``-K = 3L - sum E_i`` has cubics (numerically)."""
    c = build_cluster(t)
    return expected_dim(3, unload(c, [1] * c.s)) > 0


def minus_kappa_minus_line_by_unloading(t) -> bool:
    """Whether the unloaded ``-K - L = 2L - sum E_i`` has conics (numerically)."""
    c = build_cluster(t)
    return expected_dim(2, unload(c, [1] * c.s)) > 0
