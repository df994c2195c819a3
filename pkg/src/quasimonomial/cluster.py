"""Clusters of centers of very general quasimonomial valuations.

For rational ``t`` with continued fraction ``[n1, ..., nr]`` the valuation
``v(xi; t)`` is divisorial and its centers ``p_1, ..., p_s`` (``s = sum n_i``)
are a few free points on the branch ``y = xi(x)`` followed by satellites.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError
from .exactnum import as_fraction, cf_expand, parse_rational
from .lattice import DivisorClass

__all__ = [
    "Cluster",
    "Normalization",
    "build_cluster",
    "cluster_from_json",
    "exceptional_components",
    "monomial_value",
    "volume",
]


class Normalization(enum.Enum):
    NORMALIZED = "NORMALIZED"
    ORD_ES = "ORD_ES"


@dataclass(frozen=True)
class Cluster:
    """Weighted cluster ``K = (p_1, ..., p_s)``; point indices are 1-based.

    ``proximity[i - 1]`` lists the ``j`` with ``p_i`` proximate to ``p_j`` and
    ``successors[j - 1]`` the ``i`` proximate to ``p_j``.  ``rays[i - 1]`` is
    the pair ``(q, p)`` such that the curvettes of ``E_i`` are branches with
    ``q`` = multiplicity and ``p`` = contact order with the branch
    ``y = xi(x)``; i.e. the divisorial valuation ``ord_{E_i}`` is ``v(xi; p/q)``
    up to scaling.
    """

    t: Fraction
    cf: tuple[int, ...]
    weights: tuple[Fraction, ...]
    int_weights: tuple[int, ...]
    proximity: tuple[tuple[int, ...], ...]
    successors: tuple[tuple[int, ...], ...]
    free_flags: tuple[bool, ...]
    rays: tuple[tuple[int, int], ...]

    @property
    def s(self) -> int:
        return len(self.weights)

    def weights_for(self, normalization: Normalization) -> tuple:
        if normalization is Normalization.ORD_ES:
            return self.int_weights
        return self.weights

    def component_pairing(self, mults: Sequence[int], j: int) -> int:
        """``D . E~_j`` for ``D = -sum m_i E_i``."""
        return mults[j - 1] - sum(mults[i - 1] for i in self.successors[j - 1])

    def to_json(self) -> dict:
        comps = exceptional_components(self)
        return {
            "t": str(self.t),
            "cf": list(self.cf),
            "s": self.s,
            "weights": [str(w) for w in self.weights],
            "int_weights": list(self.int_weights),
            "proximity": [[i, list(p)] for i, p in enumerate(self.proximity, start=1) if i > 1],
            "free": [i for i, f in enumerate(self.free_flags, start=1) if f],
            "components": [
                {"j": j, "class": c.render(), "sq": c.square()}
                for j, c in enumerate(comps, start=1)
            ],
        }


def _component_successors(cf: Sequence[int]) -> list[tuple[int, ...]]:
    r = len(cf)
    s = sum(cf)
    partial = []
    acc = 0
    for n in cf:
        acc += n
        partial.append(acc)
    head = {partial[i]: i for i in range(r - 1)}  # s_i -> i (0-based), i < r-1
    succ = []
    for j in range(1, s + 1):
        if j == s:
            succ.append(())
        elif j in head:
            i = head[j]
            if i < r - 2:
                stop = partial[i + 1] + 1
            else:
                stop = s
            succ.append(tuple(range(j + 1, stop + 1)))
        else:
            succ.append((j + 1,))
    return succ


def _remainder_weights(t: Fraction, cf: Sequence[int]) -> list[Fraction]:
    prev, cur = t, Fraction(1)
    weights = [cur] * cf[0]
    for j in range(1, len(cf)):
        prev, cur = cur, prev - cf[j - 1] * cur
        weights.extend([cur] * cf[j])
    return weights


def stern_brocot_walk(t: Fraction) -> tuple[list[tuple[int, int]], list[tuple[int, ...]]]:
    """Rays of the exceptional divisors and proximities from toric blowups.

    The weight vector ``(1, t)`` is located in successive unimodular cones;
    each center is the torus-fixed point of a cone and its exceptional ray is
    the mediant.  A center is proximate to the earlier centers whose rays
    bound its cone.  Used as an independent cross-check of the
    continued-fraction description.
    """
    a, b = (1, 0), (0, 1)
    owner = {a: 0, b: 0}
    rays: list[tuple[int, int]] = []
    prox: list[tuple[int, ...]] = []
    while True:
        m = (a[0] + b[0], a[1] + b[1])
        prox.append(tuple(sorted(i for i in (owner[a], owner[b]) if i)))
        rays.append(m)
        owner[m] = len(rays)
        q, p = m
        if t * q > p:
            a = m
        elif t * q < p:
            b = m
        else:
            return rays, prox


def build_cluster(t) -> Cluster:
    """Cluster of centers of ``v(xi; t)`` for rational ``t >= 1``."""
    t = as_fraction(t)
    if t < 1:
        raise DomainError(f"t must be at least 1, got {t}")
    cf = cf_expand(t)
    weights = _remainder_weights(t, cf)
    succ = _component_successors(cf)
    s = len(weights)
    prox: list[list[int]] = [[] for _ in range(s)]
    for j, ss in enumerate(succ, start=1):
        for i in ss:
            prox[i - 1].append(j)
    inv = 1 / weights[-1]
    ints = [w * inv for w in weights]
    assert all(w.denominator == 1 for w in ints)
    rays, _ = stern_brocot_walk(t)
    return Cluster(
        t=t,
        cf=tuple(cf),
        weights=tuple(weights),
        int_weights=tuple(int(w) for w in ints),
        proximity=tuple(tuple(p) for p in prox),
        successors=tuple(succ),
        free_flags=tuple(len(p) <= 1 for p in prox),
        rays=tuple(rays),
    )


def cluster_from_json(data: dict) -> Cluster:
    """Rebuild a cluster from its JSON dump, checking the dumped weights."""
    try:
        t = parse_rational(str(data["t"]))
    except KeyError:
        raise DomainError("cluster JSON has no 't' field") from None
    c = build_cluster(t)
    if "weights" in data:
        dumped = [parse_rational(str(w)) for w in data["weights"]]
        if dumped != list(c.weights):
            raise DomainError("cluster JSON weights are inconsistent with t")
    return c


def exceptional_components(c: Cluster) -> list[DivisorClass]:
    """``E~_j = E_j - sum_{p_i > p_j} E_i`` for ``j = 1..s``."""
    out = []
    for j in range(1, c.s + 1):
        mults = [0] * c.s
        mults[j - 1] = -1
        for i in c.successors[j - 1]:
            mults[i - 1] = 1
        out.append(DivisorClass(0, tuple(mults)))
    return out


def volume(c: Cluster, normalization: Normalization = Normalization.NORMALIZED) -> Fraction:
    w = c.weights_for(normalization)
    return 1 / Fraction(sum(x * x for x in w))


def monomial_value(support: Iterable[tuple[int, int]], t) -> Fraction:
    """``min(i + t*j)`` over the exponents ``(i, j)`` of a support."""
    t = as_fraction(t)
    values = [i + t * j for i, j in support]
    if not values:
        raise DomainError("empty support")
    return min(values)

