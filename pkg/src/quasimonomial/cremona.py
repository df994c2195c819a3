"""The degree 8 Cremona map defined by the net |8L - 3(E1 + ... + E7)|.

Classes are acted on as column vectors ``(d, -mu_1, ..., -mu_7)`` in the
basis ``L, E_1, ..., E_7`` of the seven fundamental points.  Multiplicities
at any further points are carried along unchanged.
"""

from __future__ import annotations

from typing import Sequence

from .curves import BranchCurve, mult_seq_from_branches
from .errors import DimensionError, DomainError
from .lattice import DivisorClass

__all__ = [
    "FORM",
    "KAPPA_VECTOR",
    "apply_matrix",
    "apply_phi8",
    "mat_mul",
    "mat_pow",
    "phi8_matrix",
    "star_construct",
    "transpose",
]

Matrix = tuple[tuple[int, ...], ...]

_PHI8: Matrix = (
    (8, 3, 3, 3, 3, 3, 3, 3),
    (-3, -1, -2, -1, -1, -1, -1, -1),
    (-3, -2, -1, -1, -1, -1, -1, -1),
    (-3, -1, -1, -1, -2, -1, -1, -1),
    (-3, -1, -1, -2, -1, -1, -1, -1),
    (-3, -1, -1, -1, -1, -1, -2, -1),
    (-3, -1, -1, -1, -1, -2, -1, -1),
    (-3, -1, -1, -1, -1, -1, -1, -2),
)

FORM: Matrix = tuple(
    tuple((1 if i == 0 else -1) if i == j else 0 for j in range(8)) for i in range(8)
)
KAPPA_VECTOR = (3, -1, -1, -1, -1, -1, -1, -1)


def phi8_matrix() -> Matrix:
    return _PHI8


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionError("incompatible matrix shapes")
    cols = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_pow(a: Matrix, k: int) -> Matrix:
    if k < 0:
        raise DomainError("only nonnegative powers are supported")
    result = tuple(tuple(int(i == j) for j in range(len(a))) for i in range(len(a)))
    for _ in range(k):
        result = mat_mul(a, result)
    return result


def apply_matrix(a: Matrix, vec: Sequence[int]) -> tuple[int, ...]:
    if len(vec) != len(a[0]):
        raise DimensionError(f"vector of length {len(vec)} for a {len(a[0])}-column matrix")
    return tuple(sum(x * y for x, y in zip(row, vec)) for row in a)


def apply_phi8(
    degree: int,
    fundamental: Sequence[int],
    carried: Sequence[int] = (),
    *,
    power: int = 1,
) -> DivisorClass:
    """Image class; its multiplicities are the seven fundamental ones, then ``carried``."""
    if len(fundamental) != 7:
        raise DimensionError(f"need 7 fundamental multiplicities, got {len(fundamental)}")
    vec = (degree, *(-m for m in fundamental))
    out = apply_matrix(mat_pow(_PHI8, power), vec)
    return DivisorClass(out[0], tuple(-x for x in out[1:]) + tuple(carried))


def star_construct(curve: BranchCurve) -> BranchCurve:
    """Image under the map of a curve avoiding the fundamental points.

    Each branch ``(n, m)`` becomes ``(m, 7m + n)`` and ``3d - sum m`` new
    smooth branches ``(1, 7)`` appear, one per further passage through the
    chain of fundamental points.
    """
    if curve.mult_seq is None:
        raise DomainError(f"{curve.name} has no multiplicity sequence")
    d = curve.degree
    extra = 3 * d - sum(m for _, m in curve.branches)
    if extra < 0:
        raise DomainError(f"cannot transform {curve.name}: its branches meet the net too often")
    image = apply_phi8(d, (0,) * 7, curve.mult_seq)
    branches = ((1, 7),) * extra + tuple((m, 7 * m + n) for n, m in curve.branches)
    seq = tuple(int(x) for x in image.mults)
    if mult_seq_from_branches(branches) != seq:
        raise DomainError(f"branch data of the image of {curve.name} is inconsistent")
    return BranchCurve(curve.name + "*", int(image.degree), branches, seq, source=curve.name)
