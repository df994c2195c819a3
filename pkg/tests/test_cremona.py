import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasimonomial.cremona import (
    FORM,
    KAPPA_VECTOR,
    apply_matrix,
    apply_phi8,
    mat_mul,
    mat_pow,
    phi8_matrix,
    star_construct,
    transpose,
)
from quasimonomial.curves import BranchCurve, fibonacci_curve, sporadic_catalog
from quasimonomial.errors import DomainError
from quasimonomial.lattice import DivisorClass

CATALOG = {c.name: c for c in sporadic_catalog()}
vectors = st.tuples(*[st.integers(-20, 20)] * 8)


def test_matrix_entries():
    m = phi8_matrix()
    assert m[0] == (8, 3, 3, 3, 3, 3, 3, 3)
    assert m[0][0] == 8
    assert all(row[0] == -3 for row in m[1:])


def test_form_and_kappa():
    m = phi8_matrix()
    assert mat_mul(mat_mul(m, FORM), transpose(m)) == FORM
    assert apply_matrix(m, KAPPA_VECTOR) == KAPPA_VECTOR


def test_involution():
    assert mat_pow(phi8_matrix(), 2) == mat_pow(phi8_matrix(), 0)


@given(vectors, vectors)
def test_preserves_intersections(u, v):
    m = phi8_matrix()

    def form(a, b):
        return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))

    assert form(apply_matrix(m, u), apply_matrix(m, v)) == form(u, v)


def test_apply_examples():
    image = apply_phi8(3, (0,) * 7, (2, 1, 1, 1, 1, 1, 1))
    assert image == DivisorClass(24, (9,) * 7 + (2,) + (1,) * 6)
    assert apply_phi8(0, (0,) * 7) == DivisorClass(0, (0,) * 7)
    assert apply_phi8(1, (0,) * 7) == DivisorClass(8, (3,) * 7)


@pytest.mark.parametrize(
    "source, target",
    [("D2", "D2*"), ("C3", "C3*"), ("C1*", "C1**"), ("D1", "D1*"), ("C1", "C1*"), ("C5", "C5*")],
)
def test_star_construct(source, target):
    src = fibonacci_curve(int(source[1:])) if source in ("C1", "C3", "C5") else CATALOG[source]
    image = star_construct(src)
    row = CATALOG[target]
    assert image.name == target
    assert (image.degree, image.mult_seq) == (row.degree, row.mult_seq)
    assert image.tropical_key() == row.tropical_key()
    cls = image.as_class()
    assert cls.square() == -1 and cls.kappa_degree() == -1


def test_star_construct_rejects():
    with pytest.raises(DomainError):
        star_construct(BranchCurve("X", 1, ((1, 7),)))
    with pytest.raises(DomainError):
        star_construct(BranchCurve("Y", 2, ((1, 5),)))
