import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasimonomial.cluster import (
    Normalization,
    build_cluster,
    cluster_from_json,
    exceptional_components,
    monomial_value,
    stern_brocot_walk,
    volume,
)
from quasimonomial.errors import DomainError
from quasimonomial.lattice import NegativeType, classify_negative

exponents = st.fractions(min_value=1, max_value=50, max_denominator=300).filter(lambda t: t > 1)


def test_figure2_cluster():
    c = build_cluster(Fraction(31, 9))
    assert c.cf == (3, 2, 4)
    assert c.int_weights == (9, 9, 9, 4, 4, 1, 1, 1, 1)
    assert c.free_flags == (True,) * 4 + (False,) * 5
    comps = exceptional_components(c)
    assert comps[2].render() == "E3-E4-E5-E6"
    assert comps[4].render() == "E5-E6-E7-E8-E9"
    assert comps[8].render() == "E9" and comps[8].square() == -1


@pytest.mark.parametrize(
    "t, weights",
    [(Fraction(2), (1, 1)), (Fraction(15, 2), (1,) * 7 + (Fraction(1, 2),) * 2)],
)
def test_weight_examples(t, weights):
    assert build_cluster(t).weights == tuple(map(Fraction, weights))


def test_rejects_small_t():
    with pytest.raises(DomainError):
        build_cluster(Fraction(1, 2))


@settings(max_examples=500)
@given(exponents)
def test_weights_square_to_t(t):
    c = build_cluster(t)
    assert c.s == sum(c.cf)
    assert sum(v * v for v in c.weights) == t


@settings(max_examples=500)
@given(exponents)
def test_proximity_equality(t):
    c = build_cluster(t)
    for j in range(1, c.s + 1):
        succ = c.successors[j - 1]
        total = sum(c.weights[i - 1] for i in succ)
        if j < c.s:
            assert c.weights[j - 1] == total
        else:
            assert succ == ()
    for i in range(2, c.s + 1):
        prox = c.proximity[i - 1]
        assert i - 1 in prox and len(prox) <= 2


@settings(max_examples=300)
@given(exponents)
def test_proximities_match_toric_walk(t):
    c = build_cluster(t)
    rays, prox = stern_brocot_walk(t)
    assert [tuple(p) for p in prox[1:]] == [tuple(sorted(p)) for p in c.proximity[1:]]
    assert rays[-1] == (t.denominator, t.numerator)


@settings(max_examples=300)
@given(exponents)
def test_component_squares(t):
    c = build_cluster(t)
    cf = c.cf
    r = len(cf)
    partial = [sum(cf[: i + 1]) for i in range(r)]
    expected = {}
    for i in range(r - 1):
        expected[partial[i]] = -2 - cf[i + 1] if i < r - 2 else -1 - cf[r - 1]
    for j, comp in enumerate(exceptional_components(c), start=1):
        sq = comp.square()
        if j == c.s:
            assert sq == -1
        else:
            assert sq == expected.get(j, -2)
            if j not in expected:
                assert classify_negative(comp) is NegativeType.MINUS_TWO_CLASS


def test_volume():
    c = build_cluster(Fraction(31, 9))
    assert volume(c) == Fraction(9, 31)
    assert volume(c, Normalization.ORD_ES) == Fraction(1, 279)
    assert volume(build_cluster(5)) == Fraction(1, 5)


def test_monomial_value():
    assert monomial_value([(0, 1), (2, 0)], 3) == 2
    assert monomial_value([(0, 1)], Fraction(5, 2)) == Fraction(5, 2)
    assert monomial_value([(0, 0), (5, 3)], 7) == 0
    with pytest.raises(DomainError):
        monomial_value([], 2)


def test_json_round_trip():
    c = build_cluster(Fraction(31, 9))
    data = json.loads(json.dumps(c.to_json()))
    assert data["weights"][:4] == ["1", "1", "1", "4/9"]
    assert data["proximity"][0] == [2, [1]]
    assert {"j": 3, "class": "E3-E4-E5-E6", "sq": -4} in data["components"]
    assert cluster_from_json(data) == c
    data["weights"][0] = "2"
    with pytest.raises(DomainError):
        cluster_from_json(data)
