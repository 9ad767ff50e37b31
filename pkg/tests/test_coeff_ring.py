import json

import pytest
from hypothesis import given

from cobordism_classes.coeff_ring import (CoeffPoly, augment, generator,
                                          invert_unit_coeff_series, parse_coeffpoly)
from conftest import coeff_polys

b1, b2, b3 = generator(1), generator(2), generator(3)


def test_generator_degrees():
    assert b1.degree() == -1
    assert (b1 * b1 - b2).degree() == -2
    assert generator(0) == 1


def test_canonical_rendering():
    assert str(b1 * b1 - b2) == "b1^2 - b2"
    assert str(-b1 * b2 / 3 + 2) == "2 - 1/3*b1*b2"
    assert str(CoeffPoly()) == "0"


def test_inhomogeneous_degree_raises():
    with pytest.raises(ValueError):
        (b1 + b2).degree()


def test_augment_kills_generators():
    assert augment(b1 * b1 - b2 + 5) == 5


def test_series_inverse_of_cp_generating_function():
    m = invert_unit_coeff_series([generator(i) for i in range(4)], 3)
    assert m[1] == -b1
    assert m[2] == b1 * b1 - b2
    assert m[3] == -b1 ** 3 + 2 * b1 * b2 - b3


def test_series_inverse_needs_unit():
    with pytest.raises(ValueError):
        invert_unit_coeff_series([b1, 1], 2)


def test_parse_rejects_unknown_symbols():
    with pytest.raises(ValueError):
        parse_coeffpoly("b1 + x")


@given(coeff_polys(), coeff_polys(), coeff_polys())
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0


@given(coeff_polys())
def test_text_round_trip(p):
    assert parse_coeffpoly(str(p)) == p


@given(coeff_polys())
def test_json_round_trip(p):
    assert CoeffPoly.from_json(json.loads(json.dumps(p.to_json()))) == p


@given(coeff_polys(), coeff_polys())
def test_augment_is_multiplicative(p, q):
    assert augment(p * q) == augment(p) * augment(q)
