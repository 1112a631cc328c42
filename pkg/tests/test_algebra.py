import pytest
from hypothesis import given, settings

from artinhodge.algebra import (RingMap, build_algebra, dual_numbers, presentation,
                                presentation_from_json, presentation_to_json, residue_map)
from artinhodge.errors import NilpotencyBoundViolated, NotLocal, NotLocalHomomorphism
from artinhodge.randomized import random_algebra, rng_for
from artinhodge.scalars import QQ, QQI, Gaussian

import oracles
from strategies import seeds


def test_dual_numbers_basis():
    A = dual_numbers(QQI, 2, "e")
    assert A.basis_names() == ["1", "e"]
    assert A.dim == 2 and A.nilpotency_index == 2
    e = A.gen(0)
    assert not (e * e)


def test_truncated_two_variables():
    A = build_algebra(presentation(QQI, 2, [{(2, 0): 1}, {(0, 2): 1}], 3, ("x", "y")))
    assert A.basis_names() == ["1", "x", "y", "x*y"]
    assert A.nilpotency_index == 3


def test_nonzero_constant_term_rejected():
    with pytest.raises(NotLocal):
        build_algebra(presentation(QQI, 1, [{(0,): 1, (2,): 1}], 3))


def test_bound_must_kill_degree_n():
    # z^3 = 0 does not give m^2 = 0
    with pytest.raises(NilpotencyBoundViolated):
        build_algebra(presentation(QQI, 1, [{(3,): 1}], 2))


def test_non_minimal_bound_flagged_on_request():
    pres = presentation(QQI, 1, [{(2,): 1}], 4)
    assert build_algebra(pres).dim == 2
    with pytest.raises(NilpotencyBoundViolated):
        build_algebra(pres, check_minimal=True)


def test_relation_mixing_degrees():
    # z^2 = i z^3 forces z^2 = 0 when m^4 = 0
    A = build_algebra(presentation(QQI, 1, [{(2,): 1, (3,): Gaussian(0, -1)}], 4))
    assert A.dim == 2


@settings(max_examples=25)
@given(seeds)
def test_dimension_matches_groebner_oracle(seed):
    A = random_algebra(rng_for(seed))
    pres = A.presentation
    assert A.dim == oracles.quotient_dim(pres.nvars, pres.relations, pres.nilpotency_bound)


@settings(max_examples=15)
@given(seeds)
def test_multiplication_is_commutative_and_associative(seed):
    A = random_algebra(rng_for(seed))
    E = [A.unit_vector(i) for i in range(A.dim)]
    for a in E:
        for b in E:
            ab = A.mul_vectors(a, b)
            assert ab == A.mul_vectors(b, a)
            for c in E:
                assert A.mul_vectors(ab, c) == A.mul_vectors(a, A.mul_vectors(b, c))
    assert A.maximal_ideal_power(A.nilpotency_index).dim == 0
    assert A.maximal_ideal_power(A.nilpotency_index - 1).dim > 0 or A.dim == 1


def test_units_and_residue():
    A = dual_numbers(QQI, 3)
    u = A.one() + A.gen(0)
    assert u.is_unit() and not A.gen(0).is_unit()
    r = residue_map(A)
    assert r(u.coeffs) == [QQI.one]


def test_ring_map_checks_locality():
    A, B = dual_numbers(QQI, 2), dual_numbers(QQI, 3)
    f = RingMap(A, B, [[0, 0, 1]])  # e -> e^2
    assert f(A.gen(0).coeffs) == [0, 0, 1]
    with pytest.raises(NotLocalHomomorphism):
        RingMap(A, B, [[1, 0, 0]])


def test_json_roundtrip():
    pres = presentation(QQI, 2, [{(2, 0): 1, (0, 2): Gaussian(0, 1)}, {(1, 1): 1}], 3, ("x", "y"))
    again = presentation_from_json(presentation_to_json(pres))
    assert build_algebra(again).table == build_algebra(pres).table


def test_extend_scalars_from_rationals():
    A = build_algebra(presentation(QQ, 1, [{(2,): 1}], 2))
    B = A.extend_scalars(QQI)
    assert B.field == QQI and B.dim == A.dim
