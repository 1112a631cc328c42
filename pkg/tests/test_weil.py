import pytest
from hypothesis import given, settings

from artinhodge.algebra import build_algebra, dual_numbers, presentation
from artinhodge.errors import AlgebraMismatch
from artinhodge.modules import cokernel, free_module, image, is_free, kernel, map_from_r_matrix
from artinhodge.randomized import random_algebra, random_three_term, rng_for, standard_algebras
from artinhodge.scalars import QQ, QQI, Gaussian
from artinhodge.weil import (RestrictedFree, complexify_vector, realify_vector, split_relation,
                             weil_restrict_algebra, weil_restrict_map, weil_restrict_module)

import oracles
from strategies import seeds


def test_dual_numbers_golden():
    W = weil_restrict_algebra(dual_numbers(QQI, 2, "z"))
    B = W.algebra
    assert B.field == QQ
    assert B.basis_names() == ["1", "x", "y", "x^2"]
    assert B.nilpotency_index == 3
    x, y = B.gen(0), B.gen(1)
    assert x * x == y * y and not (x * y)
    assert not (x * x * x)


def test_split_relation_of_square():
    g, h = split_relation({(2,): Gaussian(1)}, 1)
    assert g == {(2, 0): 1, (0, 2): -1}
    assert h == {(1, 1): 2}


def test_cube_has_square_dimension():
    W = weil_restrict_algebra(dual_numbers(QQI, 3))
    assert W.algebra.dim == 9


def test_residue_field_restricts_to_rationals():
    W = weil_restrict_algebra(build_algebra(presentation(QQI, 0, [], 1)))
    assert W.algebra.dim == 1 and W.algebra.field == QQ


def test_only_gaussian_algebras():
    A = build_algebra(presentation(QQ, 1, [{(2,): 1}], 2))
    with pytest.raises(AlgebraMismatch):
        weil_restrict_algebra(A)


def test_eta_is_a_local_homomorphism():
    R = dual_numbers(QQI, 3)
    W = weil_restrict_algebra(R)
    z = R.gen(0).coeffs
    ez = W.eta(z)
    assert ez[0] == 0
    assert W.eta(R.mul_vectors(z, z)) == W.complexified.mul_vectors(ez, ez)
    assert W.eta(R.one().coeffs) == W.complexified.one().coeffs


@settings(max_examples=12)
@given(seeds)
def test_dimension_matches_real_groebner_oracle(seed):
    R = random_algebra(rng_for(seed), max_dim=3)
    pres = R.presentation
    W = weil_restrict_algebra(R)
    assert W.algebra.dim == oracles.weil_quotient_dim(pres.nvars, pres.relations,
                                                      pres.nilpotency_bound)
    assert W.algebra.dim == R.dim ** 2


@settings(max_examples=20)
@given(seeds)
def test_restricted_algebra_is_local_with_rational_constants(seed):
    R = random_algebra(rng_for(seed))
    B = weil_restrict_algebra(R).algebra
    assert B.field == QQ
    assert B.maximal_ideal_power(1).dim == B.dim - 1
    assert B.maximal_ideal_power(B.nilpotency_index).dim == 0


def test_realify_roundtrip():
    v = [Gaussian(1, 2), Gaussian(0, -1)]
    assert complexify_vector(realify_vector(v)) == v


def test_free_module_restricts_to_free_of_double_rank():
    R = dual_numbers(QQI, 2)
    W = weil_restrict_algebra(R)
    M = weil_restrict_module(free_module(R, 2), W)
    assert is_free(M).rank == 4
    assert M.dim == 4 * W.algebra.dim


@settings(max_examples=25)
@given(seeds)
def test_exactness_and_freeness_reflected(seed):
    rng = rng_for(seed)
    R = rng.choice(standard_algebras()[:2])
    W = weil_restrict_algebra(R)
    f, g = random_three_term(rng, R)
    exact = image(f).space == kernel(g).space
    fw, gw = weil_restrict_map(f, W), weil_restrict_map(g, W)
    assert exact == (image(fw).space == kernel(gw).space)
    C = cokernel(f)
    assert is_free(C).free == is_free(weil_restrict_module(C, W)).free


def test_conjugation_and_complex_structure():
    R = dual_numbers(QQI, 2)
    W = weil_restrict_algebra(R)
    H = RestrictedFree(W, 2)
    v = [QQ(k) for k in range(H.module.dim)]
    assert H.conj(H.conj(v)) == v
    assert H.times_i(H.times_i(v)) == [-x for x in v]
    S = H.restrict(free_module(R, 2).span([[1, 0, Gaussian(0, 1), 1]]))
    assert is_free(S.module).rank == 2
    assert H.fiber(S).dim == 1
