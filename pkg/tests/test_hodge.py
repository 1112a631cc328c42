import pytest
from hypothesis import given, settings

from artinhodge.algebra import build_algebra, dual_numbers, presentation
from artinhodge.errors import NotClassicalMHS, NotPure, PreconditionUnmet
from artinhodge.hodge import (ClassicalMHS, HodgeMorphism, MixedHodgeStructure, conj_space,
                              hodge_decomposition, morphism_bigrading, structure_from_json,
                              structure_to_json, verify_mhs, weil_restrict_structure)
from artinhodge.linalg import Subspace
from artinhodge.randomized import (random_lattice_morphism, random_pure_structure,
                                   random_sum_structure, rng_for, standard_algebras)
from artinhodge.scalars import QQI, Gaussian

import oracles
from strategies import seeds

I = Gaussian(0, 1)
K = build_algebra(presentation(QQI, 0, [], 1))
R2 = dual_numbers(QQI, 2, "e")


def elliptic(A, tau_gens):
    return MixedHodgeStructure.from_generators(2, A, {1: tau_gens}, weight=1)


def test_elliptic_curve_over_the_residue_field():
    H = elliptic(K, [[1, I]])
    rep = verify_mhs(H)
    assert rep.valid
    assert H.graded_ranks() == {(1, 0): 1, (0, 1): 1}


def test_real_line_is_not_a_hodge_filtration():
    H = elliptic(K, [[1, 1]])
    rep = verify_mhs(H)
    assert rep.failures() == ["fiber_classical_mhs"]


def test_deformed_elliptic_family():
    # F^1 spanned by (1, i + e): a first-order deformation of the period
    H = elliptic(R2, [[1, 0, I, 1]])
    assert verify_mhs(H).valid
    Hw = weil_restrict_structure(H)
    assert verify_mhs(Hw).valid
    assert Hw.H.dim == 2 * 2 * 4
    dec = hodge_decomposition(Hw)
    assert dec.ranks == {(1, 0): 1, (0, 1): 1}
    assert Hw.sigma_sub(dec.pieces[(1, 0)]) == dec.pieces[(0, 1)]


def test_decomposition_needs_restriction_and_purity():
    H = elliptic(K, [[1, I]])
    with pytest.raises(PreconditionUnmet):
        hodge_decomposition(H)
    T = MixedHodgeStructure.from_generators(2, K, {1: [[1, 3]]}, W={0: [[1, 0]], 2: [[1, 0], [0, 1]]})
    with pytest.raises(NotPure):
        hodge_decomposition(weil_restrict_structure(T))


def test_tate_extension_splitting():
    # W_0 = <e1>, F^1 = <e2 + 3 e1>: Gr_0 of type (0,0), Gr_2 of type (1,1)
    T = MixedHodgeStructure.from_generators(2, R2, {1: [[3, 0, 1, 0]]},
                                            W={0: [[1, 0, 0, 0]], 2: [[1, 0, 0, 0], [0, 0, 1, 0]]})
    assert verify_mhs(T).valid
    assert T.graded_ranks() == {(0, 0): 1, (1, 1): 1}
    spl = T.central_fiber().deligne_splitting()
    assert spl[(1, 1)] == Subspace(QQI, 2, [[3, 1]])
    assert spl[(0, 0)] == Subspace(QQI, 2, [[1, 0]])


def test_splitting_rejects_invalid_fiber():
    C = ClassicalMHS(2, {1: Subspace(QQI, 2, [[1, 1]])}, {1: Subspace.full(QQI, 2)})
    with pytest.raises(NotClassicalMHS):
        C.deligne_splitting()


def test_json_roundtrip():
    H = elliptic(R2, [[1, 0, I, 1]])
    again = structure_from_json(structure_to_json(H), R2)
    assert again.F(1) == H.F(1) and again.W(1) == H.W(1)


def _identities_hold(Hw, dec):
    k = dec.weight
    whole = Hw.H.whole()
    total = Hw.H.zero_submodule()
    for P in dec.pieces.values():
        assert (total & P).is_zero()
        total = total + P
    assert total == whole
    for p in Hw.p_range:
        acc = Hw.H.zero_submodule()
        for (r, s), P in dec.pieces.items():
            if r >= p:
                acc = acc + P
        assert acc == Hw.F(p)
        q = k - p
        assert (Hw.F(p) & Hw.sigma_sub(Hw.F(q + 1))).is_zero()
    for (p, q), P in dec.pieces.items():
        assert Hw.sigma_sub(P) == dec.pieces[(q, p)]


@settings(max_examples=12)
@given(seeds)
def test_random_pure_structures_decompose(seed):
    rng = rng_for(seed)
    A = rng.choice(standard_algebras()[:2])
    k = rng.randint(0, 3)
    n = rng.choice([2, 4]) if k % 2 else rng.randint(1, 4)
    H = random_pure_structure(rng, A, n, k)
    assert verify_mhs(H).valid
    Hw = weil_restrict_structure(H)
    dec = hodge_decomposition(Hw)
    _identities_hold(Hw, dec)
    fib = H.central_fiber()
    F = {p: [[oracles.to_sympy(x) for x in r] for r in fib.F(p).rows]
         for p in range(fib.flo, fib.fhi + 1)}
    assert dec.ranks == oracles.classical_hodge_numbers(F, n, k)
    assert dec.ranks == H.graded_ranks()


@settings(max_examples=8)
@given(seeds)
def test_morphisms_have_constant_rank_pieces(seed):
    rng = rng_for(seed)
    A = standard_algebras()[0]
    k = rng.choice([0, 1, 2])
    n1, n2 = (2, 2) if k % 2 else (rng.randint(1, 2), rng.randint(1, 2))
    H = random_sum_structure(rng, A, n1, n2, k)
    f = HodgeMorphism(H, H, random_lattice_morphism(rng, n1, n2))
    rep = morphism_bigrading(f.weil_restrict())
    assert rep.sum_matches and rep.all_constant


def test_conjugation_of_subspaces():
    V = Subspace(QQI, 2, [[1, I]])
    assert conj_space(V) == Subspace(QQI, 2, [[1, -I]])
    assert conj_space(conj_space(V)) == V
