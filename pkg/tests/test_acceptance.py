"""Acceptance criteria, each at its stated size and time budget.

Every test records exactly one PASS/FAIL line (see the terminal summary).
"""
import io
import json
import time

from artinhodge.algebra import RingMap, dual_numbers, residue_map
from artinhodge.hodge import hodge_decomposition, verify_mhs, weil_restrict_structure
from artinhodge.modules import (Subquotient, _base_change, cokernel, image, is_free, kernel)
from artinhodge.randomized import (random_algebra, random_ambient, random_free_map,
                                   random_pure_structure, random_snc_model, random_three_term,
                                   rng_for, standard_algebras)
from artinhodge.rank import (complex_cohomology_free_check, constant_rank,
                             intersection_fiber_check, quotient_free_check, triangle_rank_transfer)
from artinhodge.scalars import QQI
from artinhodge.snc import (DEMOS, assemble_mhs, banana_ambient, betti_numbers,
                            verify_theorem_free_singular, weight_ss)
from artinhodge.weil import weil_restrict_algebra, weil_restrict_map, weil_restrict_module

import instances
import oracles
from acceptance_log import record
from test_cli import GOLDEN, invoke, stable

R1 = dual_numbers(QQI, 1)
R2 = dual_numbers(QQI, 2, "e")
R3 = dual_numbers(QQI, 3, "e")


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_01_weil_dimension_law():
    def body():
        rows = []
        rng = rng_for(101)
        for _ in range(20):
            R = random_algebra(rng, max_vars=3, max_bound=4)
            B = weil_restrict_algebra(R).algebra
            local = B.maximal_ideal_power(1).dim == B.dim - 1 and \
                B.maximal_ideal_power(B.nilpotency_index).dim == 0
            rows.append((R.dim, B.dim, local))
        return rows
    rows, secs = timed(body)
    doubled = sum(b == 2 * a for a, b, _ in rows)
    squared = sum(b == a * a for a, b, _ in rows)
    local = all(l for _, _, l in rows)
    ok = doubled == len(rows) and local and secs < 5
    record(1, ok, f"dim = 2*dim on {doubled}/20, dim = dim^2 on {squared}/20, "
                  f"local with residue Q: {local}, {secs:.2f}s")
    assert local and squared == len(rows)
    assert doubled == len(rows), "restricted dimension follows (dim R)^2, not 2 dim R"


def test_criterion_02_dual_numbers_golden():
    W = weil_restrict_algebra(dual_numbers(QQI, 2, "z"))
    B = W.algebra
    names = B.presentation.var_names
    x, y = B.gen(0), B.gen(1)
    oracle_dim = oracles.weil_quotient_dim(1, R2.presentation.relations, 2)
    ok = (B.basis_names() == ["1", "x", "y", "x^2"] and names == ("x", "y")
          and x * x == y * y and not (x * y) and B.nilpotency_index == 3
          and oracle_dim == 4)
    record(2, ok, f"basis {B.basis_names()}, m^{B.nilpotency_index} = 0, oracle dim {oracle_dim}")
    assert ok


def test_criterion_03_faithful_exactness():
    def body():
        rng = rng_for(303)
        Ws = {id(R): weil_restrict_algebra(R) for R in (R2, R3)}
        bad = 0
        for i in range(200):
            R = (R2, R3)[i % 2]
            W = Ws[id(R)]
            f, g = random_three_term(rng, R)
            exact = image(f).space == kernel(g).space
            fw, gw = weil_restrict_map(f, W), weil_restrict_map(g, W)
            exact_w = image(fw).space == kernel(gw).space
            C = cokernel(f)
            free = is_free(C).free
            free_w = is_free(weil_restrict_module(C, W)).free
            bad += (exact != exact_w) + (free != free_w)
        return bad
    bad, secs = timed(body)
    ok = bad == 0 and secs < 30
    record(3, ok, f"{bad} disagreements over 200 sequences, {secs:.2f}s")
    assert ok


def test_criterion_04_constant_rank_equivalence():
    def body():
        rng = rng_for(404)
        algs = standard_algebras()
        agree = 0
        for i in range(500):
            A = algs[i % 3]
            cr = constant_rank(random_free_map(rng, A, 5))
            agree += cr.constant == cr.coker_free
        return agree
    agree, secs = timed(body)
    ok = agree == 500 and secs < 60
    record(4, ok, f"{agree}/500 agree, {secs:.2f}s")
    assert ok


def test_criterion_05_appendix_lemmas():
    rng = rng_for(505)
    algs = standard_algebras()
    fails = {"quotient": 0, "intersection": 0, "triangle": 0, "cohomology": 0}
    for i in range(100):
        A = algs[i % 3]
        F1 = instances.free_submodule(rng, A, 3)
        F2 = instances.free_submodule(rng, A, 3)
        fails["quotient"] += not quotient_free_check(F1).lemma_holds
        fails["intersection"] += not intersection_fiber_check(F1, F2).lemma_holds
        fails["triangle"] += not triangle_rank_transfer(*instances.triangle(rng, A)).equivalent
        d1, d2, h = instances.constant_rank_complex(rng, A)
        rep = complex_cohomology_free_check(d1, d2)
        fails["cohomology"] += not (rep.free and rep.rank == h)
    ok = not any(fails.values())
    record(5, ok, "failures per lemma over 100 instances: " +
           ", ".join(f"{k} {v}" for k, v in fails.items()))
    assert ok


def test_criterion_06_hodge_decomposition():
    rng = rng_for(606)
    bad = 0
    for i in range(50):
        A = (R1, R2)[i % 2]
        k = rng.randint(0, 3)
        n = rng.choice([2, 4]) if k % 2 else rng.randint(1, 4)
        Hw = weil_restrict_structure(random_pure_structure(rng, A, n, k))
        dec = hodge_decomposition(Hw)
        whole, total = Hw.H.whole(), Hw.H.zero_submodule()
        direct = True
        for P in dec.pieces.values():
            direct &= (total & P).is_zero()
            total = total + P
        ok_i = direct and total == whole
        for p in Hw.p_range:
            acc = Hw.H.zero_submodule()
            for (r, _), P in dec.pieces.items():
                if r >= p:
                    acc = acc + P
            ok_i &= acc == Hw.F(p)
            ok_i &= (Hw.F(p) & Hw.sigma_sub(Hw.F(k - p + 1))).is_zero()
            ok_i &= Hw.F(p) + Hw.sigma_sub(Hw.F(k - p + 1)) == whole
        for (p, q), P in dec.pieces.items():
            ok_i &= Hw.sigma_sub(P) == dec.pieces.get((q, p))
        bad += not ok_i
    record(6, bad == 0, f"{bad}/50 structures violate an identity")
    assert bad == 0


GOLDEN_BETTI = {"wedge": [1, 0, 2], "banana": [1, 1, 2], "triangle": [1, 1, 3]}


def test_criterion_07_snc_golden_models():
    def body():
        problems = []
        for name, want in GOLDEN_BETTI.items():
            ranks = {}
            for A in (R1, R2):
                M = DEMOS[name](A)
                b = betti_numbers(M)[:3]
                if b != want:
                    problems.append(f"{name} betti {b}")
                ref = oracles.cech_betti(M.dual.simplices, M.data.hodge, M.data.faces)
                if ref != want:
                    problems.append(f"{name} oracle {ref}")
                for k in range(3):
                    S = assemble_mhs(M, k)
                    gr = S.structure.graded_ranks()
                    e2 = {}
                    for (a, p, q), r in S.e2_ranks.items():
                        e2[(p, q)] = e2.get((p, q), 0) + r
                    if gr != e2:
                        problems.append(f"{name} H^{k} Gr != E2")
                    ranks.setdefault(k, []).append(gr)
                h1 = assemble_mhs(M, 1).weights()
                if name == "banana" and h1 != {0: 1}:
                    problems.append(f"banana H^1 weights {h1}")
                ss = weight_ss(M, 0)
                if not ss.degenerates_e2 or (name != "wedge" and ss.degenerates_e1):
                    problems.append(f"{name} degeneration")
            if any(v[0] != v[1] for v in ranks.values()):
                problems.append(f"{name} ranks depend on R")
        return problems
    problems, secs = timed(body)
    ok = not problems and secs < 5
    record(7, ok, f"{len(problems)} mismatches {problems[:3]}, {secs:.2f}s")
    assert ok


def test_criterion_08_free_singular_theorem():
    def body():
        fails = 0
        golden = verify_theorem_free_singular(DEMOS["banana"](R2), banana_ambient(), 1, 1)
        rng = rng_for(808)
        for _ in range(100):
            M, glob = random_snc_model(rng, R2)
            p = q = rng.choice([0, 1])
            X = random_ambient(rng, M, glob, p, q)
            rep = verify_theorem_free_singular(M, X, p, q)
            fails += not (rep.coker_free and rep.weight_transverse)
        return golden, fails
    (golden, fails), secs = timed(body)
    ok = golden.coker_free and golden.weight_transverse and fails == 0 and secs < 60
    record(8, ok, f"banana rank {golden.rank}, {fails}/100 random failures, {secs:.2f}s")
    assert ok


def _base_changed_dims(S, f):
    """Dimensions of H, F^p, W_m and Gr pieces of S (x) A' along f."""
    H = S.H
    Q, P = _base_change(H, f)
    e = f.target.dim

    def push(sub):
        gens = []
        for r in sub.rows:
            t = [QQI.zero] * (H.dim * e)
            for u, c in enumerate(r):
                t[u * e] = c
            gens.append(P(t))
        return Q.span(gens)

    Fs = {p: push(S.F(p)) for p in S.p_range}
    Ws = {m: push(S.W(m)) for m in range(S.wlo - 1, S.whi + 1)}
    gr = {}
    for m in S.weights:
        for p in range(S.flo, S.fhi + 1):
            num = (Fs[p] & Ws[m]) + Ws[m - 1]
            den = (Fs[p + 1] & Ws[m]) + Ws[m - 1]
            gr[(p, m)] = Subquotient(num, den).module.dim
    return Q.dim, {p: s.dim for p, s in Fs.items()}, {m: s.dim for m, s in Ws.items()}, gr


def _direct_dims(S):
    gr = {(p, m): S.graded(p, m).module.dim for m in S.weights for p in range(S.flo, S.fhi + 1)}
    return (S.H.dim, {p: S.F(p).dim for p in S.p_range},
            {m: S.W(m).dim for m in range(S.wlo - 1, S.whi + 1)}, gr)


def test_criterion_09_base_change_coherence():
    rng = rng_for(909)
    to2 = RingMap(R3, R2, [[0, 1]])
    to1 = residue_map(R3)
    mismatches = 0
    for _ in range(10):
        M, _ = random_snc_model(rng, R3)
        for k in range(len(betti_numbers(M))):
            S3 = assemble_mhs(M, k).structure
            for f, B in ((to2, R2), (to1, to1.target)):
                direct = _direct_dims(assemble_mhs(M.over(B), k).structure)
                mismatches += _base_changed_dims(S3, f) != direct
    record(9, mismatches == 0, f"{mismatches} dimension mismatches over 10 models")
    assert mismatches == 0


def test_criterion_10_cli_determinism():
    differing = []
    for argv in GOLDEN:
        reports = [invoke(argv)[1] for _ in range(3)]
        if len({stable(r) for r in reports}) != 1:
            differing.append(" ".join(argv[:2]))
    record(10, not differing, f"{len(GOLDEN)} golden inputs x 3 runs, {len(differing)} differ")
    assert not differing
