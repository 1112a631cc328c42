"""Seeded generators of random instances for property checks."""
from __future__ import annotations

import random
from itertools import combinations

from .algebra import (ArtinAlgebra, build_algebra, dual_numbers, monomials_of_degree,
                      monomials_upto, presentation)
from .errors import NilpotencyBoundViolated
from .hodge import MixedHodgeStructure
from .linalg import Subspace, rank, zeros
from .modules import FinModule, ModuleMap, free_module, map_from_r_matrix
from .scalars import QQ, QQI, Gaussian
from .snc import AmbientData, DualComplex, SNCModel, StratumData


def rng_for(seed) -> random.Random:
    return random.Random(seed)


def gaussian(rng: random.Random, spread: int = 2, real: bool = False) -> Gaussian:
    re = rng.randint(-spread, spread)
    im = 0 if real else rng.randint(-spread, spread)
    return Gaussian(re, im)


def rational(rng: random.Random, spread: int = 3):
    return QQ(rng.randint(-spread, spread))


def random_algebra(rng: random.Random, max_vars: int = 3, max_bound: int = 4,
                   max_dim: int = 4) -> ArtinAlgebra:
    """A local algebra over Q(i) with at most ``max_dim`` basis elements.

    The relations contain every monomial of degree ``N`` plus a few random
    polynomials without constant term, so ``N`` is always a valid bound.
    """
    while True:
        n = rng.choice([0] + [k for k in range(1, max_vars + 1) for _ in range(2)])
        N = rng.randint(2, max_bound) if n and max_bound > 1 else 1
        rels = [{m: Gaussian(1)} for m in monomials_of_degree(n, N)] if n else []
        pool = [m for m in monomials_upto(n, N - 1) if sum(m) > 0]
        for _ in range(rng.randint(0, min(2, len(pool)))):
            k = rng.randint(1, min(3, len(pool)))
            f = {m: gaussian(rng) for m in rng.sample(pool, k)}
            f = {m: c for m, c in f.items() if c}
            if f:
                rels.append(f)
        try:
            A = build_algebra(presentation(QQI, n, rels, N))
        except NilpotencyBoundViolated:
            continue
        if A.dim <= max_dim:
            return A


def standard_algebras() -> list:
    return [dual_numbers(QQI, 2, "e"), dual_numbers(QQI, 3, "e"),
            build_algebra(presentation(QQI, 2, [{(2, 0): 1}, {(0, 2): 1}], 3, ("x", "y")))]


def random_element(rng: random.Random, A: ArtinAlgebra, unit_bias: float = 0.5) -> list:
    v = [gaussian(rng, 1) if A.field.is_gaussian else rational(rng, 1) for _ in range(A.dim)]
    if rng.random() >= unit_bias:
        v[0] = A.field.zero
    elif not v[0]:
        v[0] = A.field.one
    return v


def random_free_map(rng: random.Random, A: ArtinAlgebra, max_rank: int = 5) -> ModuleMap:
    """A map between free modules whose entries mix units, nilpotents and zeros."""
    r = rng.randint(1, max_rank)
    c = rng.randint(1, max_rank)
    S, T = free_module(A, c), free_module(A, r)
    style = rng.random()
    entries = []
    for _ in range(r):
        row = []
        for _ in range(c):
            x = rng.random()
            if x < 0.35:
                row.append([A.field.zero] * A.dim)
            else:
                row.append(random_element(rng, A, unit_bias=style))
        entries.append(row)
    return map_from_r_matrix(S, T, entries)


def random_three_term(rng: random.Random, A: ArtinAlgebra, max_rank: int = 3):
    """``f: R^a -> R^b`` and ``g: R^b -> R^c`` with ``g f = 0``, either from a
    split construction (often exact) or ``g`` = projection to ``coker f``."""
    from .modules import cokernel, image, quotient
    f = random_free_map(rng, A, max_rank)
    if rng.random() < 0.5:
        Q, P = quotient(image(f))
        return f, P
    # block-split: R^a -> R^a (+) R^c -> R^c, exact
    a = rng.randint(1, max_rank)
    c = rng.randint(1, max_rank)
    Fa, Fb, Fc = free_module(A, a), free_module(A, a + c), free_module(A, c)
    one, zero = A.unit_vector(0), [A.field.zero] * A.dim
    incl = [[one if i == j else zero for j in range(a)] for i in range(a + c)]
    proj = [[one if j == a + i else zero for j in range(a + c)] for i in range(c)]
    return map_from_r_matrix(Fa, Fb, incl), map_from_r_matrix(Fb, Fc, proj)


def _real_basis(rng: random.Random, n: int) -> list:
    while True:
        B = [[rational(rng, 2) for _ in range(n)] for _ in range(n)]
        if rank(B, n, QQ) == n:
            return B


def random_hodge_numbers(rng: random.Random, n: int, k: int) -> dict:
    """Symmetric ``h^{p,q}`` with ``p + q = k`` summing to ``n`` (``None`` if impossible)."""
    if k % 2 and n % 2:
        return None
    h = {}
    left = n
    pairs = [(p, k - p) for p in range(k + 1) if p < k - p]
    while left >= 2 and pairs and rng.random() < 0.7:
        p, q = rng.choice(pairs)
        h[(p, q)] = h.get((p, q), 0) + 1
        h[(q, p)] = h[(p, q)]
        left -= 2
    if left:
        if k % 2:
            p, q = pairs[0]
            h[(p, q)] = h.get((p, q), 0) + left // 2
            h[(q, p)] = h[(p, q)]
        else:
            h[(k // 2, k // 2)] = left
    return h


def random_pure_structure(rng: random.Random, A: ArtinAlgebra, n: int, k: int,
                          deform: bool = True) -> MixedHodgeStructure:
    """A pure weight-``k`` structure on ``Q(i)**n (x) A``: a random classical
    Hodge decomposition on the fiber, with generators deformed by random
    higher-order terms."""
    h = random_hodge_numbers(rng, n, k)
    if h is None:
        raise ValueError("odd weight needs even rank")
    B = _real_basis(rng, n)
    cols = [[B[r][c] for r in range(n)] for c in range(n)]
    gens = []  # (p, vector in Q(i)^n)
    ci = 0
    for p in range(k + 1):
        q = k - p
        r = h.get((p, q), 0)
        if p < q:
            for _ in range(r):
                a, b = cols[ci], cols[ci + 1]
                ci += 2
                gens.append((p, [Gaussian(x, y) for x, y in zip(a, b)]))
                gens.append((q, [Gaussian(x, -y) for x, y in zip(a, b)]))
        elif p == q:
            for _ in range(r):
                gens.append((p, [Gaussian(x) for x in cols[ci]]))
                ci += 1
    d = A.dim
    lifted = []
    for p, v in gens:
        w = [QQI.zero] * (n * d)
        for s in range(n):
            w[s * d] = v[s]
            if deform:
                for t in range(1, d):
                    w[s * d + t] = gaussian(rng, 1)
        lifted.append((p, w))
    F = {}
    ps = [p for p, _ in gens]
    for p in range(min(ps), max(ps) + 1):
        F[p] = [w for r, w in lifted if r >= p]
    return MixedHodgeStructure.from_generators(n, A, F, weight=k)


def random_sum_structure(rng: random.Random, A: ArtinAlgebra, n1: int, n2: int, k: int):
    """``H1 (+) H2`` with both summands pure of weight ``k``."""
    H1 = random_pure_structure(rng, A, n1, k)
    H2 = random_pure_structure(rng, A, n2, k)
    n, d = n1 + n2, A.dim
    F = {}
    for p in range(min(H1.flo, H2.flo), max(H1.fhi, H2.fhi) + 1):
        rows = []
        for r in H1.F(p).rows:
            rows.append(list(r) + [QQI.zero] * (n2 * d))
        for r in H2.F(p).rows:
            rows.append([QQI.zero] * (n1 * d) + list(r))
        F[p] = rows
    return MixedHodgeStructure.from_generators(n, A, F, weight=k)


def random_lattice_morphism(rng: random.Random, n1: int, n2: int) -> list:
    """A rational endomorphism of ``Q**(n1+n2)`` preserving both summands."""
    c1, c2 = rng.randint(0, 2), rng.randint(0, 2)
    n = n1 + n2
    f = zeros(QQ, n, n)
    for i in range(n):
        f[i][i] = QQ(c1 if i < n1 else c2)
    return f


# --- SNC models ----------------------------------------------------------

def _random_dual(rng: random.Random, max_components: int = 3):
    n = rng.randint(1, max_components)
    simplices = [(i,) for i in range(1, n + 1)]
    for e in combinations(range(1, n + 1), 2):
        if rng.random() < 0.7:
            simplices.append(e)
    if n == 3 and all(e in simplices for e in [(1, 2), (1, 3), (2, 3)]) and rng.random() < 0.5:
        simplices.append((1, 2, 3))
    return n, simplices


def random_snc_model(rng: random.Random, A: ArtinAlgebra, max_components: int = 3,
                     with_odd: bool = True):
    """A random model built from quotients ``V/K_I`` of global spaces ``V``
    (``K_I`` growing with ``I``), plus extra blocks whose maps are zero.

    Returns the model and the per-bidegree global data needed to build
    compatible ambient varieties.
    """
    n, simplices = _random_dual(rng, max_components)
    types = [(0, 0), (1, 1)] + ([(0, 1)] if with_odd else [])
    glob = {}
    for pq in types:
        v = rng.randint(0, 2) if pq != (0, 0) else rng.randint(1, 2)
        # deeper strata lose more classes: each non-component adds a vector
        seeds = {I: [[rational(rng, 1) for _ in range(v)]
                     for _ in range(rng.randint(0, 1) + (len(I) > 1))]
                 for I in simplices} if v else {}
        K = {}
        for I in simplices:
            rows = []
            for r in range(1, len(I) + 1):
                for J in combinations(I, r):
                    rows.extend(seeds.get(J, []))
            K[I] = Subspace(QQ, v, rows)
        extra = {I: (rng.randint(0, 1) if rng.random() < 0.3 else 0) for I in simplices}
        glob[pq] = (v, K, extra)
    hodge = {I: {} for I in simplices}
    faces = {}

    def proj(K, vec):
        r = K.reduce(vec)
        return [r[c] for c in K.complement_coordinates()]

    for pq, (v, K, extra) in glob.items():
        for I in simplices:
            r = (v - K[I].dim) + extra[I]
            if r:
                hodge[I][pq] = r
                if pq[0] != pq[1]:
                    hodge[I][(pq[1], pq[0])] = r
        for J in simplices:
            if len(J) < 2:
                continue
            for x in J:
                I = tuple(y for y in J if y != x)
                qI = K[I].complement_coordinates()
                rI = len(qI) + extra[I]
                rJ = (v - K[J].dim) + extra[J]
                if not rI or not rJ:
                    continue
                M = zeros(QQ, rJ, rI)
                for j, c in enumerate(qI):
                    e = [QQ(0)] * v
                    e[c] = QQ(1)
                    col = proj(K[J], e)
                    for i, val in enumerate(col):
                        M[i][j] = val
                faces.setdefault((I, J), {})[pq] = M
                if pq[0] != pq[1]:
                    faces[(I, J)][(pq[1], pq[0])] = [list(r) for r in M]
    model = SNCModel(DualComplex(n, simplices), StratumData(hodge, faces), A)
    return model, glob


def random_ambient(rng: random.Random, model: SNCModel, glob: dict, p: int, q: int) -> AmbientData:
    """A smooth ambient whose restrictions factor through the global spaces,
    so that ``delta o phi = 0`` holds by construction."""
    hodge, maps = {}, {}
    k = p + q
    for pq, (v, K, extra) in glob.items():
        if sum(pq) != k:
            continue
        x = rng.randint(0, 2)
        if not x:
            continue
        hodge[pq] = x
        if pq[0] != pq[1]:
            hodge[(pq[1], pq[0])] = x
        phi = [[rational(rng, 1) for _ in range(x)] for _ in range(v)]
        for (i,) in model.dual.level(0):
            Ki = K[(i,)]
            comp = Ki.complement_coordinates()
            rows = []
            for c in range(x):
                r = Ki.reduce([phi[t][c] for t in range(v)])
                rows.append([r[cc] for cc in comp])
            mat = [[rows[c][t] for c in range(x)] for t in range(len(comp))]
            mat += [[QQ(0)] * x for _ in range(extra[(i,)])]
            maps.setdefault(i, {})[pq] = mat
            if pq[0] != pq[1]:
                maps[i][(pq[1], pq[0])] = [list(r) for r in mat]
    return AmbientData(hodge, maps)
