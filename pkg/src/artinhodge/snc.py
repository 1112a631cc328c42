"""Combinatorial model of a locally trivial simple normal crossing family.

A model is a dual complex (which intersections ``Y^I`` are nonempty) plus,
for every stratum, Hodge numbers ``h^{p,q}`` and rational restriction maps
to the strata one level deeper.  Stratum cohomology is taken to be
``lattice (x) R``: free and compatible with base change.

Lattice convention for a weight-``m`` piece with Hodge numbers ``h^{p,q}``:
for ``p < q`` the ``h^{p,q}`` pairs ``(e_j, f_j)`` carry ``H^{p,q}`` on
``e_j + i f_j`` and ``H^{q,p}`` on ``e_j - i f_j``; for ``p = q`` the real
vectors carry ``H^{p,p}``.  A rational map given on the ``(p,q)`` component
acts on ``e`` and ``f`` coordinates alike, so it commutes with conjugation.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .algebra import ArtinAlgebra
from .complexes import (BoundedComplex, DoubleComplex, column_filtration, cohomology,
                        degeneration_check, spectral_pages, total_complex, zero_map,
                        zero_module)
from .errors import (DimensionMismatch, NotCocycle, PreconditionUnmet, PurityViolation,
                     SemiSimplicialViolation, VerifyFailure)
from .hodge import (HodgeMorphism, MixedHodgeStructure, check_pullback_constant_rank,
                    verify_mhs)
from .linalg import Subspace, identity, kernel as lin_kernel, kron, matmul, zeros
from .modules import ModuleMap, Submodule, direct_sum, free_module, image, is_free
from .rank import complex_cohomology_free_check, constant_rank
from .scalars import QQ, QQI, Gaussian


def _key(pq) -> tuple:
    if isinstance(pq, str):
        a, b = pq.split(",")
        return int(a), int(b)
    return tuple(pq)


class DualComplex:
    """Nonempty index sets of components ``1..n``, closed under nonempty subsets."""

    def __init__(self, n: int, simplices):
        self.n = n
        self.simplices = sorted({tuple(sorted(I)) for I in simplices}, key=lambda I: (len(I), I))
        present = set(self.simplices)
        for i in range(1, n + 1):
            if (i,) not in present:
                raise DimensionMismatch(f"component {i} is missing")
        for I in self.simplices:
            if any(j < 1 or j > n for j in I):
                raise DimensionMismatch(f"stratum {I} uses an unknown component")
            for r in range(1, len(I)):
                for J in combinations(I, r):
                    if J not in present:
                        raise DimensionMismatch(f"face {J} of {I} is missing")

    def level(self, a: int) -> list:
        """Strata ``I`` with ``|I| = a + 1``, lexicographic."""
        return [I for I in self.simplices if len(I) == a + 1]

    @property
    def top(self) -> int:
        return max(len(I) for I in self.simplices) - 1


@dataclass
class StratumData:
    hodge: dict                 # I -> {(p, q): rank}
    faces: dict                 # (I, J) -> {(p, q): rational matrix rank_J x rank_I}

    def rank(self, I, pq) -> int:
        return self.hodge.get(I, {}).get(pq, 0)

    def face(self, I, J, pq) -> list:
        rI, rJ = self.rank(I, pq), self.rank(J, pq)
        m = self.faces.get((I, J), {}).get(pq)
        if m is None:
            return zeros(QQ, rJ, rI)
        return m


class SNCModel:
    def __init__(self, dual: DualComplex, data: StratumData, algebra: ArtinAlgebra):
        if not algebra.field.is_gaussian:
            raise PreconditionUnmet("the base algebra must be over Q(i)")
        self.dual, self.data, self.algebra = dual, data, algebra
        self._validate()

    def over(self, algebra: ArtinAlgebra) -> "SNCModel":
        return SNCModel(self.dual, self.data, algebra)

    # bidegrees present anywhere
    @property
    def bidegrees(self) -> list:
        keys = {pq for h in self.data.hodge.values() for pq, r in h.items() if r}
        return sorted(keys, key=lambda pq: (pq[0] + pq[1], pq[0]))

    @property
    def max_weight(self) -> int:
        return max((p + q for p, q in self.bidegrees), default=0)

    def _validate(self):
        D, S = self.dual, self.data
        present = set(D.simplices)
        for I in S.hodge:
            if I not in present:
                raise DimensionMismatch(f"Hodge data for a missing stratum {I}")
        for I in D.simplices:
            h = S.hodge.get(I, {})
            for (p, q), r in h.items():
                if r < 0 or h.get((q, p), 0) != r:
                    raise PurityViolation(f"stratum {I}: h^{p},{q} != h^{q},{p}")
        for (I, J), mats in S.faces.items():
            if I not in present or J not in present or len(J) != len(I) + 1 or not set(I) < set(J):
                raise DimensionMismatch(f"face {I} -> {J} is not a codimension-one inclusion")
            for pq, M in mats.items():
                rI, rJ = S.rank(I, pq), S.rank(J, pq)
                if len(M) != rJ or any(len(r) != rI for r in M):
                    raise DimensionMismatch(f"face {I} -> {J} at {pq} has the wrong shape")
                qp = (pq[1], pq[0])
                if [list(r) for r in S.face(I, J, qp)] != [list(r) for r in M]:
                    raise PurityViolation(f"face {I} -> {J}: maps at {pq} and {qp} differ")
        # semi-simplicial identities: restrictions commute along both routes
        for K in D.simplices:
            if len(K) < 3:
                continue
            for I in combinations(K, len(K) - 2):
                mids = [tuple(sorted(set(I) | {x})) for x in K if x not in I]
                for pq in self.bidegrees:
                    routes = [matmul(S.face(J, K, pq), S.face(I, J, pq), QQ,
                                     ncols=S.rank(I, pq)) if S.rank(K, pq) else []
                              for J in mids]
                    if routes[0] != routes[1]:
                        raise SemiSimplicialViolation(
                            f"restrictions {I} -> {K} disagree at {pq}")

    # --- rational Čech data ------------------------------------------------

    def cech_matrix(self, a: int, pq) -> list:
        """``delta: C^a -> C^{a+1}`` at bidegree ``pq`` over Q, with the
        alternating sign ``(-1)^j`` for the face omitting position ``j``."""
        S = self.data
        src, tgt = self.dual.level(a), self.dual.level(a + 1)
        co = [0]
        for I in src:
            co.append(co[-1] + S.rank(I, pq))
        ro = [0]
        for J in tgt:
            ro.append(ro[-1] + S.rank(J, pq))
        M = zeros(QQ, ro[-1], co[-1])
        for jj, J in enumerate(tgt):
            for pos, x in enumerate(J):
                I = tuple(y for y in J if y != x)
                ii = src.index(I)
                sign = 1 if pos % 2 == 0 else -1
                B = S.face(I, J, pq)
                for r in range(len(B)):
                    for c in range(len(B[r])):
                        if B[r][c]:
                            M[ro[jj] + r][co[ii] + c] += sign * QQ(B[r][c])
        return M

    def cech_dim(self, a: int, pq) -> int:
        return sum(self.data.rank(I, pq) for I in self.dual.level(a))

    def rational_e2(self, a: int, pq) -> tuple[int, list]:
        """``dim E_2^{a,pq}`` over Q and, for ``a = 0``, a kernel basis."""
        n = self.cech_dim(a, pq)
        dn = self.cech_matrix(a, pq)
        ker = lin_kernel(dn, n, QQ) if dn else Subspace.full(QQ, n)
        if a == 0:
            return ker.dim, [list(r) for r in ker.rows]
        prev = self.cech_matrix(a - 1, pq)
        im_dim = Subspace(QQ, n, [list(c) for c in zip(*prev)]).dim if prev and prev[0] else 0
        return ker.dim - im_dim, []

    def euler_characteristic(self) -> int:
        chi = 0
        for I in self.dual.simplices:
            c = sum((-1) ** (p + q) * r for (p, q), r in self.data.hodge.get(I, {}).items())
            chi += (-1) ** (len(I) + 1) * c
        return chi


def _lift(M, A: ArtinAlgebra, field=QQI) -> list:
    return kron([[field(x) for x in r] for r in M], identity(field, A.dim), field)


# --- Čech complex and weight spectral sequence ---------------------------

def cech_complex(M: SNCModel, p: int, q: int) -> BoundedComplex:
    A = M.algebra
    top = M.dual.top
    terms = [free_module(A, M.cech_dim(a, (p, q))) for a in range(top + 1)]
    diffs = []
    for a in range(top):
        mat = _lift(M.cech_matrix(a, (p, q)), A) if terms[a + 1].dim else []
        if terms[a + 1].dim and not terms[a].dim:
            mat = [[] for _ in range(terms[a + 1].dim)]
        diffs.append(ModuleMap(terms[a], terms[a + 1], mat, check=False))
    return BoundedComplex(0, terms, diffs)


@dataclass
class WeightSS:
    p: int
    pages: list
    e2: dict                  # (a, q) -> rank over R
    degenerates_e1: bool
    degenerates_e2: bool
    total: BoundedComplex


def weight_ss(M: SNCModel, p: int) -> WeightSS:
    """Rows ``q`` of the weight spectral sequence for ``Gr_F^p``, as a double
    complex with columns ``a`` (zero vertical maps) and its column filtration."""
    A = M.algebra
    qs = sorted({q for (pp, q) in M.bidegrees if pp == p})
    top = M.dual.top
    terms, dh = {}, {}
    rows = {}
    for q in qs:
        K = cech_complex(M, p, q)
        rows[q] = K
        for a in range(top + 1):
            terms[(a, q)] = K.term(a)
        for a in range(top):
            dh[(a, q)] = K.d(a)
    if not terms:
        terms[(0, 0)] = zero_module(A)
    D = DoubleComplex(A, terms, dh, {})
    T = total_complex(D)
    F = column_filtration(D, T)
    pages = spectral_pages(F)
    e2 = {}
    page2 = pages[2]
    for (a, q) in terms:
        rk = page2.dim(a, q)
        if rk:
            G = page2.module(a, q)
            v = is_free(G)
            if not v.free:
                raise VerifyFailure(f"E_2^({a},{q}) is not free")
            e2[(a, q)] = v.rank
    for q, K in rows.items():
        for a in range(1, top):
            d1, d2 = K.d(a - 1), K.d(a)
            if d1.source.dim and d2.target.dim and K.term(a).dim:
                if not complex_cohomology_free_check(d1, d2).free:
                    raise VerifyFailure(f"row {q}: cohomology in column {a} is not free")
        for a in range(top):
            d = K.d(a)
            if d.source.dim and d.target.dim and not constant_rank(d).constant:
                raise VerifyFailure(f"row {q}: delta in column {a} is not of constant rank")
    abut = sum(cohomology(T, n).dim for n in T.degrees)
    if abut != sum(page2.dim(a, q) for (a, q) in terms):
        raise VerifyFailure("E_2 lengths do not add up to the abutment")
    return WeightSS(p, pages, e2, degeneration_check(pages, 1), degeneration_check(pages, 2), T)


# --- assembled mixed Hodge structure -------------------------------------

@dataclass
class Block:
    a: int
    p: int
    q: int
    rank: int
    offset: int
    kernel_basis: list = dc_field(default_factory=list)

    @property
    def weight(self) -> int:
        return self.p + self.q

    @property
    def size(self) -> int:
        return self.rank if self.p == self.q else 2 * self.rank

    def hodge_vectors(self, N: int) -> dict:
        """Lattice-complexified generators of ``H^{p,q}`` and ``H^{q,p}``."""
        out = {}
        o, c = self.offset, self.rank
        if self.p == self.q:
            vs = []
            for j in range(c):
                v = [QQI.zero] * N
                v[o + j] = QQI.one
                vs.append(v)
            out[(self.p, self.q)] = vs
            return out
        plus, minus = [], []
        for j in range(c):
            v = [QQI.zero] * N
            w = [QQI.zero] * N
            v[o + j] = w[o + j] = QQI.one
            v[o + c + j] = Gaussian(0, 1)
            w[o + c + j] = Gaussian(0, -1)
            plus.append(v)
            minus.append(w)
        out[(self.p, self.q)] = plus
        out[(self.q, self.p)] = minus
        return out


@dataclass
class SplitLattice:
    blocks: list
    dim: int

    def block(self, a, p, q):
        for b in self.blocks:
            if (b.a, b.p, b.q) == (a, min(p, q), max(p, q)):
                return b
        return None


def split_structure(A: ArtinAlgebra, lattice: SplitLattice, weight=None) -> MixedHodgeStructure:
    """Constant structure ``lattice (x) R`` with ``F`` and ``W`` split along blocks."""
    N = lattice.dim
    d = A.dim
    H = free_module(A, N)

    def lift(v):
        out = [QQI.zero] * (N * d)
        for s, x in enumerate(v):
            out[s * d] = x
        return out

    hv = []
    for b in lattice.blocks:
        for (p, q), vs in b.hodge_vectors(N).items():
            hv.append((p, q, b.weight, [lift(v) for v in vs]))
    ps = sorted({p for p, _, _, _ in hv})
    ws = sorted({m for _, _, m, _ in hv})
    F, W = {}, {}
    if ps:
        for p in range(ps[0], ps[-1] + 1):
            F[p] = H.span([v for (r, _, _, vs) in hv if r >= p for v in vs])
    if ws:
        for m in range(ws[0], ws[-1] + 1):
            W[m] = H.span([v for (_, _, w, vs) in hv if w <= m for v in vs])
    if weight is not None and not W:
        W = {weight: H.whole()}
    return MixedHodgeStructure(N, A, F, W, weight, H)


def _lattice_for(M: SNCModel, k: int) -> SplitLattice:
    blocks, off = [], 0
    for (p, q) in M.bidegrees:
        if p > q:
            continue
        a = k - p - q
        if a < 0 or a > M.dual.top:
            continue
        c, K = M.rational_e2(a, (p, q))
        if c:
            b = Block(a, p, q, c, off, K)
            blocks.append(b)
            off += b.size
    return SplitLattice(blocks, off)


@dataclass
class AssembledMHS:
    k: int
    structure: MixedHodgeStructure
    lattice: SplitLattice
    e2_ranks: dict            # (a, p, q) -> rank over R

    @property
    def rank(self) -> int:
        return self.lattice.dim

    def weights(self) -> dict:
        out = {}
        for b in self.lattice.blocks:
            out[b.weight] = out.get(b.weight, 0) + b.size
        return out

    def hodge_numbers(self) -> dict:
        out = {}
        for b in self.lattice.blocks:
            out[(b.p, b.q)] = out.get((b.p, b.q), 0) + b.rank
            if b.p != b.q:
                out[(b.q, b.p)] = out.get((b.q, b.p), 0) + b.rank
        return out


def _check_strata_pure(M: SNCModel):
    for I in M.dual.simplices:
        h = M.data.hodge.get(I, {})
        for m in sorted({p + q for (p, q), r in h.items() if r}):
            blocks, off = [], 0
            for (p, q), r in sorted(h.items()):
                if p + q == m and p <= q and r:
                    b = Block(0, p, q, r, off)
                    blocks.append(b)
                    off += b.size
            S = split_structure(M.algebra, SplitLattice(blocks, off), weight=m)
            if not verify_mhs(S).valid:
                raise PurityViolation(f"stratum {I} is not pure of weight {m}")


def assemble_mhs(M: SNCModel, k: int, check: bool = True) -> AssembledMHS:
    if check:
        _check_strata_pure(M)
    lat = _lattice_for(M, k)
    S = split_structure(M.algebra, lat)
    e2 = {}
    for p in sorted({p for p, _ in M.bidegrees}):
        ss = weight_ss(M, p)
        for (a, q), r in ss.e2.items():
            if a + p + q == k:
                e2[(a, p, q)] = r
    for b in lat.blocks:
        for (p, q) in {(b.p, b.q), (b.q, b.p)}:
            if e2.get((b.a, p, q), 0) != b.rank:
                raise VerifyFailure(f"E_2^({b.a},({p},{q})) rank disagrees with the lattice")
    if sum(e2.values()) != lat.dim:
        raise VerifyFailure("E_2 ranks do not add up to the assembled rank")
    if check:
        rep = verify_mhs(S)
        if not rep.valid:
            raise VerifyFailure(f"assembled structure fails {rep.failures()}")
        gr = S.graded_ranks()
        for (p, q), r in gr.items():
            cells = sum(v for (a, pp, qq), v in e2.items() if pp == p and qq == q)
            if cells != r:
                raise VerifyFailure(f"Gr ranks at {(p, q)} disagree with E_2")
    return AssembledMHS(k, S, lat, e2)


def betti_numbers(M: SNCModel) -> list:
    top = M.max_weight + M.dual.top
    return [assemble_mhs(M, k, check=False).rank for k in range(top + 1)]


# --- ambient smooth variety and pullback ---------------------------------

@dataclass
class AmbientData:
    """A smooth proper ``X`` with ``h^{p,q}`` and rational restriction maps to
    each component: ``maps[i][(p,q)]`` is ``rank_{{i}} x rank_X``."""

    hodge: dict
    maps: dict

    def rank(self, pq) -> int:
        return self.hodge.get(pq, 0)


@dataclass
class Pullback:
    k: int
    morphism: HodgeMorphism
    source: MixedHodgeStructure
    target: AssembledMHS
    phi: dict                 # (p, q) -> rational matrix into C^0


def _ambient_structure(A: ArtinAlgebra, X: AmbientData, k: int):
    blocks, off = [], 0
    for (p, q), r in sorted(X.hodge.items()):
        if p + q == k and p <= q and r:
            b = Block(0, p, q, r, off)
            blocks.append(b)
            off += b.size
    lat = SplitLattice(blocks, off)
    return split_structure(A, lat, weight=k), lat


def _phi(M: SNCModel, X: AmbientData, pq) -> list:
    rows = []
    for (i,) in M.dual.level(0):
        r = M.data.rank((i,), pq)
        mat = X.maps.get(i, {}).get(pq)
        if mat is None:
            mat = zeros(QQ, r, X.rank(pq))
        if len(mat) != r or any(len(row) != X.rank(pq) for row in mat):
            raise DimensionMismatch(f"ambient map to component {i} at {pq} has the wrong shape")
        rows.extend([QQ(x) for x in row] for row in mat)
    return rows


def pullback_from_ambient(M: SNCModel, X: AmbientData, k: int) -> Pullback:
    for (p, q), r in X.hodge.items():
        if X.hodge.get((q, p), 0) != r:
            raise PurityViolation(f"ambient h^{p},{q} != h^{q},{p}")
    src, src_lat = _ambient_structure(M.algebra, X, k)
    tgt = assemble_mhs(M, k)
    N, Nx = tgt.lattice.dim, src_lat.dim
    f = zeros(QQ, N, Nx)
    phis = {}
    for b in src_lat.blocks:
        pq = (b.p, b.q)
        phi = _phi(M, X, pq)
        phis[pq] = phi
        if b.p != b.q:
            phis[(b.q, b.p)] = _phi(M, X, (b.q, b.p))
            if phis[(b.q, b.p)] != phi:
                raise PurityViolation(f"ambient maps at {pq} and its conjugate differ")
        d0 = M.cech_matrix(0, pq)
        if d0 and phi and any(any(x for x in row) for row in matmul(d0, phi, QQ, ncols=b.rank)):
            raise NotCocycle(f"delta o phi != 0 at {pq}")
        tb = tgt.lattice.block(0, *pq)
        if tb is None:
            if any(any(x for x in r) for r in phi):
                raise NotCocycle(f"no weight-{k} target for a nonzero phi at {pq}")
            continue
        kb = Subspace(QQ, len(phi), tb.kernel_basis)
        for j in range(b.rank):
            col = [phi[r][j] for r in range(len(phi))]
            coords = kb.coordinates(col)
            # kernel_basis rows are in RREF, so coordinates are pivot entries
            for t, c in enumerate(coords):
                if c:
                    f[tb.offset + t][b.offset + j] = c
                    if b.p != b.q:
                        f[tb.offset + tb.rank + t][b.offset + b.rank + j] = c
    mor = HodgeMorphism(src, tgt.structure, f)
    return Pullback(k, mor, src, tgt, phis)


def eta_map(pb: Pullback, M: SNCModel, p: int, q: int) -> tuple[ModuleMap, ModuleMap]:
    """Projection of ``H^k`` onto ``E_2^{0,(p,q)} = ker delta`` inside ``C^0``,
    and ``delta: C^0 -> C^1`` at ``(p, q)``, both over R."""
    A = M.algebra
    d = A.dim
    tgt = pb.target
    H = tgt.structure.H
    C0 = free_module(A, M.cech_dim(0, (p, q)))
    C1 = free_module(A, M.cech_dim(1, (p, q)))
    N = tgt.lattice.dim
    E = zeros(QQI, M.cech_dim(0, (p, q)), N)
    b = tgt.lattice.block(0, p, q)
    if b is not None:
        K = b.kernel_basis
        for j, kv in enumerate(K):
            for r, x in enumerate(kv):
                if not x:
                    continue
                if b.p == b.q:
                    E[r][b.offset + j] = QQI(x)
                else:
                    # e_j and f_j combine to the (p,q) vector e + i f
                    half = QQI(x) / 2
                    E[r][b.offset + j] = half
                    sgn = Gaussian(0, -1) if p == b.p else Gaussian(0, 1)
                    E[r][b.offset + b.rank + j] = half * sgn
    eta = ModuleMap(H, C0, _lift(E, A) if C0.dim else [], check=False)
    dm = M.cech_matrix(0, (p, q))
    delta = ModuleMap(C0, C1, _lift(dm, A) if C1.dim and C0.dim else
                      zeros(QQI, C1.dim, C0.dim), check=False)
    return eta, delta


@dataclass
class FreeSingularReport:
    p: int
    q: int
    coker_free: bool
    weight_transverse: bool
    rank: int | None
    steps: object

    @property
    def passed(self) -> bool:
        return self.coker_free and self.weight_transverse and self.steps.passed


def verify_theorem_free_singular(M: SNCModel, X: AmbientData, p: int, q: int) -> FreeSingularReport:
    k = p + q
    pb = pullback_from_ambient(M, X, k)
    eta, delta = eta_map(pb, M, p, q)
    steps = check_pullback_constant_rank(pb.morphism, p, q, eta, delta)
    S = pb.target.structure
    im = pb.morphism.apply(pb.source.H.whole())
    transverse = (im & S.W(k - 1)).is_zero()
    return FreeSingularReport(p, q, steps.coker_free, transverse, steps.rank, steps)


# --- demos and JSON ------------------------------------------------------

P1 = {(0, 0): 1, (1, 1): 1}


def _curve_model(n: int, edges: dict, A: ArtinAlgebra) -> SNCModel:
    """``n`` rational curves; ``edges[(i, j)]`` intersection points."""
    simplices = [(i,) for i in range(1, n + 1)] + list(edges)
    hodge = {(i,): dict(P1) for i in range(1, n + 1)}
    faces = {}
    for (i, j), pts in edges.items():
        hodge[(i, j)] = {(0, 0): pts}
        col = [[1] for _ in range(pts)]
        faces[((i,), (i, j))] = {(0, 0): col}
        faces[((j,), (i, j))] = {(0, 0): col}
    return SNCModel(DualComplex(n, simplices), StratumData(hodge, faces), A)


def wedge(A: ArtinAlgebra) -> SNCModel:
    return _curve_model(2, {(1, 2): 1}, A)


def banana(A: ArtinAlgebra) -> SNCModel:
    return _curve_model(2, {(1, 2): 2}, A)


def triangle(A: ArtinAlgebra) -> SNCModel:
    return _curve_model(3, {(1, 2): 1, (1, 3): 1, (2, 3): 1}, A)


DEMOS = {"wedge": wedge, "banana": banana, "triangle": triangle}


def banana_ambient() -> AmbientData:
    """A surface containing the banana whose ``H^{1,1}`` has rank 2 and maps
    diagonally to the two components."""
    return AmbientData({(0, 0): 1, (1, 1): 2, (2, 2): 1},
                       {1: {(0, 0): [[1]], (1, 1): [[1, 0]]},
                        2: {(0, 0): [[1]], (1, 1): [[0, 1]]}})


def _mat(obj):
    return [[QQ.parse(x) for x in row] for row in obj]


def model_from_json(obj: dict, A: ArtinAlgebra) -> SNCModel:
    n = int(obj["components"])
    simplices, hodge = [], {}
    for s in obj["strata"]:
        I = tuple(sorted(s["I"]))
        simplices.append(I)
        hodge[I] = {_key(k): int(v) for k, v in s.get("hodge", {}).items()}
    faces = {}
    for f in obj.get("faces", []):
        I, J = tuple(sorted(f["from"])), tuple(sorted(f["to"]))
        faces[(I, J)] = {_key(k): _mat(m) for k, m in f.get("matrices", {}).items()}
    return SNCModel(DualComplex(n, simplices), StratumData(hodge, faces), A)


def model_to_json(M: SNCModel) -> dict:
    dump = lambda m: [[QQ.dump(QQ(x)) for x in r] for r in m]
    return {
        "components": M.dual.n,
        "strata": [{"I": list(I), "hodge": {f"{p},{q}": r for (p, q), r in
                                             sorted(M.data.hodge.get(I, {}).items())}}
                   for I in M.dual.simplices],
        "faces": [{"from": list(I), "to": list(J),
                   "matrices": {f"{p},{q}": dump(m) for (p, q), m in sorted(mats.items())}}
                  for (I, J), mats in sorted(M.data.faces.items())],
    }


def ambient_from_json(obj: dict) -> AmbientData:
    hodge = {_key(k): int(v) for k, v in obj["hodge"].items()}
    maps = {}
    for m in obj.get("maps", []):
        (i,) = m["to"]
        maps[int(i)] = {_key(k): _mat(v) for k, v in m.get("matrices", {}).items()}
    return AmbientData(hodge, maps)
