"""Ideals of minors, rank and constant rank of maps between free modules,
and checks of the freeness lemmas for local Artin rings."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import AlgebraElement, ArtinAlgebra
from .errors import InternalInconsistency, NotAComplex, PreconditionUnmet
from .linalg import Subspace
from .modules import (FinModule, ModuleMap, Submodule, Subquotient, cokernel,
                      image, is_free, kernel, quotient)


@dataclass
class IdealOfMinors:
    algebra: ArtinAlgebra
    generators: list

    def is_zero(self) -> bool:
        return not any(g for g in self.generators)

    def is_unit_ideal(self) -> bool:
        # local ring: the ideal is everything iff some generator is a unit
        return any(g.is_unit() for g in self.generators)

    def span(self) -> Subspace:
        A = self.algebra
        rows = [A.mul_vectors(A.unit_vector(i), g.coeffs)
                for g in self.generators for i in range(A.dim)]
        return Subspace(A.field, A.dim, rows)


def _minors_table(entries, A: ArtinAlgebra, jmax: int) -> dict:
    """All minors up to size ``jmax`` by Laplace expansion along the first
    chosen row, memoised on (rows, cols)."""
    nrows = len(entries)
    ncols = len(entries[0]) if entries else 0
    memo: dict = {}
    for c in range(ncols):
        for r in range(nrows):
            memo[((r,), (c,))] = entries[r][c]
    for j in range(2, jmax + 1):
        for rows in combinations(range(nrows), j):
            sub_rows = rows[1:]
            r0 = rows[0]
            for cols in combinations(range(ncols), j):
                acc = A.zero()
                for k, c in enumerate(cols):
                    a = entries[r0][c]
                    if not a:
                        continue
                    minor = memo[(sub_rows, cols[:k] + cols[k + 1:])]
                    if not minor:
                        continue
                    term = a * minor
                    acc = acc - term if k % 2 else acc + term
                memo[(rows, cols)] = acc
    return memo


def minors(phi: ModuleMap, j: int) -> list[AlgebraElement]:
    """All ``j x j`` minors of ``phi`` in its free witnesses."""
    entries = phi.r_matrix()
    A = phi.source.algebra
    if j == 0:
        return [A.one()]
    nrows = len(entries)
    ncols = phi.source.free_rank
    if j > min(nrows, ncols):
        return []
    memo = _minors_table(entries, A, j)
    return [memo[(r, c)] for r in combinations(range(nrows), j)
            for c in combinations(range(ncols), j)]


def minors_ideal(phi: ModuleMap, j: int) -> IdealOfMinors:
    """``I_j(phi)``; ``I_0`` is the unit ideal by convention."""
    return IdealOfMinors(phi.source.algebra, minors(phi, j))


def all_minors_ideals(phi: ModuleMap) -> list[IdealOfMinors]:
    entries = phi.r_matrix()
    A = phi.source.algebra
    nrows, ncols = len(entries), phi.source.free_rank
    top = min(nrows, ncols)
    memo = _minors_table(entries, A, top) if top else {}
    out = [IdealOfMinors(A, [A.one()])]
    for j in range(1, top + 1):
        out.append(IdealOfMinors(A, [memo[(r, c)] for r in combinations(range(nrows), j)
                                     for c in combinations(range(ncols), j)]))
    return out


def rank_of(phi: ModuleMap) -> int:
    """``max{i : I_i(phi) != 0}``."""
    ideals = all_minors_ideals(phi)
    return max(i for i, I in enumerate(ideals) if not I.is_zero())


@dataclass(frozen=True)
class ConstantRank:
    constant: bool
    rank: int | None
    coker_free: bool

    def __bool__(self):
        return self.constant

    def __repr__(self):
        return f"constant({self.rank})" if self.constant else "not_constant"


def constant_rank(phi: ModuleMap) -> ConstantRank:
    """Constant rank ``k`` means ``I_k = R`` and ``I_{k+1} = 0``.

    The verdict is cross-checked against freeness of the cokernel, which is
    equivalent over a local ring; disagreement raises
    :class:`InternalInconsistency`.
    """
    ideals = all_minors_ideals(phi)
    k = None
    for j, I in enumerate(ideals):
        nxt_zero = j + 1 >= len(ideals) or ideals[j + 1].is_zero()
        if I.is_unit_ideal() and nxt_zero:
            k = j
            break
    coker_free = is_free(cokernel(phi)).free
    if (k is not None) != coker_free:
        raise InternalInconsistency(
            f"minors criterion ({'constant' if k is not None else 'not constant'}) "
            f"disagrees with cokernel freeness ({coker_free})")
    return ConstantRank(k is not None, k, coker_free)


def fiber_image(S: Submodule) -> Subspace:
    """Image of ``S`` in ``M / mM`` (as a subspace of ``M``'s coordinates
    modulo ``mM``, reduced to the complement positions)."""
    M = S.ambient
    mM = M.maximal_ideal_times()
    comp = mM.complement_coordinates()
    rows = []
    for r in S.rows:
        red = mM.reduce(r)
        rows.append([red[c] for c in comp])
    return Subspace(M.field, len(comp), rows)


@dataclass
class QuotientFreeReport:
    quotient_free: bool
    fiber_injective: bool

    @property
    def lemma_holds(self) -> bool:
        return self.quotient_free and self.fiber_injective


def quotient_free_check(F1: Submodule) -> QuotientFreeReport:
    """For a free submodule ``F1`` of a free module ``F``: is ``F/F1`` free and
    is ``F1 (x) k -> F (x) k`` injective?"""
    F = F1.ambient
    if not is_free(F).free:
        raise PreconditionUnmet("ambient module is not free")
    v1 = is_free(F1.module)
    if not v1.free:
        raise PreconditionUnmet("submodule is not free")
    Q, _ = quotient(F1)
    inj = fiber_image(F1).dim == v1.rank
    return QuotientFreeReport(is_free(Q).free, inj)


@dataclass
class IntersectionReport:
    meet_zero: bool
    fiber_meet_zero: bool

    @property
    def lemma_holds(self) -> bool:
        return self.meet_zero == self.fiber_meet_zero


def intersection_fiber_check(F1: Submodule, F2: Submodule) -> IntersectionReport:
    """``F1 & F2 = 0`` versus ``(F1 (x) k) & (F2 (x) k) = 0`` for free submodules."""
    for S in (F1, F2):
        if not is_free(S.module).free:
            raise PreconditionUnmet("submodules must be free")
    if not is_free(F1.ambient).free:
        raise PreconditionUnmet("ambient module must be free")
    meet = (F1 & F2).is_zero()
    fiber = (fiber_image(F1) & fiber_image(F2)).dim == 0
    return IntersectionReport(meet, fiber)


@dataclass
class TriangleReport:
    composite_coker_free: bool
    psi_coker_free: bool

    @property
    def equivalent(self) -> bool:
        return self.composite_coker_free == self.psi_coker_free


def triangle_rank_transfer(psi: ModuleMap, eta: ModuleMap) -> TriangleReport:
    """For ``psi: F -> G``, ``eta: G -> H`` with ``G, H`` free, ``eta`` of constant
    rank and ``im psi & ker eta = 0``: compare freeness of ``coker(eta o psi)``
    and ``coker psi``."""
    G, H = eta.source, eta.target
    if psi.target is not G and psi.target.dim != G.dim:
        raise PreconditionUnmet("psi and eta are not composable")
    if not (is_free(G).free and is_free(H).free):
        raise PreconditionUnmet("G and H must be free")
    if not is_free(cokernel(eta)).free:
        raise PreconditionUnmet("eta does not have constant rank")
    if not (image(psi) & Submodule(psi.target, kernel(eta).space, check=False)).is_zero():
        raise PreconditionUnmet("im psi meets ker eta")
    phi = eta.compose(psi)
    return TriangleReport(is_free(cokernel(phi)).free, is_free(cokernel(psi)).free)


@dataclass
class CohomologyFreeReport:
    free: bool
    rank: int | None
    module: FinModule


def complex_cohomology_free_check(d1: ModuleMap, d2: ModuleMap) -> CohomologyFreeReport:
    """Cohomology ``ker d2 / im d1`` of a three-term complex of free modules
    whose maps have constant rank."""
    if not d2.compose(d1).is_zero():
        raise NotAComplex("d2 o d1 is not zero")
    for d in (d1, d2):
        if not constant_rank(d).constant:
            raise PreconditionUnmet("differentials must have constant rank")
    H = Subquotient(kernel(d2), Submodule(d2.source, image(d1).space, check=False)).module
    v = is_free(H)
    return CohomologyFreeReport(v.free, v.rank, H)
