"""Finitely generated modules over an :class:`ArtinAlgebra`.

A module is a base-field vector space together with one action matrix per
algebra basis element.  Submodules are canonical RREF subspaces, so two
submodules are equal exactly when their stored bases are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import AlgebraElement, ArtinAlgebra, RingMap
from .errors import (AlgebraMismatch, AmbientMismatch, DimensionMismatch,
                     InternalInconsistency, NotFreeWitnessed)
from .linalg import (Subspace, column_space, identity, inverse, is_zero_matrix,
                     kernel as _kernel, matmul, matvec, rref, zeros)


class FinModule:
    """A module over ``algebra`` of base-field dimension ``dim``.

    ``action[i]`` is the ``dim x dim`` matrix of multiplication by the i-th
    algebra basis element.  ``free_basis`` optionally records an R-basis.
    """

    def __init__(self, algebra: ArtinAlgebra, dim: int, action, free_basis=None,
                 check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.action = [[list(r) for r in M] for M in action]
        if len(self.action) != algebra.dim:
            raise DimensionMismatch("one action matrix per algebra basis element is required")
        self.free_basis = None if free_basis is None else [list(v) for v in free_basis]
        if check:
            self._check()

    def _check(self):
        F, d, A = self.field, self.dim, self.algebra
        for M in self.action:
            if len(M) != d or any(len(r) != d for r in M):
                raise DimensionMismatch("action matrix has the wrong shape")
        if self.action[0] != identity(F, d):
            raise DimensionMismatch("the unit must act as the identity")
        for i in range(1, A.dim):
            for j in range(i, A.dim):
                lhs = matmul(self.action[i], self.action[j], F, ncols=d) if d else []
                rhs = self.act_matrix(A.table[i][j])
                if lhs != rhs:
                    raise DimensionMismatch(f"action is not multiplicative at basis pair {i},{j}")
        if self.free_basis is not None and d != len(self.free_basis) * A.dim:
            raise NotFreeWitnessed("free witness rank does not match the dimension")

    @property
    def free_rank(self) -> int | None:
        return None if self.free_basis is None else len(self.free_basis)

    def act_matrix(self, a: Sequence) -> list:
        """Matrix of multiplication by the algebra element with coefficients ``a``."""
        d, F = self.dim, self.field
        out = zeros(F, d, d)
        for i, c in enumerate(a):
            if c:
                M = self.action[i]
                for r in range(d):
                    row, Mr = out[r], M[r]
                    for s in range(d):
                        if Mr[s]:
                            row[s] = row[s] + c * Mr[s]
        return out

    def act(self, a, v: Sequence) -> list:
        coeffs = a.coeffs if isinstance(a, AlgebraElement) else a
        if isinstance(coeffs, int):
            return matvec(self.action[coeffs], v, self.field)
        return matvec(self.act_matrix(coeffs), v, self.field)

    def span(self, gens: Sequence[Sequence]) -> "Submodule":
        """The R-submodule generated by ``gens``."""
        F = self.field
        rows = [matvec(M, g, F) for g in gens for M in self.action]
        return Submodule(self, Subspace(F, self.dim, rows), check=False)

    def whole(self) -> "Submodule":
        return Submodule(self, Subspace.full(self.field, self.dim), check=False)

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, Subspace.zero(self.field, self.dim), check=False)

    def maximal_ideal_times(self) -> Subspace:
        rows = []
        for M in self.action[1:]:
            rows.extend(r for r in _transpose(M) if any(r))
        return Subspace(self.field, self.dim, rows)

    def identity_map(self) -> "ModuleMap":
        return ModuleMap(self, self, identity(self.field, self.dim), check=False)

    def with_free_basis(self, basis) -> "FinModule":
        return FinModule(self.algebra, self.dim, self.action, basis, check=False)

    @cached_property
    def _witness_inverse(self):
        if self.free_basis is None:
            raise NotFreeWitnessed("module carries no free witness")
        cols = [matvec(M, g, self.field) for g in self.free_basis for M in self.action]
        if not cols:
            return []
        return inverse(_transpose(cols), self.field)

    def free_coordinates(self, v: Sequence) -> list[AlgebraElement]:
        """Coordinates of ``v`` over the free witness, as algebra elements."""
        A = self.algebra
        if self.free_basis is None:
            raise NotFreeWitnessed("module carries no free witness")
        c = matvec(self._witness_inverse, v, self.field) if self.dim else []
        d = A.dim
        return [AlgebraElement(A, c[s * d:(s + 1) * d]) for s in range(len(self.free_basis))]

    def __repr__(self):
        fr = f", free rank {self.free_rank}" if self.free_basis is not None else ""
        return f"FinModule(dim={self.dim}{fr})"


def _transpose(M):
    return [list(c) for c in zip(*M)] if M else []


class ModuleMap:
    """An R-linear map, stored as a base-field matrix acting on columns."""

    def __init__(self, source: FinModule, target: FinModule, matrix, check: bool = True):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("source and target live over different algebras")
        self.source, self.target = source, target
        self.matrix = [list(r) for r in matrix] if target.dim else []
        if check:
            if len(self.matrix) != target.dim or any(len(r) != source.dim for r in self.matrix):
                raise DimensionMismatch("map matrix has the wrong shape")
            F = source.field
            for As, At in zip(source.action[1:], target.action[1:]):
                lhs = matmul(At, self.matrix, F, ncols=source.dim) if target.dim else []
                rhs = matmul(self.matrix, As, F, ncols=source.dim) if target.dim else []
                if lhs != rhs:
                    raise DimensionMismatch("map does not commute with the algebra action")

    @property
    def field(self):
        return self.source.field

    def __call__(self, v: Sequence) -> list:
        return matvec(self.matrix, v, self.field)

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """``self o first``."""
        if first.target.dim != self.source.dim:
            raise DimensionMismatch("maps are not composable")
        if not self.target.dim:
            return ModuleMap(first.source, self.target, [], check=False)
        M = matmul(self.matrix, first.matrix, self.field, ncols=first.source.dim) \
            if first.target.dim else zeros(self.field, self.target.dim, first.source.dim)
        return ModuleMap(first.source, self.target, M, check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)],
                         check=False)

    def scaled(self, c) -> "ModuleMap":
        c = self.field(c)
        return ModuleMap(self.source, self.target, [[c * a for a in r] for r in self.matrix],
                         check=False)

    def is_zero(self) -> bool:
        return is_zero_matrix(self.matrix)

    def r_matrix(self) -> list[list[AlgebraElement]]:
        """Matrix over the algebra in the free witnesses of source and target."""
        if self.source.free_basis is None or self.target.free_basis is None:
            raise NotFreeWitnessed("minors need free witnesses on source and target")
        cols = [self.target.free_coordinates(self(g)) for g in self.source.free_basis]
        rt = self.target.free_rank
        return [[cols[s][t] for s in range(len(cols))] for t in range(rt)]

    def __repr__(self):
        return f"ModuleMap({self.source.dim} -> {self.target.dim})"


class Submodule:
    """An R-submodule stored as a canonical RREF subspace of its ambient module."""

    def __init__(self, ambient: FinModule, space: Subspace, check: bool = True):
        self.ambient = ambient
        self.space = space
        if check:
            F = ambient.field
            for r in space.rows:
                for M in ambient.action[1:]:
                    if not space.contains(matvec(M, r, F)):
                        raise DimensionMismatch("subspace is not closed under the algebra action")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def rows(self):
        return self.space.rows

    def _same(self, other: "Submodule"):
        if other.ambient is not self.ambient and (
                other.ambient.dim != self.ambient.dim
                or other.ambient.algebra is not self.ambient.algebra):
            raise AmbientMismatch("submodules of different ambient modules")

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __le__(self, other: "Submodule") -> bool:
        self._same(other)
        return other.space.contains_space(self.space)

    def __add__(self, other: "Submodule") -> "Submodule":
        self._same(other)
        return Submodule(self.ambient, self.space + other.space, check=False)

    def __and__(self, other: "Submodule") -> "Submodule":
        self._same(other)
        return Submodule(self.ambient, self.space & other.space, check=False)

    def is_zero(self) -> bool:
        return self.space.dim == 0

    @cached_property
    def module(self) -> FinModule:
        """The submodule as a module in its own right (basis = RREF rows)."""
        F, rows, piv = self.ambient.field, self.space.rows, self.space.pivots
        k = len(rows)
        action = []
        for M in self.ambient.action:
            cols = [[v[p] for p in piv] for v in (matvec(M, r, F) for r in rows)]
            action.append([[cols[j][i] for j in range(k)] for i in range(k)])
        return FinModule(self.ambient.algebra, k, action, check=False)

    def inclusion(self) -> ModuleMap:
        return ModuleMap(self.module, self.ambient, _transpose(self.space.rows)
                         if self.space.rows else [[] for _ in range(self.ambient.dim)],
                         check=False)

    def __repr__(self):
        return f"Submodule(dim={self.dim} in {self.ambient.dim})"


def intersect(S1: Submodule, S2: Submodule) -> Submodule:
    return S1 & S2


def sum_submodules(S1: Submodule, S2: Submodule) -> Submodule:
    return S1 + S2


class Subquotient:
    """``num / den`` for submodules ``den <= num`` of a common ambient module.

    ``module`` is the quotient with its induced action; ``coords`` sends an
    element of ``num`` to its quotient coordinates and ``lifts`` are the
    chosen representatives of the quotient basis.
    """

    def __init__(self, num: Submodule, den: Submodule):
        num._same(den)
        F = num.ambient.field
        self.num, self.den, self.ambient = num, den, num.ambient
        residuals = [den.space.reduce(r) for r in num.rows]
        Q, qpiv = rref(residuals, num.ambient.dim, F)
        self.lifts = Q
        self.qpivots = qpiv
        k = len(Q)
        action = []
        for M in self.ambient.action:
            cols = [self.coords(matvec(M, q, F)) for q in Q]
            action.append([[cols[j][i] for j in range(k)] for i in range(k)])
        self.module = FinModule(self.ambient.algebra, k, action, check=False)

    def coords(self, v: Sequence) -> list:
        r = self.den.space.reduce(v)
        return [r[p] for p in self.qpivots]

    def project(self, S: Submodule) -> Submodule:
        """Image in the quotient of a submodule ``S <= num``."""
        return Submodule(self.module,
                         Subspace(self.ambient.field, self.module.dim,
                                  [self.coords(r) for r in S.rows]), check=False)


def free_module(A: ArtinAlgebra, rank: int) -> FinModule:
    """``A**rank``; coordinate ``(s, t)`` sits at position ``s*dim(A) + t``."""
    F, d = A.field, A.dim
    n = rank * d
    action = []
    for L in A.mult_matrices:
        M = zeros(F, n, n)
        for s in range(rank):
            o = s * d
            for r in range(d):
                for c in range(d):
                    if L[r][c]:
                        M[o + r][o + c] = L[r][c]
        action.append(M)
    basis = []
    for s in range(rank):
        e = [F.zero] * n
        e[s * d] = F.one
        basis.append(e)
    return FinModule(A, n, action, basis, check=False)


def map_from_r_matrix(source: FinModule, target: FinModule, entries) -> ModuleMap:
    """Map between free modules built by :func:`free_module` from a matrix of
    algebra elements (rows index the target basis)."""
    A = source.algebra
    d = A.dim
    rs, rt = source.dim // d, target.dim // d
    M = zeros(A.field, target.dim, source.dim)
    for i in range(rt):
        for j in range(rs):
            a = entries[i][j]
            coeffs = a.coeffs if isinstance(a, AlgebraElement) else \
                (A.scalar(a).coeffs if not isinstance(a, (list, tuple)) else [A.field(x) for x in a])
            if not any(coeffs):
                continue
            block = A.mult_matrix(coeffs)
            for r in range(d):
                for c in range(d):
                    if block[r][c]:
                        M[i * d + r][j * d + c] = block[r][c]
    return ModuleMap(source, target, M, check=False)


def scalar_map(source: FinModule, target: FinModule, matrix) -> ModuleMap:
    """Map between modules built by :func:`free_module` given by a matrix of
    base-field scalars (``matrix (x) id_R``)."""
    A = source.algebra
    return map_from_r_matrix(source, target,
                             [[A.scalar(x) for x in row] for row in matrix])


def kernel(phi: ModuleMap) -> Submodule:
    return Submodule(phi.source, _kernel(phi.matrix, phi.source.dim, phi.field))


def image(phi: ModuleMap) -> Submodule:
    return Submodule(phi.target, column_space(phi.matrix, phi.target.dim, phi.source.dim, phi.field))


def quotient(S: Submodule) -> tuple[FinModule, ModuleMap]:
    """``ambient / S`` and the projection; coordinates are the non-pivot positions."""
    M, F = S.ambient, S.ambient.field
    comp = S.space.complement_coordinates()
    k = len(comp)

    def proj(v):
        r = S.space.reduce(v)
        return [r[c] for c in comp]

    action = []
    for A_ in M.action:
        cols = [proj([A_[r][c] for r in range(M.dim)]) for c in comp]
        action.append([[cols[j][i] for j in range(k)] for i in range(k)])
    Q = FinModule(M.algebra, k, action, check=False)
    cols = [proj([F.one if r == c else F.zero for r in range(M.dim)]) for c in range(M.dim)]
    P = [[cols[j][i] for j in range(M.dim)] for i in range(k)]
    return Q, ModuleMap(M, Q, P, check=False)


def cokernel(phi: ModuleMap) -> FinModule:
    return quotient(image(phi))[0]


@dataclass(frozen=True)
class Freeness:
    """Verdict of :func:`is_free`.  ``rank`` is set only when free;
    ``min_generators`` is ``dim(M (x) k)`` either way."""

    free: bool
    rank: int | None
    min_generators: int
    basis: tuple = ()

    def __bool__(self):
        return self.free

    def __repr__(self):
        return f"free({self.rank})" if self.free else "not_free"


def is_free(M: FinModule) -> Freeness:
    """Freeness over a local Artin algebra, by two criteria that must agree:
    the length count ``dim M = r * dim R`` and the Nakayama test that lifts of
    a basis of ``M / mM`` generate ``M`` freely."""
    A, F, d = M.algebra, M.field, M.dim
    mM = M.maximal_ideal_times()
    r = d - mM.dim
    by_length = d == r * A.dim
    lifts = []
    for c in mM.complement_coordinates():
        e = [F.zero] * d
        e[c] = F.one
        lifts.append(e)
    gens = [matvec(Mi, g, F) for g in lifts for Mi in M.action]
    span = Subspace(F, d, gens)
    if span.dim != d:
        raise InternalInconsistency("lifts of a residue basis fail to generate (Nakayama)")
    structural = len(gens) == d
    if structural != by_length:
        raise InternalInconsistency("length and Nakayama freeness criteria disagree")
    if by_length:
        return Freeness(True, r, r, tuple(tuple(g) for g in lifts))
    return Freeness(False, None, r)


def free_witnessed(M: FinModule) -> FinModule:
    """``M`` with a free witness attached (raises if ``M`` is not free)."""
    if M.free_basis is not None:
        return M
    v = is_free(M)
    if not v.free:
        raise NotFreeWitnessed("module is not free")
    return M.with_free_basis([list(b) for b in v.basis])


def direct_sum(modules: Sequence[FinModule]) -> FinModule:
    """External direct sum; coordinates are concatenated in order."""
    A = modules[0].algebra
    F = A.field
    n = sum(m.dim for m in modules)
    action = []
    for i in range(A.dim):
        M = zeros(F, n, n)
        o = 0
        for m in modules:
            B = m.action[i]
            for r in range(m.dim):
                for c in range(m.dim):
                    if B[r][c]:
                        M[o + r][o + c] = B[r][c]
            o += m.dim
        action.append(M)
    basis = None
    if all(m.free_basis is not None for m in modules):
        basis, o = [], 0
        for m in modules:
            for g in m.free_basis:
                basis.append([F.zero] * o + list(g) + [F.zero] * (n - o - m.dim))
            o += m.dim
    return FinModule(A, n, action, basis, check=False)


def block_map(source_parts: Sequence[FinModule], target_parts: Sequence[FinModule],
              blocks: dict, source: FinModule, target: FinModule) -> ModuleMap:
    """Map between direct sums from ``{(i, j): ModuleMap part_j -> part_i}``."""
    F = source.field
    M = zeros(F, target.dim, source.dim)
    ro = [0]
    for t in target_parts:
        ro.append(ro[-1] + t.dim)
    co = [0]
    for s in source_parts:
        co.append(co[-1] + s.dim)
    for (i, j), phi in blocks.items():
        for r in range(target_parts[i].dim):
            for c in range(source_parts[j].dim):
                x = phi.matrix[r][c]
                if x:
                    M[ro[i] + r][co[j] + c] = M[ro[i] + r][co[j] + c] + x
    return ModuleMap(source, target, M, check=False)


def base_change(M: FinModule, f: RingMap) -> FinModule:
    """``M (x)_A A'`` along a local homomorphism ``f: A -> A'``."""
    return _base_change(M, f)[0]


def _base_change(M: FinModule, f: RingMap):
    A, B = f.source, f.target
    if M.algebra is not A:
        raise AlgebraMismatch("module does not live over the source of the ring map")
    F, m, e = A.field, M.dim, B.dim
    n = m * e
    rels = []
    fb = [f(A.unit_vector(a)) for a in range(A.dim)]
    for a in range(1, A.dim):
        Ma = M.action[a]
        for v in range(m):
            for x in range(e):
                row = [F.zero] * n
                for u in range(m):
                    c = Ma[u][v]
                    if c:
                        row[u * e + x] = row[u * e + x] + c
                fx = B.mul_vectors(fb[a], B.unit_vector(x))
                for y, c in enumerate(fx):
                    if c:
                        row[v * e + y] = row[v * e + y] - c
                if any(row):
                    rels.append(row)
    big_action = []
    for L in B.mult_matrices:
        Mt = zeros(F, n, n)
        for u in range(m):
            o = u * e
            for r in range(e):
                for c in range(e):
                    if L[r][c]:
                        Mt[o + r][o + c] = L[r][c]
        big_action.append(Mt)
    big = FinModule(B, n, big_action, check=False)
    S = Submodule(big, Subspace(F, n, rels), check=False)
    Q, P = quotient(S)
    if M.free_basis is not None:
        basis = []
        for g in M.free_basis:
            t = [F.zero] * n
            for u, c in enumerate(g):
                if c:
                    t[u * e] = c
            basis.append(P(t))
        Q = Q.with_free_basis(basis)
    return Q, P


def base_change_map(phi: ModuleMap, f: RingMap) -> ModuleMap:
    """``phi (x) id_{A'}`` between the base-changed modules."""
    Qs, Ps = _base_change(phi.source, f)
    Qt, Pt = _base_change(phi.target, f)
    e, F = f.target.dim, phi.field
    # lift each quotient basis vector of the source to the big tensor space
    lifts = _section(Ps)
    cols = []
    for lift in lifts:
        img = [F.zero] * (phi.target.dim * e)
        for idx, c in enumerate(lift):
            if c:
                u, x = divmod(idx, e)
                for w in range(phi.target.dim):
                    a = phi.matrix[w][u]
                    if a:
                        img[w * e + x] = img[w * e + x] + a * c
        cols.append(Pt(img))
    mat = [[cols[j][i] for j in range(Qs.dim)] for i in range(Qt.dim)]
    return ModuleMap(Qs, Qt, mat, check=False)


def _section(P: ModuleMap) -> list:
    """Vectors mapping to the standard basis of ``P.target`` under ``P``."""
    F = P.field
    n, k = P.source.dim, P.target.dim
    out = []
    for i in range(k):
        # quotient coordinates are non-pivot positions, so a unit vector
        # at that position is a lift; find it by the projection matrix
        for c in range(n):
            col = [P.matrix[r][c] for r in range(k)]
            if col[i] == F.one and all(not col[r] for r in range(k) if r != i):
                e = [F.zero] * n
                e[c] = F.one
                out.append(e)
                break
        else:
            raise InternalInconsistency("projection has no coordinate section")
    return out
