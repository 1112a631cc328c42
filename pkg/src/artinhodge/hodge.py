"""Mixed Hodge structures over local Artin algebras and their Weil-restricted
counterparts.

A structure over ``R`` (coefficients Q(i)) lives on ``H = Q(i)**n (x) R`` with
coordinate ``s*d + t`` for ``e_s (x) b_t``.  A Hodge-Weil structure over a
rational algebra ``R'`` lives on the realification of ``Q(i)**n (x) R'``
(real parts first, then imaginary parts), where conjugation is the linear map
negating the imaginary half.  Both have central fibers in ``Q(i)**n`` with
the usual coordinatewise conjugation.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (DecompositionFailure, NotClassicalMHS, NotPure, PreconditionUnmet,
                     InternalInconsistency)
from .linalg import Subspace, kron, identity, matvec, zeros
from .modules import (FinModule, ModuleMap, Submodule, Subquotient, cokernel, free_module,
                      free_witnessed, image, is_free, kernel)
from .rank import constant_rank, fiber_image, intersection_fiber_check, triangle_rank_transfer
from .scalars import QQ, QQI, Gaussian
from .weil import RestrictedFree, WeilRestriction, weil_restrict_algebra


def conj_space(V: Subspace) -> Subspace:
    return Subspace(V.field, V.dim_ambient, [[x.conjugate() for x in r] for r in V.rows])


def _direct(parts, total: Subspace) -> bool:
    """``total`` is the internal direct sum of ``parts``."""
    s = Subspace.zero(total.field, total.dim_ambient)
    for P in parts:
        s = s + P
    return s == total and sum(P.dim for P in parts) == total.dim


# --- central fibers ------------------------------------------------------

def _fill_gaps(F: dict, W: dict) -> tuple[dict, dict]:
    """Missing keys between the extremes repeat the next step inward: ``F^p``
    takes the value at the smallest stored key above ``p``, ``W_m`` the value at
    the largest stored key below ``m``."""
    F, W = dict(F), dict(W)
    if F:
        for p in range(max(F) - 1, min(F), -1):
            F.setdefault(p, F[p + 1])
    if W:
        for m in range(min(W) + 1, max(W)):
            W.setdefault(m, W[m - 1])
    return F, W


class ClassicalMHS:
    """``(Q(i)**n, F, W)`` with conjugation fixing ``Q**n``.

    ``F`` maps ``p`` to a subspace (everything below the smallest key, zero
    above the largest); ``W`` maps ``m`` to a subspace (zero below, everything
    above).
    """

    def __init__(self, n: int, F: dict, W: dict):
        self.n = n
        self._F, self._W = _fill_gaps(F, W)
        self.flo, self.fhi = (min(F), max(F)) if F else (0, -1)
        self.wlo, self.whi = (min(W), max(W)) if W else (0, -1)

    def F(self, p) -> Subspace:
        if p < self.flo:
            return Subspace.full(QQI, self.n)
        if p > self.fhi:
            return Subspace.zero(QQI, self.n)
        return self._F[p]

    def W(self, m) -> Subspace:
        if m < self.wlo:
            return Subspace.zero(QQI, self.n)
        if m > self.whi:
            return Subspace.full(QQI, self.n)
        return self._W[m]

    @property
    def p_range(self):
        return range(self.flo - 1, self.fhi + 2)

    @property
    def weights(self):
        return range(self.wlo, self.whi + 1)

    def weight_is_rational(self) -> bool:
        return all(conj_space(self.W(m)) == self.W(m) for m in self.weights)

    def pure_failures(self) -> list:
        """``(m, p)`` where ``Gr_m^W`` fails ``F^p + conj F^{m-p+1}`` complementarity."""
        bad = []
        for m in self.weights:
            Wm, Wm1 = self.W(m), self.W(m - 1)
            if Wm.dim == Wm1.dim:
                continue
            for p in range(self.flo - 1, self.fhi + 2):
                A = (self.F(p) & Wm) + Wm1
                B = (conj_space(self.F(m - p + 1)) & Wm) + Wm1
                if A + B != Wm or (A & B) != Wm1:
                    bad.append((m, p))
        return bad

    def is_valid(self) -> bool:
        return self.weight_is_rational() and not self.pure_failures()

    def hodge_numbers(self) -> dict:
        out = {}
        for m in self.weights:
            for p in self.p_range:
                a = ((self.F(p) & self.W(m)) + self.W(m - 1)).dim
                b = ((self.F(p + 1) & self.W(m)) + self.W(m - 1)).dim
                if a - b:
                    out[(p, m - p)] = a - b
        return out

    def deligne_splitting(self) -> dict:
        """``I^{p,q}`` with ``F^p = sum_{r>=p} I^{r,s}`` and ``W_m = sum_{r+s<=m} I^{r,s}``."""
        if not self.is_valid():
            raise NotClassicalMHS("central fiber is not a mixed Hodge structure")
        n = self.n
        sF = {p: conj_space(self.F(p)) for p in range(self.flo - 2 - (self.whi - self.wlo),
                                                       self.fhi + 3)}

        def sigmaF(p):
            if p in sF:
                return sF[p]
            return Subspace.full(QQI, n) if p < self.flo else Subspace.zero(QQI, n)

        out = {}
        for m in self.weights:
            for p in self.p_range:
                q = m - p
                left = self.F(p) & self.W(m)
                right = sigmaF(q) & self.W(m)
                j = 2
                while m - j >= self.wlo - 1:
                    right = right + (sigmaF(q - j + 1) & self.W(m - j))
                    j += 1
                I = left & right
                if I.dim:
                    out[(p, q)] = I
        full = Subspace.full(QQI, n)
        if not _direct(list(out.values()), full):
            raise InternalInconsistency("splitting pieces do not form a direct sum decomposition")
        for m in self.weights:
            if not _direct([I for (p, q), I in out.items() if p + q <= m], self.W(m)):
                raise InternalInconsistency(f"splitting does not recover W_{m}")
        for p in self.p_range:
            if not _direct([I for (r, s), I in out.items() if r >= p], self.F(p)):
                raise InternalInconsistency(f"splitting does not recover F^{p}")
        return out


# --- structures over Artin algebras --------------------------------------

@dataclass
class Verdict:
    name: str
    passed: bool
    witness: object = None


@dataclass
class Report:
    verdicts: list = dc_field(default_factory=list)

    def add(self, name, passed, witness=None):
        self.verdicts.append(Verdict(name, bool(passed), witness))

    @property
    def valid(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failures(self) -> list:
        return [v.name for v in self.verdicts if not v.passed]

    def as_dict(self) -> dict:
        return {v.name: v.passed for v in self.verdicts}


class _Filtered:
    """Shared bookkeeping for ``F`` (decreasing) and ``W`` (increasing) on ``H``."""

    is_weil = False

    def __init__(self, lattice_dim: int, algebra, H: FinModule, F: dict, W: dict,
                 weight: int | None = None):
        self.lattice_dim = lattice_dim
        self.algebra = algebra
        self.H = H
        self._F, self._W = _fill_gaps(F, W)
        self.weight = weight
        self.flo, self.fhi = (min(F), max(F)) if F else (0, -1)
        self.wlo, self.whi = (min(W), max(W)) if W else (0, -1)

    def F(self, p) -> Submodule:
        if p < self.flo:
            return self.H.whole()
        if p > self.fhi:
            return self.H.zero_submodule()
        return self._F[p]

    def W(self, m) -> Submodule:
        if m < self.wlo:
            return self.H.zero_submodule()
        if m > self.whi:
            return self.H.whole()
        return self._W[m]

    @property
    def p_range(self):
        return range(self.flo - 1, self.fhi + 2)

    @property
    def weights(self):
        return range(self.wlo, self.whi + 1)

    def graded(self, p, m) -> Subquotient:
        """``Gr_F^p Gr_m^W H`` as a subquotient of ``H``."""
        Wm, Wm1 = self.W(m), self.W(m - 1)
        return Subquotient((self.F(p) & Wm) + Wm1, (self.F(p + 1) & Wm) + Wm1)

    def fiber(self, S: Submodule) -> Subspace:
        raise NotImplementedError

    def central_fiber(self) -> ClassicalMHS:
        F = {p: self.fiber(self.F(p)) for p in range(self.flo, self.fhi + 1)}
        W = {m: self.fiber(self.W(m)) for m in self.weights}
        return ClassicalMHS(self.lattice_dim, F, W)

    def rank_unit(self) -> int:
        """Algebra-rank of a single lattice vector's complex line."""
        return 1

    def graded_ranks(self) -> dict:
        out = {}
        for m in self.weights:
            for p in self.p_range:
                G = self.graded(p, m).module
                if G.dim:
                    v = is_free(G)
                    out[(p, m - p)] = v.rank // self.rank_unit() if v.free else None
        return out

    def is_pure(self) -> bool:
        if self.weight is None:
            return False
        k = self.weight
        return self.W(k) == self.H.whole() and self.W(k - 1).is_zero()

    def _common_checks(self, rep: Report):
        H = self.H
        rep.add("F_decreasing", all(self.F(p + 1) <= self.F(p) for p in self.p_range))
        rep.add("W_increasing", all(self.W(m - 1) <= self.W(m) for m in self.weights))
        rep.add("F_exhaustive_separated",
                self.F(self.flo - 1) == H.whole() and self.F(self.fhi + 1).is_zero()
                and all(S.ambient is H for S in self._F.values()))
        rep.add("W_exhaustive_separated",
                self.W(self.whi + 1) == H.whole() and self.W(self.wlo - 1).is_zero()
                and all(S.ambient is H for S in self._W.values()))
        bad = []
        for m in self.weights:
            for p in self.p_range:
                G = self.graded(p, m).module
                if G.dim and not is_free(G).free:
                    bad.append((p, m))
        rep.add("graded_free", not bad, bad)
        fib = self.central_fiber()
        rep.add("fiber_weight_rational", fib.weight_is_rational())
        fails = fib.pure_failures()
        rep.add("fiber_classical_mhs", not fails, fails)
        if self.weight is not None:
            rep.add("pure_weight", self.is_pure())


class MixedHodgeStructure(_Filtered):
    """``(Q**n, F, W)`` on ``H = Q(i)**n (x) R`` for ``R`` over Q(i)."""

    def __init__(self, lattice_dim: int, algebra, F: dict, W: dict, weight=None, H=None):
        if not algebra.field.is_gaussian:
            raise PreconditionUnmet("a mixed Hodge structure needs an algebra over Q(i)")
        H = H if H is not None else free_module(algebra, lattice_dim)
        super().__init__(lattice_dim, algebra, H, F, W, weight)

    @classmethod
    def pure(cls, lattice_dim, algebra, F: dict, weight: int, H=None):
        H = H if H is not None else free_module(algebra, lattice_dim)
        return cls(lattice_dim, algebra, F, {weight: H.whole()}, weight, H)

    @classmethod
    def from_generators(cls, lattice_dim, algebra, F: dict, W: dict | None = None,
                        weight=None):
        H = free_module(algebra, lattice_dim)
        Fs = {p: H.span(g) for p, g in F.items()}
        if W is None:
            if weight is None:
                raise PreconditionUnmet("give W or a weight")
            Ws = {weight: H.whole()}
        else:
            Ws = {m: H.span(g) for m, g in W.items()}
        return cls(lattice_dim, algebra, Fs, Ws, weight, H)

    def fiber(self, S: Submodule) -> Subspace:
        return fiber_image(S)

    def lattice_matrix(self, f) -> list:
        """``f (x) id_R`` on ``H`` for a rational ``f`` on the lattice."""
        return kron([[QQI(x) for x in r] for r in f], identity(QQI, self.algebra.dim), QQI)


class HodgeWeilStructure(_Filtered):
    """``(Q**n, F, W)`` on the realified ``Q(i)**n (x) R'`` for ``R'`` over Q."""

    is_weil = True

    def __init__(self, restricted: RestrictedFree, F: dict, W: dict, weight=None):
        self.restricted = restricted
        super().__init__(restricted.n, restricted.W.algebra, restricted.module, F, W, weight)

    def rank_unit(self) -> int:
        return 2

    def fiber(self, S: Submodule) -> Subspace:
        return self.restricted.fiber(S)

    def sigma(self, v) -> list:
        return self.restricted.conj(v)

    def sigma_sub(self, S: Submodule) -> Submodule:
        return self.restricted.conj_submodule(S)

    def sigma_matrix(self) -> list:
        h = self.restricted.half
        M = identity(QQ, 2 * h)
        for r in range(h, 2 * h):
            M[r][r] = -M[r][r]
        return M

    def i_stable(self, S: Submodule) -> bool:
        return all(S.space.contains(self.restricted.times_i(r)) for r in S.rows)

    def lattice_matrix(self, f) -> list:
        D = self.algebra.dim
        blk = kron([[QQ(x) for x in r] for r in f], identity(QQ, D), QQ)
        m, n = len(blk), len(blk[0]) if blk else 0
        out = zeros(QQ, 2 * m, 2 * n)
        for r in range(m):
            for c in range(n):
                out[r][c] = out[m + r][n + c] = blk[r][c]
        return out


def verify_mhs(H: _Filtered) -> Report:
    """Per-axiom verdicts; never raises on invalid data."""
    rep = Report()
    H._common_checks(rep)
    if H.is_weil:
        S = H.sigma_matrix()
        M = H.H
        sq = all(H.sigma(H.sigma(r)) == list(r) for r in identity(QQ, M.dim))
        rep.add("sigma_involution", sq)
        lin = True
        for X in M.action:
            for v in identity(QQ, M.dim):
                if H.sigma(matvec(X, v, QQ)) != matvec(X, H.sigma(v), QQ):
                    lin = False
                    break
        rep.add("sigma_linear", lin)
        rep.add("complex_structure",
                all(H.i_stable(H.F(p)) for p in H.p_range)
                and all(H.i_stable(H.W(m)) for m in H.weights))
        rep.add("weight_sigma_stable", all(H.sigma_sub(H.W(m)) == H.W(m) for m in H.weights))
    return rep


# --- Weil restriction ----------------------------------------------------

_WEIL_CACHE: dict = {}


def weil_restriction_of(R) -> WeilRestriction:
    key = id(R)
    hit = _WEIL_CACHE.get(key)
    if hit is None or hit.source is not R:
        hit = weil_restrict_algebra(R)
        _WEIL_CACHE[key] = hit
    return hit


def weil_restrict_structure(H: MixedHodgeStructure, W: WeilRestriction | None = None,
                            check: bool = True) -> HodgeWeilStructure:
    if check and not verify_mhs(H).valid:
        raise PreconditionUnmet("input is not a mixed Hodge structure over R")
    W = W or weil_restriction_of(H.algebra)
    RF = RestrictedFree(W, H.lattice_dim)
    F = {p: RF.restrict(H.F(p)) for p in range(H.flo, H.fhi + 1)}
    Wt = {m: RF.restrict(H.W(m)) for m in H.weights}
    out = HodgeWeilStructure(RF, F, Wt, H.weight)
    a, b = H.central_fiber(), out.central_fiber()
    for p in range(H.flo, H.fhi + 1):
        if a.F(p) != b.F(p):
            raise InternalInconsistency(f"central fibers of F^{p} differ after restriction")
    for m in H.weights:
        if a.W(m) != b.W(m):
            raise InternalInconsistency(f"central fibers of W_{m} differ after restriction")
    return out


# --- Hodge decomposition -------------------------------------------------

@dataclass
class HodgeDecomposition:
    weight: int
    pieces: dict          # (p, q) -> Submodule
    ranks: dict           # (p, q) -> complex rank


def hodge_decomposition(H: HodgeWeilStructure) -> HodgeDecomposition:
    if not H.is_weil:
        raise PreconditionUnmet("decomposition needs conjugation: restrict the structure first")
    if not H.is_pure():
        raise NotPure("structure is not pure")
    k = H.weight
    whole = H.H.whole()
    lo = min(H.flo, k - H.fhi) - 1
    hi = max(H.fhi, k - H.flo) + 1
    sF = {p: H.sigma_sub(H.F(p)) for p in range(lo - 1, hi + 2)}
    for p in range(lo, hi + 1):
        q = k - p
        A, B = H.F(p), sF[q + 1]
        if not (A & B).is_zero() or A + B != whole:
            raise DecompositionFailure(f"H != F^{p} (+) conj F^{q + 1}", (p, q))
    pieces = {}
    for p in range(lo, hi + 1):
        P = H.F(p) & sF[k - p]
        if not P.is_zero():
            pieces[(p, k - p)] = P
    if not _direct([P.space for P in pieces.values()], whole.space):
        raise DecompositionFailure("H is not the direct sum of the H^{p,q}", None)
    for p in range(lo, hi + 1):
        parts = [P.space for (r, s), P in pieces.items() if r >= p]
        if not _direct(parts, H.F(p).space):
            raise DecompositionFailure(f"F^{p} is not the sum of H^(r,k-r), r >= {p}", (p, k - p))
    ranks = {}
    for key, P in pieces.items():
        v = is_free(P.module)
        if not v.free:
            raise DecompositionFailure("H^{p,q} is not free", key)
        ranks[key] = v.rank // 2
    return HodgeDecomposition(k, pieces, ranks)


# --- morphisms -----------------------------------------------------------

class HodgeMorphism:
    """``f_R (x) id`` for a rational ``f_R`` between lattices."""

    def __init__(self, source: _Filtered, target: _Filtered, f_real, check: bool = True):
        if source.algebra is not target.algebra:
            raise PreconditionUnmet("structures live over different algebras")
        if source.is_weil != target.is_weil:
            raise PreconditionUnmet("cannot mix Hodge and Hodge-Weil structures")
        self.source, self.target = source, target
        self.f_real = [[QQ(x) for x in r] for r in f_real]
        if len(self.f_real) != target.lattice_dim or \
                any(len(r) != source.lattice_dim for r in self.f_real):
            from .errors import DimensionMismatch
            raise DimensionMismatch("lattice matrix has the wrong shape")
        mat = target.lattice_matrix(self.f_real) if target.lattice_dim and source.lattice_dim \
            else zeros(source.H.field, target.H.dim, source.H.dim)
        self.map = ModuleMap(source.H, target.H, mat, check=False)
        if check:
            bad = self.incompatibilities()
            if bad:
                raise PreconditionUnmet(f"f does not preserve the filtrations: {bad}")

    def apply(self, S: Submodule) -> Submodule:
        T = self.target.H
        return Submodule(T, S.space.image(self.map.matrix, T.dim), check=False)

    def incompatibilities(self) -> list:
        s, t = self.source, self.target
        bad = [("F", p) for p in s.p_range if not self.apply(s.F(p)) <= t.F(p)]
        bad += [("W", m) for m in range(min(s.wlo, t.wlo) - 1, max(s.whi, t.whi) + 1)
                if not self.apply(s.W(m)) <= t.W(m)]
        return bad

    def weil_restrict(self, src=None, tgt=None) -> "HodgeMorphism":
        src = src or weil_restrict_structure(self.source)
        tgt = tgt or weil_restrict_structure(self.target)
        return HodgeMorphism(src, tgt, self.f_real)


@dataclass
class BigradingReport:
    pieces: dict          # (p, q) -> ModuleMap
    ranks: dict           # (p, q) -> ConstantRank
    sum_matches: bool

    @property
    def all_constant(self) -> bool:
        return all(r.constant for r in self.ranks.values())


def _restricted_map(f: ModuleMap, S: Submodule, T: Submodule) -> ModuleMap:
    F = f.field
    Sm, Tm = free_witnessed(S.module), free_witnessed(T.module)
    cols = []
    for r in S.rows:
        img = matvec(f.matrix, r, F)
        if not T.space.contains(img):
            raise PreconditionUnmet("image of H^{p,q} leaves the target H^{p,q}")
        cols.append(T.space.coordinates(img))
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(Tm.dim)]
    return ModuleMap(Sm, Tm, mat, check=False)


def morphism_bigrading(f: HodgeMorphism) -> BigradingReport:
    s, t = f.source, f.target
    if not (s.is_pure() and t.is_pure() and s.weight == t.weight):
        raise PreconditionUnmet("both structures must be pure of the same weight")
    ds, dt = hodge_decomposition(s), hodge_decomposition(t)
    pieces, ranks = {}, {}
    zero = t.H.zero_submodule()
    F = s.H.field
    # f on the decomposition basis versus the sum of its pieces
    recon = True
    for key, S in ds.pieces.items():
        T = dt.pieces.get(key, zero)
        g = _restricted_map(f.map, S, T)
        pieces[key] = g
        ranks[key] = constant_rank(g) if g.source.dim else None
        for j, r in enumerate(S.rows):
            col = [g.matrix[i][j] for i in range(g.target.dim)]
            lifted = [F.zero] * t.H.dim
            for c, row in zip(col, T.rows):
                if c:
                    lifted = [a + c * b for a, b in zip(lifted, row)]
            if lifted != matvec(f.map.matrix, r, F):
                recon = False
    ranks = {k: v for k, v in ranks.items() if v is not None}
    return BigradingReport(pieces, ranks, recon)


# --- the free-cokernel argument ------------------------------------------

@dataclass
class PullbackRankReport:
    weight_transverse_fiber: bool
    image_in_splitting: bool
    weight_transverse: bool
    kernel_is_weight: bool
    phi_constant: bool
    eta_constant: bool
    coker_free: bool
    rank: int | None

    @property
    def passed(self) -> bool:
        return all([self.weight_transverse_fiber, self.image_in_splitting,
                    self.weight_transverse, self.kernel_is_weight, self.phi_constant,
                    self.eta_constant, self.coker_free])

    def failing_step(self) -> str | None:
        order = [("a: im i* meets W on the fiber", self.weight_transverse_fiber),
                 ("a: im i* not inside I^{p,q}", self.image_in_splitting),
                 ("a: im i* meets W", self.weight_transverse),
                 ("a: ker eta differs from W", self.kernel_is_weight),
                 ("b: phi not of constant rank", self.phi_constant),
                 ("b: eta not of constant rank", self.eta_constant),
                 ("c: coker i* not free", self.coker_free)]
        return next((name for name, ok in order if not ok), None)


def _graded_F(H: _Filtered, p: int) -> Subquotient:
    return Subquotient(H.F(p), H.F(p + 1))


def _induced(f_matrix, S: Subquotient, T: Subquotient, F) -> list:
    cols = [T.coords(matvec(f_matrix, x, F)) for x in S.lifts]
    return [[cols[j][i] for j in range(len(cols))] for i in range(T.module.dim)]


def check_pullback_constant_rank(i: HodgeMorphism, p: int, q: int, eta: ModuleMap,
                                 delta: ModuleMap) -> PullbackRankReport:
    """``i: X -> Y`` from a pure structure of weight ``p+q``; ``eta: H_Y -> C0``
    vanishes on ``F^{p+1}`` and has image ``ker delta``."""
    X, Y = i.source, i.target
    k = p + q
    if not X.is_pure() or X.weight != k:
        raise PreconditionUnmet(f"source must be pure of weight {k}")
    F = Y.H.field
    GX, GY = _graded_F(X, p), _graded_F(Y, p)
    psi_m = ModuleMap(free_witnessed(GX.module), free_witnessed(GY.module),
                      _induced(i.map.matrix, GX, GY, F), check=False)
    for r in Y.F(p + 1).rows:
        if any(matvec(eta.matrix, r, F)):
            raise PreconditionUnmet("eta does not vanish on F^{p+1}")
    eta_m = ModuleMap(psi_m.target, free_witnessed(eta.target),
                      [[x for x in row] for row in
                       _transpose_cols([matvec(eta.matrix, x, F) for x in GY.lifts],
                                       eta.target.dim)], check=False)
    if not delta.compose(eta).is_zero():
        raise PreconditionUnmet("delta o eta is not zero")

    # (a) on the central fiber via the splitting, then lifted
    fX, fY = X.central_fiber(), Y.central_fiber()
    spl = fY.deligne_splitting()
    Ipq = spl.get((p, q), Subspace.zero(QQI, Y.lattice_dim))
    HXpq = fX.F(p) & conj_space(fX.F(q))
    f_c = [[QQI(x) for x in r] for r in i.f_real]
    img_fiber = Subspace(QQI, Y.lattice_dim, [matvec(f_c, v, QQI) for v in HXpq.rows])
    in_split = Ipq.contains_space(img_fiber)
    low = Subspace.zero(QQI, Y.lattice_dim)
    for key, I in spl.items():
        if sum(key) <= k - 1:
            low = low + I
    fiber_ok = (img_fiber & low).dim == 0
    Wlow = GY.project((Y.W(k - 1) & Y.F(p)) + Y.F(p + 1))
    im_psi = image(psi_m)
    Wlow_s = Submodule(psi_m.target, Wlow.space, check=False)
    if im_psi.is_zero() or Wlow_s.is_zero():
        transverse = (im_psi & Wlow_s).is_zero()
    else:
        transverse = intersection_fiber_check(im_psi, Wlow_s).meet_zero
    ker_eta = kernel(eta_m)
    kernel_is_weight = Submodule(psi_m.target, ker_eta.space, check=False) == Wlow_s

    # (b) and (c)
    phi_m = eta_m.compose(psi_m)
    phi_c = constant_rank(phi_m).constant if phi_m.source.dim and phi_m.target.dim else True
    eta_c = is_free(cokernel(eta_m)).free
    if psi_m.source.dim and transverse and eta_c:
        tri = triangle_rank_transfer(psi_m, eta_m)
        coker_free = tri.psi_coker_free
        if phi_c != coker_free:
            raise InternalInconsistency("triangle transfer disagrees with the composite")
    else:
        coker_free = is_free(cokernel(psi_m)).free
    rk = constant_rank(psi_m).rank if psi_m.source.dim and psi_m.target.dim else 0
    return PullbackRankReport(fiber_ok, in_split, transverse, kernel_is_weight,
                              phi_c, eta_c, coker_free, rk)


def _transpose_cols(cols, nrows):
    return [[c[r] for c in cols] for r in range(nrows)]


# --- JSON ----------------------------------------------------------------

def structure_from_json(obj: dict, algebra) -> MixedHodgeStructure:
    F_ = algebra.field
    n = int(obj["lattice_dim"])
    parse = lambda gens: [[F_.parse(x) for x in g] for g in gens]
    Fd = {int(p): parse(g) for p, g in obj.get("F", {}).items()}
    Wd = {int(m): parse(g) for m, g in obj["W"].items()} if "W" in obj else None
    return MixedHodgeStructure.from_generators(n, algebra, Fd, Wd, obj.get("weight"))


def structure_to_json(H: _Filtered) -> dict:
    F_ = H.H.field
    dump = lambda S: [[F_.dump(x) for x in r] for r in S.rows]
    out = {"lattice_dim": H.lattice_dim,
           "F": {str(p): dump(H.F(p)) for p in range(H.flo, H.fhi + 1)},
           "W": {str(m): dump(H.W(m)) for m in H.weights}}
    if H.weight is not None:
        out["weight"] = H.weight
    return out
