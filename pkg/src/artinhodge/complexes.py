"""Bounded complexes of modules, filtrations, double complexes and the
spectral sequence of a filtered complex.

Pages use the subquotient description

    Z_r^p = F^p K ∩ d^{-1}(F^{p+r} K),
    E_r^p = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}),

with ``Z_{-1}^p = F^p`` so that page 0 is the associated graded.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import ArtinAlgebra, residue_map
from .errors import DimensionMismatch, InternalInconsistency, NotAComplex, PreconditionUnmet
from .linalg import Subspace, column_space, matmul, matvec, preimage, zeros
from .modules import (FinModule, ModuleMap, Submodule, Subquotient, base_change,
                      base_change_map, block_map, direct_sum, image, is_free, kernel)


def zero_module(A: ArtinAlgebra) -> FinModule:
    return FinModule(A, 0, [[] for _ in range(A.dim)], free_basis=[], check=False)


def zero_map(S: FinModule, T: FinModule) -> ModuleMap:
    return ModuleMap(S, T, zeros(S.field, T.dim, S.dim), check=False)


def _is_zero_composite(g: ModuleMap, f: ModuleMap) -> bool:
    if not g.target.dim or not f.source.dim:
        return True
    return g.compose(f).is_zero()


class BoundedComplex:
    """``K^lo -> ... -> K^hi``; ``diffs[i]`` starts in degree ``lo + i``."""

    def __init__(self, lo: int, modules: Sequence[FinModule], diffs: Sequence[ModuleMap],
                 check: bool = True):
        if not modules:
            raise DimensionMismatch("a complex needs at least one term")
        if len(diffs) != len(modules) - 1:
            raise DimensionMismatch("need exactly one differential between consecutive terms")
        self.lo = lo
        self.hi = lo + len(modules) - 1
        self.terms = list(modules)
        self.diffs = list(diffs)
        self.algebra = modules[0].algebra
        self._zero = zero_module(self.algebra)
        if check:
            for i, d in enumerate(self.diffs):
                if d.source is not self.terms[i] or d.target is not self.terms[i + 1]:
                    raise DimensionMismatch(f"differential {lo + i} has the wrong endpoints")
            for i in range(len(self.diffs) - 1):
                if not _is_zero_composite(self.diffs[i + 1], self.diffs[i]):
                    raise NotAComplex(f"d^{lo + i + 1} d^{lo + i} is nonzero")

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, n: int) -> FinModule:
        return self.terms[n - self.lo] if self.lo <= n <= self.hi else self._zero

    def d(self, n: int) -> ModuleMap:
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return zero_map(self.term(n), self.term(n + 1))

    def cycles(self, n: int) -> Submodule:
        return kernel(self.d(n))

    def boundaries(self, n: int) -> Submodule:
        return image(self.d(n - 1))

    def cohomology_quotient(self, n: int) -> Subquotient:
        return Subquotient(self.cycles(n), self.boundaries(n))

    def base_change(self, f) -> "BoundedComplex":
        """Termwise base change along a ring map ``f``."""
        terms = [base_change(M, f) for M in self.terms]
        diffs = []
        for i, d in enumerate(self.diffs):
            g = base_change_map(d, f)
            diffs.append(ModuleMap(terms[i], terms[i + 1], g.matrix if terms[i + 1].dim else [],
                                   check=False))
        return BoundedComplex(self.lo, terms, diffs, check=False)

    def __repr__(self):
        dims = ", ".join(str(M.dim) for M in self.terms)
        return f"BoundedComplex(lo={self.lo}, dims=[{dims}])"


def complex_from_maps(lo: int, modules, matrices) -> BoundedComplex:
    diffs = [ModuleMap(modules[i], modules[i + 1], m) for i, m in enumerate(matrices)]
    return BoundedComplex(lo, modules, diffs)


def cohomology(K: BoundedComplex, n: int) -> FinModule:
    return K.cohomology_quotient(n).module


def length(M: FinModule) -> int:
    # every simple module is the residue field, which is the base field
    return M.dim


# --- filtrations ---------------------------------------------------------

class DecreasingFiltration:
    """``F^p K^n`` for ``lo <= p <= hi``; everything for ``p <= lo``, zero for ``p > hi``."""

    def __init__(self, K: BoundedComplex, lo: int, hi: int, steps: dict, check: bool = True):
        self.complex = K
        self.lo, self.hi = lo, hi
        self._steps = steps
        if check:
            self._check()

    def __call__(self, p: int, n: int) -> Submodule:
        M = self.complex.term(n)
        if p <= self.lo or not M.dim:
            return M.whole()
        if p > self.hi:
            return M.zero_submodule()
        return self._steps[(p, n)]

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def _check(self):
        K = self.complex
        for n in K.degrees:
            if self(self.lo, n) != K.term(n).whole():
                raise DimensionMismatch(f"filtration is not exhaustive in degree {n}")
            for p in range(self.lo, self.hi + 1):
                if not self(p + 1, n) <= self(p, n):
                    raise DimensionMismatch(f"filtration is not decreasing at F^{p + 1} K^{n}")
                img = Submodule(K.term(n + 1),
                                self(p, n).space.image(K.d(n).matrix, K.term(n + 1).dim),
                                check=False)
                if not img <= self(p, n + 1):
                    raise DimensionMismatch(f"d does not preserve F^{p} in degree {n}")

    @classmethod
    def trivial(cls, K: BoundedComplex) -> "DecreasingFiltration":
        return cls(K, 0, 0, {(0, n): K.term(n).whole() for n in K.degrees})

    @classmethod
    def stupid(cls, K: BoundedComplex) -> "DecreasingFiltration":
        """``F^p K^n = K^n`` for ``n >= p``, else zero."""
        steps = {}
        for p in K.degrees:
            for n in K.degrees:
                steps[(p, n)] = K.term(n).whole() if n >= p else K.term(n).zero_submodule()
        return cls(K, K.lo, K.hi, steps)

    @classmethod
    def from_generators(cls, K: BoundedComplex, lo: int, hi: int, gens: dict):
        """``gens[(p, n)]`` lists generators of ``F^p K^n`` (missing means zero)."""
        steps = {}
        for p in range(lo, hi + 1):
            for n in K.degrees:
                g = gens.get((p, n), [])
                steps[(p, n)] = K.term(n).span(g)
        return cls(K, lo, hi, steps)


# --- double complexes ----------------------------------------------------

class DoubleComplex:
    """``K^{a,b}`` with commuting differentials ``dh: (a,b)->(a+1,b)`` and
    ``dv: (a,b)->(a,b+1)``.  Vertical maps in column ``a`` are multiplied by
    ``(-1)^a`` on ingestion, so the stored squares anticommute."""

    def __init__(self, A: ArtinAlgebra, terms: dict, dh: dict, dv: dict, check: bool = True):
        self.algebra = A
        self.terms = dict(terms)
        self._zero = zero_module(A)
        self.dh = {}
        self.dv = {}
        for (a, b), f in dh.items():
            self.dh[(a, b)] = f
        for (a, b), f in dv.items():
            self.dv[(a, b)] = f if a % 2 == 0 else f.scaled(-A.field.one)
        if self.terms:
            self.amin = min(a for a, _ in self.terms)
            self.amax = max(a for a, _ in self.terms)
            self.bmin = min(b for _, b in self.terms)
            self.bmax = max(b for _, b in self.terms)
        else:
            self.amin = self.amax = self.bmin = self.bmax = 0
        if check:
            self._check()

    def term(self, a, b) -> FinModule:
        return self.terms.get((a, b), self._zero)

    def h(self, a, b) -> ModuleMap:
        f = self.dh.get((a, b))
        return f if f is not None else zero_map(self.term(a, b), self.term(a + 1, b))

    def v(self, a, b) -> ModuleMap:
        f = self.dv.get((a, b))
        return f if f is not None else zero_map(self.term(a, b), self.term(a, b + 1))

    def _check(self):
        for (a, b) in self.terms:
            if not _is_zero_composite(self.h(a + 1, b), self.h(a, b)):
                raise NotAComplex(f"horizontal d^2 nonzero at ({a},{b})")
            if not _is_zero_composite(self.v(a, b + 1), self.v(a, b)):
                raise NotAComplex(f"vertical d^2 nonzero at ({a},{b})")
            S, T = self.term(a, b), self.term(a + 1, b + 1)
            if S.dim and T.dim:
                x = self.v(a + 1, b).compose(self.h(a, b)) + self.h(a, b + 1).compose(self.v(a, b))
                if not x.is_zero():
                    raise NotAComplex(f"square at ({a},{b}) does not anticommute after the sign twist")

    def parts(self, n: int) -> list:
        return [(a, n - a) for a in range(self.amin, self.amax + 1)
                if (a, n - a) in self.terms]


def total_complex(D: DoubleComplex) -> BoundedComplex:
    lo, hi = D.amin + D.bmin, D.amax + D.bmax
    parts = {n: D.parts(n) for n in range(lo, hi + 2)}
    terms = {n: direct_sum([D.term(*c) for c in parts[n]]) if parts[n] else zero_module(D.algebra)
             for n in parts}
    diffs = []
    for n in range(lo, hi):
        src, tgt = parts[n], parts[n + 1]
        blocks = {}
        for j, (a, b) in enumerate(src):
            for i, c in enumerate(tgt):
                if c == (a + 1, b):
                    blocks[(i, j)] = D.h(a, b)
                elif c == (a, b + 1):
                    blocks[(i, j)] = D.v(a, b)
        diffs.append(block_map([D.term(*c) for c in src], [D.term(*c) for c in tgt],
                               blocks, terms[n], terms[n + 1]))
    return BoundedComplex(lo, [terms[n] for n in range(lo, hi + 1)], diffs)


def column_filtration(D: DoubleComplex, T: BoundedComplex) -> DecreasingFiltration:
    """``F^p T^n = sum over a >= p of K^{a, n-a}`` on ``T = total_complex(D)``."""
    steps = {}
    F = D.algebra.field
    for p in range(D.amin, D.amax + 1):
        for n in T.degrees:
            rows, o = [], 0
            for (a, b) in D.parts(n):
                m = D.term(a, b).dim
                if a >= p:
                    for k in range(m):
                        v = [F.zero] * T.term(n).dim
                        v[o + k] = F.one
                        rows.append(v)
                o += m
            steps[(p, n)] = Submodule(T.term(n), Subspace(F, T.term(n).dim, rows), check=False)
    return DecreasingFiltration(T, D.amin, D.amax, steps)


# --- spectral sequence ---------------------------------------------------

@dataclass
class SpectralSequencePage:
    r: int
    cells: dict                               # (p, q) -> Subquotient
    differentials: dict = dc_field(default_factory=dict)  # (p, q) -> ModuleMap

    def dim(self, p, q) -> int:
        c = self.cells.get((p, q))
        return c.module.dim if c is not None else 0

    def dims(self) -> dict:
        return {k: c.module.dim for k, c in self.cells.items() if c.module.dim}

    def module(self, p, q) -> FinModule:
        return self.cells[(p, q)].module

    def is_degenerate(self) -> bool:
        return all(f.is_zero() for f in self.differentials.values())

    def total_length(self) -> int:
        return sum(c.module.dim for c in self.cells.values())


class _Pages:
    def __init__(self, F: DecreasingFiltration):
        self.F = F
        self.K = F.complex
        self._z = {}

    def Z(self, r, p, n) -> Submodule:
        """``F^p K^n ∩ d^{-1} F^{p+r} K^{n+1}``; ``r = -1`` gives ``F^p``."""
        key = (r, p, n)
        if key not in self._z:
            K, F = self.K, self.F
            Fp = F(p, n)
            if r < 0:
                out = Fp
            else:
                tgt = F(p + r, n + 1)
                pre = preimage(K.d(n).matrix, tgt.space, K.term(n).dim, K.term(n).field) \
                    if K.term(n + 1).dim else Subspace.full(K.term(n).field, K.term(n).dim)
                out = Submodule(K.term(n), Fp.space & pre, check=False)
            self._z[key] = out
        return self._z[key]

    def dZ(self, r, p, n) -> Submodule:
        """``d Z_r^{p}`` in degree ``n + 1``."""
        K = self.K
        src = self.Z(r, p, n)
        return Submodule(K.term(n + 1), src.space.image(K.d(n).matrix, K.term(n + 1).dim),
                         check=False)

    def cell(self, r, p, q) -> Subquotient:
        n = p + q
        num = self.Z(r, p, n)
        den = self.Z(r - 1, p + 1, n) + self.dZ(r - 1, p - r + 1, n - 1)
        return Subquotient(num, den)


def _cell_range(F: DecreasingFiltration):
    K = F.complex
    return [(p, n - p) for n in K.degrees for p in range(F.lo, F.hi + 1)]


def spectral_pages(F: DecreasingFiltration, r_max: int | None = None) -> list:
    """Pages ``E_0 .. E_{r_max}`` (default: filtration width + 2)."""
    if r_max is None:
        r_max = F.width + 2
    P = _Pages(F)
    K = F.complex
    pages = []
    for r in range(r_max + 1):
        cells = {(p, q): P.cell(r, p, q) for (p, q) in _cell_range(F)}
        diffs = {}
        for (p, q), C in cells.items():
            tgt_key = (p + r, q - r + 1)
            n = p + q
            if tgt_key in cells:
                T = cells[tgt_key]
            else:
                continue
            if not C.module.dim or not T.module.dim:
                diffs[(p, q)] = zero_map(C.module, T.module)
                continue
            d = K.d(n).matrix
            cols = [T.coords(matvec(d, x, K.term(n).field)) for x in C.lifts]
            mat = [[cols[j][i] for j in range(C.module.dim)] for i in range(T.module.dim)]
            diffs[(p, q)] = ModuleMap(C.module, T.module, mat, check=False)
        page = SpectralSequencePage(r, cells, diffs)
        for (p, q), f in diffs.items():
            g = diffs.get((p + r, q - r + 1))
            if g is not None and not _is_zero_composite(g, f):
                raise NotAComplex(f"d_{r} d_{r} is nonzero at ({p},{q})")
        pages.append(page)
    return pages


def e_infinity(F: DecreasingFiltration) -> dict:
    """``Gr_F^p H^{p+q}`` computed directly from the abutment."""
    K = F.complex
    out = {}
    for (p, q) in _cell_range(F):
        n = p + q
        Zn, Bn = K.cycles(n), K.boundaries(n)
        num = F(p, n) & Zn
        den = (F(p + 1, n) & Zn) + (F(p, n) & Bn)
        out[(p, q)] = Subquotient(num, den)
    return out


def filtration_on_abutment(F: DecreasingFiltration, n: int) -> dict:
    """``p -> im(H^n(F^p K) -> H^n(K))`` as submodules of :func:`cohomology`."""
    K = F.complex
    H = K.cohomology_quotient(n)
    out = {}
    for p in range(F.lo, F.hi + 2):
        out[p] = H.project(F(p, n) & H.num)
    return out


def degeneration_check(pages: Sequence[SpectralSequencePage], r: int) -> bool:
    """All ``d_s`` vanish for ``s >= r`` among the computed pages."""
    for page in pages:
        if page.r >= r and not page.is_degenerate():
            return False
    return True


@dataclass
class LengthReport:
    degree: int
    lhs: int
    rhs: int
    holds: bool
    equality: bool
    free: bool | None


def length_inequality(K: BoundedComplex, n: int) -> LengthReport:
    """``lg H^n(K) <= lg(R) * dim H^n(K (x) k)``; equality forces freeness."""
    if any(M.free_basis is None for M in K.terms):
        raise PreconditionUnmet("every term must carry a free witness")
    A = K.algebra
    H = cohomology(K, n)
    fiber = K.base_change(residue_map(A))
    lhs = length(H)
    rhs = A.dim * cohomology(fiber, n).dim
    eq = lhs == rhs
    free = is_free(H).free
    if eq and not free:
        raise InternalInconsistency("length equality without a free cohomology module")
    return LengthReport(n, lhs, rhs, lhs <= rhs, eq, free)
