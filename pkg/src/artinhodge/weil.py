"""Weil restriction from Gaussian-rational Artin algebras to rational ones,
and of modules, maps and submodules along the canonical map
``eta: R -> R_wl (x) Q(i)``.

The restricted algebra is presented by splitting each relation ``f`` at
``z_k = x_k + i*y_k`` into real and imaginary parts.  Its basis and
multiplication table are computed inside ``R (x) conj(R)``, which is
canonically ``R_wl (x) Q(i)`` with ``x_k = (z_k + conj z_k)/2`` and
``y_k = (z_k - conj z_k)/(2i)``; the presented relations are then checked to
vanish on the result.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .algebra import (AlgebraPresentation, ArtinAlgebra, RingMap, build_algebra,
                      monomials_of_degree, monomials_upto, mono_mul, poly_mul)
from .errors import AlgebraMismatch, InternalInconsistency, NonLocalResult
from .linalg import Subspace, inverse, matvec, zeros
from .modules import (FinModule, ModuleMap, Submodule, _base_change, base_change_map,
                      free_module)
from .scalars import QQ, QQI, Gaussian, I, mpq


def restricted_variable_names(A: ArtinAlgebra) -> tuple:
    n = A.presentation.nvars
    if n == 1:
        return ("x", "y")
    return tuple(f"{c}{k + 1}" for k in range(n) for c in "xy")


def split_relation(f: dict, n: int) -> tuple[dict, dict]:
    """Real and imaginary parts of ``f(x + i*y)`` as rational polynomials in
    ``x1, y1, ..., xn, yn``."""
    total: dict = {}
    for mono, c in f.items():
        p = {(0,) * (2 * n): QQI(c)}
        for k, e in enumerate(mono):
            if not e:
                continue
            q = {}
            for j in range(e + 1):
                ex = [0] * (2 * n)
                ex[2 * k], ex[2 * k + 1] = e - j, j
                # (i*y)^j = i^j y^j
                unit = [Gaussian(1), I, Gaussian(-1), -I][j % 4]
                q[tuple(ex)] = unit * comb(e, j)
            p = poly_mul(p, q)
        for m, v in p.items():
            total[m] = total[m] + v if m in total else v
    g = {m: v.re for m, v in total.items() if v.re}
    h = {m: v.im for m, v in total.items() if v.im}
    return g, h


class _Doubled:
    """``R (x) conj(R)`` over Q(i); element ``(i, j)`` is ``b_i (x) conj(b_j)``."""

    def __init__(self, R: ArtinAlgebra):
        self.R = R
        d = R.dim
        self.d = d
        self.dim = d * d
        T = R.table
        self.sparse = [[[(m, c) for m, c in enumerate(T[i][k]) if c] for k in range(d)]
                       for i in range(d)]

    def mul(self, u, v):
        d = self.d
        out = [QQI.zero] * (d * d)
        nz_u = [(divmod(a, d), x) for a, x in enumerate(u) if x]
        nz_v = [(divmod(b, d), y) for b, y in enumerate(v) if y]
        S = self.sparse
        for (i, j), x in nz_u:
            for (k, l), y in nz_v:
                left = S[i][k]
                if not left:
                    continue
                right = S[j][l]
                if not right:
                    continue
                xy = x * y
                for m, c in left:
                    xc = xy * c
                    for n_, c2 in right:
                        out[m * d + n_] = out[m * d + n_] + xc * c2.conjugate()
        return out

    def left(self, a):
        """``a (x) 1`` for ``a`` in R."""
        out = [QQI.zero] * (self.d * self.d)
        for i, c in enumerate(a):
            out[i * self.d] = QQI(c)
        return out

    def right_conj(self, a):
        """``1 (x) conj(a)``."""
        out = [QQI.zero] * (self.d * self.d)
        for j, c in enumerate(a):
            out[j] = QQI(c).conjugate()
        return out


@dataclass
class WeilRestriction:
    """``R`` over Q(i), its restriction ``algebra`` over Q, the complexified
    ``complexified = algebra (x) Q(i)`` and ``eta: R -> complexified``."""

    source: ArtinAlgebra
    algebra: ArtinAlgebra
    complexified: ArtinAlgebra
    eta: RingMap
    relations: tuple

    def eta_matrix(self):
        return self.eta.matrix


def weil_restrict_algebra(R: ArtinAlgebra, verify_presentation: bool = False) -> WeilRestriction:
    """Weil restriction of a local Artin algebra over Q(i).

    With ``verify_presentation`` the presented quotient is also rebuilt from
    scratch by :func:`build_algebra` and compared (slow; meant for small cases).
    """
    if not R.field.is_gaussian:
        raise AlgebraMismatch("Weil restriction needs an algebra over Q(i)")
    pres = R.presentation
    n = pres.nvars
    rels = []
    for f in pres.relations:
        g, h = split_relation(f, n)
        rels.extend(p for p in (g, h) if p)
    names = restricted_variable_names(R)

    model = _Doubled(R)
    gens = []
    for k in range(n):
        z = R.var_images[k]
        a, b = model.left(z), model.right_conj(z)
        x = [(p + q) / 2 for p, q in zip(a, b)]
        y = [(p - q) / Gaussian(0, 2) for p, q in zip(a, b)]
        gens.extend([x, y])

    # standard monomials: ascending graded order, order-ideal pruning
    top = max(2 * R.nilpotency_index - 2, 0)
    one = model.left(R.unit_vector(0))
    images = {(0,) * (2 * n): one}
    basis, echelon = [], []

    def reduce(v):
        v = list(v)
        for p, row in echelon:
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    for deg in range(top + 1):
        for m in monomials_of_degree(2 * n, deg):
            if deg == 0:
                img = one
            else:
                parents = [k for k, e in enumerate(m) if e]
                if any(tuple(e - (1 if j == k else 0) for j, e in enumerate(m)) not in images
                       for k in parents):
                    continue
                k = parents[-1]
                parent = tuple(e - (1 if j == k else 0) for j, e in enumerate(m))
                img = model.mul(images[parent], gens[k])
            r = reduce(img)
            piv = next((c for c, x in enumerate(r) if x), None)
            if piv is None:
                continue
            inv = QQI.one / r[piv]
            echelon.append((piv, [inv * x for x in r]))
            images[m] = img
            basis.append(m)
    D = len(basis)
    if D != model.dim:
        raise InternalInconsistency(
            f"restricted algebra has dimension {D}, expected {model.dim} = dim(R)^2")
    Bmat = [[images[m][r] for m in basis] for r in range(D)]
    Binv = inverse(Bmat, QQI)

    def coords_real(v):
        c = matvec(Binv, v, QQI)
        if any(x.im for x in c):
            raise InternalInconsistency("restricted structure constants are not rational")
        return [x.re for x in c]

    idx = {m: i for i, m in enumerate(basis)}
    table = []
    for a in basis:
        row = []
        for b in basis:
            ab = mono_mul(a, b)
            if ab in idx:
                e = [mpq(0)] * D
                e[idx[ab]] = mpq(1)
                row.append(e)
            else:
                row.append(coords_real(model.mul(images[a], images[b])))
        table.append(row)
    var_images = [coords_real(g) for g in gens]
    tmp = AlgebraPresentation(QQ, 2 * n, tuple(rels), max(2 * R.nilpotency_index, 1), names)
    Rwl = ArtinAlgebra(tmp, basis, table, var_images)
    final = AlgebraPresentation(QQ, 2 * n, tuple(rels), Rwl.nilpotency_index, names)
    Rwl = ArtinAlgebra(final, basis, table, var_images, check=False)
    for rel in rels:
        if any(Rwl.evaluate(rel)):
            raise InternalInconsistency("a split relation does not vanish on the restriction")
    if Rwl.maximal_ideal_power(1).dim != D - 1:
        raise NonLocalResult("restricted algebra does not have residue field Q")

    Ac = Rwl.extend_scalars(QQI)
    eta_gens = [[QQI(a) + I * QQI(b) for a, b in zip(var_images[2 * k], var_images[2 * k + 1])]
                for k in range(n)]
    eta = RingMap(R, Ac, eta_gens)
    for j in range(R.dim):
        model_img = matvec(Binv, model.left(R.unit_vector(j)), QQI)
        if model_img != eta(R.unit_vector(j)):
            raise InternalInconsistency("eta disagrees with the first-factor inclusion")
    if verify_presentation:
        direct = build_algebra(final)
        if direct.basis != Rwl.basis or direct.table != Rwl.table:
            raise InternalInconsistency("presented quotient disagrees with the computed restriction")
    return WeilRestriction(R, Rwl, Ac, eta, tuple(rels))


# --- modules -------------------------------------------------------------

def realify_matrix(X):
    """``P + iQ  ->  [[P, -Q], [Q, P]]`` acting on (real parts, imaginary parts)."""
    m = len(X)
    n = len(X[0]) if X else 0
    out = zeros(QQ, 2 * m, 2 * n)
    for r in range(m):
        for c in range(n):
            x = X[r][c]
            if x:
                p, q = x.re, x.im
                out[r][c] = p
                out[m + r][n + c] = p
                if q:
                    out[r][n + c] = -q
                    out[m + r][c] = q
    return out


def realify_vector(v) -> list:
    return [x.re for x in v] + [x.im for x in v]


def complexify_vector(v) -> list:
    m = len(v) // 2
    return [Gaussian(v[k], v[m + k]) for k in range(m)]


def restrict_scalars(M: FinModule, W: WeilRestriction) -> FinModule:
    """An ``R_wl (x) Q(i)``-module seen as an ``R_wl``-module over Q."""
    if M.algebra is not W.complexified:
        raise AlgebraMismatch("module does not live over the complexified restriction")
    action = [realify_matrix(X) for X in M.action]
    basis = None
    if M.free_basis is not None:
        basis = [realify_vector(g) for g in M.free_basis] + \
                [realify_vector([I * x for x in g]) for g in M.free_basis]
    return FinModule(W.algebra, 2 * M.dim, action, basis, check=False)


def weil_restrict_module(M: FinModule, W: WeilRestriction) -> FinModule:
    """``M (x)_R (R_wl (x) Q(i))`` as an ``R_wl``-module."""
    if M.algebra is not W.source:
        raise AlgebraMismatch("module does not live over the restricted algebra's source")
    Mc, _ = _base_change(M, W.eta)
    out = restrict_scalars(Mc, W)
    if M.free_basis is not None:
        expected = 2 * M.free_rank * W.algebra.dim
        if out.dim != expected:
            raise InternalInconsistency("restriction of H (x) R does not have the size of H (x) R_wl")
    return out


def weil_restrict_map(phi: ModuleMap, W: WeilRestriction) -> ModuleMap:
    psi = base_change_map(phi, W.eta)
    src = restrict_scalars(psi.source, W)
    tgt = restrict_scalars(psi.target, W)
    return ModuleMap(src, tgt, realify_matrix(psi.matrix) if psi.target.dim else [], check=False)


class RestrictedFree:
    """Canonical ``(Q(i)**n) (x)_Q R_wl`` with its conjugation, for a free
    module ``Q(i)**n (x) R`` built by :func:`free_module`."""

    def __init__(self, W: WeilRestriction, n: int):
        self.W, self.n = W, n
        self.complex_module = free_module(W.complexified, n)
        self.module = restrict_scalars(self.complex_module, W)
        half = self.complex_module.dim
        self.half = half

    def conj(self, v):
        h = self.half
        return list(v[:h]) + [-x for x in v[h:]]

    def times_i(self, v):
        h = self.half
        return [-x for x in v[h:]] + list(v[:h])

    def conj_submodule(self, S: Submodule) -> Submodule:
        return Submodule(self.module, Subspace(QQ, self.module.dim,
                                               [self.conj(r) for r in S.rows]), check=False)

    def restrict(self, S: Submodule) -> Submodule:
        """Image of a submodule of ``Q(i)**n (x) R`` (the R-span after eta)."""
        W, n = self.W, self.n
        d, D = W.source.dim, W.algebra.dim
        eta_cols = [W.eta(W.source.unit_vector(t)) for t in range(d)]
        gens = []
        for r in S.rows:
            v = [QQI.zero] * (n * D)
            for s in range(n):
                for t in range(d):
                    c = r[s * d + t]
                    if c:
                        for u, e in enumerate(eta_cols[t]):
                            if e:
                                v[s * D + u] = v[s * D + u] + c * e
            gens.append(v)
        span_c = self.complex_module.span(gens)
        rows = []
        for v in span_c.rows:
            rows.append(realify_vector(v))
            rows.append(realify_vector([I * x for x in v]))
        return Submodule(self.module, Subspace(QQ, self.module.dim, rows))

    def fiber(self, S: Submodule) -> Subspace:
        """Central fiber of a submodule: a complex subspace of ``Q(i)**n``."""
        D, n, h = self.W.algebra.dim, self.n, self.half
        rows = []
        for r in S.rows:
            v = [Gaussian(r[s * D], r[h + s * D]) for s in range(n)]
            rows.append(v)
        return Subspace(QQI, n, rows)
