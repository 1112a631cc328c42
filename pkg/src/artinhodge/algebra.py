"""Local Artin algebras over an exact field, given by generators, relations
and a nilpotency bound ``N`` with ``m**N`` contained in the relation ideal.

The algebra is read in the local (power series) ring, so the bound makes the
quotient a finite computation: monomials of degree ``>= N`` vanish, and a
basis comes from row reducing the span of ``monomial * relation`` inside the
monomials of degree ``<= N``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct
from typing import Sequence

from .errors import (DimensionMismatch, NilpotencyBoundViolated, NotLocal,
                     NotLocalHomomorphism)
from .linalg import Subspace, matvec, reduce_vector, rref
from .scalars import QQ, QQI, Field, field_from_tag, fmt

Monomial = tuple


def monomials_of_degree(n: int, deg: int) -> list[Monomial]:
    """Exponent tuples of total degree ``deg``, in ascending basis order."""
    if n == 0:
        return [()] if deg == 0 else []
    out = []

    def rec(prefix, left, k):
        if k == n - 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, k + 1)

    rec((), deg, 0)
    return out


def monomials_upto(n: int, top: int) -> list[Monomial]:
    """All monomials of degree ``<= top`` in ascending graded order.

    Within one degree the order is lexicographic with the first variable
    leading, so for two variables: 1, x, y, x^2, xy, y^2, ...
    """
    out = []
    for d in range(top + 1):
        out.extend(monomials_of_degree(n, d))
    return out


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            m = mono_mul(ma, mb)
            v = out.get(m)
            out[m] = ca * cb if v is None else v + ca * cb
    return {m: c for m, c in out.items() if c}


def poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for m, c in q.items():
        out[m] = out[m] + c if m in out else c
    return {m: c for m, c in out.items() if c}


def format_poly(p: dict, names: Sequence[str]) -> str:
    if not p:
        return "0"
    terms = []
    for m in sorted(p, key=lambda e: (sum(e), tuple(-x for x in e))):
        mono = "*".join(f"{names[k]}^{e}" if e > 1 else names[k]
                        for k, e in enumerate(m) if e)
        terms.append(f"({fmt(p[m])})" + (f"*{mono}" if mono else ""))
    return " + ".join(terms)


@dataclass(frozen=True)
class AlgebraPresentation:
    field: Field
    nvars: int
    relations: tuple
    nilpotency_bound: int
    var_names: tuple = dc_field(default=())

    def __post_init__(self):
        if not self.var_names:
            object.__setattr__(self, "var_names",
                               tuple(f"z{k + 1}" for k in range(self.nvars)))
        rels = tuple({tuple(m): self.field(c) for m, c in dict(r).items() if c}
                     for r in self.relations)
        object.__setattr__(self, "relations", rels)


def presentation(field: Field | str, nvars: int, relations, bound: int,
                 names: Sequence[str] = ()) -> AlgebraPresentation:
    if isinstance(field, str):
        field = field_from_tag(field)
    return AlgebraPresentation(field, nvars, tuple(relations), bound, tuple(names))


class ArtinAlgebra:
    """A finite-dimensional local algebra with a monomial basis.

    ``basis[0]`` is the monomial 1 and the remaining basis elements span the
    maximal ideal.  ``table[i][j]`` is the coefficient vector of
    ``basis[i] * basis[j]``.
    """

    def __init__(self, pres: AlgebraPresentation, basis: Sequence[Monomial],
                 table, var_images, check: bool = True):
        self.presentation = pres
        self.field = pres.field
        self.basis = tuple(tuple(b) for b in basis)
        self.dim = len(self.basis)
        self.table = [[list(v) for v in row] for row in table]
        self.var_images = [list(v) for v in var_images]
        d = self.dim
        z = self.field.zero
        # left multiplication by basis[i]: column j is basis[i]*basis[j]
        self.mult_matrices = [
            [[self.table[i][j][k] for j in range(d)] for k in range(d)]
            for i in range(d)]
        if check:
            self._check()
        self.nilpotency_index = self._nilpotency_index()
        self._zero = [z] * d

    def _check(self):
        d, F = self.dim, self.field
        if d < 1 or any(self.basis[0]):
            raise NotLocal("basis element 0 must be the monomial 1")
        for j in range(d):
            e = [F.zero] * d
            e[j] = F.one
            if self.table[0][j] != e or self.table[j][0] != e:
                raise NotLocal("basis element 0 is not a unit element")
        for i in range(d):
            for j in range(i + 1, d):
                if self.table[i][j] != self.table[j][i]:
                    raise NotLocal(f"multiplication not commutative at {i},{j}")
        for i in range(1, d):
            for j in range(1, d):
                if self.table[i][j][0]:
                    raise NotLocal("maximal ideal is not closed under products")
        # associativity: L_i L_j = L_{b_i b_j}
        L = self.mult_matrices
        for i in range(1, d):
            for j in range(i, d):
                c = self.table[i][j]
                for k in range(1, d):
                    lhs = matvec(L[i], self.table[j][k], F)
                    rhs = [F.zero] * d
                    for l, cl in enumerate(c):
                        if cl:
                            t = self.table[l][k]
                            rhs = [a + cl * b for a, b in zip(rhs, t)]
                    if lhs != rhs:
                        raise NotLocal(f"multiplication not associative at {i},{j},{k}")

    def _nilpotency_index(self) -> int:
        d, F = self.dim, self.field
        power = Subspace(F, d, [self.unit_vector(i) for i in range(1, d)])
        k = 1
        while power.dim:
            nxt = Subspace(F, d, [matvec(self.mult_matrices[i], r, F)
                                  for i in range(1, d) for r in power.rows])
            if nxt.dim == power.dim:
                raise NotLocal("maximal ideal is not nilpotent")
            power = nxt
            k += 1
        return k

    # --- elements --------------------------------------------------------
    def unit_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit_vector(0))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, list(self._zero))

    def element(self, coeffs) -> "AlgebraElement":
        coeffs = [self.field(c) for c in coeffs]
        if len(coeffs) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coefficients, got {len(coeffs)}")
        return AlgebraElement(self, coeffs)

    def scalar(self, c) -> "AlgebraElement":
        v = list(self._zero)
        v[0] = self.field(c)
        return AlgebraElement(self, v)

    def gen(self, k: int) -> "AlgebraElement":
        return AlgebraElement(self, list(self.var_images[k]))

    def mul_vectors(self, a: Sequence, b: Sequence) -> list:
        d = self.dim
        if len(a) != d or len(b) != d:
            raise DimensionMismatch("vector length does not match algebra dimension")
        out = list(self._zero)
        T = self.table
        for i, x in enumerate(a):
            if not x:
                continue
            Ti = T[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(Ti[j]):
                    if c:
                        out[k] = out[k] + xy * c
        return out

    def mult_matrix(self, a: Sequence) -> list:
        """Matrix of multiplication by the element with coefficients ``a``."""
        d = self.dim
        M = [list(self._zero) for _ in range(d)]
        for i, x in enumerate(a):
            if x:
                Li = self.mult_matrices[i]
                for r in range(d):
                    for c in range(d):
                        if Li[r][c]:
                            M[r][c] = M[r][c] + x * Li[r][c]
        return M

    def residue(self, a: Sequence):
        return a[0]

    def is_unit(self, a: Sequence) -> bool:
        return bool(a[0])

    def monomial_value(self, mono: Monomial) -> list:
        v = self.unit_vector(0)
        for k, e in enumerate(mono):
            for _ in range(e):
                v = self.mul_vectors(v, self.var_images[k])
        return v

    def evaluate(self, poly: dict) -> list:
        out = list(self._zero)
        for m, c in poly.items():
            mv = self.monomial_value(m)
            out = [a + c * b for a, b in zip(out, mv)]
        return out

    def maximal_ideal_power(self, k: int) -> Subspace:
        d, F = self.dim, self.field
        power = Subspace.full(F, d)
        for _ in range(k):
            power = Subspace(F, d, [matvec(self.mult_matrices[i], r, F)
                                    for i in range(1, d) for r in power.rows])
        return power

    def extend_scalars(self, field: Field) -> "ArtinAlgebra":
        """The same algebra with coefficients read in a larger field."""
        if field == self.field:
            return self
        pres = AlgebraPresentation(field, self.presentation.nvars,
                                   self.presentation.relations,
                                   self.presentation.nilpotency_bound,
                                   self.presentation.var_names)
        conv = lambda v: [field(x) for x in v]
        table = [[conv(v) for v in row] for row in self.table]
        return ArtinAlgebra(pres, self.basis, table,
                            [conv(v) for v in self.var_images], check=False)

    def basis_names(self) -> list[str]:
        names = self.presentation.var_names
        out = []
        for m in self.basis:
            s = "*".join(f"{names[k]}^{e}" if e > 1 else names[k]
                         for k, e in enumerate(m) if e)
            out.append(s or "1")
        return out

    def __repr__(self):
        return (f"ArtinAlgebra({self.field.tag}, vars={list(self.presentation.var_names)}, "
                f"basis={self.basis_names()})")


def length(A: ArtinAlgebra) -> int:
    """Length of ``A`` as a module over itself.  The residue field is the base
    field, so every simple module is one-dimensional and length is dimension."""
    return A.dim


def multiply(A: ArtinAlgebra, a, b):
    av = a.coeffs if isinstance(a, AlgebraElement) else a
    bv = b.coeffs if isinstance(b, AlgebraElement) else b
    return AlgebraElement(A, A.mul_vectors(av, bv))


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: ArtinAlgebra, coeffs):
        self.algebra = algebra
        self.coeffs = coeffs

    def _wrap(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise DimensionMismatch("elements of different algebras")
            return other.coeffs
        return self.algebra.scalar(other).coeffs

    def __add__(self, other):
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coeffs, self._wrap(other))])

    __radd__ = __add__

    def __sub__(self, other):
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coeffs, self._wrap(other))])

    def __rsub__(self, other):
        return AlgebraElement(self.algebra, [b - a for a, b in zip(self.coeffs, self._wrap(other))])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.algebra, self.algebra.mul_vectors(self.coeffs, other.coeffs))
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, [c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra is other.algebra and self.coeffs == other.coeffs
        return self.coeffs == self.algebra.scalar(other).coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_unit(self) -> bool:
        return bool(self.coeffs[0])

    def residue(self):
        return self.coeffs[0]

    def __repr__(self):
        names = self.algebra.basis_names()
        terms = [f"{fmt(c)}*{n}" if n != "1" else fmt(c)
                 for c, n in zip(self.coeffs, names) if c]
        return " + ".join(terms) or "0"


def build_algebra(pres: AlgebraPresentation, check_minimal: bool = False) -> ArtinAlgebra:
    """Quotient algebra of ``pres`` with its canonical monomial basis.

    Raises :class:`NotLocal` for a relation with nonzero constant term and
    :class:`NilpotencyBoundViolated` when some degree-``N`` monomial does not
    reduce to zero (or, with ``check_minimal``, when ``m**(N-1)`` is zero).
    """
    F, n, N = pres.field, pres.nvars, pres.nilpotency_bound
    zero_mono = (0,) * n
    for r in pres.relations:
        if r.get(zero_mono):
            raise NotLocal(f"relation {format_poly(r, pres.var_names)} has a nonzero constant term")
        for m in r:
            if len(m) != n:
                raise DimensionMismatch(f"monomial {m} does not have {n} exponents")
    if N < 1:
        raise NilpotencyBoundViolated("nilpotency bound must be at least 1")
    monos = monomials_upto(n, N)
    cols = monos[::-1]  # largest first, so pivots land on leading monomials
    col_of = {m: c for c, m in enumerate(cols)}
    rows = []
    multipliers = monomials_upto(n, N - 1)
    for r in pres.relations:
        for u in multipliers:
            row = [F.zero] * len(cols)
            hit = False
            for m, c in r.items():
                um = mono_mul(u, m)
                if sum(um) <= N:
                    row[col_of[um]] = row[col_of[um]] + c
                    hit = True
            if hit and any(row):
                rows.append(row)
    R, pivots = rref(rows, len(cols), F)
    for m in monomials_of_degree(n, N):
        e = [F.zero] * len(cols)
        e[col_of[m]] = F.one
        if any(reduce_vector(e, R, pivots)):
            raise NilpotencyBoundViolated(
                f"monomial {m} of degree {N} is nonzero in the quotient; "
                f"the bound must satisfy m^{N} = 0")
    pset = set(pivots)
    std_cols = [c for c in range(len(cols)) if c not in pset]
    basis = sorted((cols[c] for c in std_cols),
                   key=lambda e: (sum(e), tuple(-x for x in e)))
    idx = {m: i for i, m in enumerate(basis)}
    d = len(basis)
    pivot_row = {p: row for row, p in zip(R, pivots)}

    def normal_form(m):
        v = [F.zero] * d
        if sum(m) >= N:
            return v
        if m in idx:
            v[idx[m]] = F.one
            return v
        row = pivot_row[col_of[m]]
        for c in std_cols:
            if row[c]:
                v[idx[cols[c]]] = -row[c]
        return v

    table = [[normal_form(mono_mul(a, b)) for b in basis] for a in basis]
    var_images = [normal_form(tuple(1 if j == k else 0 for j in range(n))) for k in range(n)]
    A = ArtinAlgebra(pres, basis, table, var_images)
    if check_minimal and N > 1 and A.nilpotency_index < N:
        raise NilpotencyBoundViolated(
            f"declared bound {N} is not minimal: m^{A.nilpotency_index} = 0")
    return A


def residue_field_algebra(field: Field) -> ArtinAlgebra:
    """The residue field itself as a one-dimensional local algebra."""
    return build_algebra(AlgebraPresentation(field, 0, (), 1))


def dual_numbers(field: Field = QQI, order: int = 2, name: str = "e") -> ArtinAlgebra:
    """``field[e]/(e**order)``."""
    return build_algebra(AlgebraPresentation(field, 1, ({(order,): 1},), order, (name,)))


class RingMap:
    """A unit-preserving local homomorphism ``source -> target`` of algebras
    over the same field, given by the images of the generators."""

    def __init__(self, source: ArtinAlgebra, target: ArtinAlgebra, gen_images):
        if source.field != target.field:
            raise NotLocalHomomorphism("ring maps must be linear over a common base field")
        imgs = []
        for g in gen_images:
            v = g.coeffs if isinstance(g, AlgebraElement) else [target.field(x) for x in g]
            if len(v) != target.dim:
                raise DimensionMismatch("generator image has wrong length")
            if v[0]:
                raise NotLocalHomomorphism("a generator is sent to a unit; f(m) must lie in m'")
            imgs.append(v)
        if len(imgs) != source.presentation.nvars:
            raise DimensionMismatch("one image per generator is required")
        self.source, self.target, self.gen_images = source, target, imgs

        def value(mono):
            v = target.unit_vector(0)
            for k, e in enumerate(mono):
                for _ in range(e):
                    v = target.mul_vectors(v, imgs[k])
            return v

        pres = source.presentation
        for r in pres.relations:
            val = [target.field.zero] * target.dim
            for m, c in r.items():
                val = [a + c * b for a, b in zip(val, value(m))]
            if any(val):
                raise NotLocalHomomorphism(
                    f"relation {format_poly(r, pres.var_names)} does not map to zero")
        for m in monomials_of_degree(pres.nvars, pres.nilpotency_bound):
            if any(value(m)):
                raise NotLocalHomomorphism(f"monomial {m} of the nilpotency bound does not map to zero")
        cols = [value(m) for m in source.basis]
        self.matrix = [[cols[j][i] for j in range(source.dim)] for i in range(target.dim)]
        for i in range(source.dim):
            for j in range(i, source.dim):
                lhs = self(source.table[i][j])
                rhs = target.mul_vectors(cols[i], cols[j])
                if lhs != rhs:
                    raise NotLocalHomomorphism("map is not multiplicative on the basis")

    def __call__(self, a):
        v = a.coeffs if isinstance(a, AlgebraElement) else a
        return matvec(self.matrix, v, self.target.field)

    def apply(self, a) -> AlgebraElement:
        return AlgebraElement(self.target, self(a))


def residue_map(A: ArtinAlgebra) -> RingMap:
    k = residue_field_algebra(A.field)
    return RingMap(A, k, [[k.field.zero]] * A.presentation.nvars)


# --- JSON ----------------------------------------------------------------

def presentation_from_json(obj: dict) -> AlgebraPresentation:
    F = field_from_tag(obj.get("field", "Qi"))
    names = tuple(obj.get("vars", ()))
    n = len(names)
    rels = []
    for rel in obj.get("relations", []):
        poly: dict = {}
        for term in rel:
            mono = tuple(int(e) for e in term["mono"])
            if len(mono) != n:
                raise DimensionMismatch(f"monomial {list(mono)} does not match {n} variables")
            c = F.parse({"re": term.get("re", "0"), "im": term.get("im", "0")})
            poly[mono] = poly[mono] + c if mono in poly else c
        rels.append(poly)
    return AlgebraPresentation(F, n, tuple(rels), int(obj["nilpotency_bound"]), names)


def presentation_to_json(pres: AlgebraPresentation) -> dict:
    F = pres.field
    rels = []
    order = lambda e: (sum(e), tuple(-x for x in e))
    for r in pres.relations:
        terms = []
        for m in sorted(r, key=order):
            c = r[m]
            terms.append({"mono": list(m), "re": str(F.re(c)), "im": str(F.im(c))})
        rels.append(terms)
    return {"field": F.tag, "vars": list(pres.var_names), "relations": rels,
            "nilpotency_bound": pres.nilpotency_bound}
