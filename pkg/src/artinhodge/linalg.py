"""Exact dense linear algebra over a :class:`~artinhodge.scalars.Field`.

Vectors are lists of scalars, matrices are lists of rows, and linear maps act
on column vectors (``y = M x``).  Subspaces are kept as :class:`Subspace`
objects holding the reduced row-echelon basis, which is unique per subspace,
so subspace equality is plain tuple equality.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import Field

Vector = list
Matrix = list


def zeros(field: Field, m: int, n: int) -> Matrix:
    z = field.zero
    return [[z] * n for _ in range(m)]


def identity(field: Field, n: int) -> Matrix:
    M = zeros(field, n, n)
    for i in range(n):
        M[i][i] = field.one
    return M


def transpose(M: Matrix, ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix, field: Field, inner: int | None = None,
           ncols: int | None = None) -> Matrix:
    """``A @ B`` skipping zero entries of ``A`` (action matrices are sparse)."""
    m = len(A)
    n = len(B[0]) if B else (ncols or 0)
    z = field.zero
    out = []
    for i in range(m):
        row = [z] * n
        for k, a in enumerate(A[i]):
            if a:
                Bk = B[k]
                for j in range(n):
                    b = Bk[j]
                    if b:
                        row[j] = row[j] + a * b
        out.append(row)
    return out


def matvec(A: Matrix, v: Sequence, field: Field) -> Vector:
    z = field.zero
    out = []
    for row in A:
        s = z
        for a, x in zip(row, v):
            if a and x:
                s = s + a * x
        out.append(s)
    return out


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_scale(c, v):
    return [c * a for a in v]


def is_zero_matrix(M: Matrix) -> bool:
    return all(not x for row in M for x in row)


def rref(rows: Iterable[Sequence], ncols: int, field: Field):
    """Reduced row-echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows, each with
    a leading one in column ``pivots[i]``.
    """
    R = [list(r) for r in rows]
    pivots = []
    prow = 0
    nrows = len(R)
    for c in range(ncols):
        sel = None
        for r in range(prow, nrows):
            if R[r][c]:
                sel = r
                break
        if sel is None:
            continue
        R[prow], R[sel] = R[sel], R[prow]
        piv = R[prow]
        inv = field.one / piv[c]
        if inv != field.one:
            for j in range(c, ncols):
                if piv[j]:
                    piv[j] = piv[j] * inv
        nz = [j for j in range(c + 1, ncols) if piv[j]]
        for r in range(nrows):
            if r != prow:
                row = R[r]
                f = row[c]
                if f:
                    row[c] = field.zero
                    for j in nz:
                        row[j] = row[j] - f * piv[j]
        pivots.append(c)
        prow += 1
        if prow == nrows:
            break
    return R[:prow], pivots


def reduce_vector(v: Sequence, basis: Sequence[Sequence], pivots: Sequence[int]) -> Vector:
    """Reduce ``v`` against an RREF basis; zero iff ``v`` lies in its span."""
    v = list(v)
    for row, p in zip(basis, pivots):
        f = v[p]
        if f:
            for j, x in enumerate(row):
                if x:
                    v[j] = v[j] - f * x
    return v


def rank(M: Matrix, ncols: int, field: Field) -> int:
    return len(rref(M, ncols, field)[1])


def nullspace(M: Matrix, ncols: int, field: Field) -> Matrix:
    """Basis (as rows) of ``{x : M x = 0}``."""
    R, pivots = rref(M, ncols, field)
    pset = set(pivots)
    free = [c for c in range(ncols) if c not in pset]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for row, p in zip(R, pivots):
            if row[f]:
                x[p] = -row[f]
        basis.append(x)
    return basis


def inverse(M: Matrix, field: Field) -> Matrix:
    n = len(M)
    aug = [list(M[i]) + identity(field, n)[i] for i in range(n)]
    R, pivots = rref(aug, 2 * n, field)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


class Subspace:
    """A subspace of ``field**dim`` stored by its canonical RREF basis."""

    __slots__ = ("field", "dim_ambient", "rows", "pivots")

    def __init__(self, field: Field, dim_ambient: int, rows: Iterable[Sequence] = (),
                 _reduced: bool = False, _pivots=None):
        self.field = field
        self.dim_ambient = dim_ambient
        if _reduced:
            self.rows = tuple(tuple(r) for r in rows)
            self.pivots = tuple(_pivots)
        else:
            R, piv = rref(rows, dim_ambient, field)
            self.rows = tuple(tuple(r) for r in R)
            self.pivots = tuple(piv)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), True, ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, identity(field, n), True, range(n))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.dim_ambient == other.dim_ambient
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.dim_ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.dim_ambient})"

    def reduce(self, v: Sequence) -> Vector:
        return reduce_vector(v, self.rows, self.pivots)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the RREF basis (``v`` must lie in the span)."""
        return [v[p] for p in self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace(self.field, self.dim_ambient, list(self.rows) + list(other.rows))

    def __and__(self, other: "Subspace") -> "Subspace":
        """Intersection by the Zassenhaus trick."""
        n = self.dim_ambient
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, n)
        if self.dim == n:
            return other
        if other.dim == n:
            return self
        z = [self.field.zero] * n
        block = [list(r) + list(r) for r in self.rows] + [list(r) + z for r in other.rows]
        R, piv = rref(block, 2 * n, self.field)
        inter = [row[n:] for row, p in zip(R, piv) if p >= n]
        return Subspace(self.field, n, inter, True, [p - n for p in piv if p >= n])

    def image(self, M: Matrix, target_dim: int) -> "Subspace":
        return Subspace(self.field, target_dim, [matvec(M, r, self.field) for r in self.rows])

    def complement_coordinates(self):
        """Non-pivot coordinate positions: a basis of the quotient ``ambient / self``."""
        ps = set(self.pivots)
        return [c for c in range(self.dim_ambient) if c not in ps]

    def annihilator(self) -> Matrix:
        """Rows ``a`` with ``a . s = 0`` for every ``s`` in the subspace."""
        return nullspace(list(self.rows), self.dim_ambient, self.field)


def preimage(M: Matrix, target: Subspace, source_dim: int, field: Field) -> Subspace:
    """``{x : M x in target}``."""
    ann = target.annihilator()
    if not ann:
        return Subspace.full(field, source_dim)
    AM = matmul(ann, M, field, ncols=source_dim) if M else zeros(field, len(ann), source_dim)
    return Subspace(field, source_dim, nullspace(AM, source_dim, field))


def kernel(M: Matrix, source_dim: int, field: Field) -> Subspace:
    if not M:
        return Subspace.full(field, source_dim)
    return Subspace(field, source_dim, nullspace(M, source_dim, field))


def column_space(M: Matrix, target_dim: int, source_dim: int, field: Field) -> Subspace:
    if target_dim == 0:
        return Subspace.zero(field, 0)
    return Subspace(field, target_dim, transpose(M) if source_dim else [])


def kron(A: Matrix, B: Matrix, field: Field) -> Matrix:
    out = []
    nb = len(B[0]) if B else 0
    for ra in A:
        for rb in B:
            row = []
            for a in ra:
                if a:
                    row.extend(a * b for b in rb)
                else:
                    row.extend([field.zero] * nb)
            out.append(row)
    return out
