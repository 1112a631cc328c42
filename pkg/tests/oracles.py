"""Independent reference computations built on sympy.

Nothing here calls into the package's linear algebra or normal forms.  Inputs
are plain data (presentations, matrices of Gaussian rationals, model data) so
each oracle can be checked against the package from the outside.
"""
from itertools import product

import sympy as sp


def to_sympy(x):
    """A package scalar (mpq or Gaussian) as an exact sympy number."""
    if hasattr(x, "re") and hasattr(x, "im"):
        return sp.Rational(str(x.re)) + sp.I * sp.Rational(str(x.im))
    return sp.Rational(str(x))


def matrix(rows, ncols=None):
    if not rows:
        return sp.zeros(0, ncols or 0)
    return sp.Matrix([[to_sympy(x) for x in r] for r in rows])


def rank(rows, ncols=None) -> int:
    M = matrix(rows, ncols)
    return 0 if 0 in M.shape else M.rank(simplify=True)


# --- quotient rings ------------------------------------------------------

def _poly(rel: dict, xs):
    return sum(to_sympy(c) * sp.prod([v ** e for v, e in zip(xs, m)]) for m, c in rel.items())


def standard_monomials(polys, xs, domain, cap: int) -> list:
    """Standard monomials of total degree < cap for the ideal of ``polys``."""
    if not xs:
        return [()]
    G = sp.groebner(polys, *xs, order="grevlex", domain=domain)
    if G.exprs == [1]:
        return []
    leads = [sp.Poly(g, *xs).monoms(order="grevlex")[0] for g in G.exprs]
    out = []
    for m in product(range(cap), repeat=len(xs)):
        if sum(m) < cap and not any(all(a >= b for a, b in zip(m, l)) for l in leads):
            out.append(m)
    return out


def quotient_dim(nvars: int, relations, N: int) -> int:
    """dim of Q(i)[z]/(relations + all degree-N monomials)."""
    xs = sp.symbols(f"z0:{nvars}") if nvars else ()
    polys = [_poly(r, xs) for r in relations]
    polys += [sp.prod([v ** e for v, e in zip(xs, m)])
              for m in product(range(N + 1), repeat=nvars) if sum(m) == N]
    return len(standard_monomials(polys, xs, sp.QQ_I, N))


def weil_quotient_dim(nvars: int, relations, N: int) -> int:
    """dim over Q of Q[x, y]/(Re f, Im f) after substituting z = x + i y.

    Since conj(z) = x - i y is also nilpotent, every monomial of degree
    2N - 1 already lies in the ideal; adding them only fixes the search box.
    """
    if not nvars:
        return 1
    xs = sp.symbols(f"x0:{nvars}", real=True)
    ys = sp.symbols(f"y0:{nvars}", real=True)
    zs = [a + sp.I * b for a, b in zip(xs, ys)]
    polys = []
    for r in relations:
        f = sp.expand(_poly(r, zs))
        re, im = f.as_real_imag()
        polys += [p for p in (sp.expand(re), sp.expand(im)) if p != 0]
    zs_n = [sp.expand(_poly({m: 1}, zs)) for m in product(range(N + 1), repeat=nvars)
            if sum(m) == N]
    for f in zs_n:
        re, im = f.as_real_imag()
        polys += [p for p in (sp.expand(re), sp.expand(im)) if p != 0]
    gens = list(xs) + list(ys)
    cap = 2 * N - 1
    polys += [sp.prod([v ** e for v, e in zip(gens, m)])
              for m in product(range(cap + 1), repeat=len(gens)) if sum(m) == cap]
    return len(standard_monomials(polys, gens, sp.QQ, cap))


# --- modules over local algebras -----------------------------------------

def coker_is_free(big_rows, residue_rows, source_rank: int, target_rank: int, dim_R: int) -> bool:
    """A finite module over a local algebra is free iff its length equals
    dim R times the number of its minimal generators (Nakayama)."""
    n_src = source_rank * dim_R
    length = target_rank * dim_R - rank(big_rows, n_src)
    gens = target_rank - rank(residue_rows, source_rank)
    return length == gens * dim_R


def cohomology_dim(d_in, d_out, dim: int, dim_in: int) -> int:
    """dim ker(d_out) - rank(d_in) for a term of dimension ``dim``."""
    ker = dim - (rank(d_out, dim) if d_out else 0)
    return ker - (rank(d_in, dim_in) if d_in else 0)


# --- Hodge theory --------------------------------------------------------

def classical_hodge_numbers(F: dict, n: int, k: int) -> dict:
    """h^{p,q} = dim F^p meet conj(F^q) for a pure weight-k structure on C^n,
    with ``F[p]`` a list of spanning rows (sympy numbers)."""
    def span(p):
        if p in F:
            return sp.Matrix(F[p]) if F[p] else sp.zeros(0, n)
        return sp.eye(n) if p < min(F) else sp.zeros(0, n)

    out = {}
    for p in range(min(F) - 1, max(F) + 2):
        A, B = span(p), span(k - p).conjugate()
        da, db = A.rank(), B.rank()
        both = sp.Matrix.vstack(A, B) if da and db else (A if da else B)
        meet = da + db - (both.rank() if 0 not in both.shape else 0)
        if meet:
            out[(p, k - p)] = meet
    return out


# --- SNC models ----------------------------------------------------------

def cech_betti(simplices, hodge, faces) -> list:
    """Ranks of H^k of the semi-simplicial model, summed over bidegrees.

    ``simplices`` are sorted tuples, ``hodge[I][(p,q)]`` ranks and
    ``faces[(I, J)][(p,q)]`` rational matrices.  The sign of the face that
    adds index ``x`` to ``I`` is (-1)^(position of x in J).
    """
    levels = {}
    for I in simplices:
        levels.setdefault(len(I) - 1, []).append(I)
    top = max(levels) if levels else 0
    bideg = sorted({pq for I in simplices for pq, r in hodge.get(I, {}).items() if r})
    out = {}
    for pq in bideg:
        sizes = {a: [hodge.get(I, {}).get(pq, 0) for I in levels.get(a, [])] for a in range(top + 2)}
        dims = {a: sum(s) for a, s in sizes.items()}
        diffs = {}
        for a in range(top + 1):
            M = sp.zeros(dims[a + 1], dims[a])
            roff = 0
            for J, rj in zip(levels.get(a + 1, []), sizes[a + 1]):
                coff = 0
                for I, ri in zip(levels.get(a, []), sizes[a]):
                    if set(I) < set(J) and rj and ri:
                        (x,) = set(J) - set(I)
                        sign = (-1) ** J.index(x)
                        block = faces.get((I, J), {}).get(pq)
                        if block is not None:
                            M[roff:roff + rj, coff:coff + ri] = sign * sp.Matrix(
                                [[to_sympy(v) for v in row] for row in block])
                    coff += ri
                roff += rj
            diffs[a] = M
        for a in range(top + 1):
            rk_out = diffs[a].rank() if 0 not in diffs[a].shape else 0
            rk_in = diffs[a - 1].rank() if a and 0 not in diffs[a - 1].shape else 0
            h = dims[a] - rk_out - rk_in
            if h:
                k = a + sum(pq)
                out[k] = out.get(k, 0) + h
    n = max(out) + 1 if out else 1
    return [out.get(k, 0) for k in range(n)]


def inclusion_exclusion_euler(simplices, hodge) -> int:
    """chi(X) = sum over strata of (-1)^(|I|-1) chi(X_I)."""
    total = 0
    for I in simplices:
        chi = sum((-1) ** (p + q) * r for (p, q), r in hodge.get(I, {}).items())
        total += (-1) ** (len(I) - 1) * chi
    return total


def graph_betti(n_vertices: int, edges) -> tuple:
    """(b0, b1) of a multigraph, via the rank of its incidence matrix."""
    M = sp.zeros(n_vertices, len(edges))
    for j, (u, v) in enumerate(edges):
        M[u, j] += 1
        M[v, j] -= 1
    r = M.rank() if edges else 0
    return n_vertices - r, len(edges) - r
