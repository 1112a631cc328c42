"""Admissible random instances for the lemmas about free modules."""
from artinhodge.linalg import inverse
from artinhodge.modules import ModuleMap, free_module, image, is_free, map_from_r_matrix
from artinhodge.randomized import random_element


def _mat(rng, A, rows, cols, unit_bias=0.5):
    return [[random_element(rng, A, unit_bias) for _ in range(cols)] for _ in range(rows)]


def invertible(rng, A, n):
    """A random element of GL_n(A): invertible residue plus nilpotent noise."""
    F = A.field
    while True:
        E = _mat(rng, A, n, n)
        M = map_from_r_matrix(free_module(A, n), free_module(A, n), E)
        try:
            inverse(M.matrix, F)
        except (ZeroDivisionError, ValueError, ArithmeticError):
            continue
        return M


def selector(A, src: int, tgt: int, picks) -> ModuleMap:
    """``R^src -> R^tgt`` sending e_j to e_i for (i, j) in ``picks``."""
    one, zero = A.unit_vector(0), [A.field.zero] * A.dim
    ent = [[one if (i, j) in picks else zero for j in range(src)] for i in range(tgt)]
    return map_from_r_matrix(free_module(A, src), free_module(A, tgt), ent)


def inv(M: ModuleMap) -> ModuleMap:
    return ModuleMap(M.target, M.source, inverse(M.matrix, M.field), check=False)


def constant_rank_complex(rng, A, max_rank=3):
    """``R^a -d1-> R^b -d2-> R^c`` with d2 d1 = 0 and both of constant rank."""
    b = rng.randint(1, max_rank + 1)
    r = rng.randint(0, b)
    s = rng.randint(0, b - r)
    a, c = rng.randint(r, r + 2) or 1, rng.randint(s, s + 2) or 1
    P, Q, P2 = invertible(rng, A, b), invertible(rng, A, a), invertible(rng, A, c)
    d1 = P.compose(selector(A, a, b, {(i, i) for i in range(r)})).compose(Q)
    d2 = P2.compose(selector(A, b, c, {(i, r + i) for i in range(s)})).compose(inv(P))
    return d1, d2, b - r - s


def triangle(rng, A, max_rank=3):
    """``psi: R^a -> G``, ``eta: G -> H`` with eta of constant rank and
    im psi meeting ker eta trivially."""
    b = rng.randint(1, max_rank + 1)
    s = rng.randint(1, b)
    a, h = rng.randint(1, max_rank), rng.randint(s, s + 1)
    P, P2 = invertible(rng, A, b), invertible(rng, A, h)
    eta = P2.compose(selector(A, b, h, {(i, i) for i in range(s)})).compose(inv(P))
    X = _mat(rng, A, s, a, unit_bias=rng.random())
    Z = _mat(rng, A, b - s, s)
    rows = [list(r) for r in X]
    for i in range(b - s):
        row = []
        for j in range(a):
            acc = [A.field.zero] * A.dim
            for k in range(s):
                acc = [u + v for u, v in zip(acc, A.mul_vectors(Z[i][k], X[k][j]))]
            row.append(acc)
        rows.append(row)
    psi = P.compose(map_from_r_matrix(free_module(A, a), free_module(A, b), rows))
    return psi, eta


def free_submodule(rng, A, n=None, max_rank=3):
    """A free submodule of R^n given as the image of a random map."""
    n = n or rng.randint(1, max_rank)
    while True:
        k = rng.randint(0, n)
        if not k:
            return image(map_from_r_matrix(free_module(A, 1), free_module(A, n),
                                           [[[A.field.zero] * A.dim] for _ in range(n)]))
        S = image(map_from_r_matrix(free_module(A, k), free_module(A, n),
                                    _mat(rng, A, n, k, unit_bias=rng.random())))
        if is_free(S.module).free:
            return S

