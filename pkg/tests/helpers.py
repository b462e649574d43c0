"""Small builders shared by several test modules."""

import random

from cubchain.chain import ChainComplex
from cubchain.intlin import FGAbGroup, FGAbHom, IntMatrix, block_diag


def z_times(k, a0=None, a1=None):
    """Two-term complex ``a1 -(x k)-> a0`` on cyclic groups (free by default)."""
    A0 = a0 or FGAbGroup.free(1)
    A1 = a1 or FGAbGroup.free(1)
    return ChainComplex.from_matrices([A0, A1], [IntMatrix([[k]])])


def rp2_like():
    """``Z -(x2)-> Z -(0)-> Z`` in degrees 2, 1, 0."""
    Z = FGAbGroup.free(1)
    return ChainComplex.from_matrices([Z, Z, Z], [IntMatrix([[0]]), IntMatrix([[2]])])


def random_unimodular(n, rng, steps=6):
    """A random unimodular matrix and its inverse, from elementary row operations."""
    P, Q = IntMatrix.identity(n), IntMatrix.identity(n)
    if n < 2:
        return P, Q
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-3, 3)
        E = [[int(r == c) for c in range(n)] for r in range(n)]
        Einv = [row[:] for row in E]
        E[i][j], Einv[i][j] = k, -k
        P, Q = IntMatrix(E) @ P, Q @ IntMatrix(Einv)
    return P, Q


def change_presentation(A, seed):
    """Same complex written in new generators ``y = Q x`` in every degree."""
    rng = random.Random(seed)
    pq = [random_unimodular(G.generators, rng) for G in A.groups]
    groups = [FGAbGroup(G.generators, Q @ G.relations) for G, (P, Q) in zip(A.groups, pq)]
    mats = [pq[n - 1][1] @ A.boundary(n).matrix @ pq[n][0] for n in range(1, A.top_degree + 1)]
    return ChainComplex.from_matrices(groups, mats)


def direct_sum_complex(A, B):
    top = max(A.top_degree, B.top_degree)
    A, B = A.extended(top), B.extended(top)
    groups = [FGAbGroup(a.generators + b.generators, block_diag(a.relations, b.relations))
              for a, b in zip(A.groups, B.groups)]
    mats = [block_diag(A.boundary(n).matrix, B.boundary(n).matrix) for n in range(1, top + 1)]
    return ChainComplex.from_matrices(groups, mats)


def disk(k):
    """``Z -(id)-> Z`` placed in degrees k and k-1, zero elsewhere."""
    Z, O = FGAbGroup.free(1), FGAbGroup.trivial()
    groups = [O] * (k + 1)
    groups[k], groups[k - 1] = Z, Z
    mats = [IntMatrix([[1]]) if n == k else IntMatrix.zeros(groups[n - 1].generators, groups[n].generators)
            for n in range(1, k + 1)]
    return ChainComplex.from_matrices(groups, mats)


def hom(S, T, rows):
    return FGAbHom(S, T, IntMatrix(rows, T.generators, S.generators))
