"""Smith and Hermite normal forms over the integers.

Both eliminations pivot on the entry of least absolute value, which keeps
intermediate coefficients small on the matrices that arise here.  The
unimodular transforms are accumulated alongside the reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .matrix import IntMatrix


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``U_inv`` is the inverse of ``U``; it is what maps Smith coordinates
    back to the original generators.
    """

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


@lru_cache(maxsize=1024)
def snf(M: IntMatrix) -> SmithForm:
    """Smith normal form with unimodular ``U``, ``V`` such that ``U @ M @ V == D``.

    >>> snf(IntMatrix([[2, 4], [6, 8]])).invariant_factors
    (2, 4)
    """
    m, n = M.rows, M.cols
    A = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(i, j, q):
        # row_i += q * row_j
        Ai, Aj = A[i], A[j]
        for k in range(n):
            if Aj[k]:
                Ai[k] += q * Aj[k]
        Ui_, Uj = U[i], U[j]
        for k in range(m):
            if Uj[k]:
                Ui_[k] += q * Uj[k]
        for row in Ui:
            if row[i]:
                row[j] -= q * row[i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def col_add(j, i, q):
        # col_j += q * col_i
        for row in A:
            if row[i]:
                row[j] += q * row[i]
        for row in V:
            if row[i]:
                row[j] += q * row[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    factors = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        clean = False
            if not clean:
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, pi, pj = min(cands)
                if pi != t:
                    row_swap(t, pi)
                if pj != t:
                    col_swap(t, pj)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
        factors.append(A[t][t])

    return SmithForm(
        D=IntMatrix(A, m, n),
        U=IntMatrix(U, m, m),
        V=IntMatrix(V, n, n),
        U_inv=IntMatrix(Ui, m, m),
        invariant_factors=tuple(factors),
    )


@dataclass(frozen=True)
class ColumnHermite:
    """Column Hermite form ``H = M @ W`` with ``W`` unimodular.

    Column ``t < rank`` of ``H`` has a positive pivot in row ``pivots[t]``,
    zeros above it, and the entries left of each pivot are reduced into
    ``[0, pivot)``.  Columns ``rank:`` of ``H`` are zero, so the matching
    columns of ``W`` span the integer kernel of ``M``.
    """

    H: tuple[tuple[int, ...], ...]  # columns
    W: tuple[tuple[int, ...], ...]  # columns
    pivots: tuple[int, ...]
    rows: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, b: Sequence[int]) -> tuple[int, ...] | None:
        """Some integer ``x`` with ``M x = b``, or ``None``."""
        if len(b) != self.rows:
            raise ValueError(f"vector of length {len(b)} for a matrix with {self.rows} rows")
        res = list(b)
        y = []
        for t, r in enumerate(self.pivots):
            h = self.H[t]
            q, rem = divmod(res[r], h[r])
            if rem:
                return None
            y.append(q)
            if q:
                for k in range(r, self.rows):
                    if h[k]:
                        res[k] -= q * h[k]
        if any(res):
            return None
        x = [0] * len(self.W)
        for q, w in zip(y, self.W):
            if q:
                for k, v in enumerate(w):
                    if v:
                        x[k] += q * v
        return tuple(x)


@lru_cache(maxsize=1024)
def column_hermite(M: IntMatrix) -> ColumnHermite:
    m, n = M.rows, M.cols
    cols = [list(c) for c in M.columns()]
    W = [[int(i == j) for i in range(n)] for j in range(n)]

    def sub(k, c, q, start):
        # col_k -= q * col_c
        ck, cc = cols[k], cols[c]
        for i in range(start, m):
            if cc[i]:
                ck[i] -= q * cc[i]
        wk, wc = W[k], W[c]
        for i in range(n):
            if wc[i]:
                wk[i] -= q * wc[i]

    pivots = []
    c = 0
    for r in range(m):
        if c == n:
            break
        while True:
            nz = [k for k in range(c, n) if cols[k][r]]
            if not nz:
                break
            k0 = min(nz, key=lambda k: abs(cols[k][r]))
            if k0 != c:
                cols[c], cols[k0] = cols[k0], cols[c]
                W[c], W[k0] = W[k0], W[c]
            if len(nz) == 1:
                break
            p = cols[c][r]
            for k in range(c + 1, n):
                if cols[k][r]:
                    sub(k, c, cols[k][r] // p, r)
        if not cols[c][r]:
            continue
        if cols[c][r] < 0:
            cols[c] = [-x for x in cols[c]]
            W[c] = [-x for x in W[c]]
        p = cols[c][r]
        for k in range(c):
            q = cols[k][r] // p
            if q:
                sub(k, c, q, r)
        pivots.append(r)
        c += 1
    return ColumnHermite(
        H=tuple(tuple(col) for col in cols),
        W=tuple(tuple(w) for w in W),
        pivots=tuple(pivots),
        rows=m,
    )


def solve_membership(M: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """Return ``x`` with ``M @ x == b`` if ``b`` lies in the column lattice of ``M``."""
    if len(b) != M.rows:
        raise ValueError(f"vector of length {len(b)} for a matrix with {M.rows} rows")
    return column_hermite(M).solve(b)


def lattice_basis(M: IntMatrix) -> IntMatrix:
    """A basis (as columns, in Hermite form) of the lattice spanned by the columns of ``M``."""
    h = column_hermite(M)
    return IntMatrix.from_columns(h.H[: h.rank], M.rows)


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """A Hermite-reduced basis of ``{x : M x = 0}`` as columns."""
    h = column_hermite(M)
    raw = IntMatrix.from_columns(h.W[h.rank:], M.cols)
    return lattice_basis(raw)
