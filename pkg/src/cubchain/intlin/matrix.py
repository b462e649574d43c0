"""Immutable dense matrices of Python integers.

Entries are stored row-major as a tuple of tuples.  Matrices act on column
vectors; a vector is any sequence of ints of the right length.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class IntMatrix:
    """An exact ``rows x cols`` integer matrix.

    The shape is explicit so that empty matrices (``0 x n`` or ``n x 0``)
    keep their dimensions; those are common as relation matrices of free
    groups and as homomorphisms out of or into the trivial group.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, entries: Iterable[Sequence[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix without rows")
            cols = len(data[0])
        if not data and rows:
            data = tuple((0,) * cols for _ in range(rows))
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._data = data
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls((), rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> IntMatrix:
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls(out, rows, cols)

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int) -> IntMatrix:
        columns = [tuple(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise ValueError("column length mismatch")
        return cls(zip(*columns) if columns else (), rows, len(columns))

    @classmethod
    def _raw(cls, data: tuple, rows: int, cols: int) -> IntMatrix:
        # trusted fast path: data is already a tuple of int tuples
        m = cls.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, data, None
        return m

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        if not self.rows:
            return [()] * self.cols
        return list(zip(*self._data))

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._data]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix._raw(tuple(self.columns()), self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self._data)

    def submatrix(self, rows: Iterable[int] | slice | None = None,
                  cols: Iterable[int] | slice | None = None) -> IntMatrix:
        ri = _indices(rows, self.rows)
        ci = _indices(cols, self.cols)
        data = tuple(tuple(self._data[i][j] for j in ci) for i in ri)
        return IntMatrix._raw(data, len(ri), len(ci))

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"

    def _check_same_shape(self, other: IntMatrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        data = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data))
        return IntMatrix._raw(data, self.rows, self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        data = tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data))
        return IntMatrix._raw(data, self.rows, self.cols)

    def __neg__(self) -> IntMatrix:
        return IntMatrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.rows, self.cols)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix._raw(tuple(tuple(k * a for a in r) for r in self._data), self.rows, self.cols)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        n = other.cols
        orows = other._data
        out = []
        for row in self._data:
            acc = [0] * n
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(orows[k]):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return IntMatrix._raw(tuple(out), self.rows, n)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} for {self.shape} matrix")
        return tuple(sum(a * x for a, x in zip(row, vector) if a) for row in self._data)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


def _indices(sel, n):
    if sel is None:
        return list(range(n))
    if isinstance(sel, slice):
        return list(range(n))[sel]
    return list(sel)


def hstack(*blocks: IntMatrix, rows: int | None = None) -> IntMatrix:
    if not blocks:
        return IntMatrix.zeros(rows or 0, 0)
    r = blocks[0].rows
    if any(b.rows != r for b in blocks):
        raise ValueError("hstack row mismatch")
    data = tuple(sum((b.row(i) for b in blocks), ()) for i in range(r))
    return IntMatrix._raw(data, r, sum(b.cols for b in blocks))


def vstack(*blocks: IntMatrix, cols: int | None = None) -> IntMatrix:
    if not blocks:
        return IntMatrix.zeros(0, cols or 0)
    c = blocks[0].cols
    if any(b.cols != c for b in blocks):
        raise ValueError("vstack column mismatch")
    data = tuple(row for b in blocks for row in b)
    return IntMatrix._raw(data, sum(b.rows for b in blocks), c)


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    total_cols = sum(b.cols for b in blocks)
    out = []
    offset = 0
    for b in blocks:
        pre, post = (0,) * offset, (0,) * (total_cols - offset - b.cols)
        out.extend(pre + row + post for row in b)
        offset += b.cols
    return IntMatrix._raw(tuple(out), sum(b.rows for b in blocks), total_cols)


def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    out = []
    for arow in a:
        for brow in b:
            out.append(tuple(x * y for x in arow for y in brow))
    return IntMatrix._raw(tuple(out), a.rows * b.rows, a.cols * b.cols)
