"""Sparse square/rectangular matrices over any commutative ring.

Entries may be :class:`~uqlab.scalar.Cyclo`, ``complex`` or
:class:`~uqlab.laurent.LaurentPoly`; a falsy entry is treated as zero and
never stored.  Vectors are plain dense lists.
"""

from __future__ import annotations

from typing import Callable, Iterable


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: dict[int, dict[int, object]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = {}
        for i, row in (rows or {}).items():
            clean = {j: v for j, v in row.items() if v}
            if clean:
                self.rows[i] = clean

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]]):
        rows: dict[int, dict[int, object]] = {}
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            r = rows.setdefault(i, {})
            r[j] = r[j] + v if j in r else v
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n: int, one) -> SparseMatrix:
        return cls(n, n, {i: {i: one} for i in range(n)})

    @classmethod
    def diagonal(cls, values) -> SparseMatrix:
        values = list(values)
        n = len(values)
        return cls(n, n, {i: {i: v} for i, v in enumerate(values)})

    @classmethod
    def from_dense(cls, dense) -> SparseMatrix:
        dense = [list(r) for r in dense]
        ncols = len(dense[0]) if dense else 0
        return cls(len(dense), ncols, {i: dict(enumerate(r)) for i, r in enumerate(dense)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, 0)

    def entries(self):
        for i, row in self.rows.items():
            for j, v in row.items():
                yield i, j, v

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def map(self, fn: Callable) -> SparseMatrix:
        return SparseMatrix(
            self.nrows, self.ncols, {i: {j: fn(v) for j, v in r.items()} for i, r in self.rows.items()}
        )

    def _check_same_shape(self, other: SparseMatrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        self._check_same_shape(other)
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            target = rows.setdefault(i, {})
            for j, v in r.items():
                target[j] = target[j] + v if j in target else v
        return SparseMatrix(self.nrows, self.ncols, rows)

    def __neg__(self) -> SparseMatrix:
        return self.map(lambda v: -v)

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        return self + (-other)

    def __mul__(self, c) -> SparseMatrix:
        """Scalar multiplication; use ``@`` for matrix products."""
        if isinstance(c, SparseMatrix):
            raise TypeError("use @ for matrix products")
        return self.map(lambda v: v * c)

    def __rmul__(self, c) -> SparseMatrix:
        return self.map(lambda v: c * v)

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            rows: dict[int, dict[int, object]] = {}
            orows = other.rows
            for i, r in self.rows.items():
                acc: dict[int, object] = {}
                for k, a in r.items():
                    ok = orows.get(k)
                    if not ok:
                        continue
                    for j, b in ok.items():
                        t = a * b
                        acc[j] = acc[j] + t if j in acc else t
                if acc:
                    rows[i] = acc
            return SparseMatrix(self.nrows, other.ncols, rows)
        return self.apply(other)

    def apply(self, vec: list, zero=0) -> list:
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} for {self.shape} matrix")
        out = [zero] * self.nrows
        for i, r in self.rows.items():
            acc = zero
            for j, a in r.items():
                v = vec[j]
                if v:
                    acc = acc + a * v
            out[i] = acc
        return out

    def power(self, n: int, one) -> SparseMatrix:
        result = SparseMatrix.identity(self.nrows, one)
        for _ in range(n):
            result = self @ result
        return result

    def transpose(self) -> SparseMatrix:
        rows: dict[int, dict[int, object]] = {}
        for i, j, v in self.entries():
            rows.setdefault(j, {})[i] = v
        return SparseMatrix(self.ncols, self.nrows, rows)

    def kron(self, other: SparseMatrix) -> SparseMatrix:
        """Kronecker product; row index (i, k) -> i * other.nrows + k."""
        rows: dict[int, dict[int, object]] = {}
        for i, ri in self.rows.items():
            for k, rk in other.rows.items():
                row = {}
                for j, a in ri.items():
                    base = j * other.ncols
                    for l, b in rk.items():
                        row[base + l] = a * b
                rows[i * other.nrows + k] = row
        return SparseMatrix(self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def submatrix(self, row_idx, col_idx) -> SparseMatrix:
        cpos = {c: n for n, c in enumerate(col_idx)}
        rows = {}
        for n, i in enumerate(row_idx):
            r = self.rows.get(i)
            if r:
                rows[n] = {cpos[j]: v for j, v in r.items() if j in cpos}
        return SparseMatrix(len(row_idx), len(col_idx), rows)

    def to_dense(self, zero=0) -> list[list]:
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def is_diagonal(self) -> bool:
        return all(j == i for i, j, _ in self.entries())

    def diagonal_entries(self, zero=0) -> list:
        return [self.rows.get(i, {}).get(i, zero) for i in range(min(self.nrows, self.ncols))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    __hash__ = None

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"
