"""Linear algebra shared by both backends.

Exact fields use Gaussian elimination over Q(zeta_p) on sparse rows; the
float backend delegates to numpy with thresholds relative to the data.
Vectors are dense Python lists of field elements.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateError
from .matrix import SparseMatrix
from .scalar import FieldSpec


def _as_sparse(vec) -> dict[int, object]:
    return {i: v for i, v in enumerate(vec) if v}


def _to_numpy(rows, ncols: int) -> np.ndarray:
    arr = np.zeros((len(rows), ncols), dtype=complex)
    for r, vec in enumerate(rows):
        for c, v in (vec.items() if isinstance(vec, dict) else enumerate(vec)):
            arr[r, c] = v
    return arr


def _matrix_rows(M) -> tuple[list[dict], int]:
    if isinstance(M, SparseMatrix):
        return [M.rows.get(i, {}) for i in range(M.nrows)], M.ncols
    M = [list(r) for r in M]
    return [_as_sparse(r) for r in M], (len(M[0]) if M else 0)


class ExactSpan:
    """Incrementally grown subspace in row-echelon form (lowest-index pivots)."""

    def __init__(self, field: FieldSpec, dim: int):
        self.field = field
        self.n = dim
        self._pivots: dict[int, dict[int, object]] = {}

    @property
    def dim(self) -> int:
        return len(self._pivots)

    def reduce(self, vec) -> dict[int, object]:
        r = _as_sparse(vec) if not isinstance(vec, dict) else dict(vec)
        for c in sorted(self._pivots):
            a = r.get(c)
            if not a:
                continue
            for j, b in self._pivots[c].items():
                v = r.get(j, 0) - a * b
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
        return r

    def add(self, vec, scale: float = 0.0) -> bool:
        """Insert vec; return True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        c = min(r)
        inv = self.field.inv(r[c])
        self._pivots[c] = {j: v * inv for j, v in r.items()}
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[list]:
        """Reduced row-echelon basis, sorted by pivot column."""
        cols = sorted(self._pivots)
        rows = {c: dict(self._pivots[c]) for c in cols}
        for c in reversed(cols):
            for c2 in cols:
                if c2 >= c:
                    break
                a = rows[c2].get(c)
                if a:
                    for j, b in rows[c].items():
                        v = rows[c2].get(j, 0) - a * b
                        if v:
                            rows[c2][j] = v
                        else:
                            rows[c2].pop(j, None)
        zero = self.field.zero
        out = []
        for c in cols:
            vec = [zero] * self.n
            for j, v in rows[c].items():
                vec[j] = v
            out.append(vec)
        return out


class FloatSpan:
    """Orthonormal basis grown by Gram-Schmidt with one reorthogonalisation pass."""

    def __init__(self, field: FieldSpec, dim: int):
        self.field = field
        self.n = dim
        self._q: list[np.ndarray] = []

    @property
    def dim(self) -> int:
        return len(self._q)

    def _residual(self, vec) -> tuple[np.ndarray, float]:
        v = np.asarray(vec, dtype=complex)
        norm0 = float(np.linalg.norm(v))
        for _ in range(2):
            for b in self._q:
                v = v - np.vdot(b, v) * b
        return v, norm0

    def add(self, vec, scale: float = 0.0) -> bool:
        """Insert vec unless its residual is below tol relative to max(|vec|, scale).

        ``scale`` lets callers supply the size a vector would have had without
        cancellation, so rounding noise is not mistaken for a new direction.
        """
        v, norm0 = self._residual(vec)
        nv = float(np.linalg.norm(v))
        if norm0 == 0 or nv <= self.field.tol * max(norm0, scale):
            return False
        self._q.append(v / nv)
        return True

    def contains(self, vec) -> bool:
        v, norm0 = self._residual(vec)
        return norm0 == 0 or float(np.linalg.norm(v)) <= self.field.tol * norm0

    def basis(self) -> list[list]:
        return [list(b) for b in self._q]


def make_span(field: FieldSpec, dim: int):
    return ExactSpan(field, dim) if field.exact else FloatSpan(field, dim)


def rank(field: FieldSpec, vectors, dim: int | None = None) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    n = dim if dim is not None else len(vectors[0])
    if field.exact:
        span = ExactSpan(field, n)
        for v in vectors:
            span.add(v)
        return span.dim
    arr = _to_numpy(vectors, n)
    norms = np.linalg.norm(arr, axis=1)
    # Vectors that are rounding noise relative to the largest one count as zero.
    keep = norms > field.tol * float(norms.max(initial=0.0))
    if not norms.any() or not keep.any():
        return 0
    arr = arr[keep] / norms[keep, None]
    s = np.linalg.svd(arr, compute_uv=False)
    return int(np.sum(s > field.tol * s[0]))


def nullspace(field: FieldSpec, M) -> list[list]:
    """Basis of {v : M v = 0}."""
    rows, ncols = _matrix_rows(M)
    zero, one = field.zero, field.one
    if field.exact:
        span = ExactSpan(field, ncols)
        for r in rows:
            if r:
                span.add(r)
        red = span.basis()
        pivots = []
        for vec in red:
            pivots.append(next(j for j, v in enumerate(vec) if v))
        free = [c for c in range(ncols) if c not in set(pivots)]
        out = []
        for f in free:
            x = [zero] * ncols
            x[f] = one
            for pc, vec in zip(pivots, red):
                if vec[f]:
                    x[pc] = -vec[f]
            out.append(x)
        return out
    arr = _to_numpy(rows, ncols)
    if arr.shape[0] == 0 or not np.any(arr):
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    _, s, vh = np.linalg.svd(arr)
    scale = field.tol * float(np.max(np.abs(arr)))
    r = int(np.sum(s > scale))
    return [list(v.conj()) for v in vh[r:]]


def det(field: FieldSpec, dense) -> object:
    dense = [list(r) for r in dense]
    n = len(dense)
    if n == 0:
        return field.one
    if not field.exact:
        return complex(np.linalg.det(np.asarray(dense, dtype=complex)))
    a = [row[:] for row in dense]
    result = field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        pv = a[c][c]
        result = result * pv
        inv = field.inv(pv)
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f = f * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return result


def solve(field: FieldSpec, columns, target):
    """Coefficients a with sum a_k columns[k] == target, or None if inconsistent.

    Raises DegenerateError when the columns are dependent.
    """
    columns = [list(c) for c in columns]
    n = len(target)
    m = len(columns)
    if rank(field, columns, n) < m:
        raise DegenerateError("expansion vectors are linearly dependent")
    if field.exact:
        # Row-reduce the augmented system [columns | target] by rows.
        rows = [[columns[k][i] for k in range(m)] + [target[i]] for i in range(n)]
        span = ExactSpan(field, m + 1)
        for r in rows:
            span.add(r)
        red = span.basis()
        coeffs = [field.zero] * m
        for vec in red:
            pc = next(j for j, v in enumerate(vec) if v)
            if pc == m:
                return None
            coeffs[pc] = vec[m]
        return coeffs
    A = np.asarray(columns, dtype=complex).T
    b = np.asarray(target, dtype=complex)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    resid = float(np.linalg.norm(A @ sol - b))
    scale = max(float(np.linalg.norm(b)), float(np.max(np.abs(A))) * float(np.linalg.norm(sol)), 1e-300)
    if resid > field.tol * scale:
        return None
    return [complex(c) for c in sol]


def is_zero_vector(field: FieldSpec, vec, scale: float | None = None) -> bool:
    if field.exact:
        return not any(vec)
    s = scale if scale is not None else 1.0
    return all(abs(complex(v)) <= field.tol * max(1.0, s) for v in vec)


def max_abs(field: FieldSpec, values) -> float:
    return max((field.magnitude(v) for v in values), default=0.0)


def proportional(field: FieldSpec, u, v):
    """Return r with u == r v, or None when u is not a multiple of v.

    v must be nonzero.
    """
    idx = max(range(len(v)), key=lambda i: field.magnitude(v[i]))
    if field.is_zero(v[idx]):
        raise DegenerateError("reference vector is zero")
    r = u[idx] * field.inv(v[idx])
    resid = [a - r * b for a, b in zip(u, v)]
    scale = max(max_abs(field, u), max_abs(field, v))
    if is_zero_vector(field, resid, scale):
        return r
    return None


def matrix_is_zero(field: FieldSpec, M: SparseMatrix, scale: float = 1.0) -> tuple[bool, float]:
    """(is zero, largest entry magnitude)."""
    if field.exact:
        if not M.rows:
            return True, 0.0
        return False, max(field.magnitude(v) for _, _, v in M.entries())
    biggest = max((abs(v) for _, _, v in M.entries()), default=0.0)
    return bool(biggest <= field.tol * max(1.0, scale)), float(biggest)


def matrix_scale(field: FieldSpec, *mats: SparseMatrix) -> float:
    return max((field.magnitude(v) for M in mats for _, _, v in M.entries()), default=0.0)


def inverse(field: FieldSpec, dense) -> list[list]:
    """Inverse of a square matrix; raises DegenerateError when singular."""
    n = len(dense)
    if not field.exact:
        arr = np.asarray(dense, dtype=complex)
        if rank(field, [list(r) for r in dense], n) < n:
            raise DegenerateError("matrix is singular")
        return [list(r) for r in np.linalg.inv(arr)]
    zero, one = field.zero, field.one
    a = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(dense)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            raise DegenerateError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = field.inv(a[c][c])
        a[c] = [v * inv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                fac = a[r][c]
                a[r] = [x - fac * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]
