"""Dense exact linear algebra over a FieldCtx.

Matrices store integer-coded entries (FieldCtx.enc).  Row reduction is
plain Gauss-Jordan with deterministic pivoting: columns left to right,
first row with a nonzero entry.  Fields small enough to carry lookup
tables get a vectorised numpy path; both paths pick identical pivots, so
results are bit-identical.  Largest systems in this package are a few
hundred by a thousand over GF(49), well inside exact dense range.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError
from .ff import FieldCtx, FieldElem


class FieldMatrix:
    """A rows x cols matrix over one FieldCtx, entries as integer codes."""

    __slots__ = ("ctx", "nrows", "ncols", "rows")

    def __init__(self, ctx: FieldCtx, nrows: int, ncols: int,
                 rows: list[list[int]] | None = None):
        self.ctx = ctx
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [[0] * ncols for _ in range(nrows)]
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise PreconditionError("matrix shape mismatch")
        self.rows = rows

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Iterable[Iterable]) -> "FieldMatrix":
        data = []
        for row in rows:
            out = []
            for v in row:
                if isinstance(v, FieldElem):
                    if v.ctx.key != ctx.key:
                        raise PreconditionError("matrix entry from a different field")
                    out.append(v.code)
                elif isinstance(v, tuple):
                    out.append(ctx.enc(v))
                else:
                    out.append(int(v))
            data.append(out)
        ncols = len(data[0]) if data else 0
        return cls(ctx, len(data), ncols, data)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "FieldMatrix":
        one = ctx.enc(ctx.one)
        rows = [[one if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(ctx, n, n, rows)

    def copy(self) -> "FieldMatrix":
        return FieldMatrix(self.ctx, self.nrows, self.ncols,
                           [row[:] for row in self.rows])

    # -- accessors --------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.dec(self.rows[i][j]))

    def to_np(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int32).reshape(self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(all(v == 0 for v in row) for row in self.rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldMatrix) and self.ctx.key == other.ctx.key
                and self.rows == other.rows)

    def __repr__(self) -> str:
        return f"FieldMatrix({self.nrows}x{self.ncols} over {self.ctx!r})"

    def mul_vec(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.ncols:
            raise PreconditionError("dimension mismatch")
        ctx = self.ctx
        out = []
        for row in self.rows:
            acc = 0
            for a, b in zip(row, v):
                if a and b:
                    acc = ctx.add_c(acc, ctx.mul_c(a, b))
            out.append(acc)
        return out


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------

def _rref_np(ctx: FieldCtx, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    t = ctx.tables
    MUL, ADD, NEG, INV = t.mul, t.add, t.neg, t.inv
    nr, nc = A.shape
    pivots: list[int] = []
    pr = 0
    for c in range(nc):
        if pr >= nr:
            break
        nz = np.nonzero(A[pr:, c])[0]
        if nz.size == 0:
            continue
        r0 = pr + int(nz[0])
        if r0 != pr:
            A[[pr, r0]] = A[[r0, pr]]
        piv = int(A[pr, c])
        if piv != 1:
            A[pr] = MUL[INV[piv], A[pr]]
        colv = A[:, c].copy()
        colv[pr] = 0
        rows = np.nonzero(colv)[0]
        if rows.size:
            prod = MUL[colv[rows][:, None], A[pr][None, :]]
            A[rows] = ADD[A[rows], NEG[prod]]
        pivots.append(c)
        pr += 1
    return A, pivots


def _rref_py(ctx: FieldCtx, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots: list[int] = []
    pr = 0
    for c in range(nc):
        if pr >= nr:
            break
        sel = None
        for r in range(pr, nr):
            if rows[r][c]:
                sel = r
                break
        if sel is None:
            continue
        if sel != pr:
            rows[pr], rows[sel] = rows[sel], rows[pr]
        piv = rows[pr][c]
        if piv != ctx.enc(ctx.one):
            inv = ctx.inv_c(piv)
            rows[pr] = [ctx.mul_c(inv, v) if v else 0 for v in rows[pr]]
        prow = rows[pr]
        for r in range(nr):
            f = rows[r][c]
            if r != pr and f:
                rows[r] = [ctx.sub_c(a, ctx.mul_c(f, b)) if b else a
                           for a, b in zip(rows[r], prow)]
        pivots.append(c)
        pr += 1
    return rows, pivots


def rref(M: FieldMatrix) -> tuple[FieldMatrix, list[int]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    ctx = M.ctx
    if M.nrows == 0 or M.ncols == 0:
        return M.copy(), []
    if ctx.tables is not None:
        A, pivots = _rref_np(ctx, M.to_np().copy())
        return FieldMatrix(ctx, M.nrows, M.ncols,
                           [list(map(int, row)) for row in A]), pivots
    rows, pivots = _rref_py(ctx, [row[:] for row in M.rows])
    return FieldMatrix(ctx, M.nrows, M.ncols, rows), pivots


def rank(M: FieldMatrix) -> int:
    return len(rref(M)[1])


def nullspace(M: FieldMatrix) -> FieldMatrix:
    """Rows form a deterministic basis of {v : M v = 0}."""
    ctx = M.ctx
    R, pivots = rref(M)
    nc = M.ncols
    free = [c for c in range(nc) if c not in set(pivots)]
    one = ctx.enc(ctx.one)
    basis = []
    for fc in free:
        v = [0] * nc
        v[fc] = one
        for r, pc in enumerate(pivots):
            coef = R.rows[r][fc]
            if coef:
                v[pc] = ctx.neg_c(coef)
        basis.append(v)
    out = FieldMatrix(ctx, len(basis), nc, basis)
    # M v^T = 0 spot check (cheap relative to the elimination itself)
    for v in basis[:4]:
        if any(M.mul_vec(v)):
            raise PreconditionError("nullspace residual nonzero")  # pragma: no cover
    return out


def solve(M: FieldMatrix, b: Sequence[int]) -> list[int] | None:
    """A particular solution of M x = b (free variables zero), or None."""
    if len(b) != M.nrows:
        raise PreconditionError("dimension mismatch in solve")
    ctx = M.ctx
    aug = FieldMatrix(ctx, M.nrows, M.ncols + 1,
                      [row[:] + [int(v)] for row, v in zip(M.rows, b)])
    R, pivots = rref(aug)
    if pivots and pivots[-1] == M.ncols:
        return None
    x = [0] * M.ncols
    for r, pc in enumerate(pivots):
        x[pc] = R.rows[r][M.ncols]
    residual = M.mul_vec(x)
    if any(ctx.sub_c(rv, int(bv)) for rv, bv in zip(residual, b)):
        return None  # pragma: no cover - rref guarantees consistency
    return x


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------

def matmul(A: FieldMatrix, B: FieldMatrix) -> FieldMatrix:
    """A @ B.  Uses exact float64 BLAS on GF(p) digit planes when possible."""
    if A.ctx.key != B.ctx.key:
        raise PreconditionError("matmul over mixed fields")
    if A.ncols != B.nrows:
        raise PreconditionError("matmul shape mismatch")
    ctx = A.ctx
    p, k = ctx.p, ctx.k
    # exactness bound for float64 accumulation
    if ctx.tables is not None and (p - 1) ** 2 * max(A.ncols, 1) < 2 ** 52:
        dig = ctx.tables.digits  # order x k
        An = A.to_np()
        Bn = B.to_np()
        Ap = [dig[An, i].astype(np.float64) for i in range(k)]
        Bp = [dig[Bn, i].astype(np.float64) for i in range(k)]
        acc = [np.zeros((A.nrows, B.ncols)) for _ in range(2 * k - 1)]
        for i in range(k):
            for j in range(k):
                acc[i + j] += Ap[i] @ Bp[j]
        acc = [a.astype(np.int64) % p for a in acc]
        planes = list(acc[:k])
        for d in range(k, 2 * k - 1):
            row = ctx._reduction[d - k]
            for t in range(k):
                if row[t]:
                    planes[t] = (planes[t] + row[t] * acc[d]) % p
        out = np.zeros((A.nrows, B.ncols), dtype=np.int64)
        w = 1
        for t in range(k):
            out += planes[t] * w
            w *= p
        return FieldMatrix(ctx, A.nrows, B.ncols,
                           [list(map(int, r)) for r in out])
    rows = []
    for i in range(A.nrows):
        arow = A.rows[i]
        out_row = []
        for j in range(B.ncols):
            acc = 0
            for t in range(A.ncols):
                a = arow[t]
                b = B.rows[t][j]
                if a and b:
                    acc = ctx.add_c(acc, ctx.mul_c(a, b))
            out_row.append(acc)
        rows.append(out_row)
    return FieldMatrix(ctx, A.nrows, B.ncols, rows)
