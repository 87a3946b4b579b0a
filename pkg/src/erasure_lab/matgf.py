"""Dense matrices over GF(q): RREF, rank, kernels and affine solves.

Pivoting is deterministic (columns left to right, first nonzero row from the
top), so RREFs, pivots and kernel bases are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, FormatError, IndexOutOfRange
from .gf import FieldSpec, field_make


@dataclass(frozen=True, eq=False)
class MatGF:
    field: FieldSpec
    data: np.ndarray  # (rows, cols) int64, read-only

    def __post_init__(self):
        data = np.array(self.data, dtype=np.int64, copy=True)
        if data.ndim != 2:
            raise DimensionMismatch(f"matrix data must be 2-D, got shape {data.shape}")
        if data.size and (data.min() < 0 or data.max() >= self.field.q):
            raise ValueError(f"entries must lie in [0, {self.field.q})")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]], cols: int | None = None) -> "MatGF":
        if len(rows) == 0:
            return cls.zeros(field, 0, cols or 0)
        return cls(field, np.array(rows, dtype=np.int64))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "MatGF":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatGF":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __eq__(self, other):
        return (
            isinstance(other, MatGF)
            and self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self.data, other.data)
        )

    def __repr__(self):
        return f"MatGF({self.field!r}, {self.data.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    @property
    def T(self) -> "MatGF":
        return MatGF(self.field, self.data.T)

    def select_columns(self, cols: Iterable[int]) -> "MatGF":
        cols = list(cols)
        if any(c < 0 or c >= self.cols for c in cols):
            raise IndexOutOfRange(f"column index out of range for {self.cols} columns: {cols}")
        return MatGF(self.field, self.data[:, cols].reshape(self.rows, len(cols)))

    def __matmul__(self, other: "MatGF") -> "MatGF":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return MatGF(self.field, matmul(self.field, self.data, other.data))

    def apply(self, vec: Sequence[int]) -> np.ndarray:
        """Return ``vec @ self`` (row vector times matrix)."""
        v = np.asarray(vec, dtype=np.int64).reshape(1, -1)
        if v.shape[1] != self.rows:
            raise DimensionMismatch(f"vector of length {v.shape[1]} vs {self.rows} rows")
        return matmul(self.field, v, self.data)[0]


def matmul(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Raw product of integer arrays ``a @ b`` over F."""
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        out = F.add(out, F.mul(a[:, j : j + 1], b[j : j + 1, :]))
    return out


def _rref_array(F: FieldSpec, a: np.ndarray, ncols: int | None = None):
    """In-place reduced row echelon form of ``a``; pivots searched in the first ncols columns."""
    rows, cols = a.shape
    ncols = cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = F.mul(F.inv(int(a[r, c])), a[r])
        factors = a[:, c].copy()
        factors[r] = 0
        if factors.any():
            a[:] = F.sub(a, F.mul(factors[:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(M: MatGF) -> tuple[MatGF, int, tuple[int, ...]]:
    """Reduced row echelon form; returns ``(R, rank, pivots)``."""
    a, pivots = _rref_array(M.field, M.data.copy())
    return MatGF(M.field, a), len(pivots), tuple(pivots)


def rank(M: MatGF) -> int:
    return rref(M)[1]


def rank_of_columns(M: MatGF, cols: Iterable[int]) -> int:
    """Rank of the submatrix formed by the selected columns."""
    cols = sorted(cols)
    if not cols:
        return 0
    return rank(M.select_columns(cols))


def kernel_basis(M: MatGF) -> MatGF:
    """Basis of ``{v : M @ v = 0}`` as rows, one per free column in ascending order."""
    F = M.field
    R, rk, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = np.zeros((len(free), M.cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = F.neg(int(R.data[r, f]))
    return MatGF(F, basis)


def solve_affine(A: MatGF, b: Sequence[int]) -> tuple[np.ndarray, MatGF] | None:
    """Solve ``A @ x = b``.

    Returns ``(x0, K)`` where every solution is ``x0 + span(K rows)``, or None
    if the system is inconsistent.  Free variables of ``x0`` are zero.
    """
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if b.shape[0] != A.rows:
        raise DimensionMismatch(f"right-hand side has length {b.shape[0]}, expected {A.rows}")
    F = A.field
    aug = np.hstack([A.data, b[:, None]])
    aug, pivots = _rref_array(F, aug, ncols=A.cols)
    rk = len(pivots)
    if np.any(aug[rk:, -1] != 0):
        return None
    x0 = np.zeros(A.cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x0[pc] = aug[r, -1]
    return x0, kernel_basis(A)


def batch_rank(F: FieldSpec, mats: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices, shape (B, rows, cols) -> (B,)."""
    a = np.array(mats, dtype=np.int64, copy=True)
    B, m, n = a.shape
    if F.q == 2 and 0 < max(m, n) <= 64 and min(m, n) > 0:
        return _batch_rank_gf2(a if m <= n else np.transpose(a, (0, 2, 1)))
    rk = np.zeros(B, dtype=np.int64)
    row_ids = np.arange(m)
    for c in range(n):
        cand = (a[:, :, c] != 0) & (row_ids[None, :] >= rk[:, None])
        has = np.flatnonzero(cand.any(axis=1))
        if has.size == 0:
            continue
        piv = cand[has].argmax(axis=1)
        top = rk[has]
        prow = a[has, piv].copy()
        a[has, piv] = a[has, top]
        prow = F.mul(F.inv(prow[:, c])[:, None], prow)
        a[has, top] = prow
        # only rows below the pivot matter for the rank
        f = np.where(row_ids[None, :] > top[:, None], a[has, :, c], 0)
        a[has] = F.sub(a[has], F.mul(f[:, :, None], prow[:, None, :]))
        rk[has] += 1
    return rk


def _batch_rank_gf2(a: np.ndarray) -> np.ndarray:
    """GF(2) ranks with each row packed into a uint64 bitmask."""
    B, m, n = a.shape
    weights = np.uint64(1) << np.arange(n, dtype=np.uint64)
    rows = (a.astype(np.uint64) * weights).sum(axis=2, dtype=np.uint64)
    used = np.zeros((B, m), dtype=bool)
    rk = np.zeros(B, dtype=np.int64)
    batch = np.arange(B)
    for bit in weights:
        has = (rows & bit) != 0
        cand = has & ~used
        ok = cand.any(axis=1)
        if not ok.any():
            continue
        piv = cand.argmax(axis=1)
        pv = np.where(ok, rows[batch, piv], np.uint64(0))
        clear = has & ok[:, None]
        clear[batch[ok], piv[ok]] = False
        rows ^= np.where(clear, pv[:, None], np.uint64(0))
        used[batch[ok], piv[ok]] = True
        rk += ok
    return rk


# --- text format: "q rows cols" then one line of indices per row ---

def format_matrix(M: MatGF) -> str:
    lines = [f"{M.field.q} {M.rows} {M.cols}"]
    lines += [" ".join(str(int(v)) for v in row) for row in M.data]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> MatGF:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty matrix file")
    try:
        q, rows, cols = (int(t) for t in lines[0].split())
        body = [[int(t) for t in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise FormatError(f"malformed matrix text: {exc}") from None
    if len(body) != rows or any(len(r) != cols for r in body):
        raise FormatError(f"expected {rows} rows of {cols} entries")
    F = field_make(q)
    if rows == 0:
        return MatGF.zeros(F, 0, cols)
    return MatGF(F, np.array(body, dtype=np.int64))
