"""Exact rational dense linear algebra, plus small numeric eigen/rank helpers.

The exact side works on RationalMatrix (row-major Fractions): determinants by
fraction-free Bareiss elimination after clearing row denominators, and
rank / solve / nullspace by exact Gaussian elimination.  The numeric side is
a thin wrapper over LAPACK (via numpy) for eigenvalues of small dense
matrices and SVD-based rank decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

# two orders above double-precision noise at desk-scale conditioning
DEFAULT_RANK_TOL = 1e-10


class SingularMatrixError(ArithmeticError):
    """An exact solve hit a singular matrix."""


class EigenConvergenceError(RuntimeError):
    """The eigenvalue iteration did not converge within its cap."""


class RationalMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        ent = tuple(Fraction(e) for e in entries)
        if len(ent) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(ent)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("matrix must have at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("rows have inconsistent lengths")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [Fraction(1) if i == j else Fraction(0) for i in range(n) for j in range(n)])

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    def to_float_array(self) -> np.ndarray:
        return np.array(
            [[float(self.at(i, j)) for j in range(self.cols)] for i in range(self.rows)],
            dtype=float,
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    __hash__ = None

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class ComplexVector:
    """Finite complex entries; carrier of numeric eigenvalues and roots."""

    entries: tuple[complex, ...]

    def __post_init__(self):
        ent = tuple(complex(z) for z in self.entries)
        for z in ent:
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError("ComplexVector entries must be finite")
        object.__setattr__(self, "entries", ent)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def _bareiss_int(a: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        # pivot search: first nonzero at or below the diagonal
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return 0
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                # exact by the Sylvester identity
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det_exact(M: RationalMatrix) -> Fraction:
    """Exact determinant via integer Bareiss after clearing row denominators."""
    if not M.is_square():
        raise ValueError(f"determinant requires a square matrix, got {M.rows}x{M.cols}")
    scale = 1
    ints: list[list[int]] = []
    for row in M.row_list():
        l = math.lcm(*(f.denominator for f in row)) if row else 1
        ints.append([int(f * l) for f in row])
        scale *= l
    return Fraction(_bareiss_int(ints), scale)


def _forward_eliminate(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place row echelon form; returns (rows, pivot column indices)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank_exact(M: RationalMatrix) -> int:
    """Exact rank over the rationals."""
    _, pivots = _forward_eliminate(M.row_list())
    return len(pivots)


def solve_exact(M: RationalMatrix, b: Sequence) -> tuple[Fraction, ...]:
    """Exact solution of M x = b for square nonsingular M."""
    if not M.is_square():
        raise ValueError(f"solve requires a square matrix, got {M.rows}x{M.cols}")
    rhs = [Fraction(v) for v in b]
    if len(rhs) != M.rows:
        raise ValueError(f"right-hand side has length {len(rhs)}, expected {M.rows}")
    aug = [row + [rhs[i]] for i, row in enumerate(M.row_list())]
    reduced, pivots = _forward_eliminate(aug)
    if pivots[: M.cols] != list(range(M.cols)) or len(pivots) != M.cols:
        raise SingularMatrixError("matrix is singular")
    return tuple(reduced[i][-1] for i in range(M.cols))


def invert_exact(M: RationalMatrix) -> RationalMatrix:
    """Exact inverse of a square matrix; raises if singular."""
    if not M.is_square():
        raise ValueError(f"inverse requires a square matrix, got {M.rows}x{M.cols}")
    n = M.rows
    aug = [
        row + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
        for i, row in enumerate(M.row_list())
    ]
    reduced, pivots = _forward_eliminate(aug)
    if len(pivots) != n or pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return RationalMatrix.from_rows([r[n:] for r in reduced])


def nullspace_exact(M: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel of M; empty iff M has full column rank."""
    reduced, pivots = _forward_eliminate(M.row_list())
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * M.cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(tuple(v))
    return basis


def eig_complex(M, *, max_iter_factor: int = 100) -> ComplexVector:
    """All eigenvalues (with multiplicity) of a small dense matrix.

    Delegates to LAPACK's balanced Hessenberg-QR driver; a failure to
    converge within its internal cap surfaces as EigenConvergenceError.
    """
    arr = np.asarray(M)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"eigenvalues require a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    del max_iter_factor  # cap lives inside the LAPACK driver
    try:
        values = np.linalg.eigvals(arr)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(str(exc)) from exc
    return ComplexVector(tuple(complex(z) for z in values))


def rank_numeric(M, tol_rel: float = DEFAULT_RANK_TOL) -> int:
    """Number of singular values above tol_rel times the largest one."""
    if tol_rel <= 0:
        raise ValueError("tol_rel must be positive")
    arr = np.asarray(M)
    if arr.size == 0:
        return 0
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    s = np.linalg.svd(arr, compute_uv=False)
    smax = s[0] if len(s) else 0.0
    if smax == 0.0:
        return 0
    return int(np.sum(s > tol_rel * smax))
