"""Integer matrices and Smith normal form."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import kernels


class IntMatrix:
    """Immutable dense matrix of Python ints."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence[int]], ncols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([(0,) * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([tuple(int(i == j) for j in range(n)) for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        if not cols:
            return cls.zeros(nrows, 0)
        if nrows == 0:
            return cls.zeros(0, len(cols))
        return cls(list(zip(*cols)), len(cols))

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]!r}, ncols={self.ncols})"

    @property
    def T(self) -> "IntMatrix":
        if self.nrows == 0:
            return IntMatrix.zeros(self.ncols, 0)
        return IntMatrix(list(zip(*self.rows)), self.nrows)

    def columns(self) -> list[tuple[int, ...]]:
        if self.nrows == 0:
            return [()] * self.ncols
        return [tuple(c) for c in zip(*self.rows)]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix([tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows], other.ncols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([tuple(-a for a in r) for r in self.rows], self.ncols)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([tuple(k * a for a in r) for r in self.rows], self.ncols)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        mats = (self,) + others
        if any(m.nrows != self.nrows for m in others):
            raise ValueError("hstack row mismatch")
        return IntMatrix([sum((m.rows[i] for m in mats), ()) for i in range(self.nrows)], sum(m.ncols for m in mats))

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        if any(m.ncols != self.ncols for m in others):
            raise ValueError("vstack column mismatch")
        rows = list(self.rows)
        for m in others:
            rows.extend(m.rows)
        return IntMatrix(rows, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix([tuple(self.rows[i][j] for j in cols) for i in rows], len(cols))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def to_json(self) -> list:
        return [list(r) for r in self.rows]


def kron_int(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y for x in ra for y in rb))
    return IntMatrix(rows, a.ncols * b.ncols)


def block_int(row_sizes, col_sizes, blocks) -> IntMatrix:
    nc = sum(col_sizes)
    out = []
    for i, rs in enumerate(row_sizes):
        band = [[0] * nc for _ in range(rs)]
        off = 0
        for j, cs in enumerate(col_sizes):
            b = blocks[i][j]
            if b is not None:
                if b.shape != (rs, cs):
                    raise ValueError(f"block ({i},{j}) has shape {b.shape}, expected {(rs, cs)}")
                for r in range(rs):
                    band[r][off:off + cs] = b.rows[r]
            off += cs
        out.extend(band)
    return IntMatrix(out, nc)


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U M V = D`` diagonal, d1 | d2 | ..., U and V unimodular."""
    u, d, v = kernels.smith_normal_form([list(r) for r in M.rows], M.nrows, M.ncols)
    return IntMatrix(u, M.nrows), IntMatrix(d, M.ncols), IntMatrix(v, M.ncols)


def snf_diagonal(M: IntMatrix) -> list[int]:
    """The nonzero diagonal entries of the Smith form."""
    _, d, _ = smith_normal_form(M)
    return [d[i, i] for i in range(min(d.shape)) if d[i, i]]


def det_int(M: IntMatrix) -> int:
    """Determinant by fraction-free elimination."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(r) for r in M.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if m[i][k]), None)
            if sw is None:
                return 0
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def int_lattice_basis(gens: IntMatrix) -> IntMatrix:
    """A Z-basis (as columns) of the lattice spanned by the columns of ``gens``."""
    if gens.ncols == 0:
        return IntMatrix.zeros(gens.nrows, 0)
    u, d, _ = smith_normal_form(gens)
    uinv = unimodular_inverse(u)
    cols = []
    for i in range(min(d.shape)):
        di = d[i, i]
        if di:
            cols.append(tuple(di * x for x in uinv.column(i)))
    return IntMatrix.from_columns(cols, gens.nrows)


def int_kernel(M: IntMatrix) -> IntMatrix:
    """Z-basis (columns) of ``{x in Z^n : M x = 0}``."""
    _, d, v = smith_normal_form(M)
    r = sum(1 for i in range(min(d.shape)) if d[i, i])
    return v.submatrix(range(v.nrows), range(r, v.ncols))


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    sol = rational_solve(U, IntMatrix.identity(U.nrows))
    if sol is None:
        raise ValueError("matrix is not invertible")
    return sol


def rational_solve(A: IntMatrix, B: IntMatrix) -> Optional[IntMatrix]:
    """Integral ``X`` with ``A X = B`` when ``A`` has full column rank and the
    (unique) rational solution is integral; otherwise ``None``."""
    n = A.ncols
    aug = [list(a) + list(b) for a, b in zip(A.rows, B.rows)]
    rows, piv, den = kernels.rref_int(aug, n + B.ncols)
    if [p for p in piv if p < n] != list(range(n)):
        return None
    if any(p >= n for p in piv):
        return None
    out = []
    for i in range(n):
        row = []
        for x in rows[i][n:]:
            if x % den:
                return None
            row.append(x // den)
        out.append(row)
    return IntMatrix(out, B.ncols)


def rational_solve_any(A: IntMatrix, B: IntMatrix) -> Optional[list[list[Fraction]]]:
    """Some rational solution of ``A X = B`` (free variables zero), or ``None``."""
    n = A.ncols
    aug = [list(a) + list(b) for a, b in zip(A.rows, B.rows)]
    rows, piv, den = kernels.rref_int(aug, n + B.ncols)
    if any(p >= n for p in piv):
        return None
    out = [[Fraction(0)] * B.ncols for _ in range(n)]
    for i, p in enumerate(piv):
        out[p] = [Fraction(x, den) for x in rows[i][n:]]
    return out
