"""Dense exact matrices over a :class:`~tenscat.linalg.fields.Field`."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from . import kernels
from .fields import (
    Field,
    FieldMismatchError,
    PrimeField,
    Rationals,
)

Vector = tuple


class ExactMatrix:
    """Immutable dense matrix; ``rows`` is a tuple of row tuples."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: Optional[int] = None, *, trusted: bool = False):
        if trusted:
            # entries are already field elements; rows may still be lists
            rows = tuple(r if type(r) is tuple else tuple(r) for r in rows)
        else:
            co = field.coerce
            rows = tuple(tuple(co(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "ExactMatrix":
        z = field.zero()
        return cls(field, [(z,) * ncols for _ in range(nrows)], ncols, trusted=True)

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        z, o = field.zero(), field.one()
        return cls(field, [tuple(o if i == j else z for j in range(n)) for i in range(n)], n, trusted=True)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "ExactMatrix":
        if not cols:
            return cls.zeros(field, nrows, 0)
        return cls(field, list(zip(*cols)), len(cols)) if nrows else cls.zeros(field, 0, len(cols))

    @classmethod
    def scalar(cls, field: Field, n: int, c) -> "ExactMatrix":
        z = field.zero()
        c = field.coerce(c)
        return cls(field, [tuple(c if i == j else z for j in range(n)) for i in range(n)], n, trusted=True)

    @classmethod
    def block_diag(cls, field: Field, blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        nc = sum(b.ncols for b in blocks)
        z = field.zero()
        rows = []
        off = 0
        for b in blocks:
            _check_field(field, b)
            for r in b.rows:
                rows.append((z,) * off + r + (z,) * (nc - off - b.ncols))
            off += b.ncols
        return cls(field, rows, nc, trusted=True)

    @classmethod
    def block(cls, field: Field, row_sizes: Sequence[int], col_sizes: Sequence[int], blocks) -> "ExactMatrix":
        """Assemble from ``blocks[i][j]`` (``None`` means zero)."""
        z = field.zero()
        nc = sum(col_sizes)
        out = []
        for i, rs in enumerate(row_sizes):
            band = [[z] * nc for _ in range(rs)]
            off = 0
            for j, cs in enumerate(col_sizes):
                b = blocks[i][j]
                if b is not None:
                    if (b.nrows, b.ncols) != (rs, cs):
                        raise ValueError(f"block ({i},{j}) has shape {b.shape}, expected {(rs, cs)}")
                    for r in range(rs):
                        band[r][off:off + cs] = b.rows[r]
                off += cs
            out.extend(tuple(r) for r in band)
        return cls(field, out, nc, trusted=True)

    # -- basic protocol ----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        if self.nrows == 0:
            return [()] * self.ncols
        return [tuple(c) for c in zip(*self.rows)]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(self.field.to_str(x) for x in r) for r in self.rows)
        return f"ExactMatrix[{self.field!r}]({self.nrows}x{self.ncols}: {body})"

    @property
    def T(self) -> "ExactMatrix":
        if self.nrows == 0:
            return ExactMatrix.zeros(self.field, self.ncols, 0)
        return ExactMatrix(self.field, list(zip(*self.rows)), self.nrows, trusted=True)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        one = self.field.one()
        return all(
            (x == one) if i == j else not x for i, r in enumerate(self.rows) for j, x in enumerate(r)
        )

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        add = self.field.add
        return ExactMatrix(
            self.field, [tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)], self.ncols, trusted=True
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        sub = self.field.sub
        return ExactMatrix(
            self.field, [tuple(sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)], self.ncols, trusted=True
        )

    def __neg__(self) -> "ExactMatrix":
        neg = self.field.neg
        return ExactMatrix(self.field, [tuple(neg(a) for a in r) for r in self.rows], self.ncols, trusted=True)

    def scale(self, c) -> "ExactMatrix":
        F = self.field
        c = F.coerce(c)
        mul = F.mul
        return ExactMatrix(F, [tuple(mul(c, a) for a in r) for r in self.rows], self.ncols, trusted=True)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same(self, other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        if other.ncols == 0 or self.nrows == 0:
            return ExactMatrix.zeros(F, self.nrows, other.ncols)
        cols = other.columns()
        z = F.zero()
        out = []
        if isinstance(F, PrimeField):
            p = F.p
            for r in self.rows:
                if not any(r):
                    out.append((0,) * other.ncols)
                    continue
                out.append(tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols))
        elif isinstance(F, Rationals):
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                if not nz:
                    out.append((z,) * other.ncols)
                    continue
                out.append(tuple(sum((a * c[k] for k, a in nz), z) for c in cols))
        else:
            dot = F.dot
            for r in self.rows:
                if not any(r):
                    out.append((z,) * other.ncols)
                    continue
                out.append(tuple(dot(r, c) for c in cols))
        return ExactMatrix(F, out, other.ncols, trusted=True)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        dot = self.field.dot
        return tuple(dot(r, v) for r in self.rows)

    def rank(self) -> int:
        return rref(self)[2]

    def inverse(self) -> "ExactMatrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        x = solve_matrix(self, ExactMatrix.identity(self.field, n))
        if x is None or rref(self)[2] != n:
            raise ZeroDivisionError("matrix is singular")
        return x

    def hstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        mats = (self,) + others
        for m in others:
            _check_same(self, m)
            if m.nrows != self.nrows:
                raise ValueError("hstack row mismatch")
        rows = [sum((m.rows[i] for m in mats), ()) for i in range(self.nrows)]
        return ExactMatrix(self.field, rows, sum(m.ncols for m in mats), trusted=True)

    def vstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        for m in others:
            _check_same(self, m)
            if m.ncols != self.ncols:
                raise ValueError("vstack column mismatch")
        rows = list(self.rows)
        for m in others:
            rows.extend(m.rows)
        return ExactMatrix(self.field, rows, self.ncols, trusted=True)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.field, [tuple(self.rows[i][j] for j in cols) for i in rows], len(cols), trusted=True)

    def to_json(self) -> list:
        tj = self.field.to_json
        return [[tj(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, field: Field, data: list, nrows: int, ncols: int) -> "ExactMatrix":
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise ValueError(f"expected a {nrows}x{ncols} matrix")
        return cls(field, [[field.parse(x) for x in r] for r in data], ncols)


def _check_field(field: Field, m: ExactMatrix) -> None:
    if m.field != field:
        raise FieldMismatchError(f"matrix over {m.field!r} used with {field!r}")


def _check_same(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")


# -- elimination -------------------------------------------------------------

def _rref_rows(field: Field, rows: list, ncols: int) -> tuple[list, list[int]]:
    """rref of raw rows; returns (rows, pivots)."""
    if not rows or ncols == 0:
        return [list(r) for r in rows], []
    if isinstance(field, Rationals):
        ints = []
        for r in rows:
            den = 1
            for x in r:
                if x.denominator != 1:
                    den = lcm(den, x.denominator)
            ints.append([x.numerator * (den // x.denominator) for x in r])
        m, piv, d = kernels.rref_int(ints, ncols)
        if d == 1:
            return [[Fraction(x) for x in r] for r in m], piv
        return [[Fraction(x, d) if x else Fraction(0) for x in r] for r in m], piv
    if isinstance(field, PrimeField):
        return kernels.rref_modp(rows, ncols, field.p)
    return _rref_generic(field, rows, ncols)


def _rref_generic(field: Field, rows: list, ncols: int) -> tuple[list, list[int]]:
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    sub, mul, inv = field.sub, field.mul, field.inv
    for c in range(ncols):
        if r == nrows:
            break
        q = r
        while q < nrows and not m[q][c]:
            q += 1
        if q == nrows:
            continue
        m[q], m[r] = m[r], m[q]
        pinv = inv(m[r][c])
        prow = [mul(pinv, x) if x else x for x in m[r]]
        m[r] = prow
        nzc = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r and m[i][c]:
                a = m[i][c]
                row = m[i]
                for j in nzc:
                    row[j] = sub(row[j], mul(a, prow[j]))
        pivots.append(c)
        r += 1
    return m, pivots


def rref(M: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...], int]:
    """Reduced row echelon form, pivot columns and rank."""
    rows, piv = _rref_rows(M.field, list(M.rows), M.ncols)
    return ExactMatrix(M.field, [tuple(r) for r in rows], M.ncols, trusted=True), tuple(piv), len(piv)


def rank(M: ExactMatrix) -> int:
    return rref(M)[2]


def kernel_basis(M: ExactMatrix) -> list[Vector]:
    """Basis of ``{v : M v = 0}`` as column vectors (tuples)."""
    F = M.field
    rows, piv = _rref_rows(F, list(M.rows), M.ncols)
    pivset = set(piv)
    z, one = F.zero(), F.one()
    basis = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = [z] * M.ncols
        v[f] = one
        for i, pc in enumerate(piv):
            x = rows[i][f]
            if x:
                v[pc] = F.neg(x)
        basis.append(tuple(v))
    return basis


def kernel_matrix(M: ExactMatrix) -> ExactMatrix:
    """Kernel basis as the columns of a matrix."""
    return ExactMatrix.from_columns(M.field, kernel_basis(M), M.ncols)


def solve_matrix(A: ExactMatrix, B: ExactMatrix) -> Optional[ExactMatrix]:
    """Some ``X`` with ``A X = B``, or ``None`` when inconsistent."""
    _check_same(A, B)
    if A.nrows != B.nrows:
        raise ValueError("solve: row mismatch")
    F = A.field
    n = A.ncols
    aug = [a + b for a, b in zip(A.rows, B.rows)]
    rows, piv = _rref_rows(F, aug, n + B.ncols)
    if piv and piv[-1] >= n:
        return None
    z = F.zero()
    out = [[z] * B.ncols for _ in range(n)]
    for i, pc in enumerate(piv):
        out[pc] = rows[i][n:]
    return ExactMatrix(F, [tuple(r) for r in out], B.ncols, trusted=True)


def solve(M: ExactMatrix, b: Sequence) -> Optional[Vector]:
    """Some ``x`` with ``M x = b``, or ``None``."""
    if len(b) != M.nrows:
        raise ValueError("solve: b must have one entry per row")
    F = M.field
    bm = ExactMatrix(F, [(x,) for x in b], 1)
    x = solve_matrix(M, bm)
    return None if x is None else x.column(0)


def column_basis(M: ExactMatrix) -> ExactMatrix:
    """Columns of ``M`` at the pivot positions: a basis of the image."""
    _, piv, _ = rref(M)
    return M.submatrix(range(M.nrows), piv)


def complement_basis(B: ExactMatrix) -> ExactMatrix:
    """Standard basis vectors completing the (independent) columns of ``B``."""
    n = B.nrows
    F = B.field
    aug = B.hstack(ExactMatrix.identity(F, n))
    _, piv, _ = rref(aug)
    extra = [p - B.ncols for p in piv if p >= B.ncols]
    return ExactMatrix.identity(F, n).submatrix(range(n), extra)


def kronecker(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """``(A (x) B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l]`` (left factor outer)."""
    _check_same(A, B)
    F = A.field
    mul = F.mul
    z = F.zero()
    zrow = (z,) * B.ncols
    rows = []
    for ra in A.rows:
        for rb in B.rows:
            row: tuple = ()
            for a in ra:
                if a:
                    row += tuple(mul(a, b) if b else z for b in rb)
                else:
                    row += zrow
            rows.append(row)
    return ExactMatrix(F, rows, A.ncols * B.ncols, trusted=True)


def linear_combination(field: Field, terms: Iterable[tuple], nrows: int, ncols: int) -> ExactMatrix:
    """``sum c * M`` over ``(c, M)`` pairs, touching only nonzero entries."""
    z = field.zero()
    add, mul = field.add, field.mul
    acc = [[z] * ncols for _ in range(nrows)]
    for c, M in terms:
        if not c:
            continue
        if M.shape != (nrows, ncols):
            raise ValueError(f"shape mismatch {M.shape} in linear combination of {(nrows, ncols)}")
        for i, r in enumerate(M.rows):
            ai = acc[i]
            for j, x in enumerate(r):
                if x:
                    ai[j] = add(ai[j], mul(c, x))
    return ExactMatrix(field, [tuple(r) for r in acc], ncols, trusted=True)


def direct_sum(*mats: ExactMatrix) -> ExactMatrix:
    if not mats:
        raise ValueError("direct_sum needs at least one matrix")
    return ExactMatrix.block_diag(mats[0].field, mats)
