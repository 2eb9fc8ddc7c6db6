"""Finite-dimensional algebras and Hopf algebras by structure constants.

Elements of ``H`` are dense coefficient tuples of length ``dim``; elements
of ``H (x) H`` use the Kronecker index ``i * dim + j`` for ``e_i (x) e_j``.
Internally the structure constants are also kept sparse, since the axiom
checks and module constructions only ever touch the nonzero terms.
"""
from __future__ import annotations

from itertools import product
from typing import Optional, Sequence

from ..linalg.fields import Field
from ..linalg.matrix import ExactMatrix, solve_matrix
from ..report import FAIL, PASS, VerificationReport


class HopfStructureError(ValueError):
    """Shape or consistency problem in supplied structure constants."""


def _sparse(field: Field, coeffs: Sequence) -> dict:
    return {k: c for k, c in enumerate(coeffs) if not field.is_zero(c)}


class FiniteDimAlgebra:
    """Associative unital algebra: ``e_i e_j = sum_k mult[i][j][k] e_k``."""

    def __init__(self, field: Field, dim: int, mult, unit: Sequence):
        if dim < 1:
            raise HopfStructureError("algebra dimension must be positive")
        co = field.coerce
        if len(mult) != dim or any(len(r) != dim or any(len(c) != dim for c in r) for r in mult):
            raise HopfStructureError(f"mult must be a {dim}x{dim}x{dim} array")
        if len(unit) != dim:
            raise HopfStructureError("unit must have one coefficient per basis element")
        self.field = field
        self.dim = dim
        self.mult = tuple(tuple(tuple(co(x) for x in c) for c in r) for r in mult)
        self.unit = tuple(co(x) for x in unit)
        self._table = [[_sparse(field, self.mult[i][j]) for j in range(dim)] for i in range(dim)]

    # -- element arithmetic -------------------------------------------------
    def basis(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one() if k == i else F.zero() for k in range(self.dim))

    def zero_element(self) -> tuple:
        return (self.field.zero(),) * self.dim

    def multiply(self, a: Sequence, b: Sequence) -> tuple:
        F = self.field
        acc = [F.zero()] * self.dim
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            row = self._table[i]
            for j, y in enumerate(b):
                if F.is_zero(y):
                    continue
                xy = F.mul(x, y)
                for k, c in row[j].items():
                    acc[k] = F.add(acc[k], F.mul(xy, c))
        return tuple(acc)

    def mult_matrix(self) -> ExactMatrix:
        """``m : H (x) H -> H`` as a ``dim x dim^2`` matrix."""
        d = self.dim
        return ExactMatrix(
            self.field, [[self.mult[i][j][k] for i in range(d) for j in range(d)] for k in range(d)], d * d
        )

    def left_mult_matrix(self, a: Sequence) -> ExactMatrix:
        """Matrix of ``y -> a y``."""
        cols = [self.multiply(a, self.basis(j)) for j in range(self.dim)]
        return ExactMatrix.from_columns(self.field, cols, self.dim)

    def inverse_element(self, a: Sequence) -> Optional[tuple]:
        L = self.left_mult_matrix(a)
        x = solve_matrix(L, ExactMatrix(self.field, [(u,) for u in self.unit], 1))
        if x is None:
            return None
        x = x.column(0)
        if self.multiply(x, a) != self.unit:
            return None
        return x


class HopfAlgebra:
    """A finite-dimensional Hopf algebra.

    ``comult`` is ``dim^2 x dim`` (column ``i`` is Delta(e_i) in the
    Kronecker basis), ``counit`` has length ``dim``, ``antipode`` is
    ``dim x dim`` with column ``i`` equal to S(e_i).  ``generators`` lists
    basis indices that generate the algebra; module intertwining and
    restriction only look at those.
    """

    def __init__(
        self,
        algebra: FiniteDimAlgebra,
        comult,
        counit: Sequence,
        antipode,
        antipode_inverse=None,
        *,
        generators: Optional[Sequence[int]] = None,
        name: str = "",
    ):
        F = algebra.field
        d = algebra.dim
        self.algebra = algebra
        self.field = F
        self.dim = d
        self.name = name
        self.comult = comult if isinstance(comult, ExactMatrix) else ExactMatrix(F, comult, d)
        self.antipode = antipode if isinstance(antipode, ExactMatrix) else ExactMatrix(F, antipode, d)
        if self.comult.shape != (d * d, d):
            raise HopfStructureError(f"comult must be {d * d}x{d}, got {self.comult.shape}")
        if self.antipode.shape != (d, d):
            raise HopfStructureError(f"antipode must be {d}x{d}")
        if len(counit) != d:
            raise HopfStructureError("counit must have one entry per basis element")
        self.counit = tuple(F.coerce(x) for x in counit)
        if antipode_inverse is not None and not isinstance(antipode_inverse, ExactMatrix):
            antipode_inverse = ExactMatrix(F, antipode_inverse, d)
        if antipode_inverse is not None and antipode_inverse.shape != (d, d):
            raise HopfStructureError("antipode_inverse must be square")
        self._antipode_inverse = antipode_inverse
        self.generators = tuple(generators) if generators is not None else tuple(range(d))
        self._delta = [
            {divmod(r, d): c for r, c in enumerate(self.comult.column(i)) if not F.is_zero(c)} for i in range(d)
        ]

    # -- accessors ----------------------------------------------------------
    @property
    def unit(self) -> tuple:
        return self.algebra.unit

    @property
    def antipode_inverse(self) -> ExactMatrix:
        """S^-1, computed by inversion when not supplied."""
        if self._antipode_inverse is None:
            self._antipode_inverse = self.antipode.inverse()
        return self._antipode_inverse

    @property
    def has_antipode_inverse(self) -> bool:
        return self._antipode_inverse is not None

    def delta_terms(self, i: int) -> dict:
        """Delta(e_i) as ``{(j, k): coeff}``."""
        return self._delta[i]

    def multiply(self, a, b) -> tuple:
        return self.algebra.multiply(a, b)

    def basis(self, i: int) -> tuple:
        return self.algebra.basis(i)

    def apply_antipode(self, a: Sequence) -> tuple:
        return self.antipode.apply(a)

    def comultiply(self, a: Sequence) -> tuple:
        return self.comult.apply(a)

    def counit_of(self, a: Sequence):
        return self.field.dot(self.counit, a)

    # -- H (x) H ------------------------------------------------------------
    def tensor_multiply(self, a: Sequence, b: Sequence) -> tuple:
        """Product in ``H (x) H``: ``(x (x) y)(z (x) w) = xz (x) yw``."""
        F = self.field
        d = self.dim
        table = self.algebra._table
        acc = [F.zero()] * (d * d)
        sa = _sparse(F, a)
        sb = _sparse(F, b)
        for ia, ca in sa.items():
            i1, i2 = divmod(ia, d)
            for ib, cb in sb.items():
                j1, j2 = divmod(ib, d)
                c = F.mul(ca, cb)
                for k1, c1 in table[i1][j1].items():
                    cc = F.mul(c, c1)
                    for k2, c2 in table[i2][j2].items():
                        idx = k1 * d + k2
                        acc[idx] = F.add(acc[idx], F.mul(cc, c2))
        return tuple(acc)

    def one_tensor_one(self) -> tuple:
        F = self.field
        d = self.dim
        u = self.unit
        return tuple(F.mul(u[i], u[j]) for i in range(d) for j in range(d))

    def structure_equal(self, other: "HopfAlgebra") -> bool:
        return (
            self.field == other.field
            and self.dim == other.dim
            and self.algebra.mult == other.algebra.mult
            and self.unit == other.unit
            and self.comult == other.comult
            and self.counit == other.counit
            and self.antipode == other.antipode
        )

    def __repr__(self):
        label = self.name or "HopfAlgebra"
        return f"<{label} dim={self.dim} over {self.field!r}>"


# -- axiom checking -----------------------------------------------------------

def _sp_mult(H: HopfAlgebra, a: dict, b: dict) -> dict:
    F = H.field
    table = H.algebra._table
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            xy = F.mul(x, y)
            for k, c in table[i][j].items():
                out[k] = F.add(out.get(k, F.zero()), F.mul(xy, c))
    return {k: v for k, v in out.items() if not F.is_zero(v)}


def _sp_linear(H: HopfAlgebra, mat: ExactMatrix, a: dict) -> dict:
    F = H.field
    out: dict = {}
    for i, x in a.items():
        for r in range(mat.nrows):
            c = mat.rows[r][i]
            if not F.is_zero(c):
                out[r] = F.add(out.get(r, F.zero()), F.mul(x, c))
    return {k: v for k, v in out.items() if not F.is_zero(v)}


def _sp_clean(F: Field, d: dict) -> dict:
    return {k: v for k, v in d.items() if not F.is_zero(v)}


def _sp_add(F: Field, acc: dict, key, val) -> None:
    acc[key] = F.add(acc.get(key, F.zero()), val)


def _describe_vec(F: Field, d: dict) -> dict:
    return {str(k): F.to_json(v) for k, v in sorted(d.items())}


def check_hopf_axioms(H: HopfAlgebra) -> VerificationReport:
    """Check every Hopf algebra axiom exactly, reporting the first failing
    basis tuple per axiom."""
    F = H.field
    d = H.dim
    A = H.algebra
    table = A._table
    unit = _sparse(F, A.unit)
    rep = VerificationReport("hopf-axioms", meta={"dim": d, "field": F.tag, "name": H.name})

    def record(name, bad):
        if bad is None:
            rep.add(name, PASS)
        else:
            rep.add(name, FAIL, **bad)

    # associativity
    bad = None
    for i, j, k in product(range(d), repeat=3):
        lhs = _sp_mult(H, table[i][j], {k: F.one()})
        rhs = _sp_mult(H, {i: F.one()}, table[j][k])
        if lhs != rhs:
            bad = {"tuple": [i, j, k], "lhs": _describe_vec(F, lhs), "rhs": _describe_vec(F, rhs)}
            break
    record("associativity", bad)

    # unit
    bad = None
    for i in range(d):
        ei = {i: F.one()}
        if _sp_mult(H, unit, ei) != ei or _sp_mult(H, ei, unit) != ei:
            bad = {"tuple": [i]}
            break
    record("unit", bad)

    delta = H._delta

    # coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta
    bad = None
    for i in range(d):
        left: dict = {}
        right: dict = {}
        for (j, k), c in delta[i].items():
            for (a, b), c2 in delta[j].items():
                _sp_add(F, left, (a, b, k), F.mul(c, c2))
            for (a, b), c2 in delta[k].items():
                _sp_add(F, right, (j, a, b), F.mul(c, c2))
        if _sp_clean(F, left) != _sp_clean(F, right):
            bad = {"tuple": [i]}
            break
    record("coassociativity", bad)

    # counit
    eps = H.counit
    bad = None
    for i in range(d):
        left = {}
        right = {}
        for (j, k), c in delta[i].items():
            if not F.is_zero(eps[j]):
                _sp_add(F, left, k, F.mul(c, eps[j]))
            if not F.is_zero(eps[k]):
                _sp_add(F, right, j, F.mul(c, eps[k]))
        ei = {i: F.one()}
        if _sp_clean(F, left) != ei or _sp_clean(F, right) != ei:
            bad = {"tuple": [i]}
            break
    record("counit", bad)

    # Delta multiplicative, Delta(1) = 1 (x) 1
    bad = None
    for i, j in product(range(d), repeat=2):
        lhs: dict = {}
        for k, c in table[i][j].items():
            for jk, c2 in delta[k].items():
                _sp_add(F, lhs, jk, F.mul(c, c2))
        rhs: dict = {}
        for (a1, a2), c1 in delta[i].items():
            for (b1, b2), c2 in delta[j].items():
                c12 = F.mul(c1, c2)
                for k1, x1 in table[a1][b1].items():
                    for k2, x2 in table[a2][b2].items():
                        _sp_add(F, rhs, (k1, k2), F.mul(c12, F.mul(x1, x2)))
        if _sp_clean(F, lhs) != _sp_clean(F, rhs):
            bad = {"tuple": [i, j], "axiom": "Delta(ab) = Delta(a)Delta(b)"}
            break
    if bad is None:
        lhs = {}
        for i, c in unit.items():
            for jk, c2 in delta[i].items():
                _sp_add(F, lhs, jk, F.mul(c, c2))
        rhs = {(i, j): F.mul(a, b) for i, a in unit.items() for j, b in unit.items()}
        if _sp_clean(F, lhs) != _sp_clean(F, rhs):
            bad = {"tuple": [], "axiom": "Delta(1) = 1 (x) 1"}
    record("comult-multiplicative", bad)

    # counit multiplicative, eps(1) = 1
    bad = None
    for i, j in product(range(d), repeat=2):
        lhs = F.zero()
        for k, c in table[i][j].items():
            lhs = F.add(lhs, F.mul(c, eps[k]))
        if lhs != F.mul(eps[i], eps[j]):
            bad = {"tuple": [i, j], "axiom": "eps(ab) = eps(a)eps(b)"}
            break
    if bad is None and F.dot(eps, A.unit) != F.one():
        bad = {"tuple": [], "axiom": "eps(1) = 1"}
    record("counit-multiplicative", bad)

    # antipode: m(S (x) id)Delta = u eps = m(id (x) S)Delta
    S = H.antipode
    s_cols = [_sparse(F, S.column(i)) for i in range(d)]
    bad = None
    for i in range(d):
        expect = {k: F.mul(v, eps[i]) for k, v in unit.items()}
        expect = _sp_clean(F, expect)
        left: dict = {}
        right: dict = {}
        for (j, k), c in delta[i].items():
            for kk, v in _sp_mult(H, s_cols[j], {k: c}).items():
                _sp_add(F, left, kk, v)
            for kk, v in _sp_mult(H, {j: c}, s_cols[k]).items():
                _sp_add(F, right, kk, v)
        left = _sp_clean(F, left)
        right = _sp_clean(F, right)
        if left != expect or right != expect:
            side = "m(S(x)id)Delta" if left != expect else "m(id(x)S)Delta"
            bad = {"tuple": [i], "side": side}
            break
    record("antipode", bad)

    if H.has_antipode_inverse:
        Si = H.antipode_inverse
        ok = (Si @ S).is_identity() and (S @ Si).is_identity()
        record("antipode-inverse", None if ok else {"tuple": [], "axiom": "S^-1 S = S S^-1 = id"})
    return rep


def mutated_copy(H: HopfAlgebra, part: str, index, delta=1) -> HopfAlgebra:
    """Copy of H with one entry of ``comult``, ``counit`` or ``antipode``
    shifted by ``delta``; used to test that the axiom checker notices."""
    F = H.field
    delta = F.coerce(delta)
    comult, counit, antipode = H.comult, list(H.counit), H.antipode
    if part == "counit":
        counit[index] = F.add(counit[index], delta)
    elif part in ("comult", "antipode"):
        M = comult if part == "comult" else antipode
        r, c = index
        rows = [list(row) for row in M.rows]
        rows[r][c] = F.add(rows[r][c], delta)
        M = ExactMatrix(F, rows, M.ncols, trusted=True)
        if part == "comult":
            comult = M
        else:
            antipode = M
    else:
        raise ValueError(f"unknown structure part {part!r}")
    return HopfAlgebra(H.algebra, comult, counit, antipode, generators=H.generators, name=f"{H.name}*")
