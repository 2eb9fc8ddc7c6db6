"""Drinfeld twists (gauge transformations) of a Hopf algebra.

Elements of ``H (x) H`` and ``H (x) H (x) H`` are handled as sparse dicts
keyed by basis-index tuples; a ``TwistElement`` stores dense vectors of
length ``dim^2`` in the Kronecker order.
"""
from __future__ import annotations

from typing import Optional, Sequence

from ..linalg.matrix import ExactMatrix, solve_matrix
from ..report import FAIL, PASS, VerificationReport
from .algebra import HopfAlgebra


class TwistError(ValueError):
    """An invalid twist; ``clause`` names the violated condition."""

    def __init__(self, clause: str, report: VerificationReport):
        super().__init__(f"invalid twist: {clause} fails")
        self.clause = clause
        self.report = report


def _sparse_tensor(H: HopfAlgebra, vec: Sequence, arity: int) -> dict:
    d = H.dim
    out = {}
    for r, c in enumerate(vec):
        if c:
            key = []
            for _ in range(arity):
                r, k = divmod(r, d)
                key.append(k)
            out[tuple(reversed(key))] = c
    return out


def _dense_tensor(H: HopfAlgebra, sp: dict, arity: int) -> tuple:
    F = H.field
    d = H.dim
    out = [F.zero()] * (d ** arity)
    for key, c in sp.items():
        r = 0
        for k in key:
            r = r * d + k
        out[r] = c
    return tuple(out)


def _tmul(H: HopfAlgebra, a: dict, b: dict) -> dict:
    """Componentwise product in ``H^(x)k``."""
    F = H.field
    table = H.algebra._table
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            partial = {(): F.mul(ca, cb)}
            for i, j in zip(ka, kb):
                nxt = {}
                for pre, c in partial.items():
                    for k, x in table[i][j].items():
                        key = pre + (k,)
                        nxt[key] = F.add(nxt.get(key, F.zero()), F.mul(c, x))
                partial = nxt
            for key, c in partial.items():
                out[key] = F.add(out.get(key, F.zero()), c)
    return {k: v for k, v in out.items() if v}


def _unit_sparse(H: HopfAlgebra) -> dict:
    return {i: c for i, c in enumerate(H.unit) if c}


def _insert_unit(H: HopfAlgebra, J: dict, pos: int) -> dict:
    F = H.field
    out = {}
    for key, c in J.items():
        for u, cu in _unit_sparse(H).items():
            out[key[:pos] + (u,) + key[pos:]] = F.mul(c, cu)
    return out


def _apply_delta(H: HopfAlgebra, J: dict, pos: int) -> dict:
    F = H.field
    out: dict = {}
    for key, c in J.items():
        for (a, b), x in H.delta_terms(key[pos]).items():
            nk = key[:pos] + (a, b) + key[pos + 1:]
            out[nk] = F.add(out.get(nk, F.zero()), F.mul(c, x))
    return {k: v for k, v in out.items() if v}


class TwistElement:
    """Candidate twist ``J`` in ``H (x) H`` with its inverse."""

    def __init__(self, algebra: HopfAlgebra, element: Sequence, inverse: Optional[Sequence] = None):
        F = algebra.field
        d = algebra.dim
        if len(element) != d * d:
            raise ValueError(f"twist element needs {d * d} coefficients")
        self.algebra = algebra
        self.element = tuple(F.coerce(x) for x in element)
        if inverse is None:
            inverse = _tensor_inverse(algebra, self.element)
            if inverse is None:
                raise TwistError("invertibility", _single_case("invertibility", reason="J is not invertible in H (x) H"))
        elif len(inverse) != d * d:
            raise ValueError(f"twist inverse needs {d * d} coefficients")
        self.inverse = tuple(F.coerce(x) for x in inverse)

    @classmethod
    def identity(cls, H: HopfAlgebra) -> "TwistElement":
        one = H.one_tensor_one()
        return cls(H, one, one)

    @classmethod
    def from_terms(cls, H: HopfAlgebra, terms: dict, inverse_terms: Optional[dict] = None) -> "TwistElement":
        """Build from ``{(i, j): c}`` dictionaries."""
        J = _dense_tensor(H, {k: H.field.coerce(v) for k, v in terms.items()}, 2)
        Jinv = None
        if inverse_terms is not None:
            Jinv = _dense_tensor(H, {k: H.field.coerce(v) for k, v in inverse_terms.items()}, 2)
        return cls(H, J, Jinv)

    def terms(self) -> dict:
        return _sparse_tensor(self.algebra, self.element, 2)

    def inverse_terms(self) -> dict:
        return _sparse_tensor(self.algebra, self.inverse, 2)


def _single_case(name: str, **data) -> VerificationReport:
    rep = VerificationReport("twist-validity")
    rep.add(name, FAIL, **data)
    return rep


def _tensor_inverse(H: HopfAlgebra, J: Sequence) -> Optional[tuple]:
    """Solve ``J X = 1 (x) 1`` in ``H (x) H`` (dense, dim^2 unknowns)."""
    F = H.field
    n = H.dim * H.dim
    cols = []
    for k in range(n):
        e = tuple(F.one() if i == k else F.zero() for i in range(n))
        cols.append(H.tensor_multiply(J, e))
    L = ExactMatrix.from_columns(F, cols, n)
    x = solve_matrix(L, ExactMatrix(F, [(c,) for c in H.one_tensor_one()], 1))
    if x is None:
        return None
    x = x.column(0)
    if H.tensor_multiply(x, J) != H.one_tensor_one():
        return None
    return x


def validate_twist(J: TwistElement) -> VerificationReport:
    """Check invertibility, counit normalization and the 2-cocycle identity."""
    H = J.algebra
    F = H.field
    rep = VerificationReport("twist-validity", meta={"algebra": H.name, "dim": H.dim})
    one = H.one_tensor_one()
    jj = H.tensor_multiply(J.element, J.inverse)
    jj2 = H.tensor_multiply(J.inverse, J.element)
    if jj == one and jj2 == one:
        rep.add("invertibility", PASS)
    else:
        rep.add("invertibility", FAIL, J_Jinv=_describe(H, jj, 2), Jinv_J=_describe(H, jj2, 2))

    Jsp = J.terms()
    left = [F.zero()] * H.dim   # (eps (x) id) J
    right = [F.zero()] * H.dim  # (id (x) eps) J
    for (i, j), c in Jsp.items():
        left[j] = F.add(left[j], F.mul(c, H.counit[i]))
        right[i] = F.add(right[i], F.mul(c, H.counit[j]))
    if tuple(left) == H.unit and tuple(right) == H.unit:
        rep.add("counit-normalization", PASS)
    else:
        rep.add("counit-normalization", FAIL,
                eps_id=[F.to_json(x) for x in left], id_eps=[F.to_json(x) for x in right])

    lhs = _tmul(H, _insert_unit(H, Jsp, 2), _apply_delta(H, Jsp, 0))
    rhs = _tmul(H, _insert_unit(H, Jsp, 0), _apply_delta(H, Jsp, 1))
    if lhs == rhs:
        rep.add("cocycle", PASS)
    else:
        diff = sorted(set(lhs) ^ set(rhs) | {k for k in lhs.keys() & rhs.keys() if lhs[k] != rhs[k]})
        k = diff[0]
        rep.add("cocycle", FAIL, first_index=list(k),
                lhs=F.to_json(lhs.get(k, F.zero())), rhs=F.to_json(rhs.get(k, F.zero())))
    return rep


def _describe(H: HopfAlgebra, vec: Sequence, arity: int) -> dict:
    F = H.field
    return {",".join(map(str, k)): F.to_json(v) for k, v in sorted(_sparse_tensor(H, vec, arity).items())}


def drinfeld_twist(H: HopfAlgebra, J: TwistElement) -> HopfAlgebra:
    """``H^J``: same algebra and counit, ``Delta^J = J Delta J^-1`` and
    ``S^J = U S U^-1`` with ``U = m(id (x) S)(J)``."""
    if J.algebra is not H and not J.algebra.structure_equal(H):
        raise ValueError("twist element belongs to a different Hopf algebra")
    rep = validate_twist(J)
    if not rep.passed:
        raise TwistError(rep.failures()[0].id, rep)
    F = H.field
    d = H.dim
    if J.element == H.one_tensor_one():
        comult = H.comult
        antipode = H.antipode
        antipode_inv = H.antipode_inverse if H.has_antipode_inverse else None
    else:
        cols = []
        for i in range(d):
            delta = H.comult.column(i)
            cols.append(H.tensor_multiply(H.tensor_multiply(J.element, delta), J.inverse))
        comult = ExactMatrix.from_columns(F, cols, d * d)
        A = H.algebra
        U = A.zero_element()
        for (i, j), c in J.terms().items():
            term = A.multiply(A.basis(i), H.apply_antipode(A.basis(j)))
            U = tuple(F.add(u, F.mul(c, t)) for u, t in zip(U, term))
        Uinv = A.inverse_element(U)
        if Uinv is None:
            raise TwistError("antipode", _single_case("antipode", reason="U = m(id (x) S)(J) is not invertible"))
        scols = [A.multiply(A.multiply(U, H.antipode.column(i)), Uinv) for i in range(d)]
        antipode = ExactMatrix.from_columns(F, scols, d)
        Sinv = H.antipode_inverse
        icols = [Sinv.apply(A.multiply(A.multiply(Uinv, A.basis(i)), U)) for i in range(d)]
        antipode_inv = ExactMatrix.from_columns(F, icols, d)
    return HopfAlgebra(H.algebra, comult, H.counit, antipode, antipode_inv,
                       generators=H.generators, name=f"{H.name}^J" if H.name else "twisted")


def klein_twist(H: HopfAlgebra, a: int, b: int) -> TwistElement:
    """Twist of a group algebra supported on the Klein subgroup ``<a, b>``.

    ``a`` and ``b`` are commuting involutions (basis indices).  With
    ``e_chi`` the primitive idempotents of k<a, b>, the element
    ``J = sum (-1)^(chi_1 psi_2) e_chi (x) e_psi`` is a 2-cocycle and its
    own inverse.
    """
    F = H.field
    A = H.algebra
    d = H.dim
    ea, eb = A.basis(a), A.basis(b)
    one = A.unit
    if A.multiply(ea, ea) != one or A.multiply(eb, eb) != one or A.multiply(ea, eb) != A.multiply(eb, ea):
        raise ValueError("a and b must be commuting involutions")
    ab = A.multiply(ea, eb)
    if ab in (one, ea, eb) or ea == one or eb == one:
        raise ValueError("a and b must generate a Klein four-group")
    group = {(0, 0): one, (1, 0): ea, (0, 1): eb, (1, 1): ab}
    quarter = F.inv(F.from_int(4))
    idems = {}
    for chi in group:
        acc = [F.zero()] * d
        for g, v in group.items():
            sgn = F.from_int((-1) ** (chi[0] * g[0] + chi[1] * g[1]))
            acc = [F.add(x, F.mul(F.mul(quarter, sgn), y)) for x, y in zip(acc, v)]
        idems[chi] = acc
    J = [F.zero()] * (d * d)
    for chi, e1 in idems.items():
        for psi, e2 in idems.items():
            c = F.from_int((-1) ** (chi[0] * psi[1]))
            for i in range(d):
                if e1[i]:
                    for j in range(d):
                        if e2[j]:
                            J[i * d + j] = F.add(J[i * d + j], F.mul(c, F.mul(e1[i], e2[j])))
    return TwistElement(H, J, J)


def bicharacter_twist_c2xc2(field=None) -> tuple[HopfAlgebra, TwistElement]:
    """k[C2 x C2] with its bicharacter twist (``Delta^J = Delta`` here,
    since the algebra is commutative)."""
    from ..linalg.fields import QQ
    from .builders import abelian_group_table, group_algebra

    H = group_algebra(abelian_group_table([2, 2]), field or QQ, name="k[C2xC2]")
    return H, klein_twist(H, 2, 1)


def perturbed_identity_twist(H: HopfAlgebra, seed: int = 0) -> TwistElement:
    """``1 (x) 1 + t a (x) b`` with random ``a, b`` in the kernel of the counit.

    Counit normalization holds by construction; the 2-cocycle identity is
    generically violated.  Resamples only when the element is not invertible.
    """
    import random
    from fractions import Fraction

    F = H.field
    d = H.dim
    rng = random.Random(seed)
    A = H.algebra
    # kernel of eps is spanned by e_i - eps(e_i) 1
    for _ in range(100):
        a = [F.zero()] * d
        b = [F.zero()] * d
        for vec in (a, b):
            for i in range(d):
                c = F.from_int(rng.randint(-2, 2))
                if c:
                    shift = F.mul(c, H.counit[i])
                    vec[i] = F.add(vec[i], c)
                    vec[:] = [F.sub(x, F.mul(shift, u)) for x, u in zip(vec, A.unit)]
        t = F.coerce(Fraction(rng.randint(1, 5), rng.randint(2, 9))) if F.characteristic == 0 else F.from_int(rng.randint(1, 5))
        J = list(H.one_tensor_one())
        for i in range(d):
            for j in range(d):
                if a[i] and b[j]:
                    J[i * d + j] = F.add(J[i * d + j], F.mul(t, F.mul(a[i], b[j])))
        if any(a) and any(b):
            inv = _tensor_inverse(H, J)
            if inv is not None:
                return TwistElement(H, J, inv)
    raise RuntimeError("no invertible perturbation found")
