"""Right modules over a finite-dimensional Hopf algebra.

A module stores one ``dim x dim`` matrix per algebra generator; the action
of every basis element is derived on demand (``x . e_i = rho_i(x)`` on
column vectors, so ``rho_{ab} = rho_b rho_a``).
"""
from __future__ import annotations

from itertools import product
from typing import Optional, Sequence

from ..linalg.fields import Field
from ..linalg.isosearch import find_invertible
from ..linalg.matrix import (
    ExactMatrix,
    complement_basis,
    kernel_basis,
    kernel_matrix,
    kronecker,
    linear_combination,
    rank,
    solve_matrix,
)
from .algebra import HopfAlgebra


class ModuleError(ValueError):
    """Module-law violation, algebra mismatch or non-intertwining map."""


class IsomorphismUndetermined(RuntimeError):
    """The randomized isomorphism search ran out of retries."""


# -- word basis of H in terms of its generators -------------------------------

def _word_basis(H: HopfAlgebra):
    """Words in the generators whose products form a basis of H.

    Returns ``(words, parents, coeffs)``: ``words[t] = words[parents[t]] + (s,)``
    and ``e_i = sum_t coeffs[t][i] * product(words[t])``.
    """
    cached = getattr(H, "_word_basis_cache", None)
    if cached is not None:
        return cached
    A = H.algebra
    F = H.field
    vecs = [A.unit]
    words: list[tuple] = [()]
    parents = [-1]
    frontier = [0]
    span = ExactMatrix(F, [A.unit], H.dim)
    r = 1
    while frontier and r < H.dim:
        nxt = []
        for t in frontier:
            for s in H.generators:
                w = A.multiply(vecs[t], A.basis(s))
                trial = span.vstack(ExactMatrix(F, [w], H.dim, trusted=True))
                if rank(trial) > r:
                    span = trial
                    r += 1
                    vecs.append(w)
                    words.append(words[t] + (s,))
                    parents.append(t)
                    nxt.append(len(vecs) - 1)
        frontier = nxt
    if r < H.dim:
        raise ModuleError(f"generators {H.generators} do not generate the algebra")
    V = ExactMatrix.from_columns(F, vecs, H.dim)
    coeffs = V.inverse()  # column i: e_i in terms of the word products
    out = (words, parents, coeffs)
    H._word_basis_cache = out
    return out


class HModule:
    """Right H-module of finite dimension."""

    def __init__(self, algebra: HopfAlgebra, dim: int, action=None, *, gen_action=None,
                 check: bool = True, name: str = ""):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.name = name
        F = self.field
        if action is None and gen_action is None:
            raise ModuleError("need either action or gen_action")
        self._action: Optional[tuple] = None
        if action is not None:
            if len(action) != algebra.dim:
                raise ModuleError(f"expected {algebra.dim} action matrices, got {len(action)}")
            mats = tuple(a if isinstance(a, ExactMatrix) else ExactMatrix(F, a, dim) for a in action)
            for a in mats:
                if a.shape != (dim, dim) or a.field != F:
                    raise ModuleError("action matrices must be dim x dim over the algebra's field")
            self._action = mats
            self.gen_action = {s: mats[s] for s in algebra.generators}
        else:
            ga = {}
            for s in algebra.generators:
                if s not in gen_action:
                    raise ModuleError(f"no action given for generator {s}")
                a = gen_action[s]
                a = a if isinstance(a, ExactMatrix) else ExactMatrix(F, a, dim)
                if a.shape != (dim, dim):
                    raise ModuleError("action matrices must be dim x dim")
                ga[s] = a
            self.gen_action = ga
        if check:
            verify_module_law(self, raise_on_failure=True)

    @property
    def action(self) -> tuple:
        """Action matrices of every basis element (computed lazily)."""
        if self._action is None:
            self._action = self._derive_action()
        return self._action

    def _derive_action(self) -> tuple:
        H = self.algebra
        F = self.field
        words, parents, coeffs = _word_basis(H)
        mats = [ExactMatrix.identity(F, self.dim)]
        for t in range(1, len(words)):
            mats.append(self.gen_action[words[t][-1]] @ mats[parents[t]])
        d = self.dim
        return tuple(
            linear_combination(F, [(coeffs[t, i], mats[t]) for t in range(len(words))], d, d)
            for i in range(H.dim)
        )

    def rho(self, i: int) -> ExactMatrix:
        if self._action is None and i in self.gen_action:
            return self.gen_action[i]
        return self.action[i]

    def act(self, h: Sequence) -> ExactMatrix:
        """Matrix of ``x -> x . h`` for an algebra element ``h``."""
        acts = self.action
        return linear_combination(self.field, [(c, acts[i]) for i, c in enumerate(h) if c], self.dim, self.dim)

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<HModule{label} dim={self.dim} over {self.algebra!r}>"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "action": {str(s): m.to_json() for s, m in sorted(self.gen_action.items())},
        }


def verify_module_law(M: HModule, raise_on_failure: bool = False) -> Optional[tuple]:
    """Check rho_{e_i e_j} = rho_j rho_i and that 1 acts as the identity.

    Returns ``None`` if the law holds, else the first failing pair.
    """
    H = M.algebra
    acts = M.action
    bad = None
    if not M.act(H.unit).is_identity():
        bad = ("unit",)
    else:
        table = H.algebra._table
        F = M.field
        for i, j in product(range(H.dim), repeat=2):
            lhs = linear_combination(F, [(c, acts[k]) for k, c in table[i][j].items()], M.dim, M.dim)
            if lhs != acts[j] @ acts[i]:
                bad = (i, j)
                break
    if bad is not None and raise_on_failure:
        raise ModuleError(f"right-module law fails at {bad}")
    return bad


class ModuleHom:
    """An H-linear map; ``matrix`` is ``target.dim x source.dim``."""

    def __init__(self, source: HModule, target: HModule, matrix: ExactMatrix, *, check: bool = True):
        if source.algebra is not target.algebra and not source.algebra.structure_equal(target.algebra):
            raise ModuleError("module map between modules over different algebras")
        if matrix.shape != (target.dim, source.dim):
            raise ModuleError(f"matrix shape {matrix.shape} != {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not intertwines(source, target, matrix):
            raise ModuleError("matrix does not intertwine the actions")

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ModuleError("non-composable module maps")
        return ModuleHom(other.source, self.target, self.matrix @ other.matrix, check=False)

    def is_invertible(self) -> bool:
        return self.source.dim == self.target.dim and rank(self.matrix) == self.source.dim

    def __repr__(self):
        return f"<ModuleHom {self.source.dim} -> {self.target.dim}>"


def intertwines(M: HModule, N: HModule, T: ExactMatrix) -> bool:
    return all(T @ M.rho(s) == N.rho(s) @ T for s in M.algebra.generators)


def _same_algebra(M: HModule, N: HModule) -> None:
    if M.algebra is not N.algebra and not M.algebra.structure_equal(N.algebra):
        raise ModuleError("modules over different algebras")


# -- constructions -----------------------------------------------------------

def trivial_module(H: HopfAlgebra) -> HModule:
    """The unit object: the ground field with h acting by eps(h)."""
    F = H.field
    return HModule(H, 1, [ExactMatrix(F, [[H.counit[i]]], 1) for i in range(H.dim)], check=False, name="trivial")


def zero_module(H: HopfAlgebra) -> HModule:
    F = H.field
    return HModule(H, 0, [ExactMatrix.zeros(F, 0, 0)] * H.dim, check=False, name="zero")


def regular_module(H: HopfAlgebra) -> HModule:
    """H acting on itself by right multiplication."""
    A = H.algebra
    F = H.field
    mats = []
    for i in range(H.dim):
        cols = [A.multiply(A.basis(j), A.basis(i)) for j in range(H.dim)]
        mats.append(ExactMatrix.from_columns(F, cols, H.dim))
    return HModule(H, H.dim, mats, check=False, name="regular")


def module_from_generators(H: HopfAlgebra, gen_action: dict, *, name: str = "", check: bool = True) -> HModule:
    dims = {m.nrows if isinstance(m, ExactMatrix) else len(m) for m in gen_action.values()}
    if len(dims) != 1:
        raise ModuleError("generator matrices have different sizes")
    return HModule(H, dims.pop(), gen_action=gen_action, name=name, check=check)


def direct_sum_modules(mods: Sequence[HModule]) -> HModule:
    if not mods:
        raise ModuleError("empty direct sum")
    H = mods[0].algebra
    F = H.field
    for m in mods[1:]:
        _same_algebra(mods[0], m)
    ga = {s: ExactMatrix.block_diag(F, [m.rho(s) for m in mods]) for s in H.generators}
    return HModule(H, sum(m.dim for m in mods), gen_action=ga, check=False)


def tensor_module(M: HModule, N: HModule) -> HModule:
    """``M (x) N`` with ``(m (x) n) . h = sum m . h1 (x) n . h2``."""
    _same_algebra(M, N)
    H = M.algebra
    F = H.field
    d = M.dim * N.dim
    ga = {}
    for s in H.generators:
        terms = [(c, kronecker(M.rho(j), N.rho(k))) for (j, k), c in H.delta_terms(s).items()]
        ga[s] = linear_combination(F, terms, d, d)
    return HModule(H, d, gen_action=ga, check=False)


def tensor_hom(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    return ModuleHom(tensor_module(f.source, g.source), tensor_module(f.target, g.target),
                     kronecker(f.matrix, g.matrix), check=False)


def _dual_action(M: HModule, S: ExactMatrix) -> dict:
    H = M.algebra
    ga = {}
    for s in H.generators:
        ga[s] = M.act(S.column(s)).T
    return ga


def _ev_row(F: Field, d: int) -> ExactMatrix:
    z, o = F.zero(), F.one()
    return ExactMatrix(F, [tuple(o if a == b else z for a in range(d) for b in range(d))], d * d, trusted=True)


def _coev_col(F: Field, d: int) -> ExactMatrix:
    return _ev_row(F, d).T


def left_dual_module(M: HModule) -> tuple[HModule, ModuleHom, ModuleHom]:
    """``(M*, ev: M* (x) M -> k, coev: k -> M (x) M*)``.

    The action on M* is ``(f . h)(x) = f(x . S^-1(h))``; with ev on the
    left this is the orientation for which ev and coev are H-linear.
    """
    H = M.algebra
    F = H.field
    d = M.dim
    D = HModule(H, d, gen_action=_dual_action(M, H.antipode_inverse), check=False, name="left-dual")
    one = trivial_module(H)
    ev = ModuleHom(tensor_module(D, M), one, _ev_row(F, d), check=False)
    coev = ModuleHom(one, tensor_module(M, D), _coev_col(F, d), check=False)
    return D, ev, coev


def right_dual_module(M: HModule) -> tuple[HModule, ModuleHom, ModuleHom]:
    """``(*M, ev': M (x) *M -> k, coev': k -> *M (x) M)`` with
    ``(f . h)(x) = f(x . S(h))``."""
    H = M.algebra
    F = H.field
    d = M.dim
    D = HModule(H, d, gen_action=_dual_action(M, H.antipode), check=False, name="right-dual")
    one = trivial_module(H)
    ev = ModuleHom(tensor_module(M, D), one, _ev_row(F, d), check=False)
    coev = ModuleHom(one, tensor_module(D, M), _coev_col(F, d), check=False)
    return D, ev, coev


def zigzag_left(M: HModule, ev: ModuleHom, coev: ModuleHom) -> tuple[bool, bool]:
    """``(id_M (x) ev)(coev (x) id_M) = id_M`` and
    ``(ev (x) id_M*)(id_M* (x) coev) = id_M*``."""
    F = M.field
    d = M.dim
    I = ExactMatrix.identity(F, d)
    first = kronecker(I, ev.matrix) @ kronecker(coev.matrix, I)
    second = kronecker(ev.matrix, I) @ kronecker(I, coev.matrix)
    return first.is_identity(), second.is_identity()


def zigzag_right(M: HModule, ev: ModuleHom, coev: ModuleHom) -> tuple[bool, bool]:
    """``(ev' (x) id_M)(id_M (x) coev') = id_M`` and
    ``(id_*M (x) ev')(coev' (x) id_*M) = id_*M``."""
    F = M.field
    d = M.dim
    I = ExactMatrix.identity(F, d)
    first = kronecker(ev.matrix, I) @ kronecker(I, coev.matrix)
    second = kronecker(I, ev.matrix) @ kronecker(coev.matrix, I)
    return first.is_identity(), second.is_identity()


def submodule(M: HModule, basis: ExactMatrix) -> tuple[HModule, ModuleHom]:
    """Submodule spanned by the (independent, invariant) columns of ``basis``."""
    F = M.field
    k = basis.ncols
    ga = {}
    for s in M.algebra.generators:
        x = solve_matrix(basis, M.rho(s) @ basis) if k else ExactMatrix.zeros(F, 0, 0)
        if x is None:
            raise ModuleError("subspace is not invariant")
        ga[s] = x
    S = HModule(M.algebra, k, gen_action=ga, check=False)
    return S, ModuleHom(S, M, basis, check=False)


def quotient_module(M: HModule, basis: ExactMatrix) -> tuple[HModule, ModuleHom, ExactMatrix]:
    """``M / span(basis)`` with the projection and a linear section."""
    C = complement_basis(basis)
    full = basis.hstack(C)
    inv = full.inverse()
    P = inv.submatrix(range(basis.ncols, M.dim), range(M.dim))
    q = C.ncols
    ga = {s: P @ M.rho(s) @ C for s in M.algebra.generators}
    Q = HModule(M.algebra, q, gen_action=ga, check=False)
    return Q, ModuleHom(M, Q, P, check=False), C


def kernel_of(f: ModuleHom) -> tuple[HModule, ModuleHom]:
    return submodule(f.source, kernel_matrix(f.matrix))


def cokernel_of(f: ModuleHom) -> tuple[HModule, ModuleHom]:
    from ..linalg.matrix import column_basis

    Q, proj, _ = quotient_module(f.target, column_basis(f.matrix))
    return Q, proj


# -- Hom spaces and isomorphism --------------------------------------------------

def hom_space(M: HModule, N: HModule) -> list[ModuleHom]:
    """Basis of Hom_H(M, N)."""
    _same_algebra(M, N)
    F = M.field
    dm, dn = M.dim, N.dim
    nvar = dm * dn
    if nvar == 0:
        return []
    rows = []
    z = F.zero()
    for s in M.algebra.generators:
        A = M.rho(s).rows
        B = N.rho(s).rows
        # (T A - B T)[i][j] with T[a][b] at index a * dm + b
        for i in range(dn):
            for j in range(dm):
                row = [z] * nvar
                for b in range(dm):
                    c = A[b][j]
                    if c:
                        row[i * dm + b] = F.add(row[i * dm + b], c)
                for a in range(dn):
                    c = B[i][a]
                    if c:
                        row[a * dm + j] = F.sub(row[a * dm + j], c)
                if any(row):
                    rows.append(row)
    if not rows:
        basis = [tuple(F.one() if t == v else z for t in range(nvar)) for v in range(nvar)]
    else:
        basis = kernel_basis(ExactMatrix(F, rows, nvar, trusted=True))
    out = []
    for v in basis:
        T = ExactMatrix(F, [v[a * dm:(a + 1) * dm] for a in range(dn)], dm, trusted=True)
        out.append(ModuleHom(M, N, T, check=False))
    return out


def iso_search(M: HModule, N: HModule, *, seed: int = 0) -> tuple[Optional[bool], Optional[ModuleHom], str]:
    """Three-valued isomorphism test.

    Returns ``(verdict, witness, reason)`` with verdict True (witness is an
    invertible intertwiner), False (definitive) or None (search exhausted).
    """
    _same_algebra(M, N)
    if M.dim != N.dim:
        return False, None, "dimension mismatch"
    basis = [T.matrix for T in hom_space(M, N)]
    verdict, T, reason = find_invertible(M.field, basis, M.dim, seed=seed)
    witness = ModuleHom(M, N, T, check=False) if verdict else None
    return verdict, witness, reason


def is_isomorphic(M: HModule, N: HModule, *, seed: int = 0) -> Optional[ModuleHom]:
    """Invertible intertwiner ``M -> N`` or ``None`` (definitive).

    Raises :class:`IsomorphismUndetermined` when the search is inconclusive.
    """
    verdict, witness, reason = iso_search(M, N, seed=seed)
    if verdict is None:
        raise IsomorphismUndetermined(reason)
    return witness


def change_basis(M: HModule, P: ExactMatrix) -> HModule:
    """Same module in the basis given by the columns of invertible ``P``."""
    Pinv = P.inverse()
    return HModule(M.algebra, M.dim, gen_action={s: Pinv @ a @ P for s, a in M.gen_action.items()}, check=False)
