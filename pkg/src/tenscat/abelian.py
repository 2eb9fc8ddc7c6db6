"""Finitely generated abelian groups given by presentations.

A group ``Z^m / <columns of R>`` is stored as its presentation and never
enumerated.  Homomorphisms are integer matrices on generators; all kernel
and cokernel constructions go through Smith normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .linalg.intmat import (
    IntMatrix,
    block_int,
    int_kernel,
    int_lattice_basis,
    kron_int,
    rational_solve,
    smith_normal_form,
)


class GroupHomError(ValueError):
    """Ill-defined or incompatible homomorphism."""


@dataclass(frozen=True)
class FgAbelianGroup:
    ngens: int
    relations: IntMatrix = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        rel = self.relations
        if rel is None:
            rel = IntMatrix.zeros(self.ngens, 0)
            object.__setattr__(self, "relations", rel)
        if rel.nrows != self.ngens:
            raise ValueError(f"relation matrix has {rel.nrows} rows for {self.ngens} generators")

    @classmethod
    def free(cls, rank: int) -> "FgAbelianGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, n: int) -> "FgAbelianGroup":
        """Z/n (n = 0 gives Z)."""
        if n == 0:
            return cls(1)
        return cls(1, IntMatrix([[n]]))

    @classmethod
    def from_factors(cls, factors: Sequence[int]) -> "FgAbelianGroup":
        g = cls.zero()
        for d in factors:
            g = direct_sum([g, cls.cyclic(d)])
        return g

    @classmethod
    def zero(cls) -> "FgAbelianGroup":
        return cls(0, IntMatrix.zeros(0, 0))

    def invariant_factors(self) -> list[int]:
        return invariant_factors(self)

    def is_trivial(self) -> bool:
        return not invariant_factors(self)

    def __repr__(self):
        return f"FgAbelianGroup({_describe(invariant_factors(self))})"


def _describe(factors: Sequence[int]) -> str:
    if not factors:
        return "0"
    return " + ".join("Z" if d == 0 else f"Z/{d}" for d in factors)


def describe(A: FgAbelianGroup) -> str:
    return _describe(invariant_factors(A))


def invariant_factors(A: FgAbelianGroup) -> list[int]:
    """Canonical invariant factors d1 | d2 | ... with 0 standing for a copy of Z.

    Units are dropped; the free part comes last.
    """
    R = A.relations
    if A.ngens == 0:
        return []
    _, d, _ = smith_normal_form(R)
    diag = [d[i, i] for i in range(min(d.shape)) if d[i, i]]
    torsion = [x for x in diag if x != 1]
    return torsion + [0] * (A.ngens - len(diag))


def lattice_solve(R: IntMatrix, c: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Integer ``y`` with ``R y = c``, or ``None`` if ``c`` is not in the lattice."""
    if R.ncols == 0:
        return () if not any(c) else None
    U, D, V = smith_normal_form(R)
    uc = U.apply(c)
    y = [0] * R.ncols
    for i, x in enumerate(uc):
        di = D[i, i] if i < min(D.shape) else 0
        if di:
            if x % di:
                return None
            y[i] = x // di
        elif x:
            return None
    return V.apply(y)


class _LatticeSolver:
    """Repeated membership tests against one lattice (one SNF)."""

    def __init__(self, R: IntMatrix):
        self.R = R
        self.U, self.D, self.V = smith_normal_form(R) if R.ncols else (None, None, None)

    def solve(self, c):
        R = self.R
        if R.ncols == 0:
            return () if not any(c) else None
        uc = self.U.apply(c)
        D = self.D
        y = [0] * R.ncols
        k = min(D.shape)
        for i, x in enumerate(uc):
            di = D[i, i] if i < k else 0
            if di:
                if x % di:
                    return None
                y[i] = x // di
            elif x:
                return None
        return self.V.apply(y)

    def contains(self, c) -> bool:
        return self.solve(c) is not None


@dataclass(frozen=True)
class GroupHom:
    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        M = self.matrix
        if M.shape != (self.target.ngens, self.source.ngens):
            raise GroupHomError(
                f"matrix shape {M.shape} does not match {self.target.ngens}x{self.source.ngens}"
            )
        if self.check:
            images = M @ self.source.relations
            solver = _LatticeSolver(self.target.relations)
            for j, col in enumerate(images.columns()):
                if not solver.contains(col):
                    raise GroupHomError(f"source relation {j} is not sent into the target relations")

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        return compose(self, other)


def identity(A: FgAbelianGroup) -> GroupHom:
    return GroupHom(A, A, IntMatrix.identity(A.ngens), check=False)


def zero_hom(A: FgAbelianGroup, B: FgAbelianGroup) -> GroupHom:
    return GroupHom(A, B, IntMatrix.zeros(B.ngens, A.ngens), check=False)


def compose(g: GroupHom, f: GroupHom) -> GroupHom:
    """``g o f``."""
    if f.target != g.source:
        raise GroupHomError("composition of non-composable homomorphisms")
    return GroupHom(f.source, g.target, g.matrix @ f.matrix, check=False)


def add_homs(f: GroupHom, g: GroupHom) -> GroupHom:
    if f.source != g.source or f.target != g.target:
        raise GroupHomError("sum of homomorphisms with different endpoints")
    return GroupHom(f.source, f.target, f.matrix + g.matrix, check=False)


def scale_hom(f: GroupHom, k: int) -> GroupHom:
    return GroupHom(f.source, f.target, f.matrix.scale(k), check=False)


def is_zero_hom(f: GroupHom) -> bool:
    solver = _LatticeSolver(f.target.relations)
    return all(solver.contains(c) for c in f.matrix.columns())


def homs_equal(f: GroupHom, g: GroupHom) -> bool:
    if f.source != g.source or f.target != g.target:
        return False
    return is_zero_hom(GroupHom(f.source, f.target, f.matrix - g.matrix, check=False))


def direct_sum(groups: Sequence[FgAbelianGroup]) -> FgAbelianGroup:
    groups = list(groups)
    if not groups:
        return FgAbelianGroup.zero()
    m = sum(g.ngens for g in groups)
    r = sum(g.relations.ncols for g in groups)
    blocks = [[g.relations if i == j else None for j, g in enumerate(groups)] for i, _ in enumerate(groups)]
    rel = block_int([g.ngens for g in groups], [g.relations.ncols for g in groups], blocks)
    return FgAbelianGroup(m, rel if r else IntMatrix.zeros(m, 0))


def tensor_groups(A: FgAbelianGroup, B: FgAbelianGroup) -> FgAbelianGroup:
    """A (x)_Z B on generators e_i (x) f_j (index i * m_B + j)."""
    ma, mb = A.ngens, B.ngens
    left = kron_int(A.relations, IntMatrix.identity(mb))
    right = kron_int(IntMatrix.identity(ma), B.relations)
    rel = left.hstack(right)
    return FgAbelianGroup(ma * mb, rel)


def tensor_homs(f: GroupHom, g: GroupHom) -> GroupHom:
    return GroupHom(
        tensor_groups(f.source, g.source),
        tensor_groups(f.target, g.target),
        kron_int(f.matrix, g.matrix),
        check=False,
    )


def kernel(f: GroupHom) -> tuple[FgAbelianGroup, GroupHom]:
    """Kernel of ``f`` with its inclusion into ``f.source``."""
    A, B = f.source, f.target
    m = A.ngens
    if m == 0:
        K = FgAbelianGroup.zero()
        return K, GroupHom(K, A, IntMatrix.zeros(0, 0), check=False)
    # x with F x in <R_B>: kernel of [F | R_B], projected to the x-part
    big = f.matrix.hstack(B.relations)
    ker = int_kernel(big)
    xs = ker.submatrix(range(m), range(ker.ncols))
    L = int_lattice_basis(xs)
    s = L.ncols
    rel = rational_solve(L, A.relations) if A.relations.ncols else IntMatrix.zeros(s, 0)
    if rel is None:
        raise AssertionError("source relations escape the kernel lattice")
    K = FgAbelianGroup(s, rel)
    return K, GroupHom(K, A, L, check=False)


def cokernel(f: GroupHom) -> tuple[FgAbelianGroup, GroupHom]:
    """Cokernel of ``f`` with its projection from ``f.target``."""
    B = f.target
    C = FgAbelianGroup(B.ngens, B.relations.hstack(f.matrix))
    return C, GroupHom(B, C, IntMatrix.identity(B.ngens), check=False)


def image(f: GroupHom) -> tuple[FgAbelianGroup, GroupHom]:
    K, incl = kernel(cokernel(f)[1])
    return K, incl


def lift(mono: GroupHom, g: GroupHom) -> GroupHom:
    """``h`` with ``mono o h = g``; requires ``g`` to land in the image of ``mono``."""
    if mono.target != g.target:
        raise GroupHomError("lift: codomains differ")
    T = mono.target
    big = mono.matrix.hstack(T.relations)
    solver = _LatticeSolver(big)
    k = mono.source.ngens
    cols = []
    for j, c in enumerate(g.matrix.columns()):
        y = solver.solve(c)
        if y is None:
            raise GroupHomError(f"lift: generator {j} is not in the image")
        cols.append(y[:k])
    return GroupHom(g.source, mono.source, IntMatrix.from_columns(cols, k), check=False)


def descend(epi: GroupHom, g: GroupHom) -> GroupHom:
    """``h`` with ``h o epi = g``; requires ``g`` to vanish on the kernel of ``epi``."""
    if epi.source != g.source:
        raise GroupHomError("descend: domains differ")
    C = epi.target
    big = epi.matrix.hstack(C.relations)
    solver = _LatticeSolver(big)
    n = epi.source.ngens
    sec = []
    for j in range(C.ngens):
        e = [0] * C.ngens
        e[j] = 1
        y = solver.solve(e)
        if y is None:
            raise GroupHomError("descend: map is not surjective")
        sec.append(y[:n])
    S = IntMatrix.from_columns(sec, n)
    return GroupHom(C, g.target, g.matrix @ S)


def is_injective(f: GroupHom) -> bool:
    return kernel(f)[0].is_trivial()


def is_surjective(f: GroupHom) -> bool:
    return cokernel(f)[0].is_trivial()


def is_iso(f: GroupHom) -> bool:
    return is_injective(f) and is_surjective(f)


def are_isomorphic(A: FgAbelianGroup, B: FgAbelianGroup) -> bool:
    return invariant_factors(A) == invariant_factors(B)


def homology_at(d_in: GroupHom, d_out: GroupHom) -> FgAbelianGroup:
    """``ker(d_out) / im(d_in)``."""
    if d_in.target != d_out.source:
        raise GroupHomError("homology_at: d_in and d_out are not composable")
    if not is_zero_hom(compose(d_out, d_in)):
        raise GroupHomError("homology_at: d_out o d_in is not zero")
    K, incl = kernel(d_out)
    h = lift(incl, d_in)
    H, _ = cokernel(h)
    return H


def multiplication(A: FgAbelianGroup, k: int) -> GroupHom:
    return GroupHom(A, A, IntMatrix.identity(A.ngens).scale(k), check=False)


def cyclic_tensor_factors(a: int, b: int) -> list[int]:
    """Reference value for Z/a (x) Z/b."""
    g = gcd(a, b)
    return [] if g == 1 else [g]
