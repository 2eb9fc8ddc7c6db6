"""Abelian monoidal backends for complexes.

A backend bundles the operations complexes need on objects and morphisms
of one category: zero object, finite direct sums with block morphisms,
tensor products, kernels and cokernels with the universal maps ``lift``
and ``descend``, and an isomorphism test.  Three backends are provided:
right modules over a Hopf algebra, representations of a quiver, and
finitely generated abelian groups.
"""
from __future__ import annotations

import random
from typing import Optional, Sequence

from .. import abelian as ab
from ..abelian import FgAbelianGroup, GroupHom
from ..hopf.algebra import HopfAlgebra
from ..hopf.modules import (
    HModule,
    ModuleHom,
    cokernel_of,
    direct_sum_modules,
    hom_space,
    iso_search,
    kernel_of,
    left_dual_module,
    module_from_generators,
    regular_module,
    right_dual_module,
    tensor_module,
    trivial_module,
    zero_module,
)
from ..linalg.fields import Field
from ..linalg.intmat import IntMatrix, block_int
from ..linalg.matrix import ExactMatrix, kronecker, linear_combination, rank, solve_matrix
from ..quiver import (
    Quiver,
    RepHom,
    a2_indecomposables,
    direct_sum_reps,
    rep_cokernel,
    rep_hom_space,
    rep_iso_search,
    rep_kernel,
    tensor_rep,
    tensor_rep_hom,
    unit_rep,
    zero_rep,
)


class BackendError(ValueError):
    """Operation unsupported by, or inconsistent with, the backend."""


class NotRigidError(BackendError):
    """Duals requested from a backend without them."""


class Backend:
    """Interface shared by all backends; see the module docstring."""

    name = "abstract"
    rigid = False
    over_field = True

    # objects
    def zero(self):
        raise NotImplementedError

    def unit(self):
        raise NotImplementedError

    def is_zero(self, A) -> bool:
        raise NotImplementedError

    def direct_sum(self, objs: Sequence):
        raise NotImplementedError

    def tensor(self, A, B):
        raise NotImplementedError

    def describe(self, A):
        """JSON-friendly size data (dimensions or invariant factors)."""
        raise NotImplementedError

    def dim(self, A) -> Optional[int]:
        return None

    # morphisms
    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, A):
        raise NotImplementedError

    def zero_mor(self, A, B):
        raise NotImplementedError

    def compose(self, g, f):
        """``g o f``."""
        raise NotImplementedError

    def add(self, f, g):
        raise NotImplementedError

    def scale(self, f, c: int):
        raise NotImplementedError

    def is_zero_mor(self, f) -> bool:
        raise NotImplementedError

    def mor_equal(self, f, g) -> bool:
        return self.is_zero_mor(self.add(f, self.scale(g, -1)))

    def block_mor(self, S, T, srcs: Sequence, tgts: Sequence, blocks: dict):
        """Morphism ``S = (+) srcs -> T = (+) tgts`` with ``blocks[(r, c)]``
        the component ``srcs[c] -> tgts[r]`` (missing means zero)."""
        raise NotImplementedError

    def tensor_mor(self, f, g):
        raise NotImplementedError

    def kernel(self, f):
        """``(K, incl)``."""
        raise NotImplementedError

    def cokernel(self, f):
        """``(C, proj)``."""
        raise NotImplementedError

    def lift(self, mono, g):
        """``h`` with ``mono o h = g``."""
        raise NotImplementedError

    def descend(self, epi, g):
        """``h`` with ``h o epi = g``."""
        raise NotImplementedError

    def is_iso_mor(self, f) -> bool:
        raise NotImplementedError

    def iso_search(self, A, B, *, seed: int = 0) -> tuple[Optional[bool], object, str]:
        raise NotImplementedError

    def mor_matrix(self, f) -> ExactMatrix:
        """Underlying linear map (field backends only)."""
        raise BackendError(f"{self.name} has no underlying matrices")

    def fiber_dims(self, A) -> list[int]:
        """Dimensions of the vector spaces an object is built from."""
        raise BackendError(f"{self.name} has no underlying vector spaces")

    def fiber_matrices(self, f) -> list[ExactMatrix]:
        """One matrix per fiber, matching ``fiber_dims``."""
        raise BackendError(f"{self.name} has no underlying vector spaces")

    # duals
    def left_dual(self, A):
        raise NotRigidError(f"{self.name} backend has no duals")

    def right_dual(self, A):
        raise NotRigidError(f"{self.name} backend has no duals")

    # sampling
    def catalog(self) -> list:
        raise NotImplementedError

    def random_object(self, rng: random.Random, max_dim: int = 4):
        """Direct sum of catalog objects of total size at most ``max_dim``."""
        cat = [c for c in self.catalog() if self._size(c) <= max_dim]
        parts = []
        budget = max_dim
        for _ in range(rng.randint(1, 2)):
            opts = [c for c in cat if self._size(c) <= budget]
            if not opts:
                break
            c = rng.choice(opts)
            parts.append(c)
            budget -= self._size(c)
        return parts[0] if len(parts) == 1 else self.direct_sum(parts)

    def _size(self, A) -> int:
        return self.dim(A)

    def random_mor(self, A, B, rng: random.Random):
        raise NotImplementedError

    def obj_to_json(self, A):
        return A.to_json()


# -- modules over a Hopf algebra ------------------------------------------------

def uniserial_taft_module(H: HopfAlgebra, a: int, length: int) -> HModule:
    """``V(a, l)``: basis v_0..v_{l-1}, ``v_k . g = q^(a+k) v_k``,
    ``v_k . x = v_(k+1)`` (and ``v_(l-1) . x = 0``)."""
    n = H.taft_n
    q = H.taft_q
    F = H.field
    if not 1 <= length <= n:
        raise BackendError(f"uniserial length must lie in 1..{n}")
    g, x = H.generators
    z = F.zero()
    G = [[F.power(q, (a + k) % n) if i == k else z for k in range(length)] for i in range(length)]
    X = [[F.one() if i == k + 1 else z for k in range(length)] for i in range(length)]
    return module_from_generators(H, {g: G, x: X}, name=f"V({a},{length})")


def group_characters(H: HopfAlgebra) -> list[HModule]:
    """One-dimensional modules with generators acting by +-1."""
    from itertools import product as iproduct

    from ..hopf.modules import ModuleError

    F = H.field
    out = []
    for signs in iproduct((1, -1), repeat=len(H.generators)):
        if F.characteristic == 2 and -1 in signs:
            continue
        ga = {s: [[F.from_int(e)]] for s, e in zip(H.generators, signs)}
        try:
            out.append(module_from_generators(H, ga, name="chi" + "".join("+" if e > 0 else "-" for e in signs)))
        except ModuleError:
            continue
    return out


class HModuleBackend(Backend):
    rigid = True

    def __init__(self, H: HopfAlgebra):
        self.H = H
        self.field = H.field
        self.name = f"mod-{H.name or 'H'}"
        self._unit = trivial_module(H)
        self._zero = zero_module(H)
        self._catalog = None

    def zero(self):
        return self._zero

    def unit(self):
        return self._unit

    def is_zero(self, A) -> bool:
        return A.dim == 0

    def dim(self, A) -> int:
        return A.dim

    def describe(self, A):
        return {"dim": A.dim}

    def direct_sum(self, objs):
        objs = [o for o in objs]
        if not objs:
            return self._zero
        if len(objs) == 1:
            return objs[0]
        return direct_sum_modules(objs)

    def tensor(self, A, B):
        return tensor_module(A, B)

    def identity(self, A):
        return ModuleHom(A, A, ExactMatrix.identity(self.field, A.dim), check=False)

    def zero_mor(self, A, B):
        return ModuleHom(A, B, ExactMatrix.zeros(self.field, B.dim, A.dim), check=False)

    def compose(self, g, f):
        return ModuleHom(f.source, g.target, g.matrix @ f.matrix, check=False)

    def add(self, f, g):
        return ModuleHom(f.source, f.target, f.matrix + g.matrix, check=False)

    def scale(self, f, c):
        return ModuleHom(f.source, f.target, f.matrix.scale(c), check=False)

    def is_zero_mor(self, f):
        return f.matrix.is_zero()

    def mor_equal(self, f, g):
        return f.matrix == g.matrix

    def block_mor(self, S, T, srcs, tgts, blocks):
        grid = [[blocks[(r, c)].matrix if (r, c) in blocks else None for c in range(len(srcs))]
                for r in range(len(tgts))]
        M = ExactMatrix.block(self.field, [t.dim for t in tgts], [s.dim for s in srcs], grid)
        return ModuleHom(S, T, M, check=False)

    def tensor_mor(self, f, g):
        return ModuleHom(tensor_module(f.source, g.source), tensor_module(f.target, g.target),
                         kronecker(f.matrix, g.matrix), check=False)

    def kernel(self, f):
        return kernel_of(f)

    def cokernel(self, f):
        return cokernel_of(f)

    def lift(self, mono, g):
        if mono.source.dim == 0:
            return self.zero_mor(g.source, mono.source)
        X = solve_matrix(mono.matrix, g.matrix)
        if X is None:
            raise BackendError("lift: map does not factor through the monomorphism")
        return ModuleHom(g.source, mono.source, X, check=False)

    def descend(self, epi, g):
        if epi.target.dim == 0:
            if not g.matrix.is_zero():
                raise BackendError("descend: map does not vanish on the kernel")
            return self.zero_mor(epi.target, g.target)
        X = solve_matrix(epi.matrix.T, g.matrix.T) if g.target.dim else ExactMatrix.zeros(self.field, epi.target.dim, 0)
        if X is None:
            raise BackendError("descend: map does not vanish on the kernel")
        return ModuleHom(epi.target, g.target, X.T, check=False)

    def is_iso_mor(self, f):
        return f.source.dim == f.target.dim and rank(f.matrix) == f.source.dim

    def iso_search(self, A, B, *, seed=0):
        return iso_search(A, B, seed=seed)

    def mor_matrix(self, f):
        return f.matrix

    def fiber_dims(self, A):
        return [A.dim]

    def fiber_matrices(self, f):
        return [f.matrix]

    def left_dual(self, A):
        return left_dual_module(A)

    def right_dual(self, A):
        return right_dual_module(A)

    def catalog(self):
        if self._catalog is None:
            H = self.H
            cat = []
            if hasattr(H, "taft_n"):
                n = H.taft_n
                cat = [uniserial_taft_module(H, a, l) for l in range(1, n + 1) for a in range(n)]
            else:
                cat = group_characters(H) or [self._unit]
                if H.dim <= 4:
                    cat.append(regular_module(H))
            self._catalog = cat
        return self._catalog

    def random_mor(self, A, B, rng):
        basis = hom_space(A, B)
        F = self.field
        terms = [(F.from_int(rng.randint(-2, 2)), h.matrix) for h in basis]
        return ModuleHom(A, B, linear_combination(F, terms, B.dim, A.dim), check=False)


# -- quiver representations --------------------------------------------------------

class QuiverBackend(Backend):
    def __init__(self, quiver: Quiver, field: Field, catalog: Optional[list] = None, name: str = ""):
        self.quiver = quiver
        self.field = field
        self.name = name or f"rep-Q{quiver.num_vertices}"
        self._unit = unit_rep(quiver, field)
        self._zero = zero_rep(quiver, field)
        self._catalog = catalog

    def zero(self):
        return self._zero

    def unit(self):
        return self._unit

    def is_zero(self, A):
        return A.is_zero()

    def dim(self, A):
        return A.total_dim

    def describe(self, A):
        return {"dims": list(A.dims)}

    def direct_sum(self, objs):
        objs = list(objs)
        if not objs:
            return self._zero
        if len(objs) == 1:
            return objs[0]
        return direct_sum_reps(objs)

    def tensor(self, A, B):
        return tensor_rep(A, B)

    def identity(self, A):
        return RepHom(A, A, [ExactMatrix.identity(self.field, d) for d in A.dims], check=False)

    def zero_mor(self, A, B):
        return RepHom(A, B, [ExactMatrix.zeros(self.field, b, a) for a, b in zip(A.dims, B.dims)], check=False)

    def compose(self, g, f):
        return RepHom(f.source, g.target, [a @ b for a, b in zip(g.components, f.components)], check=False)

    def add(self, f, g):
        return RepHom(f.source, f.target, [a + b for a, b in zip(f.components, g.components)], check=False)

    def scale(self, f, c):
        return RepHom(f.source, f.target, [a.scale(c) for a in f.components], check=False)

    def is_zero_mor(self, f):
        return f.is_zero()

    def mor_equal(self, f, g):
        return f.components == g.components

    def block_mor(self, S, T, srcs, tgts, blocks):
        comps = []
        for v in range(self.quiver.num_vertices):
            grid = [[blocks[(r, c)].components[v] if (r, c) in blocks else None for c in range(len(srcs))]
                    for r in range(len(tgts))]
            comps.append(ExactMatrix.block(self.field, [t.dims[v] for t in tgts], [s.dims[v] for s in srcs], grid))
        return RepHom(S, T, comps, check=False)

    def tensor_mor(self, f, g):
        return tensor_rep_hom(f, g)

    def kernel(self, f):
        return rep_kernel(f)

    def cokernel(self, f):
        return rep_cokernel(f)

    def lift(self, mono, g):
        comps = []
        for m, c, a, b in zip(mono.components, g.components, g.source.dims, mono.source.dims):
            if b == 0:
                comps.append(ExactMatrix.zeros(self.field, 0, a))
                continue
            X = solve_matrix(m, c)
            if X is None:
                raise BackendError("lift: map does not factor through the monomorphism")
            comps.append(X)
        return RepHom(g.source, mono.source, comps, check=False)

    def descend(self, epi, g):
        comps = []
        for e, c, a, b in zip(epi.components, g.components, epi.target.dims, g.target.dims):
            if a == 0 or b == 0:
                if a == 0 and not c.is_zero():
                    raise BackendError("descend: map does not vanish on the kernel")
                comps.append(ExactMatrix.zeros(self.field, b, a))
                continue
            X = solve_matrix(e.T, c.T)
            if X is None:
                raise BackendError("descend: map does not vanish on the kernel")
            comps.append(X.T)
        return RepHom(epi.target, g.target, comps, check=False)

    def is_iso_mor(self, f):
        return f.source.dims == f.target.dims and all(rank(c) == c.nrows for c in f.components)

    def iso_search(self, A, B, *, seed=0):
        return rep_iso_search(A, B, seed=seed)

    def mor_matrix(self, f):
        return f.block_matrix()

    def fiber_dims(self, A):
        return list(A.dims)

    def fiber_matrices(self, f):
        return list(f.components)

    def catalog(self):
        if self._catalog is None:
            if self.quiver.num_vertices == 2 and self.quiver.arrows == ((0, 1),):
                self._catalog = list(a2_indecomposables(self.field).values())
            else:
                self._catalog = [self._unit]
        return self._catalog

    def random_mor(self, A, B, rng):
        basis = rep_hom_space(A, B)
        F = self.field
        out = self.zero_mor(A, B)
        for h in basis:
            c = rng.randint(-2, 2)
            if c:
                out = self.add(out, self.scale(h, F.from_int(c)))
        return out


# -- finitely generated abelian groups ---------------------------------------------

class IntegerBackend(Backend):
    """Finitely generated abelian groups; tensor over Z is not exact."""

    name = "mod-Z"
    over_field = False

    def zero(self):
        return FgAbelianGroup.zero()

    def unit(self):
        return FgAbelianGroup.free(1)

    def is_zero(self, A):
        return A.is_trivial()

    def describe(self, A):
        return {"invariant_factors": ab.invariant_factors(A)}

    def _size(self, A):
        return A.ngens

    def direct_sum(self, objs):
        objs = list(objs)
        if len(objs) == 1:
            return objs[0]
        return ab.direct_sum(objs)

    def tensor(self, A, B):
        return ab.tensor_groups(A, B)

    def identity(self, A):
        return ab.identity(A)

    def zero_mor(self, A, B):
        return ab.zero_hom(A, B)

    def compose(self, g, f):
        return ab.compose(g, f)

    def add(self, f, g):
        return ab.add_homs(f, g)

    def scale(self, f, c):
        return ab.scale_hom(f, int(c))

    def is_zero_mor(self, f):
        return ab.is_zero_hom(f)

    def mor_equal(self, f, g):
        return ab.homs_equal(f, g)

    def block_mor(self, S, T, srcs, tgts, blocks):
        grid = [[blocks[(r, c)].matrix if (r, c) in blocks else None for c in range(len(srcs))]
                for r in range(len(tgts))]
        M = block_int([t.ngens for t in tgts], [s.ngens for s in srcs], grid)
        return GroupHom(S, T, M, check=False)

    def tensor_mor(self, f, g):
        return ab.tensor_homs(f, g)

    def kernel(self, f):
        return ab.kernel(f)

    def cokernel(self, f):
        return ab.cokernel(f)

    def lift(self, mono, g):
        return ab.lift(mono, g)

    def descend(self, epi, g):
        return ab.descend(epi, g)

    def is_iso_mor(self, f):
        return ab.is_iso(f)

    def iso_search(self, A, B, *, seed=0):
        same = ab.are_isomorphic(A, B)
        return same, None, "invariant factors " + ("agree" if same else "differ")

    def catalog(self):
        return [FgAbelianGroup.free(k) for k in (1, 2, 3)]

    def random_mor(self, A, B, rng):
        if A.relations.ncols:
            raise BackendError("random homomorphisms are only drawn from free sources")
        M = IntMatrix([[rng.randint(-2, 2) for _ in range(A.ngens)] for _ in range(B.ngens)], A.ngens)
        return GroupHom(A, B, M, check=False)

    def obj_to_json(self, A):
        return {"ngens": A.ngens, "relations": A.relations.to_json()}
