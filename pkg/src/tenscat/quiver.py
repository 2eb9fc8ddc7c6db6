"""Representations of finite quivers with the pointwise tensor product.

Vertices are ``0 .. n-1``; an arrow ``(s, t)`` carries a matrix of shape
``dims[t] x dims[s]``.  For the A2 quiver ``1 -> 2`` the vertices are 0 and
1 and the single arrow is ``(0, 1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .linalg.fields import QQ, Field
from .linalg.isosearch import find_invertible
from .linalg.matrix import (
    ExactMatrix,
    column_basis,
    complement_basis,
    kernel_basis,
    kernel_matrix,
    kronecker,
    solve_matrix,
)
from .report import FAIL, PASS, VerificationReport


class QuiverError(ValueError):
    """Quiver mismatch or malformed representation data."""


@dataclass(frozen=True)
class Quiver:
    num_vertices: int
    arrows: tuple = ()

    def __post_init__(self):
        arrows = tuple(tuple(a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        for s, t in arrows:
            if not (0 <= s < self.num_vertices and 0 <= t < self.num_vertices):
                raise QuiverError(f"arrow {(s, t)} leaves the vertex set")

    def is_acyclic(self) -> bool:
        indeg = [0] * self.num_vertices
        for _, t in self.arrows:
            indeg[t] += 1
        ready = [v for v in range(self.num_vertices) if indeg[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        return seen == self.num_vertices

    def to_json(self) -> dict:
        return {"vertices": self.num_vertices, "arrows": [list(a) for a in self.arrows]}


def a2_quiver() -> Quiver:
    """``1 -> 2``, stored as vertices 0, 1 and arrow (0, 1)."""
    return Quiver(2, ((0, 1),))


class QuiverRep:
    """Finite-dimensional representation; immutable."""

    def __init__(self, quiver: Quiver, field: Field, dims: Sequence[int], maps: Sequence, *, name: str = ""):
        if len(dims) != quiver.num_vertices:
            raise QuiverError(f"need {quiver.num_vertices} vertex dimensions, got {len(dims)}")
        if len(maps) != len(quiver.arrows):
            raise QuiverError(f"need {len(quiver.arrows)} arrow matrices, got {len(maps)}")
        self.quiver = quiver
        self.field = field
        self.dims = tuple(int(d) for d in dims)
        if any(d < 0 for d in self.dims):
            raise QuiverError("negative vertex dimension")
        mats = []
        for (s, t), m in zip(quiver.arrows, maps):
            if not isinstance(m, ExactMatrix):
                m = ExactMatrix(field, m, self.dims[s]) if self.dims[t] else ExactMatrix.zeros(field, 0, self.dims[s])
            if m.shape != (self.dims[t], self.dims[s]):
                raise QuiverError(f"arrow {(s, t)} needs a {self.dims[t]}x{self.dims[s]} matrix, got {m.shape}")
            if m.field != field:
                raise QuiverError("arrow matrix over a different field")
            mats.append(m)
        self.maps = tuple(mats)
        self.name = name

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def __eq__(self, other):
        return (isinstance(other, QuiverRep) and self.quiver == other.quiver and self.field == other.field
                and self.dims == other.dims and self.maps == other.maps)

    def __hash__(self):
        return hash((self.quiver, self.dims, self.maps))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<QuiverRep{label} dims={self.dims}>"

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "field": self.field.tag,
            "dims": list(self.dims),
            "maps": [m.to_json() for m in self.maps],
        }


class RepHom:
    """Morphism of representations: one matrix per vertex."""

    def __init__(self, source: QuiverRep, target: QuiverRep, components: Sequence[ExactMatrix], *, check: bool = True):
        _same_quiver(source, target)
        if len(components) != source.quiver.num_vertices:
            raise QuiverError("one component per vertex required")
        for v, c in enumerate(components):
            if c.shape != (target.dims[v], source.dims[v]):
                raise QuiverError(f"component at vertex {v} has shape {c.shape}")
        self.source = source
        self.target = target
        self.components = tuple(components)
        if check and not self.commutes():
            raise QuiverError("components do not commute with the arrow maps")

    def commutes(self) -> bool:
        for (s, t), phi, psi in zip(self.source.quiver.arrows, self.source.maps, self.target.maps):
            if psi @ self.components[s] != self.components[t] @ phi:
                return False
        return True

    def __matmul__(self, other: "RepHom") -> "RepHom":
        return RepHom(other.source, self.target, [a @ b for a, b in zip(self.components, other.components)], check=False)

    def __eq__(self, other):
        return isinstance(other, RepHom) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def block_matrix(self) -> ExactMatrix:
        return ExactMatrix.block_diag(self.source.field, self.components)


def _same_quiver(V: QuiverRep, W: QuiverRep) -> None:
    if V.quiver != W.quiver:
        raise QuiverError("representations of different quivers")
    if V.field != W.field:
        raise QuiverError("representations over different fields")


# -- constructions --------------------------------------------------------------

def zero_rep(Q: Quiver, field: Field = QQ) -> QuiverRep:
    return QuiverRep(Q, field, [0] * Q.num_vertices, [ExactMatrix.zeros(field, 0, 0) for _ in Q.arrows], name="0")


def unit_rep(Q: Quiver, field: Field = QQ) -> QuiverRep:
    """The tensor unit: the field at every vertex, identities on arrows."""
    return QuiverRep(Q, field, [1] * Q.num_vertices, [ExactMatrix.identity(field, 1) for _ in Q.arrows], name="unit")


def tensor_rep(V: QuiverRep, W: QuiverRep) -> QuiverRep:
    """Pointwise tensor: ``V_a (x) W_a`` and ``phi_alpha (x) psi_alpha``."""
    _same_quiver(V, W)
    return QuiverRep(V.quiver, V.field, [a * b for a, b in zip(V.dims, W.dims)],
                     [kronecker(p, q) for p, q in zip(V.maps, W.maps)])


def tensor_rep_hom(f: RepHom, g: RepHom) -> RepHom:
    return RepHom(tensor_rep(f.source, g.source), tensor_rep(f.target, g.target),
                  [kronecker(a, b) for a, b in zip(f.components, g.components)], check=False)


def direct_sum_reps(reps: Sequence[QuiverRep]) -> QuiverRep:
    if not reps:
        raise QuiverError("empty direct sum")
    V0 = reps[0]
    for V in reps[1:]:
        _same_quiver(V0, V)
    F = V0.field
    dims = [sum(V.dims[v] for V in reps) for v in range(V0.quiver.num_vertices)]
    maps = [ExactMatrix.block_diag(F, [V.maps[k] for V in reps]) for k in range(len(V0.quiver.arrows))]
    return QuiverRep(V0.quiver, F, dims, maps)


def identity_hom(V: QuiverRep) -> RepHom:
    return RepHom(V, V, [ExactMatrix.identity(V.field, d) for d in V.dims], check=False)


def zero_hom(V: QuiverRep, W: QuiverRep) -> RepHom:
    return RepHom(V, W, [ExactMatrix.zeros(V.field, b, a) for a, b in zip(V.dims, W.dims)], check=False)


def rep_hom_space(V: QuiverRep, W: QuiverRep) -> list[RepHom]:
    """Basis of Hom(V, W) from the commutation equations."""
    _same_quiver(V, W)
    F = V.field
    Q = V.quiver
    offsets = []
    off = 0
    for a, b in zip(V.dims, W.dims):
        offsets.append(off)
        off += a * b
    nvar = off
    if nvar == 0:
        return []
    z = F.zero()
    rows = []
    for (s, t), phi, psi in zip(Q.arrows, V.maps, W.maps):
        # psi f_s - f_t phi = 0, entry (i, j) with i < W_t, j < V_s
        ds, dt = V.dims[s], V.dims[t]
        for i in range(W.dims[t]):
            for j in range(ds):
                row = [z] * nvar
                for k in range(W.dims[s]):
                    c = psi.rows[i][k]
                    if c:
                        idx = offsets[s] + k * ds + j
                        row[idx] = F.add(row[idx], c)
                for k in range(dt):
                    c = phi.rows[k][j]
                    if c:
                        idx = offsets[t] + i * dt + k
                        row[idx] = F.sub(row[idx], c)
                if any(row):
                    rows.append(row)
    if rows:
        basis = kernel_basis(ExactMatrix(F, rows, nvar, trusted=True))
    else:
        basis = [tuple(F.one() if i == k else z for i in range(nvar)) for k in range(nvar)]
    out = []
    for vec in basis:
        comps = []
        for v, (a, b) in enumerate(zip(V.dims, W.dims)):
            o = offsets[v]
            comps.append(ExactMatrix(F, [vec[o + i * a: o + (i + 1) * a] for i in range(b)], a, trusted=True)
                         if b else ExactMatrix.zeros(F, 0, a))
        out.append(RepHom(V, W, comps, check=False))
    return out


def rep_iso_search(V: QuiverRep, W: QuiverRep, *, seed: int = 0) -> tuple[Optional[bool], Optional[RepHom], str]:
    _same_quiver(V, W)
    if V.dims != W.dims:
        return False, None, "dimension vectors differ"
    homs = rep_hom_space(V, W)
    verdict, T, reason = find_invertible(V.field, [h.block_matrix() for h in homs], V.total_dim, seed=seed)
    if not verdict:
        return verdict, None, reason
    comps = []
    off = 0
    for d in V.dims:
        comps.append(T.submatrix(range(off, off + d), range(off, off + d)))
        off += d
    return True, RepHom(V, W, comps, check=False), reason


def subrep(V: QuiverRep, bases: Sequence[ExactMatrix]) -> tuple[QuiverRep, RepHom]:
    """Subrepresentation spanned by the columns of ``bases[v]`` at each vertex."""
    F = V.field
    dims = [b.ncols for b in bases]
    maps = []
    for (s, t), phi in zip(V.quiver.arrows, V.maps):
        if dims[t] == 0:
            if dims[s] and not (phi @ bases[s]).is_zero():
                raise QuiverError("subspaces are not closed under the arrows")
            maps.append(ExactMatrix.zeros(F, 0, dims[s]))
            continue
        x = solve_matrix(bases[t], phi @ bases[s]) if dims[s] else ExactMatrix.zeros(F, dims[t], 0)
        if x is None:
            raise QuiverError("subspaces are not closed under the arrows")
        maps.append(x)
    S = QuiverRep(V.quiver, F, dims, maps)
    return S, RepHom(S, V, list(bases), check=False)


def quotient_rep(V: QuiverRep, bases: Sequence[ExactMatrix]) -> tuple[QuiverRep, RepHom]:
    F = V.field
    projs, sects = [], []
    for v, B in enumerate(bases):
        C = complement_basis(B)
        inv = B.hstack(C).inverse() if V.dims[v] else ExactMatrix.zeros(F, 0, 0)
        projs.append(inv.submatrix(range(B.ncols, V.dims[v]), range(V.dims[v])))
        sects.append(C)
    maps = [projs[t] @ phi @ sects[s] for (s, t), phi in zip(V.quiver.arrows, V.maps)]
    R = QuiverRep(V.quiver, F, [c.ncols for c in sects], maps)
    return R, RepHom(V, R, projs, check=False)


def rep_kernel(f: RepHom) -> tuple[QuiverRep, RepHom]:
    return subrep(f.source, [kernel_matrix(c) for c in f.components])


def rep_cokernel(f: RepHom) -> tuple[QuiverRep, RepHom]:
    return quotient_rep(f.target, [column_basis(c) for c in f.components])


# -- A2 indecomposables -------------------------------------------------------

def a2_simple(i: int, field: Field = QQ) -> QuiverRep:
    """``S_1 = (k, 0, 0)`` or ``S_2 = (0, k, 0)``."""
    Q = a2_quiver()
    if i == 1:
        return QuiverRep(Q, field, [1, 0], [ExactMatrix.zeros(field, 0, 1)], name="S1")
    if i == 2:
        return QuiverRep(Q, field, [0, 1], [ExactMatrix.zeros(field, 1, 0)], name="S2")
    raise QuiverError("A2 has simples S1 and S2 only")


def a2_projective(field: Field = QQ) -> QuiverRep:
    """``P_2 = (k, k, id)``."""
    return QuiverRep(a2_quiver(), field, [1, 1], [ExactMatrix.identity(field, 1)], name="P2")


def a2_indecomposables(field: Field = QQ) -> dict[str, QuiverRep]:
    return {"S1": a2_simple(1, field), "S2": a2_simple(2, field), "P2": a2_projective(field)}


def rep_tensor_reduced_check(sample: Sequence[QuiverRep]) -> VerificationReport:
    """Each nonzero ``V`` has ``V (x) V != 0``; zero objects are skipped."""
    rep = VerificationReport("rep-tensor-reduced")
    for k, V in enumerate(sample):
        cid = f"sample-{k:03d}"
        if V.is_zero():
            rep.add(cid, PASS, dims=list(V.dims), note="zero representation excluded")
            continue
        T = tensor_rep(V, V)
        if T.is_zero():
            rep.add(cid, FAIL, dims=list(V.dims), square_dims=list(T.dims))
        else:
            rep.add(cid, PASS, dims=list(V.dims), square_dims=list(T.dims))
    return rep


# -- the additive endofunctor of rep(A2) ------------------------------------------
#
# Objects are multiplicity vectors (m1, m2, m3) for S1^m1 + S2^m2 + P2^m3.
# A morphism M -> N is stored by its blocks f[(i, j)] in Hom(type_i, type_j)
# (source type i, target type j), each an n_j x m_i matrix of coefficients of
# the standard basis map between indecomposables:
#   S1 -> S1, S2 -> S2, P2 -> P2: identity;  S2 -> P2: inclusion at vertex 2;
#   P2 -> S1: projection at vertex 1.  All other Hom spaces vanish.

A2_TYPES = ("S1", "S2", "P2")
A2_NONZERO_BLOCKS = ((1, 1), (2, 2), (3, 3), (2, 3), (3, 1))


def a2_object(mults: Sequence[int], field: Field = QQ) -> QuiverRep:
    """``S1^m1 + S2^m2 + P2^m3`` with vertex bases ordered (S1, P2) at
    vertex 1 and (S2, P2) at vertex 2."""
    m1, m2, m3 = mults
    d1, d2 = m1 + m3, m2 + m3
    z, o = field.zero(), field.one()
    rows = [[o if (i >= m2 and j >= m1 and i - m2 == j - m1) else z for j in range(d1)] for i in range(d2)]
    arrow = ExactMatrix(field, rows, d1, trusted=True) if d2 else ExactMatrix.zeros(field, 0, d1)
    return QuiverRep(a2_quiver(), field, [d1, d2], [arrow], name=f"S1^{m1}+S2^{m2}+P2^{m3}")


def a2_blocks_to_hom(blocks: dict, m: Sequence[int], n: Sequence[int], field: Field = QQ) -> RepHom:
    """Assemble a morphism ``a2_object(m) -> a2_object(n)`` from its blocks."""
    F = field
    M, N = a2_object(m, F), a2_object(n, F)
    m1, m2, m3 = m
    n1, n2, n3 = n

    def blk(i, j):
        b = blocks.get((i, j))
        rows_, cols_ = (n1, n2, n3)[j - 1], (m1, m2, m3)[i - 1]
        if b is None:
            return ExactMatrix.zeros(F, rows_, cols_)
        if b.shape != (rows_, cols_):
            raise QuiverError(f"block {(i, j)} has shape {b.shape}, expected {(rows_, cols_)}")
        return b

    for key, b in blocks.items():
        if key not in A2_NONZERO_BLOCKS and not b.is_zero():
            raise QuiverError(f"Hom({A2_TYPES[key[0] - 1]}, {A2_TYPES[key[1] - 1]}) = 0, block {key} must vanish")
    # vertex 1: source basis (S1, P2) -> target basis (S1, P2)
    v1 = ExactMatrix.block(F, [n1, n3], [m1, m3], [[blk(1, 1), blk(3, 1)], [None, blk(3, 3)]])
    # vertex 2: source basis (S2, P2) -> target basis (S2, P2)
    v2 = ExactMatrix.block(F, [n2, n3], [m2, m3], [[blk(2, 2), None], [blk(2, 3), blk(3, 3)]])
    return RepHom(M, N, [v1, v2], check=True)


def a2_hom_to_blocks(f: RepHom, m: Sequence[int], n: Sequence[int]) -> dict:
    m1, m2, m3 = m
    n1, n2, n3 = n
    v1, v2 = f.components
    return {
        (1, 1): v1.submatrix(range(n1), range(m1)),
        (3, 1): v1.submatrix(range(n1), range(m1, m1 + m3)),
        (3, 3): v1.submatrix(range(n1, n1 + n3), range(m1, m1 + m3)),
        (2, 2): v2.submatrix(range(n2), range(m2)),
        (2, 3): v2.submatrix(range(n2, n2 + n3), range(m2)),
    }


def a2_hom_basis(m: Sequence[int], n: Sequence[int], field: Field = QQ) -> list[dict]:
    """Elementary block data spanning Hom(a2_object(m), a2_object(n))."""
    F = field
    out = []
    sizes_m, sizes_n = tuple(m), tuple(n)
    for i, j in A2_NONZERO_BLOCKS:
        r, c = sizes_n[j - 1], sizes_m[i - 1]
        for a, b in product(range(r), range(c)):
            rows = [[F.one() if (x, y) == (a, b) else F.zero() for y in range(c)] for x in range(r)]
            out.append({(i, j): ExactMatrix(F, rows, c, trusted=True)})
    return out


class AdditiveEndofunctorTable:
    """An additive functor on add(S1, S2, P2) given by images of the
    indecomposables and a rule on block data of morphisms."""

    def __init__(self, images: dict, hom_rule, *, name: str = "F"):
        self.images = {k: tuple(v) for k, v in images.items()}
        self.hom_rule = hom_rule
        self.name = name

    def on_object(self, mults: Sequence[int]) -> tuple:
        out = [0, 0, 0]
        for k, t in zip(mults, A2_TYPES):
            for i, x in enumerate(self.images[t]):
                out[i] += k * x
        return tuple(out)

    def on_hom(self, blocks: dict) -> dict:
        return self.hom_rule(blocks)


def _displayed_rule(blocks: dict) -> dict:
    # keep the S2 -> S2 block, send everything else to zero
    return {(2, 2): blocks[(2, 2)]} if (2, 2) in blocks else {}


def a2_functor() -> AdditiveEndofunctorTable:
    """``F(S1) = F(S2) = 0``, ``F(P2) = S2``, with the displayed hom rule."""
    return AdditiveEndofunctorTable({"S1": (0, 0, 0), "S2": (0, 0, 0), "P2": (0, 1, 0)}, _displayed_rule)


def _block_shape_ok(blocks: dict, m, n) -> bool:
    return all(b.shape == (n[j - 1], m[i - 1]) for (i, j), b in blocks.items())


def a2_functor_example(max_mult: int = 3, field: Field = QQ) -> VerificationReport:
    """Check the functor F on every ``S1^a + S2^b + P2^c`` with a, b, c <= max_mult."""
    F = a2_functor()
    rep = VerificationReport("a2-functor", meta={"max_multiplicity": max_mult,
                                                  "block_order": list(A2_TYPES)})
    expected = {"S1": (0, 0, 0), "S2": (0, 0, 0), "P2": (0, 1, 0)}
    for t, e in expected.items():
        unit = tuple(int(t == u) for u in A2_TYPES)
        got = F.on_object(unit)
        rep.add(f"image-{t}", PASS if got == e else FAIL, image=list(got), expected=list(e))

    objs = list(product(range(max_mult + 1), repeat=3))
    # (a) additivity on objects
    bad = None
    for m, n in product(objs, repeat=2):
        s = tuple(x + y for x, y in zip(m, n))
        if F.on_object(s) != tuple(x + y for x, y in zip(F.on_object(m), F.on_object(n))):
            bad = (m, n)
            break
    rep.add("additive-objects", PASS if bad is None else FAIL,
            **({"pairs": len(objs) ** 2} if bad is None else {"pair": [list(bad[0]), list(bad[1])]}))

    # (a') the hom rule is additive: block-diagonal sums go to block-diagonal sums
    bad = None
    for m, n in product(objs, repeat=2):
        for basis_elt in a2_hom_basis(m, n, field):
            img = F.on_hom(basis_elt)
            if any(k not in basis_elt for k in img) or any(img[k] != basis_elt[k] for k in img):
                # the rule only selects blocks, so its image is a sub-dict
                bad = (m, n)
                break
        if bad:
            break
    rep.add("additive-homs", PASS if bad is None else FAIL,
            **({"note": "rule acts blockwise, so it commutes with direct sums"} if bad is None
               else {"pair": [list(bad[0]), list(bad[1])]}))

    # (b) F o F annihilates objects, hence every Hom(FF(M), FF(N)) is zero
    bad = None
    hom_dims = 0
    for m in objs:
        ff = F.on_object(F.on_object(m))
        if any(ff):
            bad = m
            break
    rep.add("FF-objects", PASS if bad is None else FAIL,
            **({"objects": len(objs)} if bad is None else {"object": list(bad), "FF": list(ff)}))
    bad = None
    for m, n in product(objs, repeat=2):
        ffm, ffn = F.on_object(F.on_object(m)), F.on_object(F.on_object(n))
        dim = sum(ffn[j - 1] * ffm[i - 1] for i, j in A2_NONZERO_BLOCKS)
        hom_dims += len(a2_hom_basis(m, n, field))
        if dim:
            bad = (m, n, dim)
            break
    rep.add("FF-homs", PASS if bad is None else FAIL,
            **({"pairs": len(objs) ** 2, "hom_basis_maps": hom_dims,
                "note": "every FF(f) lies in Hom(FF(M), FF(N)) = Hom(0, 0)"} if bad is None
               else {"pair": [list(bad[0]), list(bad[1])], "dim": bad[2]}))

    # (c) F is nonzero
    fp2 = F.on_object((0, 0, 1))
    rep.add("F-nonzero", PASS if any(fp2) else FAIL, F_P2=list(fp2))
    rep.meta["conclusion"] = "Fun[A,A] not tensor reduced: F != 0 and F o F = 0" if rep.passed else "not established"

    # how the displayed rule sits against Hom(F(M), F(N))
    mismatched = []
    for m, n in product(objs, repeat=2):
        for basis_elt in a2_hom_basis(m, n, field):
            img = F.on_hom(basis_elt)
            if not _block_shape_ok(img, F.on_object(m), F.on_object(n)):
                mismatched.append([list(m), list(n)])
                break
    rep.meta["rule_shape_mismatches"] = len(mismatched)
    if mismatched:
        rep.meta["rule_shape_mismatch_example"] = mismatched[0]
        rep.notes.append(
            "the hom rule keeps the S2->S2 block (n2 x m2) while Hom(F(M), F(N)) has shape n3 x m3; "
            f"{len(mismatched)} of {len(objs) ** 2} object pairs are affected, e.g. F(id_S2) = [1] with F(S2) = 0"
        )
        alt_ok = _alternative_reading_is_functorial(objs, field)
        rep.meta["alternative_reading_functorial"] = alt_ok
        rep.notes.append(
            "reading the retained block as the P2->P2 component instead gives F(id) = id and "
            f"F(gf) = F(g)F(f) on the sampled table: {alt_ok}; not adopted"
        )
    return rep


def _alternative_reading_is_functorial(objs, field: Field) -> bool:
    def alt(blocks):
        return {(2, 2): blocks[(3, 3)]} if (3, 3) in blocks else {}

    def compose_blocks(g, f, m, k, n):
        # (g o f)_{ij} = sum_t g_{tj} f_{it}
        out = {}
        for i, j in A2_NONZERO_BLOCKS:
            acc = ExactMatrix.zeros(field, n[j - 1], m[i - 1])
            for t in (1, 2, 3):
                if (i, t) in f and (t, j) in g:
                    acc = acc + g[(t, j)] @ f[(i, t)]
            out[(i, j)] = acc
        return out

    small = [o for o in objs if sum(o) <= 3]
    for m in small:
        ident = {(t, t): ExactMatrix.identity(field, m[t - 1]) for t in (1, 2, 3)}
        fm = (0, m[2], 0)
        if alt(ident).get((2, 2), ExactMatrix.zeros(field, 0, 0)) != ExactMatrix.identity(field, fm[1]):
            return False
    for m, k, n in product(small[:12], repeat=3):
        for f in a2_hom_basis(m, k, field):
            for g in a2_hom_basis(k, n, field):
                gf = compose_blocks(g, f, m, k, n)
                lhs = alt(gf).get((2, 2))
                fa, ga = alt(f).get((2, 2)), alt(g).get((2, 2))
                rhs = ga @ fa if (fa is not None and ga is not None) else None
                if lhs is None or rhs is None:
                    if (lhs is not None and not lhs.is_zero()) or (rhs is not None and not rhs.is_zero()):
                        return False
                elif lhs != rhs:
                    return False
    return True
