from __future__ import annotations

import random
from itertools import product

import pytest

from tenscat.linalg import QQ, ExactMatrix
from tenscat.quiver import (
    Quiver,
    QuiverError,
    QuiverRep,
    RepHom,
    a2_blocks_to_hom,
    a2_functor,
    a2_functor_example,
    a2_hom_basis,
    a2_hom_to_blocks,
    a2_object,
    a2_projective,
    a2_quiver,
    a2_simple,
    direct_sum_reps,
    rep_cokernel,
    rep_hom_space,
    rep_iso_search,
    rep_kernel,
    rep_tensor_reduced_check,
    subrep,
    tensor_rep,
    tensor_rep_hom,
    unit_rep,
    zero_rep,
)

Q = a2_quiver()
S1, S2, P2 = a2_simple(1), a2_simple(2), a2_projective()
U = unit_rep(Q)


def random_rep(rng, quiver=Q, max_dim=3):
    dims = [rng.randint(0, max_dim) for _ in range(quiver.num_vertices)]
    maps = [ExactMatrix(QQ, [[rng.randint(-2, 2) for _ in range(dims[s])] for _ in range(dims[t])], dims[s])
            for s, t in quiver.arrows]
    return QuiverRep(quiver, QQ, dims, maps)


def test_quiver_acyclicity():
    assert Q.is_acyclic()
    assert not Quiver(2, ((0, 1), (1, 0))).is_acyclic()
    assert Quiver(3, ((0, 1), (1, 2), (0, 2))).is_acyclic()


def test_rep_shape_checked():
    with pytest.raises(QuiverError):
        QuiverRep(Q, QQ, [1, 2], [ExactMatrix.identity(QQ, 1)])


def test_unit_rep_on_a2():
    assert list(U.dims) == [1, 1] and U.maps[0] == ExactMatrix.identity(QQ, 1)
    assert tensor_rep(U, U) == U


def test_unit_law():
    rng = random.Random(2)
    for _ in range(20):
        V = random_rep(rng)
        assert tensor_rep(U, V) == V
        assert tensor_rep(V, U) == V


def test_s1_tensor_p2_is_s1():
    T = tensor_rep(S1, P2)
    assert list(T.dims) == [1, 0]
    assert rep_iso_search(T, S1)[0] is True


def test_s2_tensor_p2_is_s2():
    T = tensor_rep(S2, P2)
    assert list(T.dims) == [0, 1]
    assert rep_iso_search(T, S2)[0] is True


def test_tensor_associative_on_the_nose():
    rng = random.Random(3)
    for _ in range(15):
        A, B, C = (random_rep(rng) for _ in range(3))
        assert tensor_rep(tensor_rep(A, B), C) == tensor_rep(A, tensor_rep(B, C))


def test_unit_is_not_simple():
    # (0, k) is a subrepresentation of the unit; (k, 0) is not
    S, incl = subrep(U, [ExactMatrix.zeros(QQ, 1, 0), ExactMatrix.identity(QQ, 1)])
    assert list(S.dims) == [0, 1] and incl.commutes()
    assert rep_iso_search(S, S2)[0] is True
    with pytest.raises(QuiverError):
        subrep(U, [ExactMatrix.identity(QQ, 1), ExactMatrix.zeros(QQ, 1, 0)])


def test_hom_dimensions_between_indecomposables():
    expected = {("S1", "S1"): 1, ("S2", "S2"): 1, ("P2", "P2"): 1,
                ("S2", "P2"): 1, ("P2", "S1"): 1,
                ("S1", "S2"): 0, ("S2", "S1"): 0, ("S1", "P2"): 0, ("P2", "S2"): 0}
    reps = {"S1": S1, "S2": S2, "P2": P2}
    for (a, b), d in expected.items():
        assert len(rep_hom_space(reps[a], reps[b])) == d, (a, b)


def test_tensor_reduced_samples():
    assert rep_tensor_reduced_check([S1, S2, P2]).passed
    rep = rep_tensor_reduced_check([zero_rep(Q)])
    assert rep.passed and "excluded" in rep.cases[0].data["note"]
    rng = random.Random(4)
    assert rep_tensor_reduced_check([random_rep(rng) for _ in range(20)]).passed


def test_tensor_is_exact_on_the_standard_sequence():
    # 0 -> S2 -> P2 -> S1 -> 0
    i = RepHom(S2, P2, [ExactMatrix.zeros(QQ, 1, 0), ExactMatrix.identity(QQ, 1)])
    p = RepHom(P2, S1, [ExactMatrix.identity(QQ, 1), ExactMatrix.zeros(QQ, 0, 1)])
    assert (p @ i).is_zero()
    rng = random.Random(5)
    for _ in range(10):
        V = random_rep(rng)
        idV = RepHom(V, V, [ExactMatrix.identity(QQ, d) for d in V.dims])
        iv, pv = tensor_rep_hom(i, idV), tensor_rep_hom(p, idV)
        assert iv.commutes() and pv.commutes()
        assert (pv @ iv).is_zero()
        assert [a + c for a, c in zip(iv.source.dims, pv.target.dims)] == list(iv.target.dims)
        assert all(x == 0 for x in rep_kernel(iv)[0].dims)
        assert all(x == 0 for x in rep_cokernel(pv)[0].dims)
        assert list(rep_kernel(pv)[0].dims) == list(iv.source.dims)


def test_direct_sum_dims():
    D = direct_sum_reps([S1, S2, P2])
    assert list(D.dims) == [2, 2]


def test_a2_object_matches_direct_sum():
    for m in product(range(3), repeat=3):
        parts = [S1] * m[0] + [S2] * m[1] + [P2] * m[2]
        A = a2_object(m)
        if parts:
            assert rep_iso_search(A, direct_sum_reps(parts))[0] is True


def test_block_round_trip():
    m, n = (1, 2, 1), (2, 1, 2)
    for b in a2_hom_basis(m, n):
        f = a2_blocks_to_hom(b, m, n)
        back = a2_hom_to_blocks(f, m, n)
        for k, v in b.items():
            assert back[k] == v
    assert len(a2_hom_basis(m, n)) == len(rep_hom_space(a2_object(m), a2_object(n)))


# -- the additive functor ----------------------------------------------------------------------

def test_functor_on_indecomposables():
    F = a2_functor()
    assert F.on_object((0, 0, 1)) == (0, 1, 0)   # F(P2) = S2
    assert F.on_object((1, 0, 0)) == (0, 0, 0)
    assert F.on_object((0, 1, 0)) == (0, 0, 0)


def test_functor_squares_to_zero_on_p2():
    F = a2_functor()
    assert F.on_object(F.on_object((0, 0, 1))) == (0, 0, 0)


def test_functor_is_additive_on_s1_plus_p2():
    F = a2_functor()
    assert F.on_object((1, 0, 1)) == (0, 1, 0)


def test_a2_functor_report():
    rep = a2_functor_example()
    assert rep.passed
    ids = {c.id for c in rep.cases}
    assert {"image-S1", "image-S2", "image-P2", "FF-objects", "FF-homs", "F-nonzero"} <= ids
    assert rep.case("FF-objects").data["objects"] == 64
    assert "not tensor reduced" in rep.meta["conclusion"]
    assert rep.meta["rule_shape_mismatches"] > 0
