from __future__ import annotations

import random
from math import gcd

import pytest

from tenscat.abelian import (
    FgAbelianGroup,
    GroupHom,
    GroupHomError,
    are_isomorphic,
    cokernel,
    compose,
    describe,
    direct_sum,
    homology_at,
    identity,
    invariant_factors,
    is_iso,
    kernel,
    multiplication,
    tensor_groups,
    tensor_homs,
    zero_hom,
)
from tenscat.linalg import IntMatrix

Z = FgAbelianGroup.free(1)
Z6 = FgAbelianGroup.cyclic(6)
ZERO = FgAbelianGroup.zero()


def test_free_rank_one():
    assert invariant_factors(Z) == [0]


def test_presented_group_z6():
    A = FgAbelianGroup(2, IntMatrix([[2, 0], [0, 3]]))
    assert invariant_factors(A) == [6]
    assert are_isomorphic(A, Z6)


def test_cyclic_six():
    assert invariant_factors(Z6) == [6]
    assert describe(Z6)


def test_trivial_group_has_no_factors():
    assert invariant_factors(ZERO) == []
    assert FgAbelianGroup.cyclic(1).is_trivial()


def test_from_factors_round_trip():
    A = FgAbelianGroup.from_factors([2, 4, 0])
    assert invariant_factors(A) == [2, 4, 0]


def test_redundant_presentation_keeps_factors():
    rng = random.Random(21)
    for _ in range(30):
        factors = sorted(rng.choice([2, 3, 4, 6, 0]) for _ in range(rng.randint(1, 3)))
        A = FgAbelianGroup.from_factors(factors)
        # change basis by a random unimodular matrix and add redundant relations
        m = A.ngens
        U = IntMatrix.identity(m)
        for _ in range(4):
            i, j = rng.sample(range(m), 2) if m > 1 else (0, 0)
            if i != j:
                E = [list(r) for r in IntMatrix.identity(m).rows]
                E[i][j] = rng.randint(-3, 3)
                U = IntMatrix(E) @ U
        R = U @ A.relations
        extra = R @ IntMatrix([[rng.randint(-2, 2)] for _ in range(R.ncols)]) if R.ncols else IntMatrix.zeros(m, 0)
        B = FgAbelianGroup(m, R.hstack(extra))
        assert invariant_factors(B) == invariant_factors(A)


def test_redundant_generator_keeps_factors():
    # Z/6 on generators (a, b) with b = 2a
    B = FgAbelianGroup(2, IntMatrix([[6, 2], [0, -1]]))
    assert invariant_factors(B) == [6]


# -- tensor ----------------------------------------------------------------------------------

def test_tensor_unit_law():
    for A in (Z6, FgAbelianGroup.from_factors([2, 0]), ZERO):
        assert invariant_factors(tensor_groups(Z, A)) == invariant_factors(A)


def test_tensor_z6_z4():
    assert invariant_factors(tensor_groups(Z6, FgAbelianGroup.cyclic(4))) == [gcd(6, 4)]


def test_tensor_coprime_is_trivial():
    assert tensor_groups(FgAbelianGroup.cyclic(2), FgAbelianGroup.cyclic(3)).is_trivial()


@pytest.mark.parametrize("a,b", [(a, b) for a in range(2, 9) for b in range(2, 9)])
def test_tensor_of_cyclic_groups_matches_gcd(a, b):
    g = gcd(a, b)
    expected = [] if g == 1 else [g]
    T = tensor_groups(FgAbelianGroup.cyclic(a), FgAbelianGroup.cyclic(b))
    assert invariant_factors(T) == expected
    assert invariant_factors(tensor_groups(FgAbelianGroup.cyclic(b), FgAbelianGroup.cyclic(a))) == expected


def test_tensor_of_homs_is_functorial():
    A, B = Z6, FgAbelianGroup.cyclic(4)
    f, g = multiplication(A, 5), multiplication(B, 3)
    fg = tensor_homs(f, g)
    assert fg.source == tensor_groups(A, B)
    assert is_iso(fg)


# -- homomorphisms ---------------------------------------------------------------------------

def test_ill_defined_hom_rejected():
    with pytest.raises(GroupHomError):
        GroupHom(FgAbelianGroup.cyclic(2), FgAbelianGroup.cyclic(3), IntMatrix([[1]]))


def test_kernel_and_cokernel_of_doubling_on_z6():
    f = multiplication(Z6, 2)
    assert invariant_factors(kernel(f)[0]) == [2]
    assert invariant_factors(cokernel(f)[0]) == [2]
    assert not is_iso(f)
    assert is_iso(multiplication(Z6, 5))


def test_direct_sum_factors():
    S = direct_sum([FgAbelianGroup.cyclic(2), FgAbelianGroup.cyclic(3)])
    assert invariant_factors(S) == [6]


# -- homology --------------------------------------------------------------------------------

def test_homology_of_stalk():
    assert invariant_factors(homology_at(zero_hom(ZERO, Z6), zero_hom(Z6, ZERO))) == [6]


def test_homology_of_doubling_at_source():
    f = multiplication(Z6, 2)
    assert invariant_factors(homology_at(zero_hom(ZERO, Z6), f)) == [2]


def test_homology_of_doubling_at_target():
    f = multiplication(Z6, 2)
    assert invariant_factors(homology_at(f, zero_hom(Z6, ZERO))) == [2]


def test_homology_of_exact_sequence():
    # Z --2--> Z --> Z/2 is exact in the middle
    two = GroupHom(Z, Z, IntMatrix([[2]]))
    q = GroupHom(Z, FgAbelianGroup.cyclic(2), IntMatrix([[1]]))
    assert homology_at(two, q).is_trivial()


def test_homology_requires_zero_composite():
    f = identity(Z6)
    with pytest.raises(GroupHomError):
        homology_at(f, f)


def test_homology_requires_composable_maps():
    with pytest.raises(GroupHomError):
        homology_at(identity(Z6), identity(Z))


def test_compose_matches_matrix_product():
    f, g = multiplication(Z6, 2), multiplication(Z6, 3)
    assert compose(g, f).matrix == IntMatrix([[6]])
