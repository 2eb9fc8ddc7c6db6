from __future__ import annotations

import random
from fractions import Fraction

import pytest

from tenscat.complexes.backends import HModuleBackend, group_characters, uniserial_taft_module
from tenscat.hopf import (
    HopfAlgebra,
    HopfStructureError,
    IsomorphismUndetermined,
    ModuleError,
    ModuleHom,
    builtin_group_tables,
    builtin_hopf_algebras,
    check_hopf_axioms,
    cyclic_group_table,
    direct_sum_modules,
    group_algebra,
    hom_space,
    is_isomorphic,
    iso_search,
    left_dual_module,
    regular_module,
    right_dual_module,
    sweedler_algebra,
    taft_algebra,
    tensor_hom,
    tensor_module,
    trivial_module,
    zero_module,
    zigzag_left,
    zigzag_right,
)
from tenscat.hopf.algebra import mutated_copy
from tenscat.hopf.builders import NotAGroupError
from tenscat.hopf.modules import change_basis, module_from_generators, verify_module_law
from tenscat.linalg import QQ, Cyclotomic, ExactMatrix, GF

SWEEDLER = sweedler_algebra()
KC2 = group_algebra(cyclic_group_table(2), name="k[C2]")
TAFT3 = taft_algebra(3)

# Sweedler basis (1, g, x, gx)
ONE, G, X, GX = range(4)


def sign_module(H):
    return next(c for c in group_characters(H) if c.name == "chi-")


def sweedler_chi():
    return module_from_generators(SWEEDLER, {G: [[-1]], X: [[0]]}, name="chi")


def e(H, i):
    return H.algebra.basis(i)


# -- axioms on the built-ins ----------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(builtin_hopf_algebras()))
def test_builtin_passes_axioms(name):
    H = builtin_hopf_algebras()[name]
    rep = check_hopf_axioms(H)
    assert rep.passed, rep.failures()


def test_all_groups_of_order_up_to_eight_are_built_in():
    # numbers of groups of order 1..8 up to isomorphism
    counts = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5}
    tables = builtin_group_tables()
    for order, k in counts.items():
        assert sum(1 for t in tables.values() if len(t) == order) == k


def test_group_algebra_c1_and_c2():
    H1 = group_algebra(cyclic_group_table(1))
    assert H1.dim == 1 and H1.antipode.is_identity()
    assert KC2.dim == 2 and KC2.antipode.is_identity()


def test_group_algebra_s3_antipode_is_inversion():
    table = builtin_group_tables()["S3"]
    H = group_algebra(table)
    assert H.dim == 6
    ident = next(i for i in range(6) if all(table[i][j] == j for j in range(6)))
    for g in range(6):
        col = H.antipode.column(g)
        (h,) = [k for k in range(6) if col[k]]
        assert col[h] == 1 and table[g][h] == ident


def test_not_a_group_rejected():
    with pytest.raises(NotAGroupError):
        group_algebra([[0, 1], [1, 1]])


def test_sweedler_structure_by_hand():
    H = SWEEDLER
    assert H.dim == 4
    m = H.multiply
    assert m(e(H, G), e(H, G)) == e(H, ONE)
    assert m(e(H, X), e(H, X)) == H.algebra.zero_element()
    assert m(e(H, G), e(H, X)) == e(H, GX)
    assert m(e(H, X), e(H, G)) == tuple(-c for c in e(H, GX))
    # Delta(x) = x (x) 1 + g (x) x
    delta_x = H.comultiply(e(H, X))
    nz = {divmod(k, 4): c for k, c in enumerate(delta_x) if c}
    assert nz == {(X, ONE): 1, (G, X): 1}
    assert H.apply_antipode(e(H, G)) == e(H, G)
    assert H.apply_antipode(e(H, X)) == tuple(-c for c in e(H, GX))


def test_sweedler_antipode_axiom_on_x_by_hand():
    # m(S (x) id) Delta(x) = S(x) 1 + S(g) x = -gx + gx = 0 = eps(x) 1
    H = SWEEDLER
    acc = [Fraction(0)] * 4
    for k, c in enumerate(H.comultiply(e(H, X))):
        if c:
            i, j = divmod(k, 4)
            prod = H.multiply(H.apply_antipode(e(H, i)), e(H, j))
            acc = [a + c * p for a, p in zip(acc, prod)]
    assert acc == [0, 0, 0, 0] and H.counit_of(e(H, X)) == 0


def test_sweedler_antipode_has_order_four():
    S = SWEEDLER.antipode
    assert not (S @ S).is_identity()
    assert (S @ S @ S @ S).is_identity()


def test_sweedler_needs_odd_characteristic():
    with pytest.raises(ValueError):
        sweedler_algebra(GF(2))


def test_taft_two_is_sweedler():
    T2 = taft_algebra(2, QQ)
    assert T2.structure_equal(SWEEDLER)


def test_taft_three_dimension():
    assert TAFT3.dim == 9 and TAFT3.field == Cyclotomic(3)


def test_taft_relations():
    H = TAFT3
    n, q = 3, H.taft_q
    F = H.field
    g, x = H.generators
    gx = H.multiply(e(H, g), e(H, x))
    xg = H.multiply(e(H, x), e(H, g))
    assert xg == tuple(F.mul(q, c) for c in gx)
    p = e(H, 0)
    for _ in range(n):
        p = H.multiply(p, e(H, x))
    assert p == H.algebra.zero_element()


def test_taft_over_prime_field():
    H = taft_algebra(3, GF(7))
    assert check_hopf_axioms(H).passed


def test_taft_rejects_non_primitive_root():
    with pytest.raises(ValueError):
        taft_algebra(2, QQ, q=1)
    with pytest.raises(ValueError):
        taft_algebra(3, QQ)


# -- mutations ---------------------------------------------------------------------------------

def test_delta_x_corrupted_to_x_tensor_one():
    bad = mutated_copy(SWEEDLER, "comult", (G * 4 + X, X), delta=-1)
    assert [c for c in bad.comultiply(e(bad, X)) if c] == [1]
    failing = {c.id for c in check_hopf_axioms(bad).failures()}
    assert failing & {"coassociativity", "comult-multiplicative"}


def _mutations(H, part, count, rng):
    d = H.dim
    for _ in range(count):
        if part == "comult":
            idx = (rng.randrange(d * d), rng.randrange(d))
        elif part == "antipode":
            idx = (rng.randrange(d), rng.randrange(d))
        else:
            idx = rng.randrange(d)
        yield idx, mutated_copy(H, part, idx, delta=rng.choice([1, -1, 2]))


@pytest.mark.parametrize("name", ["sweedler", "k[C3]", "k[S3]", "taft3"])
@pytest.mark.parametrize("part", ["comult", "counit", "antipode"])
def test_single_entry_mutations_are_caught(name, part):
    H = builtin_hopf_algebras()[name]
    rng = random.Random(hash((name, part)) % 1000)
    for idx, bad in _mutations(H, part, 10, rng):
        rep = check_hopf_axioms(bad)
        assert not rep.passed, (part, idx)
        assert all(c.data for c in rep.failures())


def test_inconsistent_shapes_rejected():
    H = SWEEDLER
    with pytest.raises(HopfStructureError):
        HopfAlgebra(H.algebra, H.comult, list(H.counit) + [0], H.antipode)
    with pytest.raises(HopfStructureError):
        HopfAlgebra(H.algebra, H.antipode, H.counit, H.antipode)


# -- modules and tensor products ---------------------------------------------------------------------

def test_module_law_is_enforced():
    with pytest.raises(ModuleError):
        module_from_generators(SWEEDLER, {G: [[1]], X: [[1]]})


def test_trivial_tensor_is_identity_on_modules():
    for H in (SWEEDLER, KC2, TAFT3):
        for M in HModuleBackend(H).catalog():
            T = tensor_module(trivial_module(H), M)
            assert T.dim == M.dim
            assert is_isomorphic(T, M) is not None


def test_sign_squared_is_trivial_over_kc2():
    s = sign_module(KC2)
    W = is_isomorphic(tensor_module(s, s), trivial_module(KC2))
    assert W is not None and W.is_invertible()


def test_sweedler_character_squared_is_trivial():
    chi = sweedler_chi()
    T = tensor_module(chi, chi)
    # the square acts by (-1)(-1) = 1 on g and 0 on x
    assert T.rho(G) == ExactMatrix(QQ, [[1]]) and T.rho(X).is_zero()
    assert is_isomorphic(T, trivial_module(SWEEDLER)) is not None


def test_tensor_dimensions_multiply_and_stay_nonzero():
    cat = HModuleBackend(TAFT3).catalog()
    for M in cat:
        for N in cat:
            T = tensor_module(M, N)
            assert T.dim == M.dim * N.dim > 0
            assert verify_module_law(T) is None


def test_tensor_of_homs_is_a_hom():
    M = regular_module(SWEEDLER)
    basis = hom_space(M, M)
    f = tensor_hom(basis[0], basis[-1])
    assert f.source.dim == 16


def test_associator_is_identity_matrix():
    cat = HModuleBackend(TAFT3).catalog()
    rng = random.Random(4)
    for _ in range(5):
        M, N, P = (rng.choice(cat) for _ in range(3))
        A = tensor_module(tensor_module(M, N), P)
        B = tensor_module(M, tensor_module(N, P))
        ModuleHom(A, B, ExactMatrix.identity(TAFT3.field, A.dim))  # checks the intertwining law


def test_tensor_requires_same_algebra():
    with pytest.raises(ModuleError):
        tensor_module(trivial_module(KC2), trivial_module(SWEEDLER))


# -- duals ---------------------------------------------------------------------------------------------

DUAL_CASES = [
    ("sweedler", M) for M in HModuleBackend(SWEEDLER).catalog()
] + [("taft3", M) for M in HModuleBackend(TAFT3).catalog()] + [("kC2", sign_module(KC2))]


@pytest.mark.parametrize("label,M", DUAL_CASES, ids=[f"{a}-{M.name}" for a, M in DUAL_CASES])
def test_left_and_right_duals_satisfy_zigzag(label, M):
    D, ev, coev = left_dual_module(M)
    assert D.dim == M.dim and verify_module_law(D) is None
    assert zigzag_left(M, ev, coev) == (True, True)
    D, ev, coev = right_dual_module(M)
    assert verify_module_law(D) is None
    assert zigzag_right(M, ev, coev) == (True, True)


def test_dual_of_trivial_is_trivial():
    for H in (SWEEDLER, KC2, TAFT3):
        U = trivial_module(H)
        for make in (left_dual_module, right_dual_module):
            assert is_isomorphic(make(U)[0], U) is not None


def test_dual_of_sign_is_sign():
    s = sign_module(KC2)
    assert is_isomorphic(left_dual_module(s)[0], s) is not None
    assert is_isomorphic(right_dual_module(s)[0], s) is not None


def test_zigzag_on_sweedler_projective():
    P = uniserial_taft_module(SWEEDLER, 0, 2)
    assert zigzag_left(P, *left_dual_module(P)[1:]) == (True, True)
    assert zigzag_right(P, *right_dual_module(P)[1:]) == (True, True)


def test_taft_dual_shifts_the_weight():
    # the dual of V(1, 1) is V(2, 1) over Taft(3): characters invert
    V = uniserial_taft_module(TAFT3, 1, 1)
    D = left_dual_module(V)[0]
    assert is_isomorphic(D, uniserial_taft_module(TAFT3, 2, 1)) is not None


# -- hom spaces and isomorphism ------------------------------------------------------------------------

def test_hom_to_itself_contains_identity():
    from tenscat.linalg import solve

    for M in HModuleBackend(SWEEDLER).catalog():
        basis = hom_space(M, M)
        d = M.dim
        assert len(basis) >= 1
        cols = [[f.matrix[i, j] for i in range(d) for j in range(d)] for f in basis]
        A = ExactMatrix.from_columns(QQ, cols, d * d)
        identity = [1 if i == j else 0 for i in range(d) for j in range(d)]
        assert solve(A, identity) is not None


def test_hom_from_trivial_to_sign_is_zero():
    assert hom_space(trivial_module(KC2), sign_module(KC2)) == []


def test_hom_additivity():
    for M in HModuleBackend(SWEEDLER).catalog():
        MM = direct_sum_modules([M, M])
        assert len(hom_space(MM, M)) == 2 * len(hom_space(M, M))


def test_hom_with_zero_module():
    Z = zero_module(SWEEDLER)
    assert hom_space(Z, regular_module(SWEEDLER)) == []


def test_is_isomorphic_basic_cases():
    M = regular_module(SWEEDLER)
    W = is_isomorphic(M, M)
    assert W is not None and W.is_invertible()
    assert is_isomorphic(M, trivial_module(SWEEDLER)) is None
    assert is_isomorphic(trivial_module(KC2), sign_module(KC2)) is None


def test_is_isomorphic_symmetric_and_basis_invariant():
    rng = random.Random(8)
    cat = HModuleBackend(TAFT3).catalog()
    F = TAFT3.field
    for M in cat:
        for N in cat:
            a = iso_search(M, N)[0]
            assert a == iso_search(N, M)[0]
            assert a is not None
            if M.dim == N.dim == 2:
                P = ExactMatrix(F, [[1, rng.randint(-2, 2)], [0, 1]])
                assert iso_search(change_basis(M, P), change_basis(N, P))[0] == a


def test_undetermined_is_not_a_negative():
    err = IsomorphismUndetermined("x")
    assert isinstance(err, RuntimeError)
