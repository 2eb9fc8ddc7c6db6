from __future__ import annotations

import random

import pytest

from tenscat.abelian import FgAbelianGroup, GroupHom, invariant_factors, is_iso, is_zero_hom, multiplication
from tenscat.complexes import (
    BackendError,
    BoundedComplex,
    ChainMap,
    ComplexError,
    HModuleBackend,
    IntegerBackend,
    QuiverBackend,
    cohomology,
    cohomology_support,
    dual_complex,
    dual_zigzag,
    induced_map_on_cohomology,
    is_quasi_isomorphism,
    random_complex,
    right_dual_complex,
    shift,
    stalk,
    total_tensor,
    truncate_ge,
    truncate_le,
    unit_stalk,
)
from tenscat.complexes.complex import (
    compose_chain_maps,
    identity_chain_map,
    tensor_chain_maps,
    truncate_ge_with_map,
    truncate_le_with_map,
    zero_chain_map,
)
from tenscat.hopf import group_algebra, cyclic_group_table, sweedler_algebra, taft_algebra
from tenscat.hopf.modules import hom_space, iso_search
from tenscat.linalg import QQ, IntMatrix, rank
from tenscat.quiver import a2_quiver

SWEEDLER = HModuleBackend(sweedler_algebra())
TAFT3 = HModuleBackend(taft_algebra(3))
KC2 = HModuleBackend(group_algebra(cyclic_group_table(2), name="k[C2]"))
A2 = QuiverBackend(a2_quiver(), QQ)
ZZ = IntegerBackend()
FIELD_BACKENDS = [SWEEDLER, KC2, A2]

Z1 = FgAbelianGroup.free(1)
Z6 = FgAbelianGroup.cyclic(6)


def z_doubling():
    return BoundedComplex(ZZ, -1, [Z1, Z1], [GroupHom(Z1, Z1, IntMatrix([[2]]))])


def oracle_dims(X):
    """Total cohomology dimensions from matrix ranks alone."""
    B = X.backend
    out = {}
    for n in X.degrees:
        d = sum(B.fiber_dims(X.obj(n)))
        out[n] = d - rank(B.mor_matrix(X.d(n))) - rank(B.mor_matrix(X.d(n - 1)))
    return out


def cohomology_dims(X):
    B = X.backend
    return {n: B.dim(cohomology(X, n)) for n in X.degrees}


# -- construction ----------------------------------------------------------------------------

def test_d_squared_enforced():
    with pytest.raises(ComplexError):
        BoundedComplex(ZZ, 0, [Z1, Z1, Z1], [multiplication(Z1, 1), multiplication(Z1, 1)])


def test_random_complexes_are_valid():
    for B in FIELD_BACKENDS + [ZZ, TAFT3]:
        rng = random.Random(1)
        for _ in range(10):
            X = random_complex(B, rng)
            assert X.check_d_squared() is None
            assert X.hi - X.lo + 1 <= 4
            assert -3 <= X.lo and X.hi <= 3


# -- total tensor ----------------------------------------------------------------------------

@pytest.mark.parametrize("B", FIELD_BACKENDS + [ZZ, TAFT3], ids=lambda B: B.name)
def test_total_tensor_squares_to_zero(B):
    rng = random.Random(2)
    for _ in range(8):
        X, Y = random_complex(B, rng), random_complex(B, rng)
        T = total_tensor(X, Y)
        assert T.check_d_squared() is None
        assert (T.lo, T.hi) == (X.lo + Y.lo, X.hi + Y.hi)


def test_stalk_tensor_stalk():
    for B in FIELD_BACKENDS:
        cat = B.catalog()
        A, C = cat[0], cat[-1]
        T = total_tensor(stalk(B, A, 0), stalk(B, C, 0))
        assert (T.lo, T.hi) == (0, 0)
        expected = [a * c for a, c in zip(B.fiber_dims(A), B.fiber_dims(C))]
        if B is not A2:
            expected = [B.dim(A) * B.dim(C)]
        assert B.fiber_dims(T.obj(0)) == expected


def test_z6_tensor_doubling_is_doubling_on_z6():
    T = total_tensor(stalk(ZZ, Z6, 0), z_doubling())
    assert (T.lo, T.hi) == (-1, 0)
    assert invariant_factors(T.obj(-1)) == [6] and invariant_factors(T.obj(0)) == [6]
    assert T.d(-1).matrix == IntMatrix([[2]])


def test_unit_stalk_tensor_is_identity_on_a2():
    rng = random.Random(3)
    for _ in range(10):
        X = random_complex(A2, rng)
        T = total_tensor(unit_stalk(A2), X)
        assert (T.lo, T.hi) == (X.lo, X.hi)
        for n in X.degrees:
            assert T.obj(n) == X.obj(n)
            if n < X.hi:
                assert T.d(n).components == X.d(n).components


def test_unit_stalk_tensor_preserves_cohomology():
    rng = random.Random(4)
    for B in (SWEEDLER, KC2):
        for _ in range(5):
            X = random_complex(B, rng)
            T = total_tensor(X, unit_stalk(B))
            for n in X.degrees:
                assert iso_search(cohomology(T, n), cohomology(X, n))[0] is True


def test_backend_mismatch_rejected():
    with pytest.raises(ComplexError):
        total_tensor(unit_stalk(SWEEDLER), unit_stalk(KC2))


def test_kunneth_at_stalk_level():
    for B in FIELD_BACKENDS:
        for A in B.catalog():
            for C in B.catalog():
                H0 = cohomology(total_tensor(stalk(B, A), stalk(B, C)), 0)
                assert B.dim(H0) == B.dim(B.tensor(A, C))


# -- cohomology -------------------------------------------------------------------------------

@pytest.mark.parametrize("B", FIELD_BACKENDS + [TAFT3], ids=lambda B: B.name)
def test_cohomology_matches_rank_oracle(B):
    rng = random.Random(5)
    for _ in range(10):
        X = random_complex(B, rng)
        assert cohomology_dims(X) == oracle_dims(X)
        Y = random_complex(B, rng)
        T = total_tensor(X, Y)
        assert cohomology_dims(T) == oracle_dims(T)


def test_exact_complex_has_no_cohomology():
    for B in FIELD_BACKENDS:
        A = B.catalog()[-1]
        X = BoundedComplex(B, 0, [A, A], [B.identity(A)])
        assert cohomology_support(X) == []


def test_stalk_cohomology():
    A = SWEEDLER.catalog()[-1]
    X = stalk(SWEEDLER, A, 2)
    assert cohomology_support(X) == [2]
    assert iso_search(cohomology(X, 2), A)[0] is True
    assert SWEEDLER.is_zero(cohomology(X, 0))


def test_z6_example_cohomology():
    T = total_tensor(stalk(ZZ, Z6, 0), z_doubling())
    assert invariant_factors(cohomology(T, -1)) == [2]
    assert invariant_factors(cohomology(T, 0)) == [2]


def test_doubling_complex_cohomology_over_z():
    X = z_doubling()
    assert cohomology(X, -1).is_trivial()
    assert invariant_factors(cohomology(X, 0)) == [2]


# -- shift -------------------------------------------------------------------------------------

def test_shift_of_stalk():
    A = KC2.catalog()[0]
    S = shift(stalk(KC2, A, 0), 1)
    assert (S.lo, S.hi) == (-1, -1) and S.obj(-1) is A


def test_shift_is_involutive():
    rng = random.Random(6)
    for B in FIELD_BACKENDS + [ZZ]:
        for _ in range(5):
            X = random_complex(B, rng)
            Y = shift(shift(X, 1), -1)
            assert (Y.lo, Y.hi) == (X.lo, X.hi)
            for n in X.degrees:
                assert Y.obj(n) == X.obj(n)
                assert B.mor_equal(Y.d(n), X.d(n))


def test_odd_shift_keeps_d_squared_zero():
    rng = random.Random(7)
    X = random_complex(SWEEDLER, rng, lo=-1, hi=1, max_len=3)
    while X.hi - X.lo < 2:
        X = random_complex(SWEEDLER, rng, lo=-1, hi=1, max_len=3)
    for k in (1, 3, -1):
        S = shift(X, k)
        assert S.check_d_squared() is None
        for n in X.degrees:
            assert SWEEDLER.dim(cohomology(S, n - k)) == SWEEDLER.dim(cohomology(X, n))


# -- truncations -------------------------------------------------------------------------------

def test_truncations_of_stalk():
    A = SWEEDLER.catalog()[-1]
    X = stalk(SWEEDLER, A, 0)
    T, incl = truncate_le_with_map(X, 0)
    assert is_quasi_isomorphism(incl) is True
    assert cohomology_support(truncate_le(X, -1)) == []
    assert cohomology_support(truncate_ge(X, 1)) == []
    assert cohomology_support(truncate_ge(X, 0)) == [0]


def test_truncation_of_z6_example():
    T = total_tensor(stalk(ZZ, Z6, 0), z_doubling())
    L = truncate_le(T, -1)
    assert cohomology_support(L) == [-1]
    assert invariant_factors(cohomology(L, -1)) == [2]


@pytest.mark.parametrize("B", FIELD_BACKENDS + [ZZ], ids=lambda B: B.name)
def test_truncation_triangle(B):
    rng = random.Random(8)
    for _ in range(10):
        X = random_complex(B, rng)
        for n in (-1, 0, 1):
            L, i = truncate_le_with_map(X, n)
            R, p = truncate_ge_with_map(X, n + 1)
            assert i.check_commutes() is None and p.check_commutes() is None
            comp = compose_chain_maps(p, i)
            assert all(B.is_zero_mor(comp.component(k)) for k in comp.degrees)
            for k in X.degrees:
                if k <= n:
                    assert B.is_iso_mor(induced_map_on_cohomology(i, k))
                    assert B.is_zero(cohomology(R, k))
                else:
                    assert B.is_iso_mor(induced_map_on_cohomology(p, k))
                    assert B.is_zero(cohomology(L, k))


# -- quasi-isomorphisms and induced maps ----------------------------------------------------------

def test_identity_is_quasi_isomorphism():
    X = random_complex(SWEEDLER, random.Random(9))
    assert is_quasi_isomorphism(identity_chain_map(X)) is True


def test_zero_map_is_not_quasi_isomorphism():
    A = KC2.catalog()[0]
    X = stalk(KC2, A)
    assert is_quasi_isomorphism(zero_chain_map(X, X)) is False


def test_doubling_complex_projects_quasi_isomorphically():
    X = z_doubling()
    Z2 = FgAbelianGroup.cyclic(2)
    f = ChainMap(X, stalk(ZZ, Z2, 0), {0: GroupHom(Z1, Z2, IntMatrix([[1]]))})
    assert is_quasi_isomorphism(f) is True


def _qiso_sample(B, rng):
    X = random_complex(B, rng)
    while not cohomology_support(X):
        X = random_complex(B, rng)
    m = min(cohomology_support(X))
    _, p = truncate_ge_with_map(X, m)
    return p


@pytest.mark.parametrize("B", [SWEEDLER, KC2, A2], ids=lambda B: B.name)
def test_tensor_preserves_quasi_isomorphisms_over_fields(B):
    rng = random.Random(10)
    for _ in range(6):
        f = _qiso_sample(B, rng)
        assert is_quasi_isomorphism(f) is True
        Y = random_complex(B, rng)
        g = tensor_chain_maps(f, identity_chain_map(Y))
        assert g.check_commutes() is None
        assert is_quasi_isomorphism(g) is True


def test_induced_map_of_doubling_on_z6():
    S = stalk(ZZ, Z6, 0)
    f = ChainMap(S, S, {0: multiplication(Z6, 2)})
    h = induced_map_on_cohomology(f, 0)
    assert not is_zero_hom(h) and not is_iso(h)
    assert ZZ.mor_equal(h, multiplication(cohomology(S, 0), 2))


def test_induced_maps_are_functorial():
    rng = random.Random(11)
    for B in FIELD_BACKENDS + [ZZ]:
        for _ in range(5):
            X = random_complex(B, rng)
            L, i = truncate_le_with_map(X, 0)
            R, p = truncate_ge_with_map(X, -1)
            pi = compose_chain_maps(p, i)
            for n in X.degrees:
                lhs = induced_map_on_cohomology(pi, n)
                rhs = B.compose(induced_map_on_cohomology(p, n), induced_map_on_cohomology(i, n))
                assert B.mor_equal(lhs, rhs)
            ident = induced_map_on_cohomology(identity_chain_map(X), 0)
            assert B.mor_equal(ident, B.identity(cohomology(X, 0)))


# -- dual complexes ---------------------------------------------------------------------------------

def test_dual_of_unit_stalk():
    for B in (SWEEDLER, TAFT3, KC2):
        Y, ev, coev = dual_complex(unit_stalk(B))
        assert (Y.lo, Y.hi) == (0, 0)
        assert iso_search(Y.obj(0), B.unit())[0] is True


def test_dual_of_stalk_moves_degree():
    for B in (SWEEDLER, TAFT3):
        for k in (-2, 1, 3):
            M = B.catalog()[-1]
            for make in (dual_complex, right_dual_complex):
                Y, _, _ = make(stalk(B, M, k))
                assert (Y.lo, Y.hi) == (-k, -k)
                assert B.dim(Y.obj(-k)) == B.dim(M)


@pytest.mark.parametrize("B", [SWEEDLER, TAFT3, KC2], ids=lambda B: B.name)
def test_dual_complexes_satisfy_zigzag(B):
    rng = random.Random(12)
    for _ in range(6):
        X = random_complex(B, rng)
        for left, make in ((True, dual_complex), (False, right_dual_complex)):
            Y, ev, coev = make(X)
            assert Y.check_d_squared() is None
            assert ev.check_commutes() is None and coev.check_commutes() is None
            assert dual_zigzag(X, Y, ev, coev, left=left) == (True, True)


def test_length_two_sweedler_complex_dual():
    B = SWEEDLER
    P, Q = B.catalog()[2], B.catalog()[3]
    f = hom_space(P, Q)[0]
    assert not f.matrix.is_zero()
    X = BoundedComplex(B, -1, [P, Q], [f])
    Y, ev, coev = dual_complex(X)
    assert (Y.lo, Y.hi) == (0, 1)
    assert ev.check_commutes() is None and coev.check_commutes() is None
    assert dual_zigzag(X, Y, ev, coev) == (True, True)


def test_displayed_sign_breaks_the_evaluation():
    B = SWEEDLER
    P = B.catalog()[-1]
    X = BoundedComplex(B, 0, [P, P], [B.identity(P)])
    _, ev, _ = dual_complex(X, displayed_sign=True)
    assert ev.check_commutes() is not None
    _, ev, _ = dual_complex(X)
    assert ev.check_commutes() is None


def test_dual_needs_rigid_backend():
    with pytest.raises(BackendError):
        dual_complex(unit_stalk(A2))
    with pytest.raises(BackendError):
        right_dual_complex(unit_stalk(ZZ))
