from __future__ import annotations

import random

import pytest

from tenscat.abelian import FgAbelianGroup
from tenscat.complexes import (
    BoundedComplex,
    ComplexError,
    HModuleBackend,
    IntegerBackend,
    QuiverBackend,
    cohomology_support,
    random_complex,
    shift,
    stalk,
    unit_stalk,
)
from tenscat.hopf import cyclic_group_table, group_algebra, sweedler_algebra, taft_algebra
from tenscat.linalg import QQ
from tenscat.quiver import a2_quiver
from tenscat.report import FAIL, PASS, UNDETERMINED
from tenscat.verify import (
    AisleSpec,
    aisle_membership,
    deviation_probe,
    deviation_sample,
    heart_membership,
    in_ge,
    in_le,
    kunneth_check,
    kunneth_suite,
    monoidal_aisle_check,
    tensor_reduced_check,
    top_cohomology_square_check,
    unit_concentration_check,
    z6_counterexample,
    z6_pair,
)

SWEEDLER = HModuleBackend(sweedler_algebra())
TAFT3 = HModuleBackend(taft_algebra(3))
KC2 = HModuleBackend(group_algebra(cyclic_group_table(2), name="k[C2]"))
A2 = QuiverBackend(a2_quiver(), QQ)
ZZ = IntegerBackend()


# -- aisles --------------------------------------------------------------------------------------

def test_stalk_aisle_membership():
    M = SWEEDLER.catalog()[0]
    X = stalk(SWEEDLER, M, 2)
    assert in_le(X, 2) and not in_le(X, 1)
    assert in_ge(X, 2) and not in_ge(X, 3)
    assert aisle_membership(X, AisleSpec(5, "le"))
    assert not heart_membership(X)
    assert heart_membership(stalk(SWEEDLER, M, 0))


def test_aisle_spec_rejects_unknown_side():
    with pytest.raises(ValueError):
        AisleSpec(0, "middle")


def test_aisles_shift_compatibly():
    rng = random.Random(1)
    for B in (SWEEDLER, A2, ZZ):
        for _ in range(8):
            X = random_complex(B, rng)
            for n in (-1, 0, 1):
                for k in (-2, 1):
                    assert in_le(X, n) == in_le(shift(X, k), n - k)
                    assert in_ge(X, n) == in_ge(shift(X, k), n - k)


def test_heart_is_intersection_of_aisles():
    rng = random.Random(2)
    for B in (KC2, A2, ZZ):
        for _ in range(15):
            X = random_complex(B, rng, degree_range=(-1, 1))
            assert heart_membership(X) == (in_le(X, 0) and in_ge(X, 0))


# -- top cohomology and unit ------------------------------------------------------------------------

def test_top_cohomology_of_stalk_at_three():
    M = SWEEDLER.catalog()[-1]
    rep = top_cohomology_square_check(stalk(SWEEDLER, M, 3))
    assert rep.passed
    assert rep.case("top").data["degree"] == 6


@pytest.mark.parametrize("m", [0, -1])
def test_top_cohomology_of_unit_stalks(m):
    for B in (SWEEDLER, A2, ZZ):
        rep = top_cohomology_square_check(shift(unit_stalk(B), -m))
        assert rep.passed and rep.case("bottom").data["m"] == m


def test_top_cohomology_needs_nonzero_complex():
    M = KC2.catalog()[0]
    X = BoundedComplex(KC2, 0, [M, M], [KC2.identity(M)])
    with pytest.raises(ComplexError):
        top_cohomology_square_check(X)


def test_unit_concentration_on_every_backend():
    for B in (SWEEDLER, TAFT3, KC2, A2, ZZ):
        rep = unit_concentration_check(B)
        assert rep.passed, B.name


def test_unit_plus_exact_complex_is_still_concentrated():
    for B in (SWEEDLER, A2):
        P, U = B.catalog()[-1], B.unit()
        T = B.direct_sum([U, P])
        d = B.block_mor(P, T, [P], [U, P], {(1, 0): B.identity(P)})
        X = BoundedComplex(B, -1, [P, T], [d])
        assert unit_concentration_check(B, X).passed


def test_exact_complex_fails_concentration():
    P = SWEEDLER.catalog()[-1]
    X = BoundedComplex(SWEEDLER, -1, [P, P], [SWEEDLER.identity(P)])
    rep = unit_concentration_check(SWEEDLER, X)
    assert rep.verdict == FAIL
    assert rep.case("degree+0").verdict == FAIL


def test_shifted_unit_fails_concentration():
    for B in (SWEEDLER, ZZ):
        rep = unit_concentration_check(B, shift(unit_stalk(B), 1))
        assert rep.verdict == FAIL
        assert rep.meta["support"] == [-1]


# -- tensor reducedness ------------------------------------------------------------------------------

def test_tensor_reduced_over_sweedler():
    rep = tensor_reduced_check(SWEEDLER, SWEEDLER.catalog())
    assert rep.passed
    assert not any("cross-annihilation" in n for n in rep.notes)


def test_tensor_reduced_over_z_notes_cross_annihilation():
    sample = [FgAbelianGroup.cyclic(2), FgAbelianGroup.cyclic(3), FgAbelianGroup.free(1), FgAbelianGroup.zero()]
    rep = tensor_reduced_check(ZZ, sample)
    assert rep.passed
    assert any("object-000" in n and "object-001" in n for n in rep.notes)
    assert "excluded" in rep.case("object-003").data["note"]


# -- monoidal aisle conditions ---------------------------------------------------------------------

def test_empty_sample_is_vacuous():
    rep = monoidal_aisle_check([], 0)
    assert rep.passed and rep.cases == []
    assert any("vacuous" in n for n in rep.notes)


def test_z6_pair_fails_condition_two():
    A, X = z6_pair()
    rep = monoidal_aisle_check([A, X], 0)
    fails = rep.failures()
    assert fails and all(c.data["condition"] == 2 for c in fails)
    assert fails[0].data["degree"] == -1


def test_field_backends_satisfy_conditions_at_zero():
    for B in (SWEEDLER, A2):
        sample, pairs = deviation_sample(B, 20, seed=3)
        assert monoidal_aisle_check(sample, 0, pairs=pairs).passed


# -- deviation -----------------------------------------------------------------------------------------

def test_deviation_over_sweedler():
    sample, pairs = deviation_sample(SWEEDLER, 20, seed=4)
    probe = deviation_probe(sample, range(-2, 3), backend=SWEEDLER, pairs=pairs)
    assert probe.unrefuted() == [0]
    for n in (-2, -1, 1, 2):
        assert probe.refuted(n) and n in probe.witnesses
    rep = probe.to_report()
    assert rep.passed
    assert probe.to_dict()["unrefuted"] == [0]


def test_deviation_without_witnesses_is_undetermined():
    sample, pairs = deviation_sample(SWEEDLER, 4, seed=5)
    probe = deviation_probe(sample, [0, 3], augment=False, pairs=pairs)
    rep = probe.to_report()
    assert rep.case("n+0").verdict == PASS
    # without the shifted unit stalks nothing in the sample refutes n = 3
    assert rep.case("n+3").verdict == UNDETERMINED
    assert rep.verdict == UNDETERMINED


def test_deviation_over_empty_range():
    probe = deviation_probe([unit_stalk(KC2)], [])
    assert probe.n_values == [] and probe.unrefuted() == []
    assert probe.to_report().cases == []


def test_augmenting_empty_sample_needs_backend():
    with pytest.raises(ValueError):
        deviation_probe([], [1])


# -- Kunneth and the Z/6 example -------------------------------------------------------------------------

def test_kunneth_over_field_backends():
    for B in (SWEEDLER, KC2, A2):
        rep = kunneth_suite(B, 10, seed=6)
        assert rep.passed, B.name
        assert all(c.data.get("oracle_agrees", True) for c in rep.cases)


def test_kunneth_fails_over_z_in_degree_minus_one():
    A, X = z6_pair()
    rep = kunneth_check(A, X)
    assert [c.data["degree"] for c in rep.failures()] == [-1]
    assert rep.case("degree+0").verdict == PASS


def test_kunneth_needs_one_backend():
    with pytest.raises(ComplexError):
        kunneth_check(unit_stalk(KC2), unit_stalk(SWEEDLER))


def test_kunneth_on_empty_complex():
    E = BoundedComplex(KC2, 1, [], [])
    rep = kunneth_check(E, unit_stalk(KC2))
    assert rep.passed


def test_z6_counterexample_report():
    rep = z6_counterexample()
    assert rep.verdict == FAIL
    assert rep.meta["reproduced"] is True
    assert rep.meta["tensor_cohomology"] == {-1: [2], 0: [2]}
    assert rep.meta["violated_condition"] == 2
    assert rep.meta["kunneth_failures"] == [-1]
    assert cohomology_support(z6_pair()[0]) == [0]
