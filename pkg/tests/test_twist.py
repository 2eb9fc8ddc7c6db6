from __future__ import annotations

import pytest

from tenscat.hopf import (
    TwistElement,
    TwistError,
    builtin_group_tables,
    builtin_hopf_algebras,
    check_hopf_axioms,
    drinfeld_twist,
    group_algebra,
    perturbed_identity_twist,
    sweedler_algebra,
    validate_twist,
)
from tenscat.hopf.twist import bicharacter_twist_c2xc2, klein_twist

BUILTINS = builtin_hopf_algebras()


def _klein_pair(table):
    """Two commuting involutions generating a Klein four-subgroup."""
    n = len(table)
    ident = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    inv = [a for a in range(n) if a != ident and table[a][a] == ident]
    for a in inv:
        for b in inv:
            if a < b and table[a][b] == table[b][a]:
                return a, b
    return None


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_identity_twist_is_bit_identical(name):
    H = BUILTINS[name]
    HJ = drinfeld_twist(H, TwistElement.identity(H))
    assert HJ.algebra.mult == H.algebra.mult
    assert HJ.unit == H.unit
    assert HJ.comult == H.comult
    assert HJ.counit == H.counit
    assert HJ.antipode == H.antipode
    assert HJ.structure_equal(H)


@pytest.mark.parametrize("name", ["sweedler", "k[S3]", "taft3", "k[C4]"])
def test_perturbed_identity_fails_the_cocycle_clause(name):
    H = BUILTINS[name]
    J = perturbed_identity_twist(H, seed=1)
    rep = validate_twist(J)
    assert [c.id for c in rep.failures()] == ["cocycle"]
    with pytest.raises(TwistError) as info:
        drinfeld_twist(H, J)
    assert info.value.clause == "cocycle"
    case = info.value.report.case("cocycle")
    assert case.data["lhs"] != case.data["rhs"]


def test_bicharacter_twist_is_valid_and_trivial_on_commutative_algebra():
    H, J = bicharacter_twist_c2xc2()
    assert validate_twist(J).passed
    HJ = drinfeld_twist(H, J)
    assert check_hopf_axioms(HJ).passed
    assert HJ.comult == H.comult


@pytest.mark.parametrize("group", ["D4", "C2xC2xC2", "C2xC4"])
def test_klein_twists_yield_hopf_algebras(group):
    table = builtin_group_tables()[group]
    H = group_algebra(table, name=group)
    a, b = _klein_pair(table)
    J = klein_twist(H, a, b)
    assert validate_twist(J).passed
    HJ = drinfeld_twist(H, J)
    assert check_hopf_axioms(HJ).passed
    assert HJ.counit == H.counit


def test_klein_twist_on_d4_changes_the_coproduct():
    table = builtin_group_tables()["D4"]
    H = group_algebra(table)
    J = klein_twist(H, *_klein_pair(table))
    HJ = drinfeld_twist(H, J)
    assert HJ.comult != H.comult
    assert check_hopf_axioms(HJ).passed


def test_klein_twist_needs_commuting_involutions():
    H = group_algebra(builtin_group_tables()["C4"])
    with pytest.raises(ValueError):
        klein_twist(H, 1, 2)


def test_twist_of_other_algebra_rejected():
    H = sweedler_algebra()
    other = BUILTINS["k[C4]"]
    with pytest.raises(ValueError):
        drinfeld_twist(H, TwistElement.identity(other))
