from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfact import linalg
from hopfact.algcore import validate_hopf
from hopfact.families import (
    FinGroup,
    InvalidDatum,
    NotAGroup,
    RankOneDatum,
    WNotCentral,
    check_isomorphism,
    cyclic_group_algebra,
    global_sweedler_ore_action,
    group_algebra,
    nichols,
    nichols_isomorphism,
    nichols_iterative,
    nichols_partial_action,
    radford,
    rank_one,
    rank_one_via_ore,
    sweedler,
    sweedler_partial_action,
    taft,
    target_algebra,
)
from hopfact.fixtures import m2_sign_conjugation
from hopfact.oracle import verify_derived_example
from hopfact.paction import verify_axioms
from hopfact.scalar import root_of_unity

DERIVED = [
    "c6-table", "sweedler-grouplikes", "sweedler-antipode-order", "nichols-validate", "sweedler-m2-e12-symmetric",
    "sweedler-m2-e11-rejected", "nichols-3-k2-valid", "nichols-path-equality", "global-inner-derivation-e12",
    "global-dx-square-rejected",
]


@pytest.mark.parametrize("tag", DERIVED)
def test_derived_examples(tag):
    assert verify_derived_example(tag)


def test_small_cyclic_algebras():
    assert cyclic_group_algebra(1).dim == 1
    C2 = cyclic_group_algebra(2)
    assert C2.dim == 2 and validate_hopf(C2).ok


def test_group_table_must_be_a_group():
    with pytest.raises(NotAGroup):
        FinGroup.from_table(["a", "b"], [[0, 0], [0, 0]])


def test_klein_group_algebra():
    A = group_algebra([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    assert validate_hopf(A).ok


def test_sweedler_dimension():
    assert sweedler().dim == 4


def test_rank_one_named_cases():
    # x*g = -gx identifies the rank-one basis with the Sweedler basis
    T = linalg.exact_array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
    assert check_isomorphism(rank_one(RankOneDatum.cyclic(2, -1, 0)), sweedler(), T)
    assert taft(4, 2, -1).dim == 8
    assert radford(3, 3, root_of_unity(3)).dim == 9


def test_invalid_datum():
    with pytest.raises(InvalidDatum):
        RankOneDatum.cyclic(3, 1, 0)


def test_nichols_small_cases():
    assert linalg.equal(nichols(2).mult, sweedler().mult)
    assert nichols(3).dim == 8


def test_nichols_tower_is_isomorphic():
    tower = nichols_iterative(3)
    assert check_isomorphism(tower.algebras[-1], nichols(3), nichols_isomorphism(3, tower))


def test_zero_parameters():
    R = target_algebra("m2")
    pa = sweedler_partial_action(R, [0, 0, 0, 0])
    assert verify_axioms(pa, symmetric=True).ok
    assert verify_axioms(nichols_partial_action(3, R, [[0] * 4, [0] * 4]), symmetric=True).ok


def test_noncentral_nichols_parameter():
    with pytest.raises(WNotCentral):
        nichols_partial_action(3, target_algebra("m2"), [[0, 1, 0, 0], [0] * 4])


def test_global_action_with_zero_derivations():
    z = linalg.zeros((4, 4))
    pa = global_sweedler_ore_action(target_algebra("m2"), m2_sign_conjugation(), z, z, cap=3)
    assert verify_axioms(pa).ok


@pytest.mark.parametrize("n, d, k, beta", [(2, 2, 1, 0), (3, 3, 1, 0), (4, 2, 2, 0), (4, 4, 1, 1), (6, 3, 2, 1)])
def test_two_constructions_agree(n, d, k, beta):
    q = root_of_unity(d)
    D = RankOneDatum.cyclic(n, q, beta)
    assert linalg.equal(rank_one(D).mult, rank_one_via_ore(D).mult)
    assert validate_hopf(rank_one(D)).ok


@given(st.lists(st.sampled_from([-1, 0, 1, 2]), min_size=2, max_size=2),
       st.lists(st.sampled_from([-1, 0, 1, 2]), min_size=2, max_size=2))
def test_nichols_action_shape(w1, w2):
    R = target_algebra("k2")
    pa = nichols_partial_action(3, R, [w1, w2])
    H = pa.hopf
    for name, w in (("x1", w1), ("x2", w2)):
        assert linalg.equal(pa.matrices[H.index(name)], R.left_matrix(w))
    for i, lab in enumerate(H.basis_labels):
        if lab.count("x") >= 2:
            assert linalg.is_zero(pa.matrices[i])
    assert verify_axioms(pa, symmetric=True).ok
