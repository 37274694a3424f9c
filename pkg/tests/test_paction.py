from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfact import linalg
from hopfact.families import (
    cyclic_group_algebra,
    cyclic_ore_datum,
    nichols_partial_action,
    sweedler,
    sweedler_ore_datum,
    sweedler_partial_action,
    target_algebra,
)
from hopfact.fixtures import c2_datum, group_base_action, sweedler_on_truncated
from hopfact.hopfore import TruncatedOre
from hopfact.oracle import verify_derived_example
from hopfact.paction import (
    DimensionMismatch,
    PartialActionMap,
    PreconditionFailed,
    act,
    check_cod_volta,
    check_factorization_nilp,
    check_factorization_nonnilp,
    check_globalization_lemma,
    check_lemma_21,
    check_lemma_23,
    check_lemma_24,
    check_truncation_lemma,
    extend_formula,
    extend_trivial,
    formula_agrees,
    verify_axioms,
)
from hopfact.scalar import root_of_unity

E12 = [0, 1, 0, 0]
E11 = [1, 0, 0, 0]

DERIVED = [
    "c2-idempotent-action", "sweedler-omega-noncentral-pa3", "idempotent-perturbed-fails", "global-taft-action",
    "delta-toy-j-acts", "sweedler-e12-both-hold", "base-on-x-valid", "base-on-x-invalid",
    "cn-compatible-extension", "c2-incompatible-w", "c4-incompatible-w", "sweedler-h8-induced",
    "ideal-acts-nonzero-e11", "taft-global-factorizes", "sweedler-truncation-vanishing",
]


@pytest.mark.parametrize("tag", DERIVED)
def test_derived_examples(tag):
    assert verify_derived_example(tag)


def identity_action(H, R) -> PartialActionMap:
    """h . r = eps(h) r."""
    I = linalg.exact_array(linalg.identity(R.dim))
    return PartialActionMap(H, R, linalg.exact_array([linalg.scale(c, I) for c in linalg.tolist(H.counit)]))


def test_identity_action_passes():
    H, R = sweedler(), target_algebra("m2")
    assert verify_axioms(identity_action(H, R), symmetric=True).ok


def test_shape_is_checked():
    with pytest.raises(DimensionMismatch):
        PartialActionMap(sweedler(), target_algebra("k2"), linalg.zeros((3, 2, 2)))


def test_sweedler_action_values():
    R = target_algebra("m2")
    pa = sweedler_partial_action(R, E12)
    for r in range(4):
        e = [int(k == r) for k in range(4)]
        assert list(act(pa, "x", e).coeffs) == R.multiply(E12, e)
        assert list(act(pa, "gx", e).coeffs) == R.multiply(e, E12)
    assert pa.one_image("g") == [0, 0, 0, 0]


def test_idempotent_identity_on_sweedler_example():
    pa = sweedler_partial_action(target_algebra("m2"), E12)
    assert check_lemma_21(pa, "g", symmetric=True)
    assert check_lemma_21(identity_action(sweedler(), target_algebra("k2")), "g")


def test_globalization_needs_a_unital_g():
    pa = sweedler_partial_action(target_algebra("m2"), E12)
    with pytest.raises(PreconditionFailed):
        check_globalization_lemma(pa, "g", "x")
    assert check_globalization_lemma(identity_action(sweedler(), target_algebra("k2")), "g", "x")


def test_skew_primitive_identities_on_sweedler():
    pa = sweedler_partial_action(target_algebra("m2"), E12)
    assert check_lemma_23(pa, "g", "x", -1).ok


def test_nichols_identities_with_central_parameters():
    pa = nichols_partial_action(3, target_algebra("k2"), [[1, -1], [2, 0]])
    rep = check_lemma_24(pa, "g", "x1", "x2")
    assert rep.ok
    for name in ("x1x2", "gx1x2"):
        assert linalg.is_zero(pa.matrices[pa.hopf.index(name)])


def test_zero_action_passes_the_skew_primitive_checks():
    H, R = sweedler(), target_algebra("k2")
    mats = linalg.zeros((4, 2, 2))
    mats[0] = linalg.identity(2)
    pa = PartialActionMap(H, R, mats)
    assert check_lemma_23(pa, "g", "x", -1).ok


def test_trivial_extension_always_exists():
    datum = cyclic_ore_datum(3, root_of_unity(3))
    pa = group_base_action(datum.base, target_algebra("m2"), [1, 0, 0])
    ext = extend_trivial(pa, datum, cap=3)
    assert verify_axioms(ext).ok
    assert all(linalg.is_zero(M) for M in ext.matrices[3:])


def test_formula_preconditions():
    datum = c2_datum()
    R = target_algebra("k2")
    with pytest.raises(PreconditionFailed, match="g.1_R != 0"):
        extend_formula(identity_action(datum.base, R), datum, [0, 0])


def test_degree_one_values():
    datum = c2_datum()
    R = target_algebra("m2")
    w = [1, 1, 0, -1]
    ext = extend_formula(group_base_action(datum.base, R, [1, 0]), datum, w, cap=2)
    for a in range(2):
        for r in range(4):
            er = [int(k == r) for k in range(4)]
            a_r = list(ext.matrices[a][:, r])
            ga = datum.base.multiply(datum.g_vec(), [int(k == a) for k in range(2)])
            ga_r = linalg.tolist(linalg.matmul(ext.matrix_of(ga + [0] * 4), linalg.exact_array(er)))
            expect = [p - q for p, q in zip(R.multiply(w, a_r), R.multiply(ga_r, w))]
            assert linalg.tolist(ext.matrices[2 + a][:, r]) == expect


def test_x_power_on_one():
    datum = c2_datum()
    R = target_algebra("m2")
    w = [1, 1, 0, -1]
    base = group_base_action(datum.base, R, [1, 0])
    rep = check_truncation_lemma(base, w, datum, 2)
    assert rep.checks[1].holds


def test_summation_without_pointwise():
    datum = sweedler_ore_datum()
    R = target_algebra("m2")
    pa = sweedler_partial_action(R, E12)
    w = [0, 1, -1, 0]
    rep = check_cod_volta(pa, datum, w)
    assert rep.status == "summation holds, pointwise fails"
    assert verify_axioms(extend_formula(pa, datum, w, cap=3)).ok


def test_noncentral_anticommutator_fails():
    datum = sweedler_ore_datum()
    R = target_algebra("m2")
    pa = sweedler_partial_action(R, E12)
    rep = check_cod_volta(pa, datum, E11)
    assert not rep.summation and rep.summation_witness is not None
    assert not verify_axioms(extend_formula(pa, datum, E11, cap=3)).ok


def test_zero_w_factors_through_the_nilpotent_quotient():
    datum = c2_datum()
    ext = extend_formula(group_base_action(datum.base, target_algebra("m2"), [1, 0]), datum, [0] * 4, cap=3)
    rep = check_factorization_nilp(ext, datum, 2)
    assert rep.info["annihilates"] and any(c.startswith("(ii)") for c in rep.info["cases"])


def test_bracket_condition_factors_through_the_radford_quotient():
    datum = cyclic_ore_datum(4, -1)
    ext = extend_formula(group_base_action(datum.base, target_algebra("k2"), [1, 0, 1, 0]), datum, [1, 0], cap=3)
    rep = check_factorization_nonnilp(ext, datum, 2)
    assert rep.info["annihilates"] and any(c.startswith("(ii)") for c in rep.info["cases"])


def test_zero_w_truncation_items_are_trivial():
    datum = c2_datum()
    base = group_base_action(datum.base, target_algebra("k2"), [1, 0])
    rep = check_truncation_lemma(base, [0, 0], datum, 2)
    assert all(c.holds is not False for c in rep.checks)


# -- properties -----------------------------------------------------------------------------------

entries = st.integers(-1, 1)


@given(st.lists(entries, min_size=4, max_size=4))
def test_axiom_routes_agree_on_random_maps(flat):
    R = target_algebra("k2")
    mats = linalg.exact_array([linalg.identity(2), [flat[:2], flat[2:]]])
    rep = verify_axioms(PartialActionMap(cyclic_group_algebra(2), R, mats))
    by_name = {r.name: r.holds for r in rep.results}
    assert (by_name["PA.2"] and by_name["PA.3"]) == by_name["PA.2'"]


@given(st.lists(entries, min_size=4, max_size=4), st.lists(entries, min_size=4, max_size=4))
def test_summation_condition_is_sufficient(omega, w):
    R = target_algebra("m2")
    if not R.is_central(R.multiply(omega, omega)):
        return
    datum = sweedler_ore_datum()
    pa = sweedler_partial_action(R, omega)
    rep = check_cod_volta(pa, datum, w)
    valid = verify_axioms(extend_formula(pa, datum, w, cap=3), prime=False).ok
    assert rep.summation == valid


@given(st.lists(entries, min_size=3, max_size=3))
def test_verified_actions_follow_the_formula(omega):
    R = target_algebra("ut2")
    if not R.is_central(R.multiply(omega, omega)):
        return
    pa = sweedler_on_truncated(R, omega, TruncatedOre(c2_datum(), 4))
    if verify_axioms(pa).ok:
        assert formula_agrees(pa, c2_datum()).holds
