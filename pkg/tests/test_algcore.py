from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfact import linalg
from hopfact.algcore import (
    FinAlgebra,
    NotAHopfIdeal,
    center,
    grouplikes,
    ideal_span,
    matrix_algebra,
    quotient_hopf,
    skew_primitives,
    upper_triangular_algebra,
    validate_algebra,
    validate_hopf,
)
from hopfact.families import cyclic_group_algebra, nichols, radford, sweedler, taft, target_algebra
from hopfact.oracle import verify_derived_example
from hopfact.scalar import root_of_unity

FAMILIES = {
    "sweedler": sweedler,
    "kC_5": lambda: cyclic_group_algebra(5),
    "taft(3,3)": lambda: taft(3, 3, root_of_unity(3)),
    "taft(4,2)": lambda: taft(4, 2, -1),
    "radford(2,2)": lambda: radford(2, 2, -1),
    "nichols(3)": lambda: nichols(3),
}


@pytest.mark.parametrize("tag", [
    "perturbed-tensor-witness", "antipode-identity-fails", "taft-grouplikes", "sweedler-skew-primitives", "ut2-center",
])
def test_derived_examples(tag):
    assert verify_derived_example(tag)


def test_sweedler_validates():
    rep = validate_hopf(sweedler())
    assert rep.ok and rep.witness is None


def test_matrix_algebra_validates():
    assert validate_algebra(matrix_algebra(2)).ok


def test_perturbed_unit_is_reported_first():
    R = matrix_algebra(2)
    bad = FinAlgebra(R.basis_labels, R.mult, [1, 0, 0, 0])
    rep = validate_algebra(bad)
    assert not rep.ok
    assert rep.violations[0].axiom.startswith("unit")


def test_sweedler_grouplikes():
    H = sweedler()
    assert {e.coeffs for e in grouplikes(H)} == {(1, 0, 0, 0), (0, 1, 0, 0)}


def test_nichols_skew_primitives_contain_the_generators():
    H = nichols(3)
    P = [p.coeffs for p in skew_primitives(H, H.basis("g"), H.one())]
    for name in ("x1", "x2"):
        v = [int(i == H.index(name)) for i in range(H.dim)]
        assert linalg.in_span([list(p) for p in P], v)


def test_quotient_dimension_count():
    H = cyclic_group_algebra(4)
    gen = [1, 0, -1, 0]
    Q = quotient_hopf(H, [gen])
    assert Q.dim == H.dim - len(ideal_span(H, [gen]).basis) == 2
    assert validate_hopf(Q).ok


def test_non_hopf_ideal_is_rejected():
    H = sweedler()
    with pytest.raises(NotAHopfIdeal):
        quotient_hopf(H, [[0, 1, 0, 0]])


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_grouplikes_form_a_group(name):
    H = FAMILIES[name]()
    G = {e.coeffs for e in grouplikes(H)}
    assert tuple(H.unit) in G
    for a in G:
        for b in G:
            assert tuple(H.multiply(list(a), list(b))) in G


@pytest.mark.parametrize("name", ["k2", "k3", "ut2", "m2"])
def test_center_commutes_with_basis(name):
    R = target_algebra(name)
    for z in center(R):
        for i in range(R.dim):
            e = [int(k == i) for k in range(R.dim)]
            assert R.multiply(list(z.coeffs), e) == R.multiply(e, list(z.coeffs))


@given(st.sampled_from(sorted(FAMILIES)), st.data())
def test_family_products_are_associative(name, data):
    H = FAMILIES[name]()
    vec = st.lists(st.integers(-2, 2), min_size=H.dim, max_size=H.dim)
    a, b, c = data.draw(vec), data.draw(vec), data.draw(vec)
    assert H.multiply(H.multiply(a, b), c) == H.multiply(a, H.multiply(b, c))


def test_upper_triangular_center_is_scalars():
    R = upper_triangular_algebra()
    assert [z.coeffs for z in center(R)] in ([(1, 0, 1)], [tuple(R.unit)])
