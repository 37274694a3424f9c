from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfact.oracle import verify_derived_example
from hopfact.qcomb import (
    NotARootOfUnity,
    check_identity_idq,
    check_lemma_22,
    check_lemma_23,
    check_radford,
    decompose,
    evaluate,
    ext_coefficient,
    polynomial_gauss,
    qbinom,
    table_for,
)
from hopfact.scalar import fpow, root_of_unity, simplify

ROOTS = [root_of_unity(N) for N in range(2, 9)]


@pytest.mark.parametrize("tag", [
    "qbinom-2-1", "gauss-3-1", "idq-5-2-zeta4", "radford-3-2-minus1", "radford-4-2-minus1", "alternating-sum-2-1-1-zeta3",
])
def test_derived_examples(tag):
    assert verify_derived_example(tag)


def test_boundary_values():
    q = root_of_unity(5)
    assert qbinom(0, 0, q) == 1
    assert qbinom(3, 4, q) == 0
    assert qbinom(3, -1, q) == 0
    assert qbinom(7, 0, q) == qbinom(7, 7, q) == 1


def test_qbinom_2_1_is_one_plus_q():
    for q in (2, Fraction(-3, 2), root_of_unity(7)):
        assert qbinom(2, 1, q) == simplify(1 + q)


def test_gaussian_polynomial_3_1():
    assert polynomial_gauss(3, 1) == (1, 1, 1)
    assert polynomial_gauss(4, 2) == (1, 1, 2, 1, 1)


def test_even_over_odd_at_minus_one_vanishes():
    for j in range(0, 12, 2):
        for k in range(1, j, 2):
            assert qbinom(j, k, -1) == 0


def test_idq_at_zeta3():
    assert check_identity_idq(2, 1, root_of_unity(3))


def test_radford_needs_a_root_of_unity():
    with pytest.raises(NotARootOfUnity):
        check_radford(4, 2, 2)


def test_memo_satisfies_the_recurrence():
    q = root_of_unity(6)
    t = table_for(q)
    t(9, 4)
    assert t.memo[(0, 0)] == 1
    for (n, m), v in t.memo.items():
        if n and 0 < m < n:
            assert v == simplify(t(n - 1, m) + fpow(q, n - m) * t(n - 1, m - 1))


def test_extension_coefficient_at_degree_zero():
    q = root_of_unity(4)
    assert ext_coefficient(5, 0, q) == 1
    assert ext_coefficient(1, 1, q) == -1


@given(st.integers(0, 200), st.integers(1, 12))
def test_decompose(k, N):
    d = decompose(k, N)
    assert d.k_D * N + d.k_R == k and 0 <= d.k_R < N


@given(st.integers(0, 14), st.data(), st.sampled_from(ROOTS + [2, Fraction(-3, 2)]))
def test_oracle_agreement_and_symmetry(n, data, q):
    m = data.draw(st.integers(0, n))
    assert qbinom(n, m, q) == evaluate(polynomial_gauss(n, m), q)
    assert polynomial_gauss(n, m) == polynomial_gauss(n, n - m)


@given(st.integers(0, 10), st.integers(0, 10), st.integers(0, 10), st.sampled_from(ROOTS))
def test_identities_on_roots(i, j, k, q):
    n, m = max(i, j), min(i, j)
    assert check_identity_idq(n, m, q)
    assert check_radford(n, m, q)
    assert check_lemma_22(i, j, k, q)
    assert check_lemma_23(i, j, k, q)
