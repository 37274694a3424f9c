from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from hopfact import linalg
from hopfact.scalar import root_of_unity

small = st.integers(-3, 3)


def test_int64_fast_path_and_object_fallback():
    a = linalg.exact_array([[1, 2], [3, 4]])
    assert a.dtype == np.int64
    b = linalg.exact_array([[Fraction(1, 2), root_of_unity(3)]])
    assert b.dtype == object


def test_overflow_promotes_instead_of_wrapping():
    big = linalg.exact_array([[2**40]])
    out = linalg.matmul(big, big)
    assert int(out[0, 0]) == 2**80


def test_cyclotomic_inverse():
    z = root_of_unity(3)
    M = linalg.exact_array([[1, z], [0, 1]])
    inv = linalg.inverse(M)
    assert linalg.equal(linalg.matmul(M, inv), linalg.exact_array(linalg.identity(2)))


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_nullspace_vectors_are_killed(rows):
    for v in linalg.nullspace(rows, 4):
        assert all(sum(r[i] * v[i] for i in range(4)) == 0 for r in rows)
    assert linalg.rank(rows) + len(linalg.nullspace(rows, 4)) == 4


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_solve_agrees_with_matmul(A, x):
    b = [sum(A[i][j] * x[j] for j in range(3)) for i in range(3)]
    y = linalg.solve(A, b)
    assert y is not None
    assert [sum(A[i][j] * y[j] for j in range(3)) for i in range(3)] == b
