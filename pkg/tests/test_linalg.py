import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hoveyforge import linalg

PRIMES = [2, 3, 5, 7]


def test_solve_identity_over_f2():
    A = linalg.eye(2)
    x = linalg.linear_solve(A, np.array([1, 0]), 2)
    assert list(x) == [1, 0]


def test_solve_inconsistent():
    A = linalg.zeros(1, 1)
    assert linalg.linear_solve(A, np.array([1]), 2) is None


def test_solve_upper_triangular_over_f2():
    A = np.array([[1, 1], [0, 1]])
    x = linalg.linear_solve(A, np.array([0, 1]), 2)
    assert list(x) == [1, 1]
    assert list((A @ x) % 2) == [0, 1]


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        linalg.linear_solve(linalg.eye(2), np.array([1]), 2)


def test_kernel_of_identity_is_empty():
    assert linalg.kernel_basis(linalg.eye(3), 2).shape == (3, 0)


def test_kernel_of_zero_is_full():
    K = linalg.kernel_basis(linalg.zeros(2, 2), 2)
    assert K.shape == (2, 2)


def test_kernel_rank_nullity_example():
    K = linalg.kernel_basis(np.array([[1, 1]]), 2)
    assert K.shape == (1, 2)[::-1]
    assert list(K[:, 0]) == [1, 1]


def test_quotient_projection_basics():
    U = np.array([[1], [0]])
    proj, section, chosen = linalg.quotient_projection(U, 2)
    assert chosen == [1]
    assert proj.shape == (1, 2)
    assert np.array_equal((proj @ U) % 2, linalg.zeros(1, 1))
    assert np.array_equal((proj @ section) % 2, linalg.eye(1))


def test_quotient_projection_empty_space():
    proj, section, chosen = linalg.quotient_projection(linalg.zeros(0, 0), 3)
    assert chosen == []
    assert proj.shape == (0, 0)


def test_inverse_singular_is_none():
    assert linalg.inverse(linalg.zeros(2, 2), 2) is None


@st.composite
def matrix_and_prime(draw):
    p = draw(st.sampled_from(PRIMES))
    rows = draw(st.integers(0, 5))
    cols = draw(st.integers(0, 5))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols,
                            max_size=rows * cols))
    return np.array(entries, dtype=np.int64).reshape(rows, cols), p


@given(matrix_and_prime())
@settings(max_examples=150, deadline=None)
def test_kernel_columns_are_in_kernel(mp):
    A, p = mp
    K = linalg.kernel_basis(A, p)
    assert not ((A @ K) % p).any()
    assert linalg.rank(A, p) + K.shape[1] == A.shape[1]


@given(matrix_and_prime())
@settings(max_examples=150, deadline=None)
def test_rref_is_idempotent(mp):
    A, p = mp
    R, piv = linalg.rref(A, p)
    R2, piv2 = linalg.rref(R, p)
    assert np.array_equal(R, R2) and piv == piv2


@given(matrix_and_prime())
@settings(max_examples=150, deadline=None)
def test_solve_returns_actual_solutions(mp):
    A, p = mp
    if A.shape[1] == 0:
        return
    x0 = np.arange(A.shape[1]) % p
    b = (A @ x0) % p
    x = linalg.linear_solve(A, b, p)
    assert x is not None
    assert np.array_equal((A @ x) % p, b)


@given(matrix_and_prime())
@settings(max_examples=100, deadline=None)
def test_quotient_projection_properties(mp):
    U, p = mp
    proj, section, chosen = linalg.quotient_projection(U, p)
    n = U.shape[0]
    q = len(chosen)
    assert q == n - linalg.rank(U, p)
    if U.shape[1]:
        assert not ((proj @ U) % p).any()
    assert np.array_equal((proj @ section) % p, linalg.eye(q))
