"""Exact dense linear algebra over a prime field.

Matrices are numpy ``int64`` arrays with entries reduced to ``[0, p)``.
Every routine is pure and deterministic: Gaussian elimination always picks
pivots in ascending column order, so echelon forms, kernels and quotient
bases are reproducible across runs.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def is_prime(n: int) -> bool:
    if n <= 1:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def as_matrix(data, p: int) -> np.ndarray:
    """Coerce nested lists / arrays to a reduced int64 matrix."""
    a = np.array(data, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over GF(p).

    Returns the echelon matrix together with the list of pivot columns
    (ascending). The input is not mutated.
    """
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(A: np.ndarray, p: int) -> int:
    return len(rref(A, p)[1])


def linear_solve(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Solve A x = b, returning one solution or None if inconsistent.

    Free variables are set to zero, which makes the answer deterministic.
    """
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"A has {A.shape[0]} rows but b has {b.shape[0]}")
    X = solve_matrix(A, b.reshape(-1, 1), p)
    return None if X is None else X[:, 0]


def solve_matrix(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray | None:
    """Solve A X = B column-wise; None when any column is inconsistent."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    n = A.shape[1]
    R, piv = rref(np.hstack([A, B]), p)
    if any(c >= n for c in piv):
        return None
    X = zeros(n, B.shape[1])
    for r, c in enumerate(piv):
        X[c] = R[r, n:]
    return X


def kernel_basis(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of the null space as the columns of an (n x k) matrix.

    Columns correspond to the free variables in ascending order.
    """
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, piv = rref(A, p)
    free = [j for j in range(n) if j not in piv]
    K = zeros(n, len(free))
    for idx, j in enumerate(free):
        K[j, idx] = 1
        for r, c in enumerate(piv):
            K[c, idx] = (-R[r, j]) % p
    return K


def inverse(A: np.ndarray, p: int) -> np.ndarray | None:
    if A.shape[0] != A.shape[1]:
        raise ValueError("only square matrices can be inverted")
    return solve_matrix(A, eye(A.shape[0]), p)


def column_space_basis(A: np.ndarray, p: int) -> np.ndarray:
    """The pivot columns of A, forming a basis of its column space."""
    _, piv = rref(A, p)
    return np.asarray(A, dtype=np.int64)[:, piv] % p


def quotient_projection(U: np.ndarray, p: int):
    """Coordinates on F^n / col(U).

    Returns ``(proj, section, chosen)`` where ``chosen`` lists the standard
    basis vectors completing col(U) to F^n (ascending, echelon tie-break),
    ``proj`` (q x n) sends a vector to its quotient coordinates and
    ``section`` (n x q) embeds the chosen representatives, so that
    ``proj @ section = I`` and ``proj @ U = 0``.
    """
    U = np.asarray(U, dtype=np.int64) % p
    n, m = U.shape
    _, piv = rref(np.hstack([U, eye(n)]), p)
    u_piv = [j for j in piv if j < m]
    chosen = [j - m for j in piv if j >= m]
    S = np.hstack([U[:, u_piv], eye(n)[:, chosen]])
    Sinv = inverse(S, p)
    assert Sinv is not None
    proj = Sinv[len(u_piv):, :]
    section = eye(n)[:, chosen]
    return proj, section, chosen


def iter_coeff_tuples(p: int, n: int, skip_zero: bool = False):
    """All coefficient tuples in F_p^n in lexicographic order."""
    for t in itertools.product(range(p), repeat=n):
        if skip_zero and not any(t):
            continue
        yield t
