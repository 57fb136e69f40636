from fractions import Fraction

import numpy as np

from koszulkit import linalg as la


def test_rref_mod_identity():
    A = np.array([[1, 2], [3, 4]])
    R, piv = la.rref_mod(A, 5)
    assert piv == [0, 1]
    assert (R == np.eye(2, dtype=int)).all()


def test_right_kernel_mod():
    A = np.array([[1, 2, 3], [2, 4, 6]])
    K = la.right_kernel_mod(A, 7)
    assert K.shape[0] == 2
    assert (la.matmul_mod(A, K.T, 7) == 0).all()


def test_solve_right_mod():
    A = np.array([[2, 1], [1, 1]])
    b = np.array([1, 1])
    x = la.solve_right_mod(A, b, 5)
    assert ((A @ x) % 5 == b % 5).all()
    bad = la.solve_right_mod(np.array([[1, 1], [2, 2]]), np.array([0, 1]), 5)
    assert bad is None


def test_frac_rref_and_kernel():
    A = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
    R, piv = la.frac_rref(A)
    assert len(piv) == 2
    K = la.frac_right_kernel(A)
    assert len(K) == 1
    v = K[0]
    for row in A:
        assert sum(Fraction(a) * b for a, b in zip(row, v)) == 0


def test_frac_solve():
    A = [[2, 0], [0, 3]]
    x = la.frac_solve_right(A, [1, 1])
    assert x == [Fraction(1, 2), Fraction(1, 3)]


def test_hnf_transform():
    M = [[2, 4], [6, 8]]
    H, U = la.hnf_with_transform(M)
    # U @ M == H
    for i in range(2):
        for j in range(2):
            assert sum(U[i][k] * M[k][j] for k in range(2)) == H[i][j]
    # unimodular
    det = U[0][0] * U[1][1] - U[0][1] * U[1][0]
    assert det in (1, -1)


def test_int_left_kernel():
    M = [[1, 2], [2, 4], [3, 6]]
    K = la.int_left_kernel(M)
    assert len(K) == 2
    for x in K:
        assert all(sum(x[i] * M[i][j] for i in range(3)) == 0 for j in range(2))


def test_saturation_halves():
    # Q-span of (2,0) inside Z^2 saturates to Z(1,0)
    rows = [[2, 0]]
    S = la.saturate_rows(rows, 2)
    assert S == [[1, 0]]
    # saturation of the span of (1,1),(1,-1): all of Z^2 (indices 2 lattice)
    S2 = la.saturate_rows([[1, 1], [1, -1]], 2)
    assert S2 == [[1, 0], [0, 1]]


def test_extend_basis_mod():
    sub = np.array([[1, 0, 0]])
    cands = np.array([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])
    chosen = la.extend_basis_mod(sub, cands, 5)
    assert chosen == [1, 3]
