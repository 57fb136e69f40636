"""Exact dense linear algebra kernels.

Three scalar domains, all exact: the prime field F_p (numpy int64 arrays,
word-sized modular arithmetic), the rationals (Fraction rows, normalized to
primitive integer rows during elimination), and the integers (HNF-style row
reduction for lattice kernels and saturations).

Vectors are rows; a subspace is a matrix whose rows form a basis.  Module
action matrices act on column vectors.
"""

from fractions import Fraction
from math import gcd

import numpy as np


# ---------------------------------------------------------------------------
# F_p kernels


def as_mod(A, p):
    M = np.asarray(A, dtype=np.int64)
    return M % p


def rref_mod(A, p):
    """Reduced row echelon form mod p.  Returns (R, pivot_columns)."""
    M = as_mod(A, p).copy()
    if M.ndim != 2:
        raise ValueError("matrix expected")
    nrows, ncols = M.shape
    piv = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = M[r] * pow(int(M[r, c]), p - 2, p) % p
        col = M[:, c].copy()
        col[r] = 0
        M = (M - np.outer(col, M[r])) % p
        piv.append(c)
        r += 1
    return M[:r], piv


def rank_mod(A, p):
    R, piv = rref_mod(A, p)
    return len(piv)


def right_kernel_mod(A, p):
    """Basis (rows) of {v : A v = 0} over F_p."""
    A = as_mod(A, p)
    R, piv = rref_mod(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(piv):
            basis[k, c] = (-int(R[i, f])) % p
    return basis


def left_kernel_mod(A, p):
    """Basis (rows) of {x : x A = 0} over F_p."""
    return right_kernel_mod(as_mod(A, p).T, p)


def solve_right_mod(A, b, p):
    """One solution x of A x = b over F_p, or None if inconsistent.

    b may be a vector or a matrix of stacked column right-hand sides.
    """
    A = as_mod(A, p)
    b = as_mod(b, p)
    vec = b.ndim == 1
    B = b.reshape(-1, 1) if vec else b
    m, n = A.shape
    aug, piv = rref_mod(np.hstack([A, B]), p)
    for i in range(len(piv)):
        if piv[i] >= n:
            return None
    x = np.zeros((n, B.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = aug[i, n:]
    return x[:, 0] if vec else x


def row_space_mod(A, p):
    """Row-space basis in rref form."""
    R, piv = rref_mod(A, p)
    return R


def in_row_space_mod(B_rref, piv, v, p):
    """Membership test against a precomputed rref basis."""
    v = as_mod(v, p).copy()
    for i, c in enumerate(piv):
        if v[c]:
            v = (v - v[c] * B_rref[i]) % p
    return not v.any()


def extend_basis_mod(sub, candidates, p):
    """Indices of candidate rows extending span(sub) to span(sub+candidates)."""
    sub = as_mod(sub, p)
    cur = sub.copy() if sub.size else sub.reshape(0, candidates.shape[1])
    chosen = []
    rk = rank_mod(cur, p) if cur.size else 0
    for idx in range(candidates.shape[0]):
        trial = np.vstack([cur, candidates[idx : idx + 1]])
        r2 = rank_mod(trial, p)
        if r2 > rk:
            cur = trial
            rk = r2
            chosen.append(idx)
    return chosen


def matmul_mod(A, B, p):
    return (as_mod(A, p) @ as_mod(B, p)) % p


# ---------------------------------------------------------------------------
# Rational kernels (Fraction rows, primitive-integer normalization)


def frac_rows(A):
    return [[Fraction(x) for x in row] for row in A]


def primitive_row(row):
    """Scale a rational row to a primitive integer row (gcd 1, 0 row kept)."""
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return [Fraction(0)] * len(row)
    return [Fraction(v // g) for v in ints]


def frac_rref(A):
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns).

    Rows are normalized with pivot entry 1; elimination intermediates are
    kept primitive-integral to contain coefficient growth.
    """
    M = [list(row) for row in frac_rows(A)]
    if not M:
        return [], []
    ncols = len(M[0])
    piv = []
    r = 0
    for c in range(ncols):
        if r >= len(M):
            break
        sel = None
        for i in range(r, len(M)):
            if M[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        M[r], M[sel] = M[sel], M[r]
        inv = Fraction(1) / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = primitive_row([a - f * b for a, b in zip(M[i], M[r])])
        piv.append(c)
        r += 1
    # renormalize pivot rows to leading 1
    for i, c in enumerate(piv):
        inv = Fraction(1) / M[i][c]
        M[i] = [x * inv for x in M[i]]
    return M[:r], piv


def frac_rank(A):
    return len(frac_rref(A)[1])


def frac_right_kernel(A):
    """Basis rows of {v : A v = 0} over Q, as primitive integer rows."""
    R, piv = frac_rref(A)
    n = len(A[0]) if len(A) else 0
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(primitive_row(v))
    return basis


def frac_solve_right(A, b):
    """One solution x of A x = b over Q, or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(frac_rows([A[i]])[0]) + [Fraction(b[i])] for i in range(m)]
    R, piv = frac_rref(aug)
    for i, c in enumerate(piv):
        if c >= n:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return x


def frac_in_row_space(R, piv, v):
    v = [Fraction(t) for t in v]
    for i, c in enumerate(piv):
        if v[c] != 0:
            f = v[c]
            v = [a - f * b for a, b in zip(v, R[i])]
    return all(t == 0 for t in v)


def frac_extend_basis(sub, candidates):
    """Greedy choice of candidate rows completing span(sub)."""
    cur = [list(r) for r in sub]
    R, piv = frac_rref(cur) if cur else ([], [])
    chosen = []
    for idx, cand in enumerate(candidates):
        if not frac_in_row_space(R, piv, cand):
            cur.append(list(cand))
            R, piv = frac_rref(cur)
            chosen.append(idx)
    return chosen


# ---------------------------------------------------------------------------
# Integer lattice kernels


def xgcd(a, b):
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def hnf_with_transform(rows):
    """Row HNF of an integer matrix.  Returns (H, U) with U @ rows == H.

    H is upper-staircase with positive pivots; U is unimodular.
    """
    M = [list(map(int, r)) for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        # find a pivot row at or below r with nonzero entry in column c
        sel = None
        for i in range(r, m):
            if M[i][c]:
                sel = i
                break
        if sel is None:
            continue
        M[r], M[sel] = M[sel], M[r]
        U[r], U[sel] = U[sel], U[r]
        for i in range(r + 1, m):
            while M[i][c]:
                a, b = M[r][c], M[i][c]
                if abs(b) < abs(a):
                    M[r], M[i] = M[i], M[r]
                    U[r], U[i] = U[i], U[r]
                    continue
                q = M[i][c] // M[r][c]
                M[i] = [x - q * y for x, y in zip(M[i], M[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        if M[r][c] < 0:
            M[r] = [-x for x in M[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = M[i][c] // M[r][c]
            if q:
                M[i] = [x - q * y for x, y in zip(M[i], M[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return M, U


def int_left_kernel(M):
    """Basis rows of {x integral : x @ M = 0} for an integer matrix M."""
    H, U = hnf_with_transform(M)
    ker = [U[i] for i in range(len(H)) if not any(H[i])]
    return ker


def saturate_rows(rows, n):
    """Basis of Z^n intersected with the Q-span of the given rational rows.

    Result is an HNF-reduced integer basis of the saturated lattice.
    """
    if not rows:
        return []
    perp = frac_right_kernel(rows)  # primitive integer rows spanning V-perp
    if not perp:
        eye = [[int(i == j) for j in range(n)] for i in range(n)]
        return eye
    # x in V  iff  x . y = 0 for all y in perp
    Mt = [[int(perp[j][i]) for j in range(len(perp))] for i in range(n)]
    ker = int_left_kernel(Mt)
    H, _ = hnf_with_transform(ker) if ker else ([], [])
    return [row for row in H if any(row)]
