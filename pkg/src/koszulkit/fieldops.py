"""Field-dispatched dense matrix operations.

FpOps wraps the numpy mod-p kernels, QQOps the Fraction kernels, behind one
small interface so the homological algorithms can stay field-generic.
Matrices are numpy int64 arrays (mod p) or lists of Fraction lists (over Q);
subspaces are row-basis matrices in either representation.
"""

from fractions import Fraction

import numpy as np

from . import linalg as la


class FieldError(ValueError):
    pass


class FpOps:
    """Exact arithmetic in the prime field F_p."""

    kind = "Fp"

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, FpOps) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"

    def matrix(self, rows):
        M = np.asarray(rows, dtype=np.int64) % self.p
        return M

    def zeros(self, m, n):
        return np.zeros((m, n), dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def matmul(self, A, B):
        return (A @ B) % self.p

    def add(self, A, B):
        return (A + B) % self.p

    def sub(self, A, B):
        return (A - B) % self.p

    def scale(self, c, A):
        return (int(c) * A) % self.p

    def neg(self, A):
        return (-A) % self.p

    def transpose(self, A):
        return A.T.copy()

    def trace(self, A):
        return int(np.trace(A)) % self.p

    def is_zero(self, A):
        return not (np.asarray(A) % self.p).any()

    def equal(self, A, B):
        return not ((A - B) % self.p).any()

    def rank(self, A):
        if A.size == 0:
            return 0
        return la.rank_mod(A, self.p)

    def rref(self, A):
        return la.rref_mod(A, self.p)

    def right_kernel(self, A):
        return la.right_kernel_mod(A, self.p)

    def left_kernel(self, A):
        return la.left_kernel_mod(A, self.p)

    def solve_right(self, A, b):
        return la.solve_right_mod(A, b, self.p)

    def vstack(self, mats):
        mats = [m for m in mats if m.shape[0]]
        if not mats:
            raise FieldError("empty stack")
        return np.vstack(mats) % self.p

    def row(self, vec):
        return self.matrix([vec])

    def nrows(self, A):
        return A.shape[0]

    def ncols(self, A):
        return A.shape[1]

    def entry(self, A, i, j):
        return int(A[i, j])

    def scalar(self, x):
        return int(x) % self.p

    def inv_scalar(self, x):
        return pow(int(x) % self.p, self.p - 2, self.p)

    def in_row_space(self, rref, piv, v):
        return la.in_row_space_mod(rref, piv, np.asarray(v), self.p)

    def extend_basis(self, sub, candidates):
        return la.extend_basis_mod(sub, candidates, self.p)

    def to_lists(self, A):
        return [[int(x) for x in row] for row in A]


class QQOps:
    """Exact arithmetic over the rationals (Fraction rows)."""

    kind = "QQ"

    def __eq__(self, other):
        return isinstance(other, QQOps)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def matrix(self, rows):
        return [[Fraction(x) for x in row] for row in rows]

    def zeros(self, m, n):
        return [[Fraction(0)] * n for _ in range(m)]

    def eye(self, n):
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def matmul(self, A, B):
        n = len(B)
        cols = len(B[0]) if n else 0
        out = []
        for row in A:
            acc = [Fraction(0)] * cols
            for k, a in enumerate(row):
                if a:
                    Bk = B[k]
                    for j in range(cols):
                        if Bk[j]:
                            acc[j] += a * Bk[j]
            out.append(acc)
        return out

    def add(self, A, B):
        return [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(A, B)]

    def sub(self, A, B):
        return [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(A, B)]

    def scale(self, c, A):
        c = Fraction(c)
        return [[c * a for a in row] for row in A]

    def neg(self, A):
        return [[-a for a in row] for row in A]

    def transpose(self, A):
        return [list(col) for col in zip(*A)]

    def trace(self, A):
        return sum(A[i][i] for i in range(len(A)))

    def is_zero(self, A):
        return all(all(x == 0 for x in row) for row in A)

    def equal(self, A, B):
        return all(
            all(x == y for x, y in zip(r1, r2)) for r1, r2 in zip(A, B)
        )

    def rank(self, A):
        if not A:
            return 0
        return la.frac_rank(A)

    def rref(self, A):
        return la.frac_rref(A)

    def right_kernel(self, A):
        return la.frac_right_kernel(A)

    def left_kernel(self, A):
        return la.frac_right_kernel(self.transpose(A))

    def solve_right(self, A, b):
        if isinstance(b[0], (list, tuple)):
            cols = []
            for j in range(len(b[0])):
                col = la.frac_solve_right(A, [row[j] for row in b])
                if col is None:
                    return None
                cols.append(col)
            return self.transpose(cols)
        return la.frac_solve_right(A, list(b))

    def vstack(self, mats):
        out = []
        for m in mats:
            out.extend([list(r) for r in m])
        if not out:
            raise FieldError("empty stack")
        return out

    def row(self, vec):
        return self.matrix([vec])

    def nrows(self, A):
        return len(A)

    def ncols(self, A):
        return len(A[0]) if A else 0

    def entry(self, A, i, j):
        return A[i][j]

    def scalar(self, x):
        return Fraction(x)

    def inv_scalar(self, x):
        return Fraction(1) / Fraction(x)

    def in_row_space(self, rref, piv, v):
        return la.frac_in_row_space(rref, piv, v)

    def extend_basis(self, sub, candidates):
        return la.frac_extend_basis(sub, candidates)

    def to_lists(self, A):
        return [list(row) for row in A]


def field_from_name(name):
    name = name.strip()
    if name == "Q":
        return QQOps()
    if name.startswith("F"):
        return FpOps(int(name[1:]))
    raise FieldError(f"unknown field {name!r}")


def field_name(ops):
    return "Q" if ops.kind == "QQ" else f"F{ops.p}"
