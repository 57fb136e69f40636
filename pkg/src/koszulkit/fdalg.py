"""Exact engine for finite-dimensional associative algebras.

Structure-constant presentations over F_p or Q, with optional Z-gradings
and optional X-gradings (weight tuples attached to basis elements).
Provides radicals and radical series, block decompositions, basic algebras,
idempotent truncations, duals, and trace-ideal quotients.  The homological
layer (resolutions, graded Ext tables) lives in homology.py and is
re-exported here.

Conventions: scalars live behind fieldops; an algebra is a tensor
T[i][j][k] = coefficient of b_k in b_i * b_j; module action matrices act on
column coordinate vectors; subspaces are row-basis matrices.
"""

from fractions import Fraction

import numpy as np

from . import linalg as la
from .fieldops import FieldError, FpOps, QQOps


class AlgebraError(ValueError):
    pass


class NonSplitError(AlgebraError):
    """A simple module with endomorphism ring bigger than the base field."""


_ASSOC_FULL_LIMIT = 140  # full triple check capped by the float-exactness bound


# ---------------------------------------------------------------------------
# algebras


class Algebra:
    def __init__(
        self,
        ops,
        tensor,
        labels=None,
        unit=None,
        grading=None,
        x_grading=None,
        generators=None,
        check=True,
    ):
        self.ops = ops
        self.dim = len(tensor)
        self.labels = tuple(labels) if labels else tuple(f"b{i}" for i in range(self.dim))
        if ops.kind == "Fp":
            self.tensor = np.asarray(tensor, dtype=np.int64) % ops.p
        else:
            self.tensor = [
                [[Fraction(x) for x in row] for row in plane] for plane in tensor
            ]
        self.grading = tuple(grading) if grading is not None else None
        self.x_grading = (
            tuple(tuple(w) for w in x_grading) if x_grading is not None else None
        )
        self.generators = tuple(generators) if generators is not None else None
        self._left = None
        self._right = None
        self._wedderburn = None
        self._radical_rep = None
        self.unit = self._find_unit(unit)
        if check:
            self._check_associative()
            if self.grading is not None:
                self._check_grading()
            if self.x_grading is not None:
                self._check_x_grading()

    # -- structure tensors --------------------------------------------------

    def left_stack(self):
        """L[i] = matrix of left multiplication by b_i on column coords."""
        if self._left is None:
            if self.ops.kind == "Fp":
                self._left = self.tensor.transpose(0, 2, 1).copy()
            else:
                d = self.dim
                self._left = [
                    [[self.tensor[i][j][k] for j in range(d)] for k in range(d)]
                    for i in range(d)
                ]
        return self._left

    def right_stack(self):
        """R[j] = matrix of right multiplication by b_j."""
        if self._right is None:
            if self.ops.kind == "Fp":
                self._right = self.tensor.transpose(1, 2, 0).copy()
            else:
                d = self.dim
                self._right = [
                    [[self.tensor[i][j][k] for i in range(d)] for k in range(d)]
                    for j in range(d)
                ]
        return self._right

    def left_matrix(self, vec):
        """Matrix of left multiplication by the element with coordinates vec."""
        if self.ops.kind == "Fp":
            v = np.asarray(vec, dtype=np.int64) % self.ops.p
            return np.tensordot(v, self.left_stack(), axes=1) % self.ops.p
        d = self.dim
        out = self.ops.zeros(d, d)
        L = self.left_stack()
        for i, c in enumerate(vec):
            if c:
                out = self.ops.add(out, self.ops.scale(c, L[i]))
        return out

    def right_matrix(self, vec):
        if self.ops.kind == "Fp":
            v = np.asarray(vec, dtype=np.int64) % self.ops.p
            return np.tensordot(v, self.right_stack(), axes=1) % self.ops.p
        d = self.dim
        out = self.ops.zeros(d, d)
        R = self.right_stack()
        for j, c in enumerate(vec):
            if c:
                out = self.ops.add(out, self.ops.scale(c, R[j]))
        return out

    def multiply(self, x, y):
        if self.ops.kind == "Fp":
            return (self.left_matrix(x) @ (np.asarray(y, dtype=np.int64) % self.ops.p)) % self.ops.p
        M = self.left_matrix(x)
        return [sum(M[k][j] * Fraction(y[j]) for j in range(self.dim)) for k in range(self.dim)]

    def power(self, x, n):
        out = list(self.unit) if self.ops.kind == "QQ" else self.unit.copy()
        base = x
        while n:
            if n & 1:
                out = self.multiply(out, base)
            base = self.multiply(base, base)
            n >>= 1
        return out

    # -- construction checks --------------------------------------------------

    def _find_unit(self, unit):
        d = self.dim
        if unit is not None:
            u = self.ops.matrix([unit])[0] if self.ops.kind == "QQ" else np.asarray(unit, dtype=np.int64) % self.ops.p
            lm = self.left_matrix(u)
            rm = self.right_matrix(u)
            if not (self.ops.equal(lm, self.ops.eye(d)) and self.ops.equal(rm, self.ops.eye(d))):
                raise AlgebraError("declared identity does not act as a unit")
            return u
        if self.ops.kind == "Fp":
            T = self.tensor
            M1 = T.transpose(1, 2, 0).reshape(d * d, d)
            M2 = T.transpose(0, 2, 1).reshape(d * d, d)
            rhs = np.eye(d, dtype=np.int64).reshape(d * d)
            sol = self.ops.solve_right(np.vstack([M1, M2]), np.concatenate([rhs, rhs]))
            if sol is None:
                raise AlgebraError("algebra has no identity element")
            return sol % self.ops.p
        rows = []
        rhs = []
        for j in range(d):
            for k in range(d):
                rows.append([self.tensor[i][j][k] for i in range(d)])
                rhs.append(Fraction(int(j == k)))
                rows.append([self.tensor[j][i][k] for i in range(d)])
                rhs.append(Fraction(int(j == k)))
        sol = self.ops.solve_right(rows, rhs)
        if sol is None:
            raise AlgebraError("algebra has no identity element")
        return sol

    def _check_associative(self):
        d = self.dim
        if self.ops.kind == "Fp":
            L = self.left_stack().astype(np.float64)
            R = self.right_stack().astype(np.float64)
            if d > _ASSOC_FULL_LIMIT:
                raise AlgebraError("algebra too large for the full associativity check")
            # (b_i x) b_j = b_i (x b_j) for all basis triples <=> L_i R_j = R_j L_i
            for i in range(d):
                X = np.matmul(L[i], R)
                Y = np.matmul(R, L[i])
                if ((X - Y) % self.ops.p).any():
                    raise AlgebraError("structure constants are not associative")
            return
        # Q path: clear denominators, then exact float check if整 small, else loops
        den = 1
        mx = 0
        for plane in self.tensor:
            for row in plane:
                for x in row:
                    den = den * x.denominator // np.gcd(den, x.denominator)
        for plane in self.tensor:
            for row in plane:
                for x in row:
                    mx = max(mx, abs(int(x * den)))
        if den < 10**6 and d * mx * mx * den * den < 2**52 and d <= _ASSOC_FULL_LIMIT:
            T = np.array(
                [[[float(x * den) for x in row] for row in plane] for plane in self.tensor]
            )
            L = T.transpose(0, 2, 1)
            R = T.transpose(1, 2, 0)
            for i in range(d):
                if (np.matmul(L[i], R) != np.matmul(R, L[i])).any():
                    raise AlgebraError("structure constants are not associative")
            return
        for i in range(d):  # pragma: no cover - big-fraction fallback
            Li = self.left_matrix(_unit_vec(self, i))
            for j in range(d):
                Rj = self.right_matrix(_unit_vec(self, j))
                if not self.ops.equal(self.ops.matmul(Li, Rj), self.ops.matmul(Rj, Li)):
                    raise AlgebraError("structure constants are not associative")

    def _check_grading(self):
        g = self.grading
        d = self.dim
        if len(g) != d or any(x < 0 for x in g):
            raise AlgebraError("grading must assign a nonnegative grade per basis element")
        for i, j, k in self._support():
            if g[k] != g[i] + g[j]:
                raise AlgebraError(f"grading violated at product {i},{j} -> {k}")

    def _check_x_grading(self):
        w = self.x_grading
        for i, j, k in self._support():
            if tuple(a + b for a, b in zip(w[i], w[j])) != tuple(w[k]):
                raise AlgebraError(f"X-grading violated at product {i},{j} -> {k}")

    def _support(self):
        if self.ops.kind == "Fp":
            idx = np.nonzero(self.tensor)
            return zip(idx[0].tolist(), idx[1].tolist(), idx[2].tolist())
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    if self.tensor[i][j][k]:
                        out.append((i, j, k))
        return out

    # -- derived algebras ------------------------------------------------------

    def opposite(self):
        d = self.dim
        if self.ops.kind == "Fp":
            T = self.tensor.transpose(1, 0, 2).copy()
        else:
            T = [[[self.tensor[j][i][k] for k in range(d)] for j in range(d)] for i in range(d)]
        return Algebra(
            self.ops,
            T,
            labels=self.labels,
            unit=self.unit,
            grading=self.grading,
            x_grading=self.x_grading,
            check=False,
        )

    def grade0_subalgebra(self):
        """The grade-0 part as an algebra, with the inclusion index list."""
        if self.grading is None:
            raise AlgebraError("algebra is not graded")
        idx = [i for i, g in enumerate(self.grading) if g == 0]
        rows = [[int(i == j) for j in range(self.dim)] for i in idx]
        unit = self.unit
        return subalgebra(self, self.ops.matrix(rows), unit_vec=unit), idx

    def to_dict(self):
        from .serialize import algebra_to_dict

        return algebra_to_dict(self)


def _unit_vec(A, i):
    if A.ops.kind == "Fp":
        v = np.zeros(A.dim, dtype=np.int64)
        v[i] = 1
        return v
    v = [Fraction(0)] * A.dim
    v[i] = Fraction(1)
    return v


def _vecs_from_rows(ops, rows):
    if ops.kind == "Fp":
        return [rows[i] for i in range(rows.shape[0])]
    return [list(r) for r in rows]


# ---------------------------------------------------------------------------
# modules


class Module:
    def __init__(self, algebra, action, grading=None, x_grading=None, check=True):
        self.algebra = algebra
        self.ops = algebra.ops
        if self.ops.kind == "Fp":
            self.action = [np.asarray(m, dtype=np.int64) % self.ops.p for m in action]
            self.dim = self.action[0].shape[0] if self.action else 0
        else:
            self.action = [self.ops.matrix(m) for m in action]
            self.dim = len(self.action[0]) if self.action else 0
        self.grading = tuple(grading) if grading is not None else None
        self.x_grading = (
            tuple(tuple(w) for w in x_grading) if x_grading is not None else None
        )
        if check:
            self._check_module()

    def act_vec(self, avec, v):
        """Action of the algebra element with coordinates avec on v."""
        M = self.act_matrix(avec)
        if self.ops.kind == "Fp":
            return (M @ v) % self.ops.p
        return [sum(M[i][j] * Fraction(v[j]) for j in range(self.dim)) for i in range(self.dim)]

    def act_matrix(self, avec):
        if self.ops.kind == "Fp":
            v = np.asarray(avec, dtype=np.int64) % self.ops.p
            return np.tensordot(v, np.stack(self.action), axes=1) % self.ops.p
        out = self.ops.zeros(self.dim, self.dim)
        for i, c in enumerate(avec):
            if c:
                out = self.ops.add(out, self.ops.scale(c, self.action[i]))
        return out

    def _check_module(self):
        A = self.algebra
        d, m = A.dim, self.dim
        if len(self.action) != d:
            raise AlgebraError("need one action matrix per algebra basis element")
        if not self.ops.equal(self.act_matrix(A.unit), self.ops.eye(m)):
            raise AlgebraError("unit does not act as identity")
        if self.ops.kind == "Fp":
            act = np.stack(self.action).astype(np.float64)
            T = A.tensor
            for i in range(d):
                lhs = np.matmul(act[i], act)
                rhs = np.tensordot(T[i].astype(np.float64), act, axes=([1], [0]))
                if ((lhs - rhs) % self.ops.p).any():
                    raise AlgebraError(f"action is not a homomorphism at basis {i}")
        else:
            for i in range(d):
                for j in range(d):
                    lhs = self.ops.matmul(self.action[i], self.action[j])
                    rhs = self.ops.zeros(m, m)
                    for k in range(d):
                        c = A.tensor[i][j][k]
                        if c:
                            rhs = self.ops.add(rhs, self.ops.scale(c, self.action[k]))
                    if not self.ops.equal(lhs, rhs):
                        raise AlgebraError("action is not a homomorphism")
        if self.grading is not None:
            if A.grading is None:
                raise AlgebraError("graded module over ungraded algebra")
            for i in range(d):
                gi = A.grading[i]
                for r, c in self._mat_support(self.action[i]):
                    if self.grading[r] != self.grading[c] + gi:
                        raise AlgebraError("module grading incompatible with action")
        if self.x_grading is not None:
            if A.x_grading is None:
                raise AlgebraError("X-graded module over an algebra without X-grading")
            for i in range(d):
                wi = A.x_grading[i]
                for r, c in self._mat_support(self.action[i]):
                    if tuple(a + b for a, b in zip(self.x_grading[c], wi)) != tuple(
                        self.x_grading[r]
                    ):
                        raise AlgebraError("module X-grading incompatible with action")

    def _mat_support(self, M):
        if self.ops.kind == "Fp":
            idx = np.nonzero(M)
            return zip(idx[0].tolist(), idx[1].tolist())
        out = []
        for r in range(self.dim):
            for c in range(self.dim):
                if M[r][c]:
                    out.append((r, c))
        return out

    def shift(self, r):
        """M<r>: an element of grade g lands in grade g + r."""
        if self.grading is None:
            raise AlgebraError("cannot shift an ungraded module")
        return Module(
            self.algebra,
            self.action,
            grading=tuple(g + r for g in self.grading),
            x_grading=self.x_grading,
            check=False,
        )

    def x_shift(self, nu):
        """M<nu>: add nu to every X-weight."""
        if self.x_grading is None:
            raise AlgebraError("cannot X-shift a module without X-grading")
        return Module(
            self.algebra,
            self.action,
            grading=self.grading,
            x_grading=tuple(tuple(a + b for a, b in zip(w, nu)) for w in self.x_grading),
            check=False,
        )

    def forget_grading(self):
        return Module(self.algebra, self.action, check=False)


def regular_module(A, graded=True):
    """A as a left module over itself."""
    return Module(
        A,
        A.left_stack(),
        grading=A.grading if graded else None,
        x_grading=A.x_grading if graded else None,
        check=False,
    )


# ---------------------------------------------------------------------------
# subspace plumbing: graded-adapted bases, submodules, quotients


def graded_components(ops, rows, keys):
    """Split a row space into its key-homogeneous parts.

    keys: one hashable per coordinate (grade, or (grade, xweight)).  Returns
    {key: rows}; raises if the space is not the direct sum of the parts.
    """
    n = ops.ncols(rows)
    total = ops.rank(rows)
    out = {}
    found = 0
    for key in sorted(set(keys), key=repr):
        other = [j for j in range(n) if keys[j] != key]
        if not other:
            piece = rows
        else:
            if ops.kind == "Fp":
                sub = rows[:, other]
            else:
                sub = [[row[j] for j in other] for row in rows]
            combos = ops.left_kernel(sub)
            if ops.nrows(combos) == 0:
                continue
            piece = ops.matmul(combos, rows)
        r = ops.rank(piece)
        if r:
            R, piv = ops.rref(piece)
            if ops.kind == "Fp":
                out[key] = R
            else:
                out[key] = R
            found += r
    if found != total:
        raise AlgebraError("subspace is not compatible with the grading")
    return out


def _coordinate_keys(module):
    if module.grading is None and module.x_grading is None:
        return None
    if module.x_grading is None:
        return list(module.grading)
    if module.grading is None:
        return [("x", w) for w in module.x_grading]
    return list(zip(module.grading, module.x_grading))


def adapted_basis_rows(module, rows):
    """A key-homogeneous basis of the given submodule rows, with its keys.

    Returns (basis_rows, grades, x_weights); the latter two are None when the
    module carries no corresponding structure.
    """
    ops = module.ops
    keys = _coordinate_keys(module)
    if keys is None:
        R, _ = ops.rref(rows)
        return R, None, None
    comps = graded_components(ops, rows, keys)
    pieces = []
    grades = []
    xweights = []
    for key in sorted(comps, key=repr):
        piece = comps[key]
        for t in range(ops.nrows(piece)):
            if ops.kind == "Fp":
                pieces.append(piece[t : t + 1])
            else:
                pieces.append([piece[t]])
            if module.grading is not None and module.x_grading is not None:
                grades.append(key[0])
                xweights.append(key[1])
            elif module.grading is not None:
                grades.append(key)
            else:
                xweights.append(key[1])
    basis = ops.vstack(pieces) if pieces else ops.matrix([[0] * module.dim])[0:0]
    return (
        basis,
        tuple(grades) if module.grading is not None else None,
        tuple(xweights) if module.x_grading is not None else None,
    )


def submodule(module, rows):
    """(S, inclusion_columns): the submodule spanned by the rows.

    inclusion is dim(M) x dim(S) with basis vectors as columns.
    """
    ops = module.ops
    basis, grades, xweights = adapted_basis_rows(module, rows)
    k = ops.nrows(basis)
    inc = ops.transpose(basis)
    action = []
    for M in module.action:
        img = ops.matmul(M, inc)
        coef = ops.solve_right(inc, img)
        if coef is None:
            raise AlgebraError("rows do not span a submodule")
        action.append(coef)
    S = Module(module.algebra, action, grading=grades, x_grading=xweights, check=False)
    return S, inc


def quotient_module(module, rows):
    """(Q, projection): quotient of the module by the row span.

    projection is dim(Q) x dim(M).
    """
    ops = module.ops
    basis, _, _ = adapted_basis_rows(module, rows)
    k = ops.nrows(basis)
    m = module.dim
    # complement by coordinate vectors (homogeneous by construction)
    if ops.kind == "Fp":
        cands = ops.eye(m)
    else:
        cands = ops.eye(m)
    chosen = ops.extend_basis(basis, cands)
    if len(chosen) != m - k:
        raise AlgebraError("could not complete quotient basis")
    if ops.kind == "Fp":
        comp = cands[chosen] if chosen else np.zeros((0, m), dtype=np.int64)
        full = np.vstack([basis, comp]) if k else comp
    else:
        comp = [cands[i] for i in chosen]
        full = [list(r) for r in basis] + [list(r) for r in comp]
    C = ops.transpose(full)  # columns: sub basis then complement
    Cinv = ops.solve_right(C, ops.eye(m))
    if ops.kind == "Fp":
        proj = Cinv[k:, :]
    else:
        proj = [Cinv[i] for i in range(k, m)]
    q = m - k
    action = []
    inc_comp = ops.transpose(comp)
    for M in module.action:
        action.append(ops.matmul(proj, ops.matmul(M, inc_comp)))
    grades = tuple(module.grading[i] for i in chosen) if module.grading is not None else None
    xw = tuple(module.x_grading[i] for i in chosen) if module.x_grading is not None else None
    Q = Module(module.algebra, action, grading=grades, x_grading=xw, check=False)
    return Q, proj


def dual_module(module, involution=None):
    """Vector-space dual: over A^op, or over A via a simple-fixing involution.

    With an involution iota (an anti-automorphism matrix sending weight nu to
    -nu), the dual is again an A-module with b acting by iota(b)^T; X-weights
    are preserved and Z-grades negated.  Without one, the result is a module
    over algebra.opposite() with both gradings negated.
    """
    A = module.algebra
    ops = module.ops
    if involution is None:
        B = A.opposite()
        action = [ops.transpose(m) for m in module.action]
        xw = (
            tuple(tuple(-c for c in w) for w in module.x_grading)
            if module.x_grading is not None
            else None
        )
        grades = (
            tuple(-g for g in module.grading) if module.grading is not None else None
        )
        return Module(B, action, grading=grades, x_grading=xw, check=False)
    iota = involution
    action = []
    for i in range(A.dim):
        col = iota[:, i] if ops.kind == "Fp" else [iota[r][i] for r in range(A.dim)]
        action.append(ops.transpose(module.act_matrix(col)))
    grades = tuple(-g for g in module.grading) if module.grading is not None else None
    return Module(A, action, grading=grades, x_grading=module.x_grading, check=False)


def check_involution(A, iota):
    """iota must be a grade-preserving anti-automorphism with iota^2 = 1."""
    ops = A.ops
    if not ops.equal(ops.matmul(iota, iota), ops.eye(A.dim)):
        raise AlgebraError("involution is not self-inverse")
    for i in range(A.dim):
        for j in range(A.dim):
            x = _unit_vec(A, i)
            y = _unit_vec(A, j)
            ix = _apply(ops, iota, x)
            iy = _apply(ops, iota, y)
            lhs = _apply(ops, iota, A.multiply(x, y))
            rhs = A.multiply(iy, ix)
            if ops.kind == "Fp":
                if ((lhs - rhs) % ops.p).any():
                    raise AlgebraError("not an anti-homomorphism")
            else:
                if any(a != b for a, b in zip(lhs, rhs)):
                    raise AlgebraError("not an anti-homomorphism")


def _apply(ops, M, v):
    if ops.kind == "Fp":
        return (M @ v) % ops.p
    n = len(v)
    return [sum(M[i][j] * v[j] for j in range(n)) for i in range(n)]


# ---------------------------------------------------------------------------
# radical


def _batched_power_mod(stack, e, p):
    """Batch matrix power stack[b]^e mod p (stack: (B, m, m) int64)."""
    B, m, _ = stack.shape
    out = np.broadcast_to(np.eye(m, dtype=np.int64), (B, m, m)).copy()
    base = stack % p
    while e:
        if e & 1:
            out = np.matmul(out, base) % p
        base = np.matmul(base, base) % p
        e >>= 1
    return out


def radical_rows(A, rep=None):
    """Basis rows of the Jacobson radical.

    Over F_p: the iterated p-power trace criterion on a faithful
    representation (the regular one unless a smaller faithful rep is given).
    Over Q: kernel of the trace form of the regular representation.
    Postconditions asserted: the result is a nilpotent two-sided ideal whose
    quotient has vanishing radical under the same criterion.
    """
    ops = A.ops
    if rep is None:
        rep = A.left_stack()
    if ops.kind == "QQ":
        rows = _radical_qq(A, rep)
    else:
        rows = _radical_fp(A, rep)
    _assert_nilpotent_ideal(A, rows)
    return rows


def _rep_stack_fp(A, rep):
    mats = np.stack([np.asarray(m, dtype=np.int64) % A.ops.p for m in rep])
    if mats.shape[0] != A.dim:
        raise AlgebraError("representation needs one matrix per basis element")
    # faithfulness: no nonzero element acts by zero
    flat = mats.reshape(A.dim, -1)
    if A.ops.rank(flat) != A.dim:
        raise AlgebraError("representation is not faithful")
    return mats


def _radical_fp(A, rep):
    ops = A.ops
    p = ops.p
    mats = _rep_stack_fp(A, rep)
    n = mats.shape[1]
    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1
    basis = ops.eye(A.dim)
    weights = A.x_grading
    for i in range(levels + 1):
        m = ops.nrows(basis)
        if m == 0:
            break
        if weights is not None and m:
            # re-adapt to weight-homogeneous rows (the chain stays X-graded)
            comps = graded_components(ops, basis, list(weights))
            basis = ops.vstack([comps[k] for k in sorted(comps, key=repr)])
            m = ops.nrows(basis)
        elems = (basis.astype(np.int64) @ mats.reshape(A.dim, -1)).reshape(m, n, n) % p
        if weights is not None:
            wt = [_row_weight(A, basis[t]) for t in range(m)]
        pairs = []
        for a in range(m):
            for b in range(m):
                if weights is not None and wt[a] is not None and wt[b] is not None:
                    if any(x + y for x, y in zip(wt[a], wt[b])):
                        continue
                pairs.append((a, b))
        if not pairs:
            gram = np.zeros((m, m), dtype=np.int64)
        else:
            prods = np.matmul(
                elems[[a for a, _ in pairs]], elems[[b for _, b in pairs]]
            ) % p
            powers = _batched_power_mod(prods, p**i, p)
            traces = np.trace(powers, axis1=1, axis2=2) % p
            gram = np.zeros((m, m), dtype=np.int64)
            for (a, b), tr in zip(pairs, traces):
                gram[a, b] = tr
        combos = ops.right_kernel(ops.transpose(gram))
        # rows x of gram*x... we need {x : sum_k x_k gram[b,k] = 0 for all b}
        basis = (combos @ basis) % p if combos.shape[0] else basis[:0]
    R, _ = ops.rref(basis) if ops.nrows(basis) else (basis, [])
    return R


def _row_weight(A, row):
    """X-weight of a homogeneous row, or None if mixed/zero."""
    if A.x_grading is None:
        return None
    idx = np.nonzero(np.asarray(row))[0]
    if len(idx) == 0:
        return None
    w = A.x_grading[int(idx[0])]
    for t in idx[1:]:
        if A.x_grading[int(t)] != w:
            return None
    return w


def _radical_qq(A, rep):
    ops = A.ops
    d = A.dim
    # integer fast path via numpy if the rep is integral and small enough
    as_int = None
    try:
        arr = np.array(
            [[[_exact_int(x) for x in row] for row in m] for m in rep],
            dtype=np.int64,
        )
        as_int = arr
    except (TypeError, ValueError, OverflowError):
        as_int = None
    if as_int is not None and int(abs(as_int).max()) ** 2 * as_int.shape[1] ** 2 < 2**62:
        gram = np.einsum("iab,jba->ij", as_int, as_int).tolist()
    else:
        n = len(rep[0])
        gram = [
            [
                sum(
                    Fraction(rep[i][a][b]) * Fraction(rep[j][b][a])
                    for a in range(n)
                    for b in range(n)
                )
                for j in range(d)
            ]
            for i in range(d)
        ]
    if A.x_grading is not None:
        # the trace form pairs opposite weights only: kernel block by block
        by_weight = {}
        for i, w in enumerate(A.x_grading):
            by_weight.setdefault(tuple(w), []).append(i)
        ker = []
        for w, rows_idx in sorted(by_weight.items()):
            neg = by_weight.get(tuple(-c for c in w), [])
            if not neg:
                continue  # whole weight space pairs to nothing: in the kernel
            block = [[gram[i][j] for j in neg] for i in rows_idx]
            combos = la.frac_right_kernel(
                [[block[a][b] for a in range(len(rows_idx))] for b in range(len(neg))]
            )
            for cmb in combos:
                v = [Fraction(0)] * d
                for c, i in zip(cmb, rows_idx):
                    v[i] = c
                ker.append(v)
        for w, rows_idx in sorted(by_weight.items()):
            if tuple(-c for c in w) not in by_weight:
                for i in rows_idx:
                    v = [Fraction(0)] * d
                    v[i] = Fraction(1)
                    ker.append(v)
    else:
        ker = ops.right_kernel(ops.transpose(gram))
    if not ker:
        return []
    R, _ = ops.rref(ker)
    return R


def _exact_int(x):
    f = Fraction(x)
    if f.denominator != 1:
        raise ValueError("not integral")
    return int(f.numerator)


def _assert_nilpotent_ideal(A, rows):
    ops = A.ops
    if ops.nrows(rows) == 0:
        return
    eye = ops.eye(A.dim)
    left = _pair_products(A, eye, rows)
    right = _pair_products(A, rows, eye)
    R, piv = ops.rref(rows)
    for side in (left, right):
        for t in range(ops.nrows(side)):
            if not ops.in_row_space(R, piv, side[t]):
                raise AlgebraError("radical candidate is not an ideal")
    # nilpotency
    cur = rows
    for _ in range(A.dim + 1):
        if ops.nrows(cur) == 0:
            return
        cur = _span_products(A, cur, rows)
    raise AlgebraError("radical candidate is not nilpotent")


def _pair_products(A, rows1, rows2):
    """Stack of all products (row of rows1) * (row of rows2)."""
    ops = A.ops
    if ops.kind == "Fp":
        V1 = np.asarray(rows1, dtype=np.int64) % ops.p
        V2 = np.asarray(rows2, dtype=np.int64) % ops.p
        if V1.size == 0 or V2.size == 0:
            return np.zeros((0, A.dim), dtype=np.int64)
        P1 = np.einsum("ai,ijk->ajk", V1, A.tensor) % ops.p
        Q = np.einsum("ajk,bj->abk", P1, V2) % ops.p
        return Q.reshape(-1, A.dim)
    v1 = _vecs_from_rows(ops, rows1)
    v2 = _vecs_from_rows(ops, rows2)
    return ops.matrix([A.multiply(a, b) for a in v1 for b in v2]) if v1 and v2 else []


def _span_products(A, rows1, rows2):
    ops = A.ops
    prods = _pair_products(A, rows1, rows2)
    if ops.nrows(prods) == 0:
        return rows1[0:0] if ops.kind == "Fp" else []
    R, _ = ops.rref(prods)
    return R


def radical_series(A, rep=None):
    """[rad^0, rad^1, rad^2, ...] as row bases, ending at 0."""
    ops = A.ops
    rad = radical_rows(A, rep=rep)
    series = [ops.eye(A.dim)]
    cur = rad
    while ops.nrows(cur) > 0:
        series.append(cur)
        cur = _span_products(A, cur, rad)
    series.append(cur)
    return series


# ---------------------------------------------------------------------------
# small polynomial arithmetic over F_p (for idempotent splitting)


def _poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_divmod(f, g, p):
    f = list(f)
    out = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1], p - 2, p)
    while len(f) >= len(g) and _poly_trim(f):
        c = f[-1] * inv % p
        k = len(f) - len(g)
        out[k] = c
        for i in range(len(g)):
            f[k + i] = (f[k + i] - c * g[i]) % p
        _poly_trim(f)
    return _poly_trim(out), f


def _poly_gcd(f, g, p):
    f, g = list(f), list(g)
    while _poly_trim(g):
        f, g = g, _poly_divmod(f, g, p)[1]
    f = _poly_trim(f)
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [c * inv % p for c in f]
    return f


def _poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _poly_trim(out)


def _poly_xgcd(f, g, p):
    r0, r1 = list(f), list(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while _poly_trim(list(r1)):
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_trim([a - b for a, b in _zip_pad(s0, _poly_mul(q, s1, p), p)])
        t0, t1 = t1, _poly_trim([a - b for a, b in _zip_pad(t0, _poly_mul(q, t1, p), p)])
    lead = r0[-1]
    inv = pow(lead, p - 2, p)
    return (
        [c * inv % p for c in r0],
        [c * inv % p for c in s0],
        [c * inv % p for c in t0],
    )


def _zip_pad(f, g, p):
    n = max(len(f), len(g))
    f = f + [0] * (n - len(f))
    g = g + [0] * (n - len(g))
    return [(a % p, b % p) for a, b in zip(f, g)]


def _poly_deriv(f, p):
    return _poly_trim([i * c % p for i, c in enumerate(f)][1:])


def _poly_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _poly_roots(f, p):
    return [r for r in range(p) if _poly_eval(f, r, p) == 0]


# ---------------------------------------------------------------------------
# Wedderburn data: semisimple quotient, idempotents, simples


def quotient_algebra(A, ideal_rows, labels=None):
    """(B, proj, section): quotient of A by a two-sided ideal.

    proj: dim(B) x dim(A); section: dim(A) x dim(B) columns of chosen reps.
    """
    ops = A.ops
    k = ops.nrows(ideal_rows)
    d = A.dim
    chosen = ops.extend_basis(ideal_rows, ops.eye(d)) if k else list(range(d))
    if len(chosen) != d - k:
        raise AlgebraError("could not complete quotient basis")
    if ops.kind == "Fp":
        comp = ops.eye(d)[chosen]
        full = np.vstack([ideal_rows, comp]) if k else comp
    else:
        comp = [[Fraction(int(i == j)) for j in range(d)] for i in chosen]
        full = ([list(r) for r in ideal_rows] if k else []) + comp
    C = ops.transpose(full)
    Cinv = ops.solve_right(C, ops.eye(d))
    proj = Cinv[k:, :] if ops.kind == "Fp" else [Cinv[i] for i in range(k, d)]
    section = ops.transpose(comp)
    # structure constants via representatives
    q = d - k
    if ops.kind == "Fp":
        prods = _pair_products(A, comp, comp).reshape(q, q, d)
        tensor = np.einsum("abk,ck->abc", prods, proj) % ops.p
        tensor = tensor.tolist()
    else:
        reps = _vecs_from_rows(ops, comp)
        tensor = []
        for x in reps:
            plane = []
            for y in reps:
                prod = A.multiply(x, y)
                img = _apply(ops, proj, prod)
                plane.append(list(img))
            tensor.append(plane)
    unit_img = _apply(ops, proj, A.unit)
    grading = tuple(A.grading[i] for i in chosen) if A.grading is not None else None
    xg = tuple(A.x_grading[i] for i in chosen) if A.x_grading is not None else None
    B = Algebra(
        ops,
        tensor,
        labels=labels or tuple(A.labels[i] for i in chosen),
        unit=list(unit_img) if ops.kind == "QQ" else unit_img,
        grading=grading,
        x_grading=xg,
        check=False,
    )
    # the quotient grading is only valid when the ideal was graded
    if grading is not None:
        B._check_grading()
    if xg is not None:
        B._check_x_grading()
    return B, proj, section


def subalgebra(A, rows, unit_vec=None):
    """The subalgebra spanned by the rows (must be closed, contain a unit).

    When A is graded the basis is re-adapted to homogeneous vectors; a
    subspace incompatible with the grading is rejected.
    """
    ops = A.ops
    R, piv = ops.rref(rows)
    keys = None
    if A.grading is not None and A.x_grading is not None:
        keys = list(zip(A.grading, A.x_grading))
    elif A.grading is not None:
        keys = list(A.grading)
    elif A.x_grading is not None:
        keys = [("x", w) for w in A.x_grading]
    if keys is not None and ops.nrows(R):
        comps = graded_components(ops, R, keys)
        R = ops.vstack([comps[key] for key in sorted(comps, key=repr)])
    k = ops.nrows(R)
    reps = _vecs_from_rows(ops, R)
    inc = ops.transpose(R)
    if ops.kind == "Fp":
        prods = _pair_products(A, R, R)  # (k*k, d)
        coefs = ops.solve_right(inc, ops.transpose(prods))
        if coefs is None:
            raise AlgebraError("rows do not span a subalgebra")
        tensor = ops.transpose(coefs).reshape(k, k, k).tolist()
    else:
        tensor = []
        for x in reps:
            plane = []
            for y in reps:
                prod = A.multiply(x, y)
                coef = ops.solve_right(inc, prod)
                if coef is None:
                    raise AlgebraError("rows do not span a subalgebra")
                plane.append(list(coef))
            tensor.append(plane)
    u = unit_vec if unit_vec is not None else A.unit
    ucoef = ops.solve_right(inc, u)
    if ucoef is None:
        raise AlgebraError("unit not in subalgebra")
    grading = None
    if A.grading is not None:
        grading = []
        for t in range(k):
            w = _support_grades(ops, R, t, A.grading)
            grading.append(w.pop())
    xg = None
    if A.x_grading is not None:
        xg = []
        for t in range(k):
            w = _support_grades(ops, R, t, A.x_grading)
            xg.append(w.pop())
    B = Algebra(
        ops,
        tensor,
        unit=list(ucoef) if ops.kind == "QQ" else ucoef,
        grading=grading,
        x_grading=xg,
        check=False,
    )
    return B, R


def _support_grades(ops, rows, t, table):
    if ops.kind == "Fp":
        idx = np.nonzero(rows[t])[0].tolist()
    else:
        idx = [j for j, c in enumerate(rows[t]) if c]
    return {table[j] for j in idx}


class Wedderburn:
    """Split semisimple structure of A/rad(A), with lifted idempotents."""

    def __init__(self, A, rep=None):
        ops = A.ops
        if ops.kind != "Fp":
            raise AlgebraError("Wedderburn decomposition implemented over F_p only")
        self.algebra = A
        self.rad = radical_rows(A, rep=rep)
        self.quotient, self.proj, self.section = quotient_algebra(A, self.rad)
        # consistency: the quotient's radical vanishes
        if ops.nrows(radical_rows(self.quotient)) != 0:
            raise AlgebraError("radical computation did not exhaust the radical")
        self.central_bar = _split_center(self.quotient)
        self.prim_bar = []
        for c in self.central_bar:
            self.prim_bar.append(_primitive_idempotent(self.quotient, c))
        self.simple_dims = []
        for c, e in zip(self.central_bar, self.prim_bar):
            block_dim = _block_dim(self.quotient, c)
            n = _ideal_dim(self.quotient, e)
            if n * n != block_dim:
                raise NonSplitError(
                    "simple with nontrivial endomorphism field; change the base field"
                )
            self.simple_dims.append(n)
        self.idempotents = _lift_orthogonal(A, self.rad, self.proj, self.section, self.prim_bar)
        self.labels = list(range(len(self.idempotents)))

    def n_simples(self):
        return len(self.idempotents)


def _split_center(B):
    """Primitive idempotents of the (split) center of the semisimple B."""
    ops = B.ops
    d = B.dim
    gens = B.generators if B.generators is not None else range(d)
    cons = []
    for i in gens:
        Li = B.left_matrix(_unit_vec(B, i))
        Ri = B.right_matrix(_unit_vec(B, i))
        cons.append((Li - Ri) % ops.p)
    Z = ops.right_kernel(np.vstack(cons))
    return _split_commutative(B, Z)


def _split_commutative(B, rows):
    """Primitive idempotents of a split commutative subalgebra (row span)."""
    ops = B.ops
    p = ops.p
    vecs = _vecs_from_rows(ops, rows)
    idems = [B.unit.copy()]
    changed = True
    while changed:
        changed = False
        for z in vecs:
            new = []
            for e in idems:
                ze = B.multiply(B.multiply(e, z), e)
                f = _minpoly_in_corner(B, e, ze)
                roots = _poly_roots(f, p)
                linear_part = sum(_mult_of_root(f, r, p) for r in roots)
                parts = len(roots) + (1 if len(f) - 1 > linear_part else 0)
                if parts < 2:
                    new.append(e)
                    continue
                split = _split_by_roots(B, e, ze, f, roots)
                if len(split) == 1:
                    new.append(e)
                else:
                    new.extend(split)
                    changed = True
            idems = new
    # sanity and non-split detection within the given commutative span
    out = []
    for e in idems:
        if _corner_dim_in(B, e, vecs) > 1:
            _diagnose_nonsplit(B, e, rows)
        out.append(e)
    return _sorted_vectors(ops, out)


def _corner_dim_in(B, e, vecs):
    """Rank of {e z e : z in the given spanning set}."""
    prods = [B.multiply(B.multiply(e, z), e) for z in vecs]
    return B.ops.rank(B.ops.matrix(prods))


def _mult_of_root(f, r, p):
    m = 0
    g = list(f)
    while True:
        q, rem = _poly_divmod(g, [(-r) % p, 1], p)
        if rem:
            return m
        m += 1
        g = q


def _split_by_roots(B, e, z, f, roots):
    """CRT split of the idempotent e along the distinct roots of f(z)."""
    p = B.ops.p
    parts = []
    rest = list(f)
    for r in roots:
        lin = [(-r) % p, 1]
        power = []
        m = _mult_of_root(f, r, p)
        g = [1]
        for _ in range(m):
            g = _poly_mul(g, lin, p)
        parts.append(g)
        rest = _poly_divmod(rest, g, p)[0]
    if _poly_trim(list(rest)) and len(rest) > 1:
        parts.append(rest)
    if len(parts) < 2:
        return [e]
    out = []
    for g in parts:
        other = [1]
        for h in parts:
            if h is not g:
                other = _poly_mul(other, h, p)
        # u = a*other with a*other + b*g = 1: u = 1 mod g, 0 mod other-part
        gpoly, a, b = _poly_xgcd(other, g, p)
        if len(gpoly) != 1:
            continue
        u = _poly_mul(a, other, p)
        out.append(_poly_eval_element(B, e, z, u))
    out = [x for x in out if not B.ops.is_zero(B.ops.row(x))]
    return out if len(out) >= 2 else [e]


def _poly_eval_element(B, e, z, f):
    """f(z) evaluated in the corner algebra with unit e (F_p only)."""
    if B.ops.kind != "Fp":
        raise AlgebraError("polynomial idempotent splitting runs over F_p")
    acc = np.zeros(B.dim, dtype=np.int64)
    power = e
    for c in f:
        if c:
            acc = (acc + c * power) % B.ops.p
        power = B.multiply(power, z)
    return acc % B.ops.p


def _minpoly_in_corner(B, e, z):
    """Minimal polynomial of z in the unital corner algebra eBe."""
    ops = B.ops
    vecs = [e]
    cur = e
    while True:
        cur = B.multiply(cur, z)
        M = ops.matrix(vecs)
        R, piv = ops.rref(M)
        if ops.in_row_space(R, piv, cur):
            sol = ops.solve_right(ops.transpose(ops.matrix(vecs)), cur)
            f = [(-int(c)) % ops.p for c in sol] + [1]
            return _poly_trim(f)
        vecs.append(cur)


def _corner_dim(B, e, ambient_rows=None):
    ops = B.ops
    Le = B.left_matrix(e)
    Re = B.right_matrix(e)
    M = (Le @ Re) % ops.p  # x -> e x e
    return ops.rank(ops.transpose(M))


def _diagnose_nonsplit(B, e, rows):
    """dim eBe > 1 with no further splits: field extension or radical bug."""
    ops = B.ops
    p = ops.p
    vecs = _vecs_from_rows(ops, rows)
    for z in vecs:
        ze = B.multiply(B.multiply(e, z), e)
        f = _minpoly_in_corner(B, e, ze)
        g = _poly_gcd(f, _poly_deriv(f, p), p)
        if len(g) > 1:
            raise AlgebraError("nilpotent detected in the supposed semisimple quotient")
    raise NonSplitError(
        "center contains a field extension of F_p; change the base field"
    )


def _block_dim(B, c):
    return _corner_dim(B, c)


def _ideal_dim(B, e):
    """dim of B e (the simple column module for a primitive e)."""
    ops = B.ops
    Re = B.right_matrix(e)
    return ops.rank(ops.transpose(Re))


def _primitive_idempotent(B, c):
    """A primitive idempotent inside the simple component with unit c."""
    import random

    ops = B.ops
    p = ops.p
    rng = random.Random(11)
    e = c
    guard = 0
    while _corner_dim(B, e) > 1:
        guard += 1
        if guard > 400:
            raise AlgebraError("primitive idempotent search did not converge")
        # pick elements of eBe and try to split via their minimal polynomial
        cand = None
        basis_rows = _corner_rows(B, e)
        vecs = _vecs_from_rows(ops, basis_rows)
        pool = vecs + [
            np.array([rng.randrange(p) for _ in range(B.dim)], dtype=np.int64)
            for _ in range(4)
        ]
        for z0 in pool:
            z = B.multiply(B.multiply(e, z0), e)
            f = _minpoly_in_corner(B, e, z)
            split = _try_split(B, e, z, f)
            if split is not None:
                cand = split
                break
        if cand is None:
            _diagnose_nonsplit(B, e, basis_rows)
        e = cand
    return e


def _corner_rows(B, e):
    ops = B.ops
    Le = B.left_matrix(e)
    Re = B.right_matrix(e)
    M = (Le @ Re) % ops.p
    R, _ = ops.rref(ops.transpose(M))
    return R


def _try_split(B, e, z, f):
    """Split e using a coprime factorization of f; return one factor or None."""
    p = B.ops.p
    if len(f) <= 2:
        return None
    roots = _poly_roots(f, p)
    if roots:
        r = roots[0]
        m = _mult_of_root(f, r, p)
        g1 = [1]
        for _ in range(m):
            g1 = _poly_mul(g1, [(-r) % p, 1], p)
        g2 = _poly_divmod(f, g1, p)[0]
        if len(g2) > 1:
            _, a, b = _poly_xgcd(g2, g1, p)
            u = _poly_mul(a, g2, p)
            e1 = _poly_eval_element(B, e, z, u)
            if not B.ops.is_zero(B.ops.row(e1)) and not B.ops.is_zero(
                B.ops.row((e - e1) % p)
            ):
                return e1
        return None
    # no roots: distinct-degree split of the squarefree part
    s = _poly_divmod(f, _poly_gcd(f, _poly_deriv(f, p), p), p)[0]
    deg = len(s) - 1
    xp = [0, 1]
    for d in range(1, deg):
        xp = _poly_powmod_frobenius(xp, p, s)
        h = _poly_gcd(s, _poly_sub_x(xp, p), p)
        if 0 < len(h) - 1 < deg:
            g1 = _full_multiplicity_part(f, h, p)
            g2 = _poly_divmod(f, g1, p)[0]
            if len(g1) > 1 and len(g2) > 1:
                _, a, b = _poly_xgcd(g2, g1, p)
                u = _poly_mul(a, g2, p)
                e1 = _poly_eval_element(B, e, z, u)
                if not B.ops.is_zero(B.ops.row(e1)) and not B.ops.is_zero(
                    B.ops.row((e - e1) % p)
                ):
                    return e1
    return None


def _poly_powmod_frobenius(xp, p, f):
    """xp(t) -> xp(t)^p mod f."""
    out = [1]
    base = list(xp)
    e = p
    while e:
        if e & 1:
            out = _poly_divmod(_poly_mul(out, base, p), f, p)[1]
        base = _poly_divmod(_poly_mul(base, base, p), f, p)[1]
        e >>= 1
    return out


def _poly_sub_x(f, p):
    g = list(f)
    while len(g) < 2:
        g.append(0)
    g[1] = (g[1] - 1) % p
    return _poly_trim(g)


def _full_multiplicity_part(f, h, p):
    g = _poly_gcd(f, h, p)
    prev = None
    while prev is None or g != prev:
        prev = g
        g = _poly_gcd(f, _poly_mul(prev, prev, p), p)
    return g


def _lift_idempotent(A, x):
    ops = A.ops
    e = x
    for _ in range(64):
        e2 = A.multiply(e, e)
        if ops.kind == "Fp":
            if not ((e2 - e) % ops.p).any():
                return e
        ee = A.multiply(e2, e)
        e = (3 * e2 - 2 * ee) % ops.p
    raise AlgebraError("idempotent lifting did not converge")


def _lift_orthogonal(A, rad, proj, section, bars):
    """Lift a family of orthogonal idempotents of A/rad to A."""
    ops = A.ops
    lifted = []
    f = np.zeros(A.dim, dtype=np.int64)
    for ebar in bars:
        x = _apply(ops, section, ebar)
        one_minus = (A.unit - f) % ops.p
        x = A.multiply(A.multiply(one_minus, x), one_minus)
        e = _lift_idempotent(A, x)
        # image in the quotient must reproduce ebar
        img = _apply(ops, proj, e)
        if ((img - ebar) % ops.p).any():
            raise AlgebraError("idempotent lift drifted in the quotient")
        for prev in lifted:
            if ((A.multiply(prev, e)) % ops.p).any() or ((A.multiply(e, prev)) % ops.p).any():
                raise AlgebraError("lifted idempotents are not orthogonal")
        lifted.append(e)
        f = (f + e) % ops.p
    return lifted


def _sorted_vectors(ops, vecs):
    return sorted(vecs, key=lambda v: tuple(int(x) for x in v))


def wedderburn(A, rep=None):
    if A._wedderburn is None:
        A._wedderburn = Wedderburn(A, rep=rep)
    return A._wedderburn


# ---------------------------------------------------------------------------
# public module-level operations


def central_idempotents(A):
    """Primitive central idempotents (the block decomposition)."""
    ops = A.ops
    d = A.dim
    gens = A.generators if A.generators is not None else range(d)
    cons = []
    for i in gens:
        Li = A.left_matrix(_unit_vec(A, i))
        Ri = A.right_matrix(_unit_vec(A, i))
        cons.append((Li - Ri) % ops.p)
    Z = ops.right_kernel(np.vstack(cons))
    # primitive idempotents of the commutative algebra Z(A): split modulo its
    # radical, then lift inside the center
    ZB, Zrows = subalgebra(A, Z)
    zrad = radical_rows(ZB)
    if ops.nrows(zrad) == 0:
        bars = _split_commutative(ZB, ops.eye(ZB.dim))
        lifted = bars
    else:
        Q, proj, section = quotient_algebra(ZB, zrad)
        bars = _split_commutative(Q, ops.eye(Q.dim))
        lifted = _lift_orthogonal(ZB, zrad, proj, section, bars)
    out = [(np.asarray(v) @ Zrows) % ops.p for v in lifted]
    total = np.zeros(A.dim, dtype=np.int64)
    for c in out:
        total = (total + c) % ops.p
    if ((total - A.unit) % ops.p).any():
        raise AlgebraError("central idempotents do not sum to 1")
    return _sorted_vectors(ops, out)


def simple_modules(A, rep=None):
    """One simple module per isomorphism class, indexed like the idempotents."""
    W = wedderburn(A, rep=rep)
    ops = A.ops
    out = []
    reg = regular_module(A, graded=False)
    for idx, e in enumerate(W.idempotents):
        P_rows = _left_ideal_rows(A, e)
        Pmod, inc = submodule(reg, P_rows)
        radP = _span_module_rows(A, W.rad, P_rows)
        top, _ = quotient_module(Pmod, _restrict_rows(ops, radP, inc))
        out.append((idx, top))
    return out


def _left_ideal_rows(A, e):
    ops = A.ops
    Re = A.right_matrix(e)  # x -> x e, image = A e
    R, _ = ops.rref(ops.transpose(Re))
    return R


def _span_module_rows(A, alg_rows, mod_rows):
    """Row span of (algebra subspace) * (module subspace) inside A."""
    ops = A.ops
    avecs = _vecs_from_rows(ops, alg_rows)
    mvecs = _vecs_from_rows(ops, mod_rows)
    prods = [A.multiply(a, m) for a in avecs for m in mvecs]
    if not prods:
        return alg_rows[0:0]
    R, _ = ops.rref(ops.matrix(prods))
    return R


def _restrict_rows(ops, ambient_rows, inc):
    """Coordinates of ambient rows in the submodule with inclusion columns inc."""
    k = ops.ncols(inc)
    if ops.nrows(ambient_rows) == 0:
        return ops.zeros(0, k)
    sol = ops.solve_right(inc, ops.transpose(ambient_rows))
    if sol is None:
        raise AlgebraError("rows do not lie in the submodule")
    return ops.transpose(sol)


def blocks_and_basic(A, rep=None):
    """(central idempotents, basic algebra data, multiplicity map).

    The basic algebra comes with its quiver skeleton: one vertex per simple
    and arrow counts dim e_mu (rad/rad^2) e_lam; relations are carried by the
    structure constants of the basic algebra itself.
    """
    ops = A.ops
    W = wedderburn(A, rep=rep)
    centrals = central_idempotents(A)
    e_total = np.zeros(A.dim, dtype=np.int64)
    for e in W.idempotents:
        e_total = (e_total + e) % ops.p
    basic, rows = idempotent_truncate(A, e_total)
    # multiplicities: dim of each simple (= multiplicity of P(lam) in A)
    mults = {i: int(n) for i, n in enumerate(W.simple_dims)}
    # block membership per simple
    membership = []
    for e in W.idempotents:
        home = None
        for bi, c in enumerate(centrals):
            prod = A.multiply(c, e)
            if not ops.is_zero(ops.row((prod - e) % ops.p)):
                continue
            home = bi
            break
        membership.append(home)
    rad2 = _span_products(A, W.rad, W.rad)
    arrows = {}
    for i, ei in enumerate(W.idempotents):
        for j, ej in enumerate(W.idempotents):
            arrows[(i, j)] = _ext1_dim(A, W, ei, ej, rad2)
    quiver = {
        "vertices": list(range(len(W.idempotents))),
        "arrows": arrows,
        "block_of_vertex": membership,
    }
    # Morita check: Cartan matrices of A and its basic algebra agree
    cartan_A = _cartan_matrix(A, W.idempotents)
    Wb = wedderburn(basic)
    cartan_B = _cartan_matrix(basic, Wb.idempotents)
    if sorted(map(tuple, cartan_A)) != sorted(map(tuple, cartan_B)):
        raise AlgebraError("basic algebra is not Morita-equivalent (Cartan mismatch)")
    return centrals, (basic, quiver), mults


def _ext1_dim(A, W, ei, ej, rad2):
    """dim e_j (rad/rad^2) e_i."""
    ops = A.ops
    vecs = _vecs_from_rows(ops, W.rad)
    prods = [A.multiply(ej, A.multiply(v, ei)) for v in vecs]
    M = ops.matrix(prods)
    if ops.nrows(rad2):
        stacked = ops.vstack([rad2, M])
        return ops.rank(stacked) - ops.rank(rad2)
    return ops.rank(M)


def _cartan_matrix(A, idems):
    ops = A.ops
    out = []
    for ei in idems:
        row = []
        Lei = A.left_matrix(ei)
        for ej in idems:
            M = (Lei @ A.right_matrix(ej)) % ops.p  # x -> e_i x e_j
            row.append(ops.rank(ops.transpose(M)))
        out.append(row)
    return out


def idempotent_truncate(A, e):
    """(eAe, inclusion rows): the corner algebra on the idempotent e."""
    ops = A.ops
    e = np.asarray(e, dtype=np.int64) % ops.p if ops.kind == "Fp" else e
    e2 = A.multiply(e, e)
    if ops.kind == "Fp":
        if ((e2 - e) % ops.p).any():
            raise AlgebraError("not an idempotent")
    else:
        if any(a != b for a, b in zip(e2, e)):
            raise AlgebraError("not an idempotent")
    if A.grading is not None:
        support = np.nonzero(np.asarray(e))[0] if ops.kind == "Fp" else [
            i for i, c in enumerate(e) if c
        ]
        if any(A.grading[int(i)] != 0 for i in support):
            raise AlgebraError("idempotent must live in grade 0")
    Le = A.left_matrix(e)
    Re = A.right_matrix(e)
    M = (Le @ Re) % ops.p if ops.kind == "Fp" else ops.matmul(Le, Re)
    rows, _ = ops.rref(ops.transpose(M))
    return subalgebra(A, rows, unit_vec=e)


def truncate_module(A, basic_pair, M, e):
    """e*M as a module over eAe (the basic_pair from idempotent_truncate)."""
    B, rows = basic_pair
    ops = A.ops
    img = M.act_matrix(e)
    sub_rows, _ = ops.rref(ops.transpose(img))
    basis, grades, xw = adapted_basis_rows(M, sub_rows)
    k = ops.nrows(basis)
    if k == 0:
        zero = [ops.zeros(0, 0) for _ in range(B.dim)]
        return Module(
            B,
            zero,
            grading=() if M.grading is not None else None,
            x_grading=() if M.x_grading is not None else None,
            check=False,
        )
    inc = ops.transpose(basis)
    avecs = _vecs_from_rows(ops, rows)
    action = []
    for t in range(B.dim):
        img = ops.matmul(M.act_matrix(avecs[t]), inc)
        coef = ops.solve_right(inc, img)
        if coef is None:
            raise AlgebraError("eM is not stable under eAe")
        action.append(coef)
    return Module(B, action, grading=grades, x_grading=xw, check=False)


def quotient_by_trace_ideal(A, discard_idempotents):
    """A / (A e A) for e the sum of the discarded weight idempotents."""
    ops = A.ops
    e = np.zeros(A.dim, dtype=np.int64)
    for v in discard_idempotents:
        e = (e + v) % ops.p
    if ops.is_zero(ops.row(e)):
        return quotient_algebra(A, ops.eye(A.dim)[0:0])
    Ae = _pair_products(A, ops.eye(A.dim), ops.row(e))
    AeA = _pair_products(A, Ae, ops.eye(A.dim))
    rows, _ = ops.rref(AeA)
    return quotient_algebra(A, rows)
