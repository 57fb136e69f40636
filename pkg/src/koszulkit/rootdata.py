"""Finite root system arithmetic for the supported Cartan types.

Weights are integer tuples in fundamental-weight coordinates; roots are
integer tuples in simple-root coordinates; coroots are integer tuples in
simple-coroot coordinates, so that pairing(weight, coroot) is a plain dot
product.  Conversion between the two coordinate systems goes through the
Cartan matrix, whose i-th row holds the fundamental-weight coordinates of
the i-th simple root.

Supported types: A1, A2, B2, G2, A3 (hardcoded verified tables).
"""

from fractions import Fraction
from functools import lru_cache

Weight = tuple  # integer tuple, fundamental-weight coordinates
RootVector = tuple  # integer tuple, simple-root coordinates


class RootDatumError(ValueError):
    pass


# type label -> (cartan, positive_roots, positive_coroots, h, highest_short_coroot)
# positive_coroots[i] is the coroot of positive_roots[i].
_TABLES = {
    "A1": (
        ((2,),),
        ((1,),),
        ((1,),),
        2,
        (1,),
    ),
    "A2": (
        ((2, -1), (-1, 2)),
        ((1, 0), (0, 1), (1, 1)),
        ((1, 0), (0, 1), (1, 1)),
        3,
        (1, 1),
    ),
    # B2: alpha1 long, alpha2 short (Bourbaki numbering)
    "B2": (
        ((2, -2), (-1, 2)),
        ((1, 0), (0, 1), (1, 1), (1, 2)),
        ((1, 0), (0, 1), (2, 1), (1, 1)),
        4,
        (2, 1),
    ),
    # G2: alpha1 short, alpha2 long (Bourbaki numbering)
    "G2": (
        ((2, -1), (-3, 2)),
        ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)),
        ((1, 0), (0, 1), (1, 3), (2, 3), (1, 1), (1, 2)),
        6,
        (2, 3),
    ),
    "A3": (
        ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
        ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)),
        ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)),
        4,
        (1, 1, 1),
    ),
}

_EXPECTED_POSITIVE = {"A1": 1, "A2": 3, "B2": 4, "G2": 6, "A3": 6}


class RootDatum:
    """A finite root system with pairings, Weyl group, and dominance orders."""

    def __init__(self, type_label):
        if type_label not in _TABLES:
            raise RootDatumError(f"unsupported Cartan type {type_label!r}")
        cartan, roots, coroots, h, a0v = _TABLES[type_label]
        self.type_label = type_label
        self.cartan_matrix = cartan
        self.rank = len(cartan)
        self.positive_roots = roots
        self.positive_coroots = coroots
        self.coxeter_number = h
        self.highest_short_coroot = a0v
        self.rho = (1,) * self.rank
        self._check_tables()
        self._cartan_inv = self._invert_cartan()
        self._weyl = None

    def _check_tables(self):
        n = self.rank
        for i in range(n):
            if self.cartan_matrix[i][i] != 2:
                raise RootDatumError("Cartan diagonal must be 2")
            for j in range(n):
                if i != j and self.cartan_matrix[i][j] > 0:
                    raise RootDatumError("Cartan off-diagonal must be <= 0")
        if len(self.positive_roots) != _EXPECTED_POSITIVE[self.type_label]:
            raise RootDatumError("positive root count mismatch")
        if self.pairing(self.rho, self.highest_short_coroot) != self.coxeter_number - 1:
            raise RootDatumError("<rho, a0vee> != h - 1")
        # coroot table consistency: <beta, beta_vee> = 2 and every reflection
        # s_beta permutes the root set
        all_roots = [r for r in self.positive_roots]
        all_roots += [tuple(-c for c in r) for r in self.positive_roots]
        root_set = set(all_roots)
        for beta, beta_v in zip(self.positive_roots, self.positive_coroots):
            if self.pairing(self.root_to_weight(beta), beta_v) != 2:
                raise RootDatumError("<beta, beta_vee> != 2 in tables")
            for gamma in all_roots:
                n = self.pairing(self.root_to_weight(gamma), beta_v)
                image = tuple(g - n * b for g, b in zip(gamma, beta))
                if image not in root_set:
                    raise RootDatumError("reflection does not permute roots")

    def _invert_cartan(self):
        n = self.rank
        A = [[Fraction(self.cartan_matrix[i][j]) for j in range(n)] for i in range(n)]
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for c in range(n):
            sel = next(i for i in range(c, n) if A[i][c] != 0)
            A[c], A[sel] = A[sel], A[c]
            inv[c], inv[sel] = inv[sel], inv[c]
            f = A[c][c]
            A[c] = [x / f for x in A[c]]
            inv[c] = [x / f for x in inv[c]]
            for i in range(n):
                if i != c and A[i][c] != 0:
                    f = A[i][c]
                    A[i] = [x - f * y for x, y in zip(A[i], A[c])]
                    inv[i] = [x - f * y for x, y in zip(inv[i], inv[c])]
        return tuple(tuple(row) for row in inv)

    # -- coordinates ------------------------------------------------------

    def pairing(self, lam, coroot):
        """<lam, coroot> for a weight and a coroot vector."""
        if len(lam) != self.rank or len(coroot) != self.rank:
            raise RootDatumError("dimension mismatch")
        return sum(int(a) * int(b) for a, b in zip(lam, coroot))

    def root_to_weight(self, root):
        """Fundamental-weight coordinates of a root-lattice vector."""
        n = self.rank
        return tuple(
            sum(root[i] * self.cartan_matrix[i][j] for i in range(n)) for j in range(n)
        )

    def weight_to_root_coords(self, lam):
        """Simple-root coordinates (Fractions) of a weight."""
        n = self.rank
        return tuple(
            sum(Fraction(lam[i]) * self._cartan_inv[i][j] for i in range(n))
            for j in range(n)
        )

    def is_dominant(self, lam):
        return all(c >= 0 for c in lam)

    # -- orders -----------------------------------------------------------

    def dominance_leq(self, mu, lam, order="dominance"):
        """mu <= lam: lam - mu a nonnegative (integral or rational) root sum."""
        diff = tuple(a - b for a, b in zip(lam, mu))
        coords = self.weight_to_root_coords(diff)
        if order == "dominance":
            return all(c >= 0 and c.denominator == 1 for c in coords)
        if order in ("rational-cone", "cone"):
            return all(c >= 0 for c in coords)
        raise RootDatumError(f"unknown order {order!r}")

    # -- Weyl group -------------------------------------------------------

    def simple_reflection(self, i, lam):
        """s_i(lam), ordinary linear action on fundamental-weight coords."""
        row = self.cartan_matrix[i]
        return tuple(lam[j] - lam[i] * row[j] for j in range(self.rank))

    def weyl_apply(self, word, lam):
        """Apply w = s_{word[0]} ... s_{word[-1]} (rightmost acts first)."""
        for i in reversed(word):
            if not 0 <= i < self.rank:
                raise RootDatumError(f"invalid generator index {i}")
            lam = self.simple_reflection(i, lam)
        return lam

    def dot_action(self, word, lam):
        """w . lam = w(lam + rho) - rho."""
        shifted = tuple(a + b for a, b in zip(lam, self.rho))
        moved = self.weyl_apply(word, shifted)
        return tuple(a - b for a, b in zip(moved, self.rho))

    def weyl_group(self):
        """All Weyl group elements as {matrix: canonical reduced word}.

        Matrices act on row weight-vectors from the right; words found by
        BFS are reduced and lexicographically minimal at their length.
        """
        if self._weyl is None:
            n = self.rank
            eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
            gens = []
            for i in range(n):
                rows = []
                for k in range(n):
                    row = list(eye[k])
                    if k == i:
                        row = [row[j] - self.cartan_matrix[i][j] for j in range(n)]
                    rows.append(tuple(row))
                gens.append(tuple(rows))
            elements = {eye: ()}
            frontier = [eye]
            while frontier:
                new = []
                for M in frontier:
                    for i, S in enumerate(gens):
                        # right multiplication appends a letter: w s_i
                        MS = _matmul(S, M)
                        if MS not in elements:
                            elements[MS] = elements[M] + (i,)
                            new.append(MS)
                frontier = new
            self._weyl = elements
        return self._weyl

    def weyl_matrix(self, word):
        n = self.rank
        lam_rows = []
        for j in range(n):
            basis = tuple(int(k == j) for k in range(n))
            lam_rows.append(self.weyl_apply(word, basis))
        # row j = image of j-th basis vector: matrix acting from the right
        return tuple(lam_rows)

    def coxeter_length(self, word):
        """Coxeter length of the element represented by the (maybe unreduced) word."""
        M = self.weyl_matrix(word)
        return len(self.weyl_group()[M])

    def canonical_word(self, word):
        M = self.weyl_matrix(word)
        return self.weyl_group()[M]

    def longest_word(self):
        """Canonical reduced word of the longest element w0."""
        group = self.weyl_group()
        return max(group.values(), key=len)

    def opposition(self, lam):
        """The opposition involution lam* = -w0(lam)."""
        moved = self.weyl_apply(self.longest_word(), lam)
        return tuple(-c for c in moved)

    def index_of_connection(self):
        """[X : ZR] = det of the Cartan matrix."""
        n = self.rank
        rows = [list(r) for r in self.cartan_matrix]
        det = Fraction(1)
        for c in range(n):
            sel = next((i for i in range(c, n) if rows[i][c] != 0), None)
            if sel is None:
                return 0
            if sel != c:
                rows[c], rows[sel] = rows[sel], rows[c]
                det = -det
            det *= rows[c][c]
            inv = Fraction(1, rows[c][c])
            rows[c] = [x * inv for x in rows[c]]
            for i in range(c + 1, n):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return abs(int(det))

    def __repr__(self):
        return f"RootDatum({self.type_label})"


def _matmul(A, B):
    n = len(A)
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


@lru_cache(maxsize=None)
def root_datum(type_label):
    """Shared immutable datum per type label."""
    return RootDatum(type_label)


def pairing(datum, lam, coroot):
    return datum.pairing(lam, coroot)


def dominance_leq(datum, mu, lam, order="dominance"):
    return datum.dominance_leq(mu, lam, order)


def dot_action(datum, word, lam):
    return datum.dot_action(word, lam)


def opposition(datum, lam):
    return datum.opposition(lam)
