"""Affine Weyl group combinatorics at a prime p.

Everything lives in the rho-shifted picture: the group W_p acts on
y = lam + rho by the finite Weyl group and translations by p * (root
lattice); the affine walls are <y, alpha_vee> = kp.  The bottom dominant
alcove C+ is 0 < <y, alpha_vee> < p for all positive coroots.

Weights within a single W_p dot-orbit are addressed by z = t_{p theta} w
with theta in ZR and w in the finite Weyl group; the length function
counts separating walls with signs.
"""

import warnings
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .rootdata import root_datum


class AlcoveError(ValueError):
    pass


class SingularWeightError(AlcoveError):
    pass


@dataclass(frozen=True)
class AffineWeylElement:
    """z = t_{p theta} w: translation part in root coordinates, finite word."""

    theta: tuple
    word: tuple

    def dot(self, datum, p, lam):
        moved = datum.dot_action(self.word, lam)
        shift = datum.root_to_weight(self.theta)
        return tuple(a + p * b for a, b in zip(moved, shift))


@dataclass(frozen=True)
class PosetIdeal:
    """Finite nonempty downward-closed set of p-regular dominant weights."""

    type_label: str
    p: int
    order: str
    elements: frozenset

    def __post_init__(self):
        if not self.elements:
            raise AlcoveError("empty poset ideal")
        datum = root_datum(self.type_label)
        for lam in self.elements:
            if not datum.is_dominant(lam):
                raise AlcoveError(f"ideal element {lam} not dominant")
            if not is_p_regular(datum, lam, self.p, warn=False):
                raise SingularWeightError(f"ideal element {lam} is p-singular")

    def sorted_elements(self):
        return sorted(self.elements)


# ---------------------------------------------------------------------------
# regularity, decomposition, Jantzen region


def is_p_regular(datum, lam, p, warn=True):
    """No affine wall contains lam: <lam+rho, alpha_vee> != 0 mod p, all alpha>0."""
    if warn and p <= datum.coxeter_number:
        warnings.warn(f"p={p} <= h={datum.coxeter_number}: regular weights may not exist")
    shifted = tuple(a + b for a, b in zip(lam, datum.rho))
    return all(datum.pairing(shifted, av) % p != 0 for av in datum.positive_coroots)


def restricted_decompose(datum, gamma, p):
    """gamma = gamma0 + p*gamma1 with gamma0 restricted, gamma1 dominant."""
    if not datum.is_dominant(gamma):
        raise AlcoveError(f"{gamma} is not dominant")
    gamma0 = tuple(c % p for c in gamma)
    gamma1 = tuple((c - c % p) // p for c in gamma)
    return gamma0, gamma1


def jantzen_contains(datum, lam, p):
    """<lam+rho, alpha0_vee> <= p(p - h + 2)."""
    shifted = tuple(a + b for a, b in zip(lam, datum.rho))
    bound = p * (p - datum.coxeter_number + 2)
    return datum.pairing(shifted, datum.highest_short_coroot) <= bound


# ---------------------------------------------------------------------------
# alcove addresses and the length function


def _in_bottom_alcove(datum, y, p):
    """y strictly inside C+ (rho-shifted coordinates)."""
    if any(c <= 0 for c in y):
        return False
    return datum.pairing(y, datum.highest_short_coroot) < p


def _affine_reflect(datum, y, p, j):
    """Reflection in wall j of C+: j >= 1 simple wall, j == 0 the upper wall."""
    if j == 0:
        a0 = datum.root_to_weight(
            datum.positive_roots[datum.positive_coroots.index(datum.highest_short_coroot)]
        )
        q = datum.pairing(y, datum.highest_short_coroot) - p
        return tuple(c - q * a for c, a in zip(y, a0))
    i = j - 1
    return datum.simple_reflection(i, y)


@lru_cache(maxsize=200000)
def _address_cached(type_label, tau, p):
    datum = root_datum(type_label)
    y = tuple(a + b for a, b in zip(tau, datum.rho))
    guard = 0
    while not _in_bottom_alcove(datum, y, p):
        moved = False
        for i in range(datum.rank):
            if y[i] < 0:
                y = datum.simple_reflection(i, y)
                moved = True
                break
        if not moved:
            if datum.pairing(y, datum.highest_short_coroot) > p:
                y = _affine_reflect(datum, y, p, 0)
            else:  # pragma: no cover - regularity rules this out
                raise AlcoveError("walk stalled on a wall")
        guard += 1
        if guard > 10**6:
            raise AlcoveError("alcove walk did not terminate")
    lam0 = tuple(a - b for a, b in zip(y, datum.rho))
    # recover w and theta from tau = w . lam0 + p theta
    for M, word in datum.weyl_group().items():
        moved = datum.dot_action(word, lam0)
        diff = tuple(a - b for a, b in zip(tau, moved))
        if any(d % p for d in diff):
            continue
        theta_fw = tuple(d // p for d in diff)
        coords = datum.weight_to_root_coords(theta_fw)
        if all(c.denominator == 1 for c in coords):
            return AffineWeylElement(tuple(int(c) for c in coords), word), lam0
    raise AlcoveError("no affine address found")  # pragma: no cover


def alcove_address(datum, tau, p):
    """The unique z = t_{p theta} w with tau = z . lam0, lam0 in C+.

    Raises SingularWeightError off the regular set.  The walk crosses one
    wall of C+ at a time, so it terminates after d(C+, z.C+) steps.
    """
    if not is_p_regular(datum, tau, p, warn=False):
        raise SingularWeightError(f"{tau} lies on an affine wall for p={p}")
    return _address_cached(datum.type_label, tuple(tau), p)[0]


def alcove_address_search(datum, tau, p, radius=None):
    """Exhaustive-search address oracle: all w in W, theta in a box.

    Slower than alcove_address; used to cross-verify it.  Asserts the
    address is unique.
    """
    if not is_p_regular(datum, tau, p, warn=False):
        raise SingularWeightError(f"{tau} lies on an affine wall for p={p}")
    if radius is None:
        radius = 2 + max(abs(c) for c in tau) * datum.coxeter_number // p
    hits = []
    for coords in product(range(-radius, radius + 1), repeat=datum.rank):
        shift = datum.root_to_weight(coords)
        for M, word in datum.weyl_group().items():
            lam0 = datum.dot_action(
                _inverse_word(word), tuple(a - p * b for a, b in zip(tau, shift))
            )
            shifted = tuple(a + b for a, b in zip(lam0, datum.rho))
            if _in_bottom_alcove(datum, shifted, p):
                hits.append(AffineWeylElement(tuple(coords), word))
    if len(hits) != 1:
        raise AlcoveError(f"expected unique address, found {len(hits)}")
    return hits[0]


def _inverse_word(word):
    return tuple(reversed(word))


def lambda_zero(datum, tau, p):
    """The C+ representative of the W_p dot-orbit of tau."""
    if not is_p_regular(datum, tau, p, warn=False):
        raise SingularWeightError(f"{tau} lies on an affine wall for p={p}")
    return _address_cached(datum.type_label, tuple(tau), p)[1]


def two_ht(datum, theta):
    """2 ht(theta) = sum over positive coroots of <theta, alpha_vee>."""
    theta_fw = datum.root_to_weight(theta)
    return sum(datum.pairing(theta_fw, av) for av in datum.positive_coroots)


def length(datum, tau, p):
    """l(tau) = -l(w) + 2 ht(theta) at the alcove address z = t_{p theta} w."""
    z = alcove_address(datum, tau, p)
    return -len(z.word) + two_ht(datum, z.theta)


def length_oracle(datum, tau, p, bound=10**6):
    """Signed count of affine walls separating C+ from the alcove of tau.

    Walks every positive coroot and every integer k with kp strictly
    between the base-point pairings; +1 when C+ sits on the negative side.
    Brute force on purpose: independent of the translation-word formula.
    """
    if p < datum.coxeter_number:
        raise AlcoveError("length oracle needs p >= h (C+ must contain 0)")
    if not is_p_regular(datum, tau, p, warn=False):
        raise SingularWeightError(f"{tau} lies on an affine wall for p={p}")
    shifted = tuple(a + b for a, b in zip(tau, datum.rho))
    total = 0
    for av in datum.positive_coroots:
        a = datum.pairing(datum.rho, av)  # base point 0 in C+, shifted by rho
        b = datum.pairing(shifted, av)
        if abs(b) > bound:
            raise AlcoveError("weight out of range for the brute-force oracle")
        lo, hi = min(a, b), max(a, b)
        sign = 1 if b > a else -1
        k = lo // p + 1
        while k * p < hi:
            if k * p > lo:
                total += sign
            k += 1
    return total


def parity_check(datum, tau, theta, p):
    """l(tau) == l(tau + p theta) mod 2 for theta in the root lattice."""
    if any(not isinstance(c, int) for c in theta):
        raise AlcoveError("theta must have integer root coordinates")
    shift = datum.root_to_weight(theta)
    tau2 = tuple(a + p * b for a, b in zip(tau, shift))
    return (length(datum, tau, p) - length(datum, tau2, p)) % 2 == 0


# ---------------------------------------------------------------------------
# the affine Coxeter presentation (for Bruhat order)


class _AffineElement:
    """Affine map y -> y W + t on rho-shifted row vectors, exact integers."""

    __slots__ = ("W", "t")

    def __init__(self, W, t):
        self.W = W
        self.t = t

    def key(self):
        return (self.W, self.t)

    def apply(self, y):
        n = len(self.t)
        return tuple(
            sum(y[i] * self.W[i][j] for i in range(n)) + self.t[j] for j in range(n)
        )

    def compose(self, other):
        """self after other: y -> self(other(y))."""
        n = len(self.t)
        W = tuple(
            tuple(
                sum(other.W[i][k] * self.W[k][j] for k in range(n)) for j in range(n)
            )
            for i in range(n)
        )
        t = self.apply(other.t)
        return _AffineElement(W, t)


def _affine_identity(rank):
    eye = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    return _AffineElement(eye, (0,) * rank)


@lru_cache(maxsize=None)
def _affine_generators(type_label, p):
    datum = root_datum(type_label)
    n = datum.rank
    gens = []
    # s_0: reflection in <y, a0vee> = p
    a0 = datum.root_to_weight(
        datum.positive_roots[datum.positive_coroots.index(datum.highest_short_coroot)]
    )
    a0v = datum.highest_short_coroot
    rows = []
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        rows.append(tuple(e[j] - a0v[i] * a0[j] for j in range(n)))
    gens.append(_AffineElement(tuple(rows), tuple(p * c for c in a0)))
    for i in range(n):
        rows = []
        for k in range(n):
            e = [int(k == j) for j in range(n)]
            if k == i:
                e = [e[j] - datum.cartan_matrix[i][j] for j in range(n)]
            rows.append(tuple(e))
        gens.append(_AffineElement(tuple(rows), (0,) * n))
    return tuple(gens)


def _address_to_affine(datum, p, z):
    """t_{p theta} w as an _AffineElement in the rho-shifted picture."""
    n = datum.rank
    W = datum.weyl_matrix(z.word)
    shift = datum.root_to_weight(z.theta)
    return _AffineElement(W, tuple(p * c for c in shift))


def _affine_canonical_word(datum, p, elem):
    """Reduced word in s_0..s_n by walking the alcove of elem back to C+."""
    gens = _affine_generators(datum.type_label, p)
    y = elem.apply(datum.rho)
    word = []
    guard = 0
    while not _in_bottom_alcove(datum, y, p):
        if guard > 10**6:
            raise AlcoveError("affine walk did not terminate")
        guard += 1
        placed = False
        for i in range(datum.rank):
            if y[i] < 0:
                word.append(i + 1)
                y = gens[i + 1].apply(y)
                placed = True
                break
        if not placed:
            if datum.pairing(y, datum.highest_short_coroot) > p:
                word.append(0)
                y = gens[0].apply(y)
            else:  # pragma: no cover
                raise AlcoveError("affine walk stalled")
    return tuple(word)


def _affine_length(datum, p, elem):
    return len(_affine_canonical_word(datum, p, elem))


def bruhat_leq(datum, p, z1, z2):
    """Bruhat-Chevalley order on W_p via the lifting property."""
    e1 = _address_to_affine(datum, p, z1)
    e2 = _address_to_affine(datum, p, z2)
    gens = _affine_generators(datum.type_label, p)
    lengths = {}

    def ell(el):
        k = el.key()
        if k not in lengths:
            lengths[k] = _affine_length(datum, p, el)
        return lengths[k]

    def rec(a, b):
        if ell(a) > ell(b):
            return False
        if a.key() == b.key():
            return True
        if ell(b) == 0:
            return ell(a) == 0
        word = _affine_canonical_word(datum, p, b)
        s = gens[word[0]]
        sb = s.compose(b)
        sa = s.compose(a)
        if ell(sa) < ell(a):
            return rec(sa, sb)
        return rec(a, sb)

    return rec(e1, e2)


def _bruhat_lower_interval(datum, p, z):
    """All affine elements <= z, via subsequence products of one reduced word."""
    e = _address_to_affine(datum, p, z)
    word = _affine_canonical_word(datum, p, e)
    if len(word) > 24:
        raise AlcoveError("Bruhat interval too large for desk scale")
    gens = _affine_generators(datum.type_label, p)
    cur = {_affine_identity(datum.rank).key(): _affine_identity(datum.rank)}
    for j in reversed(range(len(word))):
        s = gens[word[j]]
        nxt = dict(cur)
        for el in cur.values():
            prod = s.compose(el)
            nxt[prod.key()] = prod
        cur = nxt
    return list(cur.values())


# ---------------------------------------------------------------------------
# poset ideals


def _dominant_candidates_below(datum, p, gen):
    """Dominant p-regular weights mu with mu <= gen in the rational cone."""
    shifted = tuple(a + b for a, b in zip(gen, datum.rho))
    budget = sum(datum.pairing(shifted, av) for av in datum.positive_coroots)
    unit = [
        sum(av[j] for av in datum.positive_coroots) for j in range(datum.rank)
    ]  # <w_j, 2 rho_vee>
    bounds = [budget // unit[j] + 1 for j in range(datum.rank)]
    out = []
    for coords in product(*[range(b + 1) for b in bounds]):
        if not is_p_regular(datum, coords, p, warn=False):
            continue
        out.append(tuple(coords))
    return out


def generate_ideal(datum, generators, order, p):
    """Downward closure of the generators inside regular dominant weights."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if not datum.is_dominant(g):
            raise AlcoveError(f"generator {g} not dominant")
        if not is_p_regular(datum, g, p, warn=False):
            raise SingularWeightError(f"generator {g} is p-singular")
    elements = set()
    if order in ("dominance", "rational-cone", "cone"):
        ordname = "dominance" if order == "dominance" else "rational-cone"
        for g in gens:
            for mu in _dominant_candidates_below(datum, p, g):
                if datum.dominance_leq(mu, g, ordname):
                    elements.add(mu)
    elif order == "bruhat":
        for g in gens:
            zg = alcove_address(datum, g, p)
            lam0 = lambda_zero(datum, g, p)
            y0 = tuple(a + b for a, b in zip(lam0, datum.rho))
            for el in _bruhat_lower_interval(datum, p, zg):
                y = el.apply(y0)
                mu = tuple(a - b for a, b in zip(y, datum.rho))
                if datum.is_dominant(mu):
                    elements.add(mu)
    else:
        raise AlcoveError(f"unknown order {order!r}")
    return PosetIdeal(datum.type_label, p, order, frozenset(elements))


def ideal_report(datum, ideal):
    """Stability, alcove count a(Gamma), Jantzen membership, prime bound."""
    p = ideal.p
    elements = ideal.sorted_elements()
    stable = True
    for gamma in elements:
        gamma0, _ = restricted_decompose(datum, gamma, p)
        if gamma0 not in ideal.elements:
            stable = False
            break
    addresses = {alcove_address(datum, g, p) for g in elements}
    a = len(addresses)
    inside = all(jantzen_contains(datum, g, p) for g in elements)
    h = datum.coxeter_number
    return {
        "stable": stable,
        "a": a,
        "inside_jantzen": inside,
        "prime_bound_ok": p > 6 * a + 3 * h - 4,
    }


# ---------------------------------------------------------------------------
# coset representatives (Appendix)


def coset_reps(datum, omega, p):
    """p^rank coset representatives of pX in X inside omega + ZR.

    Enumerates omega + (nonnegative root combinations) by height, keeping
    the first representative of each class mod p.
    """
    f = datum.index_of_connection()
    from math import gcd

    if gcd(p, f) != 1:
        raise AlcoveError(f"p={p} divides the index of connection {f}")
    need = p**datum.rank
    reps = []
    seen = set()
    height = 0
    while len(reps) < need:
        shell = [
            coords
            for coords in product(range(height + 1), repeat=datum.rank)
            if sum(coords) == height
        ]
        for coords in sorted(shell):
            shift = datum.root_to_weight(coords)
            cand = tuple(a + b for a, b in zip(omega, shift))
            cls = tuple(c % p for c in cand)
            if cls not in seen:
                seen.add(cls)
                reps.append(cand)
                if len(reps) == need:
                    break
        height += 1
        if height > p * datum.coxeter_number * 4:  # pragma: no cover
            raise AlcoveError("coset enumeration did not close")
    return reps
