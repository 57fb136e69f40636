from itertools import product

import pytest

from koszulkit import alcove
from koszulkit.alcove import (
    AffineWeylElement,
    AlcoveError,
    PosetIdeal,
    SingularWeightError,
    alcove_address,
    alcove_address_search,
    coset_reps,
    generate_ideal,
    ideal_report,
    is_p_regular,
    jantzen_contains,
    lambda_zero,
    length,
    length_oracle,
    parity_check,
    restricted_decompose,
    two_ht,
)
from koszulkit.rootdata import root_datum


A1 = root_datum("A1")
A2 = root_datum("A2")


def regular_dominant_sweep(datum, p, bound):
    """All p-regular dominant tau with <tau+rho, a0vee> <= bound."""
    out = []
    unit = datum.highest_short_coroot
    top = bound
    for coords in product(range(top + 1), repeat=datum.rank):
        shifted = tuple(a + b for a, b in zip(coords, datum.rho))
        if datum.pairing(shifted, unit) > bound:
            continue
        if is_p_regular(datum, coords, p, warn=False):
            out.append(coords)
    return out


def test_is_p_regular_a1():
    assert not is_p_regular(A1, (4,), 5, warn=False)
    assert is_p_regular(A1, (7,), 5, warn=False)


def test_is_p_regular_a2():
    assert is_p_regular(A2, (1, 1), 5, warn=False)


def test_restricted_decompose():
    assert restricted_decompose(A1, (13,), 5) == ((3,), (2,))
    assert restricted_decompose(A1, (4,), 5) == ((4,), (0,))
    assert restricted_decompose(A2, (4, 5), 3) == ((1, 2), (1, 1))
    with pytest.raises(AlcoveError):
        restricted_decompose(A1, (-1,), 5)


def test_alcove_address_a1():
    z = alcove_address(A1, (1,), 5)
    assert z == AffineWeylElement((0,), ())
    z7 = alcove_address(A1, (7,), 5)
    assert z7.theta == (1,) and z7.word == (0,)
    assert lambda_zero(A1, (7,), 5) == (1,)
    z11 = alcove_address(A1, (11,), 5)
    assert z11.theta == (1,) and z11.word == ()
    assert lambda_zero(A1, (11,), 5) == (1,)


def test_alcove_address_reconstructs():
    for p in (5, 7):
        for tau in regular_dominant_sweep(A2, p, 3 * p):
            z = alcove_address(A2, tau, p)
            lam0 = lambda_zero(A2, tau, p)
            assert z.dot(A2, p, lam0) == tau


def test_alcove_address_matches_search():
    for tau in regular_dominant_sweep(A1, 5, 20):
        assert alcove_address(A1, tau, 5) == alcove_address_search(A1, tau, 5)
    for tau in regular_dominant_sweep(A2, 5, 12):
        assert alcove_address(A2, tau, 5) == alcove_address_search(A2, tau, 5)


def test_singular_weight_rejected():
    with pytest.raises(SingularWeightError):
        alcove_address(A1, (4,), 5)
    with pytest.raises(SingularWeightError):
        length(A1, (9,), 5)


def test_length_a1_examples():
    assert length(A1, (1,), 5) == 0
    # paper formula: -l(w) + 2 ht(theta)
    assert length(A1, (11,), 5) == 2
    assert length(A1, (7,), 5) == 1


def test_length_oracle_a1_examples():
    # tau=11: walls m=4 and m=9 crossed positively
    assert length_oracle(A1, (11,), 5) == 2
    assert length_oracle(A1, (7,), 5) == 1
    assert length_oracle(A1, (1,), 5) == 0


def test_length_matches_oracle_sweep():
    for label in ("A1", "A2"):
        d = root_datum(label)
        for p in (5, 7):
            for tau in regular_dominant_sweep(d, p, 2 * p):
                assert length(d, tau, p) == length_oracle(d, tau, p), (label, p, tau)


def test_two_ht_even():
    for label in ("A1", "A2", "B2", "G2"):
        d = root_datum(label)
        for coords in product(range(-2, 3), repeat=d.rank):
            assert two_ht(d, coords) % 2 == 0


def test_parity_check_examples():
    assert length(A1, (1,), 5) == 0 and length(A1, (11,), 5) == 2
    assert parity_check(A1, (1,), (1,), 5)
    assert length(A1, (7,), 5) == 1 and length(A1, (17,), 5) == 3
    assert parity_check(A1, (7,), (1,), 5)
    assert parity_check(A1, (3,), (0,), 5)


def test_parity_sweep_a2():
    p = 5
    for tau in regular_dominant_sweep(A2, p, 2 * p):
        for theta in product(range(-1, 2), repeat=2):
            shift = A2.root_to_weight(theta)
            tau2 = tuple(a + p * b for a, b in zip(tau, shift))
            if not is_p_regular(A2, tau2, p, warn=False):
                continue
            assert parity_check(A2, tau, theta, p)


def test_dominant_alcove_length_is_coxeter_length():
    # when z.C+ is dominant the signed distance equals the Coxeter length
    for label, p in (("A1", 5), ("A2", 5)):
        d = root_datum(label)
        base = [
            lam
            for lam in product(range(p), repeat=d.rank)
            if alcove._in_bottom_alcove(
                d, tuple(a + b for a, b in zip(lam, d.rho)), p
            )
        ]
        for tau in regular_dominant_sweep(d, p, 3 * p):
            z = alcove_address(d, tau, p)
            if all(d.is_dominant(z.dot(d, p, lam)) for lam in base):
                el = alcove._address_to_affine(d, p, z)
                assert length(d, tau, p) == alcove._affine_length(d, p, el)


def test_jantzen_a1():
    assert jantzen_contains(A1, (24,), 5)
    assert not jantzen_contains(A1, (25,), 5)
    assert jantzen_contains(A1, (0,), 5)


def test_jantzen_a2():
    # bound p(p-h+2) = 5*4 = 20 for h=3
    assert jantzen_contains(A2, (1, 1), 5)


def test_generate_ideal_dominance():
    ideal = generate_ideal(A1, [(7,)], "dominance", 5)
    assert ideal.sorted_elements() == [(1,), (3,), (5,), (7,)]


def test_generate_ideal_cone():
    ideal = generate_ideal(A1, [(7,)], "rational-cone", 5)
    assert ideal.sorted_elements() == [(0,), (1,), (2,), (3,), (5,), (6,), (7,)]


def test_generate_ideal_minimal():
    ideal = generate_ideal(A1, [(1,)], "dominance", 5)
    assert ideal.sorted_elements() == [(1,)]


def test_generate_ideal_rejects_singular():
    with pytest.raises(SingularWeightError):
        generate_ideal(A1, [(4,)], "dominance", 5)


def test_empty_ideal_rejected():
    with pytest.raises(AlcoveError):
        PosetIdeal("A1", 5, "dominance", frozenset())


def test_ideal_report_examples():
    ideal = generate_ideal(A1, [(7,)], "dominance", 5)
    rep = ideal_report(A1, ideal)
    assert rep["stable"] is False  # 7 -> gamma0 = 2 not in the ideal
    assert rep["a"] == 2

    ideal2 = generate_ideal(A1, [(7,)], "rational-cone", 5)
    rep2 = ideal_report(A1, ideal2)
    assert rep2["stable"] is True
    assert rep2["a"] == 2
    assert rep2["inside_jantzen"] is True
    assert rep2["prime_bound_ok"] is False  # need p > 14

    ideal3 = PosetIdeal("A1", 5, "dominance", frozenset([(0,)]))
    rep3 = ideal_report(A1, ideal3)
    assert rep3["stable"] is True
    assert rep3["a"] == 1
    assert rep3["prime_bound_ok"] is False  # 5 <= 6+6-4


def test_cone_ideals_are_stable_random():
    import random

    rng = random.Random(7)
    for label, p in (("A1", 5), ("A2", 5), ("A1", 7), ("A2", 7)):
        d = root_datum(label)
        pool = regular_dominant_sweep(d, p, 3 * p)
        for _ in range(10):
            gens = rng.sample(pool, min(2, len(pool)))
            ideal = generate_ideal(d, gens, "rational-cone", p)
            assert ideal_report(d, ideal)["stable"] is True


def test_bruhat_ideal_a1():
    ideal = generate_ideal(A1, [(7,)], "bruhat", 5)
    # same-orbit weights below t_alpha s: lam0 = 1 and 7 itself
    assert ideal.sorted_elements() == [(1,), (7,)]


def test_bruhat_leq_basics():
    e = AffineWeylElement((0,), ())
    z = alcove_address(A1, (7,), 5)
    assert alcove.bruhat_leq(A1, 5, e, z)
    assert alcove.bruhat_leq(A1, 5, z, z)
    assert not alcove.bruhat_leq(A1, 5, z, e)


def test_coset_reps_a1():
    assert coset_reps(A1, (0,), 3) == [(0,), (2,), (4,)]
    assert coset_reps(A1, (1,), 3) == [(1,), (3,), (5,)]


def test_coset_reps_counts_and_classes():
    for label, p in (("A1", 5), ("A2", 5), ("A2", 7)):
        d = root_datum(label)
        reps = coset_reps(d, (0,) * d.rank, p)
        assert len(reps) == p**d.rank
        classes = {tuple(c % p for c in r) for r in reps}
        assert len(classes) == p**d.rank
        for r in reps:
            coords = d.weight_to_root_coords(r)
            assert all(c.denominator == 1 for c in coords)


def test_coset_reps_bad_prime():
    with pytest.raises(AlcoveError):
        coset_reps(A1, (0,), 2)  # p divides the index of connection
