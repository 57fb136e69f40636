from fractions import Fraction
from itertools import product

import pytest

from koszulkit.rootdata import RootDatumError, root_datum


ALL_TYPES = ["A1", "A2", "B2", "G2", "A3"]


def test_pairing_a1_fundamental():
    d = root_datum("A1")
    for m in range(-5, 6):
        assert d.pairing((m,), (1,)) == m


def test_pairing_a2_rho_highest_coroot():
    d = root_datum("A2")
    # brute force: a0vee = sum of the simple coroots
    expected = d.pairing((1, 1), (1, 0)) + d.pairing((1, 1), (0, 1))
    assert d.pairing((1, 1), d.highest_short_coroot) == expected == 2
    assert expected == d.coxeter_number - 1


def test_pairing_zero_weight():
    d = root_datum("A1")
    assert d.pairing((0,), (1,)) == 0


def test_pairing_dimension_mismatch():
    d = root_datum("A2")
    with pytest.raises(RootDatumError):
        d.pairing((1,), (1, 0))


def test_rho_pairing_all_types():
    for label in ALL_TYPES:
        d = root_datum(label)
        assert d.pairing(d.rho, d.highest_short_coroot) == d.coxeter_number - 1


def test_positive_root_counts():
    expected = {"A1": 1, "A2": 3, "B2": 4, "G2": 6, "A3": 6}
    for label, n in expected.items():
        assert len(root_datum(label).positive_roots) == n


def test_dominance_a1():
    d = root_datum("A1")
    assert d.dominance_leq((1,), (7,))  # 7-1 = 3 alpha
    assert not d.dominance_leq((2,), (7,))
    assert d.dominance_leq((2,), (7,), "rational-cone")


def test_dominance_a2_by_enumeration():
    d = root_datum("A2")
    # solve (1,1) - (0,0) = x*alpha1 + y*alpha2 by enumeration
    target = (1, 1)
    hits = [
        (x, y)
        for x in range(4)
        for y in range(4)
        if d.root_to_weight((x, y)) == target
    ]
    assert hits == [(1, 1)]
    assert d.dominance_leq((0, 0), (1, 1))


def test_dot_action_a1():
    d = root_datum("A1")
    for m in range(-4, 5):
        assert d.dot_action((0,), (m,)) == (-m - 2,)
        assert d.dot_action((), (m,)) == (m,)


def test_dot_action_invalid_generator():
    d = root_datum("A1")
    with pytest.raises(RootDatumError):
        d.dot_action((3,), (1,))


def test_opposition_a2():
    d = root_datum("A2")
    # -w0 on A2 swaps the fundamental weights; w0 found by brute force
    w0 = d.longest_word()
    assert d.weyl_apply(w0, (1, 1)) == (-1, -1)
    assert d.opposition((1, 1)) == (1, 1)
    assert d.opposition((2, 0)) == (0, 2)


def test_opposition_involution_all_types():
    for label in ALL_TYPES:
        d = root_datum(label)
        lam = tuple(range(1, d.rank + 1))
        assert d.opposition(d.opposition(lam)) == lam


def test_weyl_group_orders():
    orders = {"A1": 2, "A2": 6, "B2": 8, "G2": 12, "A3": 24}
    for label, n in orders.items():
        assert len(root_datum(label).weyl_group()) == n


def test_words_are_reduced():
    for label in ALL_TYPES:
        d = root_datum(label)
        for M, word in d.weyl_group().items():
            # length = number of positive roots sent negative
            neg = 0
            for beta in d.positive_roots:
                img = d.weyl_apply(word, d.root_to_weight(beta))
                coords = d.weight_to_root_coords(img)
                if all(c <= 0 for c in coords):
                    neg += 1
            assert neg == len(word)


def test_dot_equivariance_rank_le_2():
    # pairing(w.lam + rho, av) = pairing(lam + rho, w^-1 av)
    for label in ["A1", "A2", "B2"]:
        d = root_datum(label)
        lam = tuple(range(1, d.rank + 1))
        shifted = tuple(a + b for a, b in zip(lam, d.rho))
        for M, word in d.weyl_group().items():
            inv = tuple(reversed(word))
            for beta, betav in zip(d.positive_roots, d.positive_coroots):
                lhs = d.pairing(
                    tuple(a + b for a, b in zip(d.dot_action(word, lam), d.rho)),
                    betav,
                )
                # w^-1(beta) as a root, with its coroot
                img = d.weyl_apply(inv, d.root_to_weight(beta))
                coords = tuple(int(c) for c in d.weight_to_root_coords(img))
                sign = 1
                if all(c <= 0 for c in coords):
                    sign = -1
                    coords = tuple(-c for c in coords)
                idx = d.positive_roots.index(coords)
                rhs = sign * d.pairing(shifted, d.positive_coroots[idx])
                assert lhs == rhs


def test_dominance_is_partial_order_on_box():
    d = root_datum("A2")
    box = [w for w in product(range(4), repeat=2)]
    for a in box:
        assert d.dominance_leq(a, a)
        for b in box:
            if d.dominance_leq(a, b) and d.dominance_leq(b, a):
                assert a == b
            for c in box:
                if d.dominance_leq(a, b) and d.dominance_leq(b, c):
                    assert d.dominance_leq(a, c)


def test_weight_root_roundtrip():
    for label in ALL_TYPES:
        d = root_datum(label)
        for beta in d.positive_roots:
            back = d.weight_to_root_coords(d.root_to_weight(beta))
            assert tuple(int(c) for c in back) == beta
            assert all(c.denominator == 1 for c in back)


def test_index_of_connection():
    expected = {"A1": 2, "A2": 3, "B2": 2, "G2": 1, "A3": 4}
    for label, f in expected.items():
        assert root_datum(label).index_of_connection() == f


def test_unknown_type_rejected():
    with pytest.raises(RootDatumError):
        root_datum("E8")
