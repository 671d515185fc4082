import random

import pytest

from mdsdual import grs
from mdsdual.families import canonical_field, enumerate_claims, evaluate_claim, nonexistence_gate
from mdsdual.oracle import (
    SearchCapExceeded,
    brute_min_distance,
    brute_selfdual_exists,
    brute_sigma,
    lagrange_identity_check,
)

T = 3


def test_brute_sigma_examples(gf9):
    res = brute_sigma(gf9, 2, "g")
    assert res.found and res.witness == (0, 1)
    res = brute_sigma(gf9, 4, "eg")
    assert res.found and res.witness == (0, 1, 2)
    assert not brute_sigma(canonical_field(3), 2, "g").found


def test_four_in_sigma_g_nine_is_decided(gf9):
    res = brute_sigma(gf9, 4, "g")
    assert res.found
    assert grs.grs_condition(gf9, res.witness).ok


def test_brute_sigma_errors(gf9):
    with pytest.raises(ValueError):
        brute_sigma(gf9, 3, "g")
    with pytest.raises(ValueError):
        brute_sigma(gf9, 4, "x")
    with pytest.raises(SearchCapExceeded):
        brute_sigma(canonical_field(81), 10, "g", max_subsets=100)


def test_brute_sigma_larger_than_field(gf9):
    assert not brute_sigma(gf9, 12, "g").found


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_canonical_search_agrees_with_full_search(q):
    F = canonical_field(q)
    for n in range(2, q + 2, 2):
        for mode in ("g", "eg"):
            fast = brute_sigma(F, n, mode)
            slow = brute_sigma(F, n, mode, canonical=False)
            assert fast.found == slow.found, (q, n, mode)
            if fast.found:
                assert grs.condition(F, fast.witness, "grs" if mode == "g" else "egrs").ok


def test_selfdual_examples():
    for q, n in [(3, 2), (3, 6), (7, 2), (11, 2)]:
        assert not brute_selfdual_exists(canonical_field(q), n).found
    res = brute_selfdual_exists(canonical_field(9), 2)
    assert res.found
    F = canonical_field(9)
    assert grs.verify_self_dual(F, res.witness)
    assert brute_selfdual_exists(canonical_field(3), 4).found


def test_selfdual_cap():
    with pytest.raises(SearchCapExceeded):
        brute_selfdual_exists(canonical_field(25), 6, max_matrices=1000)


def test_gate_agrees_with_enumeration():
    for q, n in [(3, 2), (3, 6), (7, 2), (7, 6), (11, 2), (19, 2), (23, 2)]:
        assert nonexistence_gate(q, n) == "blocked"
        assert not brute_selfdual_exists(canonical_field(q), n).found


def test_lagrange_examples(gf9):
    assert lagrange_identity_check(gf9, [0, 1, 2])
    assert lagrange_identity_check(gf9, [0, 1])
    assert lagrange_identity_check(gf9, [T])


@pytest.mark.parametrize("q", [9, 25, 49, 81])
def test_lagrange_random(q):
    F = canonical_field(q)
    rng = random.Random(q)
    for _ in range(100):
        assert lagrange_identity_check(F, rng.sample(range(q), rng.randint(1, min(q, 10))))


def test_min_distance_examples(gf9):
    assert brute_min_distance(gf9, [[1, 1, 1, 0], [0, 1, 2, 1]]) == 3
    assert brute_min_distance(gf9, [[T, 1]]) == 2
    assert brute_min_distance(gf9, [[1, 0], [0, 1]]) == 1
    with pytest.raises(SearchCapExceeded):
        brute_min_distance(gf9, [[1] * 10] * 8, max_codewords=100)


@pytest.mark.parametrize("q", [9, 25])
def test_containment(q):
    F = canonical_field(q)
    for claim in enumerate_claims(q, 8):
        c = evaluate_claim(claim)
        if c.status == "passed":
            assert brute_sigma(F, c.n, c.sigma_kind).found


@pytest.mark.parametrize("q", [9, 25])
def test_verified_codes_meet_singleton(q):
    F = canonical_field(q)
    for claim in enumerate_claims(q, 8):
        if evaluate_claim(claim).status != "passed":
            continue
        art, _ = grs.build_code(F, claim.points, claim.code_kind)
        if q**art.k <= 10**6:
            assert brute_min_distance(F, art.matrix) == art.length - art.k + 1


def test_search_result_json(gf9):
    d = brute_sigma(gf9, 2, "g").to_dict()
    assert d == {"q": 9, "n": 2, "mode": "sigma_g", "found": True, "witness": [0, 1], "subsets_examined": 1}
    d = brute_selfdual_exists(gf9, 2).to_dict()
    assert d["witness"] and isinstance(d["witness"][0], list)
