import pytest
from hypothesis import given, strategies as st

from mdsdual.field import field_of_order
from mdsdual.poly import compose_eval, derive, evaluate, expand_from_roots, poly_mul, substitute_power, support

T = 3


def test_expand_derive_eval(gf9):
    P = expand_from_roots(gf9, [0, 1, 2])
    assert P == [0, 2, 0, 1]  # x^3 - x
    assert derive(gf9, P) == [2]
    assert evaluate(gf9, P, T) == T


def test_duplicate_roots_rejected(gf9):
    with pytest.raises(ValueError):
        expand_from_roots(gf9, [1, 1])


def test_empty_product_is_one(gf9):
    assert expand_from_roots(gf9, []) == [1]


def test_compose_eval(gf9):
    # P(Q(a)) with P = x^2, Q = x + 1
    assert compose_eval(gf9, [0, 0, 1], [1, 1], T) == gf9.mul(gf9.add(T, 1), gf9.add(T, 1))


def test_substitute_power_and_support():
    assert substitute_power([5, 0, 7], 3) == [5, 0, 0, 0, 0, 0, 7]
    assert support([0, 1, 0, 2]) == [1, 3]


@given(st.sets(st.integers(0, 24), min_size=1, max_size=12))
def test_roots_vanish(roots):
    F = field_of_order(25)
    P = expand_from_roots(F, sorted(roots))
    assert len(P) == len(roots) + 1 and P[-1] == 1
    for a in range(25):
        assert (evaluate(F, P, a) == 0) == (a in roots)


@given(st.lists(st.integers(0, 48), max_size=6), st.lists(st.integers(0, 48), max_size=6), st.integers(0, 48))
def test_mul_and_derive_rules(P, Q, a):
    F = field_of_order(49)
    PQ = poly_mul(F, P, Q)
    assert evaluate(F, PQ, a) == F.mul(evaluate(F, P, a), evaluate(F, Q, a))
    # product rule
    lhs = evaluate(F, derive(F, PQ), a)
    rhs = F.add(
        F.mul(evaluate(F, derive(F, P), a), evaluate(F, Q, a)),
        F.mul(evaluate(F, P, a), evaluate(F, derive(F, Q), a)),
    )
    assert lhs == rhs
