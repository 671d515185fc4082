import random

import numpy as np
import pytest

from mdsdual import linalg
from mdsdual.field import field_of_order
from mdsdual.oracle import brute_min_distance


@pytest.mark.parametrize("q", [5, 9, 25])
def test_minor_methods_agree(q):
    F = field_of_order(q)
    rng = random.Random(q)
    for _ in range(60):
        k = rng.randint(1, 4)
        N = rng.randint(k, 8)
        G = [[rng.randrange(q) for _ in range(N)] for _ in range(k)]
        fast, _, _ = linalg.all_maximal_minors_nonzero(F, G)
        slow, _ = linalg.all_maximal_minors_by_elimination(F, G)
        assert fast == slow


def test_witness_columns_are_singular(gf9):
    G = [[1, 1, 0, 0], [0, 0, 1, 1]]
    ok, cols, _ = linalg.all_maximal_minors_nonzero(gf9, G)
    assert not ok
    sub = np.asarray(G)[:, list(cols)][None]
    assert not linalg.batched_nonsingular(gf9, sub)[0]


def test_rank_and_row_reduce(gf9):
    assert linalg.rank(gf9, [[1, 2], [2, 1]]) == 1
    assert linalg.rank(gf9, [[1, 0], [0, 1]]) == 2
    R, piv = linalg.row_reduce(gf9, [[0, 2, 1], [1, 1, 1]])
    assert piv == [0, 1]
    assert R[0][0] == 1 and R[1][1] == 1


def test_minimum_weight_matches_oracle(gf25):
    rng = random.Random(5)
    for _ in range(10):
        G = [[rng.randrange(25) for _ in range(6)] for _ in range(2)]
        if linalg.rank(gf25, G) < 2:
            continue
        assert linalg.minimum_weight(gf25, G) == brute_min_distance(gf25, G)
