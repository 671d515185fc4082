"""Random instances for the derivative, split and composition rules of Delta.

Each checker returns the number of violations it found.
"""

import random

from mdsdual import grs
from mdsdual.poly import derive, evaluate, expand_from_roots


def direct_delta(F, S, a):
    acc = 1
    for b in S:
        if b != a:
            acc = F.mul(acc, F.sub(a, b))
    return acc


def check_derivative(F, rng: random.Random) -> int:
    S = rng.sample(range(F.q), rng.randint(1, min(F.q, 12)))
    fprime = derive(F, expand_from_roots(F, S))
    return sum(direct_delta(F, S, a) != evaluate(F, fprime, a) for a in S)


def check_split(F, rng: random.Random) -> int:
    S = rng.sample(range(F.q), rng.randint(2, min(F.q, 12)))
    cut = rng.randint(1, len(S) - 1)
    S1, S2 = S[:cut], S[cut:]
    f1, f2 = expand_from_roots(F, S1), expand_from_roots(F, S2)
    bad = 0
    for b in S:
        own, other = (S1, f2) if b in S1 else (S2, f1)
        bad += direct_delta(F, S, b) != F.mul(direct_delta(F, own, b), evaluate(F, other, b))
    return bad


def check_composition_power(F, rng: random.Random) -> int:
    """g(x) = x^f with f | q-1: every nonzero f-th power has exactly f preimages."""
    divisors = [f for f in range(2, F.q) if (F.q - 1) % f == 0 and f % F.p]
    f = rng.choice(divisors)
    image = sorted({F.pow(a, f) for a in range(1, F.q)})
    M = rng.sample(image, rng.randint(1, min(len(image), 4)))
    S = [b for b in range(1, F.q) if F.pow(b, f) in M]
    bad = 0
    for b in S:
        a = F.pow(b, f)
        gprime = F.mul(F.from_int(f), F.pow(b, f - 1))
        bad += direct_delta(F, S, b) != F.mul(direct_delta(F, M, a), gprime)
    return bad


def random_subspace(F, rng: random.Random, dim: int) -> list[int]:
    basis, span = [], {0}
    while len(basis) < dim:
        x = rng.randrange(1, F.q)
        if x in span:
            continue
        basis.append(x)
        span = {F.add(s, F.mul(c, x)) for s in span for c in range(F.p)}
    return sorted(span)


def check_composition_subspace(F, rng: random.Random) -> int:
    """g = vanishing polynomial of an additive subgroup V; g' is the constant coefficient of x."""
    V = random_subspace(F, rng, rng.randint(1, F.m - 1) if F.m > 1 else 1)
    g = expand_from_roots(F, V)
    gprime = g[1]
    image = sorted({evaluate(F, g, a) for a in range(F.q)})
    M = rng.sample(image, rng.randint(1, min(len(image), 3)))
    S = [b for b in range(F.q) if evaluate(F, g, b) in M]
    bad = 0
    for b in S:
        bad += direct_delta(F, S, b) != F.mul(direct_delta(F, M, evaluate(F, g, b)), gprime)
    return bad


def check_library_delta(F, rng: random.Random) -> int:
    S = rng.sample(range(F.q), rng.randint(1, min(F.q, 12)))
    ds = grs.deltas(F, S)
    return sum(
        d != direct_delta(F, S, a) or grs.delta(F, S, a) != d or grs.delta_by_derivative(F, S, a) != d
        for a, d in zip(S, ds)
    )


CHECKS = {
    "derivative": check_derivative,
    "split": check_split,
    "composition_power": check_composition_power,
    "composition_subspace": check_composition_subspace,
    "library_delta": check_library_delta,
}
