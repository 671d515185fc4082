"""Univariate polynomials over a ``Field``.

A polynomial is a list of element indices in ascending degree with no
trailing zeros; the zero polynomial is ``[]``.
"""

from __future__ import annotations

from .field import Field


def trim(coeffs: list[int]) -> list[int]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def degree(P) -> int:
    return len(P) - 1


def poly_add(F: Field, P, Q) -> list[int]:
    n = max(len(P), len(Q))
    P = list(P) + [0] * (n - len(P))
    Q = list(Q) + [0] * (n - len(Q))
    return trim(F.add(a, b) for a, b in zip(P, Q))


def poly_scale(F: Field, P, c: int) -> list[int]:
    return trim(F.mul(a, c) for a in P)


def poly_mul(F: Field, P, Q) -> list[int]:
    if not P or not Q:
        return []
    out = [0] * (len(P) + len(Q) - 1)
    for i, a in enumerate(P):
        if a == 0:
            continue
        for j, b in enumerate(Q):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def expand_from_roots(F: Field, roots) -> list[int]:
    """The monic polynomial prod(x - a) over ``roots``; duplicates are rejected."""
    roots = list(roots)
    if len(set(roots)) != len(roots):
        raise ValueError("roots must be distinct")
    P = [1]
    for a in roots:
        na = F.neg(a)
        # multiply by (x - a) in place
        nxt = [0] * (len(P) + 1)
        for i, c in enumerate(P):
            nxt[i + 1] = F.add(nxt[i + 1], c)
            nxt[i] = F.add(nxt[i], F.mul(c, na))
        P = nxt
    return P


def derive(F: Field, P) -> list[int]:
    """Formal derivative; the factor ``i`` is reduced mod p."""
    return trim(F.mul(F.from_int(i), c) for i, c in enumerate(P) if i > 0)


def evaluate(F: Field, P, a: int) -> int:
    acc = 0
    for c in reversed(P):
        acc = F.add(F.mul(acc, a), c)
    return acc


def compose_eval(F: Field, P, Q, a: int) -> int:
    """P(Q(a))."""
    return evaluate(F, P, evaluate(F, Q, a))


def substitute_power(P, f: int) -> list[int]:
    """Coefficients of P(x^f)."""
    if not P:
        return []
    out = [0] * ((len(P) - 1) * f + 1)
    for i, c in enumerate(P):
        out[i * f] = c
    return out


def support(P) -> list[int]:
    """Exponents carrying a nonzero coefficient."""
    return [i for i, c in enumerate(P) if c]
