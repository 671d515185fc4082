"""Evaluation-set constructions for MDS self-dual (E)GRS codes.

Each recipe returns ``Claim`` records: a candidate length ``n`` together with
the evaluation set that should realise it.  Claims start ``unverified``;
``evaluate_claim`` runs the character criterion and the pipeline in
``mdsdual.pipeline`` builds and certifies the actual code.  Recipes never
trust their own statement: a claim whose set fails the criterion is kept and
reported as failed.

All "choose some element" steps are completed deterministically by taking
the smallest element index that qualifies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field, replace
from functools import lru_cache
from math import gcd

import numpy as np

from . import grs
from .field import Field, FieldError, Subfield, embed, is_prime, norm_table, prime_power, trace_table

FAMILIES = (
    "subfield",
    "affine_union",
    "cyclotomic",
    "cyclotomic_scaled",
    "trace_kernel",
    "trace_lift",
    "norm_fiber",
)
CYCLOTOMIC_CASES = ("I1", "I2A", "I2B", "II")


class ConstructionError(ValueError):
    pass


class BlockedByNonexistence(ConstructionError):
    """No self-dual code of this length exists over this field."""


class UnverifiedBase(ConstructionError):
    pass


@lru_cache(maxsize=32)
def canonical_field(q: int) -> Field:
    p, m = prime_power(q)
    return Field(p, m)


def nonexistence_gate(q: int, n: int) -> str:
    """'blocked' when q = 3 and n = 2 (mod 4), else 'open'."""
    return "blocked" if q % 4 == 3 and n % 4 == 2 else "open"


@dataclass(frozen=True)
class Claim:
    field: Field = dc_field(repr=False)
    n: int
    sigma_kind: str  # g | eg
    family: str
    params: dict = dc_field(compare=False)
    points: tuple = dc_field(repr=False)
    status: str = "unverified"  # unverified | passed | failed
    failure_witness: tuple | None = None

    def __post_init__(self):
        if self.n % 2 or self.n < 2:
            raise ConstructionError(f"claimed length {self.n} is not an even number >= 2")
        expected = self.n if self.sigma_kind == "g" else self.n - 1
        if self.sigma_kind not in ("g", "eg"):
            raise ConstructionError(f"unknown sigma kind {self.sigma_kind!r}")
        if len(self.points) != expected:
            raise ConstructionError(f"set has {len(self.points)} points, expected {expected}")
        if len(set(self.points)) != len(self.points):
            raise ConstructionError("evaluation set has duplicates")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def code_kind(self) -> str:
        return "grs" if self.sigma_kind == "g" else "egrs"

    def to_dict(self) -> dict:
        out = {
            "q": self.q,
            "n": self.n,
            "sigma_kind": self.sigma_kind,
            "family": self.family,
            "params": self.params,
            "set": list(self.points),
            "status": self.status,
        }
        if self.failure_witness is not None:
            out["failure_witness"] = list(self.failure_witness)
        return out


def _claim(F: Field, n: int, kind: str, family: str, params: dict, points) -> Claim:
    if nonexistence_gate(F.q, n) == "blocked":
        raise BlockedByNonexistence(f"no self-dual code of length {n} exists over GF({F.q})")
    return Claim(F, n, kind, family, params, tuple(int(a) for a in points))


def evaluate_claim(claim: Claim) -> Claim:
    """Run the character criterion on the claim's set and record the outcome."""
    cond = grs.condition(claim.field, claim.points, claim.code_kind)
    if cond.ok:
        return replace(claim, status="passed", failure_witness=None)
    return replace(claim, status="failed", failure_witness=cond.witness)


def _square_field(r: int) -> tuple[Field, Subfield]:
    if r < 3 or r % 2 == 0:
        raise ConstructionError(f"r = {r} must be an odd prime power")
    try:
        p, m = prime_power(r)
    except FieldError as exc:
        raise ConstructionError(str(exc)) from None
    F = canonical_field(r * r)
    return F, F.subfield(m)


# -- subfield sets


def subfield_set(r: int, n: int, kind: str) -> Claim:
    """n points of GF(r) inside GF(r^2)."""
    F, sub = _square_field(r)
    if n % 2:
        raise ConstructionError("n must be even")
    elems = sub.elements()
    if kind == "g":
        if not 2 <= n <= r - 1:
            raise ConstructionError(f"grs subfield length needs 2 <= n <= r-1 = {r - 1}")
        pts = elems[:n]
    elif kind == "eg":
        if not 4 <= n <= r + 1:
            raise ConstructionError(f"egrs subfield length needs 4 <= n <= r+1 = {r + 1}")
        pts = elems[: n - 1]
    else:
        raise ConstructionError(f"unknown sigma kind {kind!r}")
    return _claim(F, n, kind, "subfield", {"r": r}, pts)


# -- unions of cosets of an additive subspace


def _span(F: Field, basis, scalars) -> list[int]:
    span = [0]
    for b in basis:
        span = [F.add(s, F.mul(c, b)) for c in scalars for s in span]
    return span


def affine_union(p: int, m: int, l: int, k: int) -> Claim:
    """k cosets b_i*gamma + V of an l'-dimensional GF(p^d)-subspace V of GF(p^m)."""
    if not is_prime(p) or p == 2:
        raise ConstructionError("p must be an odd prime")
    if not 1 <= l <= m:
        raise ConstructionError("need 1 <= l <= m")
    d = gcd(l, m)
    if not 1 <= k <= p**d:
        raise ConstructionError(f"need 1 <= k <= p^gcd(l,m) = {p**d}")
    r = p**m
    F, sub_r = _square_field(r)
    small = F.subfield(d)
    scalars = small.elements()
    l_prime = l // d
    basis: list[int] = []
    span = {0}
    for x in sub_r.elements():
        if len(basis) == l_prime:
            break
        if x not in span:
            basis.append(x)
            span = set(_span(F, basis, scalars))
    V = sorted(span)
    gamma = next(x for x in F.elements() if not sub_r.member(x))
    bs = scalars[:k]
    pts = [F.add(F.mul(b, gamma), v) for b in bs for v in V]
    params = {
        "p": p, "m": m, "l": l, "k": k, "d": d, "l_prime": l_prime,
        "basis": basis, "gamma": gamma, "b": bs,
    }
    if k % 2 == 0:
        return _claim(F, k * p**l, "g", "affine_union", params, pts)
    return _claim(F, k * p**l + 1, "eg", "affine_union", params, pts)


# -- unions of cosets of a multiplicative subgroup


def _coset_union(F: Field, beta_exp: int, indices, e: int, f: int) -> list[int]:
    return [F.theta_pow(beta_exp * i + e * j) for i in indices for j in range(f)]


def coset_radius(r: int, f: int) -> int:
    """Number of distinct cosets beta^i C reachable with beta = theta^(r-1)."""
    return (r + 1) // gcd(r + 1, f)


def cyclotomic_union(r: int, f: int, t: int, case: str) -> Claim:
    """Union of t cosets beta^i C with C the order-f subgroup and beta = theta^(r-1)."""
    F, _ = _square_field(r)
    q = F.q
    if f < 1 or (q - 1) % f:
        raise ConstructionError(f"f = {f} does not divide q-1 = {q - 1}")
    e = (q - 1) // f
    R = coset_radius(r, f)
    tf = t * f
    if t < 1:
        raise ConstructionError("t must be positive")
    half_shift = (t - 1) * (r + 1) // 2
    if case == "I1":
        if tf % 2 or e % 2 or t > R:
            raise ConstructionError("case I1 needs tf even, e even and t <= R")
        indices = tuple(range(t))
    elif case == "I2A":
        if tf % 2 or f % 2 or ((t - 1) * (r + 1)) % 4 or t > R:
            raise ConstructionError("case I2A needs tf even, f even, 4 | (t-1)(r+1) and t <= R")
        indices = tuple(range(t))
    elif case == "I2B":
        if tf % 2 or f % 2 == 0 or t > R:
            raise ConstructionError("case I2B needs tf even, f odd and t <= R")
        indices = next(
            (c for c in itertools.combinations(range(R), t) if sum(c) % 2 == half_shift % 2),
            None,
        )
        if indices is None:
            raise ConstructionError("no index tuple with the required parity")
    elif case == "II":
        if tf % 2 == 0 or 2 * t > R:
            raise ConstructionError("case II needs tf odd and t <= R/2")
        indices = tuple(2 * mu - 1 for mu in range(1, t + 1))
    else:
        raise ConstructionError(f"unknown case {case!r}")
    if len({i % R for i in indices}) != len(indices):
        raise ConstructionError("coset indices are not distinct modulo R")
    pts = _coset_union(F, r - 1, indices, e, f)
    include_zero = case in ("I2A", "I2B")
    params = {
        "r": r, "e": e, "f": f, "t": t, "case": case, "indices": list(indices),
        "alpha": F.theta_pow(e), "beta": F.theta_pow(r - 1), "I": sum(indices), "R": R,
        "include_zero": include_zero,
    }
    if case == "I1":
        return _claim(F, tf, "g", "cyclotomic", params, pts)
    if include_zero:
        return _claim(F, tf + 2, "eg", "cyclotomic", params, pts + [0])
    return _claim(F, tf + 1, "eg", "cyclotomic", params, pts)


def cyclotomic_exponent(r: int, e: int, f: int, t: int, i_mu: int, j: int, I: int) -> int:
    """Parity exponent d with eta(Delta_S(beta^i_mu alpha^j)) = (-1)^d."""
    return e * j + (t - 1) * (r + 1) // 2 + f * (i_mu * t + I)


def cyclotomic_exponent_with_zero(r: int, f: int, t: int, i_mu: int, I: int) -> int:
    """Parity exponent for the same point once 0 joins the set."""
    return (t - 1) * (r + 1) // 2 + f * (i_mu * t + I)


def scaled_radius(r: int, s: int, f: int) -> int:
    return s * (r - 1) // gcd(s * (r - 1), f)


def cyclotomic_union_scaled(r: int, f: int, s: int, t: int) -> list[Claim]:
    """Cosets beta^1 C, ..., beta^t C with beta = theta^((r+1)/s).

    Returns the egrs claim (0 appended) and, when e is even, the grs claim.
    """
    F, _ = _square_field(r)
    q = F.q
    if f < 1 or (q - 1) % f:
        raise ConstructionError(f"f = {f} does not divide q-1 = {q - 1}")
    if s < 2 or s % 2 or f % s or (r + 1) % (2 * s):
        raise ConstructionError("need 2 | s | f and 2s | r+1")
    D = scaled_radius(r, s, f)
    if not 1 <= t <= D:
        raise ConstructionError(f"need 1 <= t <= D = {D}")
    e = (q - 1) // f
    beta_exp = (r + 1) // s
    pts = _coset_union(F, beta_exp, range(1, t + 1), e, f)
    params = {
        "r": r, "e": e, "f": f, "s": s, "t": t, "D": D,
        "alpha": F.theta_pow(e), "beta": F.theta_pow(beta_exp),
    }
    claims = [_claim(F, t * f + 2, "eg", "cyclotomic_scaled", params, pts + [0])]
    if e % 2 == 0:
        claims.append(_claim(F, t * f, "g", "cyclotomic_scaled", params, pts))
    return claims


# -- trace and norm constructions


def trace_kernel_union(r: int, l: int, d: int) -> Claim:
    """The first l points of GF(r)* together with the kernel of x + x^r (d = 1)."""
    F, sub = _square_field(r)
    if d not in (0, 1) or not 0 <= l <= r - 1:
        raise ConstructionError("need d in {0, 1} and 0 <= l <= r-1")
    if d == 0:
        base = subfield_set(r, l, "g") if l % 2 == 0 else subfield_set(r, l + 1, "eg")
        return replace(base, family="trace_kernel", params={"r": r, "l": l, "d": 0})
    tr = trace_table(sub)
    V = [int(a) for a in np.flatnonzero(tr == 0)]
    M = sub.nonzero()[:l]
    params = {"r": r, "l": l, "d": 1, "M": M}
    if (l + d) % 2 == 0:
        return _claim(F, l + r, "g", "trace_kernel", params, M + V)
    return _claim(F, l + r + 1, "eg", "trace_kernel", params, M + V)


def _require_passed(base: Claim) -> None:
    if base.status != "passed":
        raise UnverifiedBase(f"base claim is {base.status}; verify it first")


def trace_lift(base: Claim, l: int) -> Claim:
    """Lift a base set M over GF(q) to the union of trace fibres a*theta + ker Tr in GF(q^l)."""
    _require_passed(base)
    F0 = base.field
    q0 = F0.q
    size = len(base.points)
    if l < 2:
        raise ConstructionError("lift degree must be >= 2")
    if base.sigma_kind == "g" and not 2 <= size <= q0 - 1:
        raise ConstructionError(f"grs base needs 2 <= n <= q-1 = {q0 - 1}")
    if base.sigma_kind == "eg" and not (size % 2 and size <= q0):
        raise ConstructionError(f"egrs base needs an odd set of size <= q = {q0}")
    Q = q0**l
    try:
        FQ = canonical_field(Q)
    except FieldError as exc:
        raise ConstructionError(str(exc)) from None
    emb = embed(F0, FQ)
    M = [emb[a] for a in base.points]
    sub = FQ.subfield(F0.m)
    tr = trace_table(sub)
    theta = int(np.flatnonzero(tr == 1)[0])
    V = [int(a) for a in np.flatnonzero(tr == 0)]
    pts = [FQ.add(FQ.mul(a, theta), v) for a in M for v in V]
    params = {
        "base_q": q0, "base_n": base.n, "base_kind": base.sigma_kind, "base_family": base.family,
        "base_set": list(base.points), "l": l, "theta": theta,
    }
    lifted = size * q0 ** (l - 1)
    if base.sigma_kind == "g":
        return _claim(FQ, lifted, "g", "trace_lift", params, pts)
    return _claim(FQ, lifted + 1, "eg", "trace_lift", params, pts)


def norm_fiber_union(r: int, s: int, l: int, base: Claim | None = None) -> list[Claim]:
    """Union of norm fibres b_i * ker(N) over l chosen values of GF(r)*, in GF(r^s).

    Even s: the values are the first l nonzero squares of GF(r) and both the
    grs claim and the egrs claim (0 appended) are returned.  Odd s: the values
    come from a verified base claim over GF(r).
    """
    if r < 3 or r % 2 == 0:
        raise ConstructionError("r must be an odd prime power")
    try:
        p, m = prime_power(r)
        F = canonical_field(r**s)
    except FieldError as exc:
        raise ConstructionError(str(exc)) from None
    if s < 2:
        raise ConstructionError("s must be >= 2")
    sub = F.subfield(m)
    q = F.q
    fibre = (q - 1) // (r - 1)
    B = [F.theta_pow((r - 1) * j) for j in range(fibre)]
    norms = norm_table(sub)

    def preimage(a: int) -> int:
        return int(np.flatnonzero(norms == a)[0])

    if s % 2 == 0:
        if not 1 <= l <= (r - 1) // 2:
            raise ConstructionError(f"need 1 <= l <= (r-1)/2 = {(r - 1) // 2}")
        M = [a for a in sub.nonzero() if sub.quadratic_character(a) == 1][:l]
        bs = []
        for a in M:
            root = F.sqrt(a)
            bs.append(F.mul(preimage(root), preimage(root)))
        pts = [F.mul(b, c) for b in bs for c in B]
        params = {"r": r, "s": s, "l": l, "M": M, "b": bs}
        return [
            _claim(F, l * fibre, "g", "norm_fiber", params, pts),
            _claim(F, l * fibre + 2, "eg", "norm_fiber", params, pts + [0]),
        ]

    if base is None:
        raise UnverifiedBase("odd s needs a base claim over GF(r)")
    _require_passed(base)
    if base.q != r:
        raise ConstructionError(f"base claim lives over GF({base.q}), expected GF({r})")
    M0 = list(base.points)
    if len(M0) != l or not 1 <= l <= r - 1:
        raise ConstructionError(f"base set must have l = {l} points with 1 <= l <= r-1")
    if (l % 2 == 0) != (base.sigma_kind == "g"):
        raise ConstructionError("even l needs a grs base, odd l an egrs base")
    F0 = base.field
    shift = next(c for c in F0.elements() if all(F0.add(a, c) != 0 for a in M0))
    M0 = [F0.add(a, shift) for a in M0]
    emb = embed(F0, F)
    M = [emb[a] for a in M0]
    bs = [preimage(a) for a in M]
    pts = [F.mul(b, c) for b in bs for c in B]
    params = {"r": r, "s": s, "l": l, "base_set": list(base.points), "shift": shift, "M": M, "b": bs}
    if l % 2 == 0:
        return [_claim(F, l * fibre, "g", "norm_fiber", params, pts)]
    return [_claim(F, l * fibre + 1, "eg", "norm_fiber", params, pts)]


# -- enumeration


def _search_base(q0: int, size: int) -> Claim | None:
    from .oracle import SearchCapExceeded, brute_sigma

    F0 = canonical_field(q0)
    n0 = size if size % 2 == 0 else size + 1
    mode = "g" if size % 2 == 0 else "eg"
    if nonexistence_gate(q0, n0) == "blocked":
        return None
    try:
        res = brute_sigma(F0, n0, mode)
    except SearchCapExceeded:
        return None
    if not res.found:
        return None
    return Claim(F0, n0, mode, "search", {"q": q0}, tuple(res.witness), status="passed")


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _candidates(q: int, n_max: int):
    F = canonical_field(q)
    p, m = F.p, F.m
    if m % 2 == 0:
        r = p ** (m // 2)
        for n in range(2, min(r - 1, n_max) + 1, 2):
            yield lambda n=n: [subfield_set(r, n, "g")]
        for n in range(4, min(r + 1, n_max) + 1, 2):
            yield lambda n=n: [subfield_set(r, n, "eg")]
        half = m // 2
        for l in range(1, half + 1):
            for k in range(1, p ** gcd(l, half) + 1):
                if k * p**l + (k % 2) <= n_max:
                    yield lambda l=l, k=k: [affine_union(p, half, l, k)]
        for f in _divisors(q - 1):
            R = coset_radius(r, f)
            for t in range(1, R + 1):
                if t * f > n_max:
                    break
                for case in CYCLOTOMIC_CASES:
                    yield lambda f=f, t=t, case=case: [cyclotomic_union(r, f, t, case)]
        for s in range(2, r + 2, 2):
            if (r + 1) % (2 * s):
                continue
            for f in _divisors(q - 1):
                if f % s:
                    continue
                for t in range(1, scaled_radius(r, s, f) + 1):
                    if t * f > n_max:
                        break
                    yield lambda f=f, s=s, t=t: cyclotomic_union_scaled(r, f, s, t)
        for l in range(0, r):
            if l + r + (l + 1) % 2 <= n_max:
                yield lambda l=l: [trace_kernel_union(r, l, 1)]
    for m0 in _divisors(m):
        if m0 == m:
            continue
        q0, deg = p**m0, m // m0
        # trace lifts of searched base sets
        for size in range(1, q0 + 1):
            lifted = size * q0 ** (deg - 1)
            if lifted + (size % 2) > n_max:
                break
            if size % 2 == 0 and size > q0 - 1:
                continue
            yield lambda size=size, q0=q0, deg=deg: _lift_from_search(q0, size, deg)
        # norm fibres
        r0 = q0
        fibre = (q - 1) // (r0 - 1)
        if deg % 2 == 0:
            for l in range(1, (r0 - 1) // 2 + 1):
                if l * fibre > n_max:
                    break
                yield lambda r0=r0, deg=deg, l=l: norm_fiber_union(r0, deg, l)
        else:
            for l in range(1, r0):
                if l * fibre + (l % 2) > n_max:
                    break
                yield lambda r0=r0, deg=deg, l=l: _norm_from_search(r0, deg, l)


def _lift_from_search(q0: int, size: int, deg: int) -> list[Claim]:
    base = _search_base(q0, size)
    return [] if base is None else [trace_lift(base, deg)]


def _norm_from_search(r0: int, deg: int, l: int) -> list[Claim]:
    base = _search_base(r0, l)
    return [] if base is None else norm_fiber_union(r0, deg, l, base)


_KIND_ORDER = {"g": 0, "eg": 1}


def claim_sort_key(c: Claim):
    return (c.n, _KIND_ORDER[c.sigma_kind], FAMILIES.index(c.family))


def enumerate_claims(q: int, n_max: int) -> list[Claim]:
    """Every family instance over GF(q) with length <= n_max, one per (n, kind, family).

    Parameter tuples are tried in a fixed order and the first admissible one
    is kept; blocked lengths never produce claims.
    """
    seen: dict[tuple, Claim] = {}
    for make in _candidates(q, n_max):
        try:
            claims = make()
        except ConstructionError:
            continue
        for c in claims:
            if c.n > n_max:
                continue
            key = (c.n, c.sigma_kind, c.family)
            seen.setdefault(key, c)
    return sorted(seen.values(), key=claim_sort_key)
