"""Self-duality criteria for (extended) generalized Reed-Solomon codes,
canonical weight vectors, generator matrices and exact verification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb

from . import linalg
from .field import Field
from .poly import derive, evaluate, expand_from_roots

MINORS_LIMIT = 10**6
ENUMERATION_LIMIT = 10**7
SPOT_CHECK_MINORS = 256


class ConditionUnsatisfied(ValueError):
    """The evaluation set fails the self-duality criterion."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class VerificationFailure(RuntimeError):
    """A code built from a condition-passing set failed verification.

    This indicates a defect in the weight rule or the arithmetic and is
    never expected; it is raised rather than reported.
    """


class TooLargeToCertify(RuntimeError):
    pass


def check_evaluation_set(F: Field, points) -> tuple[int, ...]:
    """Validate a duplicate-free, non-empty sequence of field elements."""
    pts = tuple(int(a) for a in points)
    if not pts:
        raise ValueError("evaluation set is empty")
    if len(set(pts)) != len(pts):
        raise ValueError("evaluation set contains duplicates")
    for a in pts:
        if not 0 <= a < F.q:
            raise ValueError(f"{a} is not an element of GF({F.q})")
    return pts


def delta(F: Field, S, a: int) -> int:
    """Product of (a - b) over the other points b of S."""
    if a not in S:
        raise ValueError(f"{a} is not in the evaluation set")
    return F.prod(F.sub(a, b) for b in S if b != a)


def delta_by_derivative(F: Field, S, a: int) -> int:
    if a not in S:
        raise ValueError(f"{a} is not in the evaluation set")
    return evaluate(F, derive(F, expand_from_roots(F, S)), a)


def deltas(F: Field, S) -> list[int]:
    # log-domain accumulation: one table lookup per pair
    n1 = F.q - 1
    log, out = F.log_table, []
    for a in S:
        acc = 0
        for b in S:
            if b != a:
                acc += log[F.sub(a, b)]
        out.append(F.exp_table[acc % n1])
    return out


@dataclass(frozen=True)
class ConditionResult:
    status: str  # uniform | mixed | ok | fail
    sign: int | None = None
    witness: tuple = ()

    @property
    def ok(self) -> bool:
        return self.status in ("uniform", "ok")


def grs_condition(F: Field, S) -> ConditionResult:
    """Whether all quadratic characters of Delta_S agree (|S| even)."""
    S = check_evaluation_set(F, S)
    if len(S) % 2:
        raise ValueError("the GRS criterion needs an even number of points")
    signs = [F.eta(d) for d in deltas(F, S)]
    first = signs[0]
    for a, s in zip(S, signs):
        if s != first:
            return ConditionResult("mixed", witness=(S[0], a))
    return ConditionResult("uniform", sign=first)


def egrs_condition(F: Field, S) -> ConditionResult:
    """Whether -Delta_S(a) is a square for every point (|S| odd)."""
    S = check_evaluation_set(F, S)
    if len(S) % 2 == 0:
        raise ValueError("the EGRS criterion needs an odd number of points")
    for a, d in zip(S, deltas(F, S)):
        if F.eta(F.neg(d)) != 1:
            return ConditionResult("fail", witness=(a,))
    return ConditionResult("ok")


def kind_for(S) -> str:
    return "grs" if len(S) % 2 == 0 else "egrs"


def condition(F: Field, S, kind: str | None = None) -> ConditionResult:
    kind = kind or kind_for(S)
    if kind == "grs":
        return grs_condition(F, S)
    if kind == "egrs":
        return egrs_condition(F, S)
    raise ValueError(f"unknown code kind {kind!r}")


def solve_weights(F: Field, S, kind: str | None = None) -> tuple[int, ...]:
    """Canonical column multipliers making the (E)GRS code self-dual.

    grs:  v_i^2 = lam / Delta_S(a_i) with lam = 1 for uniform sign +1, else theta.
    egrs: v_i^2 = -1 / Delta_S(a_i).
    """
    S = check_evaluation_set(F, S)
    kind = kind or kind_for(S)
    cond = condition(F, S, kind)
    if not cond.ok:
        raise ConditionUnsatisfied(f"{kind} condition fails ({cond.status})", cond.witness)
    if kind == "grs":
        lam = 1 if cond.sign == 1 else F.generator
        targets = [F.mul(lam, F.inv(d)) for d in deltas(F, S)]
    else:
        targets = [F.neg(F.inv(d)) for d in deltas(F, S)]
    weights = []
    for t in targets:
        root = F.sqrt(t)
        if root is None:  # pragma: no cover - excluded by the condition
            raise VerificationFailure("weight target is a non-square despite a passing condition")
        weights.append(root)
    return tuple(weights)


@dataclass(frozen=True)
class CodeArtifact:
    field: Field
    kind: str
    points: tuple
    weights: tuple
    matrix: tuple
    provenance: dict | None = dc_field(default=None, compare=False)

    @property
    def k(self) -> int:
        return len(self.matrix)

    @property
    def length(self) -> int:
        return len(self.points) + (1 if self.kind == "egrs" else 0)


def _rows(F: Field, S, v, kind: str) -> tuple:
    n = len(S)
    k = n // 2 if kind == "grs" else (n + 1) // 2
    rows = []
    for i in range(k):
        row = [F.mul(vj, F.pow(a, i)) for a, vj in zip(S, v)]
        if kind == "egrs":
            row.append(1 if i == k - 1 else 0)
        rows.append(tuple(row))
    return tuple(rows)


def generator_matrix(F: Field, S, v, kind: str | None = None, provenance=None) -> CodeArtifact:
    """Rows are the codewords of 1, x, ..., x^(k-1)."""
    S = check_evaluation_set(F, S)
    kind = kind or kind_for(S)
    if len(v) != len(S):
        raise ValueError("weight vector and evaluation set differ in size")
    if any(x == 0 for x in v):
        raise ValueError("weights must be nonzero")
    if kind == "grs" and len(S) % 2:
        raise ValueError("a self-dual GRS code needs an even number of points")
    if kind == "egrs" and len(S) % 2 == 0:
        raise ValueError("a self-dual EGRS code needs an odd number of points")
    return CodeArtifact(F, kind, S, tuple(v), _rows(F, S, v, kind), provenance)


def self_dual_checks(F: Field, G) -> tuple[bool, bool]:
    """(G G^T == 0, rank G == N/2)."""
    G = [list(r) for r in G]
    if not G:
        return False, False
    N = len(G[0])
    orth = all(x == 0 for row in linalg.gram(F, G) for x in row)
    full = N % 2 == 0 and len(G) == N // 2 and linalg.rank(F, G) == N // 2
    return orth, full


def verify_self_dual(F: Field, G) -> bool:
    orth, full = self_dual_checks(F, G)
    return orth and full


@dataclass(frozen=True)
class MDSResult:
    ok: bool
    method: str
    witness: tuple | None = None


def structural_certificate(F: Field, G, points, weights, kind: str) -> bool:
    """G is exactly the (E)GRS matrix of distinct points with nonzero weights.

    Every maximal minor of such a matrix is a scaled Vandermonde determinant
    (the extra EGRS column reduces to a size k-1 Vandermonde), hence nonzero.
    """
    points, weights = tuple(points), tuple(weights)
    if len(set(points)) != len(points) or len(points) != len(weights) or any(w == 0 for w in weights):
        return False
    n = len(points)
    if kind == "grs":
        if n % 2:
            return False
        k = n // 2
    elif kind == "egrs":
        if n % 2 == 0:
            return False
        k = (n + 1) // 2
    else:
        return False
    G = [tuple(r) for r in G]
    if len(G) != k:
        return False
    column = list(weights)
    for i, row in enumerate(G):
        expect = list(column)
        if kind == "egrs":
            expect.append(1 if i == k - 1 else 0)
        if list(row) != expect:
            return False
        column = [F.mul(c, a) for c, a in zip(column, points)]
    return True


def _spot_check(F: Field, G, samples: int) -> tuple | None:
    import numpy as np

    Gm = np.asarray(G, dtype=np.int64)
    k, N = Gm.shape
    rng = random.Random(0)
    idx = np.asarray([sorted(rng.sample(range(N), k)) for _ in range(samples)], dtype=np.int64)
    ok = linalg.batched_nonsingular(F, Gm[:, idx].transpose(1, 0, 2))
    if ok.all():
        return None
    return tuple(int(c) for c in idx[int(np.argmin(ok))])


def verify_mds(F: Field, G, points=None, weights=None, kind=None) -> MDSResult:
    """Certify that every k x k column submatrix of G is invertible.

    Strategy, cheapest exact route first: all maximal minors when there are at
    most ``MINORS_LIMIT`` of them; otherwise exhaustive codeword weights when
    q^k <= ``ENUMERATION_LIMIT``; otherwise the Vandermonde structure of an
    (E)GRS matrix, when the defining points and weights are supplied.
    """
    G = [tuple(r) for r in G]
    k = len(G)
    N = len(G[0]) if G else 0
    if k == 0 or k > N:
        return MDSResult(False, "shape")
    if comb(N, k) <= MINORS_LIMIT:
        ok, witness, _ = linalg.all_maximal_minors_nonzero(F, G)
        return MDSResult(ok, "minors", witness)
    if F.q**k <= ENUMERATION_LIMIT:
        if linalg.rank(F, G) < k:
            return MDSResult(False, "enumeration")
        return MDSResult(linalg.minimum_weight(F, G) == N - k + 1, "enumeration")
    if points is not None and weights is not None and kind is not None:
        if not structural_certificate(F, G, points, weights, kind):
            return MDSResult(False, "structure")
        bad = _spot_check(F, G, SPOT_CHECK_MINORS)
        if bad is not None:  # pragma: no cover - contradicts the certificate
            raise VerificationFailure(f"sampled minor {bad} vanishes on a certified matrix")
        return MDSResult(True, "structure")
    raise TooLargeToCertify(f"C({N},{k}) minors and {F.q}^{k} codewords exceed the certification limits")


@dataclass(frozen=True)
class VerificationReport:
    condition_ok: bool | None
    condition_witness: tuple
    self_dual_ok: bool
    rank_ok: bool
    mds_ok: bool
    mds_witness: tuple | None = None
    mds_method: str = ""

    @property
    def ok(self) -> bool:
        return bool(self.condition_ok is not False and self.self_dual_ok and self.rank_ok and self.mds_ok)

    def to_dict(self) -> dict:
        return {
            "condition": self.condition_ok,
            "self_dual": self.self_dual_ok,
            "rank": self.rank_ok,
            "mds": self.mds_ok,
            "mds_method": self.mds_method,
        }


def verify(artifact: CodeArtifact) -> VerificationReport:
    """Recompute every check for ``artifact`` from scratch."""
    F = artifact.field
    try:
        cond = condition(F, artifact.points, artifact.kind)
        cond_ok, cond_witness = cond.ok, cond.witness
    except ValueError:
        cond_ok, cond_witness = False, ()
    orth, full = self_dual_checks(F, artifact.matrix)
    mds = verify_mds(F, artifact.matrix, artifact.points, artifact.weights, artifact.kind)
    return VerificationReport(cond_ok, cond_witness, orth, full, mds.ok, mds.witness, mds.method)


def build_code(F: Field, S, kind: str | None = None, provenance=None) -> tuple[CodeArtifact, VerificationReport]:
    """Condition -> weights -> generator matrix -> full verification.

    Raises ``ConditionUnsatisfied`` when the set fails the criterion and
    ``VerificationFailure`` if a condition-passing set does not verify.
    """
    S = check_evaluation_set(F, S)
    kind = kind or kind_for(S)
    v = solve_weights(F, S, kind)
    art = generator_matrix(F, S, v, kind, provenance)
    report = verify(art)
    if not report.ok:
        raise VerificationFailure(f"{kind} code on {len(S)} points failed verification: {report.to_dict()}")
    return art, report
