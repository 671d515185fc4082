"""Command line entry point: field-info, construct, verify, table, search.

Exit codes: 0 all checks passed, 1 usage or internal error, 2 character
condition failed, 3 length ruled out by the nonexistence gate, 4 search or
certification cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import families, grs, oracle, pipeline
from .families import BlockedByNonexistence, Claim, ConstructionError, canonical_field, nonexistence_gate
from .field import FieldError, prime_power

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONDITION = 2
EXIT_BLOCKED = 3
EXIT_CAP = 4


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _int_root(q: int, degree: int) -> int:
    r = round(q ** (1.0 / degree))
    for cand in (r - 1, r, r + 1):
        if cand > 1 and cand**degree == q:
            return cand
    raise ConstructionError(f"{q} is not a {degree}-th power")


def _parse_set(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise ConstructionError(f"cannot parse element list {text!r}") from None


def _sigma_kind(kind: str | None) -> str | None:
    return {None: None, "g": "g", "grs": "g", "eg": "eg", "egrs": "eg"}[kind]


def _pick(claims: list[Claim], kind: str | None) -> Claim:
    if kind is not None:
        for c in claims:
            if c.sigma_kind == kind:
                return c
        raise ConstructionError(f"this construction yields no {kind} claim")
    for preferred in ("g", "eg"):
        for c in claims:
            if c.sigma_kind == preferred:
                return c
    raise ConstructionError("construction produced no claim")  # pragma: no cover


def _base_claim(q0: int, points) -> Claim:
    F0 = canonical_field(q0)
    size = len(points)
    kind = "g" if size % 2 == 0 else "eg"
    n0 = size if kind == "g" else size + 1
    base = families.evaluate_claim(Claim(F0, n0, kind, "given", {"q": q0}, tuple(points)))
    if base.status != "passed":
        raise families.UnverifiedBase(f"base set fails the {kind} condition, witness {base.failure_witness}")
    return base


def build_claim(args) -> Claim:
    """Translate CLI family parameters into a single claim."""
    q = args.q
    F = canonical_field(q)
    fam = args.family
    kind = _sigma_kind(args.kind)
    if fam == "subfield":
        if args.n is None:
            raise ConstructionError("subfield needs --n")
        if nonexistence_gate(q, args.n) == "blocked":
            raise BlockedByNonexistence(f"no self-dual code of length {args.n} exists over GF({q})")
        if F.m % 2:
            raise ConstructionError(f"GF({q}) is not a square field")
        r = F.p ** (F.m // 2)
        if kind is None:
            kind = "g" if args.n <= r - 1 else "eg"
        return families.subfield_set(r, args.n, kind)
    if fam == "affine_union":
        if F.m % 2:
            raise ConstructionError(f"GF({q}) is not a square field")
        return families.affine_union(F.p, F.m // 2, _need(args, "l"), _need(args, "k"))
    if fam == "cyclotomic":
        r = _int_root(q, 2)
        return families.cyclotomic_union(r, _need(args, "f"), _need(args, "t"), args.case or "I1")
    if fam == "cyclotomic_scaled":
        r = _int_root(q, 2)
        return _pick(families.cyclotomic_union_scaled(r, _need(args, "f"), _need(args, "s"), _need(args, "t")), kind)
    if fam == "trace_kernel":
        r = _int_root(q, 2)
        return families.trace_kernel_union(r, _need(args, "l"), _need(args, "d"))
    if fam == "trace_lift":
        deg = _need(args, "l")
        q0 = args.base_q or _int_root(q, deg)
        if q0**deg != q:
            raise ConstructionError(f"GF({q0})^{deg} is not GF({q})")
        if args.base_set is None:
            raise ConstructionError("trace_lift needs --base-set")
        return families.trace_lift(_base_claim(q0, _parse_set(args.base_set)), deg)
    if fam == "norm_fiber":
        s = _need(args, "s")
        r = args.r or _int_root(q, s)
        if r**s != q:
            raise ConstructionError(f"GF({r})^{s} is not GF({q})")
        base = None
        if args.base_set is not None:
            base = _base_claim(r, _parse_set(args.base_set))
        return _pick(families.norm_fiber_union(r, s, _need(args, "l"), base), kind)
    raise ConstructionError(f"unknown family {fam!r}")  # pragma: no cover - argparse choices


def _need(args, name: str) -> int:
    value = getattr(args, name)
    if value is None:
        raise ConstructionError(f"--{name} is required for family {args.family}")
    return value


def _describe_failure(claim: Claim) -> str:
    F = claim.field
    ds = dict(zip(claim.points, grs.deltas(F, claim.points)))
    w = claim.failure_witness
    if claim.sigma_kind == "g":
        a, b = w
        return (
            f"condition failed: eta(Delta({a})) = {F.eta(ds[a]):+d} but eta(Delta({b})) = {F.eta(ds[b]):+d}; "
            f"witness pair ({a}, {b})"
        )
    (a,) = w
    return f"condition failed: eta(-Delta({a})) = {F.eta(F.neg(ds[a])):+d}; witness point {a}"


def cmd_field_info(args) -> int:
    F = canonical_field(args.q)
    info = {
        **F.descriptor(),
        "q": F.q,
        "minus_one_is_square": F.eta(F.neg(1)) == 1,
        "subfield_orders": [F.p**d for d in range(1, F.m + 1) if F.m % d == 0],
    }
    if F.q <= 27:
        info["elements"] = {str(a): list(F.coeffs(a)) for a in F.elements()}
    _emit(info)
    return EXIT_OK


def cmd_construct(args) -> int:
    claim = build_claim(args)
    evaluated = families.evaluate_claim(claim)
    record = None
    if evaluated.status == "failed":
        print(_describe_failure(evaluated), file=sys.stderr)
        _emit(evaluated.to_dict())
        outcome = pipeline.Outcome(evaluated.to_dict(), "failed", witness=evaluated.failure_witness)
        record = pipeline.catalog_entry(outcome)
        code = EXIT_CONDITION
    else:
        provenance = {"family": claim.family, "params": claim.params, "sigma_kind": claim.sigma_kind}
        art, report = grs.build_code(claim.field, claim.points, claim.code_kind, provenance)
        outcome = pipeline.Outcome(evaluated.to_dict(), "passed")
        if args.out:
            pipeline.write_artifact(args.out, art, report)
            outcome.artifact_path = str(args.out)
            _emit({"artifact": str(args.out), "n": art.length, "kind": art.kind, "verification": report.to_dict()})
        else:
            sys.stdout.write(pipeline.dumps_artifact(art, report))
        record = pipeline.catalog_entry(outcome)
        code = EXIT_OK
    if args.catalog:
        pipeline.Catalog(args.catalog).append([record])
    return code


def cmd_verify(args) -> int:
    try:
        art = pipeline.load_artifact(args.path)
    except (pipeline.MalformedArtifact, OSError) as exc:
        print(f"malformed artifact: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = grs.verify(art)
    out = {**report.to_dict(), "ok": report.ok}
    if report.condition_witness:
        out["condition_witness"] = list(report.condition_witness)
    if report.mds_witness:
        out["mds_witness"] = list(report.mds_witness)
    _emit(out)
    if report.ok:
        return EXIT_OK
    return EXIT_CONDITION if report.condition_ok is False else EXIT_ERROR


def cmd_table(args) -> int:
    catalog = pipeline.Catalog(args.catalog) if args.catalog else None
    result = pipeline.run_table(args.q, args.max_n, out_dir=args.out, catalog=catalog, jobs=args.jobs)
    print(result.text)
    return EXIT_OK


def cmd_search(args) -> int:
    F = canonical_field(args.q)
    cap = args.max_subsets
    if args.mode == "selfdual-any":
        res = oracle.brute_selfdual_exists(F, args.n, max_matrices=cap)
        _emit(res.to_dict())
        return EXIT_OK
    res = oracle.brute_sigma(F, args.n, args.mode, max_subsets=cap)
    _emit(res.to_dict())
    if res.found:
        art, report = grs.build_code(F, res.witness, "grs" if args.mode == "g" else "egrs", {"search": args.mode})
        if args.out:
            pipeline.write_artifact(args.out, art, report)
        else:
            sys.stdout.write(pipeline.dumps_artifact(art, report))
    return EXIT_OK


def _add_globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # the same flags work before or after the subcommand
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--q", type=int, default=d(None), help="field order (odd prime power)")
    parser.add_argument("--out", default=d(None), help="artifact file (construct/search) or directory (table)")
    parser.add_argument("--catalog", metavar="PATH", default=d(None), help="append-only JSON-lines catalog")
    parser.add_argument(
        "--max-subsets", metavar="CAP", type=int, default=d(oracle.DEFAULT_SUBSET_CAP), help="brute-force search cap"
    )
    parser.add_argument("--jobs", metavar="N", type=int, default=d(1), help="worker processes for table")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdsdual", description=__doc__.splitlines()[0])
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="canonical modulus, generator and basic facts of GF(q)")
    _add_globals(p, suppress=True)
    p.set_defaults(func=cmd_field_info)

    p = sub.add_parser("construct", help="build and verify one family instance")
    _add_globals(p, suppress=True)
    p.add_argument("--family", required=True, choices=families.FAMILIES)
    p.add_argument("--kind", choices=["g", "eg", "grs", "egrs"])
    for name in ("n", "l", "k", "d", "f", "t", "s", "r", "base-q"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--case", choices=families.CYCLOTOMIC_CASES)
    p.add_argument("--base-set", help="comma separated element indices of the base set")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="recompute every check for an artifact file")
    _add_globals(p, suppress=True)
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="enumerate, verify and tabulate all family claims")
    _add_globals(p, suppress=True)
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("search", help="exhaustive membership or existence search")
    _add_globals(p, suppress=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["g", "eg", "selfdual-any"], required=True)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command != "verify" and args.q is None:
        parser.error("--q is required")
    try:
        return args.func(args)
    except BlockedByNonexistence as exc:
        print(f"blocked by nonexistence theorem: {exc}", file=sys.stderr)
        return EXIT_BLOCKED
    except families.UnverifiedBase as exc:
        print(f"base set rejected: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    except (oracle.SearchCapExceeded, grs.TooLargeToCertify) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ConstructionError, FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except grs.VerificationFailure as exc:  # pragma: no cover - never expected
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
