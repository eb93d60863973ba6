"""Command-line surface: construct / verify / bound / search / catalog.

JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 success or pass,
1 verification failure, 2 usage or parameter error, 3 a construction failed
its own verification (or a required search witness was not found).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict

from . import bounds, construct
from .core import SearchExhausted, UnsupportedParameterError, VerificationFailure
from .document import (
    DocumentError,
    code_to_document,
    document_to_code,
    parse_json,
    render_json,
    render_matrix,
)
from .search import (
    GddBaseBlocks,
    SearchConfig,
    equi_search,
    gdd_search,
    optimal_search,
    tight_search,
)
from .verify import composition_census, parity_census, verify_code

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION_FAIL = 3


def _err(message: str) -> None:
    print(message, file=sys.stderr)


def _result_document(res: construct.ConstructionResult, provenance: str) -> dict:
    return code_to_document(
        res.code,
        {
            "branch": res.branch,
            "claimed_size": res.claimed_size,
            "claimed_leave": res.claimed_leave,
            "verified": res.verified,
            "provenance": provenance,
        },
    )


def _emit_result(res: construct.ConstructionResult, args) -> int:
    parts = [f"construct {args.family}"]
    for name in ("n", "m", "g", "s", "r", "p", "id"):
        value = getattr(args, name, None)
        if value is not None:
            parts.append(f"--{name} {value}")
    if args.family == "power4":
        parts.append(f"--variant {args.variant}")
    doc = _result_document(res, " ".join(parts))
    if args.format == "matrix":
        print(render_matrix(res.code))
    else:
        print(render_json(doc))
    return EXIT_OK


def cmd_construct(args) -> int:
    fam = args.family
    try:
        if fam == "equi2mod4":
            res = construct.equi_2mod4(_require(args, "m"))
        elif fam == "gregular4g":
            res = construct.g_regular_4g(_require(args, "g"))
        elif fam == "power4":
            res = construct.equi_power4(
                _require(args, "s"), _require(args, "r"), args.variant
            )
        elif fam == "tight":
            res = construct.tight_derived(_require(args, "r"), args.s or 0)
        elif fam == "prime":
            res = construct.prime_derived(_require(args, "p"), args.s or 0)
        elif fam == "explicit":
            if not args.id:
                raise UnsupportedParameterError("explicit needs --id")
            res = construct.explicit_code(args.id)
        elif fam == "2xm":
            res = construct.ooc_2xm(_require(args, "m"))
        elif fam == "3xm":
            res = construct.ooc_3xm(_require(args, "m"))
        elif fam == "nxm":
            config = _search_config(args) if args.budget_seconds else None
            res = construct.compose_0mod3(_require(args, "n"), _require(args, "m"), config)
        else:
            raise UnsupportedParameterError(f"unknown family {fam!r}")
    except (UnsupportedParameterError, ValueError) as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    except VerificationFailure as exc:
        _err(f"verification failure: {exc}")
        for w in getattr(exc, "witnesses", [])[:20]:
            _err(f"  witness: {w}")
        return EXIT_CONSTRUCTION_FAIL
    except SearchExhausted as exc:
        _err(f"search exhausted: {exc}")
        return EXIT_CONSTRUCTION_FAIL
    return _emit_result(res, args)


def _require(args, name: str) -> int:
    value = getattr(args, name, None)
    if value is None:
        raise UnsupportedParameterError(f"family {args.family!r} needs --{name}")
    return value


def cmd_verify(args) -> int:
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        code, _meta = document_to_code(parse_json(text))
    except (OSError, DocumentError) as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    report = verify_code(code)
    out = {
        "verification": {
            "auto_ok": report.auto_ok,
            "cross_ok": report.cross_ok,
            "max_auto_multiplicity": report.max_auto_multiplicity,
            "violation_count": report.violation_count,
            "witnesses": [asdict(w) for w in report.witnesses],
        },
        "composition_census": None,
        "parity_census": None,
    }
    if code.params.k == 3:
        out["composition_census"] = asdict(composition_census(code))
    if code.params.n == 1 and code.params.m % 4 == 0:
        try:
            out["parity_census"] = asdict(parity_census(code))
        except ValueError:
            pass  # third-period codewords have no parity class
    if args.format == "text":
        verdict = "PASS" if report.passed else "FAIL"
        print(
            f"{verdict} auto_ok={report.auto_ok} cross_ok={report.cross_ok} "
            f"max_auto_multiplicity={report.max_auto_multiplicity} "
            f"violations={report.violation_count}"
        )
    else:
        print(render_json(out))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def cmd_bound(args) -> int:
    try:
        if args.which == "phi":
            rep = bounds.phi_exact(_need(args.n, "--n"), _need(args.m, "--m"))
        elif args.which == "psi_e":
            rep = bounds.psi_e_exact(_need(args.m, "--m"))
        elif args.which == "cac":
            rep = bounds.cac_optimal_size(_need(args.m, "--m"))
        elif args.which == "me":
            rep = bounds.me_prime(_need(args.m, "--m"))
        else:
            raise UnsupportedParameterError(f"unknown bound {args.which!r}")
    except (UnsupportedParameterError, ValueError) as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    out = {
        "value": rep.value,
        "kind": rep.kind,
        "branch": rep.branch,
        "dependencies": [[name, value] for name, value in rep.dependencies],
    }
    if args.format == "text":
        print(f"{args.which} value={rep.value} kind={rep.kind} branch={rep.branch}")
    else:
        print(render_json(out))
    return EXIT_OK


def _need(value, flag: str):
    if value is None:
        raise UnsupportedParameterError(f"missing {flag}")
    return value


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        time_budget=args.budget_seconds or 60.0,
        node_budget=args.node_budget or 10**9,
        strategy=args.strategy or "exhaustive",
        seed=args.seed or 0,
    )


def cmd_search(args) -> int:
    config = _search_config(args)
    try:
        if args.kind == "optimal":
            outcome = optimal_search(
                _need(args.n, "--n"), _need(args.m, "--m"), args.lambda_a or 2, config
            )
        elif args.kind == "equi":
            outcome = equi_search(_need(args.m, "--m"), args.lambda_a or 2, config)
        elif args.kind == "tight":
            outcome = tight_search(_need(args.m, "--m"), config)
        elif args.kind == "gdd":
            outcome = gdd_search(_need(args.u, "--u"), _need(args.m, "--m"), config)
        else:
            raise UnsupportedParameterError(f"unknown search kind {args.kind!r}")
    except (UnsupportedParameterError, ValueError) as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    witness = None
    if isinstance(outcome.best, GddBaseBlocks):
        witness = {
            "m": outcome.best.m,
            "groups": outcome.best.groups,
            "base_blocks": [[[r, s] for r, s in b] for b in outcome.best.base_blocks],
        }
    elif outcome.best is not None:
        witness = code_to_document(
            outcome.best, {"provenance": f"search {args.kind}", "verified": True}
        )
    out = {
        "best_size": outcome.best_size,
        "proven_optimal": outcome.proven_optimal,
        "nodes": outcome.nodes,
        "elapsed_ms": int(outcome.elapsed * 1000),
        "witness": witness,
    }
    if args.format == "text":
        print(
            f"best_size={outcome.best_size} proven_optimal={outcome.proven_optimal} "
            f"nodes={outcome.nodes}"
        )
    else:
        print(render_json(out))
    return EXIT_OK


def _parse_range(spec: str) -> range:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return range(int(lo), int(hi) + 1)
    value = int(spec)
    return range(value, value + 1)


def _try_construct(n: int, m: int):
    try:
        if n == 1:
            return construct.explicit_code("1d48") if m == 48 else None
        if n == 2:
            return construct.ooc_2xm(m)
        if n == 3:
            return construct.ooc_3xm(m)
    except (UnsupportedParameterError, ValueError):
        return None
    return None


def cmd_catalog(args) -> int:
    try:
        span = _parse_range(args.m)
    except ValueError as exc:
        _err(f"error: bad range {args.m!r}: {exc}")
        return EXIT_USAGE
    rows = []
    for m in span:
        res = _try_construct(args.n, m)
        bound = bounds.phi_exact(args.n, m)
        if bound.value is not None:
            bound_value, bound_kind = bound.value, bound.kind
        else:
            bound_value = dict(bound.dependencies).get("upper_bound")
            bound_kind = "upper_bound"
        if res is None and bound.kind != "exact":
            continue
        rows.append(
            {
                "n": args.n,
                "m": m,
                "constructed": res.code.size() if res else None,
                "bound": bound_value,
                "kind": bound_kind,
                "verified": bool(res and res.verified),
            }
        )
    if args.format == "text":
        print(f"{'n':>4} {'m':>6} {'built':>7} {'bound':>7} {'kind':<12} verified")
        for r in rows:
            built = "-" if r["constructed"] is None else r["constructed"]
            print(
                f"{r['n']:>4} {r['m']:>6} {built:>7} {r['bound']:>7} "
                f"{r['kind']:<12} {r['verified']}"
            )
    else:
        print(render_json({"rows": rows}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oockit",
        description="Construct, verify, bound, and search weight-3 "
        "wavelength-time optical orthogonal codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("construct", help="emit a verified code as JSON")
    pc.add_argument(
        "family",
        choices=[
            "equi2mod4", "gregular4g", "power4", "tight", "prime",
            "explicit", "2xm", "3xm", "nxm",
        ],
    )
    pc.add_argument("--n", type=int)
    pc.add_argument("--m", type=int)
    pc.add_argument("--g", type=int)
    pc.add_argument("--s", type=int)
    pc.add_argument("--r", type=int)
    pc.add_argument("--p", type=int)
    pc.add_argument("--id", type=str)
    pc.add_argument("--variant", choices=["standard", "half_free"], default="standard")
    _add_search_flags(pc)
    _add_format(pc, ["json", "matrix"])
    pc.set_defaults(func=cmd_construct)

    pv = sub.add_parser("verify", help="verify a code document (stdin with '-')")
    pv.add_argument("input", nargs="?", default="-")
    _add_format(pv, ["json", "text"])
    pv.set_defaults(func=cmd_verify)

    pb = sub.add_parser("bound", help="closed-form size bounds")
    pb.add_argument("which", choices=["phi", "psi_e", "cac", "me"])
    pb.add_argument("--n", type=int)
    pb.add_argument("--m", type=int)
    _add_format(pb, ["json", "text"])
    pb.set_defaults(func=cmd_bound)

    ps = sub.add_parser("search", help="brute-force oracles")
    ps.add_argument("kind", choices=["optimal", "equi", "tight", "gdd"])
    ps.add_argument("--n", type=int)
    ps.add_argument("--m", type=int)
    ps.add_argument("--u", type=int)
    ps.add_argument("--lambda-a", dest="lambda_a", type=int)
    _add_search_flags(ps)
    _add_format(ps, ["json", "text"])
    ps.set_defaults(func=cmd_search)

    pk = sub.add_parser("catalog", help="sweep a parameter range")
    pk.add_argument("--n", type=int, required=True)
    pk.add_argument("--m", type=str, required=True, help="single value or A..B")
    _add_format(pk, ["json", "text"])
    pk.set_defaults(func=cmd_catalog)
    return parser


def _add_search_flags(p) -> None:
    p.add_argument("--budget-seconds", dest="budget_seconds", type=float)
    p.add_argument("--node-budget", dest="node_budget", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument(
        "--strategy",
        choices=["exhaustive", "branch_and_bound", "exact_cover", "hill_climb_restart"],
    )


def _add_format(p, choices) -> None:
    p.add_argument("--format", choices=choices, default="json")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
