"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
3 refused because a full enumeration would exceed the length budget.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numba

from .addcode import (
    BudgetExceeded,
    classify_type,
    code_from_graph,
    is_symplectic_self_dual,
    low_support_min_weight,
    min_distance,
    weight_distribution,
)
from .fixtures import PRESET_NAMES, FixtureSet, default_fixtures
from .invariants import graph_invariants
from .metacirculant import InvalidSpecError, MetacirculantSpec, build_graph, format_edges, validate_spec
from .quantum import PropagationError, QuantumParams, apply_rules, parse_rules
from .search import SearchTask, class_by_enumerator, count_specs, exhaustive_search, random_search

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _load_spec(args) -> tuple[MetacirculantSpec, str, int, str]:
    """(spec, labeling, exponent_offset, display name) from --preset or a file."""
    if args.preset and args.spec:
        raise UsageError("give either --preset or a spec file, not both")
    if args.preset:
        p = default_fixtures().preset(args.preset)
        labeling = args.labeling or p.labeling
        offset = p.exponent_offset if args.exponent_offset is None else args.exponent_offset
        return p.spec, labeling, offset, p.name
    if not args.spec:
        raise UsageError("a spec file or --preset is required")
    try:
        text = sys.stdin.read() if args.spec == "-" else Path(args.spec).read_text()
        spec = MetacirculantSpec.from_json(json.loads(text))
    except OSError as exc:
        raise UsageError(f"cannot read {args.spec}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.spec}: malformed JSON: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.spec}: bad spec object: {exc}") from None
    return spec, args.labeling or "layer", args.exponent_offset or 0, args.spec


def _graph(args):
    spec, labeling, offset, name = _load_spec(args)
    res = validate_spec(spec)
    if not res.ok and not args.override:
        raise InvalidSpecError(res.violations)
    g = build_graph(spec, labeling=labeling, exponent_offset=offset, override=args.override)
    return spec, g, name


def cmd_build(args) -> int:
    spec, g, _ = _graph(args)
    if args.out == "edges":
        sys.stdout.write(format_edges(g.edges()))
    else:
        _emit(
            {
                "spec": spec.to_json(),
                "vertices": g.vertex_count,
                "edge_count": g.edge_count,
                "edges": [list(e) for e in g.edges()],
            }
        )
    return EXIT_OK


def cmd_code(args) -> int:
    spec, g, name = _graph(args)
    code = code_from_graph(g)
    wanted = [args.check_self_dual, args.distance, args.weight_distribution, args.low_support is not None, args.type]
    if not any(wanted) and not args.invariants and not args.dump:
        args.check_self_dual = args.type = True
    report: dict = {"name": name, "spec": spec.to_json(), "length": code.length}
    if args.check_self_dual:
        report["self_dual"] = is_symplectic_self_dual(code)
    if args.type:
        report.update(classify_type(spec, code).to_json())
    if args.low_support is not None:
        bound, wit = low_support_min_weight(code, args.low_support, witness=True)
        report["low_support"] = {"t": args.low_support, "bound": bound, "witness": list(wit)}
    if args.distance:
        res = min_distance(code, args.abort_below)
        report["distance"] = {"d": res.weight, "aborted": res.aborted, "witness": list(res.witness)}
        if args.abort_below is not None:
            report["distance"]["abort_below"] = args.abort_below
    if args.weight_distribution:
        report["weight_distribution"] = weight_distribution(code).to_json()
    if args.invariants:
        report["invariants"] = graph_invariants(g, budget=args.aut_budget).to_json()
    if args.dump:
        sys.stdout.write(code.dump())
        return EXIT_OK
    _emit(report)
    return EXIT_OK


def _fingerprint(value: str):
    if value == "none":
        return None
    if value == "full":
        return "full"
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected full, none or a weight cutoff") from None


def cmd_search(args) -> int:
    if args.random and args.seed is None:
        raise UsageError("--random requires --seed")
    try:
        task = SearchTask(
            args.m,
            args.n,
            args.d_target,
            alphas=tuple(args.alpha or ()),
            mode="random" if args.random else "exhaustive",
            seed=args.seed,
            iterations=args.iters,
            type_filter=args.type_filter,
            valence_min=args.valence_min,
            valence_max=args.valence_max,
            screen_t=args.screen_t,
            fingerprint=args.fingerprint,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.random:
        hits = random_search(task, results_path=args.out)
        evaluated = args.iters
    else:
        def progress(last, n_hits):
            logging.getLogger("metacirc.search").info("index %d, %d hits", last, n_hits)

        hits = exhaustive_search(
            task, workers=args.workers, results_path=args.out, checkpoint_path=args.checkpoint, progress=progress
        )
        evaluated = sum(count_specs(task.m, task.n, a) for a in task.alpha_list())
    summary = {
        "m": task.m,
        "n": task.n,
        "alphas": task.alpha_list(),
        "d_target": task.d_target,
        "mode": task.mode,
        "evaluated": evaluated,
        "hits": len(hits),
        "distances": sorted({h.distance for h in hits}),
    }
    if hits and all(h.class_key or h.weight_distribution for h in hits):
        summary["classes"] = [len(c) for c in class_by_enumerator(hits)]
    if args.out:
        summary["results"] = str(args.out)
    _emit(summary)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import verify

    fx = FixtureSet(Path(args.fixtures)) if args.fixtures else None

    def progress(c):
        if not args.json:
            print(f"[{c.status:>4}] {c.claim}  {c.detail}".rstrip(), flush=True)

    report = verify(args.scope, fx, workers=args.workers, progress=progress)
    if args.json:
        _emit(report.to_json())
    else:
        print(report.format().splitlines()[-1])
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_propagate(args) -> int:
    try:
        seed = QuantumParams(args.l, args.k, args.d, ("input",))
        chain = apply_rules(seed, parse_rules(args.rules))
    except (PropagationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        _emit([seed.to_json()] + [p.to_json() for p in chain])
    else:
        print(seed)
        for p in chain:
            print(f"{p}  <- {p.provenance[-1]}")
    return EXIT_OK


def _spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("spec", nargs="?", help="spec JSON file ('-' for stdin)")
    p.add_argument("--preset", choices=PRESET_NAMES)
    p.add_argument("--labeling", choices=("layer", "index"), default=None)
    p.add_argument("--exponent-offset", type=int, default=None)
    p.add_argument("--override", action="store_true", help="build even if the S-set conditions fail")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metacirc", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None, help="kernel threads (default: all cores)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a graph")
    _spec_args(p)
    p.add_argument("--out", choices=("edges", "json"), default="edges")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("code", help="analyse the graph code")
    _spec_args(p)
    p.add_argument("--check-self-dual", action="store_true")
    p.add_argument("--distance", action="store_true")
    p.add_argument("--abort-below", type=int, default=None)
    p.add_argument("--weight-distribution", action="store_true")
    p.add_argument("--low-support", type=int, default=None, metavar="T")
    p.add_argument("--type", action="store_true")
    p.add_argument("--invariants", action="store_true")
    p.add_argument("--aut-budget", type=int, default=200_000)
    p.add_argument("--dump", action="store_true", help="print the generator matrix")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("search", help="search (m, n) parameter space")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=int, action="append")
    p.add_argument("--d-target", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="default")
    mode.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--iters", type=int, default=0)
    p.add_argument("--out", type=Path, help="NDJSON hit file")
    p.add_argument("--checkpoint", type=Path)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--type-filter", choices=("TypeI", "TypeII"))
    p.add_argument("--valence-min", type=int)
    p.add_argument("--valence-max", type=int)
    p.add_argument("--screen-t", type=int, default=3)
    p.add_argument("--fingerprint", type=_fingerprint, default="full")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="replay the bundled reference data")
    p.add_argument("--scope", choices=("quick", "full"), default="quick")
    p.add_argument("--fixtures", help="alternate fixture directory")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("propagate", help="apply secondary-construction rules")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_propagate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.threads is not None:
        if args.threads < 1:
            parser.error("--threads must be >= 1")
        numba.set_num_threads(min(args.threads, numba.config.NUMBA_NUM_THREADS))
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except InvalidSpecError as exc:
        print("invalid spec, failed conditions:", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
