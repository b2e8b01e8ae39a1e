"""Command-line interface.

Exit codes: 0 success, 2 bad input, 3 budget exhausted, 4 invariant
violation (including graphs with isolated vertices and non-maximal input to
``construct``).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import solvers
from .broadcast import analyze, check_broadcast, cost, irredundant_fast, undominated_mask
from .budget import Budget
from .construct import ConstructionError, construct_dominating
from .corpus import random_connected_graphs, small_connected_corpus
from .errors import BudgetExceeded, GraphInputError, InvariantViolation, PreconditionError
from .graph import FamilySpec, generate
from .graphio import broadcast_from_json, format_edge_list, read_edge_list, to_dot
from .irredundance import check_undominated_distance, find_irredundant_extension, is_maximal_irredundant

log = logging.getLogger("broadcastir")

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4


def _error(msg) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _family_specs(text: str) -> list[FamilySpec]:
    """``name:a`` / ``name:a,b`` / ``name:a..b`` (range on a single parameter)."""
    name, _, rest = text.partition(":")
    if ".." in rest:
        lo, _, hi = rest.partition("..")
        try:
            return [FamilySpec(name.strip().lower(), (k,)) for k in range(int(lo), int(hi) + 1)]
        except ValueError:
            raise GraphInputError(f"bad family range {text!r}") from None
    return [FamilySpec.parse(text)]


def _load_graphs(args):
    if bool(args.graph) == bool(args.family):
        raise GraphInputError("give exactly one of --graph PATH or --family NAME:ARGS")
    if args.graph:
        return [read_edge_list(args.graph)]
    return [generate(s) for s in _family_specs(args.family)]


def _load_graph(args):
    graphs = _load_graphs(args)
    if len(graphs) != 1:
        raise GraphInputError("this command takes a single graph")
    return graphs[0]


def _load_broadcast(args, g):
    src = args.broadcast
    p = Path(src)
    text = p.read_text() if p.exists() else src
    return check_broadcast(g, broadcast_from_json(text, g.n))


def _budget(args):
    return Budget(args.budget_states, args.time_limit)


def _emit(args, obj, text_lines=None):
    if args.format == "text" and text_lines is not None:
        print("\n".join(text_lines))
    else:
        print(json.dumps(obj, indent=None if args.compact else 2, sort_keys=False))


# -- commands ----------------------------------------------------------------


def cmd_compute(args) -> int:
    g = _load_graph(args)
    names = [n.strip() for n in args.param.split(",") if n.strip()]
    for n in names:
        if n not in solvers.PARAMETERS:
            raise GraphInputError(f"unknown parameter {n!r}; choose from {', '.join(solvers.PARAMETERS)}")
    results = solvers.compute(g, names, _budget(args))
    if args.format == "dot":
        first = results[0].witness
        f = [1 if v in first else 0 for v in range(g.n)] if isinstance(first, frozenset) else first
        sys.stdout.write(to_dot(g, f))
        return EXIT_OK
    lines = []
    for r in results:
        j = r.to_json()
        lines.append(f"{r.name} = {r.value}  witness={j['witness']}"
                     + (f"  multipacking={j['certificate']}" if j["certificate"] is not None else ""))
    _emit(args, {"graph": g.name, "n": g.n, "results": [r.to_json() for r in results]}, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args)
    f = _load_broadcast(args, g)
    irred = irredundant_fast(g, f)
    dominating = undominated_mask(g, f) == 0
    report = {
        "broadcast": {str(v): p for v, p in enumerate(f) if p},
        "cost": cost(f),
        "dominating": dominating,
        "irredundant": irred,
        "minimal_dominating": dominating and irred,
        "maximal_irredundant": None,
        "analysis": analyze(g, f).to_json(),
    }
    if irred:
        maximal, ev = is_maximal_irredundant(g, f, _budget(args), with_evidence=True)
        report["maximal_irredundant"] = maximal
        report["evidence"] = ev.to_json()
        if maximal:
            report["undominated_distance_property"] = check_undominated_distance(g, f)
        if args.oracle:
            ext = find_irredundant_extension(g, f, max_states=args.budget_states or 5_000_000)
            report["oracle"] = {
                "maximal_irredundant": ext is None,
                "extension": None if ext is None else {str(v): p for v, p in enumerate(ext) if p},
                "agrees": (ext is None) == maximal,
            }
            if (ext is None) != maximal:
                _emit(args, report)
                _error("maximality test and oracle disagree")
                return EXIT_INVARIANT
    mark = {True: "yes", False: "no", None: "n/a"}
    lines = [f"{k}: {mark[report[k]]}" for k in
             ("dominating", "irredundant", "minimal_dominating", "maximal_irredundant")]
    if irred and not report["maximal_irredundant"]:
        ev = report["evidence"]
        if not ev["condition_i"]["holds"]:
            lines.append(f"condition (i) fails at w={ev['condition_i']['failed_w']}")
        else:
            lines.append(f"condition (ii) fails at v0={ev['condition_ii']['failed_v0']}")
    if "oracle" in report:
        lines.append(f"oracle agrees: {mark[report['oracle']['agrees']]}")
    _emit(args, report, lines)
    return EXIT_OK


def cmd_construct(args) -> int:
    g = _load_graph(args)
    f = _load_broadcast(args, g)
    if not irredundant_fast(g, f) or not is_maximal_irredundant(g, f, _budget(args)):
        _error("input broadcast is not maximal irredundant")
        return EXIT_INVARIANT
    try:
        trace = construct_dominating(g, f, check=False)
    except ConstructionError as exc:
        if exc.trace is not None:
            _emit(args, exc.trace.to_json())
        raise
    if args.format == "dot":
        sys.stdout.write(to_dot(g, trace.g))
        return EXIT_OK
    lines = [f"cost(f) = {trace.cost_f}", f"cost(g) = {trace.cost_g}",
             f"g = {json.dumps(trace.to_json()['g'])}",
             f"4*cost(g) <= 5*cost(f): {'yes' if trace.bound_holds else 'no'}"]
    _emit(args, trace.to_json(), lines)
    return EXIT_OK


def cmd_generate(args) -> int:
    for g in _load_graphs(args):
        if args.format == "dot":
            sys.stdout.write(to_dot(g, name=g.name.replace(":", "_").replace(",", "_") or "G"))
        else:
            sys.stdout.write(format_edge_list(g))
    return EXIT_OK


def _parse_random(text: str, default_seed: int = 0) -> dict:
    opts = {"n": None, "count": 100, "seed": default_seed}
    for item in text.replace(",", " ").split():
        key, _, value = item.partition("=")
        if key not in opts:
            raise GraphInputError(f"unknown --random option {key!r}")
        try:
            opts[key] = int(value)
        except ValueError:
            raise GraphInputError(f"--random {key} must be an integer") from None
    if opts["n"] is None or opts["n"] < 1 or opts["count"] < 0:
        raise GraphInputError("--random needs n=<vertices> (>= 1) and count >= 0")
    return opts


def _scan_one(job):
    g, budget_states, time_limit, conjectures = job
    rep = solvers.chain_check(g, Budget(budget_states, time_limit))
    out = rep.to_json()
    if conjectures:
        out["conjectures"] = solvers.conjecture_check(g, Budget(budget_states, time_limit)).to_json()
    return out


def cmd_scan(args) -> int:
    graphs = []
    if args.random:
        for spec in args.random:
            o = _parse_random(spec, args.seed)
            if o["n"] == 1:
                from .graph import build_graph
                graphs += [build_graph([], 1, f"K1_{i}") for i in range(o["count"])]
            else:
                graphs += random_connected_graphs(o["n"], o["count"], o["seed"])
    if args.family:
        graphs += [generate(s) for s in _family_specs(args.family)]
    if args.graph:
        graphs.append(read_edge_list(args.graph))
    if args.small:
        graphs += small_connected_corpus(args.small)
    if not graphs and not (args.random or args.family or args.graph or args.small):
        raise GraphInputError("scan needs --random, --family, --graph or --small")

    usable = []
    for g in graphs:
        if g.isolated_vertices():
            print(f"notice: skipping {g.name or g.edges}: isolated vertices", file=sys.stderr)
        else:
            usable.append(g)
    jobs = [(g, args.budget_states, args.time_limit, args.conjectures) for g in usable]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_scan_one, jobs))
    else:
        results = [_scan_one(j) for j in jobs]

    failures = 0
    max_ratio = Fraction(0)
    counterexamples = {"con54": 0, "con_eq": 0}
    for r in results:
        failures += not r["ok"]
        max_ratio = max(max_ratio, Fraction(r["ratio_gamma_b_over_ir_b"]))
        if "conjectures" in r:
            counterexamples["con54"] += r["conjectures"]["con54"]["counterexample"]
            counterexamples["con_eq"] += r["conjectures"]["con_eq"]["counterexample"]
        if args.format == "text":
            v = r["values"]
            print(f"{r['graph']}: " + " ".join(f"{k}={v[k]}" for k in v) + ("" if r["ok"] else "  VIOLATION"))
        else:
            print(json.dumps(r, sort_keys=False))
    summary = {
        "summary": True,
        "graphs": len(results),
        "skipped": len(graphs) - len(usable),
        "chain_failures": failures,
        "max_ratio_gamma_b_over_ir_b": str(max_ratio),
    }
    if args.conjectures:
        summary["conjecture_counterexamples"] = counterexamples
    print(json.dumps(summary) if args.format != "text" else
          f"graphs={summary['graphs']} skipped={summary['skipped']} failures={failures} max_ratio={max_ratio}")
    return EXIT_INVARIANT if failures else EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="PATH", help="edge-list file")
    common.add_argument("--family", metavar="NAME:ARGS",
                        help="path:n cycle:n complete:n grid:m,n spider:n tworcliques:r (r may be a range a..b)")
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--budget-states", type=int, default=50_000_000, metavar="N")
    common.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    common.add_argument("--threads", type=int, default=1, metavar="N")
    common.add_argument("--seed", type=int, default=0, metavar="N")
    common.add_argument("--compact", action="store_true", help="single-line JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="broadcastir", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="compute parameters with witnesses")
    c.add_argument("--param", default="gamma_b", metavar="NAME[,NAME...]",
                   help=f"any of {', '.join(solvers.PARAMETERS)}")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", parents=[common], help="check a broadcast against every predicate")
    v.add_argument("--broadcast", required=True, metavar="FILE|JSON")
    v.add_argument("--oracle", action="store_true", help="cross-check maximality by enumeration")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("construct", parents=[common], help="5/4 construction from a maximal irredundant broadcast")
    k.add_argument("--broadcast", required=True, metavar="FILE|JSON")
    k.set_defaults(func=cmd_construct)

    s = sub.add_parser("scan", parents=[common], help="chain checks (and conjectures) over a corpus")
    s.add_argument("--random", nargs="+", metavar="KEY=VALUE", action="append",
                   help="random connected graphs, e.g. --random n=6 count=100 seed=7 (seed defaults to --seed)")
    s.add_argument("--small", type=int, metavar="N", help="every connected graph on 2..N vertices")
    s.add_argument("--conjectures", action="store_true")
    s.set_defaults(func=cmd_scan)

    gen = sub.add_parser("generate", parents=[common], help="write a family graph as edge list or DOT")
    gen.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    log.debug("arguments: %s", vars(args))
    if getattr(args, "random", None):
        args.random = [" ".join(group) for group in args.random]
    try:
        return args.func(args)
    except (GraphInputError, PreconditionError) as exc:
        _error(exc)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        _error(exc)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        _error(exc)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
