"""Command-line entry point: ``gapkit reduce|solve|verify|pipeline``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import claims
from .clique_reduction import gadgets_to_json, sat_to_clique, supervertex_clique_transform
from .errors import GapkitError
from .graph import (
    DEFAULT_CLIQUE_CAP,
    DEFAULT_MMIS_CAP,
    DEFAULT_POWER_CAP,
    dense_q_subgraph_tree,
    graph_power,
    max_clique_exact,
    mmis_exact,
    parse_edgelist,
    supervertex_map_to_json,
    to_edgelist,
)
from .harness import CHAINS, PipelineConfig, RtFunction, run_pipeline, size_sweep
from .minrep import (
    DEFAULT_MINREP_CAP,
    element_map_to_json,
    minrep_exact,
    minrep_from_json,
    minrep_to_setcover,
)
from .mmis_reduction import mmis_metadata_to_json, sat_to_mmis
from .sat import (
    DEFAULT_MAXSAT_CAP,
    max_sat_bruteforce,
    pad_clauses_to_divisible,
    pad_variables_to_divisible,
    parse_dimacs,
)
from .setcover import (
    DEFAULT_SETCOVER_CAP,
    parse_setsys,
    setcover_exact,
    setcover_greedy,
    to_setsys,
    union_closure_transform,
)

FORMATS = ("dimacs", "edgelist", "setsys", "minrep-json")
PROBLEMS = ("maxsat", "clique", "mmis", "setcover", "greedy-setcover", "minrep", "dense-subgraph")
CHAIN_INPUT = {
    "sat-clique": "dimacs",
    "sat-mmis": "dimacs",
    "setcover-union": "setsys",
    "minrep-setcover": "minrep-json",
}
PROBLEM_INPUT = {
    "maxsat": "dimacs",
    "clique": "edgelist",
    "mmis": "edgelist",
    "setcover": "setsys",
    "greedy-setcover": "setsys",
    "minrep": "minrep-json",
    "dense-subgraph": "edgelist",
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="instance file (default: stdin)")
    p.add_argument("--format", choices=FORMATS, help="input format (default: implied by the command)")
    p.add_argument("--out", help="output file or directory")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cap", type=int, help="size cap for the exact solver or transform")


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--block-size", type=int, help="supervertex block size B")
    p.add_argument("--power", type=int, help="graph power k")
    p.add_argument("--f", type=int, help="number of variable blocks for the MMIS reduction")
    p.add_argument("--union", type=int, help="union-closure size P")
    p.add_argument("--elements-per-superedge", type=int, help="|M_ij| for Min-Rep to set cover")
    p.add_argument("--seed", type=int, help="PRNG seed (unsigned 64-bit)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gapkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="apply a reduction chain to one instance")
    p.add_argument("chain", choices=CHAINS)
    _add_common(p)
    _add_params(p)
    p.add_argument("--sweep", help="comma-separated clause counts; emit a size-vs-m CSV instead")

    p = sub.add_parser("solve", help="solve an instance with an exact oracle")
    p.add_argument("problem", choices=PROBLEMS)
    _add_common(p)
    p.add_argument("--q", type=int, help="subgraph size for dense-subgraph")

    p = sub.add_parser("verify", help="run claim suites")
    p.add_argument("suite", nargs="+", choices=[*claims.SUITES, "all"])
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("pipeline", help="run a yes/no pipeline from a JSON config")
    p.add_argument("config")
    p.add_argument("--out", help="directory for report.json and the reduced instances")
    p.add_argument("--json", action="store_true", help="print the report JSON")
    p.add_argument("--timing", action="store_true", help="record constructionTime")
    p.add_argument("--r", help="ratio function, e.g. constant:2 or polylog:1,0.5")
    p.add_argument("--t", help="time function in the same syntax")
    _add_params(p)
    return parser


def _read(args) -> str:
    if args.input:
        return Path(args.input).read_text()
    return sys.stdin.read()


def _check_format(args, expected: str) -> None:
    if args.format and args.format != expected:
        raise GapkitError(f"this command reads {expected}, not {args.format}")


def _emit(args, files: dict[str, str], primary: str) -> None:
    """Write the primary output to --out (a file) or stdout; with several
    outputs --out names a directory."""
    if not args.out:
        sys.stdout.write(files[primary])
        return
    out = Path(args.out)
    if len(files) == 1:
        out.write_text(files[primary])
        return
    out.mkdir(parents=True, exist_ok=True)
    for name, content in files.items():
        (out / name).write_text(content)


def _param(value, default):
    return default if value is None else value


def cmd_reduce(args) -> int:
    if args.sweep:
        ms = [int(x) for x in args.sweep.split(",")]
        csv_text = size_sweep(
            args.chain,
            ms,
            _param(args.seed, 0),
            block_size=_param(args.block_size, 1),
            f=_param(args.f, 1),
        )
        _emit(args, {"sweep.csv": csv_text}, "sweep.csv")
        return 0
    _check_format(args, CHAIN_INPUT[args.chain])
    text = _read(args)
    files: dict[str, str] = {}
    if args.chain == "sat-clique":
        b, k = _param(args.block_size, 1), _param(args.power, 1)
        gg = sat_to_clique(pad_clauses_to_divisible(parse_dimacs(text), b))
        g = gg.graph
        files["gadgets.json"] = gadgets_to_json(gg.gadgets)
        if b > 1:
            g, smap = supervertex_clique_transform(g, b, _param(args.cap, 20000))
            files["supervertices.json"] = supervertex_map_to_json(smap)
        if k > 1:
            g = graph_power(g, k, _param(args.cap, DEFAULT_POWER_CAP))
        files["graph.edgelist"] = to_edgelist(g)
        primary = "graph.edgelist"
    elif args.chain == "sat-mmis":
        f = _param(args.f, 1)
        mg = sat_to_mmis(pad_variables_to_divisible(parse_dimacs(text), f), f)
        files["graph.edgelist"] = to_edgelist(mg.graph)
        files["mmis.json"] = mmis_metadata_to_json(mg)
        primary = "graph.edgelist"
    elif args.chain == "setcover-union":
        new, prov = union_closure_transform(
            parse_setsys(text), _param(args.union, 1), _param(args.cap, 100_000)
        )
        files["instance.setsys"] = to_setsys(new)
        files["provenance.json"] = json.dumps([list(p) for p in prov])
        primary = "instance.setsys"
    else:
        red = minrep_to_setcover(
            minrep_from_json(text), _param(args.elements_per_superedge, 4), _param(args.seed, 0)
        )
        files["instance.setsys"] = to_setsys(red.instance)
        files["elements.json"] = element_map_to_json(red.element_map)
        primary = "instance.setsys"
    _emit(args, files, primary)
    return 0


def cmd_solve(args) -> int:
    _check_format(args, PROBLEM_INPUT[args.problem])
    text = _read(args)
    p = args.problem
    result: dict
    if p == "maxsat":
        cnf = parse_dimacs(text)
        value, tau = max_sat_bruteforce(cnf, _param(args.cap, DEFAULT_MAXSAT_CAP))
        result = {"value": value, "witness": [x if tau[x] else -x for x in sorted(tau)]}
    elif p in ("clique", "mmis", "dense-subgraph"):
        g = parse_edgelist(text)
        if p == "clique":
            value, s = max_clique_exact(g, _param(args.cap, DEFAULT_CLIQUE_CAP))
            result = {"value": value, "witness": sorted(s)}
        elif p == "mmis":
            value, s = mmis_exact(g, _param(args.cap, DEFAULT_MMIS_CAP))
            result = {"value": value, "witness": sorted(s)}
        else:
            res = dense_q_subgraph_tree(g, _param(args.q, g.n))
            result = {
                "value": res.induced_edges,
                "witness": sorted(res.vertices),
                "treeEdges": [list(e) for e in res.tree_edges],
            }
    elif p in ("setcover", "greedy-setcover"):
        inst = parse_setsys(text)
        if p == "setcover":
            value, s = setcover_exact(inst, _param(args.cap, DEFAULT_SETCOVER_CAP))
        else:
            s = setcover_greedy(inst)
            value = len(s)
        result = {"value": value, "witness": list(s)}
    else:
        value, s = minrep_exact(minrep_from_json(text), _param(args.cap, DEFAULT_MINREP_CAP))
        result = {"value": value, "witness": list(s)}
    body = json.dumps(result) if args.json else f"{result['value']}\n{' '.join(map(str, result['witness']))}"
    _emit(args, {"solution": body + "\n"}, "solution")
    return 0


def cmd_verify(args) -> int:
    results = claims.run_suites(args.suite)
    if args.json:
        print(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        for r in results:
            print(r.summary())
            for failure in r.failures[:5]:
                print(f"  {failure}")
    return 0 if all(r.passed for r in results) else 1


def cmd_pipeline(args) -> int:
    cfg = PipelineConfig.from_file(args.config)
    for attr in ("block_size", "power", "f", "union", "elements_per_superedge", "seed"):
        if getattr(args, attr) is not None:
            setattr(cfg, attr, getattr(args, attr))
    if args.timing:
        cfg.timing = True
    if args.r:
        cfg.r = RtFunction.parse(args.r)
    if args.t:
        cfg.t = RtFunction.parse(args.t)
    report = run_pipeline(cfg, args.out)
    if args.json or not args.out:
        sys.stdout.write(report.to_json())
    checks = list(report.witness_checks.values())
    if report.gap_check is not None:
        checks.append(report.gap_check["verdict"])
    return 0 if all(checks) else 1


COMMANDS = {
    "reduce": cmd_reduce,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "pipeline": cmd_pipeline,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (GapkitError, OSError, ValueError) as exc:
        print(f"gapkit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
