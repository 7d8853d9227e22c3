"""``netcurv`` command line: generate, compute, correlate, robustness, reproduce-table.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional

from .analysis import aggregate, correlate_graph, default_pairs, ensemble_reports
from .generators import GeneratorSpec, SpecError, generate
from .graph import (Graph, GraphError, bundled_fixture, components,
                    largest_connected_component, read_edge_list, write_edge_list)
from .metrics import EDGE_METRICS, VERTEX_METRICS, compute_metrics
from .ollivier import DisconnectedGraphError
from .robustness import (EDGE_STRATEGIES, VERTEX_STRATEGIES, mean_curve,
                         removal_experiment, write_curves)
from .tables import TABLES, table_pairs, table_rows
from .transport import TransportError

USAGE_ERROR = 1
DATA_ERROR = 2

_SPEC_FLAGS = ("family", "n", "p", "k", "beta", "m", "m0", "gamma", "temperature")
_ALIASES = {"DEGREE": "DEG", "CLUSTERING": "CC", "BETWEENNESS": "BC"}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, spec=True, out=True) -> None:
    if spec:
        p.add_argument("spec", nargs="*", metavar="KEY=VALUE",
                       help="generator parameters, e.g. family=er n=1000 p=0.003")
        p.add_argument("--input", type=Path, help="edge-list file (instead of a generator)")
        p.add_argument("--family")
        p.add_argument("--n", type=int)
        p.add_argument("--p", type=float)
        p.add_argument("--k", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--m", type=int)
        p.add_argument("--m0", type=int)
        p.add_argument("--gamma", type=float)
        p.add_argument("--temperature", type=float)
    p.add_argument("--seed", type=int, default=None, help="base seed (default 0)")
    if out:
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")


def _idleness(p):
    p.add_argument("--idleness", type=float, default=0.5,
                   help="probability mass kept at the vertex by the walk (default 0.5)")


def _threads(p):
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: available CPUs)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="netcurv", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a model network as an edge list")
    _common(g)

    c = sub.add_parser("compute", help="curvature and classic metric columns on the LCC")
    _common(c)
    _idleness(c)
    c.add_argument("--metrics", default=None,
                   help="comma-separated subset of or,fr,afr,ebc,emb,dis,deg,bc,cc")

    r = sub.add_parser("correlate", help="Spearman and Pearson correlations of metric pairs")
    _common(r)
    _idleness(r)
    _threads(r)
    r.add_argument("--samples", type=int, default=1,
                   help="ensemble size for generator input (seeds seed..seed+samples-1)")

    b = sub.add_parser("robustness", help="efficiency under ordered edge or vertex removal")
    _common(b)
    _idleness(b)
    b.add_argument("--target", choices=("edges", "vertices"), default="edges")
    b.add_argument("--strategies", default=None, help="comma-separated removal strategies")
    b.add_argument("--steps", type=int, default=21, help="recorded fractions, including 0 and 1")
    b.add_argument("--samples", type=int, default=1)
    b.add_argument("--normalize-efficiency", choices=("paper", "ordered"), default="paper")
    b.add_argument("--adaptive-removal", choices=("off", "on"), default="off")
    b.add_argument("--renormalize-vertices", action="store_true",
                   help="divide by the surviving vertex count after vertex removal")

    t = sub.add_parser("reproduce-table", help="recompute a published correlation table")
    t.add_argument("table", choices=TABLES)
    _common(t, spec=False)
    _idleness(t)
    _threads(t)
    t.add_argument("--samples", type=int, default=100)
    t.add_argument("--rows", default=None,
                   help="comma-separated substrings; only matching rows are run")
    t.add_argument("--fixtures", type=Path, default=None,
                   help="directory holding <slug>.edges files for real networks")
    return ap


def _seed(args) -> int:
    if args.seed is None:
        print("netcurv: seed not given, using 0", file=sys.stderr)
        return 0
    return args.seed


def _spec(args) -> Optional[GeneratorSpec]:
    kv = {}
    for tok in args.spec:
        if "=" not in tok:
            raise UsageError(f"expected KEY=VALUE, got {tok!r}")
        key, val = tok.split("=", 1)
        kv[key.strip().lower()] = val.strip()
    for name in _SPEC_FLAGS:
        val = getattr(args, name)
        if val is not None:
            kv[name] = val
    if args.input is not None:
        if kv:
            raise UsageError("give either --input or generator parameters, not both")
        return None
    if not kv:
        raise UsageError("no input: give --input PATH or generator parameters")
    if args.seed is not None or "seed" not in kv:
        kv["seed"] = _seed(args)
    try:
        return GeneratorSpec.from_mapping(kv).validate()
    except SpecError as exc:
        raise UsageError(str(exc)) from None


def _load(path: Path) -> Graph:
    try:
        return read_edge_list(path)
    except (OSError, GraphError) as exc:
        raise DataError(f"cannot read {path}: {exc}") from None


def _lcc(g: Graph, name: str) -> Graph:
    count, _ = components(g)
    lcc = largest_connected_component(g)
    if count > 1:
        print(f"netcurv: {name} has {count} components; using the largest "
              f"({lcc.n} of {g.n} vertices, {lcc.m} of {g.m} edges)", file=sys.stderr)
    if lcc.m == 0:
        raise DataError(f"{name}: largest connected component has no edges")
    return lcc


def _check_idleness(args) -> None:
    if not 0.0 <= args.idleness <= 1.0:
        raise UsageError("--idleness must lie in [0, 1]")


def _mkdir(path: Path) -> Path:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise DataError(f"cannot create {path}: {exc}") from None
    return path


def _network(args):
    """(graph, name, spec) from either --input or generator parameters."""
    spec = _spec(args)
    if spec is None:
        return _load(args.input), args.input.stem, None
    return generate(spec), spec.label(), spec


def cmd_generate(args) -> int:
    spec = _spec(args)
    if spec is None:
        raise UsageError("generate needs generator parameters, not --input")
    g = generate(spec)
    out = _mkdir(args.out)
    edges = out / f"{spec.label()}.edges"
    write_edge_list(g, edges, header=[spec.to_config()])
    side = out / f"{spec.label()}.json"
    side.write_text(json.dumps({"spec": {k: v for k, v in vars(spec).items() if v is not None},
                                "config": spec.to_config(), "n": g.n, "m": g.m},
                               indent=2) + "\n")
    print(edges)
    return 0


def _metric_lists(text: Optional[str]) -> tuple[list[str], list[str]]:
    if text is None:
        return list(EDGE_METRICS), list(VERTEX_METRICS)
    names = [_ALIASES.get(s.strip().upper(), s.strip().upper())
             for s in text.split(",") if s.strip()]
    for nm in names:
        if nm not in EDGE_METRICS and nm not in VERTEX_METRICS:
            raise UsageError(f"unknown metric {nm.lower()!r}")
    return ([nm for nm in names if nm in EDGE_METRICS],
            [nm for nm in names if nm in VERTEX_METRICS])


def cmd_compute(args) -> int:
    _check_idleness(args)
    edge, vertex = _metric_lists(args.metrics)
    g, name, _ = _network(args)
    lcc = _lcc(g, name)
    table = compute_metrics(lcc, edge, vertex, args.idleness, name)
    out = _mkdir(args.out)
    ep, vp = table.to_csv(out)
    for key, sec in table.timings.items():
        print(f"{key:<4}{sec:10.4f} s")
    print(ep)
    print(vp)
    return 0


def cmd_correlate(args) -> int:
    _check_idleness(args)
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    spec = _spec(args)
    if spec is None:
        g = _load(args.input)
        lcc = _lcc(g, args.input.stem)
        rep = correlate_graph(lcc, default_pairs(), args.idleness, args.input.stem)
    else:
        reps = ensemble_reports(spec, args.samples, default_pairs(), args.idleness,
                                args.threads)
        rep = aggregate(reps, spec.label())
    out = _mkdir(args.out)
    rep.to_csv(out / f"{rep.network_id}_correlations.csv")
    rep.to_json(out / f"{rep.network_id}_correlations.json")
    print(rep.render())
    return 0


def cmd_robustness(args) -> int:
    _check_idleness(args)
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    allowed = EDGE_STRATEGIES if args.target == "edges" else VERTEX_STRATEGIES
    strategies = (list(allowed) if args.strategies is None
                  else [s.strip() for s in args.strategies.split(",") if s.strip()])
    for s in strategies:
        if s not in allowed:
            raise UsageError(f"unknown {args.target} strategy {s!r}; choose from "
                             f"{', '.join(allowed)}")
    spec = _spec(args)
    seed = spec.seed if spec is not None else _seed(args)
    graphs = ([(_load(args.input), seed + i) for i in range(args.samples)] if spec is None
              else [(generate(spec.with_seed(spec.seed + i)), spec.seed + i)
                    for i in range(args.samples)])
    name = args.input.stem if spec is None else spec.label()
    curves = []
    for strat in strategies:
        runs = [removal_experiment(g, args.target, strat, args.steps, s, args.idleness,
                                   args.normalize_efficiency, args.renormalize_vertices,
                                   args.adaptive_removal == "on")
                for g, s in graphs]
        curves.append(mean_curve(runs))
    out = _mkdir(args.out)
    path = write_curves(curves, out / f"{name}_{args.target}_removal.csv")
    for c in curves:
        mid = c.efficiency[len(c.efficiency) // 2]
        print(f"{c.strategy:<18} E(0)={c.efficiency[0]:.5f}  "
              f"E({c.fractions[len(c.fractions) // 2]:.2f})={mid:.5f}")
    print(path)
    return 0


def _fixture_path(slug: str, fixtures: Optional[Path]) -> Optional[Path]:
    if fixtures is not None and (fixtures / f"{slug}.edges").exists():
        return fixtures / f"{slug}.edges"
    try:
        return bundled_fixture(slug)
    except FileNotFoundError:
        return None


def cmd_reproduce_table(args) -> int:
    _check_idleness(args)
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    seed = _seed(args)
    pairs = table_pairs(args.table)
    rows = table_rows(args.table)
    if args.rows:
        wanted = [w.strip().lower() for w in args.rows.split(",") if w.strip()]
        rows = [r for r in rows if any(w in r.name.lower() for w in wanted)]
        if not rows:
            raise UsageError(f"--rows matched no row of table {args.table}")
    records = []
    for row in rows:
        if row.is_model:
            spec = GeneratorSpec.from_config(row.spec).with_seed(seed)
            reps = ensemble_reports(spec, args.samples, pairs, args.idleness, args.threads)
            rep = aggregate(reps, row.name)
            kind = "model"
        else:
            path = _fixture_path(row.fixture, args.fixtures)
            if path is None:
                print(f"netcurv: skipping {row.name}: no fixture {row.fixture}.edges",
                      file=sys.stderr)
                continue
            g = largest_connected_component(_load(path))
            rep = correlate_graph(g, pairs, args.idleness, row.name)
            kind = "real"
        records.append((row, kind, rep))
    out = _mkdir(args.out)
    path = out / f"table_{args.table}.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["table", "network", "kind", "scope", "a", "b", "reported",
                    "computed", "abs_diff", "samples", "excluded"])
        for row, kind, rep in records:
            for p, val in zip(pairs, row.values):
                r = rep.get(p.scope, p.a, p.b)
                comp = "NA" if r.spearman is None else repr(r.spearman)
                diff = "NA" if r.spearman is None else repr(abs(r.spearman - val))
                w.writerow([args.table, row.name, kind, p.scope, p.a, p.b, f"{val:.2f}",
                            comp, diff, r.samples, r.excluded])
    print(_render_table(args.table, pairs, records))
    print(path)
    return 0


def _render_table(table, pairs, records) -> str:
    head = "  ".join(f"{p.a}~{p.b}:{p.scope[0]}".rjust(14) for p in pairs)
    lines = [f"Table {table}: Spearman, reported / computed",
             f"{'network':<30}{head}"]
    for row, _, rep in records:
        cells = []
        for p, val in zip(pairs, row.values):
            r = rep.get(p.scope, p.a, p.b)
            got = "NA" if r.spearman is None else f"{r.spearman:.2f}"
            cells.append(f"{val:.2f} / {got}".rjust(14))
        lines.append(f"{row.name:<30}" + "  ".join(cells))
    return "\n".join(lines)


_COMMANDS = {
    "generate": cmd_generate,
    "compute": cmd_compute,
    "correlate": cmd_correlate,
    "robustness": cmd_robustness,
    "reproduce-table": cmd_reproduce_table,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is not None and args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"netcurv {args.command}: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (DataError, DisconnectedGraphError, TransportError, GraphError) as exc:
        print(f"netcurv {args.command}: data error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
