"""Command-line front end.

Every command prints line-delimited JSON records (``--format csv`` for CSV)
with a stable key order, so identical inputs give byte-identical output.

Exit codes: 0 success, 2 usage or parse error, 3 semantic error (invalid or
infeasible instance), 4 oracle cap exceeded, 5 internal invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import instances
from .aof import enumerate_optimal_flows
from .bi import SupportedFlow, all_supported_flows_bi, extreme_supported_points
from .multi import all_supported_flows, compute_upper_image
from .network import (
    InvalidNetworkError, Network, ParseError, format_instance, outcome, parse_instance,
    parse_rational, validate,
)
from .oracle import OracleCapExceeded, classify, default_cap
from .scalar import (
    InfeasibleError, as_weights, solve, solve_lexicographic, strictly_positive,
    verify_optimal,
)

EXIT_OK, EXIT_USAGE, EXIT_SEMANTIC, EXIT_CAP, EXIT_INTERNAL = 0, 2, 3, 4, 5

CSV_FIELDS = ("kind", "outcome", "flow", "lambda", "label", "value", "face", "count")


class UsageError(ValueError):
    pass


class InvariantError(RuntimeError):
    pass


def rat(x) -> str:
    return str(Fraction(x))


def rats(xs: Iterable) -> list[str]:
    return [rat(x) for x in xs]


def flow_field(flow: Sequence[int]) -> list[str]:
    return [f"{k}={v}" for k, v in enumerate(flow, 1)]


@dataclass
class RunReport:
    command: str
    digest: str
    counts: dict[str, int | bool] = field(default_factory=dict)
    records: list[dict] = field(default_factory=list)

    def summary(self) -> dict:
        rec = {"kind": "summary", "command": self.command, "instance": self.digest}
        rec.update(self.counts)
        return rec


class Emitter:
    def __init__(self, out, fmt: str):
        self.out = out
        self.fmt = fmt
        self.writer = None
        if fmt == "csv":
            self.writer = csv.writer(out, lineterminator="\n")
            self.writer.writerow(CSV_FIELDS)

    def emit(self, record: dict):
        if self.fmt == "csv":
            if record["kind"] == "summary":
                print(json.dumps(record), file=sys.stderr)
                return
            row = []
            for key in CSV_FIELDS:
                v = record.get(key, "")
                row.append(" ".join(v) if isinstance(v, list) else "" if v is None else v)
            self.writer.writerow(row)
        else:
            self.out.write(json.dumps(record) + "\n")


def load(path: str) -> Network:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(text)


def load_valid(path: str) -> Network:
    network = load(path)
    problems = validate(network)
    if problems:
        raise InvalidNetworkError(problems)
    return network


def parse_weights(text: str, d: int):
    try:
        values = [parse_rational(t.strip()) for t in text.split(",")]
    except ParseError as exc:
        raise UsageError(f"bad --lambda: {exc}") from None
    try:
        return as_weights(values, d)
    except ValueError as exc:
        raise UsageError(f"bad --lambda: {exc}") from None


def parse_order(text: str, d: int) -> list[int]:
    try:
        order = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --lex: {text!r}") from None
    if sorted(order) != list(range(1, d + 1)):
        raise UsageError(f"--lex must be a permutation of 1..{d}")
    return order


# -- commands ---------------------------------------------------------------

def cmd_validate(args, emit):
    network = load(args.path)
    problems = validate(network)
    emit({"kind": "validation", "valid": not problems, "violations": problems,
          "nodes": network.n, "arcs": network.m, "objectives": network.d})
    return EXIT_SEMANTIC if problems else EXIT_OK


def cmd_solve(args, emit):
    network = load_valid(args.path)
    if (args.weights is None) == (args.lex is None):
        raise UsageError("give exactly one of --lambda or --lex")
    if args.weights is not None:
        lam = parse_weights(args.weights, network.d)
        sol = solve(network, lam)
    else:
        sol = solve_lexicographic(network, parse_order(args.lex, network.d))
        lam = sol.weights
    emit({"kind": "solution", "outcome": rats(outcome(network, sol.flow)),
          "flow": flow_field(sol.flow), "lambda": rats(lam), "value": rat(sol.objective_value)})
    return EXIT_OK


def cmd_extreme(args, emit):
    network = load_valid(args.path)
    report = RunReport("extreme", network.digest())
    facets = ()
    if network.d == 1:
        sol = solve(network, (1,))
        vertices = [(outcome(network, sol.flow), sol.flow)]
    elif network.d == 2:
        vertices = [(p.outcome, p.flow) for p in extreme_supported_points(network)]
    else:
        ui = compute_upper_image(network)
        vertices = [(v.outcome, v.flow) for v in ui.vertices]
        facets = ui.facets
    for y, f in sorted(vertices):
        rec = {"kind": "vertex", "outcome": rats(y)}
        if args.flows:
            rec["flow"] = flow_field(f)
        emit(rec)
    if args.facets:
        rank = {y: i for i, (y, _) in enumerate(sorted(vertices))}
        for k, fc in enumerate(facets, 1):
            emit({"kind": "facet", "face": f"facet {k}", "lambda": rats(fc.normal),
                  "value": rat(fc.offset),
                  "vertices": sorted(rank[ui.vertices[i].outcome] + 1 for i in fc.incident_vertices)})
    report.counts = {"vertices": len(vertices), "facets": len(facets)}
    emit(report.summary())
    return EXIT_OK


def supported_stream(network: Network, method: str = "auto", jobs: int = 1) -> Iterator[SupportedFlow]:
    """Dispatch on the number of objectives."""
    if network.d == 1:
        lam = (Fraction(1),)
        seed = solve(network, lam)
        return (SupportedFlow(f, outcome(network, f), lam, "optimum")
                for f in enumerate_optimal_flows(network, lam, seed))
    if method == "bi" or method == "auto" and network.d == 2:
        if network.d != 2:
            raise UsageError("--method bi needs a bi-objective instance")
        return all_supported_flows_bi(network, jobs=jobs)
    return all_supported_flows(network)


def check_record(network: Network, item: SupportedFlow):
    if not strictly_positive(item.weights):
        raise InvariantError(f"witness {rats(item.weights)} is not strictly positive")
    if not verify_optimal(network, item.weights, item.flow).optimal:
        raise InvariantError(f"flow {item.flow} is not optimal for its witness {rats(item.weights)}")


def cmd_supported(args, emit):
    network = load_valid(args.path)
    stream = supported_stream(network, args.method, args.jobs)
    if args.limit is not None:
        if args.limit < 0:
            raise UsageError("--limit must be non-negative")
        stream = itertools.islice(stream, args.limit + 1)
    count = 0
    truncated = False
    outcomes = set()
    for item in stream:
        if args.limit is not None and count == args.limit:
            truncated = True
            break
        if args.check:
            check_record(network, item)
        count += 1
        outcomes.add(item.outcome)
        emit({"kind": "supported", "outcome": rats(item.outcome), "flow": flow_field(item.flow),
              "lambda": rats(item.weights), "face": item.face})
    report = RunReport("supported", network.digest(),
                       {"flows": count, "outcomes": len(outcomes), "truncated": truncated})
    emit(report.summary())
    return EXIT_OK


def cmd_classify(args, emit):
    network = load_valid(args.path)
    cap = args.cap if args.cap is not None else default_cap()
    result = classify(network, cap)
    for y, entry in result.outcomes.items():
        rec = {"kind": "outcome", "outcome": rats(y), "label": entry.label, "count": len(entry.flows)}
        if entry.weights is not None:
            rec["lambda"] = rats(entry.weights)
        if entry.dominated_by is not None:
            rec["dominated_by"] = rats(entry.dominated_by)
        emit(rec)
    counts = {"flows": len(result.flows)}
    counts.update(result.counts())
    emit(RunReport("classify", network.digest(), counts).summary())
    return EXIT_OK


def cmd_gen(args, out):
    if args.name == "fig2":
        text = format_instance(instances.fig2(), instances.FIG2_COMMENTS)
    elif args.name == "star":
        text = format_instance(instances.star(args.n, args.d),
                               [f"star network with {args.n} transshipment nodes, d={args.d}"])
    else:
        if args.m is None:
            raise UsageError("gen random needs --m")
        try:
            net = instances.random_network(args.n, args.m, args.d, args.maxcost, args.maxcap, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        text = format_instance(net, [f"random n={args.n} m={args.m} d={args.d} "
                                     f"maxcost={args.maxcost} maxcap={args.maxcap} seed={args.seed}"])
    out.write(text)
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moflow", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    common.add_argument("--timing", action="store_true", help="report wall time on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check an instance file")
    p.add_argument("path")

    p = sub.add_parser("solve", parents=[common], help="solve one weighted-sum or lexicographic problem")
    p.add_argument("path")
    p.add_argument("--lambda", dest="weights", metavar="R1,...,Rd")
    p.add_argument("--lex", metavar="I1,...,Id")

    p = sub.add_parser("extreme", parents=[common], help="vertices of the upper image")
    p.add_argument("path")
    p.add_argument("--flows", action="store_true", help="include one preimage flow per vertex")
    p.add_argument("--facets", action="store_true", help="also list facets (d >= 3)")

    p = sub.add_parser("supported", parents=[common], help="enumerate all supported efficient flows")
    p.add_argument("path")
    p.add_argument("--limit", type=int)
    p.add_argument("--check", action="store_true", help="re-verify each record's witness")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--method", choices=("auto", "bi", "multi"), default="auto")

    p = sub.add_parser("classify", parents=[common], help="brute-force classification of all outcomes")
    p.add_argument("path")
    p.add_argument("--cap", type=int, help="maximum number of flows to enumerate")

    p = sub.add_parser("gen", parents=[common], help="write a named instance to stdout")
    gsub = p.add_subparsers(dest="name", required=True)
    gsub.add_parser("fig2")
    g = gsub.add_parser("star")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, default=2)
    g = gsub.add_parser("random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--maxcost", type=int, default=5)
    g.add_argument("--maxcap", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "solve": cmd_solve,
    "extreme": cmd_extreme,
    "supported": cmd_supported,
    "classify": cmd_classify,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        if args.command == "gen":
            code = cmd_gen(args, out)
        else:
            emitter = Emitter(out, args.format)
            code = COMMANDS[args.command](args, emitter.emit)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidNetworkError, InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except OracleCapExceeded as exc:
        print(f"error: oracle cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantError as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - anything else is a bug, reported as such
        print(f"error: internal failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.timing:
        print(f"wall time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
