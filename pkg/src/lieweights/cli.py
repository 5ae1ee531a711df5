"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 invariant or verdict failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .document import AlgebraDocument, load, serialize
from .errors import InputError, InvariantViolation, LieWeightsError, VerdictMismatch
from .graph import SimpleGraph, sum_graph, to_dot, weight_graph, weight_label
from .solvability import analyze, analyze_weight_system, fundamental_subgraph
from .verify import distinct_pair_checks, global_checks, verify_document

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2


def resolve(source: str) -> tuple[AlgebraDocument, dict | None]:
    """A path to a document, or the name of a catalog entry."""
    p = Path(source)
    if p.is_file():
        return load(p), None
    try:
        entry = catalog.get(source)
    except KeyError:
        raise InputError(f"{source}: no such file or catalog entry") from None
    return entry.document, entry.expected


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render(report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    return report.to_text()


def _report(doc: AlgebraDocument, oracle: bool):
    if doc.graph_only:
        return analyze_weight_system(doc.weight_system(), doc.name)
    L = doc.algebra()
    return analyze(L, doc.name, oracle=oracle, ws=doc.weight_system(L))


def cmd_analyze(args) -> int:
    doc, _ = resolve(args.input)
    try:
        report = _report(doc, not args.no_oracle)
    except VerdictMismatch as exc:
        _emit(_render(exc.report, args.format), args.output)
        raise
    _emit(_render(report, args.format), args.output)
    return EXIT_OK


def cmd_subtori(args) -> int:
    doc, _ = resolve(args.input)
    try:
        report = _report(doc, not args.no_oracle)
        status = EXIT_OK
    except VerdictMismatch as exc:
        report, status = exc.report, EXIT_INVARIANT
        print(f"error: {exc}", file=sys.stderr)
    d = report.to_dict()
    if args.format == "json":
        text = json.dumps({k: d[k] for k in ("algebra", "rank", "subtori", "two_step_subsets",
                                             "maximal_two_step_subsets", "mismatches")}, indent=2) + "\n"
    else:
        text = "".join(
            line + "\n" for line in report.to_text().splitlines()
            if line.startswith(("subtorus", "two-step", "MISMATCH"))
        )
    _emit(text, args.output)
    return status


def cmd_weights(args) -> int:
    doc, _ = resolve(args.input)
    ws = doc.weight_system()
    if args.format == "json":
        text = json.dumps({
            "algebra": doc.name,
            "rank": ws.rank,
            "graded": ws.graded,
            "weights": [list(w) for w in ws.weights],
            "labels": [weight_label(w) for w in ws.weights],
            "fundamental_vertices": [v + 1 for v in ws.fundamental_indices],
        }, indent=2) + "\n"
    else:
        lines = [f"algebra: {doc.name}", f"rank: {ws.rank}"]
        for v, w in enumerate(ws.weights):
            lines.append(f"X{v + 1}: {weight_label(w)}  {list(w)}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def select_graph(doc: AlgebraDocument, kind: str) -> SimpleGraph:
    ws = doc.weight_system()
    if kind == "sum":
        return sum_graph(ws)
    if kind == "weight":
        return weight_graph(ws)
    if kind.startswith("fundamental:"):
        try:
            i = int(kind.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad graph kind {kind!r}") from None
        return fundamental_subgraph(ws, i)
    raise InputError(f"bad graph kind {kind!r}; use sum, weight or fundamental:i")


def cmd_graph(args) -> int:
    doc, _ = resolve(args.input)
    g = select_graph(doc, args.kind)
    kind = args.kind.split(":")[0]
    _emit(to_dot(g, kind, f"{doc.name} {args.kind}"), args.output)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        _emit("".join(name + "\n" for name in catalog.names()), args.output)
        return EXIT_OK
    if not args.name:
        raise InputError("catalog show needs an entry name")
    try:
        entry = catalog.get(args.name)
    except KeyError as exc:
        raise InputError(str(exc)) from None
    _emit(serialize(entry.document), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all:
        targets = [(e.name, e.document, e.expected) for e in catalog.entries().values()]
    elif args.input:
        doc, expected = resolve(args.input)
        targets = [(doc.name, doc, expected)]
    else:
        raise InputError("verify needs a document or --all")
    lines = []
    failed = False
    for name, doc, expected in targets:
        for check in verify_document(doc, expected, oracle=not args.no_oracle):
            lines.append(check.line(name))
            failed |= not check.ok
    extra = global_checks()
    if args.all:
        extra += distinct_pair_checks({n: d for n, d, _ in targets})
    for check in extra:
        lines.append(check.line("catalog" if args.all else targets[0][0]))
        failed |= not check.ok
    total = len(lines)
    bad = sum(1 for line in lines if line.startswith("FAIL"))
    lines.append(f"{total - bad}/{total} checks passed")
    _emit("\n".join(lines) + "\n", args.output)
    if failed:
        for line in lines:
            if line.startswith("FAIL"):
                print(line, file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("--no-oracle", action="store_true", help="skip derived-series cross-validation")

    parser = argparse.ArgumentParser(prog="lieweights", description="Weight graphs of nilpotent Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for one algebra")
    p.add_argument("input", help="document path or catalog name")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", parents=[common], help="DOT export of a graph")
    p.add_argument("input")
    p.add_argument("--kind", default="weight", help="sum, weight or fundamental:i")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("weights", parents=[common], help="weight system")
    p.add_argument("input")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("subtori", parents=[common], help="two-step verdicts per subtorus")
    p.add_argument("input")
    p.set_defaults(func=cmd_subtori)

    p = sub.add_parser("catalog", parents=[common], help="list or show catalog entries")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("input", nargs="?")
    p.add_argument("--all", action="store_true", help="verify every catalog entry")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, LieWeightsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
