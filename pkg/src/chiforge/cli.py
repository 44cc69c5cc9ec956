"""Command-line front end.

Exit codes: 0 ok, 1 usage error, 2 malformed input, 3 verification
failures (reports are still written), 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .coloring import (
    BudgetExceeded,
    EXACT_BUDGET,
    chi,
    chromatic_number,
    chromatic_number_weighted,
    critical_drops,
)
from .decompose import PreconditionError, decompose_qp4
from .graph import Graph6Error, expansion, parse_graph6, write_graph6
from .harness import THEOREM_IDS, CatalogSource, run_theorem, survey
from .patterns import ZOO, find_induced, graph_class, pattern

EXIT_USAGE, EXIT_INPUT, EXIT_FAILURES, EXIT_BUDGET = 1, 2, 3, 4


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _graph(text: str):
    try:
        return parse_graph6(text)
    except Graph6Error as e:
        raise InputError(f"bad graph6 {text!r}: {e}") from None


def _weights(text: str | None, n: int) -> tuple[int, ...]:
    if text is None:
        return (1,) * n
    try:
        q = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"weights must be comma-separated integers, got {text!r}") from None
    if len(q) != n or any(x < 0 for x in q):
        raise InputError(f"need {n} non-negative weights, got {text!r}")
    return q


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, sort_keys=True) if args.json else text)


def cmd_detect(args) -> int:
    G = _graph(args.graph)
    try:
        H = pattern(args.pattern)
    except KeyError as e:
        raise InputError(str(e.args[0])) from None
    w = find_induced(G, H)
    _emit(args, {"pattern": H.name, "witness": w}, "free" if w is None else " ".join(map(str, w)))
    return 0


def cmd_color(args) -> int:
    G = _graph(args.graph)
    if args.weights is None:
        k, cert = chromatic_number(G)
        _emit(args, {"chi": k, "certificate": cert.to_json()}, f"chi={k}\n{cert.dumps()}")
        return 0
    q = _weights(args.weights, G.n)
    k, cert = chromatic_number_weighted(G, q, cross_check=sum(q) <= EXACT_BUDGET)
    _emit(args, {"chi_q": k, "certificate": cert.to_json()}, f"chi_q={k}\n{cert.dumps()}")
    return 0


def cmd_decompose(args) -> int:
    G = _graph(args.graph)
    q = _weights(args.weights, G.n)
    try:
        dec = decompose_qp4(G, q)
    except PreconditionError as e:
        raise InputError(f"input is not Q{{P4}}-free; induced copy on vertices {e.witness}") from None
    print(dec.dumps(G) if args.json else json.dumps(dec.to_json(G), indent=2))
    return 0


def cmd_critical(args) -> int:
    G = _graph(args.graph)
    if G.n < 1:
        raise InputError("criticality needs at least one vertex")
    k = chi(G)
    drops = critical_drops(G)
    crit = all(d < k for d in drops)
    text = f"critical={'yes' if crit else 'no'} chi={k}\n" + "\n".join(f"{u} {d}" for u, d in enumerate(drops))
    _emit(args, {"critical": crit, "chi": k, "chi_without": drops}, text)
    return 0


def cmd_expand(args) -> int:
    B = ZOO[args.base].graph
    q = _weights(args.weights, B.n)
    H = expansion(B, q)
    g6 = write_graph6(H)
    _emit(args, {"graph6": g6, "n": H.n}, g6)
    return 0


def _source(text: str) -> CatalogSource:
    try:
        return CatalogSource.parse(text)
    except ValueError as e:
        raise InputError(str(e)) from None


def _finish_reports(args, reports) -> int:
    failed = False
    lines = []
    for rep in reports:
        jp, cp = rep.write(args.out)
        failed |= not rep.passed
        lines.append(f"{rep.theorem} {'PASS' if rep.passed else 'FAIL'} checked={rep.checked} "
                     f"failures={len(rep.failures)} report={jp}")
        for row in rep.table:
            lines.append(f"  omega={row['omega']} max_chi={row['max_chi']} {row['witness_graph6']}")
    _emit(args, {"reports": [r.to_json() for r in reports]}, "\n".join(lines))
    return EXIT_FAILURES if failed else 0


def cmd_verify(args) -> int:
    source = _source(args.source)
    try:
        reports = run_theorem(args.theorem, source)
    except FileNotFoundError as e:
        raise InputError(str(e)) from None
    except Graph6Error as e:
        raise InputError(f"bad graph6 in catalog: {e}") from None
    return _finish_reports(args, reports)


def cmd_survey(args) -> int:
    source = _source(args.source)
    try:
        graph_class(args.klass)
    except KeyError as e:
        raise InputError(str(e.args[0])) from None
    rep = survey(source, args.klass)
    rep.write(args.out)
    if args.json:
        print(rep.dumps())
    else:
        sys.stdout.write(rep.to_csv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chiforge", description="Exact colouring, decomposition and chi-binding checks on small graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("detect", cmd_detect, "find an induced copy of a named pattern")
    sp.add_argument("--graph", required=True, help="graph6 string")
    sp.add_argument("--pattern", required=True, help=", ".join(ZOO) + ", Kn or K{a,b}")

    sp = add("color", cmd_color, "exact (weighted) chromatic number with certificate")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--weights", help="comma-separated vertex weights (default all ones)")

    sp = add("decompose", cmd_decompose, "decompose a weighted Q{P4}-free graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--weights")

    sp = add("critical", cmd_critical, "criticality and chi after each vertex deletion")
    sp.add_argument("--graph", required=True)

    sp = add("expand", cmd_expand, "clique expansion of C5 or W5")
    sp.add_argument("--base", required=True, choices=["C5", "W5"])
    sp.add_argument("--weights", required=True)

    sp = add("verify", cmd_verify, "run a verifier over a catalog and write reports")
    sp.add_argument("--theorem", required=True, choices=THEOREM_IDS)
    sp.add_argument("--source", default="builtin:6", help="builtin:N, small:N or file:PATH")
    sp.add_argument("--out", default="reports")

    sp = add("survey", cmd_survey, "extremal omega -> max chi table for a class")
    sp.add_argument("--source", required=True)
    sp.add_argument("--class", dest="klass", required=True)
    sp.add_argument("--out", default="reports")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
