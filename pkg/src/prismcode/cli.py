"""Command line front end.

Subcommands cover generation (gen), checking (verify, conditions, twins,
cwcheck), construction (pattern), and optimization (solve, scan).  Exit
codes are part of the interface: 0 success or valid, 1 checked and found
invalid, 2 infeasible (twins exist), 64 usage or input error.  Output is
plain text by default; --json switches the checking and solving commands
to the documented JSON schemas.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Optional

from .cycleprism import CodePair, check_conditions, pattern_code, upper_bound
from .graphs import (
    Graph,
    GraphFormatError,
    PrismIndexing,
    closed_twins,
    complementary_prism,
    cycle,
    format_graph,
    parse_graph,
    random_graph,
)
from .idcode import hitting_instance, is_identifying_code, vertex_label
from .layout import check_doubling, random_layout_tree
from .solver import SolverOptions, ic_table, format_hitting_instance, solve_min_idcode

USAGE_ERROR = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 64, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _prism_indexing(g: Graph) -> Optional[PrismIndexing]:
    """Recognize complementary prisms of cycles, for friendly vertex labels."""
    if g.order % 2 == 0 and g.order >= 6:
        n = g.order // 2
        if g == complementary_prism(cycle(n)):
            return PrismIndexing(n)
    return None


def _label(v: int, indexing: Optional[PrismIndexing]) -> str:
    return str(vertex_label(v, indexing))


def _parse_code_file(text: str, g: Graph, how: str) -> list[int]:
    """Code file: two 0/1 rows (prism CodePair) or whitespace vertex tokens."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    looks_bits = (
        len(lines) == 2
        and set("".join(lines)) <= {"0", "1"}
        and len(lines[0]) == len(lines[1])
        and 2 * len(lines[0]) == g.order
    )
    if how == "bits" or (how == "auto" and looks_bits):
        pair = CodePair.from_strings(text)
        if 2 * pair.n != g.order:
            raise GraphFormatError(f"code rows of length {pair.n} do not fit order {g.order}")
        return list(pair.vertices())
    indexing = _prism_indexing(g)
    out = []
    for token in text.split():
        if token.isdigit():
            v = int(token) - 1
            if not 0 <= v < g.order:
                raise GraphFormatError(f"vertex {token} outside 1..{g.order}")
        elif indexing is not None:
            v = indexing.parse_label(token)
        else:
            raise GraphFormatError(f"bad vertex token {token!r}")
        out.append(v)
    return out


# ------------------------------------------------------------------ commands

def cmd_gen(args) -> int:
    if args.kind == "cycle":
        text = format_graph(cycle(args.n))
    else:
        n = args.n
        g = complementary_prism(cycle(n))
        legend = (
            f"complementary prism of the cycle on {n} vertices",
            f"vertices 1..{n}: cycle side, labeled v1..v{n}",
            f"vertices {n + 1}..{2 * n}: complement side, labeled vbar1..vbar{n}",
            f"vertex {n}+i is the matched partner of vertex i",
        )
        text = format_graph(g, legend)
    _emit(text, args.output)
    return 0


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    code = _parse_code_file(_read(args.code), g, args.code_format)
    report = is_identifying_code(g, args.d, code)
    indexing = _prism_indexing(g)
    if args.format == "json":
        print(report.to_json(indexing))
    elif report.valid:
        print(f"valid: {len(set(code))} vertices identify the graph at radius {args.d}")
    else:
        f = report.failure
        where = ", ".join(_label(v, indexing) for v in f.vertices)
        print(f"invalid: {f.kind} at {where}")
    return 0 if report.valid else 1


def cmd_pattern(args) -> int:
    code = pattern_code(args.n)
    sys.stdout.write(code.to_strings())
    if args.box:
        sys.stdout.write(_box_art(code))
    return 0


def _box_art(code: CodePair) -> str:
    sep = "+" + "--+" * code.n + "\n"
    row = lambda bits: "|" + "|".join("##" if bits >> a & 1 else "  " for a in range(code.n)) + "|\n"
    return sep + row(code.x) + sep + row(code.xbar) + sep


def cmd_conditions(args) -> int:
    code = CodePair.from_strings(_read(args.code))
    if code.n != args.n:
        raise GraphFormatError(f"code rows have length {code.n}, expected {args.n}")
    report = check_conditions(code)
    if args.format == "json":
        print(report.to_json())
    else:
        for fam, idx in report.violations:
            print(f"violated {fam} at {','.join(str(a + 1) for a in idx)}")
        print(f"violations {len(report.violations)}")
        print(f"bad_indices {_one_based(report.bad_indices)}")
        print(f"blind_bar {_one_based(report.blind_bar)}")
    return 0 if report.ok else 1


def _one_based(positions) -> str:
    return ",".join(str(a + 1) for a in sorted(positions)) or "-"


def cmd_solve(args) -> int:
    g = parse_graph(_read(args.graph))
    opts = SolverOptions(strategy=args.strategy, size_cap=args.cap, workers=args.workers, seed=args.seed)
    if args.export_instance:
        Path(args.export_instance).write_text(format_hitting_instance(hitting_instance(g, args.d)))
    res = solve_min_idcode(g, args.d, opts)
    indexing = _prism_indexing(g)
    if args.format == "json":
        print(res.to_json(indexing))
    else:
        print(f"status {res.status}")
        if res.size is not None:
            print(f"size {res.size}")
        if res.code is not None:
            print("code " + " ".join(_label(v, indexing) for v in res.code))
        if res.witness is not None:
            print("witness " + " ".join(_label(v, indexing) for v in res.witness))
        print(f"nodes {res.nodes}")
    return 2 if res.status == "infeasible" else 0


def cmd_twins(args) -> int:
    g = parse_graph(_read(args.graph))
    pairs = closed_twins(g, args.d)
    indexing = _prism_indexing(g)
    if args.format == "json":
        print(json.dumps({
            "twins": [[vertex_label(u, indexing), vertex_label(v, indexing)] for u, v in pairs],
        }))
    else:
        for u, v in pairs:
            print(f"twin {_label(u, indexing)} {_label(v, indexing)}")
        print(f"count {len(pairs)}")
    return 2 if pairs else 0


def cmd_cwcheck(args) -> int:
    rng = random.Random(args.seed)
    fixed = None
    if not args.target.isdigit():
        fixed = parse_graph(_read(args.target))
    elif int(args.target) < 1:
        raise GraphFormatError("order bound must be at least 1")
    rows = []
    for trial in range(args.trials):
        if fixed is not None:
            g = fixed
        else:
            g = random_graph(rng.randint(1, int(args.target)), rng)
        tree = random_layout_tree(g.order, rng)
        rows.append((trial, g.order, check_doubling(g, tree)))
    bad = [row for row in rows if not row[2].ok]
    if args.format == "json":
        print(json.dumps({
            "trials": [
                {"trial": t, "order": order, "base": c.base_max, "prism": c.prism_max, "ok": c.ok}
                for t, order, c in rows
            ],
            "ok": not bad,
        }))
    else:
        for t, order, c in rows:
            print(f"trial {t} order {order} base {c.base_max} prism {c.prism_max} {'ok' if c.ok else 'VIOLATION'}")
        print(f"checked {len(rows)} violations {len(bad)}")
    return 0 if not bad else 1


def cmd_scan(args) -> int:
    if args.start < 3 or args.stop < args.start:
        raise GraphFormatError("need 3 <= start <= stop")
    rows = []
    for n in range(args.start, args.stop + 1):
        cap = args.cap
        if cap is None and args.d == 1 and n >= 9:
            cap = upper_bound(n)[0]  # a code of this size certifiably exists
        opts = SolverOptions(strategy=args.strategy, size_cap=cap, workers=args.workers)
        rows.extend(ic_table([n], args.d, opts))
    indexing_for = lambda n: PrismIndexing(n)
    if args.format == "json":
        print(json.dumps([
            {
                "n": r.n, "status": r.status, "size": r.size,
                "code": None if r.code is None else [vertex_label(v, indexing_for(r.n)) for v in r.code],
                "witness": None if r.witness is None else [vertex_label(v, indexing_for(r.n)) for v in r.witness],
                "lower": r.lower, "upper": r.upper, "pattern": r.pattern_size,
            }
            for r in rows
        ]))
    else:
        for r in rows:
            cells = [f"n {r.n}", f"status {r.status}"]
            if r.size is not None:
                cells.append(f"size {r.size}")
            if r.lower is not None:
                cells += [f"lower {r.lower}", f"upper {r.upper}", f"pattern {r.pattern_size}"]
            if r.code is not None:
                cells.append("code " + ",".join(_label(v, indexing_for(r.n)) for v in r.code))
            if r.witness is not None:
                cells.append("witness " + ",".join(_label(v, indexing_for(r.n)) for v in r.witness))
            print("  ".join(cells))
    return 0


# -------------------------------------------------------------------- parser

def _add_format_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    p.add_argument("--json", dest="format", action="store_const", const="json",
                   help="shorthand for --format json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prismcode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a cycle or its complementary prism in graph text format")
    p.add_argument("kind", choices=("cycle", "prism"))
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a code file against a graph file")
    p.add_argument("graph")
    p.add_argument("code")
    p.add_argument("-d", type=int, default=1, help="identification radius (default 1)")
    p.add_argument("--code-format", choices=("auto", "bits", "list"), default="auto")
    _add_format_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pattern", help="print the periodic code of size n - 2*floor(n/9)")
    p.add_argument("n", type=int)
    p.add_argument("--box", action="store_true", help="append an ASCII box rendering")
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("conditions", help="evaluate the position conditions on a two-row code")
    p.add_argument("n", type=int)
    p.add_argument("code")
    _add_format_flags(p)
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("solve", help="exact minimum identifying code of a graph file")
    p.add_argument("graph")
    p.add_argument("-d", type=int, default=1)
    p.add_argument("--strategy", choices=("exhaustive", "bnb"), default="bnb")
    p.add_argument("--cap", type=int, default=None, help="certify optimum or prove it exceeds this size")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--export-instance", metavar="FILE", help="also write the hitting-set instance")
    _add_format_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("twins", help="list pairs with identical distance-d balls")
    p.add_argument("graph")
    p.add_argument("-d", type=int, default=1)
    _add_format_flags(p)
    p.set_defaults(func=cmd_twins)

    p = sub.add_parser("cwcheck", help="randomized class-count doubling checks")
    p.add_argument("target", help="max random order (int) or a graph file")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_format_flags(p)
    p.set_defaults(func=cmd_cwcheck)

    p = sub.add_parser("scan", help="bounds and exact optimum for a range of cycle prisms")
    p.add_argument("start", type=int)
    p.add_argument("stop", type=int)
    p.add_argument("-d", type=int, default=1)
    p.add_argument("--strategy", choices=("exhaustive", "bnb"), default="bnb")
    p.add_argument("--cap", type=int, default=None, help="override the default per-n cap")
    p.add_argument("--workers", type=int, default=1)
    _add_format_flags(p)
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
