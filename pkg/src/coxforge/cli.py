"""Command-line entry point: ``coxforge <subcommand> ...``.

Exit codes: 0 success or accepted, 1 rejected or failed checks, 2 usage or
parse errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .classify import classify_with_inertia
from .diagram import format_diagram, parse_diagram, render_dot, render_tikz
from .errors import CoxforgeError, DimensionMismatch, DottedEdgePresent

GRAMMAR_HELP = """\
Diagram file format (one directive per line, '#' starts a comment):
  dim <n>                 optional dimension
  nodes <p>               number of nodes (required, first)
  tag <i> <text>          free-form node tag, e.g. a Gale position
  edge <i> <j> <label>    label: m=3..6 | inf | dotted <expr> | dotted ?<name>
Absent pairs are orthogonal (m=2).
Weight expressions: sums of terms q, q sqrt(n), cos(pi/5), e.g. 1/2+1/3sqrt(15)
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n\n{GRAMMAR_HELP}")
        sys.exit(2)


def _read_diagram(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_diagram(fh.read())
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from exc
    except CoxforgeError as exc:
        raise _InputError(f"{path}: {exc}\n\n{GRAMMAR_HELP}") from exc


class _InputError(Exception):
    pass


def _cmd_verify(args) -> int:
    from .search import verify

    d = _read_diagram(args.file)
    try:
        rep = verify(d, args.dim)
    except DimensionMismatch as exc:
        # a wrong dimension is a failed check, not a malformed input
        if args.json:
            print(json.dumps({"verdict": "rejected", "reason": str(exc)}))
        else:
            print(f"verdict     rejected: {exc}")
        return 1
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print(rep.to_text(), end="")
    return 0 if rep.accepted else 1


def _cmd_classify(args) -> int:
    d = _read_diagram(args.file)
    try:
        cls, t = classify_with_inertia(d)
    except DottedEdgePresent as exc:
        raise _InputError(str(exc)) from exc
    if args.json:
        print(json.dumps({"class": str(cls), "inertia": list(t)}))
    else:
        print(f"{cls}  inertia {t}")
    return 0


def _cmd_gale(args) -> int:
    from .gale import enumerate_gale

    gales = enumerate_gale(args.dim, args.opposite_pairs)
    if args.json:
        print(json.dumps([{"k": g.k, "weights": list(g.weights)} for g in gales]))
    else:
        for g in gales:
            print(g.serialize())
        print(f"# {len(gales)} diagrams", file=sys.stderr)
    return 0


def _cmd_search(args) -> int:
    from .search import PipelineStats, run_pipeline

    stats = PipelineStats()
    rejected = [] if args.emit_rejected else None
    progress = (lambda msg: print(msg, file=sys.stderr, flush=True)) if args.progress else None
    accepted = run_pipeline(args.dim, jobs=args.jobs, max_unknowns=args.max_unknowns,
                            progress=progress, stats=stats, rejected=rejected)
    reports = accepted + (rejected or [])
    reports.sort(key=lambda r: r.key)
    if args.json:
        print(json.dumps({"dimension": args.dim, "reports": [r.to_dict() for r in reports],
                          "stats": stats.summary()}, indent=2))
    elif args.lines:
        for r in reports:
            print(r.to_line())
    else:
        for r in reports:
            print(f"== {r.key} {r.verdict}")
            print(format_diagram(r.diagram), end="")
            print(r.to_text())
        print(stats.summary())
    return 0


def _cmd_catalog(args) -> int:
    from .catalog import verify_catalog

    summary = verify_catalog()
    if args.json:
        print(json.dumps(summary.to_dict(), indent=2, sort_keys=True))
    else:
        for entry_id, rep in summary.reports.items():
            print(f"{entry_id:6s} {rep.verdict:9s} inertia {rep.inertia}"
                  + (f"  {rep.reason}" if rep.reason else ""))
        print(f"{summary.total - len(summary.failures)}/{summary.total} accepted "
              f"in {summary.seconds:.2f}s")
    return 0 if not summary.failures else 1


def _cmd_render(args) -> int:
    d = _read_diagram(args.file)
    print(render_dot(d) if args.format == "dot" else render_tikz(d), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coxforge", description="Exact verification and search for Coxeter polytopes.",
                formatter_class=argparse.RawDescriptionHelpFormatter, epilog=GRAMMAR_HELP)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="verify a diagram file in dimension n")
    v.add_argument("file")
    v.add_argument("--dim", type=int, required=True)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("classify", help="classify a diagram without dotted edges")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_classify)

    g = sub.add_parser("gale", help="Gale diagram tools")
    gsub = g.add_subparsers(dest="gale_command", required=True, parser_class=_Parser)
    ge = gsub.add_parser("enumerate", help="list standard Gale diagrams")
    ge.add_argument("--dim", type=int, required=True)
    ge.add_argument("--opposite-pairs", type=int, default=1, choices=(0, 1))
    ge.add_argument("--json", action="store_true")
    ge.set_defaults(func=_cmd_gale)

    s = sub.add_parser("search", help="run the search pipeline in dimension n")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--max-unknowns", type=int, default=2)
    s.add_argument("--emit-rejected", action="store_true")
    s.add_argument("--progress", action="store_true")
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    out = s.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--lines", action="store_true", help="one report per line")
    s.set_defaults(func=_cmd_search)

    cat = sub.add_parser("catalog", help="bundled catalog checks")
    csub = cat.add_subparsers(dest="catalog_command", required=True, parser_class=_Parser)
    va = csub.add_parser("verify-all", help="verify every catalog entry")
    va.add_argument("--json", action="store_true")
    va.set_defaults(func=_cmd_catalog)

    r = sub.add_parser("render", help="render a diagram file")
    r.add_argument("file")
    r.add_argument("--format", choices=("dot", "tikz"), default="dot")
    r.set_defaults(func=_cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "dim", None) is not None and args.command == "search" and not 4 <= args.dim <= 16:
        build_parser().error("--dim must be in 4..16 for search")
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CoxforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
