"""Batch front end: counting commands, verification sweeps, scans and the
weighted counterexample search, all emitting JSON (JSON lines for streams).

Exit codes: 0 all claims hold / count produced, 1 at least one violation or
a counterexample was found, 2 usage or input error (single-line diagnostic
on stderr).  Numeric payloads are strings ("p/q" rationals, decimal
integers) so consumers never lose precision.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .graphs import (
    Graph,
    TargetGraph,
    ParseError,
    complete_target,
    hard_core_target,
    parse_graph,
    parse_target,
    to_target_text,
    widom_rowlinson_target,
)
from .counting import (
    SizeGuardError,
    chrom_eval,
    chrom_poly,
    hom_count,
    ind_count,
    wr_count,
)
from .verify import (
    VIOLATED,
    check_balanced_bipartite_bound,
    check_correlation_coloring,
    check_cycle_packing_bound,
    check_cycle_packing_headline,
    check_connected_ind_bound,
    check_connected_wr_bound,
    check_edge_ratio,
    check_free_energy_envelope,
    check_sidorenko_bound,
    check_wr_lemma,
)
from .sweeps import SweepConfig, sweep_reports, sweep_summary, SweepSummary
from .search import edge_mono_scan, find_counterexample


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message.replace("\n", " "))


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated invocation: one command plus its parameters."""

    command: str
    args: argparse.Namespace
    workers: int = 1
    output: Optional[str] = None


VERIFY_CLAIMS = (
    "thm1_1", "eq_col", "eq_ind", "eq_wr", "sidorenko",
    "cor1_2", "cor1_4", "cor1_6", "wr_lemma", "remark2_2", "balanced",
)


def build_parser() -> _Parser:
    p = _Parser(prog="homverify", description=__doc__)
    p.add_argument("--output", help="write output here instead of stdout")
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get("HOMVERIFY_WORKERS", "1")),
                   help="parallel workers (default $HOMVERIFY_WORKERS or 1)")
    # the same flags are accepted after the subcommand; SUPPRESS keeps an
    # unset subcommand flag from stomping a value given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True,
                           parser_class=lambda **kw: _Parser(parents=[common], **kw))

    def add_graph(sp):
        sp.add_argument("--graph", required=True, help="graph file")
        sp.add_argument("--format", choices=("edgelist", "graph6"),
                        help="override format sniffing (.g6 -> graph6, else edgelist)")

    c = sub.add_parser("count", help="exact counts")
    c.add_argument("what", choices=("hom", "chrom", "ind", "wr"))
    add_graph(c)
    c.add_argument("--target", help="target: file path, k<q>, hardcore, or wr")
    c.add_argument("--q", type=int)
    c.add_argument("--override-size-guard", action="store_true")

    c = sub.add_parser("poly", help="chromatic polynomial, ascending coefficients")
    add_graph(c)
    c.add_argument("--override-size-guard", action="store_true")

    c = sub.add_parser("verify", help="check one claim on one instance")
    c.add_argument("claim", choices=VERIFY_CLAIMS)
    add_graph(c)
    c.add_argument("--q", type=int)
    c.add_argument("--ell", type=int, default=6)
    c.add_argument("--edge", help="edge as 'u,v'")
    c.add_argument("--target", help="target for sidorenko")

    c = sub.add_parser("sweep", help="exhaustive sweep over labeled graphs")
    c.add_argument("--claim", required=True)
    c.add_argument("--max-n", type=int, required=True)
    c.add_argument("--q", type=int, action="append",
                   help="color count; repeat for several")
    c.add_argument("--ell", type=int, default=6)
    c.add_argument("--target", help="target for sidorenko sweeps")
    c.add_argument("--summary-only", action="store_true",
                   help="skip the per-instance stream, emit only the summary")

    c = sub.add_parser("scan", help="edge-monotonicity scan for one target")
    c.add_argument("--target", required=True)
    c.add_argument("--max-n", type=int, required=True)
    c.add_argument("--bipartite-only", action="store_true")

    c = sub.add_parser("search", help="random weighted-target counterexample search")
    c.add_argument("--H", required=True, dest="graph", help="source graph file")
    c.add_argument("--format", choices=("edgelist", "graph6"))
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--samples", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--save-target", help="write a found witness as a target file here")
    return p


def _load_graph(path: str, fmt: Optional[str]) -> Graph:
    text = Path(path).read_text()
    if fmt is None:
        fmt = "graph6" if path.endswith(".g6") else "edgelist"
    return parse_graph(text, fmt)


_KQ = re.compile(r"^k(\d+)$")


def _load_target(token: str) -> TargetGraph:
    m = _KQ.match(token)
    if m:
        return complete_target(int(m.group(1)))
    if token in ("hardcore", "looped-k2"):
        return hard_core_target()
    if token in ("wr", "p3loop"):
        return widom_rowlinson_target()
    return parse_target(Path(token).read_text())


def _fmt_count(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _parse_edge(s: Optional[str]) -> tuple[int, int]:
    if s is None:
        raise UsageError("this claim needs --edge u,v")
    try:
        u, v = (int(t) for t in s.split(","))
    except ValueError:
        raise UsageError(f"bad --edge {s!r}, expected 'u,v'") from None
    return (u, v)


def _need_q(args) -> int:
    if args.q is None:
        raise UsageError("this command needs --q")
    return args.q


class _Out:
    def __init__(self, path: Optional[str]):
        self.fh = open(path, "w") if path else sys.stdout
        self._close = path is not None

    def line(self, payload: dict) -> None:
        self.fh.write(json.dumps(payload) + "\n")

    def done(self) -> None:
        self.fh.flush()
        if self._close:
            self.fh.close()


def _run_count(args, out: _Out) -> int:
    g = _load_graph(args.graph, args.format)
    kw = {"override_guard": True} if args.override_size_guard else {}
    if args.what == "hom":
        if not args.target:
            raise UsageError("count hom needs --target")
        val = hom_count(g, _load_target(args.target), **kw)
    elif args.what == "chrom":
        val = chrom_eval(g, _need_q(args))
    elif args.what == "ind":
        val = ind_count(g)
    else:
        val = wr_count(g)
    out.line({"count": _fmt_count(val)})
    return 0


def _run_poly(args, out: _Out) -> int:
    g = _load_graph(args.graph, args.format)
    kw = {"override_guard": True} if args.override_size_guard else {}
    out.line({"coeffs": chrom_poly(g, **kw).to_coeff_strings()})
    return 0


def _run_verify(args, out: _Out) -> int:
    g = _load_graph(args.graph, args.format)
    claim = args.claim
    if claim == "thm1_1":
        reports = check_correlation_coloring(g, _need_q(args))
    elif claim == "eq_col":
        reports = [check_edge_ratio(g, "coloring", _parse_edge(args.edge), _need_q(args))]
    elif claim == "eq_ind":
        reports = [check_edge_ratio(g, "independent", _parse_edge(args.edge))]
    elif claim == "eq_wr":
        reports = [check_edge_ratio(g, "wr", _parse_edge(args.edge))]
    elif claim == "sidorenko":
        if not args.target:
            raise UsageError("sidorenko needs --target")
        reports = [check_sidorenko_bound(g, _load_target(args.target))]
    elif claim == "cor1_2":
        q = _need_q(args)
        reports = [check_cycle_packing_bound(g, q, args.ell),
                   check_cycle_packing_headline(g, q, args.ell)]
    elif claim == "cor1_4":
        reports = [check_connected_ind_bound(g)]
    elif claim == "cor1_6":
        reports = [check_connected_wr_bound(g)]
    elif claim == "wr_lemma":
        reports = [check_wr_lemma(g, _parse_edge(args.edge))]
    elif claim == "remark2_2":
        reports = [check_free_energy_envelope(g, _need_q(args))]
    else:
        reports = [check_balanced_bipartite_bound(g, _need_q(args))]
    bad = False
    for r in reports:
        out.line(r.to_json_dict())
        bad = bad or r.verdict == VIOLATED
    return 1 if bad else 0


def _run_sweep(args, out: _Out, workers: int) -> int:
    qs = tuple(args.q) if args.q else ()
    target = _load_target(args.target) if args.target else None
    cfg = SweepConfig(args.claim, args.max_n, qs=qs, ell=args.ell, target=target)
    try:
        cfg.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.summary_only:
        summary = sweep_summary(cfg, workers=workers)
    else:
        summary = SweepSummary(cfg.claim)
        for rd in sweep_reports(cfg, workers=workers):
            out.line(rd)
            m = rd["margin"]
            margin = None if m is None else Fraction(int(m.split("/")[0]), int(m.split("/")[1]))
            summary.record(rd["instance"], rd["verdict"], margin)
    out.line(summary.to_json_dict())
    return 1 if summary.violated else 0


def _run_scan(args, out: _Out) -> int:
    target = _load_target(args.target)
    res = edge_mono_scan(target, args.max_n, bipartite_only=args.bipartite_only)
    out.line(res.to_json_dict())
    return 0 if res.satisfies_all else 1


def _run_search(args, out: _Out) -> int:
    g = _load_graph(args.graph, args.format)
    found = find_counterexample(g, args.k, args.samples, args.seed)
    if found is None:
        out.line({"found": False, "seed": args.seed, "samples": args.samples})
        return 0
    payload = {"found": True, "seed": args.seed, "samples": args.samples}
    payload.update(found.to_json_dict())
    out.line(payload)
    if args.save_target:
        Path(args.save_target).write_text(to_target_text(found.target))
    return 1


def run(config: RunConfig) -> int:
    """Execute one validated command; returns the process exit code."""
    out = _Out(config.output)
    try:
        args = config.args
        if config.command == "count":
            code = _run_count(args, out)
        elif config.command == "poly":
            code = _run_poly(args, out)
        elif config.command == "verify":
            code = _run_verify(args, out)
        elif config.command == "sweep":
            code = _run_sweep(args, out, config.workers)
        elif config.command == "scan":
            code = _run_scan(args, out)
        elif config.command == "search":
            code = _run_search(args, out)
        else:  # unreachable behind argparse
            raise UsageError(f"unknown command {config.command!r}")
    finally:
        out.done()
    return code


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        config = RunConfig(command=ns.command, args=ns,
                           workers=max(1, ns.workers), output=ns.output)
        return run(config)
    except UsageError as exc:
        print(f"homverify: {exc}", file=sys.stderr)
        return 2
    except (ParseError, SizeGuardError, FileNotFoundError, ValueError) as exc:
        print(f"homverify: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
