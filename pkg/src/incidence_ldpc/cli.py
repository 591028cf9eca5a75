"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from .algebra import factor_prime_power
from .analysis import girth_upper_bound, graph_stats
from .code import LinearCode, export_alist, gf2_rank, import_alist, parity_check_from_graph, rate_report
from .graph import GraphSpec, IncidenceGraph, build_graph, canonical_restriction, context_for
from .sim import SweepConfig, emit_csv, parse_grid, run_sweep


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_graph_flags(p, allow_code=False):
    p.add_argument("--family", choices=["field", "ring"], help="coordinate family")
    p.add_argument("--base", type=int, help="q (prime power) for field, n >= 2 for ring")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--restrict-r", type=int, help="keep lines whose x is among the first r values")
    grp.add_argument("--restrict-x", help="keep lines whose x is in this comma list")
    p.add_argument("--component", choices=["all", "largest"], default="all",
                   help="use the whole graph or its largest component (default: all)")
    p.add_argument("--graph", help="read a graph spec JSON file instead of --family/--base")
    if allow_code:
        p.add_argument("--code", help="read the parity-check matrix from an alist file")


def _add_out(p):
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser():
    parser = _Parser(prog="incidence-ldpc", description="Incidence-graph LDPC codes.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("construct", help="emit a graph spec JSON document")
    _add_graph_flags(p)
    _add_out(p)

    p = sub.add_parser("analyze", help="vertex/edge counts, bidegree, density, girth")
    _add_graph_flags(p, allow_code=True)
    p.add_argument("--format", choices=["text", "json"], default="text", help="default: text")
    p.add_argument("--girth", choices=["exact", "skip"], default="exact",
                   help="girth computation (default: exact)")
    p.add_argument("--girth-roots", type=int,
                   help="search cycles through only this many roots; reports an upper bound")
    _add_out(p)

    p = sub.add_parser("export", help="write the parity-check matrix or graph spec")
    _add_graph_flags(p)
    p.add_argument("--format", choices=["alist", "json"], default="alist", help="default: alist")
    _add_out(p)

    p = sub.add_parser("rank", help="GF(2) rank of the parity-check matrix")
    _add_graph_flags(p, allow_code=True)
    _add_out(p)

    p = sub.add_parser("rate", help="design and true code rates")
    _add_graph_flags(p, allow_code=True)
    p.add_argument("--format", choices=["text", "json"], default="text", help="default: text")
    _add_out(p)

    p = sub.add_parser("simulate", help="BER/FER sweep over BPSK/AWGN, CSV output")
    _add_graph_flags(p, allow_code=True)
    p.add_argument("--ebn0", default="0:1:8", help="Eb/N0 grid start:step:stop in dB (default: 0:1:8)")
    p.add_argument("--decoder", choices=["spa", "minsum"], default="spa", help="default: spa")
    p.add_argument("--normalization", type=float, default=0.75, help="min-sum scale (default: 0.75)")
    p.add_argument("--max-iter", type=int, default=50, help="default: 50")
    p.add_argument("--max-frames", type=int, default=100_000, help="default: 100000")
    p.add_argument("--min-bit-errors", type=int, default=100, help="default: 100")
    p.add_argument("--source", choices=["random", "all_zero"], default="random", help="default: random")
    p.add_argument("--seed", type=int, default=0, help="default: 0")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads; results do not depend on it (default: CPU count)")
    _add_out(p)
    return parser


# ---------------------------------------------------------------------------

def _spec_from_args(args):
    if getattr(args, "graph", None):
        if args.family or args.base is not None:
            raise UsageError("--graph cannot be combined with --family/--base")
        with open(args.graph) as fh:
            try:
                return GraphSpec.from_json(fh.read())
            except (ValueError, KeyError) as exc:
                raise UsageError(f"--graph: {exc}") from None
    if args.family is None or args.base is None:
        raise UsageError("--family and --base are required (or --graph / --code)")
    if args.family == "field":
        try:
            factor_prime_power(args.base)
        except ValueError:
            raise UsageError(f"--base {args.base} is not a prime power (required by --family field)") from None
    elif args.base < 2:
        raise UsageError(f"--base {args.base} must be >= 2 for --family ring")
    ctx = context_for(args.family, args.base)
    restriction = None
    if args.restrict_r is not None:
        try:
            restriction = canonical_restriction(ctx, args.restrict_r)
        except ValueError as exc:
            raise UsageError(f"--restrict-r: {exc}") from None
    elif args.restrict_x is not None:
        try:
            restriction = tuple(int(v) for v in args.restrict_x.split(",") if v.strip())
        except ValueError:
            raise UsageError("--restrict-x must be a comma-separated list of integers") from None
        bad = [v for v in restriction if not 0 <= v < ctx.order]
        if not restriction or bad or len(set(restriction)) != len(restriction):
            raise UsageError(f"--restrict-x must list distinct values in [0, {ctx.order})")
    return GraphSpec(args.family, args.base, restriction, args.component)


def _uses_code(args):
    return getattr(args, "code", None) is not None


def _load_code_matrix(args):
    if args.family or args.base is not None or args.graph:
        raise UsageError("--code cannot be combined with graph flags")
    with open(args.code) as fh:
        return import_alist(fh.read())


def _matrix(args):
    if _uses_code(args):
        return _load_code_matrix(args), None
    g = build_graph(_spec_from_args(args))
    return parity_check_from_graph(g), g


def _write(args, text):
    if not args.out:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(args.out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, args.out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _validate_sim(args):
    for name in ("max_iter", "max_frames", "threads"):
        if getattr(args, name) < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be >= 1")
    if args.min_bit_errors < 0:
        raise UsageError("--min-bit-errors must be >= 0")
    if not 0 < args.normalization <= 1:
        raise UsageError("--normalization must be in (0, 1]")
    if not 0 <= args.seed < 2 ** 64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    try:
        return parse_grid(args.ebn0)
    except ValueError as exc:
        raise UsageError(f"--ebn0: {exc}") from None


def _cmd_construct(args):
    _write(args, _spec_from_args(args).to_json())


def _cmd_analyze(args):
    if _uses_code(args):
        H = _load_code_matrix(args)
        g = IncidenceGraph.from_biadjacency(H.csr)
    else:
        g = build_graph(_spec_from_args(args))
    stats = graph_stats(g, with_girth=args.girth == "exact" and args.girth_roots is None)
    doc = stats.as_dict()
    if args.girth == "exact" and args.girth_roots is not None:
        bound = girth_upper_bound(g, range(min(args.girth_roots, g.num_vertices)))
        doc["girth"] = None
        doc["girth_upper_bound"] = "acyclic" if bound == math.inf else bound
    if args.format == "json":
        _write(args, json.dumps(doc, indent=2) + "\n")
    else:
        text = stats.render()
        if "girth_upper_bound" in doc:
            text += f"girth <=  {doc['girth_upper_bound']} (sampled {args.girth_roots} roots)\n"
        _write(args, text)


def _cmd_export(args):
    spec = _spec_from_args(args)
    if args.format == "json":
        _write(args, spec.to_json())
    else:
        _write(args, export_alist(parity_check_from_graph(build_graph(spec))))


def _cmd_rank(args):
    H, _ = _matrix(args)
    _write(args, f"{gf2_rank(H)}\n")


def _cmd_rate(args):
    H, g = _matrix(args)
    report = rate_report(g if g is not None else H)
    if args.format == "json":
        _write(args, json.dumps(report.as_dict(), indent=2) + "\n")
    else:
        _write(args, report.render())


def _cmd_simulate(args):
    grid = _validate_sim(args)
    H, _ = _matrix(args)
    code = LinearCode.from_parity_check(H)
    cfg = SweepConfig(
        ebn0_grid=grid, max_frames=args.max_frames, min_bit_errors=args.min_bit_errors,
        decoder=args.decoder, max_iter=args.max_iter, normalization=args.normalization,
        seed=args.seed, source=args.source, threads=args.threads,
    )
    _write(args, emit_csv(run_sweep(code, cfg)))


_COMMANDS = {
    "construct": _cmd_construct,
    "analyze": _cmd_analyze,
    "export": _cmd_export,
    "rank": _cmd_rank,
    "rate": _cmd_rate,
    "simulate": _cmd_simulate,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"incidence-ldpc {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (OSError, MemoryError, ValueError) as exc:
        print(f"incidence-ldpc {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
