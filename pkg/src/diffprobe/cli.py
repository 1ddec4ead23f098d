"""Command-line entry point.

Exit codes: 0 Consistent (or every corpus entry matches), 2 Refuted (or a
corpus mismatch), 3 Inconclusive or Conflicting, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .config import ProbeConfig, load_config_file
from .funcorpus import block_corpus_list, catalog_text
from .report import FORMATS, Combined, UsageError, emit_report, run_corpus, run_probe, surface_csv

EXIT_OK = 0
EXIT_REFUTED = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64

_EXIT_FOR = {
    Combined.CONSISTENT: EXIT_OK,
    Combined.REFUTED: EXIT_REFUTED,
    Combined.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    Combined.CONFLICTING: EXIT_INCONCLUSIVE,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_probe_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fn", required=True, help="corpus function id (see 'list')")
    p.add_argument("--point", type=_floats, default=None, help="probe point as comma-separated coordinates")
    p.add_argument("--criteria", default=None, help="comma-separated criteria, or 'all'")
    p.add_argument("--format", default="json", help="json or csv-evidence")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp for byte-stable output")
    p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")


def _add_config_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="'key = value' file of configuration overrides")
    p.add_argument("--rho0", type=float, default=None, help="outermost radius")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="radius shrink factor in (0, 1)")
    p.add_argument("--count", type=int, default=None, help="number of radii")
    p.add_argument("--dirs", type=int, default=None, help="seeded random directions added to axes and diagonals")
    p.add_argument("--seed", type=int, default=None, help="seed for every sampled direction and tuple")
    p.add_argument("--workers", type=int, default=None, help="threads for independent samples")
    p.add_argument("--ratio-floor", type=float, default=None, help="ratio that marks a tail as not decaying")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diffprobe", description="Numerical differentiability probes at a point.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("probe", help="probe one corpus function")
    _add_probe_options(p)
    p.add_argument("--axis-order", type=_ints, default=None, help="axis order for the relaxed conditions, e.g. 2,1")
    _add_config_options(p)

    b = sub.add_parser("block-probe", help="probe one block-structured corpus function")
    _add_probe_options(b)
    _add_config_options(b)

    c = sub.add_parser("corpus", help="probe the whole corpus against its truth labels")
    c.add_argument("--strict", action="store_true",
                   help="also fail when any single criterion contradicts a truth label")
    c.add_argument("--format", choices=("text", "json"), default="text")
    _add_config_options(c)

    sub.add_parser("list", help="print the corpus catalog")

    s = sub.add_parser("surface", help="gridded x,y,f CSV of a two-variable function")
    s.add_argument("--fn", required=True)
    s.add_argument("--grid", type=int, default=41)
    s.add_argument("--extent", type=float, default=1.0)
    s.add_argument("--output", "-o", default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> ProbeConfig:
    """Defaults, then the seed environment variable, then the config file, then flags."""
    cfg = ProbeConfig.default()
    if getattr(args, "config", None):
        try:
            values = load_config_file(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
        merged = {**cfg.as_dict(), **values}
        cfg = ProbeConfig.from_mapping(merged)
    flags = {k: getattr(args, k, None) for k in ("rho0", "lam", "count", "seed", "workers", "ratio_floor")}
    if getattr(args, "dirs", None) is not None:
        flags["extra_dirs"] = args.dirs
    overrides = {k: v for k, v in flags.items() if v is not None}
    return cfg.replace(**overrides) if overrides else cfg


def _write(data: bytes | str, path: str | None = None) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if path:
        with open(path, "wb") as fh:
            fh.write(data)
        return
    try:
        sys.stdout.flush()
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the interpreter's flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())


def _probe(args: argparse.Namespace, blocks_only: bool) -> int:
    if args.format not in FORMATS:
        raise UsageError(f"unsupported format {args.format!r}; choose from {', '.join(FORMATS)}")
    cfg = config_from_args(args)
    if blocks_only and args.fn not in {F.name for F in block_corpus_list()}:
        raise UsageError(f"{args.fn!r} is not a block-structured corpus function")
    criteria = None if args.criteria is None else args.criteria.split(",")
    report = run_probe(args.fn, args.point, criteria, cfg, timestamp=not args.no_timestamp,
                       axis_order=getattr(args, "axis_order", None))
    _write(emit_report(report, args.format), args.output)
    for d in report.diagnostics:
        print(f"diagnostic: {d}", file=sys.stderr)
    return _EXIT_FOR[report.combined]


def _corpus(args: argparse.Namespace) -> int:
    summary = run_corpus(config_from_args(args))
    if args.format == "json":
        _write(json.dumps(summary.to_json(), sort_keys=True, indent=2) + "\n")
    else:
        _write(summary.to_text())
    ok = summary.strict_ok if args.strict else summary.all_match
    return EXIT_OK if ok else EXIT_REFUTED


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "probe":
            return _probe(args, blocks_only=False)
        if args.command == "block-probe":
            return _probe(args, blocks_only=True)
        if args.command == "corpus":
            return _corpus(args)
        if args.command == "list":
            _write(catalog_text())
            return EXIT_OK
        if args.command == "surface":
            _write(surface_csv(args.fn, args.grid, args.extent), args.output)
            return EXIT_OK
    except (UsageError, KeyError, ValueError) as exc:
        print(f"diffprobe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE  # pragma: no cover - argparse rejects unknown commands


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
