"""Command-line front door: validate, analyze, diff, init, serve.

Exit codes are CI-friendly and documented:

  0   clean (no findings; or informational command succeeded)
  1   advisories only
  2   at least one gap or conflict
  64  usage error
  65  parse or validation error in an input file
  66  input file not found
  73  refusing to overwrite an existing file (init without --force)
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import mapdoc, render, rules
from .model import ENGINE_VERSION, MapError, ResponsibilityMap, Severity, validate_map

EXIT_CLEAN = 0
EXIT_ADVISORY = 1
EXIT_BLOCKING = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66
EXIT_CANTCREAT = 73


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit 2; 2 means findings here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _load_map(path: str, mode: str) -> ResponsibilityMap:
    """Read and parse a map file; prints diagnostics and raises SystemExit."""
    try:
        raw = _read_input(path)
    except FileNotFoundError:
        print(f"error: file not found: {path}", file=sys.stderr)
        raise SystemExit(EXIT_NOINPUT)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_NOINPUT)
    warnings: list[str] = []
    try:
        map_ = mapdoc.parse_map(raw, mode=mode, warnings=warnings)
    except MapError as exc:
        for issue in exc.issues:
            print(f"{path}: {issue}", file=sys.stderr)
        raise SystemExit(EXIT_DATA)
    for warning in warnings:
        print(f"{path}: warning: {warning}", file=sys.stderr)
    return map_


def _severity_exit_code(report) -> int:
    worst = report.worst_severity
    if worst in (Severity.GAP, Severity.CONFLICT):
        return EXIT_BLOCKING
    if worst is Severity.ADVISORY:
        return EXIT_ADVISORY
    return EXIT_CLEAN


def cmd_validate(args: argparse.Namespace) -> int:
    _load_map(args.path, args.mode)
    print("OK")
    return EXIT_CLEAN


def cmd_analyze(args: argparse.Namespace) -> int:
    map_ = _load_map(args.path, args.mode)
    report = rules.analyze(map_)
    style = render.STRUCTURED if args.format == "json" else render.HUMAN
    sys.stdout.buffer.write(render.render_report(report, style, args.locale))
    sys.stdout.buffer.flush()
    return _severity_exit_code(report)


def cmd_diff(args: argparse.Namespace) -> int:
    before = rules.analyze(_load_map(args.before, args.mode))
    after = rules.analyze(_load_map(args.after, args.mode))
    delta = rules.diff_reports(before, after)
    style = render.STRUCTURED if args.format == "json" else render.HUMAN
    sys.stdout.buffer.write(render.render_delta(delta, style, args.locale))
    sys.stdout.buffer.flush()
    return EXIT_CLEAN


def cmd_init(args: argparse.Namespace) -> int:
    path = Path(args.path)
    if path.exists() and not args.force:
        print(f"error: {path} exists; pass --force to overwrite", file=sys.stderr)
        return EXIT_CANTCREAT
    template = validate_map(title=args.title)
    path.write_bytes(mapdoc.serialize_map(template))
    print(f"wrote {path}")
    return EXIT_CLEAN


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app, resolve_bind

    host, port = resolve_bind(args.bind)
    app = create_app(data_dir=args.data_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
    return EXIT_CLEAN


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="respmap",
                     description="Map and analyze responsibility around a decision-support system.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {ENGINE_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_mode(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group()
        group.add_argument("--strict", dest="mode", action="store_const",
                           const=mapdoc.STRICT, default=mapdoc.STRICT,
                           help="reject unknown keys (default)")
        group.add_argument("--lenient", dest="mode", action="store_const",
                           const=mapdoc.LENIENT, help="warn about unknown keys instead")

    p = sub.add_parser("validate", help="check a map file; print all violations or OK")
    p.add_argument("path", help="map file, or - for stdin")
    add_mode(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="run the six analyses and render the report")
    p.add_argument("path", help="map file, or - for stdin")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--locale", choices=sorted(render.CATALOGS), default=render.DEFAULT_LOCALE)
    add_mode(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("diff", help="compare the reports of two map files")
    p.add_argument("before", help="baseline map file")
    p.add_argument("after", help="changed map file")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--locale", choices=sorted(render.CATALOGS), default=render.DEFAULT_LOCALE)
    add_mode(p)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("init", help="write a blank map template")
    p.add_argument("path")
    p.add_argument("--title", default="")
    p.add_argument("--force", action="store_true", help="overwrite an existing file")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("serve", help="run the HTTP API for the interactive wizard")
    p.add_argument("--bind", default=None,
                   help="host:port (default RESPMAP_BIND or 127.0.0.1:8642)")
    p.add_argument("--data-dir", default=None,
                   help="session directory (default RESPMAP_DATA_DIR or ./respmap-sessions)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except BrokenPipeError:
        return EXIT_CLEAN


if __name__ == "__main__":
    sys.exit(main())
