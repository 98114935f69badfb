"""Command line entry point: ``sutura <file> [--analysis ...] [--format ...] [--out ...]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import HypothesisFailure, InputError, ParseError
from .problem import ANALYSES, FORMATS, parse_problem, with_overrides
from .report import emit_report, run


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sutura",
        description="Euler-characteristic invariants of sutured manifolds from a problem file.")
    ap.add_argument("file", help="problem file (YAML or JSON)")
    ap.add_argument("--analysis", choices=ANALYSES + ("all",),
                    help="override the analyses listed in the file")
    ap.add_argument("--format", choices=FORMATS, help="override the output format")
    ap.add_argument("--out", help="write the report here instead of stdout")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"problem file is not UTF-8: {exc.reason}") from None
        except OSError as exc:
            raise ParseError(f"cannot read {args.file}: {exc.strerror}") from None
        spec = with_overrides(parse_problem(text), args.analysis, args.format)
        results = run(spec)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except HypothesisFailure as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return 2
    doc = emit_report(spec, results)
    if args.out:
        Path(args.out).write_text(doc, encoding="utf-8")
    else:
        sys.stdout.write(doc)
    return results.exit_code


if __name__ == "__main__":
    sys.exit(main())
