"""Command-line entry point: `ddisac-figures render --spec fig.json`."""

from __future__ import annotations

import argparse
import sys

from .render import DataError, render
from .spec import SpecError, load_spec


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddisac-figures",
        description="Render delay-Doppler design figures from CSV/JSON artifacts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    rend = sub.add_parser("render", help="render one figure spec to an image")
    rend.add_argument("--spec", required=True, help="figure spec JSON file")
    rend.add_argument(
        "--out", default=None,
        help="override the spec's output path (resolved against the cwd)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec)
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return 2
    try:
        result = render(spec, args.out)
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - fail loudly but cleanly
        print(f"error: {exc}", file=sys.stderr)
        return 1
    total = sum(result.points.values())
    print(f"{spec.figure_id}: {len(result.points)} series, "
          f"{total} points -> {result.path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
