"""Command-line interface: ``drtmoments {moments,project,render,verify,bench}``.

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 verification
mismatch.  Failures print a single ``drtmoments: error: ...`` line on stderr.
"""
from __future__ import annotations

import argparse
import logging
import os
import random
import sys

from .bench import (
    BACKENDS,
    CI_REPETITIONS,
    DEFAULT_LADDER,
    DEFAULT_REPETITIONS,
    ChecksumMismatch,
    emit_results,
    run_bench,
)
from .drt import MomentConsistencyError, drt_raw_moments
from .image import generate
from .pgm import PGMError, load_pgm
from .projections import PROJECTION_LABELS, project, render_projection
from .reference import baseline_raw_moments, naive_raw_moments

PROG = "drtmoments"
EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_MISMATCH = 0, 1, 2, 3

ERRATUM_NOTE = """\
note on third-order cross moments:
  With D3 = m30 + m03 + 3*m21 + 3*m12 and A3 = m03 - m30 + 3*m21 - 3*m12,
  m12 = (D3 - A3)/6 - m30/3 and m21 = (D3 + A3)/6 - m03/3.  Published
  statements of this method swap the right-hand sides of these two
  formulas; `verify --as-printed` runs that variant and reports the
  resulting mismatch.
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _size(text: str) -> tuple[int, int]:
    """``"200"`` means 200x200; ``"4032x3024"`` is width x height."""
    try:
        if "x" in text.lower():
            w, h = text.lower().split("x", 1)
            size = int(w), int(h)
        else:
            size = int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid size {text!r}; use N or WxH") from None
    if min(size) < 1:
        raise argparse.ArgumentTypeError(f"size must be positive: {text!r}")
    return size


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog=PROG,
        description="Exact raw image moments (orders 0-3) of 8-bit grayscale PGM images "
        "via discrete Radon projections.",
        epilog=ERRATUM_NOTE,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("moments", help="print the ten raw moments of an image")
    p.add_argument("image", help="PGM file (P2 or P5)")
    p.add_argument("--backend", choices=sorted(BACKENDS), default="drt")

    p = sub.add_parser("project", help="write the four projection arrays V, H, D, A")
    p.add_argument("image")
    p.add_argument("--out-dir", default=".", help="directory for V/H/D/A files (default: .)")
    p.add_argument("--format", choices=("csv", "pgm"), default="csv")
    p.add_argument("--height", type=_positive, default=256, help="density plot height for pgm")

    p = sub.add_parser("render", help="render one projection as a density plot or CSV")
    p.add_argument("image")
    p.add_argument("--projection", choices=tuple(PROJECTION_LABELS), default="V")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("pgm", "csv"), default="pgm")
    p.add_argument("--height", type=_positive, default=256)

    p = sub.add_parser(
        "verify",
        help="check naive, baseline and drt agree exactly",
        epilog=ERRATUM_NOTE,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=_positive, default=64)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--image", action="append", default=[], help="verify this PGM instead (repeatable)")
    p.add_argument("--as-printed", action="store_true",
                   help="use the swapped m12/m21 formulas (negative control; expected to fail)")

    p = sub.add_parser("bench", help="best-of-K timing of every backend over a size ladder")
    p.add_argument("--ladder", type=_size, nargs="+",
                   default=DEFAULT_LADDER, help="sizes as N or WxH (default: 200 up to 4032x3024)")
    p.add_argument("--k", type=_positive, default=DEFAULT_REPETITIONS,
                   help=f"timed runs per backend and size (default {DEFAULT_REPETITIONS}; "
                        f"{CI_REPETITIONS} is a quick setting)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--backends", nargs="+", choices=sorted(BACKENDS), default=["naive", "baseline", "drt"])
    p.add_argument("--include-table-build", action="store_true",
                   help="time power-table construction inside each drt run")
    p.add_argument("--no-interleave", action="store_true",
                   help="run each backend's K timings back to back instead of round-robin")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "plotdata"), default="csv")
    return parser


def cmd_moments(args) -> int:
    image = load_pgm(args.image)
    print(BACKENDS[args.backend](image).format_lines())
    return EXIT_OK


def cmd_project(args) -> int:
    proj = project(load_pgm(args.image))
    os.makedirs(args.out_dir, exist_ok=True)
    for label, values in proj.arrays().items():
        path = os.path.join(args.out_dir, f"{label}.{args.format}")
        render_projection(values, path, args.format, args.height)
        print(path)
    return EXIT_OK


def cmd_render(args) -> int:
    proj = project(load_pgm(args.image))
    render_projection(proj.arrays()[args.projection], args.out, args.format, args.height)
    return EXIT_OK


def _check(image, as_printed: bool) -> str | None:
    """Describe the first disagreement between backends, or None."""
    expected = naive_raw_moments(image)
    baseline = baseline_raw_moments(image)
    name = baseline.first_difference(expected)
    if name:
        return f"{name}: naive={getattr(expected, name)} baseline={getattr(baseline, name)}"
    try:
        drt = drt_raw_moments(image, as_printed=as_printed)
    except MomentConsistencyError as exc:
        return f"{exc.moment}: naive={getattr(expected, exc.moment)} drt={exc.value} (non-integer)"
    name = drt.first_difference(expected)
    if name:
        return f"{name}: naive={getattr(expected, name)} drt={getattr(drt, name)}"
    return None


def cmd_verify(args) -> int:
    cases = []
    if args.image:
        for path in args.image:
            cases.append((path, load_pgm(path)))
    else:
        rng = random.Random(args.seed)
        for _ in range(args.trials):
            w, h = rng.randint(1, args.max_size), rng.randint(1, args.max_size)
            image_seed = rng.getrandbits(32)
            cases.append((f"{w}x{h} seed={image_seed}", generate("uniform", w, h, image_seed)))

    agree = 0
    for i, (label, image) in enumerate(cases, 1):
        problem = _check(image, args.as_printed)
        if problem is None:
            agree += 1
            print(f"trial {i}/{len(cases)}: {label} ok")
        else:
            print(f"trial {i}/{len(cases)}: {label} MISMATCH {problem}")
    print(f"{agree}/{len(cases)} agree")
    return EXIT_OK if agree == len(cases) else EXIT_MISMATCH


def cmd_bench(args) -> int:
    records = run_bench(args.ladder, args.k, args.seed, args.backends, args.include_table_build,
                        interleave=not args.no_interleave)
    emit_results(records, args.out or sys.stdout, args.format)
    return EXIT_OK


COMMANDS = {
    "moments": cmd_moments,
    "project": cmd_project,
    "render": cmd_render,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def _fail(message: str, code: int) -> int:
    print(f"{PROG}: error: {message}", file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail(str(exc), EXIT_USAGE)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ChecksumMismatch as exc:
        return _fail(str(exc), EXIT_MISMATCH)
    except (PGMError, OSError) as exc:
        return _fail(str(exc), EXIT_IO)
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
