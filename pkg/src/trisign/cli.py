"""Command-line interface.

Subcommands: extract (features/figures from a manifest), bench (latency),
validate (manifest checks), synth (generate a synthetic corpus).

Exit codes: 0 success, 1 usage error, 2 manifest error, 3 partial
failures (some videos errored but the run completed).
"""

from __future__ import annotations

import argparse
import sys

from .manifest import ManifestError, load_manifest, validate_manifest
from .pipeline import bench, run_batch
from .sampling import SamplerConfig
from .synth import make_corpus

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MANIFEST = 2
EXIT_PARTIAL = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="trisign",
                     description="Triangle-feature extraction from hand/face "
                                 "detection streams")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    ex = sub.add_parser("extract", help="extract features for a manifest")
    ex.add_argument("--manifest", required=True)
    ex.add_argument("--out", required=True)
    ex.add_argument("--emit-figures", action="store_true")
    ex.add_argument("--confidence", type=float, default=0.55)
    ex.add_argument("--eta", type=float, default=10.0)
    ex.add_argument("--eta-hat", type=float, default=5.0)
    ex.add_argument("--frames", type=int, default=16)
    ex.add_argument("--max-padding", type=int, default=5)
    ex.add_argument("--box-expand", type=float, default=1.10)
    ex.add_argument("--frame-size", type=int, default=512)
    ex.add_argument("--workers", type=int, default=1)

    be = sub.add_parser("bench", help="time per-video geometry extraction")
    be.add_argument("--manifest", required=True)
    be.add_argument("--reps", type=int, default=3)

    va = sub.add_parser("validate", help="check a manifest without extracting")
    va.add_argument("--manifest", required=True)

    sy = sub.add_parser("synth", help="generate a synthetic gesture corpus")
    sy.add_argument("--out", required=True)
    sy.add_argument("--classes", type=int, default=5)
    sy.add_argument("--per-class", type=int, default=80)
    sy.add_argument("--sigma", type=float, default=0.01)
    sy.add_argument("--seed", type=int, default=0)
    sy.add_argument("--dropout", type=float, default=0.0)

    return parser


def _config_from(args: argparse.Namespace) -> SamplerConfig:
    return SamplerConfig(
        target_frames=args.frames,
        eta=args.eta,
        eta_hat=args.eta_hat,
        max_padded=args.max_padding,
        confidence=args.confidence,
        box_area_factor=args.box_expand,
        source_frame_size=args.frame_size,
    )


def _cmd_extract(args) -> int:
    try:
        cfg = _config_from(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report, records = run_batch(
            args.manifest, cfg, args.out, emit_figures=args.emit_figures,
            workers=max(1, args.workers))
    except (ManifestError, OSError) as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return EXIT_MANIFEST
    print(f"extracted {len(records)} of {report.total} videos "
          f"({report.valid} valid, {report.invalid} invalid) "
          f"in {report.elapsed_seconds:.2f}s")
    for key, count in sorted(report.rejected_frames.items()):
        print(f"  rejected frames [{key}]: {count}")
    if report.clamped_coordinates:
        print(f"  clamped coordinates: {report.clamped_coordinates}")
    for err in report.errors:
        print(f"  failed {err['video_id']}: {err['error']}", file=sys.stderr)
    return EXIT_PARTIAL if report.errors else EXIT_OK


def _cmd_bench(args) -> int:
    if args.reps < 1:
        print("error: --reps must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = bench(args.manifest, SamplerConfig(), repetitions=args.reps)
    except (ManifestError, OSError) as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return EXIT_MANIFEST
    print(f"videos: {result.videos}  repetitions: {result.repetitions}")
    print(f"parse total: {result.parse_seconds * 1000.0:.1f} ms (excluded "
          "from per-video numbers)")
    print(f"geometry per video: mean {result.geometry_ms_mean:.3f} ms, "
          f"median {result.geometry_ms_median:.3f} ms, "
          f"p95 {result.geometry_ms_p95:.3f} ms")
    return EXIT_OK


def _cmd_validate(args) -> int:
    try:
        entries = load_manifest(args.manifest)
        from pathlib import Path
        problems = validate_manifest(entries, Path(args.manifest).parent)
    except (ManifestError,) as exc:
        problems = exc.problems
    except OSError as exc:
        problems = [str(exc)]
    if problems:
        for problem in problems:
            print(f"invalid: {problem}", file=sys.stderr)
        return EXIT_MANIFEST
    print(f"manifest ok: {len(entries)} videos")
    return EXIT_OK


def _cmd_synth(args) -> int:
    try:
        manifest_path = make_corpus(
            args.out, classes=args.classes, per_class=args.per_class,
            sigma=args.sigma, seed=args.seed, dropout=args.dropout)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote corpus manifest {manifest_path}")
    return EXIT_OK


_COMMANDS = {
    "extract": _cmd_extract,
    "bench": _cmd_bench,
    "validate": _cmd_validate,
    "synth": _cmd_synth,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse raises SystemExit for both --help (0) and usage errors.
        return int(exc.code or 0)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
