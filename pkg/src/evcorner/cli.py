"""Command-line entry points.

Subcommands:
  detect   run a detector over an event file, write the corner file
  eval     score a corner file against ground-truth tracks
  bench    measure replay throughput of a detector on an event file
  synth    generate a synthetic scene (events + vertex tracks)

Conventions: every run prints its fully-resolved configuration (one
``config`` line, defaults included) before doing work, and finishes
with a single ``RESULT key=value ...`` line for scripting.  Exit codes:
0 success, 1 usage error, 2 malformed or inconsistent input data.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from . import dataset_io, evaluation, synth
from .detector import VARIANTS, Detector, DetectorConfig
from .filtering import DEFAULT_WINDOW_NS
from .harris import RefinerConfig
from .stream import DAVIS240, NS_PER_S, NS_PER_US, SensorGeometry

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; our contract reserves 2 for
    # data errors, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _geometry_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--width", type=int, default=DAVIS240.width,
                   help="sensor width in pixels")
    p.add_argument("--height", type=int, default=DAVIS240.height,
                   help="sensor height in pixels")


def _detector_args(p: argparse.ArgumentParser) -> None:
    _geometry_args(p)
    p.add_argument("--variant", choices=VARIANTS, default="fa-harris",
                   help="detection pipeline to run")
    p.add_argument("--filter-window-us", type=float,
                   default=DEFAULT_WINDOW_NS / NS_PER_US,
                   help="refractory window in microseconds")
    p.add_argument("--no-filter", action="store_true",
                   help="disable the refractory filter entirely")
    p.add_argument("--threshold", type=float, default=RefinerConfig().threshold,
                   help="corner response cutoff")
    p.add_argument("--n-newest", type=int, default=RefinerConfig().n_newest,
                   help="patch cells kept when binarizing")
    p.add_argument("--alpha", type=float, default=RefinerConfig().alpha,
                   help="trace-squared weight in the response")
    p.add_argument("--sigma", type=float, default=RefinerConfig().sigma,
                   help="width of the position weighting")


def _detector_config(args) -> DetectorConfig:
    return DetectorConfig(
        geometry=SensorGeometry(width=args.width, height=args.height),
        variant=args.variant,
        filter_enabled=not args.no_filter,
        filter_window_ns=round(args.filter_window_us * NS_PER_US),
        refiner=RefinerConfig(
            threshold=args.threshold,
            n_newest=args.n_newest,
            alpha=args.alpha,
            sigma=args.sigma,
        ),
    )


def _print_config(name: str, pairs: dict) -> None:
    rendered = " ".join(f"{k}={v}" for k, v in pairs.items())
    print(f"config {name}: {rendered}")


def _print_result(pairs: dict) -> None:
    rendered = " ".join(f"{k}={v}" for k, v in pairs.items())
    print(f"RESULT {rendered}")


def _fmt_metric(value) -> str:
    return "absent" if value is None else f"{value:.4f}"


def _detector_config_pairs(args) -> dict:
    return {
        "variant": args.variant,
        "width": args.width,
        "height": args.height,
        "filter": "off" if args.no_filter else "on",
        "filter_window_us": args.filter_window_us,
        "threshold": args.threshold,
        "n_newest": args.n_newest,
        "alpha": args.alpha,
        "sigma": args.sigma,
    }


def _cmd_detect(args) -> int:
    _print_config("detect", {"input": args.input, "output": args.output,
                             **_detector_config_pairs(args)})
    config = _detector_config(args)
    events = dataset_io.read_events(args.input, config.geometry)
    det = Detector(config)
    corners = det.process_stream(events)
    dataset_io.write_corners(args.output, corners)
    c = det.counters
    reduction = None
    if c.events_in > 0:
        reduction = 100.0 * (c.events_in - c.corners) / c.events_in
    _print_result({
        "events_in": c.events_in,
        "events_passed_filter": c.events_passed_filter,
        "candidates": c.candidates,
        "corners": c.corners,
        "reduction": _fmt_metric(reduction),
        "output": args.output,
    })
    return 0


def _cmd_eval(args) -> int:
    _print_config("eval", {
        "events": args.events, "corners": args.corners, "tracks": args.tracks,
        "width": args.width, "height": args.height,
        "radius_tp": args.radius_tp, "radius_fp": args.radius_fp,
        "max_seconds": args.max_seconds,
    })
    geometry = SensorGeometry(width=args.width, height=args.height)
    events = dataset_io.read_events(args.events, geometry)
    corners = dataset_io.read_corners(args.corners, geometry)
    tracks = dataset_io.read_tracks(args.tracks)
    if not tracks:
        raise dataset_io.DataError(f"{args.tracks}: no tracks")
    if args.max_seconds is not None:
        horizon = round(args.max_seconds * NS_PER_S)
        events = events.take(events.t <= horizon)
        corners = corners.take(corners.t <= horizon)
    try:
        counts = evaluation.label_events(
            events, corners, tracks, r_tp=args.radius_tp, r_fp=args.radius_fp
        )
    except ValueError as exc:
        raise dataset_io.DataError(str(exc)) from None
    m = evaluation.compute_metrics(counts, len(events), len(corners))
    _print_result({
        "events": len(events), "corners": len(corners),
        "tp": counts.tp, "fp": counts.fp, "fn": counts.fn, "tn": counts.tn,
        "false_positive_rate": _fmt_metric(m.false_positive_rate),
        "accuracy": _fmt_metric(m.accuracy),
        "reduction": _fmt_metric(m.reduction),
    })
    return 0


def _cmd_bench(args) -> int:
    _print_config("bench", {"input": args.input, **_detector_config_pairs(args)})
    config = _detector_config(args)
    events = dataset_io.read_events(args.input, config.geometry)
    if len(events) == 0:
        raise dataset_io.DataError(f"{args.input}: empty stream, nothing to time")
    res = evaluation.benchmark_throughput(config, events)
    _print_result({
        "variant": res.variant,
        "events": res.n_events,
        "seconds": f"{res.seconds:.6f}",
        "us_per_event": f"{res.us_per_event:.4f}",
        "meps": f"{res.meps:.4f}",
    })
    return 0


def _parse_vertices(text: str) -> tuple[tuple[float, float], ...]:
    try:
        pts = tuple(
            tuple(float(c) for c in chunk.split(","))
            for chunk in text.split(";")
        )
    except ValueError:
        raise ValueError(f"cannot parse vertices {text!r}") from None
    if any(len(p) != 2 for p in pts):
        raise ValueError("each vertex must be 'x,y'")
    return pts  # type: ignore[return-value]


def _cmd_synth(args) -> int:
    spec = synth.SceneSpec(
        geometry=SensorGeometry(width=args.width, height=args.height),
        velocity=(args.vx, args.vy),
        duration=args.duration,
        edge_rate=args.edge_rate,
        noise_rate=args.noise_rate,
        seed=args.seed,
    )
    if args.vertices is not None:
        spec = replace(spec, vertices=_parse_vertices(args.vertices))
    _print_config("synth", {
        "out_events": args.out_events, "out_tracks": args.out_tracks,
        "width": args.width, "height": args.height,
        "vertices": ";".join(f"{x:g},{y:g}" for x, y in spec.vertices),
        "vx": args.vx, "vy": args.vy, "duration": args.duration,
        "edge_rate": args.edge_rate, "noise_rate": args.noise_rate,
        "seed": args.seed,
    })
    # Invalid scene parameters (bad polygon, out-of-frame motion) come
    # from flags, so they surface as usage errors via main().
    events, tracks = synth.generate(spec)
    dataset_io.write_events(args.out_events, events)
    dataset_io.write_tracks(args.out_tracks, tracks)
    _print_result({
        "events": len(events),
        "tracks": len(tracks),
        "out_events": args.out_events,
        "out_tracks": args.out_tracks,
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="evcorner",
        description="Asynchronous corner detection for event-camera streams.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("detect", help="detect corners in an event file")
    p.add_argument("--input", required=True, help="event file to read")
    p.add_argument("--output", required=True, help="corner file to write")
    _detector_args(p)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("eval", help="score detections against tracks")
    p.add_argument("--events", required=True, help="full event file")
    p.add_argument("--corners", required=True, help="detected corner file")
    p.add_argument("--tracks", required=True, help="ground-truth track file")
    _geometry_args(p)
    p.add_argument("--radius-tp", type=float, default=evaluation.DEFAULT_R_TP,
                   help="true-corner distance in pixels")
    p.add_argument("--radius-fp", type=float, default=evaluation.DEFAULT_R_FP,
                   help="outer labeling distance in pixels")
    p.add_argument("--max-seconds", type=float, default=10.0,
                   help="evaluate only the first N seconds (default 10)")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("bench", help="time a detector replay")
    p.add_argument("--input", required=True, help="event file to replay")
    _detector_args(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("synth", help="generate a synthetic scene")
    p.add_argument("--out-events", required=True, help="event file to write")
    p.add_argument("--out-tracks", required=True, help="track file to write")
    _geometry_args(p)
    p.add_argument("--vertices", default=None,
                   help="polygon as 'x,y;x,y;...' (default: a square)")
    p.add_argument("--vx", type=float, default=synth.SceneSpec().velocity[0],
                   help="x velocity in px/s")
    p.add_argument("--vy", type=float, default=synth.SceneSpec().velocity[1],
                   help="y velocity in px/s")
    p.add_argument("--duration", type=float, default=synth.SceneSpec().duration,
                   help="scene length in seconds")
    p.add_argument("--edge-rate", type=float, default=synth.SceneSpec().edge_rate,
                   help="events per edge pixel per second")
    p.add_argument("--noise-rate", type=float, default=synth.SceneSpec().noise_rate,
                   help="background events per second")
    p.add_argument("--seed", type=int, default=synth.SceneSpec().seed,
                   help="generator seed")
    p.set_defaults(func=_cmd_synth)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except dataset_io.DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except FileNotFoundError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
