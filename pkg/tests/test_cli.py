"""End-to-end command-line checks, run in-process via cli.main()."""

import numpy as np
import pytest

from evcorner import DAVIS240, Event, EventArray, read_corners, write_events
from evcorner.cli import main


def _run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage failures
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _result_fields(out):
    lines = [l for l in out.splitlines() if l.startswith("RESULT ")]
    assert len(lines) == 1, out
    return dict(kv.split("=", 1) for kv in lines[0][len("RESULT "):].split())


@pytest.fixture
def scene_files(tmp_path, capsys):
    ev_file = tmp_path / "events.txt"
    tr_file = tmp_path / "tracks.txt"
    code, out, err = _run(
        capsys, "synth",
        "--out-events", str(ev_file), "--out-tracks", str(tr_file),
        "--duration", "0.6", "--seed", "5",
    )
    assert code == 0, err
    return ev_file, tr_file


class TestSynth:
    def test_writes_both_files_and_reports(self, tmp_path, capsys):
        ev_file = tmp_path / "e.txt"
        tr_file = tmp_path / "t.txt"
        code, out, _ = _run(
            capsys, "synth", "--out-events", str(ev_file),
            "--out-tracks", str(tr_file), "--duration", "0.2",
        )
        assert code == 0
        fields = _result_fields(out)
        assert int(fields["events"]) > 0
        assert int(fields["tracks"]) == 4
        assert ev_file.exists() and tr_file.exists()

    def test_resolved_config_is_printed_with_defaults(self, tmp_path, capsys):
        code, out, _ = _run(
            capsys, "synth", "--out-events", str(tmp_path / "e"),
            "--out-tracks", str(tmp_path / "t"), "--duration", "0.1",
        )
        assert code == 0
        cfg_line = next(l for l in out.splitlines() if l.startswith("config synth:"))
        # defaulted flags appear in the header
        for key in ("seed=", "edge_rate=", "vx=", "vy=", "width=", "height="):
            assert key in cfg_line, cfg_line

    def test_identical_args_identical_bytes(self, tmp_path, capsys):
        a_e, a_t = tmp_path / "a_e", tmp_path / "a_t"
        b_e, b_t = tmp_path / "b_e", tmp_path / "b_t"
        for e, t in ((a_e, a_t), (b_e, b_t)):
            code, _, _ = _run(
                capsys, "synth", "--out-events", str(e), "--out-tracks", str(t),
                "--duration", "0.3", "--seed", "42",
            )
            assert code == 0
        assert a_e.read_bytes() == b_e.read_bytes()
        assert a_t.read_bytes() == b_t.read_bytes()

    def test_custom_vertices(self, tmp_path, capsys):
        code, out, _ = _run(
            capsys, "synth", "--out-events", str(tmp_path / "e"),
            "--out-tracks", str(tmp_path / "t"),
            "--vertices", "60,50;110,60;80,100", "--duration", "0.2",
        )
        assert code == 0
        assert int(_result_fields(out)["tracks"]) == 3

    def test_bad_vertices_is_usage_error(self, tmp_path, capsys):
        code, _, err = _run(
            capsys, "synth", "--out-events", str(tmp_path / "e"),
            "--out-tracks", str(tmp_path / "t"), "--vertices", "banana",
        )
        assert code == 1

    def test_offscreen_polygon_is_usage_error(self, tmp_path, capsys):
        code, _, _ = _run(
            capsys, "synth", "--out-events", str(tmp_path / "e"),
            "--out-tracks", str(tmp_path / "t"),
            "--vertices", "0,0;30,0;30,30;0,30",
        )
        assert code == 1


class TestDetect:
    def test_detect_writes_corner_subset(self, scene_files, tmp_path, capsys):
        ev_file, _ = scene_files
        out_file = tmp_path / "corners.txt"
        code, out, _ = _run(
            capsys, "detect", "--input", str(ev_file), "--output", str(out_file),
        )
        assert code == 0
        fields = _result_fields(out)
        corners = read_corners(out_file, DAVIS240)
        assert len(corners) == int(fields["corners"])
        assert int(fields["events_in"]) >= int(fields["events_passed_filter"])
        assert int(fields["events_passed_filter"]) >= int(fields["candidates"])
        assert int(fields["candidates"]) >= int(fields["corners"])

    def test_variant_flag(self, scene_files, tmp_path, capsys):
        ev_file, _ = scene_files
        counts = {}
        for variant in ("fa-harris", "g-eharris", "arc-only"):
            out_file = tmp_path / f"{variant}.txt"
            code, out, _ = _run(
                capsys, "detect", "--input", str(ev_file),
                "--output", str(out_file), "--variant", variant,
            )
            assert code == 0
            counts[variant] = int(_result_fields(out)["corners"])
        assert counts["fa-harris"] <= counts["g-eharris"]

    def test_empty_input_gives_empty_output(self, tmp_path, capsys):
        src = tmp_path / "empty.txt"
        src.write_text("")
        dst = tmp_path / "out.txt"
        code, out, _ = _run(capsys, "detect", "--input", str(src), "--output", str(dst))
        assert code == 0
        assert _result_fields(out)["reduction"] == "absent"
        assert dst.read_text() == ""

    def test_malformed_input_is_data_error(self, tmp_path, capsys):
        src = tmp_path / "bad.txt"
        src.write_text("0.0 999 10 1\n")
        code, _, err = _run(
            capsys, "detect", "--input", str(src), "--output", str(tmp_path / "o"),
        )
        assert code == 2
        assert "bad.txt:1" in err

    def test_missing_input_is_data_error(self, tmp_path, capsys):
        code, _, _ = _run(
            capsys, "detect", "--input", str(tmp_path / "nope"),
            "--output", str(tmp_path / "o"),
        )
        assert code == 2

    def test_missing_required_flag_is_usage_error(self, capsys):
        code, _, _ = _run(capsys, "detect", "--input", "x")
        assert code == 1

    def test_unknown_variant_is_usage_error(self, tmp_path, capsys):
        code, _, _ = _run(
            capsys, "detect", "--input", "x", "--output", "y", "--variant", "bogus",
        )
        assert code == 1

    def test_detect_reproducible(self, scene_files, tmp_path, capsys):
        ev_file, _ = scene_files
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for out_file in (a, b):
            code, _, _ = _run(
                capsys, "detect", "--input", str(ev_file), "--output", str(out_file),
            )
            assert code == 0
        assert a.read_bytes() == b.read_bytes()


class TestEval:
    def test_full_pipeline_scores(self, scene_files, tmp_path, capsys):
        ev_file, tr_file = scene_files
        corner_file = tmp_path / "corners.txt"
        code, _, _ = _run(
            capsys, "detect", "--input", str(ev_file), "--output", str(corner_file),
        )
        assert code == 0
        code, out, _ = _run(
            capsys, "eval", "--events", str(ev_file),
            "--corners", str(corner_file), "--tracks", str(tr_file),
        )
        assert code == 0
        fields = _result_fields(out)
        assert int(fields["tp"]) > 0
        assert fields["accuracy"] != "absent"

    def test_corners_not_subset_is_data_error(self, scene_files, tmp_path, capsys):
        ev_file, tr_file = scene_files
        rogue = tmp_path / "rogue.txt"
        write_events(rogue, EventArray.from_events([Event(1, 33, 33, 1)]))
        code, _, err = _run(
            capsys, "eval", "--events", str(ev_file),
            "--corners", str(rogue), "--tracks", str(tr_file),
        )
        assert code == 2
        assert "subsequence" in err

    def test_max_seconds_truncates(self, scene_files, tmp_path, capsys):
        ev_file, tr_file = scene_files
        corner_file = tmp_path / "corners.txt"
        _run(capsys, "detect", "--input", str(ev_file), "--output", str(corner_file))
        code, out, _ = _run(
            capsys, "eval", "--events", str(ev_file), "--corners", str(corner_file),
            "--tracks", str(tr_file), "--max-seconds", "0.3",
        )
        assert code == 0
        code2, out2, _ = _run(
            capsys, "eval", "--events", str(ev_file), "--corners", str(corner_file),
            "--tracks", str(tr_file),
        )
        assert int(_result_fields(out)["events"]) < int(_result_fields(out2)["events"])


class TestBench:
    def test_bench_reports_throughput(self, scene_files, capsys):
        ev_file, _ = scene_files
        code, out, _ = _run(
            capsys, "bench", "--input", str(ev_file), "--variant", "arc-only",
        )
        assert code == 0
        fields = _result_fields(out)
        assert fields["variant"] == "arc-only"
        assert float(fields["us_per_event"]) > 0
        assert float(fields["meps"]) > 0

    def test_bench_empty_stream_is_data_error(self, tmp_path, capsys):
        src = tmp_path / "empty.txt"
        src.write_text("")
        code, _, _ = _run(capsys, "bench", "--input", str(src))
        assert code == 2


def test_no_command_is_usage_error(capsys):
    code, _, _ = _run(capsys)
    assert code == 1


def test_unknown_command_is_usage_error(capsys):
    code, _, _ = _run(capsys, "frobnicate")
    assert code == 1
