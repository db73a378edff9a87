"""CLI behavior: exit codes, diagnostics, trace files, fmt, repl."""

import json

import pytest
from hypothesis import given, settings

from tiniscript.cli import main
from tiniscript.lang import format_frame, parse_frame

from genutil import frames

AVOIDANCE = (
    "SI|START;LOOP(FOREVER);F(1, 80);DISTANCE;"
    "IF(DISTANCE < 10);STOP;R(1, 60);ENDIF;END_LOOP"
)


class TestCheck:
    def test_valid_program_exit_0(self, capsys):
        assert main(["check", "SI|F(5, 80)"]) == 0
        assert capsys.readouterr().out == ""

    def test_unbalanced_block_exit_1(self, capsys):
        assert main(["check", "SI|LOOP(3);F(2,50)"]) == 1
        out = capsys.readouterr().out
        assert "UnbalancedBlock" in out

    def test_missing_file_exit_2(self, capsys):
        assert main(["check", "no/such/file.tini"]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_reads_program_file(self, tmp_path, capsys):
        path = tmp_path / "p.tini"
        path.write_text("SI|\n  F(2, 50);\n  W(1)\n")
        assert main(["check", str(path)]) == 0

    def test_warning_alone_exits_0(self, capsys):
        assert main(["check", "SI|F(1, 150)"]) == 0
        out = capsys.readouterr().out
        assert "ClampedPower" in out

    def test_static_error_exits_1(self, capsys):
        assert main(["check", "SI|LOOP(-2);F(1, 50);END_LOOP"]) == 1
        assert "NegativeLoopCount" in capsys.readouterr().out

    def test_ping_frame_checks_clean(self, capsys):
        assert main(["check", "PING|check_connection"]) == 0
        assert capsys.readouterr().out == ""

    def test_diagnostics_one_per_line(self, capsys):
        main(["check", "SI|F(1, 150);W(-1)"])
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2


class TestFmt:
    def test_multiline_to_canonical(self, capsys):
        assert main(["fmt", "SI|\n  LOOP(3);\n    F(2,50);\n  END_LOOP\n"]) == 0
        assert capsys.readouterr().out.strip() == "SI|LOOP(3);F(2, 50);END_LOOP"

    def test_check_flag_canonical_input(self, capsys):
        assert main(["fmt", "--check", "SI|LOOP(3);F(2, 50);END_LOOP"]) == 0

    def test_check_flag_noncanonical_input(self, capsys):
        assert main(["fmt", "--check", "SI|LOOP(3) ; F(2,50) ; END_LOOP"]) == 1

    def test_parse_error_exit_1(self, capsys):
        assert main(["fmt", "SI|F(1"]) == 1
        assert "UnclosedParen" in capsys.readouterr().out

    @given(frames())
    @settings(max_examples=120)
    def test_fmt_idempotent_and_parse_preserving(self, frame):
        once = format_frame(frame)
        again = format_frame(parse_frame(once))
        assert once == again
        assert parse_frame(again) == parse_frame(once)


class TestRun:
    def test_done_exit_0(self, capsys):
        assert main(["run", "SI|LOOP(3);F(2, 50);END_LOOP"]) == 0
        out = capsys.readouterr().out
        assert "done t=6.00" in out
        assert "loop_iter=3" in out

    def test_fault_exit_3(self, capsys):
        assert main(["run", "SI|W(1/0)"]) == 3

    def test_cutoff_exit_4(self, capsys):
        assert main(["run", "SI|LOOP(FOREVER);W(1);END_LOOP",
                     "--max-time", "2"]) == 4

    def test_static_error_exit_1(self, capsys):
        assert main(["run", "SI|LOOP(2.5);W(1);END_LOOP"]) == 1

    def test_parse_error_exit_1(self, capsys):
        assert main(["run", "SI|F(1"]) == 1

    def test_bad_world_exit_2(self, capsys):
        assert main(["run", "SI|S", "--world", "no/such.world.json"]) == 2
        assert "world" in capsys.readouterr().err

    def test_bad_dt_exit_2(self, capsys):
        assert main(["run", "SI|S", "--dt", "0.5"]) == 2

    def test_ping_prints_pong(self, capsys):
        assert main(["run", "PING|check_connection"]) == 0
        assert capsys.readouterr().out.strip() == "PONG"

    def test_corridor_scenario_exit_4(self, capsys):
        assert main(["run", AVOIDANCE, "--world", "corridor",
                     "--max-time", "60"]) == 4
        out = capsys.readouterr().out
        assert "collision" not in out

    def test_button_at_flag(self, capsys):
        assert main(["run", "SB|R(3, 60)", "--button-at", "1.0"]) == 0
        assert main(["run", "SB|R(3, 60)", "--max-time", "5"]) == 4

    def test_trace_file_replays_to_same_counts(self, tmp_path, capsys):
        trace_path = tmp_path / "out.jsonl"
        assert main(["run", "SI|LOOP(3);F(2, 50);END_LOOP",
                     "--trace", str(trace_path)]) == 0
        rows = [json.loads(line) for line in
                trace_path.read_text().splitlines()]
        assert rows[0]["kind"] == "ack"
        assert rows[-1]["kind"] == "done"
        counts = {}
        for row in rows:
            counts[row["kind"]] = counts.get(row["kind"], 0) + 1
        out = capsys.readouterr().out
        for kind, count in counts.items():
            assert f"{kind}={count}" in out

    def test_trace_to_stdout(self, capsys):
        assert main(["run", "SI|S", "--trace", "-"]) == 0
        out = capsys.readouterr().out
        assert '"kind": "ack"' in out

    def test_program_from_file(self, tmp_path, capsys):
        path = tmp_path / "p.tini"
        path.write_text("SI|F(2, 80)\n")
        assert main(["run", str(path)]) == 0
        assert "pose=(0.8000" in capsys.readouterr().out


class TestRepl:
    def run_repl(self, monkeypatch, capsys, lines, extra=()):
        feed = iter(lines)
        monkeypatch.setattr("builtins.input", lambda prompt="": next(feed))
        code = main(["repl", *extra])
        return code, capsys.readouterr().out

    def test_ping_pong_and_quit(self, monkeypatch, capsys):
        code, out = self.run_repl(monkeypatch, capsys,
                                  ["PING|check_connection", ":quit"])
        assert code == 0
        assert "PONG" in out

    def test_run_frame_shows_ack_done_pose(self, monkeypatch, capsys):
        code, out = self.run_repl(monkeypatch, capsys, ["SI|F(2, 80)", ":quit"])
        assert code == 0
        assert "ACK" in out
        assert "DONE" in out
        assert "x=0.800" in out

    def test_eof_exits_cleanly(self, monkeypatch, capsys):
        def raise_eof(prompt=""):
            raise EOFError
        monkeypatch.setattr("builtins.input", raise_eof)
        assert main(["repl"]) == 0

    def test_parse_error_keeps_looping(self, monkeypatch, capsys):
        code, out = self.run_repl(monkeypatch, capsys,
                                  ["SI|F(1", "PING|x", ":quit"])
        assert code == 0
        assert "ERR 7 UnclosedParen" in out
        assert "PONG" in out

    def test_button_flow(self, monkeypatch, capsys):
        code, out = self.run_repl(monkeypatch, capsys,
                                  ["SB|F(1, 80)", ":btn", ":quit"])
        assert "EVT BUTTON_WAIT" in out
        assert "DONE" in out
        assert "x=0.400" in out

    def test_state_command(self, monkeypatch, capsys):
        code, out = self.run_repl(monkeypatch, capsys, [":state", ":quit"])
        assert "phase=idle" in out

    def test_preemption_across_frames(self, monkeypatch, capsys):
        code, out = self.run_repl(
            monkeypatch, capsys,
            ["SI|LOOP(FOREVER);W(1);END_LOOP", "SI|S", ":quit"])
        assert "(paused" in out
        assert "PREEMPTED" in out

    def test_awaiting_session_replaced_silently(self, monkeypatch, capsys):
        code, out = self.run_repl(
            monkeypatch, capsys,
            ["SB|W(5)", "SI|S", ":quit"])
        assert "PREEMPTED" not in out
        assert "DONE" in out


class TestBench:
    def test_bench_runs(self, capsys):
        assert main(["bench", "--ticks", "500"]) == 0
        out = capsys.readouterr().out
        assert "pure:" in out
