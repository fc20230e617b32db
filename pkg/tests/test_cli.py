from __future__ import annotations

from solowin.cli import main
from solowin.debugmodel import BreakpointStore

from conftest import (
    GOLDEN_DIR,
    GOLDEN_TRACE_EVENTS,
    make_clean_project,
    make_fixture_project,
    write_fake_compiler,
    write_project_config,
    write_trace,
)


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBuildCommand:
    def test_golden_report(self, fixture_project, capsys):
        code, out, err = run_cli(capsys, "--root", str(fixture_project), "build")
        assert out == (GOLDEN_DIR / "build_report.txt").read_text()
        assert code == 1
        assert err == ""

    def test_clean_build_exit_zero(self, clean_project, capsys):
        code, out, _ = run_cli(capsys, "--root", str(clean_project), "build")
        assert "[finished exit=0 errors=0 warnings=0]" in out
        assert code == 0

    def test_missing_compiler_exit_three(self, tmp_path, capsys):
        write_project_config(tmp_path, build_command=["no-such-cc"])
        code, out, err = run_cli(capsys, "--root", str(tmp_path), "build")
        assert code == 3
        assert out == ""
        assert err.count("\n") == 1 and "no-such-cc" in err

    def test_output_is_byte_deterministic(self, fixture_project, capsys):
        _, first, _ = run_cli(capsys, "--root", str(fixture_project), "build")
        _, second, _ = run_cli(capsys, "--root", str(fixture_project), "build")
        assert first == second


class TestCrumbsCommand:
    def test_bare_trail(self, clean_project, capsys):
        code, out, _ = run_cli(capsys, "--root", str(clean_project), "crumbs", "fs", "src/a.c")
        assert out == "root > src > a.c\n"
        assert code == 0

    def test_marks_after_build(self, fixture_project, capsys):
        code, out, _ = run_cli(
            capsys, "--root", str(fixture_project), "crumbs", "fs", "src/main.c", "--build"
        )
        assert out == "root [E2 W1 T4] > src [E2 W1 T4] > main.c [E1 W1 T3]\n"
        assert code == 0

    def test_unknown_mode_exit_two(self, clean_project, capsys):
        code, _, err = run_cli(capsys, "--root", str(clean_project), "crumbs", "zen", "src/a.c")
        assert code == 2
        assert "zen" in err

    def test_directory_target(self, fixture_project, capsys):
        code, out, _ = run_cli(capsys, "--root", str(fixture_project), "crumbs", "fs", "src")
        assert out.startswith("root")
        assert "src" in out
        assert code == 0

    def test_code_mode_symbol_chain(self, fixture_project, capsys):
        code, out, _ = run_cli(
            capsys, "--root", str(fixture_project), "crumbs", "code", "src/main.c:helper"
        )
        assert out == "main.c [T3] > helper\n"
        assert code == 0

    def test_project_mode_filters_to_sources(self, tmp_path, capsys):
        root = make_clean_project(tmp_path / "p")
        (root / "README.md").write_text("# readme\n")
        code, out, _ = run_cli(capsys, "--root", str(root), "crumbs", "project", "src/a.c")
        assert out == "root > src > a.c\n"
        assert code == 0

    def test_stack_mode_with_trace(self, fixture_project, tmp_path, capsys):
        trace = write_trace(tmp_path / "t.jsonl", GOLDEN_TRACE_EVENTS)
        code, out, _ = run_cli(
            capsys, "--root", str(fixture_project), "crumbs", "stack", "--trace", str(trace)
        )
        assert out == "main(thread) > g\n"
        assert code == 0

    def test_missing_target_exit_three(self, clean_project, capsys):
        code, _, err = run_cli(capsys, "--root", str(clean_project), "crumbs", "fs", "zzz.c")
        assert code == 3
        assert err != ""


class TestTasksCommand:
    def test_fixture_listing(self, fixture_project, capsys):
        code, out, _ = run_cli(capsys, "--root", str(fixture_project), "tasks")
        assert out == (
            "src/main.c:4: TODO implement parser\n"
            "src/main.c:6: FIXME handle overflow\n"
            "src/main.c:11: TODO call helper\n"
            "src/util.c:2: TODO tune constants\n"
        )
        assert code == 0


class TestSymbolsCommand:
    def test_fixture_listing(self, fixture_project, capsys):
        code, out, _ = run_cli(capsys, "--root", str(fixture_project), "symbols", "src/main.c")
        assert out == (
            "src/main.c:3: variable x\n"
            "src/main.c:5: function helper\n"
            "src/main.c:10: function main\n"
        )
        assert code == 0

    def test_container_rendering(self, tmp_path, capsys):
        root = make_clean_project(tmp_path / "p")
        (root / "src" / "c.cc").write_text("class Foo {\n    void bar() {\n    }\n};\n")
        code, out, _ = run_cli(capsys, "--root", str(root), "symbols", "src/c.cc")
        assert out == "src/c.cc:1: class Foo\nsrc/c.cc:2: function Foo::bar\n"
        assert code == 0


class TestAnnotateCommand:
    def test_tasks_only_without_build(self, fixture_project, capsys):
        code, out, _ = run_cli(capsys, "--root", str(fixture_project), "annotate", "src/main.c")
        lines = out.splitlines()
        assert "  <> TODO" in lines
        assert "  <> FIXME" in lines
        assert not any(">> error" in line for line in lines)
        assert code == 0

    def test_with_build_shows_diagnostics(self, fixture_project, capsys):
        code, out, _ = run_cli(
            capsys, "--root", str(fixture_project), "annotate", "src/main.c", "--build"
        )
        lines = out.splitlines()
        anchor = lines.index("   3 | int x = 5  return x;")
        assert lines[anchor + 1] == "  >> error[1/2]: expected ';' before 'return'"
        warn_anchor = lines.index("   7 |     int tmp = 0;")
        assert lines[warn_anchor + 1] == "  ~~ warning: unused variable 'tmp'"
        assert code == 0


class TestStatusCommand:
    def test_widgets_after_build(self, fixture_project, capsys):
        code, out, _ = run_cli(capsys, "--root", str(fixture_project), "status", "--build")
        assert out == "errors: 2\ntasks: 4\n"
        assert code == 0

    def test_widgets_without_build(self, fixture_project, capsys):
        code, out, _ = run_cli(capsys, "--root", str(fixture_project), "status")
        assert out == "errors: 0\ntasks: 4\n"
        assert code == 0

    def test_history_deterministic_has_no_timestamps(self, fixture_project, capsys):
        code, out, _ = run_cli(
            capsys,
            "--root",
            str(fixture_project),
            "--deterministic",
            "status",
            "--build",
            "--history",
            "2",
        )
        assert out.endswith(
            "- [build] build finished: exit 1, 2 errors, 1 warnings\n"
            "- [build] build started\n"
        )
        assert code == 0

    def test_vcs_widget_from_provider(self, tmp_path, capsys):
        root = make_clean_project(tmp_path / "p")
        provider = write_fake_compiler(root, [" M src/a.c", "?? new.c"], 0, name="vcs.py")
        write_project_config(
            root,
            build_command=write_fake_compiler(root, [], 0),
            vcs_status_command=provider,
        )
        code, out, _ = run_cli(capsys, "--root", str(root), "status")
        assert "vcs: 2" in out
        assert code == 0


class TestDebugCommand:
    def test_golden_transcript_and_hit_count(self, fixture_project, tmp_path, capsys):
        bp = BreakpointStore(fixture_project).toggle("src/main.c", 7)
        assert bp.id == 1
        trace = write_trace(tmp_path / "t.jsonl", GOLDEN_TRACE_EVENTS)
        code, out, _ = run_cli(
            capsys, "--root", str(fixture_project), "debug", str(trace), "step", "step"
        )
        assert out == (GOLDEN_DIR / "debug_transcript.txt").read_text()
        assert code == 0
        assert BreakpointStore(fixture_project).get(1).hit_count == 1

    def test_step_past_end_notes_exhaustion(self, fixture_project, tmp_path, capsys):
        trace = write_trace(tmp_path / "t.jsonl", [{"ev": "exited", "code": 0}])
        code, out, _ = run_cli(
            capsys, "--root", str(fixture_project), "debug", str(trace), "step", "step"
        )
        assert "session exhausted" in out
        assert code == 0

    def test_malformed_trace_exit_three(self, fixture_project, tmp_path, capsys):
        bad = tmp_path / "bad.jsonl"
        bad.write_text('{"threads": []}\n')
        code, _, err = run_cli(capsys, "--root", str(fixture_project), "debug", str(bad), "step")
        assert code == 3
        assert "line 1" in err

    def test_unknown_script_command_exit_two(self, fixture_project, tmp_path, capsys):
        trace = write_trace(tmp_path / "t.jsonl", [{"ev": "exited", "code": 0}])
        code, _, err = run_cli(
            capsys, "--root", str(fixture_project), "debug", str(trace), "leap"
        )
        assert code == 2
        assert "leap" in err


class TestEngineErrors:
    def test_malformed_project_config(self, tmp_path, capsys):
        write_project_config(tmp_path, build_command=[])
        code, _, err = run_cli(capsys, "--root", str(tmp_path), "tasks")
        assert code == 3
        assert "build_command" in err
