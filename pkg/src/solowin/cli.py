"""Headless command-line surface over the engine.

Subcommands: build | annotate | crumbs | tasks | symbols | status | debug.
Exit codes: 0 success, 1 build had errors, 2 usage error, 3 engine error.
All output is UTF-8 with LF line endings and is byte-deterministic for fixed
fixtures; ``--deterministic`` additionally suppresses feed timestamps.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import crumbs, debugmodel, inline, symbols
from .crumbs import BreadcrumbTrail, Mode
from .diagnostics import Diagnostic, Severity, first_error
from .engine import Engine
from .errors import NodeNotFound, SessionExhausted, SolowinError
from .inline import DecorationStyle, WidgetKind

EXIT_OK = 0
EXIT_BUILD_ERRORS = 1
EXIT_USAGE = 2
EXIT_ENGINE = 3

_MODE_NAMES = {
    "fs": Mode.FILESYSTEM,
    "project": Mode.PROJECT,
    "code": Mode.CODE_OBJECTS,
    "stack": Mode.CALL_STACK,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solowin", description="single-window IDE engine, headless"
    )
    parser.add_argument("--root", default=".", help="project root directory")
    parser.add_argument(
        "--deterministic",
        action="store_true",
        help="suppress timestamps in output (for golden tests)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("build", help="run the configured build and annotate its results")

    annotate = sub.add_parser("annotate", help="print a file with inline annotations")
    annotate.add_argument("file")
    annotate.add_argument(
        "--build", action="store_true", help="run the build first to include diagnostics"
    )

    crumbs_cmd = sub.add_parser("crumbs", help="print the breadcrumb trail for a node")
    crumbs_cmd.add_argument("mode", help="fs | project | code | stack")
    crumbs_cmd.add_argument("target", nargs="?", help="path, or FILE:SYMBOL in code mode")
    crumbs_cmd.add_argument(
        "--build", action="store_true", help="run the build first so marks include diagnostics"
    )
    crumbs_cmd.add_argument("--trace", help="trace file (stack mode)")

    sub.add_parser("tasks", help="list task comments in project sources")

    symbols_cmd = sub.add_parser("symbols", help="list symbols indexed in a file")
    symbols_cmd.add_argument("file")

    status = sub.add_parser("status", help="print the static status widgets")
    status.add_argument("--build", action="store_true", help="run the build first")
    status.add_argument("--history", type=int, metavar="N", help="also print the last N feed events")

    debug = sub.add_parser("debug", help="replay a debug trace")
    debug.add_argument("trace")
    debug.add_argument("script", nargs="*", default=[], help="step commands")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        engine = Engine(args.root)
        handler = _COMMANDS[args.command]
        return handler(engine, args)
    except SolowinError as exc:
        print(f"solowin: {exc}", file=sys.stderr)
        return EXIT_ENGINE


# ---------------------------------------------------------------------------
# rendering helpers


def render_trail(trail: BreadcrumbTrail) -> str:
    parts = []
    for block in trail.blocks:
        label = block.label
        marks = block.marks.label()
        parts.append(f"{label} [{marks}]" if marks else label)
    return " > ".join(parts)


def _diag_annotation(diag: Diagnostic, first: Diagnostic | None, total_errors: int) -> str | None:
    if diag.severity is Severity.ERROR:
        if first is not None and diag.seq == first.seq:
            return f"  >> error[1/{total_errors}]: {diag.message}"
        return f"  !! error: {diag.message}"
    if diag.severity is Severity.WARNING:
        return f"  ~~ warning: {diag.message}"
    return None


def _source_lines(engine: Engine, path: str) -> list[str]:
    try:
        return engine.workspace.read_document(path).lines
    except SolowinError:
        return []


def _print_excerpts(engine: Engine, diags: list[Diagnostic]) -> None:
    first = first_error(diags)
    total_errors = sum(1 for d in diags if d.severity is Severity.ERROR)
    for path in sorted({d.file for d in diags}):
        file_diags = [d for d in diags if d.file == path]
        annotated_lines = sorted({d.line for d in file_diags})
        lines = _source_lines(engine, path)
        print(f"== {path}")
        for line_no in annotated_lines:
            text = lines[line_no - 1] if 0 < line_no <= len(lines) else "<line unavailable>"
            print(f"{line_no:4d} | {text}")
            for diag in sorted(
                (d for d in file_diags if d.line == line_no), key=lambda d: d.seq
            ):
                annotation = _diag_annotation(diag, first, total_errors)
                if annotation is not None:
                    print(annotation)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_build(engine: Engine, args: argparse.Namespace) -> int:
    result = engine.run_build()
    print("[started]")
    print(
        f"[finished exit={result.exit_code} "
        f"errors={result.error_count} warnings={result.warning_count}]"
    )
    _print_excerpts(engine, engine.current_diagnostics())
    return EXIT_BUILD_ERRORS if result.error_count > 0 else EXIT_OK


def _cmd_annotate(engine: Engine, args: argparse.Namespace) -> int:
    if args.build:
        engine.run_build()
    path = engine.workspace.resolve(args.file)
    document = engine.workspace.read_document(path)
    state = engine.inline_state()
    widgets = inline.compute_widgets(state, path)
    decorations = inline.compute_decorations(state, path)
    diags = [d for d in state.diagnostics if d.file == path]
    total_errors = sum(1 for d in state.diagnostics if d.severity is Severity.ERROR)

    by_line_widgets: dict[int, list[inline.InlineWidget]] = {}
    for widget in widgets:
        by_line_widgets.setdefault(widget.anchor.line, []).append(widget)
    by_line_styles: dict[int, list[DecorationStyle]] = {}
    for decoration in decorations:
        by_line_styles.setdefault(decoration.line, []).append(decoration.style)

    for line_no, text in enumerate(document.lines, 1):
        print(f"{line_no:4d} | {text}")
        for widget in by_line_widgets.get(line_no, []):
            print(_render_widget(widget, total_errors))
        for style in by_line_styles.get(line_no, []):
            for rendered in _render_decoration(style, line_no, diags):
                print(rendered)
    return EXIT_OK


def _render_widget(widget: inline.InlineWidget, total_errors: int) -> str:
    if widget.kind is WidgetKind.FIRST_ERROR:
        return f"  >> error[1/{total_errors}]: {widget.content}"
    if widget.kind is WidgetKind.WARNING_DETAIL:
        return f"  ~~ warning: {widget.content}"
    if widget.kind is WidgetKind.BREAKPOINT_EDITOR:
        return f"  [] {widget.content}"
    return f"  <> {widget.content}"


def _render_decoration(style: DecorationStyle, line_no: int, diags: list[Diagnostic]) -> list[str]:
    if style is DecorationStyle.ERROR_HIGHLIGHT:
        return [
            f"  !! error: {d.message}"
            for d in diags
            if d.line == line_no and d.severity is Severity.ERROR
        ]
    if style is DecorationStyle.WARNING_UNDERLINE:
        return [
            f"  ~~ warning: {d.message}"
            for d in diags
            if d.line == line_no and d.severity is Severity.WARNING
        ]
    return []  # task markers render through their nav widgets


def _cmd_crumbs(engine: Engine, args: argparse.Namespace) -> int:
    mode = _MODE_NAMES.get(args.mode)
    if mode is None:
        print(f"solowin: unknown breadcrumb mode: {args.mode}", file=sys.stderr)
        return EXIT_USAGE

    if mode is Mode.CALL_STACK:
        return _crumbs_stack(engine, args)

    if args.target is None:
        print("solowin: crumbs needs a path target", file=sys.stderr)
        return EXIT_USAGE
    if args.build:
        engine.run_build()
    facts = engine.fact_table()

    if mode is Mode.CODE_OBJECTS:
        tree = engine.code_tree()
        node_id = _resolve_code_target(engine, tree, args.target)
    else:
        tree = engine.file_tree() if mode is Mode.FILESYSTEM else engine.project_tree()
        path = engine.workspace.resolve(args.target)
        node_id = f"doc:{path}" if tree.has_node(f"doc:{path}") else f"dir:{path}"
    trail = crumbs.trail_for(tree, node_id, facts)
    print(render_trail(trail))
    return EXIT_OK


def _resolve_code_target(engine: Engine, tree: crumbs.NavTree, target: str) -> str:
    path, _, symbol_name = target.partition(":")
    rel = engine.workspace.resolve(path)
    doc_node = tree.find_doc(rel)
    if doc_node is None:
        raise NodeNotFound(f"no document {rel!r} in code tree")
    if not symbol_name:
        return doc_node.id
    # breadth-first so `FILE:name` finds top-level symbols before methods
    frontier = list(doc_node.children)
    while frontier:
        node = tree.node(frontier.pop(0))
        if node.label == symbol_name:
            return node.id
        frontier.extend(node.children)
    raise NodeNotFound(f"no symbol {symbol_name!r} in {rel}")


def _crumbs_stack(engine: Engine, args: argparse.Namespace) -> int:
    if not args.trace:
        print("solowin: stack mode needs --trace FILE", file=sys.stderr)
        return EXIT_USAGE
    session = engine.load_trace(args.trace)
    while not session.exhausted and session.snapshot is None:
        session.step()
    if session.snapshot is None:
        print("no stop event in trace")
        return EXIT_OK
    tree = debugmodel.stack_tree(session.snapshot)
    node_id = debugmodel.innermost_frame_node(session.snapshot)
    print(render_trail(crumbs.trail_for(tree, node_id)))
    return EXIT_OK


def _cmd_tasks(engine: Engine, args: argparse.Namespace) -> int:
    for task in engine.scan_all_tasks():
        text = f" {task.text}" if task.text else ""
        print(f"{task.file}:{task.line}: {task.keyword}{text}")
    return EXIT_OK


def _cmd_symbols(engine: Engine, args: argparse.Namespace) -> int:
    document = engine.workspace.read_document(args.file)
    for symbol in symbols.index_file(document):
        name = (
            f"{symbol.container}::{symbol.name}" if symbol.container else symbol.name
        )
        print(f"{symbol.file}:{symbol.line}: {symbol.kind.value} {name}")
    return EXIT_OK


def _cmd_status(engine: Engine, args: argparse.Namespace) -> int:
    if args.build:
        engine.run_build()
    for widget in engine.widgets():
        print(f"{widget.id}: {widget.text}")
    if args.history:
        for event in engine.feed.history(args.history):
            if args.deterministic:
                print(f"- [{event.category.value}] {event.text}")
            else:
                print(f"- {event.timestamp:.3f} [{event.category.value}] {event.text}")
    return EXIT_OK


def _cmd_debug(engine: Engine, args: argparse.Namespace) -> int:
    for command in args.script:
        if command != "step":
            print(f"solowin: unknown debug script command: {command}", file=sys.stderr)
            return EXIT_USAGE
    session = engine.load_trace(args.trace)
    for index, _ in enumerate(args.script, 1):
        try:
            outcome = session.step()
        except SessionExhausted:
            print("session exhausted")
            break
        print(_step_line(index, outcome))
        print(f"mode: {engine.modes.mode.value}")
        if outcome.snapshot is not None:
            tree = debugmodel.stack_tree(outcome.snapshot)
            node_id = debugmodel.innermost_frame_node(outcome.snapshot)
            print(f"trail: {render_trail(crumbs.trail_for(tree, node_id))}")
            for line in debugmodel.variables_document(outcome.snapshot).lines:
                print(line)
    return EXIT_OK


def _step_line(index: int, outcome: debugmodel.StepOutcome) -> str:
    if outcome.kind == "stopped":
        location = outcome.stop_location
        suffix = (
            f" (breakpoint {outcome.breakpoint_id})"
            if outcome.breakpoint_id is not None
            else ""
        )
        return f"step {index}: stopped at {location.file}:{location.line}{suffix}"
    if outcome.kind == "continued":
        return f"step {index}: continued"
    return f"step {index}: exited (code {outcome.exit_code})"


_COMMANDS = {
    "build": _cmd_build,
    "annotate": _cmd_annotate,
    "crumbs": _cmd_crumbs,
    "tasks": _cmd_tasks,
    "symbols": _cmd_symbols,
    "status": _cmd_status,
    "debug": _cmd_debug,
}


if __name__ == "__main__":
    sys.exit(main())
