"""Wiring facade: one object per project root that composes all the modules.

The CLI (and any other frontend) talks to this; it owns the stores, the event
feed, the mode machine, and the single active build/debug session.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import crumbs, debugmodel, diagnostics, inline, statusbar, symbols
from .buildrun import BuildEvent, BuildEventKind, BuildRunner
from .crumbs import Marks, Mode, ModeMachine, NavTree
from .diagnostics import Diagnostic
from .errors import NoWarningHere, ProviderFailure
from .statusbar import (
    ActionRef,
    ActionVerb,
    EventFeed,
    FeedCategory,
    StatusLayout,
    StatusState,
)
from .symbols import Task
from .workspace import Workspace, load_project, load_store, save_store


@dataclass(frozen=True)
class BuildResult:
    exit_code: int
    error_count: int
    warning_count: int
    diagnostics: tuple[Diagnostic, ...]
    transcript: tuple[str, ...]
    events: tuple[BuildEvent, ...]


class Engine:
    def __init__(self, root: str | Path, *, clock: Callable[[], float] = time.monotonic):
        self.config = load_project(root)
        self.workspace = Workspace(self.config)
        self.feed = EventFeed(clock=clock)
        self.modes = ModeMachine()
        self.breakpoints = debugmodel.BreakpointStore(self.config.root)
        self.layout = StatusLayout.from_payload(
            load_store(self.config.root, "statusbar"),
            fallback_widgets=self.config.status_widgets,
        )
        self.ignores = diagnostics.ignores_from_payload(
            load_store(self.config.root, "ignores")
        )
        self.last_build: BuildResult | None = None
        self.debug_session: debugmodel.DebugSession | None = None
        self.expanded_warning: tuple[str, int] | None = None
        self._runner = BuildRunner()

    # -- building ----------------------------------------------------------

    def run_build(self) -> BuildResult:
        """Run the configured build to completion and update engine state."""
        session = self._runner.start(self.config, self.ignores)
        events: list[BuildEvent] = []
        for event in session.events():
            if event.kind is BuildEventKind.STARTED:
                self.feed.post(FeedCategory.BUILD, "build started")
            events.append(event)
        finished = events[-1]
        assert finished.kind is BuildEventKind.FINISHED
        action = (
            ActionRef(ActionVerb.JUMP_TO_FIRST_ERROR) if finished.error_count else None
        )
        self.feed.post(
            FeedCategory.BUILD,
            "build finished: exit {}, {} errors, {} warnings".format(
                finished.exit_code, finished.error_count, finished.warning_count
            ),
            action=action,
        )
        # prior inline widgets are replaced only now, at Finished
        self.last_build = BuildResult(
            exit_code=finished.exit_code,
            error_count=finished.error_count or 0,
            warning_count=finished.warning_count or 0,
            diagnostics=tuple(session.diagnostics),
            transcript=tuple(session.transcript),
            events=tuple(events),
        )
        return self.last_build

    def current_diagnostics(self) -> list[Diagnostic]:
        """Last build's diagnostics with the live ignore set re-applied."""
        if self.last_build is None:
            return []
        return diagnostics.apply_ignores(self.last_build.diagnostics, self.ignores)

    # -- scanning ----------------------------------------------------------

    def scan_all_tasks(self) -> list[Task]:
        tasks: list[Task] = []
        for path in self.workspace.source_files():
            document = self.workspace.read_document(path)
            tasks.extend(symbols.scan_tasks(document, self.config.task_keywords))
        tasks.sort(key=lambda t: (t.file, t.line))
        return tasks

    # -- navigation trees and facts ----------------------------------------

    def file_tree(self) -> NavTree:
        return crumbs.filesystem_tree(self.workspace.iter_files())

    def project_tree(self) -> NavTree:
        return crumbs.filesystem_tree(
            self.workspace.source_files(), mode=Mode.PROJECT
        )

    def code_tree(self) -> NavTree:
        documents = [
            self.workspace.read_document(p) for p in self.workspace.source_files()
        ]
        return symbols.build_code_tree(documents)

    def fact_table(self, *, include_diagnostics: bool = True) -> dict[str, Marks]:
        """Per-document mark counts from diagnostics, tasks, and breakpoints."""
        facts: dict[str, Marks] = {}

        def bump(path: str, **kwargs: int) -> None:
            facts[path] = facts.get(path, Marks()) + Marks(**kwargs)

        if include_diagnostics:
            for diag in self.current_diagnostics():
                if diag.severity is diagnostics.Severity.ERROR:
                    bump(diag.file, errors=1)
                elif diag.severity is diagnostics.Severity.WARNING:
                    bump(diag.file, warnings=1)
        for task in self.scan_all_tasks():
            bump(task.file, tasks=1)
        for path, count in self.breakpoints.counts_by_file().items():
            bump(path, breakpoints=count)
        return facts

    # -- status ------------------------------------------------------------

    def status_state(self) -> StatusState:
        vcs_changed = None
        if self.config.vcs_status_command is not None:
            try:
                vcs_changed = statusbar.vcs_changed_count(self.config)
            except ProviderFailure as exc:
                self.feed.post(FeedCategory.VCS, str(exc))
        return StatusState(
            error_count=self.last_build.error_count if self.last_build else 0,
            warning_count=self.last_build.warning_count if self.last_build else 0,
            task_count=len(self.scan_all_tasks()),
            vcs_changed=vcs_changed,
        )

    def widgets(self) -> list[statusbar.StaticWidget]:
        return statusbar.refresh_widgets(self.layout.widgets, self.status_state())

    # -- inline ------------------------------------------------------------

    def inline_state(self) -> inline.InlineState:
        stopped = None
        session = self.debug_session
        if session is not None and session.snapshot is not None:
            bp_id = session.snapshot.stopped_breakpoint
            if bp_id is not None:
                stopped = self.breakpoints.get(bp_id)
        return inline.InlineState(
            diagnostics=tuple(self.current_diagnostics()),
            tasks=tuple(self.scan_all_tasks()),
            stopped_breakpoint=stopped,
            expanded_warning=self.expanded_warning,
            inline_widgets_enabled=self.layout.enabled("inline_widgets"),
            task_elements_enabled=self.layout.enabled("task_elements"),
        )

    def ignore_warning(self, file: str, line: int) -> None:
        """Apply ignore-forever to the warning at (file, line) and persist it."""
        target = None
        for diag in self.current_diagnostics():
            if (
                diag.severity is diagnostics.Severity.WARNING
                and diag.file == file
                and diag.line == line
            ):
                target = diag
                break
        if target is None:
            raise NoWarningHere(f"no warning at {file}:{line}")
        self.ignores = self.ignores | {diagnostics.fingerprint(target)}
        save_store(
            self.config.root, "ignores", diagnostics.ignores_to_payload(self.ignores)
        )
        self.expanded_warning = None

    def save_layout(self) -> None:
        save_store(self.config.root, "statusbar", self.layout.to_payload())

    # -- debugging ---------------------------------------------------------

    def load_trace(self, path: str | Path) -> debugmodel.DebugSession:
        self.debug_session = debugmodel.load_trace(
            path,
            breakpoints=self.breakpoints,
            feed=self.feed,
            mode_machine=self.modes,
        )
        return self.debug_session
