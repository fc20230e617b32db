"""Between-lines widgets and line decorations for a document, from global state.

Pure recomputation: both entry points are functions of an immutable
``InlineState`` snapshot, so any frontend can replay them deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .diagnostics import Diagnostic, Severity, first_error
from .debugmodel import Breakpoint
from .errors import NoWarningHere
from .statusbar import ActionRef, ActionVerb
from .symbols import Task
from .workspace import Location


class WidgetKind(Enum):
    FIRST_ERROR = "first-error"
    WARNING_DETAIL = "warning-detail"
    TASK_NAV = "task-nav"
    BREAKPOINT_EDITOR = "breakpoint-editor"


class DecorationStyle(Enum):
    ERROR_HIGHLIGHT = "error-highlight"
    WARNING_UNDERLINE = "warning-underline"
    TASK_MARKER_INLINE = "task-marker"


_KIND_ORDER = {
    WidgetKind.FIRST_ERROR: 0,
    WidgetKind.WARNING_DETAIL: 1,
    WidgetKind.BREAKPOINT_EDITOR: 2,
    WidgetKind.TASK_NAV: 3,
}
_STYLE_ORDER = {
    DecorationStyle.ERROR_HIGHLIGHT: 0,
    DecorationStyle.WARNING_UNDERLINE: 1,
    DecorationStyle.TASK_MARKER_INLINE: 2,
}


@dataclass(frozen=True)
class InlineWidget:
    """A between-lines annotation; it renders after ``anchor.line``."""

    anchor: Location
    kind: WidgetKind
    content: str
    actions: tuple[ActionRef, ...] = ()


@dataclass(frozen=True)
class LineDecoration:
    file: str
    line: int
    style: DecorationStyle


@dataclass(frozen=True)
class InlineState:
    """Snapshot of everything the inline layer reads.

    ``diagnostics`` are post-ignore; ``stopped_breakpoint`` is set only while
    the debuggee is paused at a known breakpoint.
    """

    diagnostics: tuple[Diagnostic, ...] = ()
    tasks: tuple[Task, ...] = ()
    stopped_breakpoint: Breakpoint | None = None
    expanded_warning: tuple[str, int] | None = None
    inline_widgets_enabled: bool = True
    task_elements_enabled: bool = True


def compute_widgets(state: InlineState, file: str) -> list[InlineWidget]:
    widgets: list[InlineWidget] = []

    if state.inline_widgets_enabled:
        first = first_error(state.diagnostics)
        if first is not None and first.file == file:
            widgets.append(
                InlineWidget(
                    anchor=Location(file=file, line=first.line),
                    kind=WidgetKind.FIRST_ERROR,
                    content=first.message,
                    actions=(
                        ActionRef(ActionVerb.NEXT_ERROR),
                        ActionRef(ActionVerb.PREV_ERROR),
                    ),
                )
            )

    if state.expanded_warning is not None and state.expanded_warning[0] == file:
        line = state.expanded_warning[1]
        warning = _warning_at(state, file, line)
        if warning is not None:
            location = Location(file=file, line=line)
            widgets.append(
                InlineWidget(
                    anchor=location,
                    kind=WidgetKind.WARNING_DETAIL,
                    content=warning.message,
                    actions=(
                        ActionRef(ActionVerb.IGNORE_WARNING, location=location),
                    ),
                )
            )

    bp = state.stopped_breakpoint
    if bp is not None and bp.file == file:
        location = Location(file=bp.file, line=bp.line)
        enabled = "on" if bp.enabled else "off"
        widgets.append(
            InlineWidget(
                anchor=location,
                kind=WidgetKind.BREAKPOINT_EDITOR,
                content=f"breakpoint {bp.id}: condition={bp.condition or '-'} enabled={enabled}",
                actions=(ActionRef(ActionVerb.SAVE_BREAKPOINT, location=location),),
            )
        )

    if state.task_elements_enabled:
        for task in state.tasks:
            if task.file != file:
                continue
            widgets.append(
                InlineWidget(
                    anchor=Location(file=file, line=task.line),
                    kind=WidgetKind.TASK_NAV,
                    content=task.keyword,
                    actions=(
                        ActionRef(ActionVerb.NEXT_TASK),
                        ActionRef(ActionVerb.PREV_TASK),
                    ),
                )
            )

    widgets.sort(key=lambda w: (w.anchor.line, _KIND_ORDER[w.kind]))
    return widgets


def compute_decorations(state: InlineState, file: str) -> list[LineDecoration]:
    """Highlights for non-first errors, underlines for live warnings, task marks."""
    first = first_error(state.diagnostics)
    first_line_here: int | None = None
    if (
        state.inline_widgets_enabled
        and first is not None
        and first.file == file
    ):
        first_line_here = first.line

    error_lines = {
        d.line
        for d in state.diagnostics
        if d.severity is Severity.ERROR and d.file == file
    }
    warning_lines = {
        d.line
        for d in state.diagnostics
        if d.severity is Severity.WARNING and d.file == file
    }
    decorations = [
        LineDecoration(file=file, line=line, style=DecorationStyle.ERROR_HIGHLIGHT)
        for line in error_lines
        if line != first_line_here
    ]
    decorations += [
        LineDecoration(file=file, line=line, style=DecorationStyle.WARNING_UNDERLINE)
        for line in warning_lines
    ]
    if state.task_elements_enabled:
        task_lines = {t.line for t in state.tasks if t.file == file}
        decorations += [
            LineDecoration(file=file, line=line, style=DecorationStyle.TASK_MARKER_INLINE)
            for line in task_lines
        ]
    decorations.sort(key=lambda d: (d.line, _STYLE_ORDER[d.style]))
    return decorations


def expand_warning(state: InlineState, file: str, line: int) -> InlineState:
    """Expand the warning at (file, line); at most one is expanded workspace-wide."""
    if _warning_at(state, file, line) is None:
        raise NoWarningHere(f"no warning at {file}:{line}")
    return replace(state, expanded_warning=(file, line))


def collapse_warning(state: InlineState) -> InlineState:
    return replace(state, expanded_warning=None)


def _warning_at(state: InlineState, file: str, line: int) -> Diagnostic | None:
    for diag in state.diagnostics:
        if diag.severity is Severity.WARNING and diag.file == file and diag.line == line:
            return diag
    return None
