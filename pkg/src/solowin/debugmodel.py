"""Breakpoints, trace-replay debug sessions, call-stack trees, variables view.

A recorded trace stands in for a live debugger behind a small session
interface: anything that can produce stopped/continued/exited events with
snapshots can drive the same UI model. The trace file is UTF-8 JSON lines;
see the README for the schema.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Sequence

from .crumbs import Mode, ModeCause, ModeMachine, NavTree
from .errors import MalformedTrace, SessionExhausted, UnknownBreakpoint
from .statusbar import ActionRef, ActionVerb, EventFeed, FeedCategory
from .workspace import Document, Language, Location, load_store, normalize_path, save_store

VARIABLES_DOC_PATH = "(variables)"

_UNSET = object()


@dataclass
class Breakpoint:
    id: int
    file: str
    line: int
    condition: str | None = None
    enabled: bool = True
    hit_count: int = 0


class BreakpointStore:
    """At most one breakpoint per (file, line); persisted on every mutation."""

    def __init__(self, root: str | Path):
        self._root = Path(root)
        self._breakpoints: dict[int, Breakpoint] = {}
        self._next_id = 1
        payload = load_store(self._root, "breakpoints")
        if payload:
            for entry in payload.get("breakpoints", []):
                bp = Breakpoint(**entry)
                self._breakpoints[bp.id] = bp
            if self._breakpoints:
                self._next_id = max(self._breakpoints) + 1

    def toggle(self, file: str, line: int) -> Breakpoint | None:
        """Create an enabled breakpoint, or remove the one already there."""
        file = normalize_path(file)
        existing = self.find(file, line)
        if existing is not None:
            del self._breakpoints[existing.id]
            self._save()
            return None
        bp = Breakpoint(id=self._next_id, file=file, line=line)
        self._next_id += 1
        self._breakpoints[bp.id] = bp
        self._save()
        return bp

    def edit(
        self, bp_id: int, *, condition: Any = _UNSET, enabled: Any = _UNSET
    ) -> Breakpoint:
        bp = self._breakpoints.get(bp_id)
        if bp is None:
            raise UnknownBreakpoint(f"no breakpoint with id {bp_id}")
        if condition is not _UNSET:
            bp.condition = condition
        if enabled is not _UNSET:
            bp.enabled = bool(enabled)
        self._save()
        return bp

    def record_hit(self, bp_id: int) -> None:
        """Bump the hit counter; ids the store does not know are ignored."""
        bp = self._breakpoints.get(bp_id)
        if bp is not None:
            bp.hit_count += 1
            self._save()

    def find(self, file: str, line: int) -> Breakpoint | None:
        file = normalize_path(file)
        for bp in self._breakpoints.values():
            if bp.file == file and bp.line == line:
                return bp
        return None

    def get(self, bp_id: int) -> Breakpoint | None:
        return self._breakpoints.get(bp_id)

    def all(self) -> list[Breakpoint]:
        return sorted(self._breakpoints.values(), key=lambda b: b.id)

    def counts_by_file(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for bp in self._breakpoints.values():
            counts[bp.file] = counts.get(bp.file, 0) + 1
        return counts

    def _save(self) -> None:
        save_store(
            self._root,
            "breakpoints",
            {"breakpoints": [asdict(bp) for bp in self.all()]},
        )


# ---------------------------------------------------------------------------
# trace sessions


@dataclass(frozen=True)
class Frame:
    function: str
    file: str
    line: int


@dataclass(frozen=True)
class ThreadInfo:
    id: int
    name: str
    frames: tuple[Frame, ...]  # outermost first, innermost last


@dataclass(frozen=True)
class WatchValue:
    expression: str
    value: str


@dataclass(frozen=True)
class DebugSnapshot:
    threads: tuple[ThreadInfo, ...]
    variables: tuple[WatchValue, ...]
    stopped_breakpoint: int | None


@dataclass(frozen=True)
class StepOutcome:
    """Everything one trace step asks the rest of the IDE to do."""

    kind: str  # "stopped" | "continued" | "exited"
    mode_cause: ModeCause
    snapshot: DebugSnapshot | None = None
    stop_location: Location | None = None
    breakpoint_id: int | None = None
    exit_code: int | None = None


@dataclass(frozen=True)
class _TraceEvent:
    kind: str
    snapshot: DebugSnapshot | None = None
    exit_code: int | None = None


def load_trace(
    path: str | Path,
    *,
    breakpoints: BreakpointStore | None = None,
    feed: EventFeed | None = None,
    mode_machine: ModeMachine | None = None,
) -> "DebugSession":
    """Parse and validate a trace file; the session starts before event one."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedTrace(f"cannot read trace: {exc}") from exc
    events: list[_TraceEvent] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise MalformedTrace(f"line {lineno}: invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict) or "ev" not in obj:
            raise MalformedTrace(f'line {lineno}: missing "ev" key')
        kind = obj["ev"]
        if kind == "stopped":
            events.append(_TraceEvent("stopped", snapshot=_parse_stop(obj, lineno)))
        elif kind == "continued":
            events.append(_TraceEvent("continued"))
        elif kind == "exited":
            code = obj.get("code", 0)
            if not isinstance(code, int):
                raise MalformedTrace(f"line {lineno}: exit code must be an integer")
            events.append(_TraceEvent("exited", exit_code=code))
        else:
            raise MalformedTrace(f"line {lineno}: unknown event {kind!r}")
    return DebugSession(
        events, breakpoints=breakpoints, feed=feed, mode_machine=mode_machine
    )


def _parse_stop(obj: dict[str, Any], lineno: int) -> DebugSnapshot:
    threads_raw = obj.get("threads")
    if not isinstance(threads_raw, list) or not threads_raw:
        raise MalformedTrace(f"line {lineno}: stopped event needs a non-empty thread list")
    threads: list[ThreadInfo] = []
    for thread in threads_raw:
        if not isinstance(thread, dict):
            raise MalformedTrace(f"line {lineno}: thread entries must be objects")
        frames_raw = thread.get("frames")
        if not isinstance(frames_raw, list) or not frames_raw:
            raise MalformedTrace(f"line {lineno}: every thread needs at least one frame")
        frames = []
        for frame in frames_raw:
            try:
                frames.append(
                    Frame(
                        function=str(frame["fn"]),
                        file=normalize_path(str(frame["file"])),
                        line=int(frame["line"]),
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedTrace(f"line {lineno}: bad frame: {exc}") from exc
        try:
            threads.append(
                ThreadInfo(
                    id=int(thread["id"]),
                    name=str(thread["name"]),
                    frames=tuple(frames),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedTrace(f"line {lineno}: bad thread: {exc}") from exc
    variables = []
    for var in obj.get("vars", []):
        try:
            variables.append(WatchValue(expression=str(var["expr"]), value=str(var["value"])))
        except (KeyError, TypeError) as exc:
            raise MalformedTrace(f"line {lineno}: bad watch entry: {exc}") from exc
    bp = obj.get("bp")
    if bp is not None and not isinstance(bp, int):
        raise MalformedTrace(f"line {lineno}: bp must be an integer id")
    return DebugSnapshot(
        threads=tuple(threads), variables=tuple(variables), stopped_breakpoint=bp
    )


class DebugSession:
    """Replays trace events, updating collaborators wired in at load time."""

    def __init__(
        self,
        events: Sequence[_TraceEvent],
        *,
        breakpoints: BreakpointStore | None = None,
        feed: EventFeed | None = None,
        mode_machine: ModeMachine | None = None,
    ):
        self._events = list(events)
        self._cursor = 0
        self._breakpoints = breakpoints
        self._feed = feed
        self._modes = mode_machine
        self.snapshot: DebugSnapshot | None = None

    @property
    def pending(self) -> int:
        return len(self._events) - self._cursor

    @property
    def exhausted(self) -> bool:
        return self._cursor >= len(self._events)

    def step(self) -> StepOutcome:
        """Consume one trace event and fan out its effects."""
        if self.exhausted:
            raise SessionExhausted("no pending trace events")
        event = self._events[self._cursor]
        self._cursor += 1
        if event.kind == "stopped":
            return self._handle_stop(event)
        self.snapshot = None
        if self._modes is not None:
            self._modes.apply(ModeCause.DEBUG_RESUMED)
        if self._feed is not None:
            text = (
                "debuggee continued"
                if event.kind == "continued"
                else f"debuggee exited (code {event.exit_code})"
            )
            self._feed.post(FeedCategory.DEBUG, text)
        return StepOutcome(
            kind=event.kind,
            mode_cause=ModeCause.DEBUG_RESUMED,
            exit_code=event.exit_code,
        )

    def _handle_stop(self, event: _TraceEvent) -> StepOutcome:
        snapshot = event.snapshot
        assert snapshot is not None
        self.snapshot = snapshot
        bp_id = snapshot.stopped_breakpoint
        stop = _stop_location(snapshot, self._breakpoints)
        if bp_id is not None and self._breakpoints is not None:
            self._breakpoints.record_hit(bp_id)
        if self._modes is not None:
            self._modes.apply(ModeCause.DEBUG_PAUSED)
        if self._feed is not None:
            self._feed.post(
                FeedCategory.DEBUG,
                f"stopped at {stop.file}:{stop.line}",
                action=ActionRef(ActionVerb.JUMP_TO_LOCATION, location=stop),
            )
        return StepOutcome(
            kind="stopped",
            mode_cause=ModeCause.DEBUG_PAUSED,
            snapshot=snapshot,
            stop_location=stop,
            breakpoint_id=bp_id,
        )


def _stop_location(
    snapshot: DebugSnapshot, breakpoints: BreakpointStore | None
) -> Location:
    bp_id = snapshot.stopped_breakpoint
    if bp_id is not None and breakpoints is not None:
        bp = breakpoints.get(bp_id)
        if bp is not None:
            return Location(file=bp.file, line=bp.line)
    innermost = snapshot.threads[0].frames[-1]
    return Location(file=innermost.file, line=innermost.line)


def stack_tree(snapshot: DebugSnapshot) -> NavTree:
    """Root -> thread nodes -> frame chain, outermost frame first."""
    tree = NavTree(Mode.CALL_STACK, "debug", synthetic_root=True)
    for thread in snapshot.threads:
        parent = tree.add_node(
            tree.root_id,
            f"{thread.name}(thread)",
            "thread",
            node_id=f"thread:{thread.id}",
        )
        for index, frame in enumerate(thread.frames):
            parent = tree.add_node(
                parent,
                frame.function,
                "frame",
                node_id=f"frame:{thread.id}:{index}",
                location=Location(file=frame.file, line=frame.line),
            )
    return tree


def innermost_frame_node(snapshot: DebugSnapshot, thread_index: int = 0) -> str:
    thread = snapshot.threads[thread_index]
    return f"frame:{thread.id}:{len(thread.frames) - 1}"


def variables_document(snapshot: DebugSnapshot) -> Document:
    """Read-only split document, one ``EXPR = VALUE`` line per watch entry."""
    lines = [f"{watch.expression} = {watch.value}" for watch in snapshot.variables]
    return Document(
        path=VARIABLES_DOC_PATH, lines=lines, language_hint=Language.UNKNOWN
    )
