"""Build execution: spawn the configured command, stream merged output, emit events.

Each session emits exactly one Started, then one OutputLine per merged
stdout/stderr line in arrival order, then one Finished carrying the exit code
and post-ignore diagnostic counts. A failing build is a normal Finished; only
a missing or unspawnable executable is an error.
"""

from __future__ import annotations

import queue
import subprocess
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Collection, Iterator

from .diagnostics import (
    Diagnostic,
    WarningFingerprint,
    apply_ignores,
    count_severities,
    parse_stream,
)
from .errors import AlreadyFinished, CommandNotFound, SpawnFailure
from .workspace import ProjectConfig

CANCEL_EXIT_CODE = -1


class BuildEventKind(Enum):
    STARTED = "started"
    OUTPUT_LINE = "output-line"
    FINISHED = "finished"


@dataclass(frozen=True)
class BuildEvent:
    kind: BuildEventKind
    line: str | None = None
    exit_code: int | None = None
    error_count: int | None = None
    warning_count: int | None = None


class BuildSession:
    """One running (or finished) build; events come from an ordered queue."""

    def __init__(
        self, process: subprocess.Popen, ignores: Collection[WarningFingerprint]
    ):
        self._process = process
        self._ignores = frozenset(ignores)
        self._queue: queue.Queue[BuildEvent] = queue.Queue()
        self._lock = threading.Lock()
        self._cancelled = False
        self._finished = False
        self._transcript: list[str] = []
        self._diagnostics: list[Diagnostic] = []
        self._queue.put(BuildEvent(BuildEventKind.STARTED))
        self._thread = threading.Thread(target=self._pump, daemon=True)
        self._thread.start()

    @property
    def finished(self) -> bool:
        with self._lock:
            return self._finished

    @property
    def transcript(self) -> list[str]:
        """Raw merged output lines captured so far (the build log)."""
        return list(self._transcript)

    @property
    def diagnostics(self) -> list[Diagnostic]:
        """Post-ignore diagnostics; populated when the session finishes."""
        return list(self._diagnostics)

    def next_event(self, timeout: float | None = None) -> BuildEvent:
        return self._queue.get(timeout=timeout)

    def events(self, timeout: float | None = 60.0) -> Iterator[BuildEvent]:
        """Yield events in order until (and including) Finished."""
        while True:
            event = self._queue.get(timeout=timeout)
            yield event
            if event.kind is BuildEventKind.FINISHED:
                return

    def wait(self, timeout: float | None = 60.0) -> list[BuildEvent]:
        """Drain remaining events through Finished."""
        return list(self.events(timeout=timeout))

    def cancel(self) -> None:
        """Terminate the build; Finished then carries the cancel sentinel code."""
        with self._lock:
            if self._finished:
                raise AlreadyFinished("build session already finished")
            self._cancelled = True
        self._process.terminate()

    def _pump(self) -> None:
        assert self._process.stdout is not None
        try:
            for raw in self._process.stdout:
                line = raw.rstrip("\n").rstrip("\r")
                self._transcript.append(line)
                self._queue.put(BuildEvent(BuildEventKind.OUTPUT_LINE, line=line))
            code = self._process.wait()
        except Exception:  # pragma: no cover - defensive: never hang the consumer
            code = CANCEL_EXIT_CODE
        with self._lock:
            self._finished = True
            cancelled = self._cancelled
        diags = apply_ignores(parse_stream(self._transcript), self._ignores)
        self._diagnostics = diags
        errors, warnings = count_severities(diags)
        self._queue.put(
            BuildEvent(
                BuildEventKind.FINISHED,
                exit_code=CANCEL_EXIT_CODE if cancelled else code,
                error_count=errors,
                warning_count=warnings,
            )
        )


def start_build(
    config: ProjectConfig, ignores: Collection[WarningFingerprint] = frozenset()
) -> BuildSession:
    """Spawn the configured build command in the project root.

    No shell interpretation; stdout and stderr are merged so interleaved
    diagnostics keep their arrival order. Non-UTF-8 bytes are replaced.
    """
    command = list(config.build_command)
    if not command:
        raise SpawnFailure("build_command is empty")
    try:
        process = subprocess.Popen(
            command,
            cwd=config.root,
            stdout=subprocess.PIPE,
            stderr=subprocess.STDOUT,
            text=True,
            encoding="utf-8",
            errors="replace",
        )
    except FileNotFoundError as exc:
        raise CommandNotFound(f"build command not found: {command[0]}") from exc
    except OSError as exc:
        raise SpawnFailure(f"could not start build: {exc}") from exc
    return BuildSession(process, ignores)


class BuildRunner:
    """Serializes sessions: starting a new build cancels a still-running one."""

    def __init__(self) -> None:
        self._current: BuildSession | None = None

    @property
    def current(self) -> BuildSession | None:
        return self._current

    def start(
        self, config: ProjectConfig, ignores: Collection[WarningFingerprint] = frozenset()
    ) -> BuildSession:
        previous = self._current
        if previous is not None and not previous.finished:
            try:
                previous.cancel()
            except AlreadyFinished:
                pass
            previous.wait()
        self._current = start_build(config, ignores)
        return self._current
