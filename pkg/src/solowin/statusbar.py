"""Enhanced status bar model: static widget registry plus a bounded event feed."""

from __future__ import annotations

import logging
import subprocess
import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Sequence

from .errors import ProviderFailure
from .workspace import DEFAULT_STATUS_WIDGETS, Location, ProjectConfig

logger = logging.getLogger(__name__)

FEED_CAPACITY = 100


class FeedCategory(Enum):
    BUILD = "build"
    DEBUG = "debug"
    TASKS = "tasks"
    VCS = "vcs"


class ActionVerb(Enum):
    JUMP_TO_FIRST_ERROR = "jump-to-first-error"
    JUMP_TO_LOCATION = "jump-to-location"
    TOGGLE_INLINE_WIDGETS = "toggle-inline-widgets"
    TOGGLE_CRUMB_MARKS = "toggle-crumb-marks"
    OPEN_VARIABLES_SPLIT = "open-variables-split"
    NONE = "none"
    # inline-widget button verbs share the same dispatch type
    NEXT_ERROR = "next-error"
    PREV_ERROR = "prev-error"
    IGNORE_WARNING = "ignore-warning"
    NEXT_TASK = "next-task"
    PREV_TASK = "prev-task"
    SAVE_BREAKPOINT = "save-breakpoint"


_LOCATION_REQUIRED = {
    ActionVerb.JUMP_TO_LOCATION,
    ActionVerb.IGNORE_WARNING,
    ActionVerb.SAVE_BREAKPOINT,
}
_TOGGLE_REQUIRED = {ActionVerb.TOGGLE_CRUMB_MARKS}
_TOGGLE_OPTIONAL = {ActionVerb.TOGGLE_INLINE_WIDGETS}


@dataclass(frozen=True)
class ActionRef:
    """A dispatchable click action; verbs carry exactly the payload they need."""

    verb: ActionVerb
    location: Location | None = None
    toggle_id: str | None = None

    def __post_init__(self) -> None:
        if self.verb in _LOCATION_REQUIRED:
            if self.location is None:
                raise ValueError(f"{self.verb.value} requires a location payload")
        elif self.location is not None:
            raise ValueError(f"{self.verb.value} does not take a location payload")
        if self.verb in _TOGGLE_REQUIRED:
            if self.toggle_id is None:
                raise ValueError(f"{self.verb.value} requires a toggle id payload")
        elif self.toggle_id is not None and self.verb not in _TOGGLE_OPTIONAL:
            raise ValueError(f"{self.verb.value} does not take a toggle id payload")


@dataclass(frozen=True)
class StaticWidget:
    id: str
    icon: str
    text: str  # short; frontends render at most ~8 characters
    action: ActionRef
    context_toggles: tuple[str, ...] = ()


@dataclass(frozen=True)
class FeedEvent:
    timestamp: float
    category: FeedCategory
    text: str
    action: ActionRef | None = None


class EventFeed:
    """Dynamic status messages: newest wins, bounded history, oldest evicted."""

    def __init__(self, clock: Callable[[], float] = time.monotonic):
        self._clock = clock
        self._events: deque[FeedEvent] = deque(maxlen=FEED_CAPACITY)
        self._last_ts = float("-inf")

    def post(self, category: FeedCategory, text: str, action: ActionRef | None = None) -> FeedEvent:
        """Create and push an event with a strictly increasing timestamp."""
        ts = self._clock()
        if ts <= self._last_ts:
            ts = self._last_ts + 1e-9
        event = FeedEvent(timestamp=ts, category=category, text=text, action=action)
        self.push(event)
        return event

    def push(self, event: FeedEvent) -> None:
        if any(existing is event for existing in self._events):
            return  # the same event object is never duplicated
        self._events.append(event)
        self._last_ts = max(self._last_ts, event.timestamp)

    def current(self) -> FeedEvent | None:
        return self._events[-1] if self._events else None

    def history(self, limit: int) -> list[FeedEvent]:
        """Newest-first, at most ``limit`` entries."""
        if limit < 1:
            raise ValueError("limit must be >= 1")
        return list(reversed(self._events))[:limit]

    def __len__(self) -> int:
        return len(self._events)


# ---------------------------------------------------------------------------
# static widgets

DEFAULT_TOGGLES = {
    "inline_widgets": True,
    "task_elements": True,
    "crumb_marks.errors": True,
    "crumb_marks.warnings": True,
    "crumb_marks.tasks": True,
    "crumb_marks.breakpoints": True,
}


@dataclass
class StatusLayout:
    """Persisted widget order and toggle states (``.solowin/statusbar.json``)."""

    widgets: tuple[str, ...] = DEFAULT_STATUS_WIDGETS
    toggles: dict[str, bool] = field(default_factory=lambda: dict(DEFAULT_TOGGLES))

    def to_payload(self) -> dict[str, Any]:
        return {"widgets": list(self.widgets), "toggles": dict(self.toggles)}

    @classmethod
    def from_payload(cls, payload: dict[str, Any] | None, *, fallback_widgets: Sequence[str] = DEFAULT_STATUS_WIDGETS) -> "StatusLayout":
        if payload is None:
            return cls(widgets=tuple(fallback_widgets))
        toggles = dict(DEFAULT_TOGGLES)
        toggles.update(payload.get("toggles", {}))
        return cls(widgets=tuple(payload.get("widgets", fallback_widgets)), toggles=toggles)

    def enabled(self, toggle_id: str) -> bool:
        return self.toggles.get(toggle_id, True)


@dataclass(frozen=True)
class StatusState:
    """The current facts the static widgets render."""

    error_count: int = 0
    warning_count: int = 0
    task_count: int = 0
    vcs_changed: int | None = None


def refresh_widgets(widget_ids: Sequence[str], state: StatusState) -> list[StaticWidget]:
    """Built-in widgets in configured order; unknown ids are skipped with a log."""
    widgets: list[StaticWidget] = []
    for widget_id in widget_ids:
        if widget_id == "errors":
            widgets.append(
                StaticWidget(
                    id="errors",
                    icon="error-circle",
                    text=str(state.error_count),
                    action=ActionRef(ActionVerb.JUMP_TO_FIRST_ERROR),
                    context_toggles=(
                        "inline_widgets",
                        "crumb_marks.errors",
                        "crumb_marks.warnings",
                    ),
                )
            )
        elif widget_id == "tasks":
            widgets.append(
                StaticWidget(
                    id="tasks",
                    icon="checklist",
                    text=str(state.task_count),
                    action=ActionRef(ActionVerb.NONE),
                    context_toggles=("task_elements", "crumb_marks.tasks"),
                )
            )
        elif widget_id == "vcs":
            if state.vcs_changed is None:
                continue  # no provider configured (or it failed): widget absent
            widgets.append(
                StaticWidget(
                    id="vcs",
                    icon="branch",
                    text=str(state.vcs_changed),
                    action=ActionRef(ActionVerb.NONE),
                )
            )
        else:
            logger.warning("unknown status widget id: %s", widget_id)
    return widgets


def vcs_changed_count(config: ProjectConfig) -> int:
    """Run the configured VCS status command; count = non-empty output lines."""
    if config.vcs_status_command is None:
        raise ValueError("vcs_status_command is not configured")
    try:
        result = subprocess.run(
            list(config.vcs_status_command),
            cwd=config.root,
            capture_output=True,
            text=True,
        )
    except OSError as exc:
        raise ProviderFailure(f"vcs provider failed to start: {exc}") from exc
    if result.returncode != 0:
        raise ProviderFailure(
            f"vcs provider exited with status {result.returncode}"
        )
    return sum(1 for line in result.stdout.splitlines() if line.strip())
