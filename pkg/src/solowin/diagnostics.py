"""Build-output diagnostics: parsing, first-error selection, cycling, ignores.

The recognized line grammar is ``FILE:LINE:COL: SEV: MSG`` or
``FILE:LINE: SEV: MSG`` with SEV one of error/warning/note (case-insensitive);
FILE may not contain ``:``. Everything else is build noise, not an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, Collection, Iterable, Sequence

from .errors import NoErrors, OutsideRoot
from .workspace import normalize_path


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"
    NOTE = "note"


class Direction(Enum):
    NEXT = "next"
    PREVIOUS = "previous"


@dataclass(frozen=True)
class Diagnostic:
    """One parsed compiler message, in stream order (``seq`` dense from 0)."""

    seq: int
    severity: Severity
    file: str
    line: int
    column: int | None
    message: str


@dataclass(frozen=True)
class WarningFingerprint:
    """Identity of a warning for ignore-forever purposes.

    The line number is deliberately excluded so the fingerprint survives
    line shifts between builds.
    """

    file: str
    message: str


_DIAG_RE = re.compile(
    r"^(?P<file>[^:\n]+):(?P<line>\d+)(?::(?P<col>\d+))?:"
    r" (?P<sev>error|warning|note): (?P<msg>.+)$",
    re.IGNORECASE,
)


def parse_line(text: str, seq: int = 0) -> Diagnostic | None:
    """Parse one build-output line; None when it is not a diagnostic."""
    match = _DIAG_RE.match(text)
    if match is None:
        return None
    try:
        file = normalize_path(match.group("file"))
    except OutsideRoot:
        return None
    if not file:
        return None
    column = match.group("col")
    return Diagnostic(
        seq=seq,
        severity=Severity(match.group("sev").lower()),
        file=file,
        line=int(match.group("line")),
        column=int(column) if column is not None else None,
        message=match.group("msg"),
    )


def parse_stream(lines: Iterable[str]) -> list[Diagnostic]:
    """Parse lines in emission order; non-matching lines are dropped."""
    diagnostics: list[Diagnostic] = []
    for line in lines:
        diag = parse_line(line, seq=len(diagnostics))
        if diag is not None:
            diagnostics.append(diag)
    return diagnostics


def render(diag: Diagnostic) -> str:
    """Reconstruct the canonical grammar string for a diagnostic."""
    location = f"{diag.file}:{diag.line}"
    if diag.column is not None:
        location += f":{diag.column}"
    return f"{location}: {diag.severity.value}: {diag.message}"


def first_error(diags: Sequence[Diagnostic]) -> Diagnostic | None:
    """The Error with minimal seq, or None. Notes and warnings never qualify."""
    errors = [d for d in diags if d.severity is Severity.ERROR]
    if not errors:
        return None
    return min(errors, key=lambda d: d.seq)


def cycle_errors(
    diags: Sequence[Diagnostic], current_seq: int, direction: Direction
) -> Diagnostic:
    """Next/previous Error by seq with wraparound.

    A ``current_seq`` that is not an Error's seq (stale after a rebuild)
    resets to the first error regardless of direction.
    """
    errors = sorted(
        (d for d in diags if d.severity is Severity.ERROR), key=lambda d: d.seq
    )
    if not errors:
        raise NoErrors("no errors to cycle through")
    seqs = [d.seq for d in errors]
    if current_seq not in seqs:
        return errors[0]
    index = seqs.index(current_seq)
    step = 1 if direction is Direction.NEXT else -1
    return errors[(index + step) % len(errors)]


def fingerprint(diag: Diagnostic) -> WarningFingerprint:
    return WarningFingerprint(file=diag.file, message=diag.message)


def apply_ignores(
    diags: Sequence[Diagnostic], ignore_store: Collection[WarningFingerprint]
) -> list[Diagnostic]:
    """Drop Warnings whose fingerprint is in the store; order and seq unchanged."""
    if not ignore_store:
        return list(diags)
    return [
        d
        for d in diags
        if not (d.severity is Severity.WARNING and fingerprint(d) in ignore_store)
    ]


def count_severities(diags: Sequence[Diagnostic]) -> tuple[int, int]:
    """(errors, warnings); notes are excluded from counts."""
    errors = sum(1 for d in diags if d.severity is Severity.ERROR)
    warnings = sum(1 for d in diags if d.severity is Severity.WARNING)
    return errors, warnings


# ---------------------------------------------------------------------------
# ignore-store (de)serialization; file I/O itself lives in workspace stores


def ignores_to_payload(fingerprints: Collection[WarningFingerprint]) -> dict[str, Any]:
    entries = sorted(fingerprints, key=lambda f: (f.file, f.message))
    return {"ignores": [{"path": f.file, "message": f.message} for f in entries]}


def ignores_from_payload(payload: dict[str, Any] | None) -> frozenset[WarningFingerprint]:
    if not payload:
        return frozenset()
    return frozenset(
        WarningFingerprint(file=entry["path"], message=entry["message"])
        for entry in payload.get("ignores", [])
    )
