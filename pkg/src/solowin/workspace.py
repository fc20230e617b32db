"""Documents, project configuration, and the on-disk ``.solowin/`` stores.

All persistence lives in UTF-8 JSON files under ``<root>/.solowin/``, each a
top-level object carrying ``"version": 1``. The exact schemas are documented
in the README and enforced here on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from .errors import IoFailure, MalformedConfig, NotFound, OutsideRoot

CONFIG_DIR = ".solowin"
SCHEMA_VERSION = 1
STORE_NAMES = ("ignores", "breakpoints", "statusbar")

CLIKE_EXTENSIONS = frozenset(
    {".c", ".h", ".cc", ".hh", ".cpp", ".hpp", ".cxx", ".hxx", ".java", ".cs"}
)
DEFAULT_SOURCE_EXTENSIONS = (".c", ".h", ".cc", ".hh", ".cpp", ".hpp")
DEFAULT_TASK_KEYWORDS = frozenset({"TODO", "FIXME", "HACK"})
DEFAULT_STATUS_WIDGETS = ("errors", "tasks", "vcs")
DEFAULT_BUILD_COMMAND = ("make",)


class Language(Enum):
    CLIKE = "clike"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Location:
    """A (file, line) position; ``file`` is workspace-relative, ``line`` 1-based."""

    file: str
    line: int


@dataclass
class Document:
    """One loaded text document.

    ``lines`` are newline-stripped; ``open_rank`` is MRU position (0 = most
    recent) or None for documents not registered with a workspace.
    """

    path: str
    lines: list[str]
    language_hint: Language = Language.UNKNOWN
    open_rank: int | None = None

    def text(self) -> str:
        return "\n".join(self.lines)


@dataclass(frozen=True)
class ProjectConfig:
    root: Path
    build_command: tuple[str, ...] = DEFAULT_BUILD_COMMAND
    task_keywords: frozenset[str] = DEFAULT_TASK_KEYWORDS
    status_widgets: tuple[str, ...] = DEFAULT_STATUS_WIDGETS
    vcs_status_command: tuple[str, ...] | None = None
    source_extensions: tuple[str, ...] = DEFAULT_SOURCE_EXTENSIONS
    show_hidden: bool = False


def normalize_path(path: str) -> str:
    """Collapse separators and ``.``/``..`` segments of a root-relative path.

    Idempotent. Raises OutsideRoot when ``..`` would climb past the root.
    """
    parts: list[str] = []
    for part in path.replace("\\", "/").split("/"):
        if part in ("", "."):
            continue
        if part == "..":
            if not parts:
                raise OutsideRoot(f"path escapes project root: {path!r}")
            parts.pop()
        else:
            parts.append(part)
    return "/".join(parts)


def split_lines(text: str) -> list[str]:
    """Split editor text into lines.

    CRLF and LF both split; there is no phantom line after a final newline,
    and an empty file yields zero lines. Trailing blank lines are dropped so
    that join-with-newline followed by a re-split reproduces the list.
    """
    if not text:
        return []
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    while lines and lines[-1] == "":
        lines.pop()
    return lines


def language_for(path: str) -> Language:
    suffix = Path(path).suffix.lower()
    return Language.CLIKE if suffix in CLIKE_EXTENSIONS else Language.UNKNOWN


# ---------------------------------------------------------------------------
# project.json


def load_project(root: str | Path) -> ProjectConfig:
    """Read ``.solowin/project.json`` under ``root``, or return defaults."""
    root = Path(root)
    if not root.is_dir():
        raise NotFound(f"project root is not a directory: {root}")
    config_file = root / CONFIG_DIR / "project.json"
    if not config_file.exists():
        return ProjectConfig(root=root)
    data = _read_json(config_file, "project.json")
    _require_version(data, "project.json")

    build_command = _string_list(data, "build_command", default=list(DEFAULT_BUILD_COMMAND))
    if not build_command:
        raise MalformedConfig("project.json: build_command: must be a non-empty list")

    keywords = _string_list(data, "task_keywords", default=sorted(DEFAULT_TASK_KEYWORDS))
    if not keywords:
        raise MalformedConfig("project.json: task_keywords: must be non-empty")
    for keyword in keywords:
        if not keyword or any(ch.isspace() for ch in keyword):
            raise MalformedConfig(
                f"project.json: task_keywords: keyword {keyword!r} contains whitespace"
            )

    widgets = _string_list(data, "status_widgets", default=list(DEFAULT_STATUS_WIDGETS))
    if len(widgets) != len(set(widgets)):
        raise MalformedConfig("project.json: status_widgets: duplicate widget ids")

    vcs_command = None
    if data.get("vcs_status_command") is not None:
        vcs_raw = _string_list(data, "vcs_status_command", default=[])
        if not vcs_raw:
            raise MalformedConfig("project.json: vcs_status_command: must be a non-empty list")
        vcs_command = tuple(vcs_raw)

    extensions = _string_list(
        data, "source_extensions", default=list(DEFAULT_SOURCE_EXTENSIONS)
    )
    show_hidden = data.get("show_hidden", False)
    if not isinstance(show_hidden, bool):
        raise MalformedConfig("project.json: show_hidden: must be a boolean")

    return ProjectConfig(
        root=root,
        build_command=tuple(build_command),
        task_keywords=frozenset(keywords),
        status_widgets=tuple(widgets),
        vcs_status_command=vcs_command,
        source_extensions=tuple(extensions),
        show_hidden=show_hidden,
    )


def _read_json(path: Path, source: str) -> dict[str, Any]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoFailure(f"{source}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedConfig(f"{source}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedConfig(f"{source}: top level must be an object")
    return data


def _require_version(data: dict[str, Any], source: str) -> None:
    version = data.get("version")
    if version != SCHEMA_VERSION:
        raise MalformedConfig(
            f"{source}: version: expected {SCHEMA_VERSION}, got {version!r}"
        )


def _string_list(data: dict[str, Any], key: str, *, default: list[str]) -> list[str]:
    value = data.get(key, default)
    if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
        raise MalformedConfig(f"project.json: {key}: must be a list of strings")
    return value


# ---------------------------------------------------------------------------
# generic versioned stores


def store_path(root: str | Path, name: str) -> Path:
    if name not in STORE_NAMES:
        raise ValueError(f"unknown store name: {name!r}")
    return Path(root) / CONFIG_DIR / f"{name}.json"


def save_store(root: str | Path, name: str, payload: dict[str, Any]) -> None:
    """Write a store file, adding the schema version field."""
    path = store_path(root, name)
    document = {"version": SCHEMA_VERSION, **payload}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"{name}.json: {exc}") from exc


def load_store(root: str | Path, name: str) -> dict[str, Any] | None:
    """Read a store file; None when it does not exist yet."""
    path = store_path(root, name)
    if not path.exists():
        return None
    data = _read_json(path, f"{name}.json")
    _require_version(data, f"{name}.json")
    data.pop("version")
    _STORE_VALIDATORS[name](data)
    return data


def _validate_ignores(data: dict[str, Any]) -> None:
    entries = data.get("ignores", [])
    if not isinstance(entries, list):
        raise MalformedConfig("ignores.json: ignores: must be a list")
    for entry in entries:
        if not isinstance(entry, dict):
            raise MalformedConfig("ignores.json: ignores: entries must be objects")
        for key in ("path", "message"):
            if not isinstance(entry.get(key), str):
                raise MalformedConfig(f"ignores.json: ignores: {key}: must be a string")


def _validate_breakpoints(data: dict[str, Any]) -> None:
    entries = data.get("breakpoints", [])
    if not isinstance(entries, list):
        raise MalformedConfig("breakpoints.json: breakpoints: must be a list")
    for entry in entries:
        if not isinstance(entry, dict):
            raise MalformedConfig("breakpoints.json: breakpoints: entries must be objects")
        for key, kind in (("id", int), ("file", str), ("line", int),
                          ("enabled", bool), ("hit_count", int)):
            if not isinstance(entry.get(key), kind):
                raise MalformedConfig(f"breakpoints.json: breakpoints: {key}: wrong type")
        condition = entry.get("condition")
        if condition is not None and not isinstance(condition, str):
            raise MalformedConfig("breakpoints.json: breakpoints: condition: wrong type")


def _validate_statusbar(data: dict[str, Any]) -> None:
    widgets = data.get("widgets", [])
    if not isinstance(widgets, list) or not all(isinstance(w, str) for w in widgets):
        raise MalformedConfig("statusbar.json: widgets: must be a list of strings")
    toggles = data.get("toggles", {})
    if not isinstance(toggles, dict) or not all(
        isinstance(k, str) and isinstance(v, bool) for k, v in toggles.items()
    ):
        raise MalformedConfig("statusbar.json: toggles: must map strings to booleans")


_STORE_VALIDATORS = {
    "ignores": _validate_ignores,
    "breakpoints": _validate_breakpoints,
    "statusbar": _validate_statusbar,
}


# ---------------------------------------------------------------------------
# open-document registry


class Workspace:
    """Open-document registry with MRU ordering over a project root."""

    def __init__(self, config: ProjectConfig):
        self.config = config
        self.root = Path(config.root)
        self._documents: dict[str, Document] = {}
        self._mru: list[str] = []

    def resolve(self, path: str | Path) -> str:
        """Map any path to its normalized workspace-relative form."""
        raw = str(path)
        if Path(raw).is_absolute():
            try:
                raw = str(Path(raw).resolve().relative_to(self.root.resolve()))
            except ValueError as exc:
                raise OutsideRoot(f"path escapes project root: {path!r}") from exc
        return normalize_path(raw)

    def read_document(self, path: str | Path) -> Document:
        """Load a document without registering it (no MRU side effects)."""
        rel = self.resolve(path)
        file = self.root / rel
        if not file.is_file():
            raise NotFound(f"no such document: {rel}")
        text = file.read_text(encoding="utf-8", errors="replace")
        return Document(path=rel, lines=split_lines(text), language_hint=language_for(rel))

    def open_document(self, path: str | Path) -> Document:
        """Load (or reload) a document and move it to the front of the MRU order."""
        doc = self.read_document(path)
        self._documents[doc.path] = doc
        self._touch(doc.path)
        return doc

    def focus(self, path: str | Path) -> Document:
        """Bring an already-open document to MRU front; focusing counts as opening."""
        rel = self.resolve(path)
        if rel not in self._documents:
            raise NotFound(f"document not open: {rel}")
        self._touch(rel)
        return self._documents[rel]

    def document(self, path: str | Path) -> Document | None:
        return self._documents.get(self.resolve(path))

    def recent_open_order(self) -> list[str]:
        """Open document paths, most recently opened/focused first."""
        return list(self._mru)

    def open_documents(self) -> list[Document]:
        return [self._documents[p] for p in self._mru]

    def iter_files(
        self,
        *,
        include_hidden: bool | None = None,
        extensions: tuple[str, ...] | None = None,
    ) -> list[str]:
        """Sorted relative paths of project files; dot-entries skipped by default."""
        if include_hidden is None:
            include_hidden = self.config.show_hidden
        found: list[str] = []
        for path in self._walk(self.root, include_hidden):
            rel = path.relative_to(self.root).as_posix()
            if extensions is not None and path.suffix.lower() not in extensions:
                continue
            found.append(rel)
        return sorted(found)

    def source_files(self) -> list[str]:
        return self.iter_files(extensions=self.config.source_extensions)

    def _walk(self, directory: Path, include_hidden: bool):
        for entry in sorted(directory.iterdir()):
            if entry.name == CONFIG_DIR:
                continue
            if not include_hidden and entry.name.startswith("."):
                continue
            if entry.is_dir():
                yield from self._walk(entry, include_hidden)
            elif entry.is_file():
                yield entry

    def _touch(self, rel: str) -> None:
        if rel in self._mru:
            self._mru.remove(rel)
        self._mru.insert(0, rel)
        for rank, path in enumerate(self._mru):
            self._documents[path].open_rank = rank
