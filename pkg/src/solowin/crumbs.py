"""Multi-mode breadcrumbs: trees, trails, sibling popups, marks, mode switching.

Trees are immutable once built; every view (trail, siblings, marks) is a pure
function over a tree plus fact tables, so frontends can recompute freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import NodeNotFound, NoLocation
from .workspace import Location


class Mode(Enum):
    FILESYSTEM = "filesystem"
    PROJECT = "project"
    CODE_OBJECTS = "codeobjects"
    CALL_STACK = "callstack"


class ModeCause(Enum):
    MANUAL = "manual"
    DEBUG_PAUSED = "debug-paused"
    DEBUG_RESUMED = "debug-resumed"


@dataclass
class Node:
    id: str
    label: str
    kind: str  # root | dir | doc | class | function | variable | macro | thread | frame
    parent: str | None = None
    children: list[str] = field(default_factory=list)
    location: Location | None = None
    doc_path: str | None = None


class NavTree:
    """A rooted tree for one breadcrumb mode.

    ``synthetic_root`` marks container roots (CodeObjects, CallStack) that are
    never shown as trail blocks; the FileSystem root is a real block.
    """

    def __init__(
        self,
        mode: Mode,
        root_label: str = "root",
        *,
        root_kind: str = "root",
        synthetic_root: bool = False,
    ):
        self.mode = mode
        self.synthetic_root = synthetic_root
        self._nodes: dict[str, Node] = {}
        self._counter = 0
        self.root_id = self._register(Node(id="", label=root_label, kind=root_kind))

    def _register(self, node: Node) -> str:
        if not node.id:
            node.id = f"n{self._counter}"
        self._counter += 1
        if node.id in self._nodes:
            raise ValueError(f"duplicate node id: {node.id}")
        self._nodes[node.id] = node
        return node.id

    def add_node(
        self,
        parent_id: str,
        label: str,
        kind: str,
        *,
        node_id: str | None = None,
        location: Location | None = None,
        doc_path: str | None = None,
    ) -> str:
        parent = self.node(parent_id)
        child = Node(
            id=node_id or "",
            label=label,
            kind=kind,
            parent=parent.id,
            location=location,
            doc_path=doc_path,
        )
        child_id = self._register(child)
        parent.children.append(child_id)
        return child_id

    def node(self, node_id: str) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise NodeNotFound(f"no node {node_id!r} in {self.mode.value} tree") from None

    def has_node(self, node_id: str) -> bool:
        return node_id in self._nodes

    @property
    def root(self) -> Node:
        return self._nodes[self.root_id]

    def path_to(self, node_id: str) -> list[Node]:
        """Nodes from the root to ``node_id``, root first."""
        node = self.node(node_id)
        path = [node]
        while node.parent is not None:
            node = self.node(node.parent)
            path.append(node)
        path.reverse()
        return path

    def nodes(self) -> Iterable[Node]:
        return self._nodes.values()

    def find_doc(self, doc_path: str) -> Node | None:
        for node in self._nodes.values():
            if node.doc_path == doc_path:
                return node
        return None


@dataclass(frozen=True)
class Marks:
    """Aggregated per-node counts rendered by frontends as dots or numbers."""

    errors: int = 0
    warnings: int = 0
    tasks: int = 0
    breakpoints: int = 0

    def __add__(self, other: "Marks") -> "Marks":
        return Marks(
            self.errors + other.errors,
            self.warnings + other.warnings,
            self.tasks + other.tasks,
            self.breakpoints + other.breakpoints,
        )

    def any(self) -> bool:
        return bool(self.errors or self.warnings or self.tasks or self.breakpoints)

    def label(self) -> str:
        """Compact render like ``E2 W1 T3``; empty when all counts are zero."""
        parts = []
        for letter, count in (
            ("E", self.errors),
            ("W", self.warnings),
            ("T", self.tasks),
            ("B", self.breakpoints),
        ):
            if count:
                parts.append(f"{letter}{count}")
        return " ".join(parts)


FactTable = Mapping[str, Marks]

_NO_MARKS = Marks()


@dataclass(frozen=True)
class Block:
    node_id: str
    label: str
    marks: Marks = _NO_MARKS


@dataclass(frozen=True)
class BreadcrumbTrail:
    mode: Mode
    blocks: tuple[Block, ...]


def compute_marks(tree: NavTree, facts: FactTable) -> dict[str, Marks]:
    """Marks for every node: sum over descendant documents, self included."""
    totals: dict[str, Marks] = {}
    # iterative post-order so deep filesystem trees cannot hit recursion limits
    stack: list[tuple[str, bool]] = [(tree.root_id, False)]
    while stack:
        node_id, expanded = stack.pop()
        node = tree.node(node_id)
        if not expanded:
            stack.append((node_id, True))
            for child in node.children:
                stack.append((child, False))
            continue
        total = _NO_MARKS
        if node.doc_path is not None:
            total = total + facts.get(node.doc_path, _NO_MARKS)
        for child in node.children:
            total = total + totals[child]
        totals[node_id] = total
    return totals


def marks_for(tree: NavTree, node_id: str, facts: FactTable) -> Marks:
    tree.node(node_id)
    return compute_marks(tree, facts)[node_id]


def trail_for(
    tree: NavTree, current_node: str, facts: FactTable | None = None
) -> BreadcrumbTrail:
    """The breadcrumb path for a node.

    FileSystem/Project: directories ending in the document. CodeObjects:
    document then symbol chain (synthetic root hidden). CallStack: thread then
    the selected frame — the frame popup covers the rest of the chain.
    """
    path = tree.path_to(current_node)
    if tree.synthetic_root and len(path) >= 1:
        path = path[1:]
    if tree.mode is Mode.CALL_STACK and len(path) > 2:
        path = [path[0], path[-1]]
    totals = compute_marks(tree, facts) if facts is not None else None
    blocks = tuple(
        Block(
            node_id=node.id,
            label=node.label,
            marks=totals[node.id] if totals is not None else _NO_MARKS,
        )
        for node in path
    )
    return BreadcrumbTrail(mode=tree.mode, blocks=blocks)


def siblings(
    tree: NavTree, block: str, open_order: Sequence[str] = ()
) -> list[Node]:
    """Popup contents for a trail block.

    FileSystem/Project: the block's parent's children, open documents first in
    MRU order, the rest alphabetically. CallStack frames: the whole frame
    chain of the owning thread, so any frame is one jump away.
    """
    node = tree.node(block)
    if tree.mode is Mode.CALL_STACK and node.kind == "frame":
        thread = node
        while thread.parent is not None and thread.kind != "thread":
            thread = tree.node(thread.parent)
        chain: list[Node] = []
        cursor = thread
        while cursor.children:
            cursor = tree.node(cursor.children[0])
            chain.append(cursor)
        return chain
    parent = tree.node(node.parent) if node.parent is not None else node
    kids = [tree.node(child) for child in parent.children]
    if tree.mode in (Mode.FILESYSTEM, Mode.PROJECT):
        rank = {path: i for i, path in enumerate(open_order)}
        opened = sorted(
            (k for k in kids if k.doc_path in rank), key=lambda k: rank[k.doc_path]
        )
        rest = sorted((k for k in kids if k.doc_path not in rank), key=lambda k: k.label)
        return opened + rest
    return kids


@dataclass(frozen=True)
class NavCommand:
    """What a frontend should do after a popup selection."""

    kind: str  # "open" | "descend"
    file: str | None = None
    line: int | None = None


def navigate(tree: NavTree, selected_node: str) -> NavCommand:
    node = tree.node(selected_node)
    if node.doc_path is not None:
        return NavCommand(kind="open", file=node.doc_path)
    if node.location is not None:
        return NavCommand(kind="open", file=node.location.file, line=node.location.line)
    if node.children:
        return NavCommand(kind="descend")
    raise NoLocation(f"node {node.label!r} has no location and no children")


class ModeMachine:
    """Deterministic mode FSM.

    DebugPaused forces CallStack and remembers the prior mode; DebugResumed
    restores it. Manual selection wins: it also cancels a pending restore, so
    a user choice made during a pause survives the resume.
    """

    def __init__(self, initial: Mode = Mode.FILESYSTEM):
        self._mode = initial
        self._restore: Mode | None = None

    @property
    def mode(self) -> Mode:
        return self._mode

    def apply(self, cause: ModeCause, target: Mode | None = None) -> Mode:
        if cause is ModeCause.MANUAL:
            if target is None:
                raise ValueError("manual mode switch requires a target mode")
            self._mode = target
            self._restore = None
        elif cause is ModeCause.DEBUG_PAUSED:
            if self._restore is None:
                self._restore = self._mode
            self._mode = Mode.CALL_STACK
        elif cause is ModeCause.DEBUG_RESUMED:
            if self._restore is not None:
                self._mode = self._restore
                self._restore = None
        return self._mode


# ---------------------------------------------------------------------------
# tree builders


def filesystem_tree(
    paths: Sequence[str], *, mode: Mode = Mode.FILESYSTEM, root_label: str = "root"
) -> NavTree:
    """Build a directory tree from relative file paths (already filtered)."""
    tree = NavTree(mode, root_label, root_kind="dir")
    dir_ids: dict[str, str] = {"": tree.root_id}
    for path in sorted(paths):
        parts = path.split("/")
        prefix = ""
        for part in parts[:-1]:
            child_prefix = f"{prefix}/{part}" if prefix else part
            if child_prefix not in dir_ids:
                dir_ids[child_prefix] = tree.add_node(
                    dir_ids[prefix], part, "dir", node_id=f"dir:{child_prefix}"
                )
            prefix = child_prefix
        tree.add_node(
            dir_ids[prefix], parts[-1], "doc", node_id=f"doc:{path}", doc_path=path
        )
    return tree
