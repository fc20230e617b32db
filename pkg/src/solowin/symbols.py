"""Heuristic symbol indexing and task-comment scanning for C-like sources.

This is deliberately not a parser. A line/statement-oriented scan with brace
depth tracking covers the supported pattern list (see README): ``#define``,
top-level ``class``/``struct`` bodies, top-level function definitions with
single-line signatures, top-level single-declarator variables, and methods
directly inside a class body. String literals are tracked so quoted text never
opens comments, braces, or tasks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .crumbs import Mode, NavTree
from .errors import UnsupportedLanguage
from .workspace import Document, Language, Location


class SymbolKind(Enum):
    CLASS = "class"
    FUNCTION = "function"
    GLOBAL_VARIABLE = "variable"
    MACRO = "macro"


@dataclass(frozen=True)
class Symbol:
    kind: SymbolKind
    name: str
    container: str | None  # enclosing class, functions only
    file: str
    line: int


@dataclass(frozen=True)
class Task:
    keyword: str
    text: str
    file: str
    line: int


# ---------------------------------------------------------------------------
# comment/string scanner shared by the indexer and the task scanner


@dataclass
class _LineScan:
    code: str  # source text with comments and literal bodies blanked out
    comments: list[tuple[int, str]]  # (column of comment text, text)


class _Scanner:
    """Per-line comment/string state machine; block comments span lines."""

    def __init__(self) -> None:
        self.in_block_comment = False

    def scan(self, line: str) -> _LineScan:
        code: list[str] = []
        comments: list[tuple[int, str]] = []
        i, n = 0, len(line)
        if self.in_block_comment:
            end = line.find("*/")
            if end == -1:
                comments.append((0, line))
                return _LineScan("", comments)
            comments.append((0, line[:end]))
            code.extend(" " * (end + 2))
            i = end + 2
            self.in_block_comment = False
        while i < n:
            ch = line[i]
            nxt = line[i + 1] if i + 1 < n else ""
            if ch == "/" and nxt == "/":
                comments.append((i + 2, line[i + 2 :]))
                break
            if ch == "/" and nxt == "*":
                end = line.find("*/", i + 2)
                if end == -1:
                    comments.append((i + 2, line[i + 2 :]))
                    code.extend(" " * (n - i))
                    self.in_block_comment = True
                    i = n
                else:
                    comments.append((i + 2, line[i + 2 : end]))
                    code.extend(" " * (end + 2 - i))
                    i = end + 2
                continue
            if ch in "\"'":
                # blank literal bodies, keep the quotes; unterminated literals
                # end at EOL so one stray quote cannot poison the whole file
                quote = ch
                code.append(quote)
                i += 1
                while i < n:
                    if line[i] == "\\" and i + 1 < n:
                        code.extend("  ")
                        i += 2
                        continue
                    if line[i] == quote:
                        code.append(quote)
                        i += 1
                        break
                    code.append(" ")
                    i += 1
                continue
            code.append(ch)
            i += 1
        return _LineScan("".join(code), comments)


def _is_word_char(ch: str) -> bool:
    return bool(ch) and (ch.isalnum() or ch == "_")


# ---------------------------------------------------------------------------
# task scanning


def scan_tasks(document: Document, keywords: Iterable[str]) -> list[Task]:
    """Whole-word, case-sensitive keyword hits inside comment regions.

    The task text is the rest of the comment (on that line) after the keyword,
    trimmed. One task per occurrence, ordered by (line, column).
    """
    keyword_list = sorted(set(keywords))
    scanner = _Scanner()
    tasks: list[Task] = []
    for lineno, line in enumerate(document.lines, 1):
        scanned = scanner.scan(line)
        for col, text in scanned.comments:
            hits: list[tuple[int, str]] = []
            for keyword in keyword_list:
                start = 0
                while True:
                    pos = text.find(keyword, start)
                    if pos == -1:
                        break
                    before = text[pos - 1] if pos > 0 else ""
                    after_idx = pos + len(keyword)
                    after = text[after_idx] if after_idx < len(text) else ""
                    if not _is_word_char(before) and not _is_word_char(after):
                        hits.append((pos, keyword))
                    start = pos + len(keyword)
            hits.sort()
            for pos, keyword in hits:
                remainder = text[pos + len(keyword) :].strip()
                tasks.append(
                    Task(keyword=keyword, text=remainder, file=document.path, line=lineno)
                )
    return tasks


# ---------------------------------------------------------------------------
# symbol indexing

_DEFINE_RE = re.compile(r"^\s*#\s*define\s+([A-Za-z_]\w*)")
_PREPROC_RE = re.compile(r"^\s*#")
_CLASS_RE = re.compile(r"^(?:class|struct)\s+([A-Za-z_]\w*)\s*(.*)$", re.DOTALL)
_FUNC_RE = re.compile(
    r"^(?P<ret>(?:[A-Za-z_]\w*[\s*&]+)+)(?P<name>[A-Za-z_]\w*)\s*"
    r"\((?P<args>[^()]*)\)\s*(?:const\s*)?$"
)
_VAR_RE = re.compile(
    r"^(?P<type>(?:[A-Za-z_]\w*[\s*&]+)+)(?P<name>[A-Za-z_]\w*)\s*(?:\[[^\]]*\]\s*)?$"
)

_SKIP_STATEMENT_KEYWORDS = {
    "typedef", "using", "extern", "friend", "template", "return", "goto",
    "break", "continue", "throw", "namespace", "case", "delete", "else",
}
_NON_NAME_KEYWORDS = {
    "if", "else", "for", "while", "switch", "do", "return", "sizeof",
    "case", "default", "goto", "new", "delete", "catch", "try",
}


@dataclass
class _ClassContext:
    name: str
    body_depth: int


def index_file(document: Document) -> list[Symbol]:
    """Extract classes, functions, global variables, and macros."""
    if document.language_hint is not Language.CLIKE:
        raise UnsupportedLanguage(f"cannot index {document.path!r}")

    scanner = _Scanner()
    symbols: list[Symbol] = []
    depth = 0
    class_stack: list[_ClassContext] = []
    chunk: list[str] = []
    chunk_line = 0
    preproc_continues = False

    def flush(delimiter: str, lineno: int) -> None:
        nonlocal depth, chunk, chunk_line
        text = " ".join("".join(chunk).split())
        start_line = chunk_line or lineno
        chunk = []
        chunk_line = 0
        if delimiter == "{":
            container = None
            if class_stack and depth == class_stack[-1].body_depth:
                container = class_stack[-1].name
            opened_class = _classify_opener(
                text, depth, container, document.path, start_line, symbols
            )
            depth += 1
            if opened_class is not None:
                class_stack.append(_ClassContext(opened_class, depth))
        elif delimiter == ";":
            _classify_statement(text, depth, document.path, start_line, symbols)
        else:  # "}"
            depth = max(0, depth - 1)
            while class_stack and depth < class_stack[-1].body_depth:
                class_stack.pop()

    for lineno, raw in enumerate(document.lines, 1):
        scanned = scanner.scan(raw)
        code = scanned.code
        if preproc_continues:
            preproc_continues = code.rstrip().endswith("\\")
            continue
        define = _DEFINE_RE.match(code)
        if define:
            symbols.append(
                Symbol(SymbolKind.MACRO, define.group(1), None, document.path, lineno)
            )
            preproc_continues = code.rstrip().endswith("\\")
            continue
        if _PREPROC_RE.match(code):
            preproc_continues = code.rstrip().endswith("\\")
            continue
        for ch in code:
            if ch in ";{}":
                flush(ch, lineno)
            else:
                if chunk_line == 0 and not ch.isspace():
                    chunk_line = lineno
                chunk.append(ch)
        chunk.append("\n")

    symbols.sort(key=lambda s: s.line)
    return symbols


def _classify_opener(
    text: str,
    depth: int,
    container: str | None,
    path: str,
    line: int,
    out: list[Symbol],
) -> str | None:
    """Classify a chunk ending in ``{``; returns a class name when one opens."""
    if not text:
        return None
    if depth == 0:
        match = _CLASS_RE.match(text)
        if match:
            name, tail = match.groups()
            tail = tail.strip()
            if tail == "" or tail.startswith(":") or tail == "final" or tail.startswith("final "):
                out.append(Symbol(SymbolKind.CLASS, name, None, path, line))
                return name
    if text.endswith("="):
        # brace initializer: `int table[3] = {...};`
        left = text[:-1].strip()
        if depth == 0 and "(" not in left:
            _emit_variable(left, path, line, out)
        return None
    if depth == 0 or container is not None:
        match = _FUNC_RE.match(text)
        if match:
            name = match.group("name")
            ret_first = match.group("ret").replace("*", " ").replace("&", " ").split()[0]
            if name not in _NON_NAME_KEYWORDS and ret_first not in _NON_NAME_KEYWORDS:
                out.append(
                    Symbol(
                        SymbolKind.FUNCTION,
                        name,
                        container if depth > 0 else None,
                        path,
                        line,
                    )
                )
    return None


def _classify_statement(
    text: str, depth: int, path: str, line: int, out: list[Symbol]
) -> None:
    if depth != 0 or not text:
        return
    tokens = text.split()
    first = tokens[0]
    if first in _SKIP_STATEMENT_KEYWORDS:
        return
    if first in ("class", "struct") and len(tokens) < 3:
        return  # forward declaration
    eq = text.find("=")
    left = text[:eq] if eq != -1 else text
    if "(" in left:
        return  # prototype or call-like; not a variable
    _emit_variable(left.strip(), path, line, out)


def _emit_variable(left: str, path: str, line: int, out: list[Symbol]) -> None:
    match = _VAR_RE.match(left)
    if not match:
        return
    name = match.group("name")
    type_first = match.group("type").replace("*", " ").replace("&", " ").split()[0]
    if name in _NON_NAME_KEYWORDS or type_first in _NON_NAME_KEYWORDS:
        return
    out.append(Symbol(SymbolKind.GLOBAL_VARIABLE, name, None, path, line))


def symbol_at(symbols: Sequence[Symbol], line: int) -> Symbol | None:
    """The nearest symbol declared at or above ``line`` (cursor anchoring)."""
    best: Symbol | None = None
    for symbol in symbols:
        if symbol.line <= line and (best is None or symbol.line >= best.line):
            best = symbol
    return best


# ---------------------------------------------------------------------------
# code-objects tree


def build_code_tree(documents: Sequence[Document]) -> NavTree:
    """Root -> document nodes -> top-level symbols -> class-contained functions."""
    tree = NavTree(Mode.CODE_OBJECTS, "code", synthetic_root=True)
    for document in documents:
        doc_id = tree.add_node(
            tree.root_id,
            document.path.rsplit("/", 1)[-1],
            "doc",
            node_id=f"doc:{document.path}",
            doc_path=document.path,
        )
        if document.language_hint is not Language.CLIKE:
            continue
        class_ids: dict[str, str] = {}
        for symbol in index_file(document):
            parent = doc_id
            if symbol.container is not None and symbol.container in class_ids:
                parent = class_ids[symbol.container]
            node_id = tree.add_node(
                parent,
                symbol.name,
                symbol.kind.value,
                node_id=f"sym:{document.path}:{symbol.line}:{symbol.name}",
                location=Location(file=symbol.file, line=symbol.line),
            )
            if symbol.kind is SymbolKind.CLASS:
                class_ids[symbol.name] = node_id
    return tree
