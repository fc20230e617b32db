"""Shared fixtures: the golden fixture project, fake compilers, generators."""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import pytest

from solowin.crumbs import Marks, Mode, NavTree
from solowin.diagnostics import Diagnostic, Severity
from solowin.workspace import Document, language_for, split_lines

# ---------------------------------------------------------------------------
# the golden fixture project: 2 errors + 1 warning, 3 TODO + 1 FIXME,
# 2 decoy identifiers (lowercase `todo`, TODO inside a string literal)

MAIN_C = """\
#include <stdio.h>

int x = 5  return x;
// TODO implement parser
static int helper(void) {
    /* FIXME handle overflow */
    int tmp = 0;
    return tmp;
}
int main(void) {
    // TODO call helper
    return helper();
}
"""

UTIL_C = """\
/* utility table */
// TODO tune constants
static int todo = 1;
static i32 value = 9;
const char *note = "/* TODO not a task */";
"""

GOLDEN_COMPILER_LINES = [
    "compiling src/main.c",
    "src/main.c:3:5: error: expected ';' before 'return'",
    "src/main.c:7:9: warning: unused variable 'tmp'",
    "src/util.c:4:8: error: unknown type name 'i32'",
]

GOLDEN_TRACE_EVENTS = [
    {
        "ev": "stopped",
        "bp": 1,
        "threads": [
            {
                "id": 1,
                "name": "main",
                "frames": [
                    {"fn": "main", "file": "src/main.c", "line": 12},
                    {"fn": "f", "file": "src/main.c", "line": 8},
                    {"fn": "g", "file": "src/main.c", "line": 7},
                ],
            }
        ],
        "vars": [{"expr": "x", "value": "3"}],
    },
    {"ev": "exited", "code": 0},
]

GOLDEN_DIR = Path(__file__).parent / "golden"


def write_project_config(root: Path, **fields) -> None:
    config = {"version": 1}
    config.update(fields)
    (root / ".solowin").mkdir(parents=True, exist_ok=True)
    (root / ".solowin" / "project.json").write_text(
        json.dumps(config, indent=2), encoding="utf-8"
    )


def write_fake_compiler(
    root: Path, lines: list[str], exit_code: int, *, name: str = "fake_cc.py"
) -> list[str]:
    """A deterministic stand-in compiler: prints fixed lines, exits with a code."""
    body = ["import sys"]
    for line in lines:
        body.append(f"print({line!r}, flush=True)")
    body.append(f"sys.exit({exit_code})")
    (root / name).write_text("\n".join(body) + "\n", encoding="utf-8")
    return [sys.executable, name]


def write_slow_compiler(
    root: Path,
    first_lines: list[str],
    rest_lines: list[str],
    *,
    delay: float = 30.0,
    name: str = "slow_cc.py",
) -> list[str]:
    """Prints ``first_lines``, sleeps, then the rest (for cancellation tests)."""
    body = ["import sys, time"]
    for line in first_lines:
        body.append(f"print({line!r}, flush=True)")
    body.append(f"time.sleep({delay})")
    for line in rest_lines:
        body.append(f"print({line!r}, flush=True)")
    body.append("sys.exit(0)")
    (root / name).write_text("\n".join(body) + "\n", encoding="utf-8")
    return [sys.executable, name]


def make_fixture_project(root: Path) -> Path:
    (root / "src").mkdir(parents=True)
    (root / "src" / "main.c").write_text(MAIN_C, encoding="utf-8")
    (root / "src" / "util.c").write_text(UTIL_C, encoding="utf-8")
    command = write_fake_compiler(root, GOLDEN_COMPILER_LINES, 1)
    write_project_config(root, build_command=command)
    return root


def make_clean_project(root: Path) -> Path:
    """A task-free, diagnostics-free project for unmarked-trail tests."""
    (root / "src").mkdir(parents=True)
    (root / "src" / "a.c").write_text("int a_value = 1;\n", encoding="utf-8")
    (root / "src" / "z.c").write_text("int z_value = 2;\n", encoding="utf-8")
    command = write_fake_compiler(root, [], 0)
    write_project_config(root, build_command=command)
    return root


def write_trace(path: Path, events: list[dict]) -> Path:
    path.write_text(
        "".join(json.dumps(event) + "\n" for event in events), encoding="utf-8"
    )
    return path


@pytest.fixture
def fixture_project(tmp_path: Path) -> Path:
    return make_fixture_project(tmp_path / "proj")


@pytest.fixture
def clean_project(tmp_path: Path) -> Path:
    return make_clean_project(tmp_path / "clean")


def make_document(text: str, path: str = "test.c") -> Document:
    return Document(path=path, lines=split_lines(text), language_hint=language_for(path))


# ---------------------------------------------------------------------------
# random generators (seeded by callers)

_FILE_CHARS = "abcdefghijklmnopqrstuvwxyz0123456789_-"
_MSG_CHARS = (
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    " '\"()[]<>,.;=+-*/"
)


def gen_rel_path(rng: random.Random) -> str:
    parts = [
        "".join(rng.choice(_FILE_CHARS) for _ in range(rng.randint(1, 8)))
        for _ in range(rng.randint(1, 3))
    ]
    return "/".join(parts) + rng.choice([".c", ".h", ".cpp"])


def gen_message(rng: random.Random) -> str:
    first = rng.choice(_MSG_CHARS.strip())
    rest = "".join(rng.choice(_MSG_CHARS) for _ in range(rng.randint(0, 40)))
    return first + rest


def gen_diagnostic(rng: random.Random, seq: int) -> Diagnostic:
    return Diagnostic(
        seq=seq,
        severity=rng.choice(list(Severity)),
        file=gen_rel_path(rng),
        line=rng.randint(1, 9999),
        column=rng.randint(1, 400) if rng.random() < 0.5 else None,
        message=gen_message(rng),
    )


def gen_diagnostic_list(rng: random.Random, n: int | None = None) -> list[Diagnostic]:
    count = rng.randint(0, 12) if n is None else n
    return [gen_diagnostic(rng, seq) for seq in range(count)]


def gen_noise_line(rng: random.Random) -> str:
    file = gen_rel_path(rng)
    templates = [
        "make: *** [all] Error 1",
        f"gcc -O2 -c {file}",
        "In function 'main':",
        f"{file}: fatal: no location prefix here",
        f"{file}:{rng.randint(1, 99)}: remark: not a recognized severity",
        "  ^~~~~~~~",
        "collect2: ld returned 1 exit status",
        " ".join(gen_message(rng).replace(":", " ").split()[:4] or ["noise"]),
        f"[{rng.randint(1, 9)}/{rng.randint(10, 99)}] Compiling {file}",
    ]
    return rng.choice(templates)


def gen_tree(rng: random.Random, *, max_depth: int = 6, max_fanout: int = 8) -> NavTree:
    """Random FileSystem-mode tree with doc leaves carrying fact keys."""
    tree = NavTree(Mode.FILESYSTEM, "root", root_kind="dir")
    counter = 0

    def grow(parent: str, depth: int) -> None:
        nonlocal counter
        if depth >= max_depth:
            return
        for _ in range(rng.randint(0, max_fanout)):
            counter += 1
            if counter > 60:
                return
            if rng.random() < 0.5 or depth == max_depth - 1:
                tree.add_node(
                    parent, f"f{counter}.c", "doc", doc_path=f"p{counter}.c"
                )
            else:
                child = tree.add_node(parent, f"d{counter}", "dir")
                grow(child, depth + 1)

    grow(tree.root_id, 0)
    return tree


def gen_facts(rng: random.Random, tree: NavTree) -> dict[str, Marks]:
    facts: dict[str, Marks] = {}
    for node in tree.nodes():
        if node.doc_path is not None and rng.random() < 0.7:
            facts[node.doc_path] = Marks(
                errors=rng.randint(0, 4),
                warnings=rng.randint(0, 4),
                tasks=rng.randint(0, 4),
                breakpoints=rng.randint(0, 2),
            )
    return facts


def marks_oracle(tree: NavTree, node_id: str, facts: dict[str, Marks]) -> Marks:
    """Brute force: walk every descendant, sum document facts."""
    total = Marks()
    stack = [node_id]
    while stack:
        node = tree.node(stack.pop())
        if node.doc_path is not None and node.doc_path in facts:
            total = total + facts[node.doc_path]
        stack.extend(node.children)
    return total
