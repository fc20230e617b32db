/** Fixed engine states for the snapshot suite. */

import { EngineState, ViewState, emptyEngineState, initialView } from "../src/state.js";

export const SNAPSHOT_SIZE = { cols: 72, rows: 16 };

const MAIN_C_LINES = [
  "#include <stdio.h>",
  "",
  "int x = 5  return x;",
  "// TODO implement parser",
  "static int helper(void) {",
  "    /* FIXME handle overflow */",
  "    int tmp = 0;",
  "    return tmp;",
  "}",
  "int main(void) {",
  "    // TODO call helper",
  "    return helper();",
  "}",
];

export function firstErrorState(): { state: EngineState; view: ViewState } {
  const state = emptyEngineState();
  state.mode = "filesystem";
  state.trail = [
    { label: "root", marks: { errors: 2, warnings: 1, tasks: 4 } },
    { label: "src", marks: { errors: 2, warnings: 1, tasks: 4 } },
    { label: "main.c", marks: { errors: 1, warnings: 1, tasks: 3 } },
  ];
  state.file = "src/main.c";
  state.lines = MAIN_C_LINES;
  state.widgets = [
    { line: 3, kind: "first-error", text: "error[1/2]: expected ';' before 'return'" },
    { line: 4, kind: "task-nav", text: "TODO" },
    { line: 6, kind: "task-nav", text: "FIXME" },
    { line: 11, kind: "task-nav", text: "TODO" },
  ];
  state.decorations = [
    { line: 4, style: "task" },
    { line: 6, style: "task" },
    { line: 7, style: "warning" },
    { line: 11, style: "task" },
  ];
  state.statusWidgets = [
    { id: "errors", text: "2" },
    { id: "tasks", text: "4" },
  ];
  state.message = "build finished: exit 1, 2 errors, 1 warnings";
  const view = { ...initialView(), cursor: 3 };
  return { state, view };
}

export function debugPausedState(): { state: EngineState; view: ViewState } {
  const state = emptyEngineState();
  state.mode = "callstack";
  state.trail = [{ label: "main(thread)" }, { label: "g" }];
  state.file = "src/main.c";
  state.lines = MAIN_C_LINES;
  state.widgets = [
    { line: 7, kind: "breakpoint-editor", text: "breakpoint 1: condition=- enabled=on" },
  ];
  state.decorations = [];
  state.breakpoints = [7];
  state.statusWidgets = [
    { id: "errors", text: "0" },
    { id: "tasks", text: "4" },
  ];
  state.message = "debug: stopped at src/main.c:7 (breakpoint 1)";
  state.variables = ["x = 3"];
  state.debugPaused = true;
  const view = { ...initialView(), cursor: 7 };
  return { state, view };
}

export function emptyWorkspaceState(): { state: EngineState; view: ViewState } {
  return { state: emptyEngineState(), view: initialView() };
}
