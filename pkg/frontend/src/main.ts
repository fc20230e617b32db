/**
 * Interactive terminal frontend: editor pane with breadcrumbs on top and the
 * enhanced status bar at the bottom. One window; there is nothing to dock.
 *
 * Keys: F4/Shift+F4 next/prev error, F8 next task, F9 toggle breakpoint,
 * F2 cycle mode, F5 step debug trace, F7 build, p popup, arrows move, q quit.
 */

import process from "node:process";
import { readdirSync } from "node:fs";
import { dirname, basename } from "node:path";
import { EngineClient, parseTrail } from "./cli.js";
import { EngineAction, handleKey, parseKeys, updateView } from "./keymap.js";
import { openBlockPopup } from "./popup.js";
import { renderFrame } from "./render.js";
import {
  EngineState,
  ViewState,
  emptyEngineState,
  initialView,
} from "./state.js";
import { breakpointLines, toggleBreakpoint } from "./store.js";

interface Session {
  client: EngineClient;
  state: EngineState;
  view: ViewState;
  openOrder: string[]; // MRU labels of documents opened this session
  tracePath: string | null;
  stepsTaken: number;
}

/** Fold the transcript of `debug TRACE step...` into the engine state. */
export function applyDebugOutput(state: EngineState, output: string): EngineState {
  const lines = output.trimEnd().split("\n");
  let lastStepIndex = -1;
  for (let i = 0; i < lines.length; i++) {
    if (/^step \d+: /.test(lines[i]!)) lastStepIndex = i;
  }
  if (lastStepIndex < 0) return state;
  const block = lines.slice(lastStepIndex);
  const paused = /: stopped at /.test(block[0]!);
  const next = { ...state, debugPaused: paused };
  next.message = block[0]!.replace(/^step \d+: /, "debug: ");
  next.variables = null;
  for (const row of block.slice(1)) {
    const mode = /^mode: (\w+)$/.exec(row);
    if (mode) {
      next.mode = mode[1] as EngineState["mode"];
      continue;
    }
    const trail = /^trail: (.*)$/.exec(row);
    if (trail) {
      next.trail = parseTrail(trail[1]!);
      continue;
    }
    if (paused) next.variables = [...(next.variables ?? []), row];
  }
  if (paused && next.variables === null) next.variables = [];
  return next;
}

function refreshDocument(session: Session, file: string, build = false): void {
  const annotated = session.client.annotate(file, build);
  session.state = {
    ...session.state,
    file,
    lines: annotated.lines,
    widgets: annotated.widgets,
    decorations: annotated.decorations,
    breakpoints: breakpointLines(session.client.root, file),
  };
  const label = basename(file);
  session.openOrder = [label, ...session.openOrder.filter((l) => l !== label)];
}

function refreshChrome(session: Session, build = false): void {
  session.state.statusWidgets = session.client.status(build);
  if (session.state.file && session.state.mode !== "callstack") {
    const mode = session.state.mode === "filesystem" ? "fs" : session.state.mode;
    const cliMode = mode === "codeobjects" ? "code" : mode;
    session.state.trail = session.client.trail(cliMode, session.state.file);
  }
}

function jumpToNext(session: Session, lines: number[], backwards = false): void {
  if (lines.length === 0) return;
  const sorted = [...lines].sort((a, b) => a - b);
  const cursor = session.view.cursor;
  let target: number | undefined;
  if (backwards) {
    target = [...sorted].reverse().find((line) => line < cursor) ?? sorted[sorted.length - 1];
  } else {
    target = sorted.find((line) => line > cursor) ?? sorted[0];
  }
  if (target !== undefined) session.view = { ...session.view, cursor: target };
}

function errorLines(state: EngineState): number[] {
  const lines = state.decorations
    .filter((d) => d.style === "error")
    .map((d) => d.line);
  for (const widget of state.widgets) {
    if (widget.kind === "first-error") lines.push(widget.line);
  }
  return lines;
}

function taskLines(state: EngineState): number[] {
  return state.widgets.filter((w) => w.kind === "task-nav").map((w) => w.line);
}

function perform(session: Session, action: EngineAction): void {
  switch (action.kind) {
    case "start-build": {
      const result = session.client.build();
      session.state.message = result.message;
      if (session.state.file) refreshDocument(session, session.state.file, true);
      refreshChrome(session);
      break;
    }
    case "next-error":
      jumpToNext(session, errorLines(session.state));
      break;
    case "prev-error":
      jumpToNext(session, errorLines(session.state), true);
      break;
    case "next-task":
      jumpToNext(session, taskLines(session.state));
      break;
    case "toggle-breakpoint": {
      if (!action.file) break;
      toggleBreakpoint(session.client.root, action.file, action.line);
      session.state.breakpoints = breakpointLines(session.client.root, action.file);
      break;
    }
    case "cycle-mode": {
      session.state.mode = action.to;
      refreshChrome(session);
      break;
    }
    case "step-debug": {
      if (!session.tracePath) {
        session.state.message = "no trace loaded (pass --trace FILE)";
        break;
      }
      session.stepsTaken += 1;
      const args = ["debug", session.tracePath];
      for (let i = 0; i < session.stepsTaken; i++) args.push("step");
      const result = session.client.run(...args);
      session.state = applyDebugOutput(session.state, result.stdout);
      break;
    }
    case "navigate": {
      if (action.target.mode) {
        session.state.mode = action.target.mode;
        refreshChrome(session);
      } else if (session.state.file) {
        const dir = dirname(session.state.file);
        const file = dir === "." ? action.target.label : `${dir}/${action.target.label}`;
        try {
          refreshDocument(session, file);
          session.view = initialView();
        } catch {
          session.state.message = `cannot open ${file}`;
        }
      }
      break;
    }
  }
}

function openPopupForCurrentBlock(session: Session): void {
  const state = session.state;
  if (!state.file) return;
  const dir = dirname(state.file);
  let entries: string[] = [];
  try {
    entries = readdirSync(
      dir === "." ? session.client.root : `${session.client.root}/${dir}`,
    ).filter((name) => !name.startsWith("."));
  } catch {
    entries = [];
  }
  session.view = {
    ...session.view,
    popup: openBlockPopup({
      blockLabel: basename(state.file),
      siblings: entries.map((label) => ({ label })),
      openOrder: session.openOrder,
      isFirstBlock: false,
    }),
  };
}

function main(): void {
  const argv = process.argv.slice(2);
  let root = ".";
  let file: string | null = null;
  let trace: string | null = null;
  let engineCommand: string[] | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i]!;
    if (arg === "--root") root = argv[++i] ?? ".";
    else if (arg === "--trace") trace = argv[++i] ?? null;
    else if (arg === "--engine") engineCommand = (argv[++i] ?? "").split(" ");
    else file = arg;
  }

  const session: Session = {
    client: new EngineClient({ root, command: engineCommand }),
    state: emptyEngineState(),
    view: initialView(),
    openOrder: [],
    tracePath: trace,
    stepsTaken: 0,
  };
  if (file) refreshDocument(session, file);
  refreshChrome(session);

  const out = process.stdout;
  const size = () => ({
    cols: out.columns ?? 80,
    rows: out.rows ?? 24,
  });
  const draw = () => {
    out.write("\x1b[2J\x1b[H");
    out.write(renderFrame(session.state, session.view, size()).join("\n"));
  };

  process.stdin.setRawMode?.(true);
  process.stdin.resume();
  process.stdin.setEncoding("utf-8");
  out.write("\x1b[?1049h"); // alternate screen
  draw();

  process.stdin.on("data", (chunk: string) => {
    for (const key of parseKeys(chunk)) {
      if (key.name === "q" || key.name === "ctrl-c") {
        out.write("\x1b[?1049l");
        process.exit(0);
      }
      if (key.name === "p" && !session.view.popup) {
        openPopupForCurrentBlock(session);
        continue;
      }
      const action = handleKey(key, session.state, session.view);
      session.view = updateView(key, session.state, session.view);
      if (action) perform(session, action);
    }
    draw();
  });
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(basename(process.argv[1]));
if (invokedDirectly) {
  main();
}
