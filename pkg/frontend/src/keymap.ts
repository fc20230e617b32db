/**
 * Key parsing and the fixed default keymap.
 *
 *   F4 next error | Shift+F4 previous error | F8 next task
 *   F9 toggle breakpoint at cursor | F2 cycle breadcrumb mode
 *   F5 step debug session | F7 start build | Enter navigate (popup)
 *
 * Unmapped keys are no-ops (null action).
 */

import {
  BreadcrumbMode,
  EngineState,
  MODE_CYCLE,
  PopupItem,
  ViewState,
} from "./state.js";

export interface Key {
  name: string; // "f4", "enter", "escape", "up", "down", "b", ...
  shift?: boolean;
}

export type EngineAction =
  | { kind: "next-error" }
  | { kind: "prev-error" }
  | { kind: "next-task" }
  | { kind: "toggle-breakpoint"; file: string | null; line: number }
  | { kind: "cycle-mode"; to: BreadcrumbMode }
  | { kind: "step-debug" }
  | { kind: "start-build" }
  | { kind: "navigate"; target: PopupItem };

/** xterm-style escape sequences for the keys the keymap uses. */
const SEQUENCES: Record<string, Key> = {
  "\x1bOP": { name: "f1" },
  "\x1bOQ": { name: "f2" },
  "\x1bOR": { name: "f3" },
  "\x1bOS": { name: "f4" },
  "\x1b[15~": { name: "f5" },
  "\x1b[17~": { name: "f6" },
  "\x1b[18~": { name: "f7" },
  "\x1b[19~": { name: "f8" },
  "\x1b[20~": { name: "f9" },
  "\x1b[1;2S": { name: "f4", shift: true },
  "\x1b[A": { name: "up" },
  "\x1b[B": { name: "down" },
  "\r": { name: "enter" },
  "\n": { name: "enter" },
  "\x1b": { name: "escape" },
  "\x03": { name: "ctrl-c" },
};

/** Decode one stdin chunk into zero or more keys. */
export function parseKeys(chunk: string): Key[] {
  const keys: Key[] = [];
  let i = 0;
  while (i < chunk.length) {
    let matched = false;
    // longest sequences first so "\x1b[1;2S" wins over bare escape
    for (const sequence of Object.keys(SEQUENCES).sort((a, b) => b.length - a.length)) {
      if (chunk.startsWith(sequence, i)) {
        keys.push(SEQUENCES[sequence]!);
        i += sequence.length;
        matched = true;
        break;
      }
    }
    if (!matched) {
      keys.push({ name: chunk[i]! });
      i += 1;
    }
  }
  return keys;
}

export function nextMode(mode: BreadcrumbMode): BreadcrumbMode {
  const index = MODE_CYCLE.indexOf(mode);
  return MODE_CYCLE[(index + 1) % MODE_CYCLE.length]!;
}

/**
 * Map a key to the engine action it requests, or null for view-only keys.
 * Pure: never mutates its inputs.
 */
export function handleKey(
  key: Key,
  state: EngineState,
  view: ViewState,
): EngineAction | null {
  if (view.popup && key.name === "enter") {
    const item = view.popup.items[view.popup.selected];
    return item ? { kind: "navigate", target: item } : null;
  }
  switch (key.name) {
    case "f4":
      return key.shift ? { kind: "prev-error" } : { kind: "next-error" };
    case "f8":
      return { kind: "next-task" };
    case "f9":
      return { kind: "toggle-breakpoint", file: state.file, line: view.cursor };
    case "f2":
      return { kind: "cycle-mode", to: nextMode(state.mode) };
    case "f5":
      return { kind: "step-debug" };
    case "f7":
      return { kind: "start-build" };
    default:
      return null;
  }
}

/** View-only key handling: cursor, scroll, popup selection, Escape. */
export function updateView(key: Key, state: EngineState, view: ViewState): ViewState {
  if (view.popup) {
    const popup = view.popup;
    if (key.name === "escape") return { ...view, popup: null };
    if (key.name === "up" && popup.selected > 0) {
      return { ...view, popup: { ...popup, selected: popup.selected - 1 } };
    }
    if (key.name === "down" && popup.selected < popup.items.length - 1) {
      return { ...view, popup: { ...popup, selected: popup.selected + 1 } };
    }
    if (key.name === "enter") return { ...view, popup: null };
    return view;
  }
  const lineCount = Math.max(state.lines.length, 1);
  if (key.name === "up") {
    return { ...view, cursor: Math.max(1, view.cursor - 1) };
  }
  if (key.name === "down") {
    return { ...view, cursor: Math.min(lineCount, view.cursor + 1) };
  }
  return view;
}
