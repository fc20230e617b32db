/**
 * Frame rendering: one window only.
 *
 *   row 0        breadcrumbs bar
 *   rows 1..n-2  editor region (side-by-side split while variables are shown)
 *   row n-1      status bar: dynamic message left, static widgets right
 *
 * Inline widgets render as full-width rows injected after their anchor lines;
 * decorations as a one-column style marker; the breakpoint gutter sits on the
 * right edge of the editor region. Output is plain text and deterministic for
 * a fixed state, so frames are snapshot-testable.
 */

import {
  EngineState,
  InlineWidgetView,
  PopupState,
  ViewState,
  marksLabel,
} from "./state.js";

export interface Size {
  cols: number;
  rows: number;
}

const WIDGET_SIGILS: Record<InlineWidgetView["kind"], string> = {
  "first-error": ">>",
  "warning-detail": "~~",
  "task-nav": "<>",
  "breakpoint-editor": "[]",
};

const DECORATION_CHARS = { error: "E", warning: "W", task: "T" } as const;

function pad(text: string, width: number): string {
  return text.length >= width ? text.slice(0, width) : text.padEnd(width, " ");
}

export function renderBreadcrumbs(state: EngineState, cols: number): string {
  const blocks = state.trail.map((block) => {
    const label = marksLabel(block.marks);
    return label ? `${block.label} [${label}]` : block.label;
  });
  return pad(`(${state.mode}) ${blocks.join(" > ")}`, cols);
}

interface DisplayRow {
  text: string;
  isCursor: boolean;
}

function editorRows(state: EngineState, view: ViewState, width: number): string[] {
  if (state.file === null) {
    const rows = ["", "  no document open", "  F7 build   F2 mode   F5 step", ""];
    return rows.map((row) => pad(row, width));
  }
  const widgetsByLine = new Map<number, InlineWidgetView[]>();
  for (const widget of state.widgets) {
    const bucket = widgetsByLine.get(widget.line) ?? [];
    bucket.push(widget);
    widgetsByLine.set(widget.line, bucket);
  }
  const decorationByLine = new Map<number, string>();
  for (const decoration of state.decorations) {
    if (!decorationByLine.has(decoration.line)) {
      decorationByLine.set(decoration.line, DECORATION_CHARS[decoration.style]);
    }
  }
  const breakpointLines = new Set(state.breakpoints);

  const display: DisplayRow[] = [];
  state.lines.forEach((text, index) => {
    const line = index + 1;
    const cursorMark = line === view.cursor ? ">" : " ";
    const deco = decorationByLine.get(line) ?? " ";
    const gutter = breakpointLines.has(line) ? "B" : " ";
    const body = `${cursorMark}${String(line).padStart(3)} ${deco}| ${text}`;
    display.push({ text: pad(body, width - 1) + gutter, isCursor: line === view.cursor });
    for (const widget of widgetsByLine.get(line) ?? []) {
      const row = `      ${WIDGET_SIGILS[widget.kind]} ${widget.text}`;
      display.push({ text: pad(row, width), isCursor: false });
    }
  });
  return display.slice(view.scroll).map((row) => row.text);
}

function variablesRows(variables: string[], width: number): string[] {
  const rows = ["variables", "---------"];
  for (const line of variables) {
    rows.push(line);
  }
  return rows.map((row) => pad(` ${row}`, width));
}

export function renderStatus(state: EngineState, cols: number): string {
  const right = state.statusWidgets.map((w) => `${w.id}:${w.text}`).join("  ");
  const left = state.message;
  if (right.length === 0) return pad(left, cols);
  const available = cols - right.length - 2;
  return pad(left.slice(0, Math.max(0, available)), Math.max(0, available + 2)) + right;
}

function overlayPopup(frame: string[], popup: PopupState, size: Size): string[] {
  const labels = popup.items.map((item) => {
    const marks = marksLabel(item.marks);
    return marks ? `${item.label} [${marks}]` : item.label;
  });
  const inner = Math.min(
    Math.max(popup.title.length, ...labels.map((l) => l.length + 2), 10),
    size.cols - 6,
  );
  const top = Math.max(1, Math.floor((size.rows - popup.items.length - 2) / 2));
  const left = Math.max(1, Math.floor((size.cols - inner - 4) / 2));
  const box: string[] = [];
  box.push(`+-${pad(popup.title, inner)}-+`);
  labels.forEach((label, index) => {
    const marker = index === popup.selected ? "> " : "  ";
    box.push(`| ${pad(marker + label, inner)} |`);
  });
  box.push(`+${"-".repeat(inner + 2)}+`);

  const out = [...frame];
  box.forEach((row, index) => {
    const target = top + index;
    if (target >= out.length - 1) return; // never paint over the status row
    const line = out[target]!;
    out[target] = pad(
      line.slice(0, left) + row + line.slice(left + row.length),
      size.cols,
    );
  });
  return out;
}

export function renderFrame(state: EngineState, view: ViewState, size: Size): string[] {
  const frame: string[] = [];
  frame.push(renderBreadcrumbs(state, size.cols));

  const editorHeight = size.rows - 2;
  let body: string[];
  if (state.variables !== null) {
    // variables split: debugged code left, watched expressions right
    const leftWidth = Math.floor((size.cols - 1) / 2);
    const rightWidth = size.cols - 1 - leftWidth;
    const left = editorRows(state, view, leftWidth);
    const right = variablesRows(state.variables, rightWidth);
    body = [];
    for (let i = 0; i < editorHeight; i++) {
      body.push(
        pad(left[i] ?? "", leftWidth) + "|" + pad(right[i] ?? "", rightWidth),
      );
    }
  } else {
    const rows = editorRows(state, view, size.cols);
    body = [];
    for (let i = 0; i < editorHeight; i++) {
      body.push(pad(rows[i] ?? "", size.cols));
    }
  }
  frame.push(...body);
  frame.push(renderStatus(state, size.cols));

  return view.popup ? overlayPopup(frame, view.popup, size) : frame;
}
