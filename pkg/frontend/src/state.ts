/**
 * Engine-state and view-state types.
 *
 * The frontend is a pure view: nothing here may exist that is not derivable
 * from engine state plus exactly three view items — cursor position, popup
 * open/closed, scroll offset.
 */

export type BreadcrumbMode = "filesystem" | "project" | "codeobjects" | "callstack";

export const MODE_CYCLE: BreadcrumbMode[] = [
  "filesystem",
  "project",
  "codeobjects",
  "callstack",
];

/** Aggregated counts a block or popup entry carries (rendered as dots). */
export interface Marks {
  errors?: number;
  warnings?: number;
  tasks?: number;
  breakpoints?: number;
}

export interface TrailBlock {
  label: string;
  marks?: Marks;
}

export type WidgetKind = "first-error" | "warning-detail" | "task-nav" | "breakpoint-editor";

/** A between-lines widget; it renders as a full-width row after `line`. */
export interface InlineWidgetView {
  line: number;
  kind: WidgetKind;
  text: string;
}

export type DecorationStyle = "error" | "warning" | "task";

export interface LineDecorationView {
  line: number;
  style: DecorationStyle;
}

export interface StatusWidgetView {
  id: string;
  text: string;
}

/** Everything the renderer needs, as fetched from the engine CLI. */
export interface EngineState {
  mode: BreadcrumbMode;
  trail: TrailBlock[];
  file: string | null;
  lines: string[];
  widgets: InlineWidgetView[];
  decorations: LineDecorationView[];
  breakpoints: number[];
  statusWidgets: StatusWidgetView[];
  message: string;
  /** variables split-document lines; non-null only while debugging is paused */
  variables: string[] | null;
  debugPaused: boolean;
}

export function emptyEngineState(): EngineState {
  return {
    mode: "filesystem",
    trail: [{ label: "root" }],
    file: null,
    lines: [],
    widgets: [],
    decorations: [],
    breakpoints: [],
    statusWidgets: [
      { id: "errors", text: "0" },
      { id: "tasks", text: "0" },
    ],
    message: "",
    variables: null,
    debugPaused: false,
  };
}

export interface PopupItem {
  label: string;
  marks?: Marks;
  /** mode-selector entries appended on the first block's popup */
  mode?: BreadcrumbMode;
}

export interface PopupState {
  title: string;
  items: PopupItem[];
  selected: number;
}

/** The only frontend-owned state (see module doc). */
export interface ViewState {
  cursor: number; // 1-based line in the current document
  scroll: number; // number of lines scrolled off the top
  popup: PopupState | null;
}

export function initialView(): ViewState {
  return { cursor: 1, scroll: 0, popup: null };
}

export function marksLabel(marks: Marks | undefined): string {
  if (!marks) return "";
  const parts: string[] = [];
  const order: [string, number | undefined][] = [
    ["E", marks.errors],
    ["W", marks.warnings],
    ["T", marks.tasks],
    ["B", marks.breakpoints],
  ];
  for (const [letter, count] of order) {
    if (count) parts.push(`${letter}${count}`);
  }
  return parts.join(" ");
}
