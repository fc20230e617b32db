/**
 * Engine client: the frontend's only path to the engine is its CLI.
 *
 * Every fetch spawns `solowin --root <dir> --deterministic <command>` and
 * parses the byte-stable text the CLI prints. The parsers are pure and
 * exported for tests.
 */

import { spawnSync } from "node:child_process";
import {
  EngineState,
  InlineWidgetView,
  LineDecorationView,
  StatusWidgetView,
  TrailBlock,
  Marks,
} from "./state.js";

export interface CliResult {
  code: number;
  stdout: string;
  stderr: string;
}

export interface EngineClientOptions {
  root: string;
  /** how to invoke the CLI, e.g. ["solowin"] or ["python3", "-m", "solowin"] */
  command?: string[];
}

const DEFAULT_COMMAND = ["python3", "-m", "solowin"];

// ---------------------------------------------------------------------------
// parsers (pure)

function parseMarks(label: string): Marks | undefined {
  const marks: Marks = {};
  const names = { E: "errors", W: "warnings", T: "tasks", B: "breakpoints" } as const;
  let any = false;
  for (const part of label.split(" ")) {
    const match = /^([EWTB])(\d+)$/.exec(part);
    if (!match) continue;
    marks[names[match[1] as keyof typeof names]] = Number(match[2]);
    any = true;
  }
  return any ? marks : undefined;
}

/** `root [E2 W1] > src > a.c` -> trail blocks */
export function parseTrail(line: string): TrailBlock[] {
  const blocks: TrailBlock[] = [];
  for (const segment of line.trim().split(" > ")) {
    const match = /^(.*?)\s*\[([EWTB\d ]+)\]$/.exec(segment);
    if (match) {
      blocks.push({ label: match[1]!, marks: parseMarks(match[2]!) });
    } else {
      blocks.push({ label: segment });
    }
  }
  return blocks;
}

/** `errors: 2` lines from the status subcommand. */
export function parseStatus(output: string): StatusWidgetView[] {
  const widgets: StatusWidgetView[] = [];
  for (const line of output.split("\n")) {
    const match = /^([a-z_]+): (.*)$/.exec(line);
    if (match) widgets.push({ id: match[1]!, text: match[2]! });
  }
  return widgets;
}

export interface AnnotatedFile {
  lines: string[];
  widgets: InlineWidgetView[];
  decorations: LineDecorationView[];
}

const SIGIL_KINDS = {
  ">>": "first-error",
  "~~": "warning-detail",
  "<>": "task-nav",
  "[]": "breakpoint-editor",
} as const;

/**
 * Parse `annotate` output: `  42 | text` source rows, sigil rows after them.
 * `!!` rows are error highlights (decorations), not widgets; `~~` rows mark
 * warning underlines and double as the expanded-warning text.
 */
export function parseAnnotated(output: string): AnnotatedFile {
  const lines: string[] = [];
  const widgets: InlineWidgetView[] = [];
  const decorations: LineDecorationView[] = [];
  let current = 0;
  for (const row of output.split("\n")) {
    const source = /^\s*(\d+) \| (.*)$/.exec(row);
    if (source) {
      current = Number(source[1]);
      lines.push(source[2]!);
      continue;
    }
    const annotation = /^  (>>|~~|<>|\[\]|!!) (.*)$/.exec(row);
    if (!annotation || current === 0) continue;
    const sigil = annotation[1]!;
    const text = annotation[2]!;
    if (sigil === "!!") {
      decorations.push({ line: current, style: "error" });
    } else if (sigil === "~~") {
      decorations.push({ line: current, style: "warning" });
    } else {
      if (sigil === "<>") decorations.push({ line: current, style: "task" });
      widgets.push({
        line: current,
        kind: SIGIL_KINDS[sigil as keyof typeof SIGIL_KINDS],
        text,
      });
    }
  }
  return { lines, widgets, decorations };
}

/** `[finished exit=1 errors=2 warnings=1]` -> a dynamic status message. */
export function parseBuildMessage(output: string): string {
  const match = /\[finished exit=(-?\d+) errors=(\d+) warnings=(\d+)\]/.exec(output);
  if (!match) return "build failed to run";
  return `build finished: exit ${match[1]}, ${match[2]} errors, ${match[3]} warnings`;
}

// ---------------------------------------------------------------------------
// client

export class EngineClient {
  private readonly command: string[];
  readonly root: string;

  constructor(options: EngineClientOptions) {
    this.root = options.root;
    this.command = options.command ?? DEFAULT_COMMAND;
  }

  run(...args: string[]): CliResult {
    const [head, ...rest] = this.command;
    const result = spawnSync(
      head!,
      [...rest, "--root", this.root, "--deterministic", ...args],
      { encoding: "utf-8" },
    );
    return {
      code: result.status ?? -1,
      stdout: result.stdout ?? "",
      stderr: result.stderr ?? "",
    };
  }

  status(build = false): StatusWidgetView[] {
    const args = build ? ["status", "--build"] : ["status"];
    return parseStatus(this.run(...args).stdout);
  }

  trail(mode: string, target: string, build = false): TrailBlock[] {
    const args = ["crumbs", mode, target];
    if (build) args.push("--build");
    const result = this.run(...args);
    const first = result.stdout.split("\n")[0] ?? "";
    return first ? parseTrail(first) : [];
  }

  annotate(file: string, build = false): AnnotatedFile {
    const args = ["annotate", file];
    if (build) args.push("--build");
    return parseAnnotated(this.run(...args).stdout);
  }

  build(): { message: string; exitCode: number } {
    const result = this.run("build");
    return { message: parseBuildMessage(result.stdout), exitCode: result.code };
  }
}
