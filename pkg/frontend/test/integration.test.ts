/**
 * End-to-end: the TS client talking to the real engine CLI over a pipe.
 * The engine package must be installed (`pip install -e ..`).
 */

import { mkdtempSync, mkdirSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { EngineClient } from "../src/cli.js";
import { toggleBreakpoint } from "../src/store.js";

const MAIN_C = `#include <stdio.h>

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
`;

const FAKE_CC = `import sys
print("compiling src/main.c", flush=True)
print("src/main.c:3:5: error: expected ';' before 'return'", flush=True)
print("src/main.c:7:9: warning: unused variable 'tmp'", flush=True)
sys.exit(1)
`;

function makeProject(): string {
  const root = mkdtempSync(join(tmpdir(), "solowin-it-"));
  mkdirSync(join(root, "src"));
  mkdirSync(join(root, ".solowin"));
  writeFileSync(join(root, "src", "main.c"), MAIN_C);
  writeFileSync(join(root, "fake_cc.py"), FAKE_CC);
  writeFileSync(
    join(root, ".solowin", "project.json"),
    JSON.stringify({ version: 1, build_command: ["python3", "fake_cc.py"] }),
  );
  return root;
}

describe("engine CLI integration", () => {
  it("build, status, trail, and annotate round-trip through the CLI", () => {
    const client = new EngineClient({ root: makeProject() });

    const build = client.build();
    expect(build.exitCode).toBe(1);
    expect(build.message).toBe("build finished: exit 1, 1 errors, 1 warnings");

    const widgets = client.status(true);
    expect(widgets).toEqual([
      { id: "errors", text: "1" },
      { id: "tasks", text: "3" },
    ]);

    const trail = client.trail("fs", "src/main.c", true);
    expect(trail.map((b) => b.label)).toEqual(["root", "src", "main.c"]);
    expect(trail[2]!.marks).toEqual({ errors: 1, warnings: 1, tasks: 3 });

    const annotated = client.annotate("src/main.c", true);
    expect(annotated.lines).toHaveLength(13);
    expect(annotated.widgets.filter((w) => w.kind === "first-error")).toEqual([
      { line: 3, kind: "first-error", text: "error[1/1]: expected ';' before 'return'" },
    ]);
    expect(annotated.decorations).toContainEqual({ line: 7, style: "warning" });
  });

  it("breakpoints toggled from the frontend are visible to the engine", () => {
    const root = makeProject();
    toggleBreakpoint(root, "src/main.c", 7);

    const trace = join(root, "trace.jsonl");
    writeFileSync(
      trace,
      JSON.stringify({
        ev: "stopped",
        bp: 1,
        threads: [
          {
            id: 1,
            name: "main",
            frames: [{ fn: "g", file: "src/main.c", line: 7 }],
          },
        ],
        vars: [{ expr: "x", value: "3" }],
      }) + "\n",
    );

    const client = new EngineClient({ root });
    const result = client.run("debug", trace, "step");
    expect(result.stdout).toContain("stopped at src/main.c:7 (breakpoint 1)");
    expect(result.stdout).toContain("mode: callstack");
    expect(result.stdout).toContain("x = 3");
  });
});
