import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";
import { renderFigureToString, surfaceArgmax } from "../src/figures.js";

function sweepCsv(opts: { phiDeg?: string; incomplete?: boolean; rows?: string[] }): string {
  const rows = opts.rows ?? [
    "1.01,3.0e-4",
    "1.5,5.4e-4",
    "2.0,5.6e-4",
    "3.0,5.8e-4",
  ];
  return [
    "# command = sweep",
    "# a = 4e-09",
    "# r = 1e-08",
    "# n = 2",
    `# phi_deg = ${opts.phiDeg ?? "4"}`,
    "d_over_a,abs_total_force",
    ...rows,
    ...(opts.incomplete ? ["# INCOMPLETE"] : []),
    "",
  ].join("\n");
}

function surfaceCsv(n = 8): string {
  const phiAxis = Array.from({ length: n }, (_, i) => 1 + i);
  const doaAxis = Array.from({ length: n }, (_, j) => 1.1 + 0.1 * j);
  const lines = [
    "# command = surface",
    "# a = 4e-09",
    "# r = 1e-08",
    "# n = 2",
    `# phi_deg_axis = ${phiAxis.join(" ")}`,
    `# d_over_a_axis = ${doaAxis.join(" ")}`,
    "phi_deg,d_over_a,effectiveness",
  ];
  for (const phi of phiAxis) {
    for (const doa of doaAxis) {
      // single-peak bump centered inside the grid
      const q = 1000 - (phi - 4.0) ** 2 - 100 * (doa - 1.5) ** 2;
      lines.push(`${phi},${doa},${q}`);
    }
  }
  lines.push("");
  return lines.join("\n");
}

function tempFiles(contents: string[]): string[] {
  const dir = mkdtempSync(join(tmpdir(), "figtest-"));
  return contents.map((text, i) => {
    const path = join(dir, `input-${i}.csv`);
    writeFileSync(path, text);
    return path;
  });
}

describe("curve figures", () => {
  it("renders a curve family with one legend entry per input", () => {
    const inputs = tempFiles([sweepCsv({ phiDeg: "2" }), sweepCsv({ phiDeg: "6" })]);
    const svg = renderFigureToString({ kind: "force_vs_doa", inputs, output: "unused.svg" });
    expect(svg).toContain("<svg");
    expect((svg.match(/class="curve"/g) ?? []).length).toBe(2);
    expect(svg).toContain("phi = 2 deg");
    expect(svg).toContain("phi = 6 deg");
    expect(svg).toContain("gap ratio d/a");
    expect(svg).not.toContain("incomplete-warning");
  });

  it("renders a warning banner when any input is marked incomplete", () => {
    const inputs = tempFiles([sweepCsv({ incomplete: true })]);
    const svg = renderFigureToString({ kind: "force_vs_doa", inputs, output: "unused.svg" });
    expect(svg).toContain("incomplete-warning");
  });

  it("drops NaN error rows from the plotted curve", () => {
    const inputs = tempFiles([
      sweepCsv({ rows: ["1.01,3.0e-4", "1.5,nan", "3.0,5.8e-4"], incomplete: true }),
    ]);
    const svg = renderFigureToString({ kind: "force_vs_doa", inputs, output: "unused.svg" });
    expect(svg).toContain('class="curve"');
    expect(svg).not.toContain("NaN");
  });

  it("rejects inputs with fewer than 2 plottable rows", () => {
    const inputs = tempFiles([sweepCsv({ rows: ["1.01,3.0e-4"] })]);
    expect(() =>
      renderFigureToString({ kind: "force_vs_doa", inputs, output: "unused.svg" }),
    ).toThrow(/at least 2/);
  });

  it("rejects inputs missing the required observable column", () => {
    const inputs = tempFiles([sweepCsv({})]);
    expect(() =>
      renderFigureToString({ kind: "q_vs_doa", inputs, output: "unused.svg" }),
    ).toThrow(/effectiveness/);
  });

  it("rejects inputs missing the family metadata key", () => {
    const bad = sweepCsv({}).replace(/# phi_deg = .*\n/, "");
    const inputs = tempFiles([bad]);
    expect(() =>
      renderFigureToString({ kind: "force_vs_doa", inputs, output: "unused.svg" }),
    ).toThrow(/phi_deg/);
  });

  it("is a pure function of the CSV content", () => {
    const inputs = tempFiles([sweepCsv({})]);
    const job = { kind: "force_vs_doa" as const, inputs, output: "unused.svg" };
    expect(renderFigureToString(job)).toBe(renderFigureToString(job));
  });

  it("supports a log-scale y axis", () => {
    const inputs = tempFiles([sweepCsv({})]);
    const svg = renderFigureToString({
      kind: "force_vs_doa",
      inputs,
      output: "unused.svg",
      logY: true,
    });
    expect(svg).toContain('class="curve"');
  });
});

describe("surface figure", () => {
  it("marks the independently recomputed argmax", () => {
    const inputs = tempFiles([surfaceCsv()]);
    const svg = renderFigureToString({ kind: "q_surface", inputs, output: "unused.svg" });
    expect(svg).toContain('class="argmax-marker"');
    // bump is centered at phi = 4, d/a = 1.5
    expect(svg).toContain('data-argmax-phi-deg="4"');
    expect(svg).toContain('data-argmax-d-over-a="1.5"');
  });

  it("rejects grids smaller than 8x8", () => {
    const inputs = tempFiles([surfaceCsv(7)]);
    expect(() =>
      renderFigureToString({ kind: "q_surface", inputs, output: "unused.svg" }),
    ).toThrow(/8x8/);
  });

  it("rejects more than one input", () => {
    const inputs = tempFiles([surfaceCsv(), surfaceCsv()]);
    expect(() =>
      renderFigureToString({ kind: "q_surface", inputs, output: "unused.svg" }),
    ).toThrow(/exactly one/);
  });

  it("rejects a surface missing the axis metadata", () => {
    const bad = surfaceCsv().replace(/# phi_deg_axis = .*\n/, "");
    const inputs = tempFiles([bad]);
    expect(() =>
      renderFigureToString({ kind: "q_surface", inputs, output: "unused.svg" }),
    ).toThrow(/phi_deg_axis/);
  });

  it("surfaceArgmax picks the grid maximum", () => {
    const table = parseCsv(surfaceCsv());
    const best = surfaceArgmax(table);
    expect(best.phiDeg).toBe(4);
    expect(best.dOverA).toBe(1.5);
    expect(best.value).toBe(1000);
  });
});
