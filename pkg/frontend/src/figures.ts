/**
 * SVG figure rendering for casimir-expulsion CSV outputs.
 *
 * Four figure kinds:
 *   force_vs_doa  - |total force| vs gap ratio d/a, one curve per input CSV
 *   q_vs_doa      - effectiveness Q vs gap ratio d/a, one curve per input CSV
 *   force_vs_phi  - |total force| vs wing angle phi, one curve per input CSV
 *   q_surface     - heat map of Q over (phi, d/a) with the argmax marked
 *
 * Rendering never recomputes physics: everything drawn comes from the CSV
 * content, and curve figures plot absolute values on the y axis. Renders
 * are pure functions of the CSV bytes (no clock, no randomness).
 */

import { writeFileSync } from "node:fs";
import { scaleLinear, scaleLog, scaleSequential } from "d3-scale";
import { interpolateViridis } from "d3-scale-chromatic";
import { line as d3line } from "d3-shape";

import { CsvFormatError, CsvTable, readCsv, requireColumn, requireMetadata } from "./csv.js";

export const FIGURE_KINDS = [
  "force_vs_doa",
  "q_vs_doa",
  "force_vs_phi",
  "q_surface",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureJob {
  kind: FigureKind;
  /** Input CSV paths; curve kinds accept several, the surface exactly one. */
  inputs: string[];
  output: string;
  /** Optional log-scale y axis for force curves. */
  logY?: boolean;
}

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { top: 56, right: 170, bottom: 56, left: 88 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;
const CURVE_COLORS = ["#1b6ca8", "#c44536", "#2a7f3f", "#8046a5", "#b58900", "#3a7ca5"];

interface CurveConfig {
  xColumn: string;
  yColumn: string;
  xLabel: string;
  yLabel: string;
  title: string;
  /** Metadata key distinguishing the members of a curve family. */
  familyKey: string;
  familyLabel: (value: string) => string;
}

const CURVE_CONFIGS: Record<Exclude<FigureKind, "q_surface">, CurveConfig> = {
  force_vs_doa: {
    xColumn: "d_over_a",
    yColumn: "abs_total_force",
    xLabel: "gap ratio d/a (dimensionless)",
    yLabel: "|total force| (N)",
    title: "Absolute total force vs gap ratio",
    familyKey: "phi_deg",
    familyLabel: (v) => `phi = ${v} deg`,
  },
  q_vs_doa: {
    xColumn: "d_over_a",
    yColumn: "effectiveness",
    xLabel: "gap ratio d/a (dimensionless)",
    yLabel: "effectiveness Q (N/m)",
    title: "Effectiveness vs gap ratio",
    familyKey: "phi_deg",
    familyLabel: (v) => `phi = ${v} deg`,
  },
  force_vs_phi: {
    xColumn: "phi_deg",
    yColumn: "abs_total_force",
    xLabel: "wing angle phi (deg)",
    yLabel: "|total force| (N)",
    title: "Absolute total force vs wing angle",
    familyKey: "d_over_a",
    familyLabel: (v) => `d/a = ${v}`,
  },
};

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

function svgDocument(body: string, extraRootAttrs = ""): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif"${extraRootAttrs}>\n` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n${body}</svg>\n`
  );
}

function axisTicks(
  scale: { ticks(n: number): number[]; tickFormat(n: number): (v: number) => string },
  count: number,
): Array<{ value: number; label: string }> {
  const fmt = scale.tickFormat(count);
  return scale.ticks(count).map((value) => ({ value, label: fmt(value) }));
}

function frameAndTitle(title: string, subtitle: string): string {
  return (
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${escapeXml(title)}</text>\n` +
    `<text x="${WIDTH / 2}" y="42" text-anchor="middle" font-size="11" fill="#555">${escapeXml(subtitle)}</text>\n` +
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${PLOT_W}" height="${PLOT_H}" fill="none" stroke="#333"/>\n`
  );
}

function warningBanner(): string {
  return (
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${PLOT_W}" height="22" fill="#c44536" opacity="0.85"/>\n` +
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${MARGIN.top + 15}" text-anchor="middle" ` +
    `font-size="12" fill="white" class="incomplete-warning">WARNING: INCOMPLETE DATA - some rows failed to compute</text>\n`
  );
}

/** Geometry subtitle built from the metadata every CLI CSV carries. */
function geometrySubtitle(table: CsvTable, path: string): string {
  const a = requireMetadata(table, "a", path);
  const r = requireMetadata(table, "r", path);
  const n = requireMetadata(table, "n", path);
  return `a = ${a} m, R = ${r} m, n = ${n}`;
}

function renderCurveFigure(job: FigureJob): string {
  const config = CURVE_CONFIGS[job.kind as Exclude<FigureKind, "q_surface">];
  if (job.inputs.length < 1) {
    throw new CsvFormatError("curve figures need at least one input CSV");
  }

  interface Curve {
    label: string;
    points: Array<[number, number]>;
  }
  const curves: Curve[] = [];
  let anyIncomplete = false;
  let subtitle = "";

  for (const path of job.inputs) {
    const table = readCsv(path);
    const xi = requireColumn(table, config.xColumn, path);
    const yi = requireColumn(table, config.yColumn, path);
    const family = requireMetadata(table, config.familyKey, path);
    if (subtitle === "") subtitle = geometrySubtitle(table, path);
    // error rows are NaN-valued; drop them from the curve but keep the banner
    const points = table.rows
      .filter((row) => Number.isFinite(row[xi]) && Number.isFinite(row[yi]))
      .map((row): [number, number] => [row[xi], Math.abs(row[yi])]);
    if (points.length < 2) {
      throw new CsvFormatError(`need at least 2 plottable data rows, got ${points.length}`, path);
    }
    anyIncomplete = anyIncomplete || table.incomplete;
    curves.push({ label: config.familyLabel(family), points });
  }

  const allPoints = curves.flatMap((c) => c.points);
  const xMin = Math.min(...allPoints.map((p) => p[0]));
  const xMax = Math.max(...allPoints.map((p) => p[0]));
  const yMax = Math.max(...allPoints.map((p) => p[1]));
  const yMinPositive = Math.min(...allPoints.map((p) => p[1]).filter((y) => y > 0));

  const x = scaleLinear().domain([xMin, xMax]).range([MARGIN.left, MARGIN.left + PLOT_W]);
  const y = job.logY
    ? scaleLog().domain([yMinPositive, yMax]).range([MARGIN.top + PLOT_H, MARGIN.top])
    : scaleLinear().domain([0, yMax]).nice().range([MARGIN.top + PLOT_H, MARGIN.top]);

  let body = frameAndTitle(config.title, subtitle);
  for (const tick of axisTicks(x, 6)) {
    const px = x(tick.value);
    body += `<line x1="${px}" y1="${MARGIN.top + PLOT_H}" x2="${px}" y2="${MARGIN.top + PLOT_H + 5}" stroke="#333"/>\n`;
    body += `<text x="${px}" y="${MARGIN.top + PLOT_H + 18}" text-anchor="middle" font-size="11">${tick.label}</text>\n`;
  }
  for (const tick of axisTicks(y, 6)) {
    const py = y(tick.value);
    body += `<line x1="${MARGIN.left - 5}" y1="${py}" x2="${MARGIN.left}" y2="${py}" stroke="#333"/>\n`;
    body += `<text x="${MARGIN.left - 8}" y="${py + 4}" text-anchor="end" font-size="11">${tick.label}</text>\n`;
  }
  body += `<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="13">${escapeXml(config.xLabel)}</text>\n`;
  body += `<text x="20" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${MARGIN.top + PLOT_H / 2})">${escapeXml(config.yLabel)}</text>\n`;

  const pathFor = d3line<[number, number]>()
    .x((p) => x(p[0]))
    .y((p) => y(p[1]));
  curves.forEach((curve, i) => {
    const color = CURVE_COLORS[i % CURVE_COLORS.length];
    body += `<path d="${pathFor(curve.points)}" fill="none" stroke="${color}" stroke-width="1.8" class="curve"/>\n`;
    const ly = MARGIN.top + 14 + 18 * i;
    const lx = MARGIN.left + PLOT_W + 12;
    body += `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" stroke="${color}" stroke-width="1.8"/>\n`;
    body += `<text x="${lx + 28}" y="${ly}" font-size="12">${escapeXml(curve.label)}</text>\n`;
  });

  if (anyIncomplete) body += warningBanner();
  return svgDocument(body);
}

export interface SurfaceArgmax {
  phiDeg: number;
  dOverA: number;
  value: number;
}

/**
 * Grid maximum of the long-form surface rows, recomputed here so the
 * marker is independent of anything the producing pipeline reported.
 * Ties break toward the earliest row, matching file order.
 */
export function surfaceArgmax(table: CsvTable, path?: string): SurfaceArgmax {
  const pi = requireColumn(table, "phi_deg", path);
  const di = requireColumn(table, "d_over_a", path);
  const qi = requireColumn(table, "effectiveness", path);
  let best: SurfaceArgmax | null = null;
  for (const row of table.rows) {
    if (!Number.isFinite(row[qi])) continue;
    if (best === null || row[qi] > best.value) {
      best = { phiDeg: row[pi], dOverA: row[di], value: row[qi] };
    }
  }
  if (best === null) {
    throw new CsvFormatError("surface has no finite effectiveness values", path);
  }
  return best;
}

function renderSurfaceFigure(job: FigureJob): string {
  if (job.inputs.length !== 1) {
    throw new CsvFormatError(`q_surface takes exactly one input CSV, got ${job.inputs.length}`);
  }
  const path = job.inputs[0];
  const table = readCsv(path);
  const phiAxis = requireMetadata(table, "phi_deg_axis", path).split(/\s+/).map(Number);
  const doaAxis = requireMetadata(table, "d_over_a_axis", path).split(/\s+/).map(Number);
  if (phiAxis.length < 8 || doaAxis.length < 8) {
    throw new CsvFormatError(
      `surface grid must be at least 8x8, got ${phiAxis.length}x${doaAxis.length}`,
      path,
    );
  }
  if (table.rows.length !== phiAxis.length * doaAxis.length) {
    throw new CsvFormatError(
      `expected ${phiAxis.length * doaAxis.length} rows for the declared axes, got ${table.rows.length}`,
      path,
    );
  }
  const pi = requireColumn(table, "phi_deg", path);
  const di = requireColumn(table, "d_over_a", path);
  const qi = requireColumn(table, "effectiveness", path);

  const finiteQ = table.rows.map((r) => r[qi]).filter(Number.isFinite);
  const qMin = Math.min(...finiteQ);
  const qMax = Math.max(...finiteQ);
  const color = scaleSequential(interpolateViridis).domain([qMin, qMax]);
  const x = scaleLinear()
    .domain([Math.min(...phiAxis), Math.max(...phiAxis)])
    .range([MARGIN.left, MARGIN.left + PLOT_W]);
  const y = scaleLinear()
    .domain([Math.min(...doaAxis), Math.max(...doaAxis)])
    .range([MARGIN.top + PLOT_H, MARGIN.top]);

  // cell extents from axis midpoints, so cells tile the plot exactly
  const edges = (axis: number[]): number[] => {
    const e = [axis[0]];
    for (let i = 0; i + 1 < axis.length; i++) e.push((axis[i] + axis[i + 1]) / 2);
    e.push(axis[axis.length - 1]);
    return e;
  };
  const phiEdges = edges(phiAxis);
  const doaEdges = edges(doaAxis);
  const phiIndex = new Map(phiAxis.map((v, i) => [v, i]));
  const doaIndex = new Map(doaAxis.map((v, i) => [v, i]));

  let body = frameAndTitle(
    "Effectiveness over wing angle and gap ratio",
    geometrySubtitle(table, path),
  );
  for (const row of table.rows) {
    const i = phiIndex.get(row[pi]);
    const j = doaIndex.get(row[di]);
    if (i === undefined || j === undefined) {
      throw new CsvFormatError(`row coordinates not on the declared axes: ${row[pi]}, ${row[di]}`, path);
    }
    const fill = Number.isFinite(row[qi]) ? color(row[qi]) : "#bbbbbb";
    const x0 = x(phiEdges[i]);
    const x1 = x(phiEdges[i + 1]);
    const y0 = y(doaEdges[j + 1]);
    const y1 = y(doaEdges[j]);
    body += `<rect x="${x0}" y="${y0}" width="${x1 - x0}" height="${y1 - y0}" fill="${fill}"/>\n`;
  }

  for (const tick of axisTicks(x, 6)) {
    body += `<text x="${x(tick.value)}" y="${MARGIN.top + PLOT_H + 18}" text-anchor="middle" font-size="11">${tick.label}</text>\n`;
  }
  for (const tick of axisTicks(y, 6)) {
    body += `<text x="${MARGIN.left - 8}" y="${y(tick.value) + 4}" text-anchor="end" font-size="11">${tick.label}</text>\n`;
  }
  body += `<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="13">wing angle phi (deg)</text>\n`;
  body += `<text x="20" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${MARGIN.top + PLOT_H / 2})">gap ratio d/a (dimensionless)</text>\n`;

  // color-bar legend: discrete swatches with end labels
  const barX = MARGIN.left + PLOT_W + 24;
  for (let k = 0; k < 24; k++) {
    const frac = k / 23;
    const by = MARGIN.top + PLOT_H - ((k + 1) / 24) * PLOT_H;
    body += `<rect x="${barX}" y="${by}" width="16" height="${PLOT_H / 24 + 0.5}" fill="${color(qMin + frac * (qMax - qMin))}"/>\n`;
  }
  body += `<text x="${barX + 22}" y="${MARGIN.top + 10}" font-size="11">${qMax.toPrecision(6)}</text>\n`;
  body += `<text x="${barX + 22}" y="${MARGIN.top + PLOT_H}" font-size="11">${qMin.toPrecision(6)}</text>\n`;
  body += `<text x="${barX}" y="${MARGIN.top - 8}" font-size="11">Q (N/m)</text>\n`;

  const argmax = surfaceArgmax(table, path);
  const mx = x(argmax.phiDeg);
  const my = y(argmax.dOverA);
  body +=
    `<circle cx="${mx}" cy="${my}" r="6" fill="none" stroke="white" stroke-width="2" class="argmax-marker"/>\n` +
    `<circle cx="${mx}" cy="${my}" r="2" fill="white" class="argmax-marker"/>\n` +
    `<text x="${mx + 10}" y="${my - 8}" font-size="11" fill="white" stroke="black" stroke-width="0.3">` +
    `max Q = ${argmax.value.toPrecision(6)} at (${argmax.phiDeg.toPrecision(6)} deg, ${argmax.dOverA.toPrecision(6)})</text>\n`;

  if (table.incomplete) body += warningBanner();
  // machine-readable argmax, asserted by the pipeline test
  const attrs =
    ` data-argmax-phi-deg="${argmax.phiDeg}" data-argmax-d-over-a="${argmax.dOverA}"` +
    ` data-argmax-q="${argmax.value}"`;
  return svgDocument(body, attrs);
}

export function renderFigureToString(job: FigureJob): string {
  if (!FIGURE_KINDS.includes(job.kind)) {
    throw new CsvFormatError(`unknown figure kind: ${job.kind}`);
  }
  return job.kind === "q_surface" ? renderSurfaceFigure(job) : renderCurveFigure(job);
}

export function renderFigure(job: FigureJob): void {
  writeFileSync(job.output, renderFigureToString(job));
}
