#!/usr/bin/env node
/**
 * render_figure --kind <force_vs_doa|q_vs_doa|force_vs_phi|q_surface>
 *               --in <csv> [--in <csv> ...] --out <image.svg> [--log-y]
 *
 * Exit codes: 0 on success, 1 on bad arguments or malformed input CSV.
 */

import { resolve } from "node:path";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { CsvFormatError } from "./csv.js";
import { FIGURE_KINDS, FigureKind, renderFigure } from "./figures.js";

const USAGE =
  "usage: render_figure --kind <" +
  FIGURE_KINDS.join("|") +
  "> --in <csv> [--in <csv> ...] --out <image.svg> [--log-y]";

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        in: { type: "string", multiple: true },
        out: { type: "string" },
        "log-y": { type: "boolean", default: false },
      },
    });
  } catch (err) {
    console.error(`render_figure: ${(err as Error).message}\n${USAGE}`);
    return 1;
  }
  const { kind, in: inputs, out } = parsed.values;
  if (!kind || !inputs || inputs.length === 0 || !out) {
    console.error(`render_figure: --kind, --in, and --out are required\n${USAGE}`);
    return 1;
  }
  if (!(FIGURE_KINDS as readonly string[]).includes(kind)) {
    console.error(`render_figure: unknown kind "${kind}"\n${USAGE}`);
    return 1;
  }
  try {
    renderFigure({
      kind: kind as FigureKind,
      inputs,
      output: out,
      logY: parsed.values["log-y"],
    });
  } catch (err) {
    if (err instanceof CsvFormatError || err instanceof Error) {
      console.error(`render_figure: ${(err as Error).message}`);
      return 1;
    }
    throw err;
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(resolve(process.argv[1])).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
