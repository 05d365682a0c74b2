/**
 * Parser for the CSV dialect emitted by the casimir-expulsion CLI:
 *
 *   # key = value          metadata block (one pair per line)
 *   col_a,col_b            header row
 *   1.01,0.000302...       data rows
 *   # INCOMPLETE           optional trailing marker on partial results
 *
 * The parser is strict: a malformed metadata line, a missing header, or a
 * row whose cell count disagrees with the header is a hard error, because
 * a silently misread file would produce a wrong but plausible figure.
 */

import { readFileSync } from "node:fs";

export class CsvFormatError extends Error {
  constructor(message: string, public readonly path?: string) {
    super(path ? `${path}: ${message}` : message);
    this.name = "CsvFormatError";
  }
}

export interface CsvTable {
  /** `# key = value` pairs, in file order; values kept as raw strings. */
  metadata: Map<string, string>;
  columns: string[];
  /** Row-major numeric cells; NaN cells (error rows) are preserved. */
  rows: number[][];
  /** True when the file carries the trailing `# INCOMPLETE` marker. */
  incomplete: boolean;
}

const METADATA_LINE = /^#\s*([^=]+?)\s*=\s*(.*)$/;

export function parseCsv(text: string, path?: string): CsvTable {
  const metadata = new Map<string, string>();
  let columns: string[] | null = null;
  const rows: number[][] = [];
  let incomplete = false;

  for (const rawLine of text.split("\n")) {
    const line = rawLine.trimEnd();
    if (line === "") continue;
    if (line.startsWith("#")) {
      if (line.replace(/^#\s*/, "") === "INCOMPLETE") {
        incomplete = true;
        continue;
      }
      const match = METADATA_LINE.exec(line);
      if (!match) {
        throw new CsvFormatError(`malformed metadata line: ${line}`, path);
      }
      metadata.set(match[1], match[2]);
      continue;
    }
    if (columns === null) {
      columns = line.split(",").map((c) => c.trim());
      continue;
    }
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new CsvFormatError(
        `row has ${cells.length} cells, header has ${columns.length}: ${line}`,
        path,
      );
    }
    rows.push(
      cells.map((cell) => {
        const trimmed = cell.trim();
        if (trimmed === "" || trimmed.toLowerCase() === "nan") return NaN;
        const value = Number(trimmed);
        if (Number.isNaN(value)) {
          throw new CsvFormatError(`non-numeric cell: ${cell}`, path);
        }
        return value;
      }),
    );
  }

  if (columns === null) {
    throw new CsvFormatError("no header row found", path);
  }
  return { metadata, columns, rows, incomplete };
}

export function readCsv(path: string): CsvTable {
  return parseCsv(readFileSync(path, "utf8"), path);
}

/** Look up a metadata value, failing loudly when the key is absent. */
export function requireMetadata(table: CsvTable, key: string, path?: string): string {
  const value = table.metadata.get(key);
  if (value === undefined) {
    throw new CsvFormatError(`missing required metadata key: ${key}`, path);
  }
  return value;
}

/** Column index by name, failing loudly when the column is absent. */
export function requireColumn(table: CsvTable, name: string, path?: string): number {
  const index = table.columns.indexOf(name);
  if (index < 0) {
    throw new CsvFormatError(
      `missing required column "${name}" (have: ${table.columns.join(", ")})`,
      path,
    );
  }
  return index;
}
