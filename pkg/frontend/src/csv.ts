import { readFileSync } from "node:fs";

/** Bit-exact CSV headers produced by the qgame CLI, one per figure kind. */
export const HEADERS = {
  surface: "t_a,t_b,payoff_a",
  curves: "theta,alice_c,alice_d,alice_m,bob_vs_m",
  maximin: "gamma,m,argmax_theta,argmax_phi",
} as const;

export type FigureKind = keyof typeof HEADERS;

export interface Table {
  header: string;
  columns: string[];
  rows: number[][];
}

export function isFigureKind(value: string): value is FigureKind {
  return value in HEADERS;
}

/** Load a CSV and verify its header matches the contract for `kind`. */
export function readTable(path: string, kind: FigureKind): Table {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n").filter((line) => line.length > 0);
  const header = lines[0] ?? "";
  if (header !== HEADERS[kind]) {
    throw new Error(
      `header mismatch for kind '${kind}': expected '${HEADERS[kind]}', got '${header}'`,
    );
  }
  const columns = header.split(",");
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(",").map(Number);
    if (cells.length !== columns.length || cells.some((v) => !Number.isFinite(v))) {
      throw new Error(`unparseable row ${i + 2} in ${path}: '${line}'`);
    }
    return cells;
  });
  if (rows.length === 0) {
    throw new Error(`no data rows in ${path}`);
  }
  return { header, columns, rows };
}

export const column = (table: Table, index: number) =>
  table.rows.map((row) => row[index]);
