import { EmptyCsv, MalformedLine, MissingColumn } from "./errors.js";

// Exact header written by the benchmark harness.
export const CSV_HEADER = [
  "planner",
  "accuracy",
  "budget",
  "episodes",
  "mean_return",
  "std_err",
  "completion_rate",
] as const;

export interface BenchmarkRow {
  planner: string;
  accuracy: number;
  budget: number;
  episodes: number;
  meanReturn: number;
  stdErr: number;
  completionRate: number;
}

export function parseBenchmarkCsv(text: string): BenchmarkRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim() !== "");
  if (lines.length === 0) throw new EmptyCsv("no header line");
  const header = lines[0].split(",").map((c) => c.trim());
  for (const col of CSV_HEADER) {
    if (!header.includes(col)) throw new MissingColumn(col);
  }
  if (header.length !== CSV_HEADER.length) {
    throw new MalformedLine(1, `expected exactly ${CSV_HEADER.length} columns, got ${header.length}`);
  }
  if (lines.length === 1) throw new EmptyCsv("header but no data rows");

  const idx = (col: string) => header.indexOf(col);
  const rows: BenchmarkRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new MalformedLine(i + 1, `expected ${header.length} cells, got ${cells.length}`);
    }
    const num = (col: string) => {
      const v = Number(cells[idx(col)]);
      if (!Number.isFinite(v)) throw new MalformedLine(i + 1, `non-numeric ${col} '${cells[idx(col)]}'`);
      return v;
    };
    rows.push({
      planner: cells[idx("planner")].trim(),
      accuracy: num("accuracy"),
      budget: num("budget"),
      episodes: num("episodes"),
      meanReturn: num("mean_return"),
      stdErr: num("std_err"),
      completionRate: num("completion_rate"),
    });
  }
  return rows;
}

// One series per (planner, accuracy), points ordered by budget.
export function groupSeries(rows: BenchmarkRow[]): Map<string, BenchmarkRow[]> {
  const groups = new Map<string, BenchmarkRow[]>();
  for (const row of rows) {
    const key = `${row.planner} ${row.accuracy}`;
    const bucket = groups.get(key);
    if (bucket) bucket.push(row);
    else groups.set(key, [row]);
  }
  for (const bucket of groups.values()) bucket.sort((a, b) => a.budget - b.budget);
  return groups;
}
