import { readFileSync, writeFileSync } from "node:fs";

import { BenchmarkRow, groupSeries, parseBenchmarkCsv } from "./csv.js";
import { PALETTE, el, linearScale, linearTicks, logScale, svgDoc, text } from "./svg.js";

const W = 820;
const H = 500;
const M = { left: 64, right: 190, top: 24, bottom: 52 };

// Log-x return chart: one polyline with error bars per (planner, accuracy).
export function benchmarkSvg(rows: BenchmarkRow[]): string {
  const series = groupSeries(rows);
  const budgets = rows.map((r) => r.budget);
  const x = logScale([Math.min(...budgets), Math.max(...budgets)], [M.left, W - M.right]);
  const lows = rows.map((r) => r.meanReturn - 1.96 * r.stdErr);
  const highs = rows.map((r) => r.meanReturn + 1.96 * r.stdErr);
  let yLo = Math.min(...lows);
  let yHi = Math.max(...highs);
  const pad = (yHi - yLo || 1) * 0.05;
  yLo -= pad;
  yHi += pad;
  const y = linearScale([yLo, yHi], [H - M.bottom, M.top]);

  const body: string[] = [];
  body.push(axes(x, y, budgets));

  let i = 0;
  for (const [label, pts] of series) {
    const color = PALETTE[i % PALETTE.length];
    const poly = pts.map((p) => `${x(p.budget).toFixed(2)},${y(p.meanReturn).toFixed(2)}`).join(" ");
    const children: string[] = [
      el("polyline", { points: poly, fill: "none", stroke: color, "stroke-width": 1.6 }),
    ];
    for (const p of pts) {
      const cx = x(p.budget);
      const half = 1.96 * p.stdErr;
      children.push(
        el("line", {
          class: "err",
          x1: cx,
          x2: cx,
          y1: y(p.meanReturn - half),
          y2: y(p.meanReturn + half),
          stroke: color,
          "stroke-width": 1,
        }),
      );
      children.push(el("circle", { class: "pt", cx, cy: y(p.meanReturn), r: 2.6, fill: color }));
    }
    body.push(el("g", { class: "series", "data-series": label }, children));

    const ly = M.top + 10 + i * 18;
    body.push(
      el("g", { class: "legend-item" }, [
        el("line", { x1: W - M.right + 14, x2: W - M.right + 38, y1: ly, y2: ly, stroke: color, "stroke-width": 2 }),
        text(W - M.right + 44, ly + 4, label, { "font-size": 12 }),
      ]),
    );
    i++;
  }
  return svgDoc(W, H, body);
}

function axes(
  x: ReturnType<typeof logScale>,
  y: ReturnType<typeof linearScale>,
  budgets: number[],
): string {
  const parts: string[] = [];
  const x0 = M.left;
  const x1 = W - M.right;
  const y0 = H - M.bottom;
  parts.push(el("line", { x1: x0, x2: x1, y1: y0, y2: y0, stroke: "#333" }));
  parts.push(el("line", { x1: x0, x2: x0, y1: M.top, y2: y0, stroke: "#333" }));

  // x ticks at every fourth power of two so 16-budget ladders stay legible
  const uniq = [...new Set(budgets)].sort((a, b) => a - b);
  const step = uniq.length > 8 ? Math.ceil(uniq.length / 8) : 1;
  for (let i = 0; i < uniq.length; i += step) {
    const b = uniq[i];
    const cx = x(b);
    parts.push(el("line", { x1: cx, x2: cx, y1: y0, y2: y0 + 5, stroke: "#333" }));
    parts.push(text(cx, y0 + 18, String(b), { "font-size": 11, "text-anchor": "middle" }));
  }
  for (const v of linearTicks(y.domain)) {
    const cy = y(v);
    parts.push(el("line", { x1: x0 - 5, x2: x0, y1: cy, y2: cy, stroke: "#333" }));
    parts.push(el("line", { x1: x0, x2: x1, y1: cy, y2: cy, stroke: "#ddd" }));
    parts.push(text(x0 - 9, cy + 4, String(v), { "font-size": 11, "text-anchor": "end" }));
  }
  parts.push(text((x0 + x1) / 2, H - 12, "simulations per step (log)", { "font-size": 13, "text-anchor": "middle" }));
  parts.push(
    text(16, (M.top + y0) / 2, "mean discounted return", {
      "font-size": 13,
      "text-anchor": "middle",
      transform: `rotate(-90 16 ${(M.top + y0) / 2})`,
    }),
  );
  return el("g", { class: "axes" }, parts);
}

export function renderBenchmark(csvPath: string, outPath: string): void {
  const rows = parseBenchmarkCsv(readFileSync(csvPath, "utf-8"));
  writeFileSync(outPath, benchmarkSvg(rows), "utf-8");
}
