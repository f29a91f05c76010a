import { createHash } from "node:crypto";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { fileURLToPath } from "node:url";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { benchmarkSvg, parseBenchmarkCsv, groupSeries, renderBenchmark } from "../src/index.js";

const GOLDEN = fileURLToPath(new URL("../fixtures/golden_bench.csv", import.meta.url));
const HEADER = "planner,accuracy,budget,episodes,mean_return,std_err,completion_rate";

function seriesGroups(svg: string): string[] {
  return svg.match(/<g class="series"[^>]*>[\s\S]*?<\/g>/g) ?? [];
}

function sha(path: string): string {
  return createHash("sha256").update(readFileSync(path)).digest("hex");
}

describe("render_benchmark", () => {
  it("golden 128-row CSV renders 8 series with 16 points each", () => {
    const rows = parseBenchmarkCsv(readFileSync(GOLDEN, "utf-8"));
    expect(rows).toHaveLength(128);

    const out = join(mkdtempSync(join(tmpdir(), "bench-")), "out.svg");
    renderBenchmark(GOLDEN, out);
    const svg = readFileSync(out, "utf-8");

    const groups = seriesGroups(svg);
    expect(groups).toHaveLength(8);
    for (const g of groups) {
      expect(g.match(/class="pt"/g)).toHaveLength(16);
      expect(g.match(/class="err"/g)).toHaveLength(16);
    }
  });

  it("plots one point per CSV row in each group", () => {
    const rows = parseBenchmarkCsv(readFileSync(GOLDEN, "utf-8"));
    const expected = groupSeries(rows);
    const svg = benchmarkSvg(rows);
    for (const [label, pts] of expected) {
      const g = seriesGroups(svg).find((s) => s.includes(`data-series="${label}"`));
      expect(g, label).toBeDefined();
      expect(g!.match(/class="pt"/g)).toHaveLength(pts.length);
    }
  });

  it("legend carries '<planner> <accuracy>' labels", () => {
    const svg = benchmarkSvg(parseBenchmarkCsv(readFileSync(GOLDEN, "utf-8")));
    expect(svg).toContain(">baseline 0.5<");
    expect(svg).toContain(">relevance 0.85<");
  });

  it("empty CSV raises EmptyCsv", () => {
    expect(() => parseBenchmarkCsv("")).toThrowError(/EmptyCsv/);
    expect(() => parseBenchmarkCsv(HEADER + "\n")).toThrowError(/EmptyCsv/);
  });

  it("missing column raises MissingColumn naming it", () => {
    const broken = HEADER.replace(",std_err", "") + "\nbaseline,0.5,8,3,-1.0,0.9";
    expect(() => parseBenchmarkCsv(broken)).toThrowError(/MissingColumn.*std_err/);
  });

  it("single-row CSV renders a lone point with an error bar", () => {
    const svg = benchmarkSvg(parseBenchmarkCsv(HEADER + "\nbaseline,0.85,64,3,-12.5,1.25,0.9"));
    const groups = seriesGroups(svg);
    expect(groups).toHaveLength(1);
    expect(groups[0].match(/class="pt"/g)).toHaveLength(1);
    expect(groups[0].match(/class="err"/g)).toHaveLength(1);
  });

  it("rendering leaves the input file unchanged", () => {
    const before = sha(GOLDEN);
    renderBenchmark(GOLDEN, join(mkdtempSync(join(tmpdir(), "bench-")), "out.svg"));
    expect(sha(GOLDEN)).toBe(before);
  });
});
