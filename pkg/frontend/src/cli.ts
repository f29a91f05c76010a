#!/usr/bin/env node
import { renderBenchmark } from "./benchChart.js";
import { renderTimeline } from "./timelineChart.js";

const USAGE = `usage:
  render-bench <bench.csv> <out.svg>      benchmark return chart (log-x)
  render-timeline <log.jsonl> <out.svg>   two-lane timeline chart`;

export function runCli(argv: string[]): number {
  const [cmd, input, out] = argv;
  if (!cmd || !input || !out) {
    console.error(USAGE);
    return 2;
  }
  if (!out.toLowerCase().endsWith(".svg")) {
    console.error(`unsupported output format '${out}': only .svg is supported`);
    return 1;
  }
  try {
    if (cmd === "render-bench") renderBenchmark(input, out);
    else if (cmd === "render-timeline") renderTimeline(input, out);
    else {
      console.error(`unknown command '${cmd}'\n${USAGE}`);
      return 2;
    }
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 1;
  }
  return 0;
}

// argv check keeps the module importable from tests without side effects
if (process.argv[1] && /cli\.(js|ts)$/.test(process.argv[1])) {
  process.exit(runCli(process.argv.slice(2)));
}
