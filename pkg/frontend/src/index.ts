export { parseBenchmarkCsv, groupSeries, CSV_HEADER } from "./csv.js";
export type { BenchmarkRow } from "./csv.js";
export { parseTimeline, ACTORS } from "./jsonl.js";
export type { TimelineEvent, Actor } from "./jsonl.js";
export { benchmarkSvg, renderBenchmark } from "./benchChart.js";
export { timelineSvg, renderTimeline } from "./timelineChart.js";
export { EmptyCsv, MissingColumn, MalformedLine } from "./errors.js";
export { runCli } from "./cli.js";
