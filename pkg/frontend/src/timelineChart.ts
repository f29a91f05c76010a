import { readFileSync, writeFileSync } from "node:fs";

import { ACTORS, TimelineEvent, parseTimeline } from "./jsonl.js";
import { PALETTE, el, linearScale, linearTicks, svgDoc, text } from "./svg.js";

const W = 900;
const LANE_H = 46;
const BAR_H = 26;
const M = { left: 84, right: 24, top: 30, bottom: 46 };

// Part labels are color words; render each bar in its part's color so the
// chart reads like the physical table. Hyphenated names map to CSS colors,
// anything unknown falls back to a stable palette pick.
function partColor(part: string | null): string {
  if (part === null) return "#b0b0b0";
  const css = part.replace(/-/g, "");
  if (CSS_COLORS.has(css)) return css;
  let h = 0;
  for (const ch of part) h = (h * 31 + ch.charCodeAt(0)) >>> 0;
  return PALETTE[h % PALETTE.length];
}

const CSS_COLORS = new Set([
  "yellow", "purple", "magenta", "red", "orange", "black", "white", "pink",
  "darkgreen", "crimson", "navy", "brown", "gray", "green", "blue", "teal",
  "olive", "maroon", "coral", "gold", "ivory", "beige", "lavender",
]);

interface Bar {
  ev: TimelineEvent;
  start: number;
  length: number;
}

// Bars span from each event to the next one in the same lane; the log carries
// no duration field, so the final bar borrows the lane's median length.
function laneBars(events: TimelineEvent[]): Bar[] {
  const sorted = [...events].sort((a, b) => a.t - b.t);
  const gaps: number[] = [];
  for (let i = 0; i + 1 < sorted.length; i++) gaps.push(sorted[i + 1].t - sorted[i].t);
  const median = gaps.length
    ? [...gaps].sort((a, b) => a - b)[Math.floor(gaps.length / 2)] || 1
    : 1;
  return sorted.map((ev, i) => ({
    ev,
    start: ev.t,
    length: i + 1 < sorted.length ? Math.max(sorted[i + 1].t - ev.t, 0.2) : median,
  }));
}

export function timelineSvg(events: TimelineEvent[]): string {
  const height = M.top + ACTORS.length * LANE_H + M.bottom;
  if (events.length === 0) {
    return svgDoc(W, height, [text(W / 2, height / 2, "empty log", { "text-anchor": "middle" })]);
  }
  const lanes = ACTORS.map((actor) => laneBars(events.filter((e) => e.actor === actor)));
  const tEnd = Math.max(...lanes.flat().map((b) => b.start + b.length));
  const x = linearScale([0, tEnd], [M.left, W - M.right]);

  const body: string[] = [];
  for (const v of linearTicks([0, tEnd], 8)) {
    const cx = x(v);
    body.push(el("line", { x1: cx, x2: cx, y1: M.top, y2: height - M.bottom, stroke: "#eee" }));
    body.push(text(cx, height - M.bottom + 16, `${v}`, { "font-size": 11, "text-anchor": "middle" }));
  }
  body.push(text((M.left + W - M.right) / 2, height - 10, "seconds", { "font-size": 13, "text-anchor": "middle" }));

  ACTORS.forEach((actor, li) => {
    const yTop = M.top + li * LANE_H + (LANE_H - BAR_H) / 2;
    const laneChildren: string[] = [];
    for (const bar of lanes[li]) {
      const label = `${bar.ev.kind}${bar.ev.part ? ` ${bar.ev.part}` : ""}`;
      laneChildren.push(
        el(
          "rect",
          {
            class: "ev",
            "data-actor": actor,
            "data-kind": bar.ev.kind,
            "data-part": bar.ev.part ?? "",
            x: x(bar.start),
            y: yTop,
            width: Math.max(x(bar.start + bar.length) - x(bar.start), 1),
            height: BAR_H,
            fill: partColor(bar.ev.part),
            stroke: "#444",
            "stroke-width": 0.5,
          },
          [el("title", {}, [label])],
        ),
      );
    }
    body.push(
      el("g", { class: "lane", "data-actor": actor }, [
        text(M.left - 10, yTop + BAR_H / 2 + 4, actor, { "font-size": 13, "text-anchor": "end" }),
        ...laneChildren,
      ]),
    );
  });
  return svgDoc(W, height, body);
}

export function renderTimeline(logPath: string, outPath: string): void {
  const events = parseTimeline(readFileSync(logPath, "utf-8"));
  writeFileSync(outPath, timelineSvg(events), "utf-8");
}
