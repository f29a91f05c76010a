// Minimal SVG string building: element helpers plus linear/log scales.
// Hand-rolled so charts render headless with no DOM or canvas dependency.

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function el(
  tag: string,
  attrs: Record<string, string | number>,
  children: string[] = [],
): string {
  const a = Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${typeof v === "number" ? round(v) : esc(v)}"`)
    .join("");
  if (children.length === 0) return `<${tag}${a}/>`;
  return `<${tag}${a}>${children.join("")}</${tag}>`;
}

export function text(x: number, y: number, s: string, attrs: Record<string, string | number> = {}): string {
  return el("text", { x, y, ...attrs }, [esc(s)]);
}

function round(v: number): string {
  return String(Math.round(v * 100) / 100);
}

export function svgDoc(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

export interface Scale {
  (v: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const lo = Math.log(domain[0]);
  const hi = Math.log(domain[1]);
  const span = hi - lo || 1;
  const [r0, r1] = range;
  const fn = ((v: number) => r0 + ((Math.log(v) - lo) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  return fn;
}

// Round-number ticks for a linear axis.
export function linearTicks(domain: [number, number], count = 6): number[] {
  const [lo, hi] = domain;
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = span / count / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / s) * s; v <= hi + 1e-9; v += s) ticks.push(Math.round(v * 1e9) / 1e9);
  return ticks;
}

// Categorical palette (8 distinct hues, colorblind-leaning).
export const PALETTE = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#17becf",
];
