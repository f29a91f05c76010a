import { MalformedLine } from "./errors.js";

export const ACTORS = ["worker", "robot"] as const;
export type Actor = (typeof ACTORS)[number];

export interface TimelineEvent {
  t: number;
  actor: Actor;
  kind: string;
  part: string | null;
  step: number;
  reward: number;
}

export function parseTimeline(text: string): TimelineEvent[] {
  const events: TimelineEvent[] = [];
  const lines = text.split(/\r?\n/);
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    let obj: Record<string, unknown>;
    try {
      obj = JSON.parse(line);
    } catch {
      throw new MalformedLine(i + 1, "not valid JSON");
    }
    if (typeof obj !== "object" || obj === null || Array.isArray(obj)) {
      throw new MalformedLine(i + 1, "expected a JSON object");
    }
    const { t, actor, kind, part, step, reward } = obj as Record<string, unknown>;
    if (typeof t !== "number" || !Number.isFinite(t)) {
      throw new MalformedLine(i + 1, `bad t ${JSON.stringify(t)}`);
    }
    if (actor !== "worker" && actor !== "robot") {
      throw new MalformedLine(i + 1, `unknown actor ${JSON.stringify(actor)}`);
    }
    if (typeof kind !== "string" || kind === "") {
      throw new MalformedLine(i + 1, `bad kind ${JSON.stringify(kind)}`);
    }
    if (part !== null && typeof part !== "string") {
      throw new MalformedLine(i + 1, `bad part ${JSON.stringify(part)}`);
    }
    if (typeof step !== "number" || !Number.isInteger(step)) {
      throw new MalformedLine(i + 1, `bad step ${JSON.stringify(step)}`);
    }
    if (typeof reward !== "number" || !Number.isFinite(reward)) {
      throw new MalformedLine(i + 1, `bad reward ${JSON.stringify(reward)}`);
    }
    events.push({ t, actor, kind, part, step, reward });
  }
  return events;
}
