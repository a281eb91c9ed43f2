import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { loadSchedule, ScheduleError } from "../src/schedule";

const FIXTURES = fileURLToPath(new URL("fixtures", import.meta.url));

export function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

describe("loadSchedule", () => {
  it("loads the three-utterance demo schedule", () => {
    const schedule = loadSchedule(fixture("demo1.schedule.json"));
    expect(schedule.version).toBe(1);
    expect(schedule.prelude).toHaveLength(0);
    expect(schedule.body).toHaveLength(3);
    expect(schedule.body.map((u) => u.text)).toEqual(["USA", "Europe", "Japan"]);
    expect(schedule.body[0].pitch).toBe(2.0);
    expect(schedule.metadata.rowCount).toBe(406);
  });

  it("loads a schedule with a prelude", () => {
    const schedule = loadSchedule(fixture("demo1_prelude.schedule.json"));
    expect(schedule.prelude).toHaveLength(1);
    expect(schedule.prelude[0].text).toMatch(/^Pitch represents/);
    expect(schedule.body).toHaveLength(3);
  });

  it("loads the voice-mapped demo schedule", () => {
    const schedule = loadSchedule(fixture("demo3.schedule.json"));
    expect(schedule.body).toHaveLength(60);
    const ids = new Set(schedule.body.map((u) => u.voiceId));
    expect([...ids].sort((a, b) => a - b)).toEqual([0, 34, 65]);
  });

  it("rejects other schedule versions", () => {
    const doc = JSON.parse(fixture("demo1.schedule.json"));
    doc.version = 2;
    expect(() => loadSchedule(JSON.stringify(doc))).toThrow(ScheduleError);
    expect(() => loadSchedule(JSON.stringify(doc))).toThrow(/version 2/);
  });

  it("rejects malformed documents", () => {
    expect(() => loadSchedule("{not json")).toThrow(/not valid JSON/);
    expect(() => loadSchedule("[]")).toThrow(/root must be an object/);
    expect(() => loadSchedule('{"version": 1}')).toThrow(/metadata/);
  });

  it("rejects mistyped utterances", () => {
    const doc = JSON.parse(fixture("demo1.schedule.json"));
    doc.body[1].pitch = "high";
    expect(() => loadSchedule(JSON.stringify(doc))).toThrow(/body\[1\].*pitch/);
    doc.body[1].pitch = 1;
    doc.body[2].voiceId = -4;
    expect(() => loadSchedule(JSON.stringify(doc))).toThrow(/voiceId/);
  });

  it("returns a deeply frozen schedule", () => {
    const schedule = loadSchedule(fixture("demo1.schedule.json"));
    expect(Object.isFrozen(schedule)).toBe(true);
    expect(Object.isFrozen(schedule.body)).toBe(true);
    expect(Object.isFrozen(schedule.body[0])).toBe(true);
    expect(Object.isFrozen(schedule.metadata)).toBe(true);
  });
});
