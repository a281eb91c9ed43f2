import { describe, expect, it } from "vitest";

import { Player, PlayerStatus } from "../src/player";
import { loadSchedule, Schedule } from "../src/schedule";
import { delivered, MockEngine } from "./mock_engine";
import { fixture } from "./schedule.test";

const MANY_VOICES = Array.from({ length: 100 }, (_, i) => `voice-${i}`);

function demoSchedule(name: string): Schedule {
  return loadSchedule(fixture(name));
}

describe("playback", () => {
  it.each(["demo1.schedule.json", "demo2.schedule.json", "demo3.schedule.json"])(
    "delivers the body of %s exactly, in order, without duplicates",
    async (name) => {
      const schedule = demoSchedule(name);
      const engine = new MockEngine({ voices: MANY_VOICES });
      const player = new Player(engine, schedule);

      expect(player.status).toBe("idle");
      expect(player.cursor).toBe(0);
      await player.play();

      expect(player.status).toBe("done");
      expect(player.cursor).toBe(schedule.body.length);
      expect(delivered(engine)).toEqual(schedule.body.map((u) => [u.text, u.pitch, u.rate]));
    }
  );

  it("speaks the prelude before the body", async () => {
    const schedule = demoSchedule("demo1_prelude.schedule.json");
    const engine = new MockEngine({ voices: MANY_VOICES });
    const player = new Player(engine, schedule);
    await player.play();
    expect(engine.requests.map((r) => r.text)).toEqual(
      [...schedule.prelude, ...schedule.body].map((u) => u.text)
    );
  });

  it("uses the voice at the voiceId position in the platform list", async () => {
    const schedule = demoSchedule("demo3.schedule.json");
    const engine = new MockEngine({ voices: MANY_VOICES });
    const player = new Player(engine, schedule);
    await player.play();
    for (const [i, request] of engine.requests.entries()) {
      expect(request.voice?.name).toBe(`voice-${schedule.body[i].voiceId}`);
    }
    expect(player.warnings).toHaveLength(0);
  });

  it("falls back to the default voice with a warning when voiceId is out of range", async () => {
    const schedule = demoSchedule("demo3.schedule.json"); // voice IDs 65, 34, 0
    const ten = Array.from({ length: 10 }, (_, i) => `v${i}`);
    const engine = new MockEngine({ voices: ten, defaultIndex: 3 });
    const warned: string[] = [];
    const player = new Player(engine, schedule, { onWarning: (m) => warned.push(m) });
    await player.play();

    for (const [i, request] of engine.requests.entries()) {
      const id = schedule.body[i].voiceId;
      expect(request.voice?.name).toBe(id < 10 ? `v${id}` : "v3");
    }
    // one visible warning per distinct unavailable ID
    expect(warned).toHaveLength(2);
    expect(warned.join("\n")).toMatch(/voice 65 is not available/);
    expect(warned.join("\n")).toMatch(/voice 34 is not available/);
    expect(player.warnings).toEqual(warned);
    // everything was still spoken
    expect(engine.requests).toHaveLength(schedule.body.length);
  });

  it("uses the engine default silently when the voice list is empty", async () => {
    const schedule = demoSchedule("demo1.schedule.json"); // every voiceId is 0
    const engine = new MockEngine();
    const player = new Player(engine, schedule);
    await player.play();
    expect(engine.requests.every((r) => r.voice === null)).toBe(true);
    expect(player.warnings).toHaveLength(0);
  });

  it("moves straight to done on an empty body", () => {
    const doc = JSON.parse(fixture("demo1.schedule.json"));
    doc.body = [];
    const schedule = loadSchedule(JSON.stringify(doc));
    const engine = new MockEngine();
    const player = new Player(engine, schedule);
    expect(player.status).toBe("idle");
    void player.play();
    expect(player.status).toBe("done");
    expect(engine.requests).toHaveLength(0);
  });

  it("pauses between utterances and resumes without duplication", async () => {
    const schedule = demoSchedule("demo2.schedule.json");
    const engine = new MockEngine({ voices: MANY_VOICES, manual: true });
    const player = new Player(engine, schedule);

    const firstRun = player.play();
    expect(player.status).toBe("playing");
    engine.finish(); // utterance 0 completes
    await Promise.resolve();
    player.pause();
    engine.finish(); // utterance 1 was already in flight; it completes
    await firstRun;

    expect(player.status).toBe("paused");
    expect(engine.requests).toHaveLength(2);
    expect(player.cursor).toBe(2);

    const secondRun = player.play();
    expect(player.status).toBe("playing");
    while (player.cursor < schedule.body.length) {
      engine.finish();
      await Promise.resolve();
    }
    await secondRun;

    expect(player.status).toBe("done");
    expect(delivered(engine)).toEqual(schedule.body.map((u) => [u.text, u.pitch, u.rate]));
    const texts = engine.requests.map((r) => r.text);
    expect(new Set(texts).size).toBe(texts.length);
  });

  it("forwards pause and resume to engines that support them", async () => {
    const schedule = demoSchedule("demo1.schedule.json");
    const engine = new MockEngine({ voices: MANY_VOICES, manual: true });
    const player = new Player(engine, schedule);

    const run = player.play();
    player.pause();
    expect(engine.paused).toBe(1);
    const resumed = player.play(); // same run: the first utterance is still in flight
    expect(engine.resumed).toBe(1);
    engine.finish();
    await Promise.resolve();
    engine.finish();
    await Promise.resolve();
    engine.finish();
    await run;
    await resumed;
    expect(player.status).toBe("done");
    expect(engine.requests).toHaveLength(3);
  });

  it("tracks status transitions idle to playing to paused to playing to done", async () => {
    const schedule = demoSchedule("demo1.schedule.json");
    const engine = new MockEngine({ voices: MANY_VOICES, manual: true });
    const seen: PlayerStatus[] = [];
    const player = new Player(engine, schedule, {
      onChange: (p) => {
        if (seen[seen.length - 1] !== p.status) {
          seen.push(p.status);
        }
      },
    });

    const run = player.play();
    engine.finish();
    await Promise.resolve();
    player.pause();
    engine.finish();
    await run;
    const rest = player.play();
    engine.finish();
    await rest;

    expect(seen).toEqual(["playing", "paused", "playing", "done"]);
    expect(player.status).toBe("done");
  });

  it("never mutates the loaded schedule", async () => {
    const text = fixture("demo3.schedule.json");
    const schedule = loadSchedule(text);
    const before = JSON.stringify(schedule);
    const engine = new MockEngine({ voices: ["only-one"] });
    const player = new Player(engine, schedule, { onWarning: () => {} });
    await player.play();
    expect(JSON.stringify(schedule)).toBe(before);
    expect(player.schedule).toBe(schedule);
  });

  it("play on a finished player is a no-op", async () => {
    const schedule = demoSchedule("demo1.schedule.json");
    const engine = new MockEngine({ voices: MANY_VOICES });
    const player = new Player(engine, schedule);
    await player.play();
    await player.play();
    expect(engine.requests).toHaveLength(3);
  });
});
