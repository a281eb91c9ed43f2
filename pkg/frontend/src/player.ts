/**
 * Sequential schedule playback over an abstract speech engine.
 *
 * The engine sits behind a small interface so tests can substitute a mock
 * and the page can plug in the browser's speech synthesis. Playback walks
 * the utterance queue (prelude first, then body) one synthesis request at a
 * time; the next request starts only after the previous one completes.
 */

import { Schedule, Utterance } from "./schedule";

export interface EngineVoice {
  readonly name: string;
  readonly lang?: string;
  readonly default?: boolean;
  /** Engine-specific handle (the browser adapter keeps the native voice here). */
  readonly handle?: unknown;
}

export interface SpeechRequest {
  readonly text: string;
  readonly pitch: number;
  readonly rate: number;
  /** Resolved engine voice; null means the engine's own default. */
  readonly voice: EngineVoice | null;
}

export interface SpeechEngine {
  /** Platform voice list; voice IDs index into it. */
  voices(): readonly EngineVoice[];
  /** Speak one utterance; the promise settles when it finishes. */
  speak(request: SpeechRequest): Promise<void>;
  cancel(): void;
  pause?(): void;
  resume?(): void;
}

export type PlayerStatus = "idle" | "playing" | "paused" | "done";

export interface PlayerEvents {
  /** Fired on every status or cursor change. */
  onChange?: (player: Player) => void;
  /** Fired once per distinct unavailable voice ID. */
  onWarning?: (message: string) => void;
}

export class Player {
  readonly schedule: Schedule;
  /** Utterances in speaking order: prelude, then body. */
  readonly queue: readonly Utterance[];

  private readonly engine: SpeechEngine;
  private readonly events: PlayerEvents;
  private readonly warned = new Set<number>();
  private readonly warningLog: string[] = [];
  private statusValue: PlayerStatus = "idle";
  private cursorValue = 0;
  private run: Promise<void> | null = null;

  constructor(engine: SpeechEngine, schedule: Schedule, events: PlayerEvents = {}) {
    this.engine = engine;
    this.schedule = schedule;
    this.queue = [...schedule.prelude, ...schedule.body];
    this.events = events;
  }

  get status(): PlayerStatus {
    return this.statusValue;
  }

  /** Index of the next utterance to speak; queue.length once finished. */
  get cursor(): number {
    return this.cursorValue;
  }

  get warnings(): readonly string[] {
    return this.warningLog;
  }

  /**
   * Start or resume playback. Resolves when playback stops, either because
   * the queue is exhausted (done) or pause() was called.
   */
  play(): Promise<void> {
    if (this.statusValue === "done") {
      return Promise.resolve();
    }
    if (this.statusValue === "playing") {
      return this.run ?? Promise.resolve();
    }
    const resumed = this.statusValue === "paused";
    this.setStatus("playing");
    if (resumed) {
      this.engine.resume?.();
    }
    if (this.run === null) {
      this.run = this.pump().finally(() => {
        this.run = null;
      });
    }
    return this.run;
  }

  /**
   * Stop after the in-flight utterance completes. Engines that support
   * mid-utterance pausing are paused immediately; either way no utterance
   * is ever delivered twice.
   */
  pause(): void {
    if (this.statusValue !== "playing") {
      return;
    }
    this.setStatus("paused");
    this.engine.pause?.();
  }

  private async pump(): Promise<void> {
    while (this.statusValue === "playing" && this.cursorValue < this.queue.length) {
      const utterance = this.queue[this.cursorValue];
      await this.engine.speak({
        text: utterance.text,
        pitch: utterance.pitch,
        rate: utterance.rate,
        voice: this.resolveVoice(utterance.voiceId),
      });
      this.cursorValue += 1;
      this.notify();
    }
    if (this.cursorValue >= this.queue.length) {
      this.setStatus("done");
    }
  }

  private resolveVoice(voiceId: number): EngineVoice | null {
    const voices = this.engine.voices();
    if (voiceId < voices.length) {
      return voices[voiceId];
    }
    const fallback = voices.find((v) => v.default) ?? voices[0] ?? null;
    // ID 0 is the conventional default, so its fallback stays silent.
    if (voiceId !== 0 && !this.warned.has(voiceId)) {
      this.warned.add(voiceId);
      const using = fallback ? `"${fallback.name}"` : "the engine default";
      const message = `voice ${voiceId} is not available (platform has ${voices.length} voices); using ${using}`;
      this.warningLog.push(message);
      this.events.onWarning?.(message);
    }
    return fallback;
  }

  private setStatus(status: PlayerStatus): void {
    if (this.statusValue !== status) {
      this.statusValue = status;
      this.notify();
    }
  }

  private notify(): void {
    this.events.onChange?.(this);
  }
}
