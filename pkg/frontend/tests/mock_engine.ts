/** Recording speech engine for tests, with optional manual completion. */

import { EngineVoice, SpeechEngine, SpeechRequest } from "../src/player";

export class MockEngine implements SpeechEngine {
  readonly requests: SpeechRequest[] = [];
  canceled = 0;
  paused = 0;
  resumed = 0;

  private readonly voiceList: EngineVoice[];
  private readonly manual: boolean;
  private pending: (() => void)[] = [];

  constructor(options: { voices?: string[]; defaultIndex?: number; manual?: boolean } = {}) {
    const names = options.voices ?? [];
    const defaultIndex = options.defaultIndex ?? 0;
    this.voiceList = names.map((name, i) => ({
      name,
      default: i === defaultIndex,
    }));
    this.manual = options.manual ?? false;
  }

  voices(): readonly EngineVoice[] {
    return this.voiceList;
  }

  speak(request: SpeechRequest): Promise<void> {
    if (this.pending.length > 0) {
      throw new Error("concurrent synthesis request");
    }
    this.requests.push(request);
    if (!this.manual) {
      return Promise.resolve();
    }
    return new Promise((resolve) => {
      this.pending.push(resolve);
    });
  }

  /** Complete the in-flight utterance (manual mode). */
  finish(): void {
    const resolve = this.pending.shift();
    if (!resolve) {
      throw new Error("no utterance in flight");
    }
    resolve();
  }

  cancel(): void {
    this.canceled += 1;
  }

  pause(): void {
    this.paused += 1;
  }

  resume(): void {
    this.resumed += 1;
  }
}

/** Convenience view of what was delivered. */
export function delivered(engine: MockEngine): Array<[string, number, number]> {
  return engine.requests.map((r) => [r.text, r.pitch, r.rate]);
}
