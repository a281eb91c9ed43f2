/**
 * Speech engine adapter over the browser's speech synthesis API.
 *
 * Voice IDs index into getVoices(); the list is platform dependent and
 * loads asynchronously in some browsers, so the page re-reads it on the
 * voiceschanged event.
 */

import { EngineVoice, SpeechEngine, SpeechRequest } from "./player";

export function speechSynthesisAvailable(): boolean {
  return typeof window !== "undefined" && "speechSynthesis" in window;
}

export class WebSpeechEngine implements SpeechEngine {
  private readonly synth: SpeechSynthesis;

  constructor(synth: SpeechSynthesis = window.speechSynthesis) {
    this.synth = synth;
  }

  voices(): readonly EngineVoice[] {
    return this.synth.getVoices().map((voice) => ({
      name: voice.name,
      lang: voice.lang,
      default: voice.default,
      handle: voice,
    }));
  }

  speak(request: SpeechRequest): Promise<void> {
    return new Promise((resolve, reject) => {
      const utterance = new SpeechSynthesisUtterance(request.text);
      utterance.pitch = request.pitch;
      utterance.rate = request.rate;
      if (request.voice && request.voice.handle) {
        utterance.voice = request.voice.handle as SpeechSynthesisVoice;
      }
      utterance.onend = () => resolve();
      utterance.onerror = (event) => {
        // canceling queued speech fires error events; treat as completion
        if (event.error === "canceled" || event.error === "interrupted") {
          resolve();
        } else {
          reject(new Error(`speech synthesis failed: ${event.error}`));
        }
      };
      this.synth.speak(utterance);
    });
  }

  cancel(): void {
    this.synth.cancel();
  }

  pause(): void {
    this.synth.pause();
  }

  resume(): void {
    this.synth.resume();
  }
}
