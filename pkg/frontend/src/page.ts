/**
 * DOM glue for the playback page: schedule loading via file picker or
 * ?url= parameter, transport controls, live transcript with the current
 * utterance highlighted, the platform voice list, and warning display.
 */

import { Player } from "./player";
import { loadSchedule, ScheduleError, Utterance } from "./schedule";
import { speechSynthesisAvailable, WebSpeechEngine } from "./webspeech";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing page element #${id}`);
  }
  return node as T;
}

const banner = el<HTMLDivElement>("banner");
const warningsBox = el<HTMLUListElement>("warnings");
const transcript = el<HTMLOListElement>("transcript");
const playButton = el<HTMLButtonElement>("play");
const statusBadge = el<HTMLSpanElement>("status");
const filePicker = el<HTMLInputElement>("file");
const voiceSelect = el<HTMLSelectElement>("voices");
const scheduleInfo = el<HTMLParagraphElement>("schedule-info");

let player: Player | null = null;
let engine: WebSpeechEngine | null = null;

function showError(message: string): void {
  banner.textContent = message;
  banner.hidden = false;
}

function clearError(): void {
  banner.hidden = true;
  banner.textContent = "";
}

function addWarning(message: string): void {
  const item = document.createElement("li");
  item.textContent = message;
  warningsBox.appendChild(item);
  warningsBox.hidden = false;
}

function describeUtterance(u: Utterance): string {
  return `pitch ${u.pitch.toFixed(2)} · rate ${u.rate.toFixed(2)} · voice ${u.voiceId}`;
}

function renderTranscript(current: Player): void {
  transcript.replaceChildren();
  current.queue.forEach((u, i) => {
    const item = document.createElement("li");
    const isPrelude = i < current.schedule.prelude.length;
    item.className = isPrelude ? "utterance prelude" : "utterance";
    const text = document.createElement("span");
    text.className = "utterance-text";
    text.textContent = u.text;
    const detail = document.createElement("span");
    detail.className = "utterance-detail";
    detail.textContent = describeUtterance(u);
    item.append(text, detail);
    transcript.appendChild(item);
  });
}

function refresh(current: Player): void {
  statusBadge.textContent = current.status;
  statusBadge.dataset.status = current.status;
  playButton.textContent = current.status === "playing" ? "Pause" : "Play";
  playButton.disabled = current.status === "done";
  const items = transcript.children;
  for (let i = 0; i < items.length; i += 1) {
    const speaking = current.status === "playing" && i === current.cursor;
    const spoken = i < current.cursor;
    items[i].classList.toggle("current", speaking);
    items[i].classList.toggle("spoken", spoken);
  }
}

function renderVoices(): void {
  voiceSelect.replaceChildren();
  const voices = engine ? engine.voices() : [];
  if (voices.length === 0) {
    const option = document.createElement("option");
    option.textContent = "no voices reported yet";
    voiceSelect.appendChild(option);
    return;
  }
  voices.forEach((voice, i) => {
    const option = document.createElement("option");
    const mark = voice.default ? " (default)" : "";
    option.textContent = `${i}: ${voice.name}${voice.lang ? ` [${voice.lang}]` : ""}${mark}`;
    voiceSelect.appendChild(option);
  });
}

function adopt(text: string, sourceName: string): void {
  clearError();
  warningsBox.replaceChildren();
  warningsBox.hidden = true;
  if (!engine) {
    showError("speech synthesis is not available in this browser; transcript only");
  }
  try {
    const schedule = loadSchedule(text);
    const dummyEngine = { voices: () => [], speak: () => Promise.resolve(), cancel: () => {} };
    player = new Player(engine ?? dummyEngine, schedule, {
      onChange: refresh,
      onWarning: addWarning,
    });
    const meta = schedule.metadata;
    scheduleInfo.textContent =
      `${sourceName}: ${schedule.body.length} utterances` +
      (schedule.prelude.length ? ` + ${schedule.prelude.length} prelude` : "") +
      (meta.generator ? ` · ${meta.generator}` : "");
    renderTranscript(player);
    refresh(player);
    playButton.disabled = !engine;
  } catch (err) {
    player = null;
    transcript.replaceChildren();
    scheduleInfo.textContent = "";
    if (err instanceof ScheduleError) {
      showError(`cannot load ${sourceName}: ${err.message}`);
    } else {
      throw err;
    }
  }
}

playButton.addEventListener("click", () => {
  if (!player) {
    return;
  }
  if (player.status === "playing") {
    player.pause();
  } else {
    player.play().catch((err) => showError(String(err)));
  }
});

filePicker.addEventListener("change", () => {
  const file = filePicker.files?.[0];
  if (!file) {
    return;
  }
  file
    .text()
    .then((text) => adopt(text, file.name))
    .catch((err) => showError(`cannot read ${file.name}: ${err}`));
});

function init(): void {
  if (speechSynthesisAvailable()) {
    engine = new WebSpeechEngine();
    window.speechSynthesis.addEventListener("voiceschanged", renderVoices);
  } else {
    showError("speech synthesis is not available in this browser; transcript only");
  }
  renderVoices();

  const url = new URLSearchParams(window.location.search).get("url");
  if (url) {
    fetch(url)
      .then((response) => {
        if (!response.ok) {
          throw new Error(`${response.status} ${response.statusText}`);
        }
        return response.text();
      })
      .then((text) => adopt(text, url))
      .catch((err) => showError(`cannot fetch ${url}: ${err}`));
  }
}

init();
