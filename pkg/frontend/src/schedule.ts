/**
 * Schedule document loading.
 *
 * The player consumes the canonical schedule JSON (version 1) produced by
 * the compiler. Anything malformed is rejected with a message fit for the
 * error banner, and the loaded schedule is deeply frozen: playback never
 * mutates it.
 */

export interface Utterance {
  readonly index: number;
  readonly text: string;
  readonly pitch: number;
  readonly rate: number;
  readonly voiceId: number;
}

export interface ScheduleMetadata {
  readonly specHash: string;
  readonly rowCount: number;
  readonly generator: string;
}

export interface Schedule {
  readonly version: 1;
  readonly metadata: ScheduleMetadata;
  readonly prelude: readonly Utterance[];
  readonly body: readonly Utterance[];
}

export const SCHEDULE_VERSION = 1;

export class ScheduleError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ScheduleError";
  }
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function asUtterance(raw: unknown, where: string): Utterance {
  if (!isRecord(raw)) {
    throw new ScheduleError(`${where} must be an object`);
  }
  const { index, text, pitch, rate, voiceId } = raw;
  if (!Number.isInteger(index) || (index as number) < 0) {
    throw new ScheduleError(`${where}: index must be a non-negative integer`);
  }
  if (typeof text !== "string") {
    throw new ScheduleError(`${where}: text must be a string`);
  }
  if (typeof pitch !== "number" || !Number.isFinite(pitch)) {
    throw new ScheduleError(`${where}: pitch must be a finite number`);
  }
  if (typeof rate !== "number" || !Number.isFinite(rate)) {
    throw new ScheduleError(`${where}: rate must be a finite number`);
  }
  if (!Number.isInteger(voiceId) || (voiceId as number) < 0) {
    throw new ScheduleError(`${where}: voiceId must be a non-negative integer`);
  }
  return Object.freeze({
    index: index as number,
    text,
    pitch,
    rate,
    voiceId: voiceId as number,
  });
}

function asUtteranceList(raw: unknown, name: string): readonly Utterance[] {
  if (raw === undefined) {
    return Object.freeze([]);
  }
  if (!Array.isArray(raw)) {
    throw new ScheduleError(`${name} must be an array`);
  }
  return Object.freeze(raw.map((entry, i) => asUtterance(entry, `${name}[${i}]`)));
}

/** Parse and validate schedule JSON text. Throws ScheduleError on any problem. */
export function loadSchedule(text: string): Schedule {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new ScheduleError(`not valid JSON: ${err instanceof Error ? err.message : String(err)}`);
  }
  if (!isRecord(doc)) {
    throw new ScheduleError("schedule root must be an object");
  }
  if (doc.version !== SCHEDULE_VERSION) {
    throw new ScheduleError(
      `unsupported schedule version ${JSON.stringify(doc.version)}; this player understands version ${SCHEDULE_VERSION}`
    );
  }
  const meta = doc.metadata;
  if (!isRecord(meta)) {
    throw new ScheduleError("schedule metadata must be an object");
  }
  const metadata: ScheduleMetadata = Object.freeze({
    specHash: typeof meta.specHash === "string" ? meta.specHash : "",
    rowCount: typeof meta.rowCount === "number" ? meta.rowCount : 0,
    generator: typeof meta.generator === "string" ? meta.generator : "",
  });
  return Object.freeze({
    version: SCHEDULE_VERSION,
    metadata,
    prelude: asUtteranceList(doc.prelude, "prelude"),
    body: asUtteranceList(doc.body, "body"),
  });
}
