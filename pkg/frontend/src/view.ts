/** The session view as the service reports it.  Field names are the wire
 * contract; everything the keypad shows comes out of this object. */

export type CandidateSource = "exact" | "prediction";

export interface CandidateView {
  reading: string;
  source: CandidateSource;
  frequency: number;
}

export interface StateView {
  committed: string;
  pending: string;
  candidates: CandidateView[];
  cursor: number | null;
  stage: string;
  formCursor: number | null;
  forms: string[];
}

const STAGES = new Set(["entering", "cycling_reading", "cycling_form", "multitap"]);

export class MalformedViewError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "MalformedViewError";
  }
}

function fail(field: string, value: unknown): never {
  throw new MalformedViewError(`bad view field ${field}: ${JSON.stringify(value)}`);
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function stringField(record: Record<string, unknown>, field: string): string {
  const value = record[field];
  if (typeof value !== "string") fail(field, value);
  return value;
}

function indexField(record: Record<string, unknown>, field: string): number | null {
  const value = record[field];
  if (value === null) return null;
  if (typeof value !== "number" || !Number.isInteger(value) || value < 0) {
    fail(field, value);
  }
  return value;
}

function candidateField(value: unknown): CandidateView {
  if (!isRecord(value)) fail("candidates[]", value);
  const reading = value["reading"];
  const source = value["source"];
  const frequency = value["frequency"];
  if (typeof reading !== "string") fail("candidates[].reading", reading);
  if (source !== "exact" && source !== "prediction") {
    fail("candidates[].source", source);
  }
  if (typeof frequency !== "number") fail("candidates[].frequency", frequency);
  return { reading, source, frequency };
}

/** Validate a decoded JSON body into a StateView, or throw MalformedViewError. */
export function asStateView(data: unknown): StateView {
  if (!isRecord(data)) fail("view", data);
  const stage = stringField(data, "stage");
  if (!STAGES.has(stage)) fail("stage", stage);
  const rawCandidates = data["candidates"];
  if (!Array.isArray(rawCandidates)) fail("candidates", rawCandidates);
  const rawForms = data["forms"];
  if (!Array.isArray(rawForms) || rawForms.some((f) => typeof f !== "string")) {
    fail("forms", rawForms);
  }
  return {
    committed: stringField(data, "committed"),
    pending: stringField(data, "pending"),
    candidates: rawCandidates.map(candidateField),
    cursor: indexField(data, "cursor"),
    stage,
    formCursor: indexField(data, "formCursor"),
    forms: rawForms as string[],
  };
}
