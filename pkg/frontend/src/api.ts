/** Thin HTTP client for the session service.  No engine logic lives here:
 * every method posts an event or fetches state and validates the reply. */

import { asStateView, MalformedViewError, StateView } from "./view.js";

export type EventType =
  | "digit"
  | "select"
  | "convert"
  | "commit"
  | "backspace"
  | "advance"
  | "mode";

export interface KeyEvent {
  type: EventType;
  key?: string;
}

export type SessionMode = "disambiguation" | "multitap";

/** The server answered with an error status; session state is unchanged. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ServiceError";
  }
}

export interface SessionApi {
  create(mode?: SessionMode): Promise<string>;
  view(id: string): Promise<StateView>;
  send(id: string, event: KeyEvent): Promise<StateView>;
  close(id: string): Promise<void>;
}

const JSON_HEADERS = { "Content-Type": "application/json" };

export class SessionClient implements SessionApi {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = globalThis.fetch.bind(globalThis),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let detail = `${response.status} ${response.statusText}`;
      try {
        const body: unknown = await response.json();
        if (isDetail(body)) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ServiceError(response.status, detail);
    }
    return response;
  }

  async create(mode?: SessionMode): Promise<string> {
    const response = await this.request("/sessions", {
      method: "POST",
      headers: JSON_HEADERS,
      body: JSON.stringify(mode === undefined ? {} : { mode }),
    });
    const body: unknown = await response.json();
    if (
      typeof body !== "object" ||
      body === null ||
      typeof (body as { id?: unknown }).id !== "string"
    ) {
      throw new MalformedViewError("session create reply has no id");
    }
    return (body as { id: string }).id;
  }

  async view(id: string): Promise<StateView> {
    const response = await this.request(`/sessions/${id}`);
    return asStateView(await response.json());
  }

  async send(id: string, event: KeyEvent): Promise<StateView> {
    const response = await this.request(`/sessions/${id}/events`, {
      method: "POST",
      headers: JSON_HEADERS,
      body: JSON.stringify(event),
    });
    return asStateView(await response.json());
  }

  async close(id: string): Promise<void> {
    await this.request(`/sessions/${id}`, { method: "DELETE" });
  }
}

function isDetail(body: unknown): body is { detail: string } {
  return (
    typeof body === "object" &&
    body !== null &&
    typeof (body as { detail?: unknown }).detail === "string"
  );
}
