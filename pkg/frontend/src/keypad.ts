/** The keypad itself: a pure render of server state plus a controller that
 * turns button presses into service events.
 *
 * The client never computes candidates or touches kana tables; the only
 * writing it does is showing fields the server sent back.  One request is
 * in flight at a time: every press disables the keypad until the
 * authoritative response arrives and is re-rendered.
 */

import { KeyEvent, ServiceError, SessionApi, SessionMode } from "./api.js";
import { MalformedViewError, StateView } from "./view.js";

/** Grid geometry is fixed: three columns by four rows. */
export const GRID_ROWS: readonly (readonly string[])[] = [
  ["1", "2", "3"],
  ["4", "5", "6"],
  ["7", "8", "9"],
  ["*", "0", "#"],
];

/** Cosmetic captions matching the packaged layout.  Never consulted for
 * behavior; the server owns the real key assignment. */
export const KEY_CAPTIONS: Readonly<Record<string, string>> = {
  "1": "あいうえお",
  "2": "かきくけこ",
  "3": "さしすせそ",
  "4": "たちつてとっ",
  "5": "なにぬねの",
  "6": "はひふへほ",
  "7": "まみむめも",
  "8": "やゆよゃゅょ",
  "9": "らりるれろ",
  "0": "わをんー",
  "*": "゛゜小",
  "#": "、。?!・",
};

export const CONTROLS: readonly { label: string; type: KeyEvent["type"] }[] = [
  { label: "SELECT", type: "select" },
  { label: "CONVERT", type: "convert" },
  { label: "COMMIT", type: "commit" },
  { label: "BACKSPACE", type: "backspace" },
  { label: "MODE", type: "mode" },
];

const KEY_BUTTONS = new Set(GRID_ROWS.flat());

/** One-to-one button-to-event mapping; throws on unknown buttons. */
export function eventForButton(button: string): KeyEvent {
  if (KEY_BUTTONS.has(button)) return { type: "digit", key: button };
  const control = CONTROLS.find((c) => c.label === button);
  if (control) return { type: control.type };
  throw new Error(`unknown button ${JSON.stringify(button)}`);
}

export interface UiState {
  view: StateView | null;
  compact: boolean;
  busy: boolean;
  error: string | null;
  retriable: boolean;
  disabled: boolean;
}

interface StripItem {
  text: string;
  highlighted: boolean;
}

/** What the candidate strip shows for a view.  While cycling written forms
 * the strip presents the server's form ring; compact mode keeps only the
 * cursor item (nothing before a cursor exists). */
export function stripItems(view: StateView, compact: boolean): StripItem[] {
  let items: StripItem[];
  if (view.stage === "cycling_form") {
    items = view.forms.map((text, i) => ({
      text,
      highlighted: i === view.formCursor,
    }));
  } else {
    items = view.candidates.map((c, i) => ({
      text: c.reading,
      highlighted: i === view.cursor,
    }));
  }
  return compact ? items.filter((item) => item.highlighted) : items;
}

export function renderView(doc: Document, ui: UiState): HTMLElement {
  const keypad = doc.createElement("div");
  keypad.className = "keypad";
  const blocked = ui.busy || ui.disabled || ui.view === null;

  if (ui.error !== null) {
    const banner = doc.createElement("div");
    banner.className = "banner";
    banner.setAttribute("role", "alert");
    banner.textContent = ui.error;
    if (ui.retriable) {
      const retry = doc.createElement("button");
      retry.className = "retry";
      retry.dataset["action"] = "retry";
      retry.textContent = "RETRY";
      banner.append(" ", retry);
    }
    keypad.append(banner);
  }

  const textline = doc.createElement("div");
  textline.className = "textline";
  const committed = doc.createElement("span");
  committed.className = "committed";
  committed.textContent = ui.view?.committed ?? "";
  const pending = doc.createElement("span");
  pending.className = "pending";
  pending.textContent = ui.view?.pending ?? "";
  textline.append(committed, pending);
  keypad.append(textline);

  const strip = doc.createElement("ol");
  strip.className = "candidates";
  for (const item of ui.view ? stripItems(ui.view, ui.compact) : []) {
    const entry = doc.createElement("li");
    entry.className = item.highlighted ? "candidate cursor" : "candidate";
    entry.textContent = item.text;
    strip.append(entry);
  }
  keypad.append(strip);

  const grid = doc.createElement("div");
  grid.className = "grid";
  for (const rowKeys of GRID_ROWS) {
    const row = doc.createElement("div");
    row.className = "row";
    for (const key of rowKeys) {
      const button = doc.createElement("button");
      button.className = "key";
      button.dataset["button"] = key;
      button.disabled = blocked;
      const label = doc.createElement("b");
      label.textContent = key;
      const caption = doc.createElement("small");
      caption.textContent = KEY_CAPTIONS[key] ?? "";
      button.append(label, caption);
      row.append(button);
    }
    grid.append(row);
  }
  keypad.append(grid);

  const controls = doc.createElement("div");
  controls.className = "controls";
  for (const control of CONTROLS) {
    const button = doc.createElement("button");
    button.className = "control";
    button.dataset["button"] = control.label;
    button.disabled = blocked;
    button.textContent = control.label;
    controls.append(button);
  }
  const compactToggle = doc.createElement("button");
  compactToggle.className = "control";
  compactToggle.dataset["action"] = "compact";
  compactToggle.textContent = ui.compact ? "FULL" : "COMPACT";
  controls.append(compactToggle);
  keypad.append(controls);

  return keypad;
}

export interface KeypadOptions {
  mode?: SessionMode;
  compact?: boolean;
  /** Multi-tap idle time before a synthetic ADVANCE is posted. */
  advanceMs?: number;
}

export class Keypad {
  private readonly ui: UiState = {
    view: null,
    compact: false,
    busy: false,
    error: null,
    retriable: false,
    disabled: false,
  };
  private readonly mode: SessionMode | undefined;
  private readonly advanceMs: number;
  private sessionId: string | null = null;
  private advanceTimer: ReturnType<typeof setTimeout> | null = null;
  private retryEvent: KeyEvent | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: SessionApi,
    options: KeypadOptions = {},
  ) {
    this.mode = options.mode;
    this.ui.compact = options.compact ?? false;
    this.advanceMs = options.advanceMs ?? 1000;
    root.addEventListener("click", (e) => this.onClick(e));
  }

  async start(): Promise<void> {
    this.sessionId = await this.client.create(this.mode);
    this.ui.view = await this.client.view(this.sessionId);
    this.render();
  }

  get view(): StateView | null {
    return this.ui.view;
  }

  get committedText(): string {
    return this.ui.view?.committed ?? "";
  }

  setCompact(on: boolean): void {
    this.ui.compact = on;
    this.render();
  }

  /** Press a grid key ("1".."9", "0", "*", "#") or a control label.
   * Returns false when the press was swallowed (busy, disabled, failed). */
  async press(button: string): Promise<boolean> {
    if (this.ui.busy || this.ui.disabled || this.sessionId === null) return false;
    return this.dispatch(eventForButton(button));
  }

  /** Re-send the event that failed on the network. */
  async retry(): Promise<boolean> {
    if (this.retryEvent === null || this.ui.busy || this.sessionId === null) {
      return false;
    }
    return this.dispatch(this.retryEvent);
  }

  /** Documented physical-key mapping: the digit, star, and hash keys press
   * their grid button, Enter commits, Backspace deletes.  True if handled. */
  handleKeydown(key: string): boolean {
    let button: string | null = null;
    if (KEY_BUTTONS.has(key)) button = key;
    else if (key === "Enter") button = "COMMIT";
    else if (key === "Backspace") button = "BACKSPACE";
    if (button === null) return false;
    void this.press(button);
    return true;
  }

  private onClick(e: Event): void {
    const target = e.target as Element | null;
    const button = target?.closest<HTMLElement>("button");
    if (!button) return;
    if (button.dataset["action"] === "retry") {
      void this.retry();
    } else if (button.dataset["action"] === "compact") {
      this.setCompact(!this.ui.compact);
    } else if (button.dataset["button"] !== undefined) {
      void this.press(button.dataset["button"]);
    }
  }

  private async dispatch(event: KeyEvent): Promise<boolean> {
    this.cancelAdvance();
    this.ui.busy = true;
    this.ui.error = null;
    this.ui.retriable = false;
    this.render();
    let accepted = false;
    try {
      this.ui.view = await this.client.send(this.sessionId as string, event);
      this.retryEvent = null;
      accepted = true;
    } catch (error) {
      if (error instanceof ServiceError) {
        // The server refused the event and kept its state; just say why.
        this.ui.error = error.message;
        this.retryEvent = null;
      } else if (error instanceof MalformedViewError) {
        this.ui.error = `unusable server response (${error.message})`;
        this.ui.disabled = true;
      } else {
        this.ui.error = "connection failed";
        this.ui.retriable = true;
        this.retryEvent = event;
      }
    } finally {
      this.ui.busy = false;
      this.render();
      this.scheduleAdvance();
    }
    return accepted;
  }

  private scheduleAdvance(): void {
    const view = this.ui.view;
    if (this.ui.disabled || view === null) return;
    if (view.stage === "multitap" && view.pending !== "") {
      this.advanceTimer = setTimeout(() => {
        this.advanceTimer = null;
        void this.dispatch({ type: "advance" });
      }, this.advanceMs);
    }
  }

  private cancelAdvance(): void {
    if (this.advanceTimer !== null) {
      clearTimeout(this.advanceTimer);
      this.advanceTimer = null;
    }
  }

  private render(): void {
    this.root.replaceChildren(renderView(this.root.ownerDocument, this.ui));
  }
}

/** Route physical keydown events on `target` to the keypad. */
export function bindPhysicalKeys(
  keypad: Keypad,
  target: EventTarget,
): () => void {
  const listener = (e: Event) => {
    const key = (e as KeyboardEvent).key;
    if (keypad.handleKeydown(key)) e.preventDefault();
  };
  target.addEventListener("keydown", listener);
  return () => target.removeEventListener("keydown", listener);
}
