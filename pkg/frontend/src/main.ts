import { SessionClient } from "./api.js";
import { bindPhysicalKeys, Keypad } from "./keypad.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("service") ?? "http://127.0.0.1:8040";
const root = document.getElementById("keypad");
if (root === null) throw new Error("missing #keypad element");

const keypad = new Keypad(root, new SessionClient(base), {
  compact: params.has("compact"),
});
bindPhysicalKeys(keypad, window);
keypad.start().catch((error: unknown) => {
  root.textContent = `could not reach the service at ${base}: ${String(error)}`;
});
