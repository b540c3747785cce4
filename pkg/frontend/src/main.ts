// Console wiring: one session at a time, one stream subscription, and a
// single command queue so events reach the service in press order.

import { createClient, ApiError } from "./api.js";
import { COMMANDS, COMMAND_BY_KEY, commandToEvent, type CommandArgs } from "./commands.js";
import {
  applyEventResponse,
  applySessionCreated,
  applyStreamMessage,
  initialState,
  setPendingTarget,
  setWarning,
  type ViewState,
} from "./store.js";
import {
  renderHint,
  renderHistory,
  renderIso,
  renderLayers,
  renderScore,
  renderStatus,
  renderTray,
} from "./render.js";
import type { GestureCode, Level } from "./types.js";

const client = createClient("");
let view: ViewState = initialState();
let queue: Promise<void> = Promise.resolve();
let streamAbort: AbortController | null = null;

// Carry/selection state arrives on the stream, not in POST responses. The
// command queue waits for each event's echo so a fast tap-then-grasp never
// races its own selection.
let lastEchoIndex = -1;
let echoWaiters: { index: number; resolve: () => void }[] = [];

function noteEcho(index: number): void {
  lastEchoIndex = Math.max(lastEchoIndex, index);
  echoWaiters = echoWaiters.filter((waiter) => {
    if (waiter.index <= lastEchoIndex) {
      waiter.resolve();
      return false;
    }
    return true;
  });
}

function waitForEcho(index: number, timeoutMs = 800): Promise<void> {
  if (lastEchoIndex >= index) return Promise.resolve();
  return new Promise((resolve) => {
    echoWaiters.push({ index, resolve });
    setTimeout(resolve, timeoutMs); // degrade gracefully if the stream drops
  });
}

const $ = (id: string) => document.getElementById(id) as HTMLElement;

function redraw(): void {
  renderStatus(view, $("status"));
  renderScore(view, $("score"));
  renderHint(view, $("hint"));
  renderHistory(view, $("history"));
  renderLayers(view, $("layers"));
  renderIso(view, $("iso") as HTMLCanvasElement);
  renderTray(view, $("tray"), (pieceId) => {
    view = setPendingTarget(view, pieceId);
    redraw();
    issue("ga");
  });
}

function issue(code: GestureCode, args: CommandArgs = {}): void {
  // Serialized through one queue: event order == press order.
  queue = queue.then(async () => {
    if (!view.sessionId || view.completed) return;
    const built = commandToEvent(view, code, args);
    if (!built.ok) {
      view = setWarning(view, built.warning);
      redraw();
      return;
    }
    try {
      const response = await client.postEvent(view.sessionId, built.body);
      view = applyEventResponse(view, code, response);
      redraw();
      await waitForEcho(view.eventCount - 1);
    } catch (error) {
      view = setWarning(view, error instanceof ApiError ? error.message : String(error));
    }
    redraw();
  });
}

async function startSession(level: Level, seed: number | undefined): Promise<void> {
  streamAbort?.abort();
  const doc = await client.createSession(level, seed);
  view = applySessionCreated(initialState(), doc);
  lastEchoIndex = -1;
  echoWaiters = [];
  redraw();

  streamAbort = new AbortController();
  client
    .stream(
      doc.id,
      (message) => {
        view = applyStreamMessage(view, message);
        if (message.type === "event" && message.index !== undefined) {
          noteEcho(message.index);
        }
        redraw();
      },
      streamAbort.signal,
    )
    .catch(() => {
      // stream drops when the session ends or a new one starts
    });
}

function buildPalette(): void {
  const root = $("palette");
  for (const spec of COMMANDS) {
    const button = document.createElement("button");
    button.className = "command";
    button.dataset.code = spec.code;
    button.innerHTML = `<b>${spec.code}</b> ${spec.label} <kbd>${spec.key}</kbd>`;
    button.title = spec.hintText;
    button.addEventListener("click", () => issue(spec.code));
    root.appendChild(button);
  }
}

function bindKeys(): void {
  window.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLInputElement || event.target instanceof HTMLSelectElement) {
      return;
    }
    // Arrow keys translate the carried piece one cell at a time (g5).
    const arrows: Record<string, [number, number, number]> = {
      ArrowRight: [1, 0, 0],
      ArrowLeft: [-1, 0, 0],
      ArrowUp: [0, 1, 0],
      ArrowDown: [0, -1, 0],
    };
    if (event.key in arrows) {
      event.preventDefault();
      issue("g5", { translation: arrows[event.key] });
      return;
    }
    const spec = COMMAND_BY_KEY.get(event.key.toLowerCase());
    if (spec) issue(spec.code);
  });
}

function bindControls(): void {
  ($("start") as HTMLButtonElement).addEventListener("click", () => {
    const level = ($("level") as HTMLSelectElement).value as Level;
    const seedRaw = ($("seed") as HTMLInputElement).value.trim();
    const seed = seedRaw === "" ? undefined : Number(seedRaw);
    startSession(level, seed).catch((error) => {
      view = setWarning(view, String(error));
      redraw();
    });
  });
  ($("download") as HTMLButtonElement).addEventListener("click", async () => {
    if (!view.sessionId) return;
    const text = await client.fetchLog(view.sessionId);
    const blob = new Blob([text], { type: "application/jsonl" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `session-${view.sessionId}.jsonl`;
    link.click();
  });
}

buildPalette();
bindKeys();
bindControls();
redraw();
