// The 16-gesture command palette: one command per class, each mapping to
// exactly one event payload. Commands that need a carried or selected piece
// produce an inline warning instead of an event when the requirement is
// unmet; the engine remains the sole authority on what the event then does.

import type { EventBody, GestureCode, Vec3 } from "./types.js";
import type { ViewState } from "./store.js";

export type Requirement = "none" | "target" | "selection" | "carry";

export interface CommandSpec {
  code: GestureCode;
  label: string;
  key: string; // keyboard shortcut
  needs: Requirement;
  hintText: string;
}

export const COMMANDS: CommandSpec[] = [
  { code: "g1", label: "Move forward", key: "w", needs: "none", hintText: "locomotion" },
  { code: "g2", label: "Move backward", key: "s", needs: "none", hintText: "locomotion" },
  { code: "g3", label: "Turn right", key: "d", needs: "none", hintText: "locomotion" },
  { code: "g4", label: "Turn left", key: "a", needs: "none", hintText: "locomotion" },
  { code: "g5", label: "Arm fold (move)", key: "m", needs: "carry", hintText: "translate carried piece" },
  { code: "g6", label: "Forearm drive (move)", key: "n", needs: "carry", hintText: "translate carried piece" },
  { code: "g7", label: "Wrist extension (+z)", key: "e", needs: "carry", hintText: "nudge up" },
  { code: "g8", label: "Wrist flexion (-z)", key: "q", needs: "carry", hintText: "nudge down" },
  { code: "g9", label: "Open hand (release)", key: "o", needs: "carry", hintText: "drop / place" },
  { code: "g10", label: "Close hand (grip)", key: "p", needs: "carry", hintText: "confirm grip" },
  { code: "ga", label: "Index tap (select)", key: "t", needs: "target", hintText: "select the chosen piece" },
  { code: "gb", label: "All-finger grasp", key: "g", needs: "selection", hintText: "grasp large piece" },
  { code: "gc", label: "Pinch grasp", key: "c", needs: "selection", hintText: "grasp small piece" },
  { code: "gd", label: "Two-hand pinch", key: "v", needs: "selection", hintText: "grasp any piece" },
  { code: "ge", label: "Palm up (rotate)", key: "r", needs: "carry", hintText: "rotate carried piece" },
  { code: "gf", label: "Palm down (rotate)", key: "f", needs: "carry", hintText: "rotate carried piece" },
];

export const COMMAND_BY_CODE = new Map(COMMANDS.map((c) => [c.code, c]));
export const COMMAND_BY_KEY = new Map(COMMANDS.map((c) => [c.key, c]));

export interface CommandArgs {
  translation?: Vec3;
  rotation?: number;
}

export type CommandResult =
  | { ok: true; body: EventBody }
  | { ok: false; warning: string };

/**
 * Build the event for a palette command against the current view state.
 * Movement deltas come from explicit args or, when following instructions,
 * from the current hint; they are payload only, never applied locally.
 */
export function commandToEvent(
  view: ViewState,
  code: GestureCode,
  args: CommandArgs = {},
): CommandResult {
  const spec = COMMAND_BY_CODE.get(code);
  if (!spec) return { ok: false, warning: `unknown command ${code}` };

  if (spec.needs === "carry" && view.carried === null) {
    return { ok: false, warning: `${spec.label}: grab a piece first` };
  }
  if (spec.needs === "selection" && view.selected === null) {
    return { ok: false, warning: `${spec.label}: tap a piece first` };
  }

  const body: EventBody = { class: code };

  if (code === "ga") {
    const target = view.pendingTarget ?? view.hint?.piece_id ?? null;
    if (target === null) {
      return { ok: false, warning: "Index tap: pick a piece in the tray first" };
    }
    body.target_piece = target;
    return { ok: true, body };
  }

  if (code === "g5" || code === "g6") {
    const translation = args.translation ?? view.hint?.translation ?? null;
    if (!translation) {
      return { ok: false, warning: `${spec.label}: choose a direction` };
    }
    body.pose_delta = { translation };
    return { ok: true, body };
  }

  if (code === "ge" || code === "gf") {
    const rotation =
      args.rotation ?? (view.hint?.rotation != null ? view.hint.rotation : 1);
    body.pose_delta = { rotation };
    return { ok: true, body };
  }

  return { ok: true, body };
}
