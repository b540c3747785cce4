import { describe, expect, it } from "vitest";

import { COMMANDS, COMMAND_BY_KEY, commandToEvent } from "../src/commands.js";
import { initialState } from "../src/store.js";
import { GESTURE_CODES } from "../src/types.js";

function carryingState() {
  const state = initialState();
  return { ...state, sessionId: "s", carried: 3, selected: 3 };
}

describe("command palette", () => {
  it("covers all 16 gesture classes exactly once", () => {
    expect(COMMANDS.map((c) => c.code).sort()).toEqual([...GESTURE_CODES].sort());
    expect(new Set(COMMANDS.map((c) => c.code)).size).toBe(16);
  });

  it("assigns every command a distinct key binding", () => {
    expect(COMMAND_BY_KEY.size).toBe(16);
  });

  it("maps every class to exactly one event payload when requirements hold", () => {
    const view = { ...carryingState(), pendingTarget: 2 };
    for (const code of GESTURE_CODES) {
      const built = commandToEvent(view, code, { translation: [1, 0, 0], rotation: 2 });
      expect(built.ok, code).toBe(true);
      if (built.ok) expect(built.body.class).toBe(code);
    }
  });

  it("open hand maps to g9", () => {
    const built = commandToEvent(carryingState(), "g9");
    expect(built).toEqual({ ok: true, body: { class: "g9" } });
  });

  it("arrow-translate while carrying attaches the delta to g5", () => {
    const built = commandToEvent(carryingState(), "g5", { translation: [0, 1, 0] });
    expect(built).toEqual({
      ok: true,
      body: { class: "g5", pose_delta: { translation: [0, 1, 0] } },
    });
  });

  it("warns instead of sending when a carried piece is required", () => {
    const state = { ...initialState(), sessionId: "s", selected: 1 };
    for (const code of ["g5", "g6", "g7", "g8", "g9", "g10", "ge", "gf"] as const) {
      const built = commandToEvent(state, code, { translation: [1, 0, 0] });
      expect(built.ok, code).toBe(false);
    }
  });

  it("warns on grasp without selection and tap without target", () => {
    const state = initialState();
    for (const code of ["gb", "gc", "gd"] as const) {
      expect(commandToEvent(state, code).ok).toBe(false);
    }
    expect(commandToEvent(state, "ga").ok).toBe(false);
  });

  it("tap uses the picked piece, falling back to the hinted piece", () => {
    const state = { ...initialState(), pendingTarget: 5 };
    const built = commandToEvent(state, "ga");
    expect(built).toEqual({ ok: true, body: { class: "ga", target_piece: 5 } });

    const hinted = {
      ...initialState(),
      hint: {
        piece_id: 2,
        remaining_cells: [],
        gesture: "ga" as const,
        translation: null,
        rotation: null,
      },
    };
    const fromHint = commandToEvent(hinted, "ga");
    expect(fromHint).toEqual({ ok: true, body: { class: "ga", target_piece: 2 } });
  });

  it("rotation commands take the hint rotation when none is given", () => {
    const state = {
      ...carryingState(),
      hint: {
        piece_id: 3,
        remaining_cells: [],
        gesture: "ge" as const,
        translation: null,
        rotation: 7,
      },
    };
    const built = commandToEvent(state, "ge");
    expect(built).toEqual({ ok: true, body: { class: "ge", pose_delta: { rotation: 7 } } });
  });

  it("locomotion commands need nothing", () => {
    const state = initialState();
    for (const code of ["g1", "g2", "g3", "g4"] as const) {
      expect(commandToEvent(state, code)).toEqual({ ok: true, body: { class: code } });
    }
  });
});
