import { describe, expect, it } from "vitest";

import {
  applyEventResponse,
  applySessionCreated,
  applyStreamMessage,
  initialState,
  scoreParts,
  setWarning,
  ZERO_SCORE,
} from "../src/store.js";
import type { ConfigDoc, EventResponse, PuzzleDoc, StreamMessage } from "../src/types.js";

const config: ConfigDoc = {
  level: "guidance",
  grid_size: 2,
  requested_pieces: 2,
  fake_count: 0,
  t_total: null,
  frame_budget: 50,
  rounding: "half-up",
};

const puzzle: PuzzleDoc = {
  version: "trymove-puzzle/1",
  size: 2,
  requested_pieces: 2,
  seed: 1,
  fake_count: 0,
  attempts_exhausted: false,
  grid: [1, 1, 2, 2, 3, 4, 5, 6],
  pieces: [
    { id: 1, cells: [[0, 0, 0], [1, 0, 0]], target_origin: [0, 0, 0], spawn_origin: [5, 1, 1], spawn_rotation: 3, fake: false },
    { id: 2, cells: [[0, 1, 0], [1, 1, 0]], target_origin: [0, 1, 0], spawn_origin: [8, 0, 0], spawn_rotation: 0, fake: false },
  ],
};

function created() {
  return applySessionCreated(initialState(), {
    id: "abc",
    seed: 1,
    config,
    puzzle,
  });
}

describe("view state", () => {
  it("projects the create response into poses and zero score", () => {
    const state = created();
    expect(state.sessionId).toBe("abc");
    expect(state.poses["1"]).toEqual({ origin: [5, 1, 1], rotation: 3, placed: false });
    expect(state.score).toEqual(ZERO_SCORE);
    expect(state.completed).toBe(false);
  });

  it("score panel total always equals the sum of the three parts", () => {
    const score = {
      time_bonus: 0,
      gesture_sum: 48,
      weighted_sum: 274,
      final: 322,
      reward_base: 48,
      reward_muscle: 274,
    };
    const { parts, total, consistent } = scoreParts(score);
    expect(total).toBe(322);
    expect(parts).toEqual([0, 48, 274]);
    expect(consistent).toBe(true);
    expect(scoreParts(ZERO_SCORE).total).toBe(0);
    // a tampered breakdown is flagged, not silently rendered
    expect(scoreParts({ ...score, final: 999 }).consistent).toBe(false);
  });

  it("event responses update score, hint, and history only", () => {
    const response: EventResponse = {
      api: "trymove-api/1",
      outcome: { accepted: true, effect: "selected" },
      score_so_far: {
        time_bonus: 0, gesture_sum: 1, weighted_sum: 10,
        final: 11, reward_base: 1, reward_muscle: 10,
      },
      completed: false,
      t_end: null,
      hint: { piece_id: 1, remaining_cells: [], gesture: "gc", translation: null, rotation: null },
    };
    const state = applyEventResponse(created(), "ga", response);
    expect(state.score.final).toBe(11);
    expect(state.hint?.gesture).toBe("gc");
    expect(state.history).toHaveLength(1);
    expect(state.history[0]).toMatchObject({ gesture: "ga", effect: "selected", final: 11 });
    // poses untouched: the response carries no pose data
    expect(state.poses).toEqual(created().poses);
  });

  it("stream messages are the authority for poses and carry state", () => {
    const message: StreamMessage = {
      type: "event",
      index: 0,
      event: { class: "ga", timestamp: 0.5, target_piece: 1 },
      outcome: { accepted: true, effect: "selected" },
      score_so_far: {
        time_bonus: 0, gesture_sum: 1, weighted_sum: 10,
        final: 11, reward_base: 1, reward_muscle: 10,
      },
      completed: false,
      t_end: null,
      poses: { "1": { origin: [5, 1, 1], rotation: 3, placed: false } },
      carried: null,
      selected: 1,
      hint: null,
    };
    const state = applyStreamMessage(created(), message);
    expect(state.selected).toBe(1);
    expect(state.score.final).toBe(11);
    expect(state.history).toHaveLength(1);
  });

  it("does not duplicate history when response and stream echo one event", () => {
    const response: EventResponse = {
      api: "trymove-api/1",
      outcome: { accepted: true, effect: "logged" },
      score_so_far: { ...ZERO_SCORE, gesture_sum: 1, final: 1, reward_base: 1 },
      completed: false,
      t_end: null,
    };
    let state = applyEventResponse(created(), "g1", response);
    const echo: StreamMessage = {
      type: "event",
      index: 0,
      event: { class: "g1", timestamp: 0.1 },
      outcome: { accepted: true, effect: "logged" },
      score_so_far: response.score_so_far,
      completed: false,
      t_end: null,
      carried: null,
      selected: null,
    };
    state = applyStreamMessage(state, echo);
    expect(state.history).toHaveLength(1);
    expect(state.eventCount).toBe(1);
  });

  it("hello messages and warnings leave game state alone", () => {
    const state = created();
    expect(applyStreamMessage(state, { type: "hello" })).toBe(state);
    const warned = setWarning(state, "grab a piece first");
    expect(warned.warning).toBe("grab a piece first");
    expect(warned.score).toEqual(state.score);
  });
});
