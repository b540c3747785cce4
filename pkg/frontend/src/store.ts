// View state: a pure projection of the last server message. No game rules
// live here; the engine decides everything and the console just displays.

import type {
  ConfigDoc,
  EventResponse,
  GestureCode,
  HintDoc,
  PoseDoc,
  PuzzleDoc,
  ScoreDoc,
  StreamMessage,
} from "./types.js";

export interface HistoryEntry {
  index: number;
  gesture: GestureCode;
  effect: string;
  final: number;
}

export interface ViewState {
  sessionId: string | null;
  seed: number | null;
  config: ConfigDoc | null;
  puzzle: PuzzleDoc | null;
  poses: Record<string, PoseDoc>;
  carried: number | null;
  selected: number | null;
  score: ScoreDoc;
  completed: boolean;
  tEnd: number | null;
  hint: HintDoc | null;
  history: HistoryEntry[];
  eventCount: number;
  // UI-only fields (never sent to or inferred from game rules)
  pendingTarget: number | null;
  warning: string | null;
}

export const ZERO_SCORE: ScoreDoc = {
  time_bonus: 0,
  gesture_sum: 0,
  weighted_sum: 0,
  final: 0,
  reward_base: 0,
  reward_muscle: 0,
};

export function initialState(): ViewState {
  return {
    sessionId: null,
    seed: null,
    config: null,
    puzzle: null,
    poses: {},
    carried: null,
    selected: null,
    score: ZERO_SCORE,
    completed: false,
    tEnd: null,
    hint: null,
    history: [],
    eventCount: 0,
    pendingTarget: null,
    warning: null,
  };
}

export function applySessionCreated(
  state: ViewState,
  doc: {
    id: string;
    seed: number;
    config: ConfigDoc;
    puzzle: PuzzleDoc;
    hint?: HintDoc;
  },
): ViewState {
  const poses: Record<string, PoseDoc> = {};
  for (const piece of doc.puzzle.pieces) {
    poses[String(piece.id)] = {
      origin: piece.spawn_origin ?? [0, 0, 0],
      rotation: piece.spawn_rotation ?? 0,
      placed: false,
    };
  }
  return {
    ...initialState(),
    sessionId: doc.id,
    seed: doc.seed,
    config: doc.config,
    puzzle: doc.puzzle,
    poses,
    hint: doc.hint ?? null,
  };
}

export function applyEventResponse(
  state: ViewState,
  gesture: GestureCode,
  response: EventResponse,
): ViewState {
  return {
    ...state,
    score: response.score_so_far,
    completed: response.completed,
    tEnd: response.t_end,
    hint: response.hint ?? (response.completed ? null : state.hint),
    warning: null,
    eventCount: state.eventCount + 1,
    history: pushHistory(state.history, {
      index: state.eventCount,
      gesture,
      effect: response.outcome.effect,
      final: response.score_so_far.final,
    }),
  };
}

export function applyStreamMessage(state: ViewState, message: StreamMessage): ViewState {
  if (message.type !== "event") return state;
  const entry: HistoryEntry | null = message.event
    ? {
        index: message.index ?? state.eventCount,
        gesture: message.event.class,
        effect: message.outcome?.effect ?? "",
        final: message.score_so_far?.final ?? state.score.final,
      }
    : null;
  const seen = entry !== null && state.history.some((h) => h.index === entry.index);
  return {
    ...state,
    poses: message.poses ?? state.poses,
    carried: message.carried !== undefined ? message.carried : state.carried,
    selected: message.selected !== undefined ? message.selected : state.selected,
    score: message.score_so_far ?? state.score,
    completed: message.completed ?? state.completed,
    tEnd: message.t_end !== undefined ? message.t_end : state.tEnd,
    hint: message.hint !== undefined ? message.hint : state.hint,
    eventCount: Math.max(state.eventCount, (message.index ?? -1) + 1),
    history: entry && !seen ? pushHistory(state.history, entry) : state.history,
  };
}

export function setPendingTarget(state: ViewState, pieceId: number | null): ViewState {
  return { ...state, pendingTarget: pieceId };
}

export function setWarning(state: ViewState, warning: string): ViewState {
  return { ...state, warning };
}

function pushHistory(history: HistoryEntry[], entry: HistoryEntry): HistoryEntry[] {
  const next = [...history, entry];
  return next.length > 50 ? next.slice(next.length - 50) : next;
}

// Client-side re-check of the score identity; display-only.
export function scoreParts(score: ScoreDoc): {
  parts: [number, number, number];
  total: number;
  consistent: boolean;
} {
  const parts: [number, number, number] = [
    score.time_bonus,
    score.gesture_sum,
    score.weighted_sum,
  ];
  const total = parts[0] + parts[1] + parts[2];
  return {
    parts,
    total,
    consistent:
      total === score.final &&
      score.reward_base + score.reward_muscle === score.final,
  };
}
