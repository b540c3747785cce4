// Wire types for the trymove-api/1 payloads. The console renders these
// verbatim; it never derives game state on its own.

export type Level = "guidance" | "easy" | "middle" | "difficult";

export type GestureCode =
  | "g1" | "g2" | "g3" | "g4" | "g5" | "g6" | "g7" | "g8"
  | "g9" | "g10" | "ga" | "gb" | "gc" | "gd" | "ge" | "gf";

export const GESTURE_CODES: GestureCode[] = [
  "g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8",
  "g9", "g10", "ga", "gb", "gc", "gd", "ge", "gf",
];

export type Vec3 = [number, number, number];

export interface PieceDoc {
  id: number;
  cells: Vec3[];
  target_origin: Vec3;
  spawn_origin: Vec3 | null;
  spawn_rotation: number | null;
  fake: boolean;
}

export interface PuzzleDoc {
  version: string;
  size: number;
  requested_pieces: number;
  seed: number;
  fake_count: number;
  attempts_exhausted: boolean;
  grid: number[]; // flat, x fastest then y then z
  pieces: PieceDoc[];
}

export interface ConfigDoc {
  level: Level;
  grid_size: number;
  requested_pieces: number;
  fake_count: number;
  t_total: number | null;
  frame_budget: number;
  rounding: string;
}

export interface ScoreDoc {
  time_bonus: number;
  gesture_sum: number;
  weighted_sum: number;
  final: number;
  reward_base: number;
  reward_muscle: number;
}

export interface HintDoc {
  piece_id: number;
  remaining_cells: Vec3[];
  gesture: GestureCode;
  translation: Vec3 | null;
  rotation: number | null;
}

export interface PoseDoc {
  origin: Vec3;
  rotation: number;
  placed: boolean;
}

export interface CreateSessionResponse {
  api: string;
  id: string;
  seed: number;
  config: ConfigDoc;
  puzzle: PuzzleDoc;
  hint?: HintDoc;
}

export interface EventBody {
  class: GestureCode;
  target_piece?: number;
  pose_delta?: { translation?: Vec3; rotation?: number };
}

export interface OutcomeDoc {
  accepted: boolean;
  effect: string;
  frame_captured?: boolean;
}

export interface EventResponse {
  api: string;
  outcome: OutcomeDoc;
  score_so_far: ScoreDoc;
  completed: boolean;
  t_end: number | null;
  hint?: HintDoc;
}

export interface StreamMessage {
  type: "hello" | "event";
  api?: string;
  index?: number;
  event?: { class: GestureCode; timestamp: number; target_piece?: number };
  outcome?: OutcomeDoc;
  score_so_far?: ScoreDoc;
  completed?: boolean;
  t_end?: number | null;
  poses?: Record<string, PoseDoc>;
  carried?: number | null;
  selected?: number | null;
  hint?: HintDoc | null;
}
