// DOM rendering: voxel layer slices, an isometric composite, the score
// panel, hint banner, piece tray and event history. Everything here reads
// ViewState and writes DOM; no game logic.

import type { PieceDoc, Vec3 } from "./types.js";
import { COMMANDS } from "./commands.js";
import { scoreParts, type ViewState } from "./store.js";

const PIECE_COLORS = [
  "#e6194b", "#3cb44b", "#eb9d0e", "#4363d8", "#f58231", "#911eb4",
  "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
  "#9a6324", "#7f6000", "#800000", "#aaffc3", "#808000", "#ffd8b1",
  "#000075", "#808080", "#2f4f4f", "#b03060", "#228b22", "#4682b4",
];

export function pieceColor(id: number): string {
  return PIECE_COLORS[(id - 1) % PIECE_COLORS.length];
}

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Target grid as one table per z layer; filled cells show their piece. */
export function renderLayers(view: ViewState, root: HTMLElement): void {
  root.textContent = "";
  const puzzle = view.puzzle;
  if (!puzzle) return;
  const size = puzzle.size;
  const placedCells = new Map<string, number>();
  for (const piece of puzzle.pieces) {
    if (piece.fake) continue;
    if (view.poses[String(piece.id)]?.placed) {
      for (const [x, y, z] of piece.cells) {
        placedCells.set(`${x},${y},${z}`, piece.id);
      }
    }
  }
  for (let z = size - 1; z >= 0; z--) {
    const wrap = el("div", "layer");
    wrap.appendChild(el("div", "layer-title", `layer z=${z}`));
    const table = el("table", "layer-grid");
    for (let y = size - 1; y >= 0; y--) {
      const tr = el("tr");
      for (let x = 0; x < size; x++) {
        const td = el("td", "cell");
        const owner = puzzle.grid[z * size * size + y * size + x];
        const placed = placedCells.get(`${x},${y},${z}`);
        if (placed !== undefined) {
          td.style.background = pieceColor(placed);
          td.textContent = String(placed);
        } else {
          td.classList.add("empty");
          td.style.borderColor = pieceColor(owner);
          td.title = `target of piece ${owner}`;
        }
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    wrap.appendChild(table);
    root.appendChild(wrap);
  }
}

/** Isometric composite of the target region on a canvas. */
export function renderIso(view: ViewState, canvas: HTMLCanvasElement): void {
  const ctx = canvas.getContext("2d");
  const puzzle = view.puzzle;
  if (!ctx || !puzzle) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const size = puzzle.size;
  const unit = Math.min(canvas.width, canvas.height) / (size * 3.2);
  const originX = canvas.width / 2;
  const originY = canvas.height / 2 + size * unit * 0.8;

  const project = ([x, y, z]: Vec3): [number, number] => [
    originX + (x - y) * unit * 0.9,
    originY - (x + y) * unit * 0.45 - z * unit,
  ];

  const cells: { cell: Vec3; id: number; placed: boolean }[] = [];
  for (const piece of puzzle.pieces) {
    const placed = view.poses[String(piece.id)]?.placed ?? false;
    for (const cell of piece.cells) {
      cells.push({ cell, id: piece.id, placed });
    }
  }
  cells.sort((a, b) => a.cell[0] + a.cell[1] + a.cell[2] - (b.cell[0] + b.cell[1] + b.cell[2]));

  for (const { cell, id, placed } of cells) {
    const [px, py] = project(cell);
    const top: [number, number][] = [
      [px, py - unit],
      [px + unit * 0.9, py - unit + unit * 0.45],
      [px, py - unit + unit * 0.9],
      [px - unit * 0.9, py - unit + unit * 0.45],
    ];
    ctx.beginPath();
    ctx.moveTo(top[0][0], top[0][1]);
    for (const [tx, ty] of top.slice(1)) ctx.lineTo(tx, ty);
    ctx.closePath();
    ctx.fillStyle = placed ? pieceColor(id) : "#dfe6ee";
    ctx.globalAlpha = placed ? 1.0 : 0.5;
    ctx.fill();
    ctx.globalAlpha = 1.0;
    ctx.strokeStyle = "#3c4650";
    ctx.stroke();
  }
}

/** Tray of spawned pieces; clicking one marks it as the tap target. */
export function renderTray(
  view: ViewState,
  root: HTMLElement,
  onPick: (pieceId: number) => void,
): void {
  root.textContent = "";
  const puzzle = view.puzzle;
  if (!puzzle) return;
  for (const piece of puzzle.pieces as PieceDoc[]) {
    const pose = view.poses[String(piece.id)];
    const chip = el("button", "piece-chip", `#${piece.id} (${piece.cells.length})`);
    chip.style.borderColor = pieceColor(piece.id);
    if (pose?.placed) chip.classList.add("placed");
    if (view.carried === piece.id) chip.classList.add("carried");
    if (view.selected === piece.id) chip.classList.add("selected");
    if (view.pendingTarget === piece.id) chip.classList.add("pending");
    chip.addEventListener("click", () => onPick(piece.id));
    root.appendChild(chip);
  }
}

/** Score panel: the three components, the total, and the two rewards. */
export function renderScore(view: ViewState, root: HTMLElement): void {
  root.textContent = "";
  const { parts, total, consistent } = scoreParts(view.score);
  const rows: [string, string][] = [
    ["time bonus", String(parts[0])],
    ["gesture sum", String(parts[1])],
    ["muscle-weighted sum", String(parts[2])],
    ["final score F", String(view.score.final)],
    ["reward: base", String(view.score.reward_base)],
    ["reward: muscle", String(view.score.reward_muscle)],
  ];
  for (const [label, value] of rows) {
    const row = el("div", "score-row");
    row.appendChild(el("span", "score-label", label));
    row.appendChild(el("span", "score-value", value));
    root.appendChild(row);
  }
  if (!consistent) {
    // Should be unreachable: the engine's breakdown always sums to F.
    root.appendChild(el("div", "score-warning", `component sum ${total} != F`));
  }
  if (view.completed) {
    root.appendChild(el("div", "score-complete", `completed at t=${view.tEnd}s`));
  }
}

export function renderHint(view: ViewState, root: HTMLElement): void {
  if (view.warning) {
    root.className = "hint warning";
    root.textContent = view.warning;
    return;
  }
  if (view.completed) {
    root.className = "hint done";
    root.textContent = `Puzzle complete! Final score ${view.score.final}.`;
    return;
  }
  const hint = view.hint;
  if (!hint) {
    root.className = "hint";
    root.textContent =
      view.config?.level === "guidance" ? "" : "free play: no instructions at this level";
    return;
  }
  const spec = COMMANDS.find((c) => c.code === hint.gesture);
  root.className = "hint active";
  const extra =
    hint.translation ? ` move ${JSON.stringify(hint.translation)}` :
    hint.rotation != null ? ` rotation #${hint.rotation}` : "";
  root.textContent =
    `Next: piece ${hint.piece_id} - ${spec?.label ?? hint.gesture}${extra}`;
}

export function renderHistory(view: ViewState, root: HTMLElement): void {
  root.textContent = "";
  for (const entry of [...view.history].slice(-10).reverse()) {
    root.appendChild(
      el("li", "history-entry",
         `${entry.index + 1}. ${entry.gesture} -> ${entry.effect} (F=${entry.final})`),
    );
  }
}

export function renderStatus(view: ViewState, root: HTMLElement): void {
  if (!view.config) {
    root.textContent = "no session";
    return;
  }
  const placed = Object.values(view.poses).filter((p) => p.placed).length;
  const real = view.puzzle?.pieces.filter((p) => !p.fake).length ?? 0;
  root.textContent =
    `${view.config.level} session ${view.sessionId} seed=${view.seed} | ` +
    `placed ${placed}/${real} | events ${view.eventCount}` +
    (view.carried !== null ? ` | carrying #${view.carried}` : "") +
    (view.selected !== null ? ` | selected #${view.selected}` : "");
}
