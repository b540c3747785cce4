"""Seeded polycube puzzle generation.

A puzzle is an S*S*S target grid partitioned into connected pieces. The
generator stamps N random start cells, grows each piece by one cell into a
free 6-neighbor (up to three whole-phase retries), fills every remaining
cell with single-cube pieces, then adds decoy (fake) pieces and scatters
spawn poses in a region disjoint from the target grid. The result is a pure
function of (size, pieces, seed, fake_count).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .geometry import (
    Coord,
    IDENTITY_ROTATION,
    NEIGHBOR_OFFSETS,
    all_orientations,
    coord_of,
    flat_index,
    is_connected,
    normalize_cells,
    rotate,
)
from .rng import Xorshift64Star

PUZZLE_SCHEMA = "trymove-puzzle/1"

MAX_ATTEMPTS = 3
FAKE_CELL_SIZES = (2, 3)
FAKE_SHAPE_TRIES = 200
SPAWN_TRIES = 1000


class PuzzleError(ValueError):
    pass


class InvalidSizeError(PuzzleError):
    pass


class InfeasiblePuzzleError(PuzzleError):
    pass


class SpawnRegionError(PuzzleError):
    pass


class PuzzleFormatError(PuzzleError):
    """Malformed puzzle file; message names the offending field."""


class Grid3D:
    """Dense integer grid; 0 means empty. Flat order: x fastest, then y, z."""

    def __init__(self, nx: int, ny: int, nz: int):
        self.nx, self.ny, self.nz = nx, ny, nz
        self.cells = [0] * (nx * ny * nz)

    @classmethod
    def cube(cls, size: int) -> "Grid3D":
        return cls(size, size, size)

    def index(self, x: int, y: int, z: int) -> int:
        return z * self.ny * self.nx + y * self.nx + x

    def in_bounds(self, x: int, y: int, z: int) -> bool:
        return 0 <= x < self.nx and 0 <= y < self.ny and 0 <= z < self.nz

    def get(self, x: int, y: int, z: int) -> int:
        return self.cells[self.index(x, y, z)]

    def set(self, x: int, y: int, z: int, value: int) -> None:
        self.cells[self.index(x, y, z)] = value

    def cells_of(self, piece_id: int) -> list[Coord]:
        found = []
        i = 0
        for z in range(self.nz):
            for y in range(self.ny):
                for x in range(self.nx):
                    if self.cells[i] == piece_id:
                        found.append((x, y, z))
                    i += 1
        return found


def growth_candidates(grid: Grid3D, cells: list[Coord]) -> list[Coord]:
    """Free 6-neighbors over all (cell, neighbor) pairs, duplicates kept.

    Keeping duplicates makes the draw uniform over pairs, as a free cell
    adjacent to two piece cells is twice as likely to be chosen.
    """
    out = []
    for x, y, z in cells:
        for dx, dy, dz in NEIGHBOR_OFFSETS:
            nb = (x + dx, y + dy, z + dz)
            if grid.in_bounds(*nb) and grid.get(*nb) == 0:
                out.append(nb)
    return out


def grow_piece(grid: Grid3D, piece_id: int, rng: Xorshift64Star) -> Coord | None:
    """Stamp one uniformly chosen free neighbor of the piece, if any.

    Returns the new cell, or None when the piece is fully enclosed (the grid
    is left unchanged).
    """
    candidates = growth_candidates(grid, grid.cells_of(piece_id))
    if not candidates:
        return None
    new_cell = rng.choice(candidates)
    grid.set(*new_cell, piece_id)
    return new_cell


@dataclass
class Piece:
    id: int
    cells: tuple[Coord, ...]
    target_origin: Coord
    spawn_origin: Coord | None = None
    spawn_rotation: int | None = None
    fake: bool = False


@dataclass
class PuzzleSpec:
    size: int
    requested_pieces: int
    seed: int
    fake_count: int
    attempts_exhausted: bool
    grid: list[int]
    pieces: list[Piece]
    fakes: list[Piece]
    # Degenerate-input escape hatch: set when fake shapes had to duplicate a
    # real piece shape. Never set by generate_puzzle's own size range.
    fake_shape_fallback: bool = field(default=False, compare=False)

    @property
    def missing_count(self) -> int:
        """Single-cube pieces added by the fill phase."""
        return len(self.pieces) - self.requested_pieces

    @property
    def all_pieces(self) -> list[Piece]:
        return self.pieces + self.fakes

    def piece_by_id(self, piece_id: int) -> Piece:
        for piece in self.all_pieces:
            if piece.id == piece_id:
                return piece
        raise KeyError(f"no piece with id {piece_id}")


def cells_at_pose(piece: Piece, origin: Coord, rotation: int) -> set[Coord]:
    """Piece cells under a pose; the target_origin cell maps onto origin."""
    ox, oy, oz = origin
    tx, ty, tz = piece.target_origin
    out = set()
    for cx, cy, cz in piece.cells:
        rx, ry, rz = rotate(rotation, (cx - tx, cy - ty, cz - tz))
        out.add((rx + ox, ry + oy, rz + oz))
    return out


def spawn_region(size: int) -> tuple[Coord, int]:
    """(min corner, edge length) of the spawn box, disjoint from the grid."""
    return (2 * size, -size, -size), 3 * size


def _aabb(cells) -> tuple[Coord, Coord]:
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    zs = [c[2] for c in cells]
    return (min(xs), min(ys), min(zs)), (max(xs), max(ys), max(zs))


def _aabbs_overlap(a: tuple[Coord, Coord], b: tuple[Coord, Coord]) -> bool:
    return all(max(a[0][i], b[0][i]) <= min(a[1][i], b[1][i]) for i in range(3))


def generate_puzzle(size: int, pieces: int, seed: int, fake_count: int = 0) -> PuzzleSpec:
    if size <= 0:
        raise InvalidSizeError(f"grid edge must be positive, got {size}")
    if pieces < 0:
        raise InfeasiblePuzzleError(f"piece count must be non-negative, got {pieces}")
    if pieces > size ** 3:
        raise InfeasiblePuzzleError(
            f"{pieces} pieces cannot start in a {size}^3 grid ({size ** 3} cells)"
        )
    if fake_count < 0:
        raise PuzzleError(f"fake count must be non-negative, got {fake_count}")

    rng = Xorshift64Star(seed)
    total = size ** 3

    best: tuple[int, Grid3D, dict[int, list[Coord]]] | None = None
    attempts_exhausted = True
    for _ in range(MAX_ATTEMPTS):
        grid = Grid3D.cube(size)
        starts = rng.sample_indices(total, pieces)
        piece_cells: dict[int, list[Coord]] = {}
        for k, start in enumerate(starts, 1):
            cell = coord_of(start, size)
            grid.set(*cell, k)
            piece_cells[k] = [cell]
        extended = 0
        for k in range(1, pieces + 1):
            candidates = growth_candidates(grid, piece_cells[k])
            if not candidates:
                continue
            new_cell = rng.choice(candidates)
            grid.set(*new_cell, k)
            piece_cells[k].append(new_cell)
            extended += 1
        if best is None or extended > best[0]:
            best = (extended, grid, piece_cells)
        if extended == pieces:
            attempts_exhausted = False
            break

    assert best is not None
    _, grid, piece_cells = best
    real = [
        Piece(id=k, cells=tuple(sorted(cells)), target_origin=min(cells))
        for k, cells in sorted(piece_cells.items())
    ]

    spec = PuzzleSpec(
        size=size,
        requested_pieces=pieces,
        seed=seed,
        fake_count=fake_count,
        attempts_exhausted=attempts_exhausted,
        grid=grid.cells,
        pieces=real,
        fakes=[],
    )
    fill_missing(spec)
    spec.fakes = make_fakes(spec, fake_count, rng)
    scatter_spawns(spec, rng)
    return spec


def fill_missing(spec: PuzzleSpec) -> PuzzleSpec:
    """Cover every empty grid cell with a new single-cube piece.

    New ids continue consecutively after the existing pieces, assigned in
    flat-index order. Returns the same spec, now with full coverage.
    """
    next_id = len(spec.pieces) + 1
    for index, value in enumerate(spec.grid):
        if value == 0:
            cell = coord_of(index, spec.size)
            spec.grid[index] = next_id
            spec.pieces.append(Piece(id=next_id, cells=(cell,), target_origin=cell))
            next_id += 1
    return spec


def _random_polycube(n_cells: int, rng: Xorshift64Star) -> tuple[Coord, ...]:
    cells = {(0, 0, 0)}
    while len(cells) < n_cells:
        pairs = [
            (x + dx, y + dy, z + dz)
            for x, y, z in cells
            for dx, dy, dz in NEIGHBOR_OFFSETS
            if (x + dx, y + dy, z + dz) not in cells
        ]
        cells.add(rng.choice(pairs))
    return normalize_cells(cells)


def make_fakes(spec: PuzzleSpec, fake_count: int, rng: Xorshift64Star) -> list[Piece]:
    """Decoy pieces of 2-3 cells whose shapes match no real piece.

    Shape identity is checked across all 24 orientations against real pieces
    of the same cell count. If no distinct shape can be drawn (possible only
    for hand-built specs), duplicates are allowed and the spec is flagged.
    """
    real_shapes: dict[int, set[tuple[Coord, ...]]] = {}
    for piece in spec.pieces:
        shapes = real_shapes.setdefault(len(piece.cells), set())
        shapes.update(all_orientations(piece.cells))

    fakes: list[Piece] = []
    next_id = len(spec.pieces) + 1
    for _ in range(fake_count):
        shape = None
        for _ in range(FAKE_SHAPE_TRIES):
            candidate = _random_polycube(rng.choice(FAKE_CELL_SIZES), rng)
            if normalize_cells(candidate) not in real_shapes.get(len(candidate), set()):
                shape = candidate
                break
        if shape is None:
            shape = _random_polycube(rng.choice(FAKE_CELL_SIZES), rng)
            spec.fake_shape_fallback = True
        fakes.append(
            Piece(id=next_id, cells=shape, target_origin=min(shape), fake=True)
        )
        next_id += 1
    return fakes


def scatter_spawns(spec: PuzzleSpec, rng: Xorshift64Star) -> PuzzleSpec:
    """Assign every piece a random pose inside the spawn box.

    Poses are rejection-sampled until the piece's bounding box fits the box
    and overlaps no previously placed piece. The box is disjoint from the
    target grid, so spawned pieces never occlude it.
    """
    (bx, by, bz), edge = spawn_region(spec.size)
    taken: list[tuple[Coord, Coord]] = []
    for piece in spec.all_pieces:
        placed = False
        for _ in range(SPAWN_TRIES):
            rotation = rng.randint(24)
            origin = (
                bx + rng.randint(edge),
                by + rng.randint(edge),
                bz + rng.randint(edge),
            )
            cells = cells_at_pose(piece, origin, rotation)
            if not all(
                bx <= x < bx + edge and by <= y < by + edge and bz <= z < bz + edge
                for x, y, z in cells
            ):
                continue
            box = _aabb(cells)
            if any(_aabbs_overlap(box, other) for other in taken):
                continue
            piece.spawn_origin = origin
            piece.spawn_rotation = rotation
            taken.append(box)
            placed = True
            break
        if not placed:
            raise SpawnRegionError(
                f"no room for piece {piece.id} after {SPAWN_TRIES} spawn attempts"
            )
    return spec


def puzzle_document(spec: PuzzleSpec) -> dict:
    return {
        "version": PUZZLE_SCHEMA,
        "size": spec.size,
        "requested_pieces": spec.requested_pieces,
        "seed": spec.seed,
        "fake_count": spec.fake_count,
        "attempts_exhausted": spec.attempts_exhausted,
        "grid": list(spec.grid),
        "pieces": [
            {
                "id": p.id,
                "cells": [list(c) for c in p.cells],
                "target_origin": list(p.target_origin),
                "spawn_origin": list(p.spawn_origin) if p.spawn_origin else None,
                "spawn_rotation": p.spawn_rotation,
                "fake": p.fake,
            }
            for p in spec.all_pieces
        ],
    }


def save_puzzle(spec: PuzzleSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(puzzle_document(spec), indent=1) + "\n")


def _require(doc: dict, key: str, kind, context: str):
    if key not in doc:
        raise PuzzleFormatError(f"{context}: missing required field '{key}'")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise PuzzleFormatError(
            f"{context}: field '{key}' should be {kind.__name__}, got {type(value).__name__}"
        )
    return value


def _coord(value, context: str) -> Coord:
    if not (isinstance(value, list) and len(value) == 3 and all(isinstance(v, int) for v in value)):
        raise PuzzleFormatError(f"{context}: expected a 3-integer coordinate, got {value!r}")
    return (value[0], value[1], value[2])


def load_puzzle(path: str | Path) -> PuzzleSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PuzzleFormatError(f"{path}: not valid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise PuzzleFormatError(f"{path}: top level must be an object")
    version = _require(doc, "version", str, str(path))
    if version != PUZZLE_SCHEMA:
        raise PuzzleFormatError(f"{path}: unsupported version {version!r}")
    size = _require(doc, "size", int, str(path))
    grid = _require(doc, "grid", list, str(path))
    if len(grid) != size ** 3:
        raise PuzzleFormatError(
            f"{path}: field 'grid' should hold {size ** 3} ids, got {len(grid)}"
        )
    pieces: list[Piece] = []
    fakes: list[Piece] = []
    for i, entry in enumerate(_require(doc, "pieces", list, str(path))):
        context = f"{path}: pieces[{i}]"
        if not isinstance(entry, dict):
            raise PuzzleFormatError(f"{context}: expected an object")
        cells = tuple(
            _coord(c, context) for c in _require(entry, "cells", list, context)
        )
        if not cells:
            raise PuzzleFormatError(f"{context}: field 'cells' must be non-empty")
        spawn = entry.get("spawn_origin")
        piece = Piece(
            id=_require(entry, "id", int, context),
            cells=cells,
            target_origin=_coord(_require(entry, "target_origin", list, context), context),
            spawn_origin=_coord(spawn, context) if spawn is not None else None,
            spawn_rotation=entry.get("spawn_rotation"),
            fake=bool(_require(entry, "fake", bool, context)),
        )
        (fakes if piece.fake else pieces).append(piece)
    return PuzzleSpec(
        size=size,
        requested_pieces=_require(doc, "requested_pieces", int, str(path)),
        seed=_require(doc, "seed", int, str(path)),
        fake_count=_require(doc, "fake_count", int, str(path)),
        attempts_exhausted=bool(_require(doc, "attempts_exhausted", bool, str(path))),
        grid=list(grid),
        pieces=pieces,
        fakes=fakes,
    )


def connected(cells) -> bool:
    """Re-export used by engine/service validation paths."""
    return is_connected(cells)
