import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trymove.puzzlegen import (
    Grid3D,
    InfeasiblePuzzleError,
    InvalidSizeError,
    PuzzleFormatError,
    cells_at_pose,
    generate_puzzle,
    grow_piece,
    load_puzzle,
    make_fakes,
    save_puzzle,
)
from trymove.rng import Xorshift64Star


# ---------------------------------------------------------------------------
# Independent validation oracle. Deliberately re-implements connectivity and
# the rotation group (closure under the three axis quarter-turns) instead of
# reusing the library's geometry helpers.

def _flood_connected(cells) -> bool:
    todo, seen = [cells[0]], {cells[0]}
    cell_set = set(cells)
    while todo:
        x, y, z = todo.pop()
        for nb in ((x + 1, y, z), (x - 1, y, z), (x, y + 1, z),
                   (x, y - 1, z), (x, y, z + 1), (x, y, z - 1)):
            if nb in cell_set and nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return seen == cell_set


def _norm(cells):
    mx = min(c[0] for c in cells)
    my = min(c[1] for c in cells)
    mz = min(c[2] for c in cells)
    return tuple(sorted((x - mx, y - my, z - mz) for x, y, z in cells))


def _rotations_by_closure():
    def rx(c): return (c[0], -c[2], c[1])
    def ry(c): return (c[2], c[1], -c[0])
    def rz(c): return (-c[1], c[0], c[2])

    identity = lambda c: c
    found = {((1, 0, 0), (0, 1, 0), (0, 0, 1)): identity}

    def fingerprint(fn):
        return (fn((1, 0, 0)), fn((0, 1, 0)), fn((0, 0, 1)))

    frontier = [identity]
    while frontier:
        nxt = []
        for fn in frontier:
            for gen in (rx, ry, rz):
                combined = (lambda f, g: lambda c: g(f(c)))(fn, gen)
                key = fingerprint(combined)
                if key not in found:
                    found[key] = combined
                    nxt.append(combined)
        frontier = nxt
    return list(found.values())


ORACLE_ROTATIONS = _rotations_by_closure()


def test_oracle_rotation_group_has_24_elements():
    assert len(ORACLE_ROTATIONS) == 24


def _orientations(cells):
    return {_norm([rot(c) for c in cells]) for rot in ORACLE_ROTATIONS}


def validate_spec(spec):
    size = spec.size
    assert len(spec.grid) == size ** 3
    # Partition: every cell covered by exactly the piece the grid names.
    owner = {}
    for index, pid in enumerate(spec.grid):
        assert pid > 0, f"empty cell at {index} after fill"
        z, rem = divmod(index, size * size)
        y, x = divmod(rem, size)
        owner.setdefault(pid, set()).add((x, y, z))
    ids = [p.id for p in spec.pieces]
    assert ids == list(range(1, len(ids) + 1)), "ids not consecutive from 1"
    assert set(owner) == set(ids)
    for piece in spec.pieces:
        assert not piece.fake
        assert set(piece.cells) == owner[piece.id]
        assert len(set(piece.cells)) == len(piece.cells)
        assert _flood_connected(list(piece.cells))
        assert piece.target_origin == min(piece.cells)
    # Missing-count arithmetic: covered cells account for the whole grid.
    assert sum(len(p.cells) for p in spec.pieces) == size ** 3
    assert spec.missing_count == len(spec.pieces) - spec.requested_pieces
    # Success guarantee (or the explicit exhaustion flag).
    if spec.requested_pieces <= size ** 3 / 2 and not spec.attempts_exhausted:
        grown = sum(1 for p in spec.pieces if len(p.cells) >= 2)
        assert grown >= spec.requested_pieces
    # Fakes: connected, sized 2-3, shape-distinct from equal-size real pieces.
    assert len(spec.fakes) == spec.fake_count
    real_shapes = {}
    for piece in spec.pieces:
        real_shapes.setdefault(len(piece.cells), set()).update(_orientations(piece.cells))
    expected_fake_id = len(spec.pieces) + 1
    for fake in spec.fakes:
        assert fake.fake
        assert fake.id == expected_fake_id
        expected_fake_id += 1
        assert 2 <= len(fake.cells) <= 3
        assert _flood_connected(list(fake.cells))
        if not spec.fake_shape_fallback:
            assert not (_orientations(fake.cells) & real_shapes.get(len(fake.cells), set()))
    # Spawn poses: inside the box, pairwise disjoint, clear of the target grid.
    boxes = []
    for piece in spec.pieces + spec.fakes:
        assert piece.spawn_origin is not None
        assert 0 <= piece.spawn_rotation < 24
        cells = cells_at_pose(piece, piece.spawn_origin, piece.spawn_rotation)
        lo = tuple(min(c[i] for c in cells) for i in range(3))
        hi = tuple(max(c[i] for c in cells) for i in range(3))
        assert lo[0] >= 2 * size or hi[0] < 0, "spawned piece intrudes on grid x-range"
        for other_lo, other_hi in boxes:
            overlap = all(
                max(lo[i], other_lo[i]) <= min(hi[i], other_hi[i]) for i in range(3)
            )
            assert not overlap, "spawn bounding boxes overlap"
        boxes.append((lo, hi))


# ---------------------------------------------------------------------------


def test_single_cell_grid():
    spec = generate_puzzle(1, 1, seed=42)
    assert spec.grid == [1]
    assert len(spec.pieces) == 1
    assert spec.pieces[0].cells == ((0, 0, 0),)
    assert spec.attempts_exhausted  # a lone cell can never grow


def test_zero_requested_pieces_fills_everything():
    spec = generate_puzzle(2, 0, seed=3)
    assert not spec.attempts_exhausted
    assert len(spec.pieces) == 8
    assert all(len(p.cells) == 1 for p in spec.pieces)
    assert spec.missing_count == 8
    validate_spec(spec)


def test_three_cube_example():
    spec = generate_puzzle(3, 4, seed=7)
    validate_spec(spec)
    assert not spec.attempts_exhausted
    assert sum(1 for p in spec.pieces if len(p.cells) >= 2) >= 4


def test_determinism():
    a = generate_puzzle(3, 5, seed=99, fake_count=2)
    b = generate_puzzle(3, 5, seed=99, fake_count=2)
    assert a == b
    c = generate_puzzle(3, 5, seed=100, fake_count=2)
    assert a != c


def test_infeasible_and_invalid_inputs():
    with pytest.raises(InfeasiblePuzzleError):
        generate_puzzle(2, 9, seed=0)
    with pytest.raises(InvalidSizeError):
        generate_puzzle(0, 0, seed=0)
    with pytest.raises(InfeasiblePuzzleError):
        generate_puzzle(2, -1, seed=0)


def test_grow_piece_interior():
    grid = Grid3D.cube(3)
    grid.set(1, 1, 1, 1)
    new_cell = grow_piece(grid, 1, Xorshift64Star(5))
    assert new_cell is not None
    assert grid.get(*new_cell) == 1
    assert sum(1 for v in grid.cells if v == 1) == 2


def test_grow_piece_enclosed_fails_without_change():
    grid = Grid3D.cube(2)
    for index in range(8):
        grid.cells[index] = 2
    grid.set(0, 0, 0, 1)
    before = list(grid.cells)
    assert grow_piece(grid, 1, Xorshift64Star(5)) is None
    assert grid.cells == before


def test_grow_piece_uniform_choice():
    # 2x2x1 grid, piece 1 at (0,0,0), piece 2 at (1,1,0): the two free cells
    # must be chosen with equal probability across seeds.
    hits = {(1, 0, 0): 0, (0, 1, 0): 0}
    runs = 10_000
    for seed in range(runs):
        grid = Grid3D(2, 2, 1)
        grid.set(0, 0, 0, 1)
        grid.set(1, 1, 0, 2)
        new_cell = grow_piece(grid, 1, Xorshift64Star(seed))
        hits[new_cell] += 1
    assert hits[(1, 0, 0)] + hits[(0, 1, 0)] == runs
    assert abs(hits[(1, 0, 0)] / runs - 0.5) < 0.02


def test_make_fakes_empty():
    spec = generate_puzzle(3, 3, seed=1)
    assert make_fakes(spec, 0, Xorshift64Star(1)) == []


def test_fakes_on_difficult_shape():
    spec = generate_puzzle(3, 6, seed=5, fake_count=4)
    assert len(spec.fakes) == 4
    validate_spec(spec)


def test_exhausted_attempts_rate_at_reference_config():
    # Regression-pinned: across seeds 0..999 at (S=3, N=4) every run grew all
    # pieces within three attempts. Gate from the acceptance criteria: <5%.
    exhausted = sum(
        generate_puzzle(3, 4, seed=seed).attempts_exhausted for seed in range(1000)
    )
    assert exhausted == 0


def test_save_load_round_trip(tmp_path):
    spec = generate_puzzle(3, 4, seed=7, fake_count=2)
    path = tmp_path / "puzzle.json"
    save_puzzle(spec, path)
    loaded = load_puzzle(path)
    assert loaded == spec
    validate_spec(loaded)
    # Byte-stable re-serialization.
    save_puzzle(loaded, tmp_path / "again.json")
    assert (tmp_path / "again.json").read_bytes() == path.read_bytes()


def test_load_missing_grid_field(tmp_path):
    spec = generate_puzzle(2, 2, seed=1)
    path = tmp_path / "broken.json"
    save_puzzle(spec, path)
    doc = json.loads(path.read_text())
    del doc["grid"]
    path.write_text(json.dumps(doc))
    with pytest.raises(PuzzleFormatError, match="grid"):
        load_puzzle(path)


def test_load_rejects_non_json(tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("{not json")
    with pytest.raises(PuzzleFormatError, match="line"):
        load_puzzle(path)


def test_load_rejects_wrong_version(tmp_path):
    spec = generate_puzzle(2, 2, seed=1)
    path = tmp_path / "versioned.json"
    save_puzzle(spec, path)
    doc = json.loads(path.read_text())
    doc["version"] = "trymove-puzzle/9"
    path.write_text(json.dumps(doc))
    with pytest.raises(PuzzleFormatError, match="version"):
        load_puzzle(path)


@given(
    size=st.integers(min_value=1, max_value=4),
    seed=st.integers(min_value=0, max_value=2**63),
    density=st.floats(min_value=0.0, max_value=0.5),
    fakes=st.integers(min_value=0, max_value=3),
)
@settings(max_examples=60, deadline=None, derandomize=True)
def test_generated_specs_always_validate(size, seed, density, fakes):
    pieces = int(size ** 3 * density)
    validate_spec(generate_puzzle(size, pieces, seed, fakes))
