"""Integer-lattice geometry for polycube pieces.

Provides the 24 axis-aligned orientations (proper rotations of the cube),
6-adjacency, shape normalization, and the flat-index convention used by
puzzle grids: index = z*S*S + y*S + x (x fastest).
"""
from __future__ import annotations

from itertools import permutations

Coord = tuple[int, int, int]

NEIGHBOR_OFFSETS: tuple[Coord, ...] = (
    (1, 0, 0), (-1, 0, 0),
    (0, 1, 0), (0, -1, 0),
    (0, 0, 1), (0, 0, -1),
)


def _det3(m) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _build_rotations() -> tuple[tuple[tuple[int, int, int], ...], ...]:
    mats = []
    for perm in permutations(range(3)):
        for signs in ((sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)):
            m = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
            for row in range(3):
                m[row][perm[row]] = signs[row]
            if _det3(m) == 1:
                mats.append(tuple(tuple(r) for r in m))
    return tuple(mats)


# ROTATIONS[0] is the identity: permutation (0,1,2) with all-positive signs
# is generated first.
ROTATIONS = _build_rotations()
IDENTITY_ROTATION = 0

assert len(ROTATIONS) == 24
assert ROTATIONS[IDENTITY_ROTATION] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def rotate(rotation: int, p: Coord) -> Coord:
    m = ROTATIONS[rotation]
    x, y, z = p
    return (
        m[0][0] * x + m[0][1] * y + m[0][2] * z,
        m[1][0] * x + m[1][1] * y + m[1][2] * z,
        m[2][0] * x + m[2][1] * y + m[2][2] * z,
    )


def _matmul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


_INDEX_OF = {m: i for i, m in enumerate(ROTATIONS)}

# compose(a, b) applies b first, then a.
COMPOSE: tuple[tuple[int, ...], ...] = tuple(
    tuple(_INDEX_OF[_matmul(ra, rb)] for rb in ROTATIONS) for ra in ROTATIONS
)

INVERSE: tuple[int, ...] = tuple(
    next(j for j in range(24) if COMPOSE[i][j] == IDENTITY_ROTATION) for i in range(24)
)


def compose(a: int, b: int) -> int:
    return COMPOSE[a][b]


def invert(rotation: int) -> int:
    return INVERSE[rotation]


def normalize_cells(cells) -> tuple[Coord, ...]:
    """Translate so the bounding-box min corner is the origin; sort cells."""
    cells = list(cells)
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    zs = [c[2] for c in cells]
    mx, my, mz = min(xs), min(ys), min(zs)
    return tuple(sorted((x - mx, y - my, z - mz) for x, y, z in cells))


def all_orientations(cells) -> frozenset[tuple[Coord, ...]]:
    """Normalized cell sets of every axis-aligned orientation of a shape."""
    return frozenset(
        normalize_cells(rotate(r, c) for c in cells) for r in range(24)
    )


def is_connected(cells) -> bool:
    """Flood fill over 6-adjacency reaches every cell."""
    cell_set = set(cells)
    if not cell_set:
        return False
    stack = [next(iter(cell_set))]
    seen = {stack[0]}
    while stack:
        x, y, z = stack.pop()
        for dx, dy, dz in NEIGHBOR_OFFSETS:
            nb = (x + dx, y + dy, z + dz)
            if nb in cell_set and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cell_set)


def flat_index(x: int, y: int, z: int, size: int) -> int:
    return z * size * size + y * size + x


def coord_of(index: int, size: int) -> Coord:
    z, rem = divmod(index, size * size)
    y, x = divmod(rem, size)
    return (x, y, z)
