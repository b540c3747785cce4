"""Synthetic gesture frames.

Real capture hardware is out of scope, so each gesture class gets a
distinct procedural glyph (arrows, arcs, rings, stroke motifs) drawn on a
32x32 grayscale canvas. Samples jitter the glyph with a random rotation
within +-15 degrees, translation within +-3 px, and additive Gaussian noise
(sigma 0.05), clamped to [0, 1]. Generation is deterministic per
(class, n, seed); bump GLYPH_RECIPE_VERSION when the glyph geometry changes
so accuracy numbers stay attributable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..taxonomy import GestureClass

FRAME_SIZE = 32
GLYPH_RECIPE_VERSION = 1

ROTATION_JITTER_DEG = 15.0
TRANSLATION_JITTER_PX = 3.0
NOISE_SIGMA = 0.05
_STROKE = 1.6
_CENTER = (FRAME_SIZE - 1) / 2.0


@dataclass
class Frame:
    pixels: np.ndarray  # (32, 32) float32 in [0, 1]
    label: GestureClass | None = None

    def __post_init__(self):
        if self.pixels.shape != (FRAME_SIZE, FRAME_SIZE):
            raise ValueError(f"frames are {FRAME_SIZE}x{FRAME_SIZE}, got {self.pixels.shape}")


def _arrow(angle_deg: float) -> list[tuple]:
    """Solid head in its own half of the image plus a thin center shaft, so
    the four arrows overlap each other (and centered glyphs) very little."""
    a = math.radians(angle_deg)
    ux, uy = math.cos(a), math.sin(a)
    px, py = -uy, ux  # perpendicular
    tip = (_CENTER + 14 * ux, _CENTER + 14 * uy)
    base = (_CENTER + 3 * ux, _CENTER + 3 * uy)
    tail = (_CENTER - 12 * ux, _CENTER - 12 * uy)
    return [
        ("poly", [tip, (base[0] + 11 * px, base[1] + 11 * py),
                  (base[0] - 11 * px, base[1] - 11 * py)]),
        ("seg", tail, base, 2.0),
    ]


def _arc(a0: float, a1: float, radius: float = 11.0, width: float = 2.4,
         steps: int = 16) -> list[tuple]:
    pts = [
        (
            _CENTER + radius * math.cos(math.radians(a0 + (a1 - a0) * i / steps)),
            _CENTER + radius * math.sin(math.radians(a0 + (a1 - a0) * i / steps)),
        )
        for i in range(steps + 1)
    ]
    return [("seg", pts[i], pts[i + 1], width) for i in range(steps)]


def _spokes(angles: list[float], inner: float = 1.5, outer: float = 11.0) -> list[tuple]:
    out = []
    for deg in angles:
        a = math.radians(deg)
        out.append(
            (
                "seg",
                (_CENTER + inner * math.cos(a), _CENTER + inner * math.sin(a)),
                (_CENTER + outer * math.cos(a), _CENTER + outer * math.sin(a)),
                2.6,
            )
        )
    return out


def _bracket(y_bar: float, y_tick: float, half_width: float = 9.0) -> list[tuple]:
    left, right = _CENTER - half_width, _CENTER + half_width
    return [
        ("seg", (left, y_bar), (right, y_bar), 2.6),
        ("seg", (left, y_bar), (left, y_tick), 2.6),
        ("seg", (right, y_bar), (right, y_tick), 2.6),
    ]


def _glyphs() -> dict[GestureClass, list[tuple]]:
    c = _CENTER
    return {
        GestureClass.G1: _arrow(-90),   # up (toward row 0)
        GestureClass.G2: _arrow(90),    # down
        GestureClass.G3: _arrow(0),     # right
        GestureClass.G4: _arrow(180),   # left
        # four disjoint quarter-arcs in the diagonal corners, clear of the
        # arrow heads on the compass axes
        GestureClass.G5: _arc(270, 360, radius=9.5, width=3.2),
        GestureClass.G6: _arc(90, 180, radius=9.5, width=3.2),
        GestureClass.G7: _arc(0, 90, radius=9.5, width=3.2),
        GestureClass.G8: _arc(180, 270, radius=9.5, width=3.2),
        GestureClass.G9: _arc(0, 360, radius=9.5, width=3.4, steps=28),  # ring
        GestureClass.G10: [("disc", (c, c), 7.5)],  # filled fist
        # tap: heavy dot above a tap-surface bar along the bottom
        GestureClass.GA: [("disc", (c, c - 9), 5.0),
                          ("seg", (c - 8, c + 10), (c + 8, c + 10), 2.4)],
        # all-finger grasp: five spokes, none pointing straight up
        GestureClass.GB: _spokes([90, 162, 234, 306, 18]),
        # single-hand pinch: V in the left half
        GestureClass.GC: [("seg", (c - 12, c - 11), (c - 6, c + 11), 2.6),
                          ("seg", (c, c - 11), (c - 6, c + 11), 2.6)],
        # double-hand pinch: W in the right half
        GestureClass.GD: [("seg", (c + 2, c - 11), (c + 5, c + 11), 2.0),
                          ("seg", (c + 8, c - 11), (c + 5, c + 11), 2.0),
                          ("seg", (c + 8, c - 11), (c + 11, c + 11), 2.0),
                          ("seg", (c + 14, c - 11), (c + 11, c + 11), 2.0)],
        GestureClass.GE: _bracket(c + 12.5, c - 2),  # square U along the bottom
        GestureClass.GF: _bracket(c - 12.5, c + 2),  # inverted U along the top
    }


GLYPHS = _glyphs()

_XX, _YY = np.meshgrid(np.arange(FRAME_SIZE, dtype=np.float64), np.arange(FRAME_SIZE, dtype=np.float64))


def _transform_point(p, angle: float, shift) -> tuple[float, float]:
    ca, sa = math.cos(angle), math.sin(angle)
    x, y = p[0] - _CENTER, p[1] - _CENTER
    return (_CENTER + ca * x - sa * y + shift[0], _CENTER + sa * x + ca * y + shift[1])


def _rasterize(primitives, angle: float = 0.0, shift=(0.0, 0.0)) -> np.ndarray:
    img = np.zeros((FRAME_SIZE, FRAME_SIZE), dtype=np.float64)
    for prim in primitives:
        if prim[0] == "seg":
            (x0, y0) = _transform_point(prim[1], angle, shift)
            (x1, y1) = _transform_point(prim[2], angle, shift)
            width = prim[3] if len(prim) > 3 else _STROKE
            dx, dy = x1 - x0, y1 - y0
            length_sq = dx * dx + dy * dy
            if length_sq == 0:
                dist = np.hypot(_XX - x0, _YY - y0)
            else:
                t = np.clip(((_XX - x0) * dx + (_YY - y0) * dy) / length_sq, 0.0, 1.0)
                dist = np.hypot(_XX - (x0 + t * dx), _YY - (y0 + t * dy))
            np.maximum(img, np.clip(width + 0.5 - dist, 0.0, 1.0), out=img)
        elif prim[0] == "disc":
            (cx, cy) = _transform_point(prim[1], angle, shift)
            dist = np.hypot(_XX - cx, _YY - cy)
            np.maximum(img, np.clip(prim[2] + 0.5 - dist, 0.0, 1.0), out=img)
        elif prim[0] == "poly":
            pts = [_transform_point(p, angle, shift) for p in prim[1]]
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            inside = np.full(img.shape, np.inf)
            for k in range(len(pts)):
                (x0, y0), (x1, y1) = pts[k], pts[(k + 1) % len(pts)]
                nx, ny = y1 - y0, x0 - x1  # edge normal
                norm = math.hypot(nx, ny) or 1.0
                nx, ny = nx / norm, ny / norm
                if (cx - x0) * nx + (cy - y0) * ny < 0:  # orient inward
                    nx, ny = -nx, -ny
                np.minimum(inside, (_XX - x0) * nx + (_YY - y0) * ny, out=inside)
            np.maximum(img, np.clip(0.5 + inside, 0.0, 1.0), out=img)
        else:  # pragma: no cover
            raise ValueError(f"unknown primitive {prim[0]!r}")
    return img


def glyph_template(gesture: GestureClass) -> np.ndarray:
    """The class glyph with no jitter and no noise."""
    return _rasterize(GLYPHS[gesture]).astype(np.float32)


def synth_frames(gesture: GestureClass, n: int, seed: int) -> list[Frame]:
    """n jittered, noisy samples of the class glyph; deterministic per args."""
    if n < 0:
        raise ValueError(f"sample count must be non-negative, got {n}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, gesture.ordinal])))
    frames = []
    for _ in range(n):
        angle = math.radians(rng.uniform(-ROTATION_JITTER_DEG, ROTATION_JITTER_DEG))
        shift = rng.uniform(-TRANSLATION_JITTER_PX, TRANSLATION_JITTER_PX, size=2)
        img = _rasterize(GLYPHS[gesture], angle, shift)
        img += rng.normal(0.0, NOISE_SIGMA, size=img.shape)
        frames.append(Frame(np.clip(img, 0.0, 1.0).astype(np.float32), label=gesture))
    return frames


def build_dataset(
    per_class: int, seed: int, classes=tuple(GestureClass)
) -> list[Frame]:
    frames = []
    for cls in classes:
        frames.extend(synth_frames(cls, per_class, seed))
    return frames


def save_pgm(frame: Frame, path: str | Path) -> None:
    """Binary portable graymap, maxval 255."""
    data = np.round(frame.pixels * 255.0).astype(np.uint8)
    header = f"P5\n{FRAME_SIZE} {FRAME_SIZE}\n255\n".encode("ascii")
    Path(path).write_bytes(header + data.tobytes())


def load_pgm(path: str | Path, label: GestureClass | None = None) -> Frame:
    raw = Path(path).read_bytes()
    if not raw.startswith(b"P5"):
        raise ValueError(f"{path}: not a binary PGM file")
    fields: list[bytes] = []
    pos = 2
    while len(fields) < 3:
        while pos < len(raw) and raw[pos : pos + 1].isspace():
            pos += 1
        if raw[pos : pos + 1] == b"#":  # comment line
            pos = raw.index(b"\n", pos) + 1
            continue
        start = pos
        while pos < len(raw) and not raw[pos : pos + 1].isspace():
            pos += 1
        fields.append(raw[start:pos])
    width, height, maxval = (int(f) for f in fields)
    pos += 1  # single whitespace byte after maxval
    pixels = np.frombuffer(raw, dtype=np.uint8, count=width * height, offset=pos)
    img = pixels.reshape(height, width).astype(np.float32) / float(maxval)
    return Frame(img, label=label)
