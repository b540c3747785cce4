"""Canonical taxonomy of the 16 interactive gesture classes.

Single source of truth for gesture codes, their column order in score
reports, and the per-gesture muscle-activation count used as the weight
vector by the scoring module. Immutable after import; safe for concurrent
reads.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class InvalidGestureError(ValueError):
    """Raised for an unknown gesture code or an unresolvable label."""


class GestureClass(Enum):
    """One of the 16 gesture classes, in canonical column order."""

    G1 = "g1"
    G2 = "g2"
    G3 = "g3"
    G4 = "g4"
    G5 = "g5"
    G6 = "g6"
    G7 = "g7"
    G8 = "g8"
    G9 = "g9"
    G10 = "g10"
    GA = "ga"
    GB = "gb"
    GC = "gc"
    GD = "gd"
    GE = "ge"
    GF = "gf"

    @property
    def code(self) -> str:
        return self.value

    @property
    def ordinal(self) -> int:
        return _ORDINALS[self]

    @property
    def tag(self) -> str:
        """Bare column tag: "1".."10" and "a".."f"."""
        return self.value[1:]

    def __repr__(self) -> str:  # keeps pytest diffs short
        return self.value


_ORDINALS = {cls: i for i, cls in enumerate(GestureClass)}


@dataclass(frozen=True)
class GestureSpec:
    """A gesture class plus its participating motor parts and muscles."""

    gesture: GestureClass
    muscle_count: int
    motor_parts: tuple[str, ...]
    muscles: tuple[str, ...]
    description: str


_FOREARM_HAND = ("Forearm", "Hand")
_FOREARM_HAND_FINGER = ("Forearm", "Hand", "Finger")
_HUMERUS_FOREARM = ("Humerus", "Forearm")

# Locomotion classes carry muscle_count 0: it is the unique value under which
# the muscle-weighted reference sums in scoring.REFERENCE_ROWS all hold.
TAXONOMY: dict[GestureClass, GestureSpec] = {
    spec.gesture: spec
    for spec in (
        GestureSpec(GestureClass.G1, 0, ("Upper/lower limb",), (), "Move forward"),
        GestureSpec(GestureClass.G2, 0, ("Upper/lower limb",), (), "Move backward"),
        GestureSpec(GestureClass.G3, 0, ("Upper/lower limb",), (), "Turn right"),
        GestureSpec(GestureClass.G4, 0, ("Upper/lower limb",), (), "Turn left"),
        GestureSpec(
            GestureClass.G5,
            9,
            ("Forearm", "Humerus"),
            (
                "Biceps Brachii",
                "Triceps Brachii",
                "Deltoid",
                "Trapezius",
                "Subscapularis",
                "Subclavius",
                "Teres Minor",
                "Infraspinatus",
                "Brachioradialis",
            ),
            "Upper and front arm folding movement",
        ),
        GestureSpec(
            GestureClass.G6,
            10,
            _FOREARM_HAND,
            (
                "Flexor Carpi Radialis",
                "Flexor Carpi Ulnaris",
                "Palmaris Longus",
                "Flexor Digitorum Superficialis",
                "Flexor Digitorum Profundus",
                "Extensor Carpi Radialis Brevis",
                "Extensor Carpi Radialis Longus",
                "Extensor Carpi Ulnaris",
                "Extensor Digitorum",
                "Extensor Digiti Minimi",
            ),
            "Movement of the forearm drives movement of the wrist",
        ),
        GestureSpec(
            GestureClass.G7,
            6,
            _FOREARM_HAND,
            (
                "Extensor Digitorum",
                "Extensor Indicis",
                "Extensor Digiti Minimi",
                "Extensor Pollicis Longus",
                "Extensor Pollicis Brevis",
                "Extensor Carpi Radialis Longus",
            ),
            "Wrist extension",
        ),
        GestureSpec(
            GestureClass.G8,
            6,
            _FOREARM_HAND,
            (
                "Flexor Digitorum Superficialis",
                "Flexor Digitorum Profundus",
                "Flexor Pollicis Longus",
                "Flexor Carpi Radialis",
                "Flexor Carpi Ulnaris",
                "Palmaris Longus",
            ),
            "Wrist flexion",
        ),
        GestureSpec(
            GestureClass.G9,
            8,
            _FOREARM_HAND,
            (
                "Extensor Digitorum",
                "Extensor Indicis",
                "Extensor Digiti Minimi",
                "Extensor Pollicis Longus",
                "Extensor Pollicis Brevis",
                "Extensor Carpi Radialis Longus",
                "Extensor Carpi Ulnaris",
                "Extensor Digitorum Communis",
            ),
            "Open hand",
        ),
        GestureSpec(
            GestureClass.G10,
            8,
            _FOREARM_HAND,
            (
                "Flexor Digitorum Superficialis",
                "Flexor Digitorum Profundus",
                "Flexor Pollicis Longus",
                "Flexor Carpi Radialis",
                "Flexor Carpi Ulnaris",
                "Palmaris Longus",
                "Flexor Pollicis Brevis",
                "Flexor Digiti Minimi Brevis",
            ),
            "Close hand",
        ),
        GestureSpec(
            GestureClass.GA,
            10,
            _FOREARM_HAND_FINGER,
            # "Thenar and Hypothenar" kept as two entries so the list length
            # matches the activation count.
            (
                "Flexor Digitorum Superficialis",
                "Flexor Digitorum Profundus",
                "Extensor Digitorum",
                "Extensor Indicis",
                "Interossei Muscles",
                "Lumbrical Muscles",
                "Thenar Muscles",
                "Hypothenar Muscles",
                "Flexor Carpi Radialis",
                "Extensor Carpi Radialis Longus",
            ),
            "Tap with index-finger",
        ),
        GestureSpec(
            GestureClass.GB,
            10,
            _FOREARM_HAND_FINGER,
            (
                "Flexor Digitorum Superficialis",
                "Flexor Digitorum Profundus",
                "Flexor Pollicis Longus",
                "Flexor Carpi Radialis",
                "Flexor Carpi Ulnaris",
                "Thenar Muscles",
                "Hypothenar Muscles",
                "Lumbrical Muscles",
                "Interossei Muscles",
                "Extensor Muscles",
            ),
            "All-finger grasping",
        ),
        GestureSpec(
            GestureClass.GC,
            8,
            _FOREARM_HAND_FINGER,
            (
                "Thenar Muscles",
                "Lumbrical Muscles",
                "Interossei Muscles",
                "Flexor Pollicis Longus",
                "Flexor Digitorum Superficialis",
                "Flexor Digitorum Profundus",
                "Extensor Muscles",
                "Opponent Muscles",
            ),
            "Index-Thumb-finger grasping (single hand)",
        ),
        GestureSpec(
            GestureClass.GD,
            # Both hands participate: the 8 listed muscles activate twice.
            16,
            _FOREARM_HAND_FINGER,
            (
                "Thenar Muscles",
                "Lumbrical Muscles",
                "Interossei Muscles",
                "Flexor Pollicis Longus",
                "Flexor Digitorum Superficialis",
                "Flexor Digitorum Profundus",
                "Extensor Muscles",
                "Opponent Muscles",
            ),
            "Index-Thumb-finger grasping (double hands)",
        ),
        GestureSpec(
            GestureClass.GE,
            2,
            _HUMERUS_FOREARM,
            ("Biceps Brachii", "Supinator"),
            "Turn the palm upwards",
        ),
        GestureSpec(
            GestureClass.GF,
            3,
            _HUMERUS_FOREARM,
            ("Pronator Teres", "Pronator Quadratus", "Brachioradialis"),
            "Turn the palm downwards",
        ),
    )
}

MUSCLE_COUNTS: tuple[int, ...] = tuple(TAXONOMY[c].muscle_count for c in GestureClass)


def canonical_order() -> list[GestureClass]:
    """The 16 classes in score-table column order (1..10 then a..f)."""
    return list(GestureClass)


def muscle_count(gesture: GestureClass | str) -> int:
    """Muscle-activation count for a gesture class or its code string."""
    if isinstance(gesture, str):
        gesture = _from_code(gesture)
    spec = TAXONOMY.get(gesture)
    if spec is None:
        raise InvalidGestureError(f"unknown gesture class: {gesture!r}")
    return spec.muscle_count


def _from_code(code: str) -> GestureClass:
    try:
        return GestureClass(code.strip().lower())
    except ValueError:
        raise InvalidGestureError(f"unknown gesture code: {code!r}") from None


def parse_label(text: str) -> GestureClass:
    """Resolve a code ("g7"), a bare tag ("7", "c") or a description prefix.

    Matching is case-insensitive. An ambiguous description prefix raises
    InvalidGestureError naming every candidate.
    """
    needle = text.strip().lower()
    if not needle:
        raise InvalidGestureError("empty gesture label")
    for cls in GestureClass:
        if needle == cls.code or needle == cls.tag:
            return cls
    candidates = [
        cls for cls in GestureClass
        if TAXONOMY[cls].description.lower().startswith(needle)
    ]
    if len(candidates) == 1:
        return candidates[0]
    if candidates:
        names = ", ".join(f"{c.code} ({TAXONOMY[c].description})" for c in candidates)
        raise InvalidGestureError(f"ambiguous gesture label {text!r}: matches {names}")
    raise InvalidGestureError(f"unknown gesture label: {text!r}")


def taxonomy_document() -> dict:
    """Taxonomy as a JSON-ready document (same format family as puzzle files)."""
    return {
        "version": "trymove-taxonomy/1",
        "classes": [
            {
                "code": cls.code,
                "ordinal": cls.ordinal,
                "tag": cls.tag,
                "muscle_count": TAXONOMY[cls].muscle_count,
                "motor_parts": list(TAXONOMY[cls].motor_parts),
                "muscles": list(TAXONOMY[cls].muscles),
                "description": TAXONOMY[cls].description,
            }
            for cls in GestureClass
        ],
    }
