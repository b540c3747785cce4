import itertools

import numpy as np
import pytest

from trymove.classifier.frames import (
    FRAME_SIZE,
    Frame,
    glyph_template,
    load_pgm,
    save_pgm,
    synth_frames,
)
from trymove.taxonomy import GestureClass


def test_zero_samples():
    assert synth_frames(GestureClass.G1, 0, seed=1) == []


def test_negative_count_rejected():
    with pytest.raises(ValueError):
        synth_frames(GestureClass.G1, -1, seed=1)


def test_determinism():
    a = synth_frames(GestureClass.G1, 5, seed=3)
    b = synth_frames(GestureClass.G1, 5, seed=3)
    assert all(np.array_equal(x.pixels, y.pixels) for x, y in zip(a, b))
    c = synth_frames(GestureClass.G1, 5, seed=4)
    assert not all(np.array_equal(x.pixels, y.pixels) for x, y in zip(a, c))


def test_shape_range_and_labels():
    for cls in (GestureClass.G5, GestureClass.GD):
        for frame in synth_frames(cls, 3, seed=0):
            assert frame.pixels.shape == (FRAME_SIZE, FRAME_SIZE)
            assert frame.pixels.dtype == np.float32
            assert frame.pixels.min() >= 0.0 and frame.pixels.max() <= 1.0
            assert frame.label is cls


def test_wrong_shape_rejected():
    with pytest.raises(ValueError):
        Frame(np.zeros((16, 16), dtype=np.float32))


def test_templates_distinct_and_nonempty():
    templates = {cls: glyph_template(cls) for cls in GestureClass}
    for cls, tpl in templates.items():
        assert tpl.sum() > 5.0, f"{cls} glyph nearly blank"
    for a, b in itertools.combinations(GestureClass, 2):
        assert not np.array_equal(templates[a], templates[b])


def test_interclass_separation_exceeds_intraclass_spread():
    # Mean template-to-template distance between any two classes must
    # exceed the average sample-to-own-template distance (100-sample draw).
    templates = {cls: glyph_template(cls).astype(np.float64) for cls in GestureClass}
    intra = []
    for cls in GestureClass:
        for frame in synth_frames(cls, 100 // 16 + 1, seed=5):
            intra.append(np.abs(frame.pixels - templates[cls]).mean())
    intra_mean = float(np.mean(intra))
    worst_pair = min(
        float(np.abs(templates[a] - templates[b]).mean())
        for a, b in itertools.combinations(GestureClass, 2)
    )
    assert worst_pair > intra_mean


def test_pgm_round_trip(tmp_path):
    frame = synth_frames(GestureClass.G9, 1, seed=8)[0]
    path = tmp_path / "frame.pgm"
    save_pgm(frame, path)
    loaded = load_pgm(path, label=GestureClass.G9)
    assert loaded.label is GestureClass.G9
    assert loaded.pixels.shape == (FRAME_SIZE, FRAME_SIZE)
    # 8-bit graymap quantization: half a level of tolerance.
    assert np.abs(loaded.pixels - frame.pixels).max() <= 0.5 / 255 + 1e-6


def test_pgm_rejects_other_formats(tmp_path):
    path = tmp_path / "not.pgm"
    path.write_bytes(b"P6\n2 2\n255\n" + bytes(12))
    with pytest.raises(ValueError):
        load_pgm(path)
