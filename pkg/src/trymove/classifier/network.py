"""From-scratch convolutional network: layers, backprop, trainer.

Everything is plain numpy. Default architecture (32x32 grayscale in,
16 class logits out):

    conv 3x3 x8 -> relu -> maxpool 2 -> conv 3x3 x16 -> relu -> maxpool 2
    -> dense 576->64 -> relu -> dense 64->16 -> softmax

Convolutions are unpadded ("valid"); pooling floors odd edges. Weights use
fan-in-scaled uniform init. Training is plain mini-batch SGD on softmax
cross-entropy and is a pure function of (dataset, hyper, seed): the dataset
is canonicalized (sorted by label then content digest) before the seeded
shuffle, so permuting the caller's list order changes nothing.
"""
from __future__ import annotations

import base64
import hashlib
import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from ..taxonomy import GestureClass
from .frames import FRAME_SIZE, Frame

MODEL_SCHEMA = "trymove-model/1"
N_CLASSES = 16


class ShapeError(ValueError):
    pass


class NoDataError(ValueError):
    pass


@dataclass(frozen=True)
class Hyper:
    learning_rate: float = 0.05
    batch_size: int = 32
    epochs: int = 10
    seed: int = 0


class Conv2D:
    """Unpadded cross-correlation with per-filter bias."""

    def __init__(self, in_channels: int, out_channels: int, kernel: int, rng, dtype):
        self.in_channels, self.out_channels, self.kernel = in_channels, out_channels, kernel
        bound = 1.0 / np.sqrt(in_channels * kernel * kernel)
        self.weight = rng.uniform(-bound, bound, (out_channels, in_channels, kernel, kernel)).astype(dtype)
        self.bias = np.zeros(out_channels, dtype=dtype)
        self.grad_weight = np.zeros_like(self.weight)
        self.grad_bias = np.zeros_like(self.bias)
        self._windows = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        if x.ndim != 4 or x.shape[1] != self.in_channels:
            raise ShapeError(
                f"conv expects (batch, {self.in_channels}, h, w), got {x.shape}"
            )
        if x.shape[2] < self.kernel or x.shape[3] < self.kernel:
            raise ShapeError(f"input {x.shape} smaller than {self.kernel}x{self.kernel} kernel")
        windows = np.lib.stride_tricks.sliding_window_view(
            x, (self.kernel, self.kernel), axis=(2, 3)
        )
        self._windows = windows
        out = np.einsum("bcxyij,ocij->boxy", windows, self.weight, optimize=True)
        return out + self.bias[None, :, None, None]

    def backward(self, dout: np.ndarray) -> np.ndarray:
        windows = self._windows
        self.grad_weight = np.einsum("boxy,bcxyij->ocij", dout, windows, optimize=True)
        self.grad_bias = dout.sum(axis=(0, 2, 3))
        batch, _, h_out, w_out = dout.shape
        dx = np.zeros(
            (batch, self.in_channels, h_out + self.kernel - 1, w_out + self.kernel - 1),
            dtype=dout.dtype,
        )
        for i in range(self.kernel):
            for j in range(self.kernel):
                dx[:, :, i : i + h_out, j : j + w_out] += np.einsum(
                    "boxy,oc->bcxy", dout, self.weight[:, :, i, j], optimize=True
                )
        return dx

    def params(self):
        return [("weight", self), ("bias", self)]

    def descriptor(self):
        return {
            "type": "conv",
            "in_channels": self.in_channels,
            "out_channels": self.out_channels,
            "kernel": self.kernel,
        }


class ReLU:
    def __init__(self):
        self._mask = None

    def forward(self, x):
        self._mask = x > 0
        return x * self._mask

    def backward(self, dout):
        return dout * self._mask

    def params(self):
        return []

    def descriptor(self):
        return {"type": "relu"}


class MaxPool2:
    """2x2 max pooling, stride 2; odd trailing rows/columns are dropped."""

    def __init__(self):
        self._in_shape = None
        self._argmax = None

    def forward(self, x):
        b, c, h, w = x.shape
        ho, wo = h // 2, w // 2
        self._in_shape = x.shape
        cropped = x[:, :, : 2 * ho, : 2 * wo]
        windows = cropped.reshape(b, c, ho, 2, wo, 2).transpose(0, 1, 2, 4, 3, 5)
        flat = windows.reshape(b, c, ho, wo, 4)
        self._argmax = flat.argmax(axis=-1)
        return np.take_along_axis(flat, self._argmax[..., None], axis=-1)[..., 0]

    def backward(self, dout):
        b, c, h, w = self._in_shape
        ho, wo = h // 2, w // 2
        flat = np.zeros((b, c, ho, wo, 4), dtype=dout.dtype)
        np.put_along_axis(flat, self._argmax[..., None], dout[..., None], axis=-1)
        windows = flat.reshape(b, c, ho, wo, 2, 2).transpose(0, 1, 2, 4, 3, 5)
        dx = np.zeros(self._in_shape, dtype=dout.dtype)
        dx[:, :, : 2 * ho, : 2 * wo] = windows.reshape(b, c, 2 * ho, 2 * wo)
        return dx

    def params(self):
        return []

    def descriptor(self):
        return {"type": "maxpool"}


class Flatten:
    def __init__(self):
        self._in_shape = None

    def forward(self, x):
        self._in_shape = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, dout):
        return dout.reshape(self._in_shape)

    def params(self):
        return []

    def descriptor(self):
        return {"type": "flatten"}


class Dense:
    def __init__(self, in_features: int, out_features: int, rng, dtype):
        self.in_features, self.out_features = in_features, out_features
        bound = 1.0 / np.sqrt(in_features)
        self.weight = rng.uniform(-bound, bound, (in_features, out_features)).astype(dtype)
        self.bias = np.zeros(out_features, dtype=dtype)
        self.grad_weight = np.zeros_like(self.weight)
        self.grad_bias = np.zeros_like(self.bias)
        self._x = None

    def forward(self, x):
        if x.ndim != 2 or x.shape[1] != self.in_features:
            raise ShapeError(f"dense expects (batch, {self.in_features}), got {x.shape}")
        self._x = x
        return x @ self.weight + self.bias

    def backward(self, dout):
        self.grad_weight = self._x.T @ dout
        self.grad_bias = dout.sum(axis=0)
        return dout @ self.weight.T

    def params(self):
        return [("weight", self), ("bias", self)]

    def descriptor(self):
        return {
            "type": "dense",
            "in_features": self.in_features,
            "out_features": self.out_features,
        }


class Model:
    def __init__(self, layers: list, hyper: Hyper, dtype=np.float32):
        self.layers = layers
        self.hyper = hyper
        self.dtype = np.dtype(dtype)

    def forward_logits(self, x: np.ndarray) -> np.ndarray:
        for layer in self.layers:
            x = layer.forward(x)
        return x

    def backward(self, dout: np.ndarray) -> np.ndarray:
        for layer in reversed(self.layers):
            dout = layer.backward(dout)
        return dout

    def parameters(self) -> list[tuple[str, object, str]]:
        """(qualified name, owning layer, attribute) per trainable tensor."""
        out = []
        for i, layer in enumerate(self.layers):
            for name, owner in layer.params():
                out.append((f"layer{i}.{name}", owner, name))
        return out

    def sgd_step(self, learning_rate: float) -> None:
        for _, owner, name in self.parameters():
            value = getattr(owner, name)
            grad = getattr(owner, f"grad_{name}")
            setattr(owner, name, value - learning_rate * grad)

    def predict_proba(self, frames) -> np.ndarray:
        return forward(self, frames)

    def astype(self, dtype) -> "Model":
        clone = load_model_document(model_document(self))
        clone.dtype = np.dtype(dtype)
        for _, owner, name in clone.parameters():
            setattr(owner, name, getattr(owner, name).astype(dtype))
            setattr(owner, f"grad_{name}", getattr(owner, f"grad_{name}").astype(dtype))
        return clone


def _as_batch(frames, dtype) -> np.ndarray:
    if isinstance(frames, np.ndarray):
        batch = frames
    else:
        batch = np.stack([f.pixels for f in frames])
    if batch.ndim == 2:
        batch = batch[None, :, :]
    if batch.ndim == 3:
        batch = batch[:, None, :, :]
    if batch.ndim != 4:
        raise ShapeError(f"cannot batch input of shape {batch.shape}")
    return batch.astype(dtype)


def softmax(logits: np.ndarray) -> np.ndarray:
    # float64 keeps each row's sum within ~1e-15 of one.
    z = logits.astype(np.float64)
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def forward(model: Model, frames) -> np.ndarray:
    """Class probability vectors, one row per frame, each summing to 1."""
    logits = model.forward_logits(_as_batch(frames, model.dtype))
    return softmax(logits)


def _loss_and_grad(model: Model, x: np.ndarray, labels: np.ndarray):
    logits = model.forward_logits(x)
    probs = softmax(logits)
    n = x.shape[0]
    loss = float(-np.log(np.clip(probs[np.arange(n), labels], 1e-12, None)).mean())
    dlogits = probs.astype(model.dtype)
    dlogits[np.arange(n), labels] -= 1.0
    return loss, dlogits / n


def _canonical_order(frames: list[Frame]) -> list[Frame]:
    def key(frame: Frame):
        return (frame.label.ordinal, hashlib.sha1(np.ascontiguousarray(frame.pixels).tobytes()).hexdigest())

    return sorted(frames, key=key)


def train(model: Model, dataset: list[Frame], hyper: Hyper | None = None):
    """Mini-batch SGD; returns (model, mean loss per epoch).

    The model is updated in place. Deterministic for a fixed (dataset,
    hyper): shuffling is seed-driven off a canonical dataset ordering.
    """
    if not dataset:
        raise NoDataError("training requires a non-empty dataset")
    if any(f.label is None for f in dataset):
        raise NoDataError("every training frame needs a label")
    hyper = hyper or model.hyper

    ordered = _canonical_order(dataset)
    x_all = _as_batch(ordered, model.dtype)
    y_all = np.array([f.label.ordinal for f in ordered], dtype=np.int64)

    shuffle_rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([hyper.seed, 1])))
    losses = []
    n = len(ordered)
    for _ in range(hyper.epochs):
        perm = shuffle_rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, hyper.batch_size):
            idx = perm[start : start + hyper.batch_size]
            loss, dlogits = _loss_and_grad(model, x_all[idx], y_all[idx])
            model.backward(dlogits)
            model.sgd_step(hyper.learning_rate)
            epoch_loss += loss * len(idx)
        losses.append(epoch_loss / n)
    return model, losses


def _make_layer(desc: dict, rng, dtype):
    kind = desc["type"]
    if kind == "conv":
        return Conv2D(desc["in_channels"], desc["out_channels"], desc["kernel"], rng, dtype)
    if kind == "relu":
        return ReLU()
    if kind == "maxpool":
        return MaxPool2()
    if kind == "flatten":
        return Flatten()
    if kind == "dense":
        return Dense(desc["in_features"], desc["out_features"], rng, dtype)
    raise ValueError(f"unknown layer type {kind!r}")


DEFAULT_ARCHITECTURE = (
    {"type": "conv", "in_channels": 1, "out_channels": 8, "kernel": 3},
    {"type": "relu"},
    {"type": "maxpool"},
    {"type": "conv", "in_channels": 8, "out_channels": 16, "kernel": 3},
    {"type": "relu"},
    {"type": "maxpool"},
    {"type": "flatten"},
    {"type": "dense", "in_features": 576, "out_features": 64},
    {"type": "relu"},
    {"type": "dense", "in_features": 64, "out_features": N_CLASSES},
)

MICRO_ARCHITECTURE = (
    {"type": "conv", "in_channels": 1, "out_channels": 1, "kernel": 2},
    {"type": "relu"},
    {"type": "flatten"},
    {"type": "dense", "in_features": (FRAME_SIZE - 1) ** 2, "out_features": N_CLASSES},
)


def build_model(architecture, hyper: Hyper, dtype=np.float32) -> Model:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([hyper.seed, 0])))
    layers = [_make_layer(desc, rng, dtype) for desc in architecture]
    return Model(layers, hyper, dtype)


def build_default_model(seed: int = 0, dtype=np.float32, hyper: Hyper | None = None) -> Model:
    hyper = hyper or Hyper(seed=seed)
    return build_model(DEFAULT_ARCHITECTURE, replace(hyper, seed=seed), dtype)


def build_micro_model(seed: int = 0, dtype=np.float64) -> Model:
    return build_model(MICRO_ARCHITECTURE, Hyper(seed=seed), dtype)


def gradient_check(
    model: Model, frames, n_coords: int = 200, step: float = 1e-5, seed: int = 0
) -> float:
    """Max relative error of analytic vs central finite-difference gradients.

    Runs on a float64 copy of the model over >= n_coords randomly chosen
    parameter coordinates. Relative error uses max(|analytic|, |numeric|,
    1e-8) as the denominator.
    """
    check = model.astype(np.float64)
    x = _as_batch(frames, np.float64)
    if isinstance(frames, np.ndarray):
        labels = np.zeros(x.shape[0], dtype=np.int64)
    else:
        labels = np.array(
            [f.label.ordinal if f.label is not None else 0 for f in frames], dtype=np.int64
        )

    _, dlogits = _loss_and_grad(check, x, labels)
    check.backward(dlogits)
    analytic = {
        name: getattr(owner, f"grad_{attr}").copy()
        for name, owner, attr in check.parameters()
    }

    tensors = [(name, owner, attr) for name, owner, attr in check.parameters()]
    total = sum(getattr(owner, attr).size for _, owner, attr in tensors)
    rng = np.random.Generator(np.random.PCG64(seed))
    picks = rng.choice(total, size=min(max(n_coords, 200), total), replace=False)

    offsets = np.cumsum([0] + [getattr(owner, attr).size for _, owner, attr in tensors])
    worst = 0.0
    for pick in picks:
        t = int(np.searchsorted(offsets, pick, side="right") - 1)
        name, owner, attr = tensors[t]
        flat_index = int(pick - offsets[t])
        tensor = getattr(owner, attr)
        index = np.unravel_index(flat_index, tensor.shape)

        original = tensor[index]
        tensor[index] = original + step
        up, _ = _loss_and_grad(check, x, labels)
        tensor[index] = original - step
        down, _ = _loss_and_grad(check, x, labels)
        tensor[index] = original

        numeric = (up - down) / (2 * step)
        ga = float(analytic[name][index])
        err = abs(ga - numeric) / max(abs(ga), abs(numeric), 1e-8)
        worst = max(worst, err)
    return worst


def model_document(model: Model) -> dict:
    weights = {}
    for name, owner, attr in model.parameters():
        arr = np.ascontiguousarray(getattr(owner, attr))
        weights[name] = base64.b64encode(arr.astype(arr.dtype.newbyteorder("<")).tobytes()).decode("ascii")
    return {
        "version": MODEL_SCHEMA,
        "dtype": model.dtype.newbyteorder("<").str,
        "architecture": [layer.descriptor() for layer in model.layers],
        "hyper": {
            "learning_rate": model.hyper.learning_rate,
            "batch_size": model.hyper.batch_size,
            "epochs": model.hyper.epochs,
            "seed": model.hyper.seed,
        },
        "weights": weights,
    }


def load_model_document(doc: dict) -> Model:
    if doc.get("version") != MODEL_SCHEMA:
        raise ValueError(f"unsupported model version {doc.get('version')!r}")
    hyper = Hyper(**doc["hyper"])
    dtype = np.dtype(doc["dtype"])
    model = build_model(doc["architecture"], hyper, dtype)
    for name, owner, attr in model.parameters():
        raw = base64.b64decode(doc["weights"][name])
        shape = getattr(owner, attr).shape
        setattr(owner, attr, np.frombuffer(raw, dtype=dtype).reshape(shape).copy())
    return model


def save_model(model: Model, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_document(model)) + "\n")


def load_model(path: str | Path) -> Model:
    return load_model_document(json.loads(Path(path).read_text()))
