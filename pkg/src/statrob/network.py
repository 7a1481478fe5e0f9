"""Dense-ReLU feed-forward inference and the neutral JSON weight format.

All arithmetic is 64-bit floating point. Dense layers are evaluated with a
fixed-order accumulation (einsum) so that batched inference is bitwise
identical to row-at-a-time inference; BLAS matmul does not guarantee that.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .errors import ConfigError, LoadError

__all__ = [
    "DenseLayer",
    "ReluLayer",
    "Network",
    "load_network",
    "save_network",
    "random_network",
    "WEIGHT_FORMAT_VERSION",
]

WEIGHT_FORMAT_VERSION = 1


class DenseLayer:
    """Affine map x -> W x + b with W stored row-major as (out, in)."""

    kind = "dense"

    def __init__(self, weights, bias):
        weights = np.asarray(weights, dtype=float)
        bias = np.asarray(bias, dtype=float)
        if weights.ndim != 2 or weights.shape[0] < 1 or weights.shape[1] < 1:
            raise ConfigError("dense weights must be a 2-d matrix with positive dims")
        if bias.shape != (weights.shape[0],):
            raise ConfigError(
                f"bias length {bias.shape} does not match output width {weights.shape[0]}"
            )
        if not (np.isfinite(weights).all() and np.isfinite(bias).all()):
            raise ConfigError("dense parameters must be finite")
        self.weights = weights
        self.bias = bias

    @property
    def in_width(self):
        return self.weights.shape[1]

    @property
    def out_width(self):
        return self.weights.shape[0]


class ReluLayer:
    """Elementwise max(x, 0); carries no parameters."""

    kind = "relu"


class Network:
    """An ordered stack of dense and relu layers; a pure function from
    input vectors to logits. Immutable after construction, safe to share."""

    def __init__(self, layers):
        layers = list(layers)
        if not layers:
            raise ConfigError("network needs at least one layer")
        width = None
        for i, layer in enumerate(layers):
            if isinstance(layer, DenseLayer):
                if width is not None and layer.in_width != width:
                    raise ConfigError(
                        f"layer {i} expects input width {layer.in_width}, "
                        f"previous layer produces {width}"
                    )
                if width is None:
                    first_in = layer.in_width
                width = layer.out_width
            elif isinstance(layer, ReluLayer):
                continue
            else:
                raise ConfigError(f"layer {i} has unsupported type {type(layer).__name__}")
        if width is None:
            raise ConfigError("network needs at least one dense layer")
        self.layers = layers
        self.input_dim = int(first_in)
        self.output_dim = int(width)

    def forward(self, batch) -> np.ndarray:
        """Logits for a batch of inputs, shape (n, output_dim).

        Row i of the output depends only on row i of the input.
        """
        x = np.asarray(batch, dtype=float)
        if x.ndim != 2 or x.shape[1] != self.input_dim:
            raise ValueError(
                f"expected a batch of shape (n, {self.input_dim}), got {x.shape}"
            )
        for i, layer in enumerate(self.layers):
            if isinstance(layer, DenseLayer):
                x = np.einsum("nd,md->nm", x, layer.weights, optimize=False) + layer.bias
                if not np.isfinite(x).all():
                    raise ArithmeticError(f"non-finite activations after layer {i}")
            else:
                x = np.maximum(x, 0.0)
        return x


def _load_dense(obj, index):
    for key in ("out", "in", "weights", "bias"):
        if key not in obj:
            raise LoadError(f"layer {index}: dense layer missing field '{key}'")
    extra = set(obj) - {"kind", "out", "in", "weights", "bias"}
    if extra:
        raise LoadError(f"layer {index}: unexpected fields {sorted(extra)}")
    out, width = obj["out"], obj["in"]
    if not (isinstance(out, int) and isinstance(width, int) and out >= 1 and width >= 1):
        raise LoadError(f"layer {index}: 'out' and 'in' must be positive integers")
    flat = np.asarray(obj["weights"], dtype=float)
    if flat.shape != (out * width,):
        raise LoadError(
            f"layer {index}: expected {out * width} weights (out*in), got {flat.size}"
        )
    bias = np.asarray(obj["bias"], dtype=float)
    if bias.shape != (out,):
        raise LoadError(f"layer {index}: expected {out} bias entries, got {bias.size}")
    if not (np.isfinite(flat).all() and np.isfinite(bias).all()):
        raise LoadError(f"layer {index}: non-finite weight or bias")
    return DenseLayer(flat.reshape(out, width), bias)


def load_network(path) -> Network:
    """Read a network from the JSON weight file format."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LoadError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise LoadError(f"{path}: top level must be an object")
    if doc.get("format_version") != WEIGHT_FORMAT_VERSION:
        raise LoadError(
            f"{path}: format_version must be {WEIGHT_FORMAT_VERSION}, "
            f"got {doc.get('format_version')!r}"
        )
    input_dim = doc.get("input_dim")
    if not (isinstance(input_dim, int) and input_dim >= 1):
        raise LoadError(f"{path}: input_dim must be a positive integer")
    raw_layers = doc.get("layers")
    if not isinstance(raw_layers, list) or not raw_layers:
        raise LoadError(f"{path}: 'layers' must be a nonempty array")
    layers = []
    for i, obj in enumerate(raw_layers):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise LoadError(f"layer {i}: each layer must be an object with a 'kind'")
        kind = obj["kind"]
        if kind == "dense":
            layers.append(_load_dense(obj, i))
        elif kind == "relu":
            extra = set(obj) - {"kind"}
            if extra:
                raise LoadError(f"layer {i}: relu layers carry 'kind' only, got {sorted(extra)}")
            layers.append(ReluLayer())
        else:
            raise LoadError(f"layer {i}: unknown kind {kind!r}")
    try:
        net = Network(layers)
    except ConfigError as exc:
        raise LoadError(f"{path}: {exc}") from exc
    if net.input_dim != input_dim:
        raise LoadError(
            f"{path}: input_dim {input_dim} does not match first layer width {net.input_dim}"
        )
    return net


def save_network(net: Network, path) -> None:
    """Write the JSON weight file; load_network round-trips it bit-exactly."""
    layers = []
    for layer in net.layers:
        if isinstance(layer, DenseLayer):
            layers.append(
                {
                    "kind": "dense",
                    "out": int(layer.out_width),
                    "in": int(layer.in_width),
                    "weights": [float(v) for v in layer.weights.ravel()],
                    "bias": [float(v) for v in layer.bias],
                }
            )
        else:
            layers.append({"kind": "relu"})
    doc = {
        "format_version": WEIGHT_FORMAT_VERSION,
        "input_dim": int(net.input_dim),
        "layers": layers,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def random_network(sizes, seed, weight_scale=None, bias_scale=0.1) -> Network:
    """Seeded dense-relu network with He-scaled weights and relu between
    consecutive dense layers. A deterministic stand-in for a trained net."""
    sizes = [int(s) for s in sizes]
    if len(sizes) < 2:
        raise ConfigError("need at least an input and an output width")
    rng = np.random.default_rng(seed)
    layers = []
    for i, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
        scale = weight_scale if weight_scale is not None else math.sqrt(2.0 / fan_in)
        weights = rng.normal(0.0, scale, size=(fan_out, fan_in))
        bias = rng.normal(0.0, bias_scale, size=fan_out)
        layers.append(DenseLayer(weights, bias))
        if i < len(sizes) - 2:
            layers.append(ReluLayer())
    return Network(layers)
