"""Property functions: deterministic scalar maps whose nonnegative values
are violations. The violation event is {s(x) >= 0}, boundary included."""
from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .network import Network

__all__ = [
    "Property",
    "AdversarialMargin",
    "LinearThreshold",
    "MaxOfLinear",
    "BuiltinProperty",
    "infer_true_class",
    "builtin_property",
]


class Property:
    """Interface: `dimension` plus a vectorized `evaluate` over batches."""

    dimension: int

    def evaluate(self, batch) -> np.ndarray:
        """Property value per row; finite for inputs on the model support."""
        raise NotImplementedError

    def _batch(self, batch) -> np.ndarray:
        batch = np.asarray(batch, dtype=float)
        if batch.ndim != 2 or batch.shape[1] != self.dimension:
            raise ValueError(
                f"expected a batch of shape (n, {self.dimension}), got {batch.shape}"
            )
        return batch


class AdversarialMargin(Property):
    """Margin by which some other class's logit beats the true class:

        s(x) = max over i != c of (z(x)_i - z(x)_c)

    Nonnegative exactly when the prediction deviates from class c (argmax
    ties count as violations, matching the closed event)."""

    def __init__(self, network: Network, true_class: int):
        if network.output_dim < 2:
            raise ConfigError("adversarial margin needs at least two classes")
        true_class = int(true_class)
        if not 0 <= true_class < network.output_dim:
            raise ConfigError(
                f"true_class {true_class} out of range for {network.output_dim} outputs"
            )
        self.network = network
        self.true_class = true_class
        self.dimension = network.input_dim

    def evaluate(self, batch):
        batch = self._batch(batch)
        logits = self.network.forward(batch)
        true_logit = logits[:, self.true_class].copy()
        logits[:, self.true_class] = -np.inf
        return logits.max(axis=1) - true_logit


class LinearThreshold(Property):
    """s(x) = a . x - b."""

    def __init__(self, a, b):
        a = np.asarray(a, dtype=float)
        if a.ndim != 1 or a.size == 0 or not np.isfinite(a).all():
            raise ConfigError("coefficient vector must be a finite nonempty vector")
        self.a = a
        self.b = float(b)
        self.dimension = int(a.size)

    def evaluate(self, batch):
        batch = self._batch(batch)
        return np.einsum("nd,d->n", batch, self.a, optimize=False) - self.b


class MaxOfLinear(Property):
    """s(x) = max over j of (a_j . x - b_j); expresses conjunctions of
    output constraints without new code."""

    def __init__(self, terms):
        terms = list(terms)
        if not terms:
            raise ConfigError("need at least one (a, b) term")
        rows = []
        offsets = []
        for a, b in terms:
            a = np.asarray(a, dtype=float)
            if a.ndim != 1 or not np.isfinite(a).all():
                raise ConfigError("each coefficient vector must be finite and 1-d")
            rows.append(a)
            offsets.append(float(b))
        widths = {a.size for a in rows}
        if len(widths) != 1:
            raise ConfigError("all coefficient vectors must share one dimension")
        self.matrix = np.stack(rows)
        self.offsets = np.asarray(offsets)
        self.dimension = int(self.matrix.shape[1])

    def evaluate(self, batch):
        batch = self._batch(batch)
        scores = np.einsum("nd,md->nm", batch, self.matrix, optimize=False) - self.offsets
        return scores.max(axis=1)


class BuiltinProperty(Property):
    """Named analytic test property backed by a vectorized callable."""

    def __init__(self, name: str, fn, dimension: int):
        self.name = name
        self._fn = fn
        self.dimension = int(dimension)

    def evaluate(self, batch):
        return np.asarray(self._fn(self._batch(batch)), dtype=float)


def infer_true_class(net: Network, x_ref) -> int:
    """Smallest index attaining the maximum logit at the reference input."""
    x_ref = np.asarray(x_ref, dtype=float)
    if x_ref.shape != (net.input_dim,):
        raise ValueError(
            f"expected a vector of dimension {net.input_dim}, got shape {x_ref.shape}"
        )
    logits = net.forward(x_ref[None, :])[0]
    return int(np.argmax(logits))


def negative_linf_gap(center) -> BuiltinProperty:
    """s(x) = -1 - ||x - center||_inf; strictly below -1 + 0 everywhere, so
    the violation event is empty by construction."""
    center = np.asarray(center, dtype=float)

    def fn(batch):
        return -1.0 - np.abs(batch - center).max(axis=1)

    return BuiltinProperty("neg-linf-gap", fn, center.size)


_BUILTINS = {
    "neg-linf-gap": lambda params: negative_linf_gap(params["center"]),
}


def builtin_property(name: str, params: dict) -> Property:
    """Construct a named analytic builtin; raises ConfigError for unknown names."""
    if name not in _BUILTINS:
        raise ConfigError(
            f"unknown builtin property {name!r}; known: {sorted(_BUILTINS)}"
        )
    try:
        return _BUILTINS[name](params)
    except KeyError as exc:
        raise ConfigError(f"builtin property {name!r} missing parameter {exc}") from exc
