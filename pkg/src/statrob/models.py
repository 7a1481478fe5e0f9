"""Input distributions over the constrained input subdomain.

Models are immutable after construction and safe to share across threads;
every sampling call takes its own generator. Sampling is exact (no MCMC):
the uniform models draw from their support box directly, the Gaussian
draws i.i.d. normals. Support boundaries are closed.
"""
from __future__ import annotations

import numpy as np

from .errors import ConfigError

__all__ = ["InputModel", "UniformBox", "UniformLinfBall", "StandardNormal"]


class InputModel:
    """Common interface: exact prior sampling, support tests, and the
    log-density difference consumed by the Metropolis acceptance ratio.

    For uniform models the density is constant on the support, so the
    log-density difference degenerates to a support indicator (0 inside,
    -inf outside). Non-uniform models return the true difference, which
    is the hook that lets the sampling kernel stay model-agnostic.
    """

    dimension: int

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Draw n independent points from the model, shape (n, dimension)."""
        raise NotImplementedError

    def contains(self, batch: np.ndarray) -> np.ndarray:
        """Closed-support membership, one bool per row of `batch`."""
        raise NotImplementedError

    def log_density_diff(self, new: np.ndarray, old: np.ndarray) -> np.ndarray:
        """log p(new) - log p(old), rowwise; -inf when `new` leaves the support."""
        raise NotImplementedError

    def default_proposal_width(self) -> float:
        """Length scale for random-walk proposals when none is configured."""
        raise NotImplementedError

    def in_support(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise ValueError(
                f"expected a vector of dimension {self.dimension}, got shape {x.shape}"
            )
        return bool(self.contains(x[None, :])[0])

    def _batch(self, batch) -> np.ndarray:
        batch = np.asarray(batch, dtype=float)
        if batch.ndim != 2 or batch.shape[1] != self.dimension:
            raise ValueError(
                f"expected a batch of shape (n, {self.dimension}), got {batch.shape}"
            )
        return batch


class UniformBox(InputModel):
    """Uniform density on an axis-aligned box with closed faces."""

    def __init__(self, lower, upper):
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ConfigError("box bounds must be 1-d vectors of equal length")
        if lower.size == 0:
            raise ConfigError("box needs at least one dimension")
        if not (np.isfinite(lower).all() and np.isfinite(upper).all()):
            raise ConfigError("box bounds must be finite")
        if not (lower < upper).all():
            i = int(np.nonzero(~(lower < upper))[0][0])
            raise ConfigError(
                f"empty support: lower[{i}]={lower[i]} is not below upper[{i}]={upper[i]}"
            )
        self.lower = lower
        self.upper = upper
        self.dimension = int(lower.size)

    def sample(self, n, rng):
        if n < 1:
            raise ConfigError("sample count must be >= 1")
        return rng.uniform(self.lower, self.upper, size=(n, self.dimension))

    def contains(self, batch):
        batch = self._batch(batch)
        return ((batch >= self.lower) & (batch <= self.upper)).all(axis=1)

    def log_density_diff(self, new, old):
        return np.where(self.contains(new), 0.0, -np.inf)

    def default_proposal_width(self):
        return float((self.upper - self.lower).min()) / 4.0


class UniformLinfBall(InputModel):
    """Uniform density on an l-infinity ball, optionally clipped to a box.

    The support (ball intersected with the clip box) is itself a box, so
    sampling stays rejection-free.
    """

    def __init__(self, center, radius, clip_lower=None, clip_upper=None):
        center = np.asarray(center, dtype=float)
        if center.ndim != 1 or center.size == 0:
            raise ConfigError("ball center must be a nonempty vector")
        if not np.isfinite(center).all():
            raise ConfigError("ball center must be finite")
        radius = float(radius)
        if not (radius > 0.0 and np.isfinite(radius)):
            raise ConfigError("ball radius must be a positive finite real")
        if (clip_lower is None) != (clip_upper is None):
            raise ConfigError("clip bounds must be given as a (lower, upper) pair")
        lo = center - radius
        hi = center + radius
        if clip_lower is not None:
            clip_lower = np.asarray(clip_lower, dtype=float)
            clip_upper = np.asarray(clip_upper, dtype=float)
            if clip_lower.shape != center.shape or clip_upper.shape != center.shape:
                raise ConfigError("clip bounds must match the center's dimension")
            lo = np.maximum(lo, clip_lower)
            hi = np.minimum(hi, clip_upper)
        if not (lo < hi).all():
            i = int(np.nonzero(~(lo < hi))[0][0])
            raise ConfigError(
                f"empty support: ball and clip box do not overlap in coordinate {i}"
            )
        self.center = center
        self.radius = radius
        self.dimension = int(center.size)
        self._box = UniformBox(lo, hi)

    def sample(self, n, rng):
        return self._box.sample(n, rng)

    def contains(self, batch):
        return self._box.contains(batch)

    def log_density_diff(self, new, old):
        return self._box.log_density_diff(new, old)

    def default_proposal_width(self):
        return self._box.default_proposal_width()


class StandardNormal(InputModel):
    """Independent standard normal coordinates; the support is all of R^d.

    Exists to exercise the non-uniform density-ratio path of the sampling
    kernel, which the uniform models reduce to a support indicator.
    """

    def __init__(self, dimension: int):
        if int(dimension) < 1:
            raise ConfigError("dimension must be >= 1")
        self.dimension = int(dimension)

    def sample(self, n, rng):
        if n < 1:
            raise ConfigError("sample count must be >= 1")
        return rng.standard_normal((n, self.dimension))

    def contains(self, batch):
        batch = self._batch(batch)
        return np.ones(batch.shape[0], dtype=bool)

    def log_density_diff(self, new, old):
        new = self._batch(new)
        old = self._batch(old)
        return 0.5 * ((old * old).sum(axis=1) - (new * new).sum(axis=1))

    def default_proposal_width(self):
        return 1.0
