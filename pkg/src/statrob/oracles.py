"""Analytic ground truth for validating the estimators.

Each oracle problem pairs an input model and a property with the exact log
probability of the violation event, computed in closed form. These stand in
for unbiased large-sample baselines when checking the splitting engine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import ConfigError
from .models import InputModel, StandardNormal, UniformBox, UniformLinfBall
from .properties import LinearThreshold, Property, negative_linf_gap

__all__ = [
    "OracleProblem",
    "irwin_hall_tail",
    "gaussian_halfspace_tail",
    "impossible_event",
    "named_oracles",
]

# alternating-sum cancellation grows with dimension; beyond this only the
# near-corner single-term regime is supported
ALTERNATING_MAX_DIM = 30


@dataclass(frozen=True)
class OracleProblem:
    """A named estimation problem with an analytically known answer."""

    name: str
    model: InputModel
    prop: Property
    log_true_prob: float

    @property
    def log10_true_prob(self) -> float:
        return self.log_true_prob / math.log(10.0)


def _irwin_hall_cdf(d: int, t: float) -> float:
    """P(sum of d uniform[0,1] variables <= t) by the alternating binomial
    sum, compensated with exact float summation (math.fsum)."""
    if t <= 0.0:
        return 0.0
    if t >= d:
        return 1.0
    terms = []
    sign = 1.0
    for j in range(int(math.floor(t)) + 1):
        terms.append(sign * math.comb(d, j) * (t - j) ** d)
        sign = -sign
    return math.fsum(terms) / math.factorial(d)


def irwin_hall_tail(d: int, b: float) -> float:
    """log P(sum of d independent uniform[0,1] variables >= b).

    Evaluates the reflected cdf at d - b, which for b >= d - 1 collapses to
    the single corner term (d-b)^d / d!, computed in logs so there is no
    cancellation at all in the rare regime.
    """
    d = int(d)
    if d < 1:
        raise ConfigError("dimension must be >= 1")
    b = float(b)
    if not 0.0 <= b <= d:
        raise ConfigError(f"threshold must lie in [0, {d}], got {b}")
    t = d - b  # P(S >= b) = P(S <= d - b) by symmetry of the sum about d/2
    if t == 0.0:
        return float("-inf")
    if t <= 1.0:
        return d * math.log(t) - math.lgamma(d + 1)
    if d > ALTERNATING_MAX_DIM:
        raise ConfigError(
            f"alternating sum capped at d={ALTERNATING_MAX_DIM}; "
            "only thresholds with b >= d-1 are supported beyond that"
        )
    return math.log(_irwin_hall_cdf(d, t))


def gaussian_halfspace_tail(a, b: float) -> float:
    """log P(a . X >= b) for X standard normal: the upper normal tail at
    b / ||a||_2, evaluated through the erfc-based log cdf, which stays
    accurate far into the tail."""
    a = np.asarray(a, dtype=float)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        raise ConfigError("coefficient vector must be nonzero")
    return float(special.log_ndtr(-float(b) / norm))


def impossible_event() -> OracleProblem:
    """A problem whose property tops out at -1, so no violation exists and
    the true probability is exactly zero.

    Six dimensions: the conditioned region shrinks by 0.1^(1/d) per level
    at quantile 0.1, and the per-level width halving can only track that
    for d >= 4. Below that, chains freeze and tie-inflated survivor
    fractions drag out the run.
    """
    center = np.zeros(6)
    return OracleProblem(
        name="impossible",
        model=UniformLinfBall(center, 0.5),
        prop=negative_linf_gap(center),
        log_true_prob=float("-inf"),
    )


def named_oracles() -> dict[str, OracleProblem]:
    """Registry of self-test problems addressable by name from job configs."""
    problems = [
        OracleProblem(
            name="interval-half",
            model=UniformBox([0.0], [1.0]),
            prop=LinearThreshold([1.0], 0.5),
            log_true_prob=math.log(0.5),
        ),
        OracleProblem(
            name="irwin-hall-common",
            model=UniformBox(np.zeros(5), np.ones(5)),
            prop=LinearThreshold(np.ones(5), 4.0),
            log_true_prob=irwin_hall_tail(5, 4.0),
        ),
        OracleProblem(
            name="irwin-hall-rare",
            model=UniformBox(np.zeros(10), np.ones(10)),
            prop=LinearThreshold(np.ones(10), 9.5),
            log_true_prob=irwin_hall_tail(10, 9.5),
        ),
        OracleProblem(
            name="gaussian-halfspace",
            model=StandardNormal(3),
            prop=LinearThreshold([1.0, 2.0, 2.0], 6.0),
            log_true_prob=gaussian_halfspace_tail([1.0, 2.0, 2.0], 6.0),
        ),
        impossible_event(),
    ]
    return {p.name: p for p in problems}
