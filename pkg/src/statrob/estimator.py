"""Violation-probability estimators.

Two routes to the same quantity, the probability that the property value is
nonnegative under the input model: a batched naive Monte Carlo estimator,
and an adaptive multilevel splitting engine that stays accurate when the
violation event is rare. Both report natural-log estimates and use -inf as
the sentinel for runs indistinguishable from probability zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import ConfigError, DivergedRunError
from .models import InputModel
from .properties import Property

__all__ = [
    "AmlsConfig",
    "AmlsResult",
    "ChainPopulation",
    "NaiveMcResult",
    "naive_mc",
    "amls_run",
    "update_level",
    "mh_sweep",
    "adapt_proposal",
    "resample_survivors",
    "quantile_index",
]

UNSAT_SENTINEL = float("-inf")


def _snapped_floor(x: float) -> int:
    # guard against products like rho*n landing one ulp below an integer
    nearest = round(x)
    if abs(x - nearest) <= 8.0 * math.ulp(max(1.0, abs(x))):
        return int(nearest)
    return int(math.floor(x))


def quantile_index(n: int, rho: float) -> int:
    """1-based index floor(rho*n) into a descending sort, clamped to [1, n]."""
    return min(max(_snapped_floor(rho * n), 1), n)


@dataclass(frozen=True)
class AmlsConfig:
    """Run parameters for the splitting estimator.

    `proposal_width_init` defaults to the model's own length scale (a
    quarter of the smallest support side for uniform models) and
    `max_levels` to twice the level count a healthy run needs to cross
    `log_p_min`, plus slack. `log_p_min` is a natural log.
    """

    n_chains: int
    mh_steps: int
    quantile: float
    log_p_min: float
    proposal_width_init: Optional[float] = None
    accept_target: float = 0.234
    width_shrink: float = 0.5
    width_grow: float = 1.02
    adapt_widths: bool = True
    max_levels: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if int(self.n_chains) < 1:
            raise ConfigError("n_chains must be >= 1")
        if int(self.mh_steps) < 1:
            raise ConfigError("mh_steps must be >= 1")
        if not 0.0 < self.quantile < 1.0:
            raise ConfigError("quantile must lie strictly between 0 and 1")
        if _snapped_floor(self.quantile * self.n_chains) < 1:
            raise ConfigError(
                f"floor(quantile * n_chains) must be >= 1, got "
                f"{self.quantile} * {self.n_chains}"
            )
        if not (self.log_p_min < 0.0 and math.isfinite(self.log_p_min)):
            raise ConfigError("log_p_min must be a finite negative real")
        if self.proposal_width_init is not None and not self.proposal_width_init > 0.0:
            raise ConfigError("proposal_width_init must be positive")
        if not 0.0 < self.accept_target < 1.0:
            raise ConfigError("accept_target must lie in (0, 1)")
        if not (self.width_shrink > 0.0 and self.width_grow > 0.0):
            raise ConfigError("width factors must be positive")
        if self.max_levels is not None and int(self.max_levels) < 1:
            raise ConfigError("max_levels must be >= 1")

    @property
    def resolved_max_levels(self) -> int:
        if self.max_levels is not None:
            return int(self.max_levels)
        ratio = -self.log_p_min / -math.log(self.quantile)
        nearest = round(ratio)
        if abs(ratio - nearest) <= 8.0 * math.ulp(max(1.0, ratio)):
            ratio = nearest
        return 2 * math.ceil(ratio) + 10

    def resolved_width(self, model: InputModel) -> float:
        if self.proposal_width_init is not None:
            return float(self.proposal_width_init)
        return model.default_proposal_width()


@dataclass
class ChainPopulation:
    """Live sampler state, one row per chain.

    Invariants: positions stay inside the model support, `prop_values[i]`
    equals the property at `positions[i]`, widths are positive.
    """

    positions: np.ndarray
    prop_values: np.ndarray
    widths: np.ndarray
    accept_accum: np.ndarray

    @property
    def n_chains(self) -> int:
        return self.positions.shape[0]


@dataclass
class AmlsResult:
    """Outcome of one splitting run.

    `log_estimate` is the natural-log violation probability, or -inf when
    the run certified that any eventual estimate would fall below the
    configured floor (the unsat sentinel). Counterexamples are present only
    when the final level reached zero; every row then satisfies s >= 0.
    On sentinel returns the acceptance trace is one entry shorter than the
    level trace, because the aborting level never runs a sweep.
    """

    log_estimate: float
    levels: np.ndarray
    level_factors: np.ndarray
    n_levels: int
    counterexamples: Optional[np.ndarray]
    counterexample_values: Optional[np.ndarray]
    acceptance_trace: np.ndarray
    property_evaluations: int

    @property
    def is_unsat(self) -> bool:
        return self.log_estimate == UNSAT_SENTINEL

    @property
    def log10_estimate(self) -> float:
        return self.log_estimate / math.log(10.0)


class NaiveMcResult(NamedTuple):
    log_estimate: float
    hit_count: int


def naive_mc(
    model: InputModel,
    prop: Property,
    n_samples: int,
    batch_size: int,
    rng: np.random.Generator,
) -> NaiveMcResult:
    """Direct Monte Carlo estimate of log P(s(X) >= 0); -inf when no draw hits.

    Unbiased in probability space. Draws are processed at most `batch_size`
    at a time so memory stays bounded at large sample counts.
    """
    if n_samples < 1:
        raise ConfigError("n_samples must be >= 1")
    if batch_size < 1:
        raise ConfigError("batch_size must be >= 1")
    hits = 0
    remaining = int(n_samples)
    while remaining > 0:
        m = min(batch_size, remaining)
        hits += int((prop.evaluate(model.sample(m, rng)) >= 0.0).sum())
        remaining -= m
    if hits == 0:
        return NaiveMcResult(UNSAT_SENTINEL, 0)
    return NaiveMcResult(math.log(hits / n_samples), hits)


def update_level(sorted_desc_values: np.ndarray, rho: float) -> float:
    """Next level: min{0, value at 1-based index floor(rho*N)} of a
    descending sort, so at least a rho-fraction of chains survive it."""
    idx = quantile_index(len(sorted_desc_values), rho)
    return min(0.0, float(sorted_desc_values[idx - 1]))


def mh_sweep(
    pop: ChainPopulation,
    level: float,
    model: InputModel,
    prop: Property,
    steps: int,
    rng: np.random.Generator,
) -> ChainPopulation:
    """Advance every chain `steps` Metropolis transitions targeting the
    input density restricted to {s >= level}.

    The proposal adds one uniform draw from [-w, w] per coordinate with the
    chain's own radius w. It is symmetric, so the acceptance ratio reduces
    to the density ratio times the level indicator; for uniform models that
    is just "in support and above the level". Out-of-support proposals are
    rejected whole (clipping would break proposal symmetry). All chains are
    updated in lockstep; `accept_accum` ends up holding each chain's
    acceptance fraction over the sweep.
    """
    n, d = pop.positions.shape
    positions = pop.positions
    values = pop.prop_values
    accepted = np.zeros(n)
    for _ in range(steps):
        offsets = rng.uniform(-1.0, 1.0, size=(n, d)) * pop.widths[:, None]
        proposal = positions + offsets
        log_ratio = model.log_density_diff(proposal, positions)
        proposal_values = prop.evaluate(proposal)
        accept_prob = np.exp(np.minimum(log_ratio, 0.0))
        accept = (proposal_values >= level) & (rng.random(n) < accept_prob)
        positions[accept] = proposal[accept]
        values[accept] = proposal_values[accept]
        accepted[accept] += 1.0
    pop.accept_accum = accepted / steps
    return pop


def adapt_proposal(pop: ChainPopulation, cfg: AmlsConfig) -> ChainPopulation:
    """Per-chain width update from the last sweep's acceptance fraction:
    halve below the target rate, grow by 2 percent above it, hold exactly
    on it. Resets the accumulators."""
    frac = pop.accept_accum
    widths = np.where(frac < cfg.accept_target, pop.widths * cfg.width_shrink, pop.widths)
    widths = np.where(frac > cfg.accept_target, widths * cfg.width_grow, widths)
    pop.widths = widths
    pop.accept_accum = np.zeros(pop.n_chains)
    return pop


def resample_survivors(
    pop: ChainPopulation, level: float, rng: np.random.Generator
) -> ChainPopulation:
    """Bootstrap the survivor set {s >= level} back to full population size,
    uniformly with replacement. Widths travel with the copied parent."""
    mask = pop.prop_values >= level
    count = int(mask.sum())
    if count == 0:
        raise ValueError("cannot resample: no chains satisfy the level")
    picks = rng.integers(0, count, size=pop.n_chains)
    return ChainPopulation(
        positions=pop.positions[mask][picks],
        prop_values=pop.prop_values[mask][picks],
        widths=pop.widths[mask][picks],
        accept_accum=np.zeros(pop.n_chains),
    )


def _result(log_estimate, levels, factors, acceptance, evaluations, pop=None):
    success = pop is not None
    return AmlsResult(
        log_estimate=log_estimate,
        levels=np.asarray(levels, dtype=float),
        level_factors=np.asarray(factors, dtype=float),
        n_levels=len(levels),
        counterexamples=pop.positions.copy() if success else None,
        counterexample_values=pop.prop_values.copy() if success else None,
        acceptance_trace=np.asarray(acceptance, dtype=float),
        property_evaluations=evaluations,
    )


def amls_run(model: InputModel, prop: Property, cfg: AmlsConfig) -> AmlsResult:
    """Estimate log P(s(X) >= 0) by adaptive multilevel splitting.

    Each level is set at the descending rho-quantile of the current
    property values, capped at zero. The per-level factor is the surviving
    fraction; survivors are bootstrapped back to full size and rejuvenated
    with `mh_steps` Metropolis transitions per chain, on all chains. The
    run ends when the level reaches zero (success, counterexamples
    returned) or the running estimate falls below `log_p_min` (sentinel).
    A run that exhausts `max_levels`, which continuous property values
    never do, raises DivergedRunError with the partial trace.

    Identical config and inputs give a bit-identical result. Cost is one
    property evaluation per chain per transition, O(N * M * levels).
    """
    if model.dimension != prop.dimension:
        raise ConfigError(
            f"model dimension {model.dimension} does not match "
            f"property dimension {prop.dimension}"
        )
    rng = np.random.default_rng(cfg.seed)
    n = cfg.n_chains
    positions = model.sample(n, rng)
    pop = ChainPopulation(
        positions=positions,
        prop_values=prop.evaluate(positions),
        widths=np.full(n, cfg.resolved_width(model)),
        accept_accum=np.zeros(n),
    )
    evaluations = n
    levels: list[float] = []
    factors: list[float] = []
    acceptance: list[float] = []
    log_estimate = 0.0
    max_levels = cfg.resolved_max_levels

    while True:
        if len(levels) >= max_levels:
            raise DivergedRunError(
                f"no termination within {max_levels} levels; property values "
                f"may have duplicates (level stalled at {levels[-1]})",
                levels,
                factors,
                log_estimate,
            )
        level = update_level(np.sort(pop.prop_values)[::-1], cfg.quantile)
        survivors = int((pop.prop_values >= level).sum())
        levels.append(level)
        if survivors == 0:
            # unreachable for well-formed values: the quantile value survives itself
            return _result(UNSAT_SENTINEL, levels, factors, acceptance, evaluations)
        factor = math.log(survivors / n)
        factors.append(factor)
        log_estimate += factor
        if log_estimate < cfg.log_p_min:
            return _result(UNSAT_SENTINEL, levels, factors, acceptance, evaluations)
        pop = resample_survivors(pop, level, rng)
        mh_sweep(pop, level, model, prop, cfg.mh_steps, rng)
        evaluations += n * cfg.mh_steps
        acceptance.append(float(pop.accept_accum.mean()))
        if cfg.adapt_widths:
            adapt_proposal(pop, cfg)
        if level >= 0.0:
            return _result(log_estimate, levels, factors, acceptance, evaluations, pop)
