"""Monte Carlo orchestration: access-error estimation over channel draws and
parameter grids.

Reproducibility contract
------------------------
Every random stream is derived deterministically from the experiment master
seed and the cell's MS antenna count:

    channel draws        <- SeedSequence([master_seed, TAG_CHANNEL, n_ms])
    angular-error draws  <- SeedSequence([master_seed, TAG_ERROR,   n_ms])
    random-search draws  <- SeedSequence([master_seed, TAG_SEARCH,  n_ms])

Each (distance, error-bound, n_ms, strategy) evaluation replays its streams
from the start, so cells are order-independent and parallelizable, and all
strategies and all distances with the same n_ms see common random numbers:
identical channel sequences, with identical angular-error draws scaled by the
cell's error bound. Distance enters only through the path loss, making
per-trial SNR exactly monotone across the distance grid.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

import numpy as np

from .channel import ChannelParams, LinkBudget, sample_channel
from .search import (
    SearchStrategy,
    SweepResult,
    beam_outputs,
    draw_angular_error,
    sweep_ci,
    sweep_exhaustive,
    sweep_random,
    _best_gain_exhaustive,
    _best_gain_fixed,
    _ci_gain,
)
from .arrays import build_codebook

__all__ = [
    "ExperimentConfig",
    "TrialPoint",
    "AccessErrorEstimate",
    "CellKey",
    "wilson_interval",
    "run_trial",
    "estimate_access_error",
    "run_grid",
]

# Two-sided 95% normal quantile for the Wilson score interval.
Z95 = 1.959963984540054

# Stream-domain tags mixed into the seed material.
_TAG_CHANNEL = 0x436E61
_TAG_ERROR = 0x416E67
_TAG_SEARCH = 0x526E64


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one simulation campaign.

    `channel.n_ms` acts as a placeholder; the n_ms grid value replaces it
    cell by cell. Angular quantities are radians.
    """

    channel: ChannelParams
    budget: LinkBudget
    strategies: tuple
    distances_m: tuple
    phi_e_max_grid: tuple
    n_ms_grid: tuple
    threshold_db: float = -4.0
    n_trials: int = 100_000
    master_seed: int = 0

    def __post_init__(self):
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if not (self.distances_m and self.phi_e_max_grid and self.n_ms_grid and self.strategies):
            raise ValueError("grids and strategy list must be nonempty")
        if not math.isfinite(self.threshold_db):
            raise ValueError("threshold_db must be finite")

    def point(self, distance: float, phi_e_max: float, n_ms: int,
              strategy: SearchStrategy) -> "TrialPoint":
        """Resolve one grid cell into a self-contained trial point."""
        strategy = replace(strategy, max_angular_error=phi_e_max) \
            if strategy.kind == "ci" else strategy
        return TrialPoint(
            params=replace(self.channel, n_ms=n_ms),
            budget=self.budget,
            strategy=strategy,
            distance=distance,
            threshold_db=self.threshold_db,
            n_trials=self.n_trials,
            master_seed=self.master_seed,
        )


@dataclass(frozen=True)
class TrialPoint:
    """One grid cell: everything needed to run and reproduce its trials."""

    params: ChannelParams
    budget: LinkBudget
    strategy: SearchStrategy
    distance: float
    threshold_db: float
    n_trials: int
    master_seed: int


@dataclass(frozen=True)
class AccessErrorEstimate:
    """Estimated access error probability with its Wilson 95% interval."""

    p_hat: float
    n_trials: int
    ci95_low: float
    ci95_high: float
    mean_slots: float


class CellKey(NamedTuple):
    distance_m: float
    phi_e_max: float
    n_ms: int
    strategy: str
    scheme: str


def wilson_interval(n_errors: int, n_trials: int, z: float = Z95) -> tuple:
    """Wilson score interval for a binomial proportion."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    p = n_errors / n_trials
    z2n = z * z / n_trials
    center = (p + z2n / 2.0) / (1.0 + z2n)
    half = z * math.sqrt(p * (1.0 - p) / n_trials + z2n / (4.0 * n_trials)) / (1.0 + z2n)
    # The bound facing an empty tail is exactly the point estimate; rounding
    # in center-half must not push it past 0 or 1.
    low = 0.0 if n_errors == 0 else max(0.0, center - half)
    high = 1.0 if n_errors == n_trials else min(1.0, center + half)
    return low, high


def _streams(point: TrialPoint):
    """Per-cell generators for channel, angular-error and random-search draws."""
    n_ms = point.params.n_ms
    seed = point.master_seed

    def gen(tag):
        return np.random.default_rng(np.random.SeedSequence([seed, tag, n_ms]))

    return gen(_TAG_CHANNEL), gen(_TAG_ERROR), gen(_TAG_SEARCH)


def run_trial(point: TrialPoint, rng: np.random.Generator) -> tuple:
    """Sample one channel, execute the configured sweep, return (snr, slots).

    Self-contained: channel and any strategy randomness come from the single
    generator, in a fixed order, so equal seeds replay identically.
    """
    cb_bs = build_codebook(point.params.n_bs)
    cb_ms = build_codebook(point.params.n_ms)
    chan = sample_channel(point.params, point.distance, rng)
    strategy = point.strategy
    if strategy.kind == "ci":
        result = sweep_ci(chan, cb_bs, cb_ms, strategy, point.budget, rng)
    elif strategy.kind == "exhaustive":
        result = sweep_exhaustive(chan, cb_bs, cb_ms, point.budget)
    else:
        result = sweep_random(chan, cb_bs, cb_ms, point.budget, rng)
    return result.best_snr, result.slots


def estimate_access_error(
    point: TrialPoint,
    trial_fn: Callable | None = None,
) -> AccessErrorEstimate:
    """Estimate P(SNR < threshold) over the point's trials.

    With `trial_fn` given, each trial calls trial_fn(rng) -> (snr, slots)
    against the channel stream (used by estimator self-tests); otherwise the
    configured strategy is swept with the common-random-number streams
    described in the module docstring.
    """
    rng_chan, rng_err, rng_search = _streams(point)
    # float64 power saturates to inf/0 at extreme thresholds instead of raising
    with np.errstate(over="ignore"):
        threshold = float(np.float64(10.0) ** (point.threshold_db / 10.0))
    n = point.n_trials
    n_errors = 0
    slots_total = 0

    if trial_fn is not None:
        for _ in range(n):
            snr, slots = trial_fn(rng_chan)
            n_errors += snr < threshold
            slots_total += slots
    else:
        strategy = point.strategy
        scheme = strategy.scheme
        budget = point.budget
        cb_bs = build_codebook(point.params.n_bs)
        cb_ms = build_codebook(point.params.n_ms)
        snr_scale = budget.tx_power / budget.noise_power
        if strategy.kind == "ci":
            count = 1
        elif strategy.kind == "exhaustive":
            count = cb_ms.cardinality
        else:
            count = 1
        slots = cb_bs.cardinality * count
        for _ in range(n):
            chan = sample_channel(point.params, point.distance, rng_chan)
            B = beam_outputs(chan, cb_bs)
            if strategy.kind == "ci":
                err = draw_angular_error(strategy.max_angular_error, rng_err)
                phi_ci = float(np.clip(chan.true_aoa + err, -np.pi / 2, np.pi / 2))
                gain = _ci_gain(B, cb_ms, scheme, phi_ci)
            elif strategy.kind == "exhaustive":
                gain = _best_gain_exhaustive(B, cb_ms)
            else:
                index = int(rng_search.integers(cb_ms.cardinality))
                gain = _best_gain_fixed(B, cb_ms.vectors[index])
            n_errors += gain * snr_scale < threshold
            slots_total += slots

    low, high = wilson_interval(n_errors, n)
    return AccessErrorEstimate(
        p_hat=n_errors / n,
        n_trials=n,
        ci95_low=low,
        ci95_high=high,
        mean_slots=slots_total / n,
    )


def _cell_keys(config: ExperimentConfig):
    for distance in config.distances_m:
        for phi_e_max in config.phi_e_max_grid:
            for n_ms in config.n_ms_grid:
                for strategy in config.strategies:
                    yield CellKey(
                        distance_m=float(distance),
                        phi_e_max=float(phi_e_max),
                        n_ms=int(n_ms),
                        strategy=strategy.label,
                        scheme=strategy.scheme.tag,
                    ), strategy


def _evaluate_cell(args):
    config, key, strategy = args
    point = config.point(key.distance_m, key.phi_e_max, key.n_ms, strategy)
    return key, estimate_access_error(point)


def run_grid(config: ExperimentConfig, workers: int = 1) -> dict:
    """Evaluate the full Cartesian grid; returns {CellKey: AccessErrorEstimate}.

    Cells are independent given the stream-derivation rule, so any worker
    count produces identical results.
    """
    tasks = [(config, key, strategy) for key, strategy in _cell_keys(config)]
    results: dict = {}
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for key, estimate in pool.map(_evaluate_cell, tasks):
                results[key] = estimate
    else:
        for task in tasks:
            key, estimate = _evaluate_cell(task)
            results[key] = estimate
    return results
