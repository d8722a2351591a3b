"""Initial cell search strategies: CI-based, exhaustive, and random sweeps.

The BS always transmits sequentially through its full 2*N_BS codebook using
ABF. Strategies differ in how the MS listens:

* CI         - the MS points once, using the context-information AoA
               (true AoA plus a bounded uniform error) to pick its
               combiner(s); any receiver architecture applies.
* Exhaustive - the MS tries its whole codebook against every BS beam (ABF).
* Random     - the MS picks one codebook combiner uniformly at random (ABF).

Search delay is counted in abstract slots: one slot per (BS beam, MS
configuration) dwell, i.e. slots = card(W_BS) * ms_combiner_count.
"""

from dataclasses import dataclass

import numpy as np

from .arrays import Codebook
from .channel import ChannelRealization, LinkBudget
from .schemes import SchemeKind, select_adjacent, select_combiner_ci

__all__ = [
    "STRATEGY_KINDS",
    "SearchStrategy",
    "SweepResult",
    "draw_angular_error",
    "sweep_ci",
    "sweep_exhaustive",
    "sweep_random",
]

STRATEGY_KINDS = ("ci", "exhaustive", "random")

# Fine-beam subdivisions per codebook bin for the HBF digital refinement.
HBF_REFINEMENT_STEPS = 8


@dataclass(frozen=True)
class SearchStrategy:
    """One search policy: strategy kind, MS architecture, CI error bound."""

    kind: str
    scheme: SchemeKind = SchemeKind("ABF")
    max_angular_error: float = 0.0  # radians; CI only

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}, expected one of {STRATEGY_KINDS}")
        if self.max_angular_error < 0:
            raise ValueError("max_angular_error must be >= 0")
        if self.kind in ("exhaustive", "random") and self.scheme.tag != "ABF":
            raise ValueError(f"{self.kind} search uses ABF at the MS, got {self.scheme.tag}")

    @property
    def label(self) -> str:
        return {"ci": "CI", "exhaustive": "ES", "random": "RS"}[self.kind]


@dataclass(frozen=True)
class SweepResult:
    """Outcome of one access attempt: best post-sweep SNR and its delay."""

    best_snr: float
    ms_combiner_count: int
    slots: int

    @classmethod
    def from_sweep(cls, best_snr: float, card_bs: int, ms_combiner_count: int) -> "SweepResult":
        return cls(
            best_snr=best_snr,
            ms_combiner_count=ms_combiner_count,
            slots=card_bs * ms_combiner_count,
        )


def draw_angular_error(max_angular_error: float, rng: np.random.Generator) -> float:
    """Uniform angular error in [-max_angular_error, +max_angular_error]."""
    if max_angular_error < 0:
        raise ValueError("max_angular_error must be >= 0")
    return float(rng.uniform(-max_angular_error, max_angular_error))


# ---------------------------------------------------------------------------
# Shared gain evaluators.
#
# Every sweep reduces to maximizing |w^H H w_bs|^2 (times P/sigma^2, with
# ||w|| = 1) over a finite combiner/beam set. The evaluators below operate on
# the precomputed table B = H @ W_bs^T of per-BS-beam receive vectors; both
# the public sweep operations and the Monte Carlo engine go through them, so
# there is exactly one arithmetic path.
# ---------------------------------------------------------------------------


def beam_outputs(chan: ChannelRealization, cb_bs: Codebook) -> np.ndarray:
    """Receive-side vectors H @ w_bs for every BS codebook beam, (n_ms, 2*N_BS)."""
    return chan.matrix @ cb_bs.vectors.T


def _best_gain_fixed(B: np.ndarray, w_ms: np.ndarray) -> float:
    """Best |w_ms^H H w_bs|^2 over BS beams for one fixed combiner."""
    return float(np.max(np.abs(w_ms.conj() @ B) ** 2))


def _best_gain_exhaustive(B: np.ndarray, cb_ms: Codebook) -> float:
    """Best gain over all (MS combiner, BS beam) codebook pairs."""
    return float(np.max(np.abs(cb_ms.vectors.conj() @ B) ** 2))


def _best_gain_psn(B: np.ndarray, branch_vectors: np.ndarray) -> float:
    """Best per-branch gain over beams: comparator output of the PSN.

    Evaluated branch by branch through the fixed-combiner path, so adding a
    branch can never lower the result even at float granularity.
    """
    return max(_best_gain_fixed(B, w) for w in branch_vectors)


def _hbf_candidate_combiners(cb_ms: Codebook, indices: tuple) -> np.ndarray:
    """Fine grid of progressive-phase pointing vectors spanning the branches.

    The digital stage can synthesize any pointing direction inside the span
    of the selected branches; candidates subdivide each codebook bin between
    the outermost branches into HBF_REFINEMENT_STEPS steps (branch phases are
    grid members, so branch combiners are reachable exactly).
    """
    card = cb_ms.cardinality
    main = indices[0]
    rel = ((np.asarray(indices) - main) + card // 2) % card - card // 2
    lo, hi = int(main + rel.min()), int(main + rel.max())
    steps = (hi - lo) * HBF_REFINEMENT_STEPS
    bins = lo + np.arange(steps + 1) / HBF_REFINEMENT_STEPS if steps else np.array([float(lo)])
    phases = 2.0 * np.pi * bins / card
    m = np.arange(cb_ms.n_antennas)
    return np.exp(1j * np.outer(phases, m)) / np.sqrt(cb_ms.n_antennas)


def _best_gain_hbf(B: np.ndarray, branch_vectors: np.ndarray, cb_ms: Codebook,
                   indices: tuple) -> float:
    """HBF sweep gain: digitally refined pointing within the branch span.

    Baseband coefficients c synthesize an effective combiner from the analog
    branch outputs, reaching any pointing direction the branch span supports.
    Candidate directions form a fine grid between the outermost branches;
    each candidate a is realized by the whitened projection
    c = (W^H W)^{-1} W^H a and scored as |c^H g|^2 / (c^H W^H W c) per BS
    beam. The raw branch outputs are always included, so the result dominates
    the PSN comparator trial-by-trial.
    """
    W = branch_vectors                     # (branches, n_ms)
    best = _best_gain_psn(B, W)            # branch selection floor
    if len(indices) > 1:
        G = W.conj() @ B                   # branch outputs per beam
        A = W.conj() @ W.T
        cand = _hbf_candidate_combiners(cb_ms, indices)      # (n_cand, n_ms)
        U = W.conj() @ cand.T                                # (branches, n_cand)
        C = np.linalg.solve(A, U)
        denom = np.einsum("ij,ij->j", U.conj(), C).real      # ||P_span a||^2
        num = np.abs(C.conj().T @ G) ** 2                    # (n_cand, beams)
        best = max(best, float(np.max(num / denom[:, None])))
    return best


def _best_gain_dbf(B: np.ndarray) -> float:
    """Best ||H w_bs||^2 over beams: unconstrained matched-filter combining."""
    return float(np.max(np.einsum("ij,ij->j", B.conj(), B).real))


def _ci_gain(B: np.ndarray, cb_ms: Codebook, scheme: SchemeKind, ci_angle: float) -> float:
    """Dispatch the CI sweep gain for one receiver architecture."""
    if scheme.tag == "DBF":
        return _best_gain_dbf(B)
    main = select_combiner_ci(cb_ms, ci_angle)
    if scheme.tag == "ABF":
        return _best_gain_fixed(B, cb_ms.vectors[main])
    selection = select_adjacent(cb_ms, main, scheme.branches, ci_angle=ci_angle)
    branch_vectors = cb_ms.vectors[list(selection.indices)]
    if scheme.tag == "PSN":
        return _best_gain_psn(B, branch_vectors)
    return _best_gain_hbf(B, branch_vectors, cb_ms, selection.indices)


# ---------------------------------------------------------------------------
# Public sweep operations.
# ---------------------------------------------------------------------------


def sweep_ci(
    chan: ChannelRealization,
    cb_bs: Codebook,
    cb_ms: Codebook,
    strategy: SearchStrategy,
    budget: LinkBudget,
    rng: np.random.Generator,
) -> SweepResult:
    """CI-based access attempt.

    The MS forms phi_CI = true AoA + angular error (clamped to the steering
    range), fixes its combiner set once, and listens while the BS sweeps all
    2*N_BS beams; the search delay is card(W_BS) * 1 regardless of branch
    count.
    """
    if strategy.kind != "ci":
        raise ValueError(f"sweep_ci requires a CI strategy, got {strategy.kind!r}")
    err = draw_angular_error(strategy.max_angular_error, rng)
    phi_ci = float(np.clip(chan.true_aoa + err, -np.pi / 2, np.pi / 2))
    B = beam_outputs(chan, cb_bs)
    gain = _ci_gain(B, cb_ms, strategy.scheme, phi_ci)
    snr = gain * (budget.tx_power / budget.noise_power)
    return SweepResult.from_sweep(snr, cb_bs.cardinality, 1)


def sweep_exhaustive(
    chan: ChannelRealization,
    cb_bs: Codebook,
    cb_ms: Codebook,
    budget: LinkBudget,
) -> SweepResult:
    """Exhaustive access attempt over every (BS beam, MS combiner) pair."""
    B = beam_outputs(chan, cb_bs)
    gain = _best_gain_exhaustive(B, cb_ms)
    snr = gain * (budget.tx_power / budget.noise_power)
    return SweepResult.from_sweep(snr, cb_bs.cardinality, cb_ms.cardinality)


def sweep_random(
    chan: ChannelRealization,
    cb_bs: Codebook,
    cb_ms: Codebook,
    budget: LinkBudget,
    rng: np.random.Generator,
) -> SweepResult:
    """Random access attempt: one uniformly drawn MS combiner per sweep."""
    index = int(rng.integers(cb_ms.cardinality))
    B = beam_outputs(chan, cb_bs)
    gain = _best_gain_fixed(B, cb_ms.vectors[index])
    snr = gain * (budget.tx_power / budget.noise_power)
    return SweepResult.from_sweep(snr, cb_bs.cardinality, 1)
