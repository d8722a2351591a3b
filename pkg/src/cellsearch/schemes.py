"""Receiver beamforming architectures and per-architecture SNR evaluation.

Four receiver options are modeled:

* ABF  - one analog combining vector from the quantized codebook.
* PSN  - N_C simultaneous analog combiners; an analog comparator forwards
         the strongest branch to the single RF chain.
* HBF  - N_RF analog branches plus digital baseband combining across them.
* DBF  - one RF chain per antenna; unconstrained baseband combining.

All SNR routines evaluate |w^H H w_bs|^2 * P / (||w||^2 * sigma^2) for their
respective effective combiner(s) and are pure functions of their inputs.
"""

from dataclasses import dataclass

import numpy as np

from .arrays import Codebook, steering_vector

__all__ = [
    "SCHEME_TAGS",
    "SchemeKind",
    "CombinerSelection",
    "select_combiner_ci",
    "select_adjacent",
    "snr_single",
    "snr_psn",
    "snr_hbf",
    "snr_dbf",
]

SCHEME_TAGS = ("ABF", "PSN", "HBF", "DBF")


@dataclass(frozen=True)
class SchemeKind:
    """Receiver architecture tag plus its branch count.

    `branches` is N_C for PSN and N_RF for HBF; it is 1 for ABF and unused
    for DBF (which combines across all antennas).
    """

    tag: str
    branches: int = 1

    def __post_init__(self):
        if self.tag not in SCHEME_TAGS:
            raise ValueError(f"unknown scheme tag {self.tag!r}, expected one of {SCHEME_TAGS}")
        if self.branches < 1:
            raise ValueError(f"branches must be >= 1, got {self.branches}")
        if self.tag == "ABF" and self.branches != 1:
            raise ValueError("ABF has a single combining branch")


@dataclass(frozen=True)
class CombinerSelection:
    """Analog combiner set chosen from context information.

    `main_index` maximizes the codebook response toward `ci_angle`;
    `indices` holds the full distinct branch set (main plus adjacent).
    """

    main_index: int
    indices: tuple
    ci_angle: float

    def __post_init__(self):
        if self.main_index not in self.indices:
            raise ValueError("main_index must be a member of indices")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("branch indices must be distinct")


def select_combiner_ci(codebook: Codebook, ci_angle: float) -> int:
    """Index of the codebook combiner with maximum gain toward `ci_angle`.

    The angle is clamped to [-pi/2, pi/2] first (context information with
    injected error can step past endfire). Ties break to the lowest index.
    """
    angle = float(np.clip(ci_angle, -np.pi / 2, np.pi / 2))
    a = steering_vector(codebook.n_antennas, angle).elements
    gains = np.abs(codebook.vectors.conj() @ a)
    return int(np.argmax(gains))


def select_adjacent(
    codebook: Codebook,
    main_index: int,
    n_branches: int,
    ci_angle: float | None = None,
) -> CombinerSelection:
    """Main combiner plus the n_branches-1 nearest neighbours.

    Nearness is circular index distance: the codebook is ordered by spatial
    frequency, which wraps at 2*pi. Equal-distance ties resolve to the lower
    index first.
    """
    card = codebook.cardinality
    if not 0 <= main_index < card:
        raise ValueError(f"main_index {main_index} out of range for cardinality {card}")
    if n_branches > card:
        raise ValueError(f"n_branches {n_branches} exceeds codebook cardinality {card}")
    idx = np.arange(card)
    circ = np.minimum((idx - main_index) % card, (main_index - idx) % card)
    order = np.lexsort((idx, circ))
    chosen = tuple(int(i) for i in order[:n_branches])
    if ci_angle is None:
        ci_angle = codebook.beam_angles[main_index]
    return CombinerSelection(main_index=main_index, indices=chosen, ci_angle=float(ci_angle))


def _check_dims(H: np.ndarray, w_bs: np.ndarray, w_ms: np.ndarray | None = None):
    n_ms, n_bs = H.shape
    if w_bs.shape != (n_bs,):
        raise ValueError(f"w_bs has shape {w_bs.shape}, expected ({n_bs},)")
    if w_ms is not None and w_ms.shape != (n_ms,):
        raise ValueError(f"w_ms has shape {w_ms.shape}, expected ({n_ms},)")


def snr_single(H, w_bs, w_ms, p_tx: float, noise_w: float) -> float:
    """Post-combining SNR for one transmit beam and one receive combiner."""
    H = np.asarray(H)
    w_bs = np.asarray(w_bs)
    w_ms = np.asarray(w_ms)
    _check_dims(H, w_bs, w_ms)
    if noise_w <= 0:
        raise ValueError(f"noise power must be positive, got {noise_w}")
    num = np.abs(np.vdot(w_ms, H @ w_bs)) ** 2 * p_tx
    den = float(np.vdot(w_ms, w_ms).real) * noise_w
    return float(num / den)


def snr_psn(H, w_bs, selection: CombinerSelection, codebook: Codebook,
            p_tx: float, noise_w: float) -> float:
    """SNR after the comparator: best branch among the selected combiners."""
    return max(
        snr_single(H, w_bs, codebook.vectors[i], p_tx, noise_w)
        for i in selection.indices
    )


def snr_hbf(H, w_bs, selection: CombinerSelection, codebook: Codebook,
            p_tx: float, noise_w: float) -> float:
    """SNR with optimal linear baseband combining across the analog branches.

    The branch outputs share antennas, so branch noise has covariance
    sigma^2 * W^H W; whitened maximum-ratio combining gives

        SNR = (P / sigma^2) * g^H (W^H W)^{-1} g,   g = W^H H w_bs.
    """
    H = np.asarray(H)
    w_bs = np.asarray(w_bs)
    _check_dims(H, w_bs)
    if noise_w <= 0:
        raise ValueError(f"noise power must be positive, got {noise_w}")
    W = codebook.vectors[list(selection.indices)]  # (branches, n_ms)
    g = W.conj() @ (H @ w_bs)
    A = W.conj() @ W.T
    if np.linalg.cond(A) > 1e12:
        raise np.linalg.LinAlgError("branch combiner Gram matrix is ill-conditioned")
    x = np.linalg.solve(A, g)
    return float((np.vdot(g, x).real) * p_tx / noise_w)


def snr_dbf(H, w_bs, p_tx: float, noise_w: float) -> float:
    """SNR of the unconstrained matched-filter combiner: P * ||H w_bs||^2 / sigma^2."""
    H = np.asarray(H)
    w_bs = np.asarray(w_bs)
    _check_dims(H, w_bs)
    if noise_w <= 0:
        raise ValueError(f"noise power must be positive, got {noise_w}")
    y = H @ w_bs
    return float(np.vdot(y, y).real * p_tx / noise_w)
