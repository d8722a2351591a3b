"""Geometric mmWave channel model with Rician path gains, log-distance
path loss, and the receiver link budget.

The channel between an N_BS-antenna transmitter and N_MS-antenna receiver is
a sum of L rank-one path contributions

    H = sqrt(N_BS * N_MS / (rho * L)) * sum_l eta_l * a_MS(phi_l) a_BS(theta_l)^H

with rho the linear path loss and eta_l unit-mean-power Rician gains.
Experiments in this package use the single-path line-of-sight case L = 1.
"""

from dataclasses import dataclass, field

import numpy as np

from .arrays import steering_vector

__all__ = [
    "SPEED_OF_LIGHT",
    "ChannelParams",
    "ChannelRealization",
    "LinkBudget",
    "path_loss",
    "rician_gain",
    "sample_channel",
    "build_realization",
    "noise_power",
]

SPEED_OF_LIGHT = 299792458.0  # m/s


@dataclass(frozen=True)
class ChannelParams:
    """Static parameters of the geometric channel model."""

    n_bs: int
    n_ms: int
    n_paths: int = 1
    rician_k: float = 10.0
    carrier_freq: float = 28e9
    pathloss_exponent: float = 2.2
    reference_distance: float = 1.0

    def __post_init__(self):
        if self.n_bs < 1 or self.n_ms < 1 or self.n_paths < 1:
            raise ValueError("antenna and path counts must be positive")
        if self.rician_k < 0:
            raise ValueError(f"rician_k must be >= 0, got {self.rician_k}")
        if self.carrier_freq <= 0 or self.pathloss_exponent <= 0 or self.reference_distance <= 0:
            raise ValueError("carrier_freq, pathloss_exponent and reference_distance must be positive")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of the channel: matrix plus its generating geometry."""

    matrix: np.ndarray        # (n_ms, n_bs) complex
    true_aoa: float           # radians, path 0
    true_aod: float           # radians, path 0
    path_gains: np.ndarray    # (n_paths,) complex
    pathloss_linear: float

    def __post_init__(self):
        self.matrix.setflags(write=False)


@dataclass(frozen=True)
class LinkBudget:
    """Transmit power and receiver noise characterization.

    `noise_power` is derived: sigma^2 = 10**((thermal + 10*log10(B) + NF - 30)/10)
    watts, with thermal density in dBm/Hz.
    """

    tx_power: float                    # watts
    noise_figure_db: float = 5.0
    thermal_density_dbm: float = -174.0
    bandwidth: float = 500e6           # Hz

    def __post_init__(self):
        if self.tx_power <= 0:
            raise ValueError(f"tx_power must be positive, got {self.tx_power}")
        if self.bandwidth <= 0:
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")

    @property
    def noise_power(self) -> float:
        return noise_power(self)


def path_loss(distance: float, params: ChannelParams) -> float:
    """Linear path loss rho at `distance` meters.

    Log-distance model anchored at the free-space loss of the reference
    distance d0:

        rho_dB = 20*log10(4*pi*d0 / lambda) + 10*alpha*log10(d / d0)
    """
    d0 = params.reference_distance
    if distance < d0:
        raise ValueError(f"distance {distance} m is below reference distance {d0} m")
    rho_db = (
        20.0 * np.log10(4.0 * np.pi * d0 / params.wavelength)
        + 10.0 * params.pathloss_exponent * np.log10(distance / d0)
    )
    return float(10.0 ** (rho_db / 10.0))


def rician_gain(k: float, rng: np.random.Generator) -> complex:
    """Complex path gain with Rician factor k and unit mean power.

    eta = sqrt(k/(k+1)) * exp(j*chi) + sqrt(1/(k+1)) * g with chi uniform on
    [0, 2*pi) and g circularly-symmetric complex Gaussian of unit variance,
    so E[|eta|^2] = 1 for every k >= 0.
    """
    if k < 0:
        raise ValueError(f"rician k must be >= 0, got {k}")
    chi = rng.uniform(0.0, 2.0 * np.pi)
    g = (rng.standard_normal() + 1j * rng.standard_normal()) / np.sqrt(2.0)
    return complex(np.sqrt(k / (k + 1.0)) * np.exp(1j * chi) + np.sqrt(1.0 / (k + 1.0)) * g)


def build_realization(
    params: ChannelParams,
    aoas,
    aods,
    gains,
    rho: float,
) -> ChannelRealization:
    """Assemble the channel matrix from explicit geometry.

    Separated from the sampling step so tests and demos can pin angles and
    gains exactly.
    """
    aoas = np.atleast_1d(np.asarray(aoas, dtype=float))
    aods = np.atleast_1d(np.asarray(aods, dtype=float))
    gains = np.atleast_1d(np.asarray(gains, dtype=complex))
    n_paths = len(gains)
    if not (len(aoas) == len(aods) == n_paths):
        raise ValueError("aoas, aods and gains must have equal length")
    scale = np.sqrt(params.n_bs * params.n_ms / (rho * n_paths))
    matrix = np.zeros((params.n_ms, params.n_bs), dtype=complex)
    for l in range(n_paths):
        a_ms = steering_vector(params.n_ms, aoas[l]).elements
        a_bs = steering_vector(params.n_bs, aods[l]).elements
        matrix += gains[l] * np.outer(a_ms, a_bs.conj())
    matrix *= scale
    return ChannelRealization(
        matrix=matrix,
        true_aoa=float(aoas[0]),
        true_aod=float(aods[0]),
        path_gains=gains,
        pathloss_linear=float(rho),
    )


def sample_channel(
    params: ChannelParams,
    distance: float,
    rng: np.random.Generator,
) -> ChannelRealization:
    """Draw one channel realization at `distance` meters.

    AoAs and AoDs are independent and uniform over [-pi/2, pi/2) (front
    half-plane of the ULA); per-path gains come from `rician_gain`. Draw
    order is fixed (all AoAs, all AoDs, then gains) so equal seeds give
    bit-identical realizations.
    """
    L = params.n_paths
    aoas = rng.uniform(-np.pi / 2, np.pi / 2, L)
    aods = rng.uniform(-np.pi / 2, np.pi / 2, L)
    gains = np.array([rician_gain(params.rician_k, rng) for _ in range(L)])
    rho = path_loss(distance, params)
    return build_realization(params, aoas, aods, gains, rho)


def noise_power(budget: LinkBudget) -> float:
    """Receiver noise power sigma^2 in watts."""
    sigma2_dbm = (
        budget.thermal_density_dbm
        + 10.0 * np.log10(budget.bandwidth)
        + budget.noise_figure_db
    )
    return float(10.0 ** ((sigma2_dbm - 30.0) / 10.0))
