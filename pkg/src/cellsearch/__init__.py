"""Monte Carlo link-level simulator for mmWave initial cell search.

Quantifies access-error probability and receiver power consumption across
four receiver beamforming architectures (ABF, PSN, HBF, DBF) and three beam
search strategies (context-information based, exhaustive, random).
"""

__version__ = "0.1.0"

from .arrays import (
    Codebook,
    SteeringVector,
    array_gain,
    beamwidth_3db,
    build_codebook,
    phase_to_angle,
    steering_vector,
)
from .channel import (
    ChannelParams,
    ChannelRealization,
    LinkBudget,
    build_realization,
    noise_power,
    path_loss,
    rician_gain,
    sample_channel,
)
from .schemes import (
    CombinerSelection,
    SchemeKind,
    select_adjacent,
    select_combiner_ci,
    snr_dbf,
    snr_hbf,
    snr_psn,
    snr_single,
)
from .search import (
    SearchStrategy,
    SweepResult,
    draw_angular_error,
    sweep_ci,
    sweep_exhaustive,
    sweep_random,
)
from .montecarlo import (
    AccessErrorEstimate,
    CellKey,
    ExperimentConfig,
    TrialPoint,
    estimate_access_error,
    run_grid,
    run_trial,
    wilson_interval,
)
from .power import (
    PowerBreakdown,
    PowerComponents,
    adc_power,
    default_components_path,
    load_components,
    total_power,
)
from .config import ConfigError, RunManifest, config_digest, load_config

__all__ = [
    "__version__",
    "Codebook", "SteeringVector", "array_gain", "beamwidth_3db",
    "build_codebook", "phase_to_angle", "steering_vector",
    "ChannelParams", "ChannelRealization", "LinkBudget", "build_realization",
    "noise_power", "path_loss", "rician_gain", "sample_channel",
    "CombinerSelection", "SchemeKind", "select_adjacent", "select_combiner_ci",
    "snr_dbf", "snr_hbf", "snr_psn", "snr_single",
    "SearchStrategy", "SweepResult", "draw_angular_error", "sweep_ci",
    "sweep_exhaustive", "sweep_random",
    "AccessErrorEstimate", "CellKey", "ExperimentConfig", "TrialPoint",
    "estimate_access_error", "run_grid", "run_trial", "wilson_interval",
    "PowerBreakdown", "PowerComponents", "adc_power", "default_components_path",
    "load_components", "total_power",
    "ConfigError", "RunManifest", "config_digest", "load_config",
]
