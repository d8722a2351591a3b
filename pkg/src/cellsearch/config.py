"""Experiment configuration files and run manifests.

Configs are YAML with a strict schema: unknown keys anywhere are errors, so
typos fail loudly instead of silently running defaults. Angles are degrees
and transmit power is dBm in the file; both convert to radians/watts at load
time and never reappear internally.
"""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .channel import ChannelParams, LinkBudget
from .montecarlo import ExperimentConfig
from .schemes import SchemeKind
from .search import SearchStrategy

__all__ = ["ConfigError", "load_config", "RunManifest", "config_digest"]


class ConfigError(ValueError):
    """Invalid or unparseable experiment configuration."""


_SCHEMA = {
    "channel": {"n_bs", "n_paths", "rician_k", "carrier_freq_hz",
                "pathloss_exponent", "reference_distance_m"},
    "budget": {"tx_power_dbm", "noise_figure_db", "thermal_density_dbm_per_hz",
               "bandwidth_hz"},
    "grid": {"distances_m", "phi_e_max_deg", "n_ms"},
    "sim": {"threshold_db", "n_trials", "master_seed"},
    "strategies": None,  # list, validated separately
}

_STRATEGY_KEYS = {"kind", "scheme", "branches"}


def _require(section: dict, key: str, where: str):
    if key not in section:
        raise ConfigError(f"missing required key '{where}.{key}'")
    return section[key]


def _check_keys(section: dict, allowed: set, where: str):
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key '{where}.{sorted(unknown)[0]}'")


def load_config(path) -> ExperimentConfig:
    """Parse and validate an experiment config file."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a mapping")
    _check_keys(raw, set(_SCHEMA), "config")
    for name in _SCHEMA:
        if name not in raw:
            raise ConfigError(f"missing required section '{name}'")

    chan_raw = raw["channel"]
    _check_keys(chan_raw, _SCHEMA["channel"], "channel")
    try:
        channel = ChannelParams(
            n_bs=int(_require(chan_raw, "n_bs", "channel")),
            n_ms=1,  # placeholder; the grid supplies n_ms cell by cell
            n_paths=int(chan_raw.get("n_paths", 1)),
            rician_k=float(chan_raw.get("rician_k", 10.0)),
            carrier_freq=float(chan_raw.get("carrier_freq_hz", 28e9)),
            pathloss_exponent=float(chan_raw.get("pathloss_exponent", 2.2)),
            reference_distance=float(chan_raw.get("reference_distance_m", 1.0)),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid channel section: {exc}") from exc

    budget_raw = raw["budget"]
    _check_keys(budget_raw, _SCHEMA["budget"], "budget")
    try:
        tx_dbm = float(_require(budget_raw, "tx_power_dbm", "budget"))
        budget = LinkBudget(
            tx_power=10.0 ** ((tx_dbm - 30.0) / 10.0),
            noise_figure_db=float(budget_raw.get("noise_figure_db", 5.0)),
            thermal_density_dbm=float(budget_raw.get("thermal_density_dbm_per_hz", -174.0)),
            bandwidth=float(budget_raw.get("bandwidth_hz", 500e6)),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid budget section: {exc}") from exc

    grid_raw = raw["grid"]
    _check_keys(grid_raw, _SCHEMA["grid"], "grid")
    distances = tuple(float(d) for d in _require(grid_raw, "distances_m", "grid"))
    phi_deg = tuple(float(e) for e in _require(grid_raw, "phi_e_max_deg", "grid"))
    n_ms_grid = tuple(int(n) for n in _require(grid_raw, "n_ms", "grid"))
    if not distances or not phi_deg or not n_ms_grid:
        raise ConfigError("grid lists must be nonempty")

    sim_raw = raw["sim"]
    _check_keys(sim_raw, _SCHEMA["sim"], "sim")

    strategies_raw = raw["strategies"]
    if not isinstance(strategies_raw, list) or not strategies_raw:
        raise ConfigError("'strategies' must be a nonempty list")
    strategies = tuple(_parse_strategy(s, i) for i, s in enumerate(strategies_raw))

    try:
        return ExperimentConfig(
            channel=channel,
            budget=budget,
            strategies=strategies,
            distances_m=distances,
            phi_e_max_grid=tuple(np.deg2rad(e) for e in phi_deg),
            n_ms_grid=n_ms_grid,
            threshold_db=float(sim_raw.get("threshold_db", -4.0)),
            n_trials=int(sim_raw.get("n_trials", 100_000)),
            master_seed=int(sim_raw.get("master_seed", 0)),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid config: {exc}") from exc


def _parse_strategy(entry, index: int) -> SearchStrategy:
    where = f"strategies[{index}]"
    if not isinstance(entry, dict):
        raise ConfigError(f"{where} must be a mapping")
    _check_keys(entry, _STRATEGY_KEYS, where)
    kind = str(_require(entry, "kind", where)).lower()
    scheme_tag = str(entry.get("scheme", "abf")).upper()
    branches = int(entry.get("branches", 1))
    try:
        scheme = SchemeKind(tag=scheme_tag, branches=branches)
        return SearchStrategy(kind=kind, scheme=scheme)
    except ValueError as exc:
        raise ConfigError(f"invalid {where}: {exc}") from exc


def config_digest(path) -> str:
    """SHA-256 hex digest of the config file bytes."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunManifest:
    """Provenance record written next to every sweep's outputs."""

    config_digest: str
    master_seed: int
    tool_version: str
    started_at: str
    finished_at: str = ""
    outputs: list = field(default_factory=list)

    def write(self, path):
        payload = {
            "config_digest": self.config_digest,
            "master_seed": self.master_seed,
            "tool_version": self.tool_version,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "outputs": self.outputs,
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")

    @classmethod
    def read(cls, path) -> "RunManifest":
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        return cls(**payload)
