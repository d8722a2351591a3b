"""Component-level receiver power models for the four architectures.

Totals follow the architecture bill-of-materials:

    ABF: N_MS*(P_LNA + P_PS) + P_C + P_RF + 2*P_ADC
    DBF: N_MS*(P_LNA + P_RF + 2*P_ADC)
    HBF: N_MS*(P_LNA + P_SP + N_RF*P_PS) + N_RF*(P_C + P_RF + 2*P_ADC)
    PSN: N_MS*(P_LNA + P_SP + N_C*P_PS) + N_C*P_C + P_RF + P_Comp + P_Sw + 2*P_ADC

with P_RF = P_M + P_LO + P_LPF + P_BB_amp and P_ADC = c * B * 2**b. The
factor 2 on P_ADC covers the in-phase and quadrature converters. Component
wattages are configuration data, not constants: they ship in a value file
whose entries each carry a source annotation (see data/components.yaml).
"""

from dataclasses import dataclass
from pathlib import Path

import yaml

from .schemes import SchemeKind

__all__ = [
    "PowerComponents",
    "PowerBreakdown",
    "adc_power",
    "total_power",
    "load_components",
    "default_components_path",
]

_COMPONENT_KEYS = (
    "p_lna", "p_ps", "p_c", "p_m", "p_lo", "p_lpf", "p_bb_amp",
    "p_sp", "p_sw", "p_comp",
)


@dataclass(frozen=True)
class PowerComponents:
    """Per-component power draws (watts) plus the ADC energy model."""

    p_lna: float      # low noise amplifier
    p_ps: float       # phase shifter
    p_c: float        # combiner
    p_m: float        # mixer
    p_lo: float       # local oscillator
    p_lpf: float      # low pass filter
    p_bb_amp: float   # baseband amplifier
    p_sp: float       # splitter
    p_sw: float       # switch
    p_comp: float     # comparator
    adc_c: float = 12.5e-12       # J per conversion step
    adc_bandwidth: float = 500e6  # Hz

    def __post_init__(self):
        for name in (*_COMPONENT_KEYS, "adc_c", "adc_bandwidth"):
            if getattr(self, name) < 0:
                raise ValueError(f"component power {name} must be >= 0")

    @property
    def p_rf(self) -> float:
        """RF chain total: mixer + LO + low-pass filter + baseband amplifier."""
        return self.p_m + self.p_lo + self.p_lpf + self.p_bb_amp


@dataclass(frozen=True)
class PowerBreakdown:
    """Itemized receiver power for one architecture at one ADC resolution."""

    scheme: SchemeKind
    adc_bits: int
    per_component: dict
    total: float


def adc_power(c: float, bandwidth: float, bits: int) -> float:
    """ADC power c * B * 2**b (Nyquist sampling, b-bit conversion)."""
    if bits < 1:
        raise ValueError(f"ADC bits must be >= 1, got {bits}")
    if c <= 0 or bandwidth <= 0:
        raise ValueError("conversion energy and bandwidth must be positive")
    return c * bandwidth * 2 ** bits


def total_power(scheme: SchemeKind, comps: PowerComponents, n_ms: int, bits: int) -> PowerBreakdown:
    """Total receiver power for `scheme` with n_ms antennas and b-bit ADCs."""
    if n_ms < 1:
        raise ValueError(f"n_ms must be >= 1, got {n_ms}")
    p_adc = adc_power(comps.adc_c, comps.adc_bandwidth, bits)
    k = scheme.branches
    zero = {
        "lna": 0.0, "phase_shifter": 0.0, "combiner": 0.0, "rf_chain": 0.0,
        "adc": 0.0, "splitter": 0.0, "switch": 0.0, "comparator": 0.0,
    }
    terms = dict(zero)
    if scheme.tag == "ABF":
        terms["lna"] = n_ms * comps.p_lna
        terms["phase_shifter"] = n_ms * comps.p_ps
        terms["combiner"] = comps.p_c
        terms["rf_chain"] = comps.p_rf
        terms["adc"] = 2 * p_adc
    elif scheme.tag == "DBF":
        terms["lna"] = n_ms * comps.p_lna
        terms["rf_chain"] = n_ms * comps.p_rf
        terms["adc"] = n_ms * 2 * p_adc
    elif scheme.tag == "HBF":
        terms["lna"] = n_ms * comps.p_lna
        terms["splitter"] = n_ms * comps.p_sp
        terms["phase_shifter"] = n_ms * k * comps.p_ps
        terms["combiner"] = k * comps.p_c
        terms["rf_chain"] = k * comps.p_rf
        terms["adc"] = k * 2 * p_adc
    elif scheme.tag == "PSN":
        terms["lna"] = n_ms * comps.p_lna
        terms["splitter"] = n_ms * comps.p_sp
        terms["phase_shifter"] = n_ms * k * comps.p_ps
        terms["combiner"] = k * comps.p_c
        terms["rf_chain"] = comps.p_rf
        terms["comparator"] = comps.p_comp
        terms["switch"] = comps.p_sw
        terms["adc"] = 2 * p_adc
    else:  # unreachable: SchemeKind validates its tag
        raise ValueError(f"unknown scheme tag {scheme.tag!r}")
    return PowerBreakdown(
        scheme=scheme,
        adc_bits=bits,
        per_component=terms,
        total=sum(terms.values()),
    )


def default_components_path() -> Path:
    """Location of the component value file shipped with the package."""
    return Path(__file__).parent / "data" / "components.yaml"


def load_components(path=None) -> PowerComponents:
    """Read a component value file.

    The file maps each component key to {watts: <float>, source: <str>} --
    the source annotation is mandatory so provenance travels with the
    numbers. ADC entries are `adc_c` (joules per conversion step) and
    `adc_bandwidth` (Hz), with the same structure.
    """
    path = Path(path) if path is not None else default_components_path()
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    if not isinstance(raw, dict):
        raise ValueError(f"component file {path} must be a mapping")
    values = {}
    for key in _COMPONENT_KEYS:
        values[key] = _read_entry(raw, key, path, unit="watts")
    values["adc_c"] = _read_entry(raw, "adc_c", path, unit="joules_per_step")
    values["adc_bandwidth"] = _read_entry(raw, "adc_bandwidth", path, unit="hz")
    known = set(_COMPONENT_KEYS) | {"adc_c", "adc_bandwidth"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown component keys in {path}: {sorted(unknown)}")
    return PowerComponents(**values)


def _read_entry(raw: dict, key: str, path, unit: str) -> float:
    if key not in raw:
        raise ValueError(f"component file {path} is missing required key {key!r}")
    entry = raw[key]
    if not isinstance(entry, dict) or unit not in entry or "source" not in entry:
        raise ValueError(
            f"component {key!r} in {path} must be a mapping with {unit!r} and 'source'"
        )
    return float(entry[unit])
