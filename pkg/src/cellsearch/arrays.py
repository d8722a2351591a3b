"""Uniform linear array primitives: steering vectors, quantized-phase
codebooks, beam geometry, and array gain.

All arrays are half-wavelength ULAs. Angles are radians measured from
broadside; physical steering angles live in [-pi/2, pi/2]. Degrees appear
only at I/O boundaries (CLI, config files).
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SteeringVector",
    "Codebook",
    "steering_vector",
    "build_codebook",
    "beamwidth_3db",
    "phase_to_angle",
    "array_gain",
]


@dataclass(frozen=True)
class SteeringVector:
    """Unit-norm spatial signature of a half-wavelength ULA.

    Element m equals exp(j*m*pi*sin(angle)) / sqrt(n_antennas).
    """

    elements: np.ndarray
    n_antennas: int
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "elements", np.asarray(self.elements, dtype=complex))


@dataclass(frozen=True)
class Codebook:
    """Quantized-phase beamforming codebook for an N-element ULA.

    Holds the 2N constant-modulus combining vectors generated by progressive
    phases theta_i = 2*pi*i / 2**n_bits, i = 0..2N-1, in increasing phase
    order. Requires N to be a power of two so n_bits = log2(2N) is integral.
    """

    vectors: np.ndarray           # (2N, N) complex, one combiner per row
    quantized_phases: np.ndarray  # (2N,) phases in [0, 2*pi)
    n_antennas: int
    n_bits: int

    @property
    def cardinality(self) -> int:
        return self.vectors.shape[0]

    @property
    def beam_angles(self) -> np.ndarray:
        """Physical steering angle of each combiner, radians."""
        return np.array([phase_to_angle(t) for t in self.quantized_phases])

    def __post_init__(self):
        self.vectors.setflags(write=False)
        self.quantized_phases.setflags(write=False)


def steering_vector(n_antennas: int, angle: float) -> SteeringVector:
    """Spatial signature of an n-element half-wavelength ULA toward `angle`.

    Parameters
    ----------
    n_antennas : int
        Number of elements, >= 1.
    angle : float
        Direction in radians from broadside.

    Returns
    -------
    SteeringVector
        Unit-norm vector with element m = exp(j*m*pi*sin(angle)) / sqrt(N).
    """
    if n_antennas < 1:
        raise ValueError(f"n_antennas must be >= 1, got {n_antennas}")
    if not np.isfinite(angle):
        raise ValueError(f"angle must be finite, got {angle}")
    m = np.arange(n_antennas)
    elements = np.exp(1j * np.pi * np.sin(angle) * m) / np.sqrt(n_antennas)
    return SteeringVector(elements=elements, n_antennas=n_antennas, angle=float(angle))


def _steering_elements(n_antennas: int, angles: np.ndarray) -> np.ndarray:
    """Steering vectors for many angles at once, shape (len(angles), N)."""
    m = np.arange(n_antennas)
    return np.exp(1j * np.pi * np.outer(np.sin(angles), m)) / np.sqrt(n_antennas)


def build_codebook(n_antennas: int) -> Codebook:
    """Build the 2N-vector progressive-phase codebook for an N-element ULA.

    N must be a power of two; the quantization depth is then
    n_bits = log2(2N) and the phase set is {2*pi*i / 2**n_bits}.
    Vector i has element m = exp(j*m*theta_i) / sqrt(N).
    """
    if n_antennas < 1 or (n_antennas & (n_antennas - 1)) != 0:
        raise ValueError(
            f"n_antennas must be a positive power of two, got {n_antennas}"
        )
    cardinality = 2 * n_antennas
    n_bits = int(round(np.log2(cardinality)))
    i = np.arange(cardinality)
    phases = 2.0 * np.pi * i / cardinality
    m = np.arange(n_antennas)
    vectors = np.exp(1j * np.outer(phases, m)) / np.sqrt(n_antennas)
    return Codebook(
        vectors=vectors,
        quantized_phases=phases,
        n_antennas=n_antennas,
        n_bits=n_bits,
    )


def beamwidth_3db(n_antennas: int) -> float:
    """Half-power beamwidth of an N-element half-wavelength ULA, radians.

    Uses the closed form 2*asin(0.891 / N).
    """
    if n_antennas < 1:
        raise ValueError(f"n_antennas must be >= 1, got {n_antennas}")
    return 2.0 * np.arcsin(0.891 / n_antennas)


def phase_to_angle(quantized_phase: float) -> float:
    """Physical steering angle (radians) of a progressive phase in [0, 2*pi).

    Phases above pi correspond to negative spatial frequencies; they are
    wrapped by subtracting 2*pi before applying asin(psi / pi), so the result
    is always defined and lies in [-pi/2, pi/2].
    """
    if not 0.0 <= quantized_phase < 2.0 * np.pi:
        raise ValueError(
            f"quantized_phase must lie in [0, 2*pi), got {quantized_phase}"
        )
    psi = quantized_phase if quantized_phase <= np.pi else quantized_phase - 2.0 * np.pi
    return float(np.arcsin(psi / np.pi))


def array_gain(combiner: np.ndarray, signature) -> float:
    """|w^H a|: magnitude response of combiner `w` to spatial signature `a`.

    Both inputs must have equal length; for unit-norm inputs the result lies
    in [0, 1] with equality to 1 iff the combiner matches the signature.
    """
    w = np.asarray(combiner)
    a = signature.elements if isinstance(signature, SteeringVector) else np.asarray(signature)
    if w.shape != a.shape:
        raise ValueError(f"length mismatch: combiner {w.shape} vs signature {a.shape}")
    return float(np.abs(np.vdot(w, a)))
