"""Codebook geometry walkthrough: quantized phases, beam angles, patterns.

Builds progressive-phase codebooks, prints where each beam points and how
wide it is, and plots the full beam fan for a 16-element array. Run from the
repository root:

    python demos/beam_patterns.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cellsearch import array_gain, beamwidth_3db, build_codebook, steering_vector

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def main():
    print("3 dB beamwidth vs array size")
    print(f"{'N':>4s} {'beamwidth':>10s} {'codebook':>9s}")
    for n in (1, 2, 4, 8, 16, 32, 64):
        print(f"{n:4d} {np.degrees(beamwidth_3db(n)):9.2f}d {2 * n:9d}")

    n = 16
    cb = build_codebook(n)
    print(f"\n{n}-element codebook: {cb.cardinality} beams, "
          f"{cb.n_bits}-bit phase quantization")
    angles_deg = np.degrees(cb.beam_angles)
    print("beam angles (deg):", np.array2string(np.sort(angles_deg), precision=1))

    # Beam fan: response of every codebook combiner over the steering range.
    scan = np.radians(np.linspace(-90, 90, 1441))
    signatures = np.stack([steering_vector(n, a).elements for a in scan])
    fig, ax = plt.subplots(figsize=(9, 4))
    for i in range(cb.cardinality):
        gains = np.abs(signatures.conj() @ cb.vectors[i])
        ax.plot(np.degrees(scan), 20 * np.log10(np.maximum(gains, 1e-6)), lw=0.7)
    ax.set_xlabel("steering angle (deg)")
    ax.set_ylabel("array gain (dB)")
    ax.set_title(f"Beam fan of the {cb.cardinality}-beam codebook, N = {n}")
    ax.set_ylim(-30, 1)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(OUT / "beam_fan.png", dpi=150)
    print(f"\nwrote {OUT / 'beam_fan.png'}")

    # Adjacent-beam crossover depth: the design keeps it within 1 dB.
    worst = 0.0
    for i in range(cb.cardinality):
        mid = cb.quantized_phases[i] + np.pi / (2 * n)
        psi = mid if mid <= np.pi else mid - 2 * np.pi
        a = steering_vector(n, np.arcsin(psi / np.pi))
        crossover_db = 20 * np.log10(array_gain(cb.vectors[i], a))
        worst = min(worst, crossover_db)
    print(f"worst adjacent-beam crossover: {worst:.3f} dB (design target: within 1 dB)")


if __name__ == "__main__":
    main()
