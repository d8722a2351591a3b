"""Receiver power consumption against ADC resolution for all architectures.

ADC power doubles per bit (c * B * 2^b), so architectures are separated by
how many converters they carry: two for ABF and PSN, two per RF chain for
HBF, two per antenna for DBF. The crossing points explain when each design
makes sense.

    python demos/power_consumption.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cellsearch import SchemeKind, load_components, total_power

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

N_MS = 16
BITS = range(1, 11)
SCHEMES = (
    SchemeKind("ABF"),
    SchemeKind("PSN", 3),
    SchemeKind("HBF", 3),
    SchemeKind("DBF"),
)


def main():
    comps = load_components()
    print(f"component file: RF chain = {comps.p_rf * 1e3:.1f} mW, "
          f"ADC at 5 bits = {comps.adc_c * comps.adc_bandwidth * 32 * 1e3:.0f} mW")

    fig, ax = plt.subplots(figsize=(7, 4.5))
    print(f"\n{'b':>3s} " + " ".join(f"{s.tag:>8s}" for s in SCHEMES))
    totals = {}
    for scheme in SCHEMES:
        totals[scheme.tag] = [total_power(scheme, comps, N_MS, b).total for b in BITS]
        ax.semilogy(BITS, totals[scheme.tag], marker="o", label=scheme.tag)
    for i, b in enumerate(BITS):
        print(f"{b:3d} " + " ".join(f"{totals[s.tag][i]:8.3f}" for s in SCHEMES))

    ax.set_xlabel("ADC bits")
    ax.set_ylabel("total receiver power (W)")
    ax.set_title(f"Receiver power vs ADC resolution (N_MS={N_MS}, 3 branches)")
    ax.grid(alpha=0.3, which="both")
    ax.legend()
    fig.tight_layout()
    fig.savefig(OUT / "power_consumption.png", dpi=150)
    print(f"\nwrote {OUT / 'power_consumption.png'}")
    print("ABF stays cheapest throughout; PSN undercuts HBF at every resolution"
          "\nwith a growing margin; DBF tops the chart from 2 bits upward.")


if __name__ == "__main__":
    main()
