"""Receiver architectures under erroneous pointing: ABF, PSN, HBF, DBF.

The phase-shifters-network receiver (PSN) forms three simultaneous analog
beams and forwards the strongest, which absorbs most of a 10 deg pointing
error at a fraction of the digital receiver's power budget. Hybrid
beamforming refines the pointing digitally inside the same three branches,
and fully digital combining is immune to pointing errors altogether.

    python demos/architectures.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cellsearch import (
    CellKey,
    ChannelParams,
    ExperimentConfig,
    LinkBudget,
    SchemeKind,
    SearchStrategy,
    run_grid,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

DISTANCES = (75.0, 100.0, 125.0, 150.0, 175.0)
SCHEMES = (
    ("ABF", SchemeKind("ABF")),
    ("PSN", SchemeKind("PSN", 3)),
    ("HBF", SchemeKind("HBF", 3)),
    ("DBF", SchemeKind("DBF")),
)


def main():
    config = ExperimentConfig(
        channel=ChannelParams(n_bs=64, n_ms=1),
        budget=LinkBudget(tx_power=10 ** ((-5.0 - 30.0) / 10.0)),
        strategies=tuple(SearchStrategy(kind="ci", scheme=s) for _, s in SCHEMES),
        distances_m=DISTANCES,
        phi_e_max_grid=(0.0, np.radians(10.0)),
        n_ms_grid=(16,),
        n_trials=2000,
        master_seed=303,
    )
    grid = run_grid(config, workers=4)

    fig, axes = plt.subplots(1, 2, figsize=(10, 4.2), sharey=True)
    for ax, e in zip(axes, (0.0, np.radians(10.0))):
        for tag, _ in SCHEMES:
            p = [grid[CellKey(d, e, 16, "CI", tag)].p_hat for d in DISTANCES]
            ax.plot(DISTANCES, p, marker="o", label=tag)
            print(f"err<={np.degrees(e):4.1f}d {tag}: "
                  f"p = {np.array2string(np.array(p), precision=3)}")
        ax.set_title(f"error bound {np.degrees(e):.0f} deg")
        ax.set_xlabel("Tx-Rx distance (m)")
        ax.grid(alpha=0.3)
    axes[0].set_ylabel("access error probability")
    axes[1].legend()
    fig.suptitle("Receiver architectures with CI-based pointing (N_MS=16, 3 branches)")
    fig.tight_layout()
    fig.savefig(OUT / "architectures.png", dpi=150)
    print(f"wrote {OUT / 'architectures.png'}")
    print("\nWith exact CI all multi-beam receivers coincide; at 10 deg error the"
          "\nsingle-beam ABF collapses first, PSN tracks HBF closely, and DBF"
          "\nreproduces its error-free curve exactly.")


if __name__ == "__main__":
    main()
