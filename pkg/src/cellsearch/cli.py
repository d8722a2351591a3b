"""Command-line front end: `cellsearch sweep | power | codebook`.

All data outputs are CSV (UTF-8, comma separated, LF line endings, '.'
decimal separator); plotting stays in external tools. Angles are degrees and
powers are watts at this boundary. Exit codes: 0 success, 2 configuration
error, 3 runtime numeric failure.
"""

import argparse
import csv
import hashlib
import os
import sys
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .arrays import build_codebook, steering_vector
from .config import ConfigError, RunManifest, config_digest, load_config
from .montecarlo import run_grid, _cell_keys
from .power import load_components, total_power
from .schemes import SCHEME_TAGS, SchemeKind

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

SWEEP_COLUMNS = [
    "scheme", "strategy", "distance_m", "phi_e_max_deg", "n_ms", "n_bs",
    "p_acc_err", "ci95_low", "ci95_high", "mean_slots", "n_trials",
]

POWER_COLUMNS = [
    "scheme", "b", "total_w", "lna_w", "phase_shifter_w", "combiner_w",
    "rf_chain_w", "adc_w", "splitter_w", "switch_w", "comparator_w",
]


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _write_csv(path: Path, header, rows):
    """Write rows atomically: partial files never survive a failure."""
    tmp = path.with_suffix(path.suffix + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def cmd_sweep(args) -> int:
    config_path = Path(args.config)
    out_dir = Path(args.out)
    try:
        config = load_config(config_path)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.seed is not None:
        config = replace(config, master_seed=args.seed)
    if args.trials is not None:
        if args.trials < 1:
            print("error: --trials must be >= 1", file=sys.stderr)
            return EXIT_CONFIG
        config = replace(config, n_trials=args.trials)

    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(
        config_digest=config_digest(config_path),
        master_seed=config.master_seed,
        tool_version=__version__,
        started_at=_utcnow(),
    )
    try:
        results = run_grid(config, workers=args.workers)
    except (np.linalg.LinAlgError, FloatingPointError, ZeroDivisionError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    rows = []
    for key, _strategy in _cell_keys(config):
        est = results[key]
        rows.append([
            key.scheme,
            key.strategy,
            round(key.distance_m, 10),
            round(float(np.degrees(key.phi_e_max)), 10),
            key.n_ms,
            config.channel.n_bs,
            est.p_hat,
            est.ci95_low,
            est.ci95_high,
            est.mean_slots,
            est.n_trials,
        ])
    results_path = out_dir / "results.csv"
    _write_csv(results_path, SWEEP_COLUMNS, rows)

    manifest.finished_at = _utcnow()
    manifest.outputs = [
        {"path": results_path.name, "sha256": _sha256(results_path)},
    ]
    manifest.write(out_dir / "manifest.json")
    print(f"wrote {results_path} ({len(rows)} rows) and manifest.json")
    return EXIT_OK


def cmd_power(args) -> int:
    try:
        comps = load_components(args.components)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.bits_min < 1 or args.bits_max < args.bits_min:
        print("error: ADC bit range must satisfy 1 <= min <= max", file=sys.stderr)
        return EXIT_CONFIG
    schemes = []
    for tag in args.schemes.split(",") if args.schemes else []:
        tag = tag.strip().upper()
        if not tag:
            continue
        if tag not in SCHEME_TAGS:
            print(f"error: unknown scheme '{tag}'", file=sys.stderr)
            return EXIT_CONFIG
        branches = 1 if tag in ("ABF", "DBF") else args.branches
        schemes.append(SchemeKind(tag, branches))

    rows = []
    for scheme in schemes:
        for bits in range(args.bits_min, args.bits_max + 1):
            bd = total_power(scheme, comps, n_ms=args.n_ms, bits=bits)
            c = bd.per_component
            rows.append([
                scheme.tag, bits, bd.total,
                c["lna"], c["phase_shifter"], c["combiner"], c["rf_chain"],
                c["adc"], c["splitter"], c["switch"], c["comparator"],
            ])
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    _write_csv(out_path, POWER_COLUMNS, rows)
    print(f"wrote {out_path} ({len(rows)} rows)")
    return EXIT_OK


def cmd_codebook(args) -> int:
    try:
        codebook = build_codebook(args.n_antennas)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    degrees = np.arange(-90, 91)
    signatures = np.stack([
        steering_vector(args.n_antennas, np.radians(float(d))).elements for d in degrees
    ])
    header = ["index", "quantized_phase_rad", "steer_angle_deg"] + [
        f"gain_db_{d}" for d in degrees
    ]
    angles = codebook.beam_angles
    rows = []
    for i in range(codebook.cardinality):
        gains = np.abs(signatures.conj() @ codebook.vectors[i])
        with np.errstate(divide="ignore"):
            gains_db = 20.0 * np.log10(gains)
        rows.append([
            i,
            codebook.quantized_phases[i],
            round(float(np.degrees(angles[i])), 10),
            *[float(g) for g in gains_db],
        ])
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    _write_csv(out_path, header, rows)
    print(f"wrote {out_path} ({len(rows)} rows)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cellsearch",
        description="Monte Carlo link-level simulator for mmWave initial cell search",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a configured access-error sweep")
    p_sweep.add_argument("--config", required=True, help="experiment config file (YAML)")
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.add_argument("--seed", type=int, default=None, help="override the master seed")
    p_sweep.add_argument("--trials", type=int, default=None, help="override trials per cell")
    p_sweep.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                         help="parallel workers over grid cells (default: CPU count)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_power = sub.add_parser("power", help="tabulate receiver power vs ADC bits")
    p_power.add_argument("--components", default=None,
                         help="component value file (default: shipped values)")
    p_power.add_argument("--bits-min", type=int, default=1, help="lowest ADC bit count")
    p_power.add_argument("--bits-max", type=int, default=10, help="highest ADC bit count")
    p_power.add_argument("--schemes", default="ABF,PSN,HBF,DBF",
                         help="comma-separated scheme list (empty for header-only)")
    p_power.add_argument("--n-ms", type=int, default=16, help="MS antenna count")
    p_power.add_argument("--branches", type=int, default=3,
                         help="branch count for PSN/HBF (N_C = N_RF)")
    p_power.add_argument("--out", default="power.csv", help="output CSV path")
    p_power.set_defaults(func=cmd_power)

    p_cb = sub.add_parser("codebook", help="dump a codebook and its beam patterns")
    p_cb.add_argument("--n-antennas", type=int, required=True, help="ULA size (power of two)")
    p_cb.add_argument("--out", default="codebook.csv", help="output CSV path")
    p_cb.set_defaults(func=cmd_codebook)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
