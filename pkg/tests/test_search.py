import numpy as np
import pytest

from cellsearch.arrays import build_codebook
from cellsearch.channel import ChannelParams, LinkBudget, build_realization, sample_channel
from cellsearch.schemes import (
    SchemeKind,
    select_adjacent,
    select_combiner_ci,
    snr_dbf,
    snr_hbf,
    snr_psn,
    snr_single,
)
from cellsearch.search import (
    SearchStrategy,
    draw_angular_error,
    sweep_ci,
    sweep_exhaustive,
    sweep_random,
)

BUDGET = LinkBudget(tx_power=1.0, noise_figure_db=5.0, bandwidth=500e6)


def ci(scheme="ABF", branches=1, err=0.0):
    return SearchStrategy(kind="ci", scheme=SchemeKind(scheme, branches),
                          max_angular_error=err)


def seeded_channel(n_ms, n_bs, seed, rho=1.0):
    params = ChannelParams(n_bs=n_bs, n_ms=n_ms)
    chan = sample_channel(params, 1.0, np.random.default_rng(seed))
    return build_realization(params, chan.true_aoa, chan.true_aod, chan.path_gains, rho)


class TestSearchStrategy:
    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            SearchStrategy(kind="walk")

    def test_exhaustive_requires_abf(self):
        with pytest.raises(ValueError):
            SearchStrategy(kind="exhaustive", scheme=SchemeKind("PSN", 3))

    def test_random_requires_abf(self):
        with pytest.raises(ValueError):
            SearchStrategy(kind="random", scheme=SchemeKind("DBF"))

    def test_labels(self):
        assert ci().label == "CI"
        assert SearchStrategy(kind="exhaustive").label == "ES"
        assert SearchStrategy(kind="random").label == "RS"


class TestDrawAngularError:
    def test_zero_bound_is_exactly_zero(self):
        rng = np.random.default_rng(1)
        assert draw_angular_error(0.0, rng) == 0.0

    def test_moment_and_support(self):
        rng = np.random.default_rng(2)
        bound = np.radians(10.0)
        draws = np.array([draw_angular_error(bound, rng) for _ in range(100_000)])
        assert np.all(np.abs(draws) <= bound)
        assert abs(np.degrees(draws.mean())) < 0.1

    def test_rejects_negative_bound(self):
        with pytest.raises(ValueError):
            draw_angular_error(-0.1, np.random.default_rng(0))


class TestSweepCI:
    def test_matched_single_bs_beam(self):
        # One BS antenna -> two identical BS beams; an MS aimed exactly at a
        # codebook beam angle recovers the matched-pair SNR.
        params = ChannelParams(n_bs=1, n_ms=4)
        cb_bs, cb_ms = build_codebook(1), build_codebook(4)
        aoa = cb_ms.beam_angles[2]
        chan = build_realization(params, aoa, 0.0, 1.0, rho=1.0)
        res = sweep_ci(chan, cb_bs, cb_ms, ci(), BUDGET, np.random.default_rng(0))
        expected = snr_single(chan.matrix, cb_bs.vectors[0], cb_ms.vectors[2],
                              BUDGET.tx_power, BUDGET.noise_power)
        assert res.best_snr == pytest.approx(expected, rel=1e-12)
        assert res.slots == 2

    def test_slot_count(self):
        chan = seeded_channel(16, 64, seed=4)
        res = sweep_ci(chan, build_codebook(64), build_codebook(16), ci(),
                       BUDGET, np.random.default_rng(0))
        assert res.slots == 128
        assert res.ms_combiner_count == 1

    def test_requires_ci_strategy(self):
        chan = seeded_channel(4, 4, seed=0)
        with pytest.raises(ValueError):
            sweep_ci(chan, build_codebook(4), build_codebook(4),
                     SearchStrategy(kind="random"), BUDGET, np.random.default_rng(0))

    def test_psn_nondecreasing_in_branches(self):
        cb_bs, cb_ms = build_codebook(8), build_codebook(8)
        for seed in range(20):
            chan = seeded_channel(8, 8, seed=seed)
            snrs = [
                sweep_ci(chan, cb_bs, cb_ms, ci("PSN", k), BUDGET,
                         np.random.default_rng(0)).best_snr
                for k in (1, 2, 3, 4, 8)
            ]
            assert np.all(np.diff(snrs) >= 0)

    def test_abf_matches_enumeration_oracle(self):
        cb_bs, cb_ms = build_codebook(8), build_codebook(8)
        for seed in range(20):
            chan = seeded_channel(8, 8, seed=seed)
            res = sweep_ci(chan, cb_bs, cb_ms, ci(), BUDGET, np.random.default_rng(0))
            main = select_combiner_ci(cb_ms, chan.true_aoa)
            oracle = max(
                snr_single(chan.matrix, w_bs, cb_ms.vectors[main],
                           BUDGET.tx_power, BUDGET.noise_power)
                for w_bs in cb_bs.vectors
            )
            assert res.best_snr == pytest.approx(oracle, rel=1e-12)

    def test_psn_matches_enumeration_oracle(self):
        cb_bs, cb_ms = build_codebook(8), build_codebook(8)
        for seed in range(20):
            chan = seeded_channel(8, 8, seed=seed)
            res = sweep_ci(chan, cb_bs, cb_ms, ci("PSN", 3), BUDGET,
                           np.random.default_rng(0))
            main = select_combiner_ci(cb_ms, chan.true_aoa)
            sel = select_adjacent(cb_ms, main, 3, ci_angle=chan.true_aoa)
            oracle = max(
                snr_psn(chan.matrix, w_bs, sel, cb_ms,
                        BUDGET.tx_power, BUDGET.noise_power)
                for w_bs in cb_bs.vectors
            )
            assert res.best_snr == pytest.approx(oracle, rel=1e-12)

    def test_dbf_matches_enumeration_oracle(self):
        cb_bs, cb_ms = build_codebook(8), build_codebook(8)
        for seed in range(20):
            chan = seeded_channel(8, 8, seed=seed)
            res = sweep_ci(chan, cb_bs, cb_ms, ci("DBF"), BUDGET,
                           np.random.default_rng(0))
            oracle = max(
                snr_dbf(chan.matrix, w_bs, BUDGET.tx_power, BUDGET.noise_power)
                for w_bs in cb_bs.vectors
            )
            assert res.best_snr == pytest.approx(oracle, rel=1e-12)

    def test_dbf_invariant_to_angular_error(self):
        cb_bs, cb_ms = build_codebook(8), build_codebook(8)
        chan = seeded_channel(8, 8, seed=17)
        r0 = sweep_ci(chan, cb_bs, cb_ms, ci("DBF", err=0.0), BUDGET,
                      np.random.default_rng(0))
        r1 = sweep_ci(chan, cb_bs, cb_ms, ci("DBF", err=np.radians(10)), BUDGET,
                      np.random.default_rng(99))
        assert r0.best_snr == r1.best_snr

    def test_hbf_sandwiched_between_psn_and_dbf(self):
        # The digitally refined HBF sweep dominates the PSN comparator and is
        # dominated by the unconstrained DBF combiner, trial by trial.
        cb_bs, cb_ms = build_codebook(16), build_codebook(16)
        for seed in range(30):
            chan = seeded_channel(16, 16, seed=seed)
            err = np.radians(7.0)
            args = (chan, cb_bs, cb_ms)
            psn = sweep_ci(*args, ci("PSN", 3, err), BUDGET, np.random.default_rng(5)).best_snr
            hbf = sweep_ci(*args, ci("HBF", 3, err), BUDGET, np.random.default_rng(5)).best_snr
            dbf = sweep_ci(*args, ci("DBF", err=err), BUDGET, np.random.default_rng(5)).best_snr
            assert psn <= hbf <= dbf * (1 + 1e-12)

    def test_hbf_near_whitened_optimum_without_error(self):
        # With exact context information and a single path, the refined HBF
        # sweep approaches the whitened-combining optimum per BS beam.
        cb_bs, cb_ms = build_codebook(16), build_codebook(16)
        for seed in range(20):
            chan = seeded_channel(16, 16, seed=seed)
            res = sweep_ci(chan, cb_bs, cb_ms, ci("HBF", 3), BUDGET,
                           np.random.default_rng(0))
            main = select_combiner_ci(cb_ms, chan.true_aoa)
            sel = select_adjacent(cb_ms, main, 3, ci_angle=chan.true_aoa)
            optimum = max(
                snr_hbf(chan.matrix, w_bs, sel, cb_ms,
                        BUDGET.tx_power, BUDGET.noise_power)
                for w_bs in cb_bs.vectors
            )
            assert res.best_snr <= optimum * (1 + 1e-9)
            assert res.best_snr >= optimum * 0.98


class TestSweepExhaustive:
    def test_degenerate_single_antennas(self):
        params = ChannelParams(n_bs=1, n_ms=1)
        chan = build_realization(params, 0.1, -0.3, 0.8 + 0.2j, rho=2.0)
        res = sweep_exhaustive(chan, build_codebook(1), build_codebook(1), BUDGET)
        assert res.slots == 4
        expected = snr_single(chan.matrix, [1.0], [1.0], BUDGET.tx_power, BUDGET.noise_power)
        assert res.best_snr == pytest.approx(expected, rel=1e-12)

    def test_dominates_ci_without_error(self):
        cb_bs, cb_ms = build_codebook(8), build_codebook(8)
        for seed in range(20):
            chan = seeded_channel(8, 8, seed=seed)
            es = sweep_exhaustive(chan, cb_bs, cb_ms, BUDGET)
            best_ci = sweep_ci(chan, cb_bs, cb_ms, ci(), BUDGET, np.random.default_rng(0))
            assert es.best_snr >= best_ci.best_snr * (1 - 1e-12)

    def test_full_table_oracle(self):
        cb_bs, cb_ms = build_codebook(4), build_codebook(4)
        for seed in range(100):
            chan = seeded_channel(4, 4, seed=seed)
            res = sweep_exhaustive(chan, cb_bs, cb_ms, BUDGET)
            oracle = max(
                snr_single(chan.matrix, w_bs, w_ms, BUDGET.tx_power, BUDGET.noise_power)
                for w_bs in cb_bs.vectors for w_ms in cb_ms.vectors
            )
            assert res.best_snr == pytest.approx(oracle, rel=1e-12)
            assert res.slots == 64

    def test_slot_ratio_vs_ci(self):
        chan = seeded_channel(16, 64, seed=1)
        cb_bs, cb_ms = build_codebook(64), build_codebook(16)
        es = sweep_exhaustive(chan, cb_bs, cb_ms, BUDGET)
        res_ci = sweep_ci(chan, cb_bs, cb_ms, ci(), BUDGET, np.random.default_rng(0))
        assert es.slots == res_ci.slots * cb_ms.cardinality


class TestSweepRandom:
    def test_slot_count(self):
        chan = seeded_channel(16, 64, seed=2)
        res = sweep_random(chan, build_codebook(64), build_codebook(16), BUDGET,
                           np.random.default_rng(0))
        assert res.slots == 128

    def test_single_antenna_matches_ci(self):
        # With one MS antenna both codebook entries are the same vector, so
        # random and CI-based selection coincide exactly.
        params = ChannelParams(n_bs=4, n_ms=1)
        cb_bs, cb_ms = build_codebook(4), build_codebook(1)
        for seed in range(10):
            chan = sample_channel(params, 1.0, np.random.default_rng(seed))
            rs = sweep_random(chan, cb_bs, cb_ms, BUDGET, np.random.default_rng(seed))
            res_ci = sweep_ci(chan, cb_bs, cb_ms, ci(), BUDGET, np.random.default_rng(0))
            assert rs.best_snr == res_ci.best_snr

    def test_matches_enumeration_for_drawn_index(self):
        cb_bs, cb_ms = build_codebook(8), build_codebook(8)
        chan = seeded_channel(8, 8, seed=13)
        rng = np.random.default_rng(55)
        index = int(np.random.default_rng(55).integers(cb_ms.cardinality))
        res = sweep_random(chan, cb_bs, cb_ms, BUDGET, rng)
        oracle = max(
            snr_single(chan.matrix, w_bs, cb_ms.vectors[index],
                       BUDGET.tx_power, BUDGET.noise_power)
            for w_bs in cb_bs.vectors
        )
        assert res.best_snr == pytest.approx(oracle, rel=1e-12)

    def test_paired_comparison_against_ci(self):
        # On matched channel draws, random pointing cannot beat CI pointing
        # in mean SNR.
        cb_bs, cb_ms = build_codebook(16), build_codebook(16)
        rng_chan = np.random.default_rng(7)
        rng_rs = np.random.default_rng(8)
        params = ChannelParams(n_bs=16, n_ms=16)
        ci_snrs, rs_snrs = [], []
        for _ in range(10_000):
            chan = sample_channel(params, 1.0, rng_chan)
            ci_snrs.append(sweep_ci(chan, cb_bs, cb_ms, ci(), BUDGET,
                                    np.random.default_rng(0)).best_snr)
            rs_snrs.append(sweep_random(chan, cb_bs, cb_ms, BUDGET, rng_rs).best_snr)
        assert np.mean(rs_snrs) < np.mean(ci_snrs)
