"""Protocols: recovery, verification probes, query accounting, bench tables."""

import json

import numpy as np
import pytest

from hiddenstring.annealer import AnnealSchedule
from hiddenstring.model import BitVector
from hiddenstring.oracles import BvOracle, SimonOracle, random_hidden_string
from hiddenstring.protocol import (
    BV_PROBES,
    MIN_VERIFY_PROBES,
    bench_calls,
    check_collision,
    solve_bv,
    solve_simon,
    verify_simon,
    xor_recover,
)


class TestXorRecover:
    def test_recovers_hidden_string(self):
        a = BitVector.from_integer(0b0110, 4)
        w = BitVector.from_integer(0b1010, 4)
        assert xor_recover(w, w ^ a) == a

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            xor_recover(BitVector.from_integer(1, 3), BitVector.from_integer(1, 4))

    def test_rejects_identical_inputs(self):
        w = BitVector.from_integer(5, 4)
        with pytest.raises(ValueError):
            xor_recover(w, w)


class TestCheckCollision:
    def test_true_exactly_on_cosets(self):
        a = BitVector.from_integer(0b101, 3)
        oracle = SimonOracle(a, seed=2)
        for wv in range(8):
            w = BitVector.from_integer(wv, 3)
            assert check_collision(oracle, w, w ^ a)
            other = BitVector.from_integer(wv ^ 0b001, 3)  # not in {w, w^a}
            assert not check_collision(oracle, w, other)

    def test_uses_two_queries(self):
        oracle = SimonOracle(BitVector.from_integer(3, 2), seed=0)
        before = oracle.queries
        check_collision(oracle, BitVector.from_integer(0, 2), BitVector.from_integer(3, 2))
        assert oracle.queries - before == 2


class TestVerifySimon:
    def test_accepts_only_the_hidden_string(self):
        a = BitVector.from_integer(0b1010, 4)
        oracle = SimonOracle(a, seed=4)
        for cv in range(16):
            candidate = BitVector.from_integer(cv, 4)
            assert verify_simon(oracle, candidate, seed=1) == (candidate == a)

    def test_probe_floor_enforced(self):
        oracle = SimonOracle(BitVector.from_integer(3, 2), seed=0)
        with pytest.raises(ValueError):
            verify_simon(oracle, BitVector.from_integer(3, 2), probes=MIN_VERIFY_PROBES - 1)

    def test_query_cost_of_a_passing_check(self):
        a = BitVector.from_integer(0b0111, 4)
        oracle = SimonOracle(a, seed=9)
        before = oracle.queries
        assert verify_simon(oracle, a, probes=8, seed=0)
        assert oracle.queries - before == 2 * 8

    def test_rejects_length_mismatch(self):
        oracle = SimonOracle(BitVector.from_integer(3, 2), seed=0)
        with pytest.raises(ValueError):
            verify_simon(oracle, BitVector.from_integer(1, 3))


class TestSolveBv:
    def test_exhaustive_recovers_every_string(self):
        n = 4
        for value in range(1 << n):
            a = BitVector.from_integer(value, n)
            report = solve_bv(BvOracle(a), solver="exhaustive", seed=1)
            assert report.success
            assert report.recovered_a == value
            assert report.hidden_a == value
            assert report.oracle_queries == n + BV_PROBES
            assert report.aqc_calls == 1

    def test_anneal_recovers_wide_string(self):
        rng = np.random.default_rng(31)
        a = random_hidden_string(64, rng)
        sched = AnnealSchedule(sweeps=40, t_initial=1.0, t_final=0.01, restarts=2)
        report = solve_bv(BvOracle(a), schedule=sched, seed=7)
        assert report.success
        assert report.recovered_a == a.to_integer()
        assert report.oracle_queries == 64 + BV_PROBES

    def test_failed_run_still_counts_flat_queries(self):
        # a schedule too hot to settle: the candidate is wrong, the probe
        # check catches it, and the query count is unchanged
        a = BitVector.from_integer(0xBEEF, 16)
        hot = AnnealSchedule(sweeps=2, t_initial=50.0, t_final=50.0, restarts=1)
        report = solve_bv(BvOracle(a), schedule=hot, seed=0)
        assert not report.success
        assert report.recovered_a != a.to_integer()
        assert report.diagnostics["probe_mismatches"] > 0
        assert report.oracle_queries == 16 + BV_PROBES

    def test_blind_report_hides_the_string(self):
        a = BitVector.from_integer(9, 4)
        report = solve_bv(BvOracle(a), solver="exhaustive", seed=0, blind=True)
        assert report.hidden_a is None
        assert report.recovered_a == 9

    def test_rejects_unknown_solver(self):
        with pytest.raises(ValueError):
            solve_bv(BvOracle(BitVector.from_integer(1, 2)), solver="brute")


class TestSolveSimon:
    def test_coupled_mode_end_to_end(self):
        rng = np.random.default_rng(41)
        for seed in range(4):
            a = random_hidden_string(6, rng, nonzero=True)
            oracle = SimonOracle(a, seed=seed)
            report = solve_simon(oracle, seed=seed)
            assert report.success
            assert report.recovered_a == a.to_integer()
            assert 1 <= report.aqc_calls <= report.budget == 64 * 6
            assert report.trace[-1]["accepted"]

    def test_literal_mode_with_valid_fixed_j(self):
        rng = np.random.default_rng(43)
        bits = list(random_hidden_string(5, rng))
        bits[0] = 1  # make j=1 a coordinate where the strings must differ
        a = BitVector(bits)
        oracle = SimonOracle(a, seed=3)
        report = solve_simon(oracle, mode="literal", j_policy="fixed", j=1, seed=5)
        assert report.success
        assert report.recovered_a == a.to_integer()
        assert report.mode == "literal"
        assert report.signal is None

    def test_fixed_j_on_unset_bit_exhausts_budget(self):
        a = BitVector.from_integer(0b1110, 4)  # bit 1 of the string is 0
        oracle = SimonOracle(a, seed=1)
        report = solve_simon(
            oracle, mode="literal", j_policy="fixed", j=1, budget=5, seed=2
        )
        assert not report.success
        assert report.recovered_a is None
        assert report.aqc_calls == 5
        assert not any(rec["accepted"] for rec in report.trace)

    def test_cycle_policy_reaches_the_set_bit(self):
        a = BitVector.from_integer(0b1000, 4)  # only j=4 admits a collision
        oracle = SimonOracle(a, seed=6)
        report = solve_simon(oracle, mode="literal", seed=3)
        assert report.success
        assert report.trace[-1]["j"] == 4
        assert report.trace[-1]["accepted"]

    def test_trace_and_counters_are_consistent(self):
        a = BitVector.from_integer(0b011, 3)
        oracle = SimonOracle(a, seed=2)
        report = solve_simon(oracle, seed=0)
        assert len(report.trace) == report.diagnostics["calls"]
        for rec in report.trace:
            assert 1 <= rec["j"] <= 3
            assert 0 <= rec["w"] < 8 and 0 <= rec["y"] < 8
        assert report.oracle_queries == oracle.queries

    def test_blind_report_hides_the_string(self):
        a = BitVector.from_integer(0b110, 3)
        report = solve_simon(SimonOracle(a, seed=0), seed=1, blind=True)
        assert report.hidden_a is None
        assert report.success

    def test_validates_arguments(self):
        oracle = SimonOracle(BitVector.from_integer(3, 2), seed=0)
        with pytest.raises(ValueError):
            solve_simon(oracle, mode="spectral")
        with pytest.raises(ValueError):
            solve_simon(oracle, j_policy="fixed")  # no j given
        with pytest.raises(ValueError):
            solve_simon(oracle, j=1)  # j without fixed policy
        with pytest.raises(ValueError):
            solve_simon(oracle, budget=0)


class TestExperimentReport:
    def test_dict_form_is_json_ready_and_versioned(self):
        report = solve_bv(BvOracle(BitVector.from_integer(5, 4)), solver="exhaustive")
        data = report.to_dict()
        assert data["schema_version"] == 1
        assert data["problem"] == "bv"
        round_tripped = json.loads(json.dumps(data, sort_keys=True))
        assert round_tripped == data


class TestBenchCalls:
    def test_bv_rows_have_flat_query_counts(self):
        rows = bench_calls("bv", [4, 6], trials=3, seed=1, solver="exhaustive")
        assert [row["n"] for row in rows] == [4, 6]
        for row in rows:
            assert row["trials"] == 3
            assert row["success_count"] == 3
            assert row["correct_count"] == 3
            assert row["mean_queries"] == row["n"] + BV_PROBES
            assert row["stdev_queries"] == 0.0
            assert row["median_calls"] == 1.0

    def test_single_trial_has_zero_spread(self):
        rows = bench_calls("simon", [3], trials=1, seed=2, mode="literal")
        assert rows[0]["stdev_calls"] == 0.0
        assert rows[0]["stdev_queries"] == 0.0

    def test_workers_do_not_change_results(self):
        serial = bench_calls("simon", [3, 4], trials=3, seed=5, mode="literal")
        threaded = bench_calls("simon", [3, 4], trials=3, seed=5, mode="literal", workers=4)
        assert serial == threaded

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            bench_calls("parity", [4], trials=1)
        with pytest.raises(ValueError):
            bench_calls("bv", [4], trials=0)
