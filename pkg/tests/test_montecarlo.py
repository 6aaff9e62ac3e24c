"""Seeded trials, aggregation, and serialization."""

import csv
import io
import math
import random
import statistics

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alignuniq import (
    FLIP_CATEGORIES,
    SUMMARY_CSV_HEADER,
    TRIAL_CSV_HEADER,
    BinarySequence,
    DomainError,
    ExperimentConfig,
    FlipOutcome,
    InvalidInputError,
    ResourceLimitError,
    Summary,
    TrialRecord,
    best_score,
    delta_score,
    exact_expectation,
    run_experiment,
    run_trial,
    run_trials,
    summarize,
    summary_csv_row,
    sweep,
    theorem_bound,
    trial_csv_row,
    trial_generator,
)
from alignuniq.montecarlo import _wilson_interval

SMALL = ExperimentConfig(n=30, delta=0.2, epsilon=0.3, trials=40, seed=123)


class TestExperimentConfig:
    def test_aligned_length_is_derived(self):
        assert ExperimentConfig(n=20, delta=0.25, epsilon=0.2, trials=1, seed=0).m == 15
        assert SMALL.m == 24

    def test_validation(self):
        with pytest.raises(DomainError):
            ExperimentConfig(n=20, delta=0.25, epsilon=0.0, trials=1, seed=0)
        with pytest.raises(DomainError):
            ExperimentConfig(n=20, delta=1.25, epsilon=0.2, trials=1, seed=0)
        with pytest.raises(InvalidInputError):
            ExperimentConfig(n=20, delta=0.25, epsilon=0.2, trials=0, seed=0)
        with pytest.raises(InvalidInputError):
            ExperimentConfig(n=1, delta=0.25, epsilon=0.2, trials=1, seed=0)


class TestTrialGenerator:
    def test_streams_are_reproducible(self):
        a = trial_generator(42, 7).integers(0, 2, size=32)
        b = trial_generator(42, 7).integers(0, 2, size=32)
        assert np.array_equal(a, b)

    def test_streams_differ_across_trials_and_seeds(self):
        base = trial_generator(42, 7).integers(0, 2, size=64)
        assert not np.array_equal(base, trial_generator(42, 8).integers(0, 2, size=64))
        assert not np.array_equal(base, trial_generator(43, 7).integers(0, 2, size=64))

    def test_huge_seeds_are_reduced_not_rejected(self):
        a = trial_generator(2**70 + 5, 0).integers(0, 100, size=8)
        b = trial_generator((2**70 + 5) & ((1 << 64) - 1), 0).integers(0, 100, size=8)
        assert np.array_equal(a, b)

    def test_negative_trial_index(self):
        with pytest.raises(InvalidInputError):
            trial_generator(1, -1)


class TestRunTrial:
    def test_deterministic(self):
        assert run_trial(SMALL, 3) == run_trial(SMALL, 3)

    def test_draw_order_is_x_then_y_then_position(self):
        record = run_trial(SMALL, 5)
        rng = trial_generator(SMALL.seed, 5)
        x = BinarySequence(
            tuple(int(b) for b in rng.integers(0, 2, size=SMALL.m, dtype=np.uint8))
        )
        y = BinarySequence(
            tuple(int(b) for b in rng.integers(0, 2, size=SMALL.n, dtype=np.uint8))
        )
        t = int(rng.integers(1, SMALL.m + 1))
        assert record.score == best_score(x, y)
        assert record.flip == delta_score(x, y, t)

    def test_record_consistency(self):
        record = run_trial(SMALL, 0)
        assert record.trial_index == 0
        assert 1 <= record.flip.t <= SMALL.m
        assert record.nonunique_fraction == record.nonunique_count / SMALL.m
        assert record.events is None
        assert record.statements is None

    def test_optional_collection(self):
        config = ExperimentConfig(
            n=30,
            delta=0.2,
            epsilon=0.3,
            trials=1,
            seed=123,
            collect_events=True,
            collect_statements=True,
        )
        record = run_trial(config, 0)
        assert record.events is not None
        assert record.statements is not None
        # The extra measurements never perturb the core ones.
        bare = run_trial(SMALL, 0)
        assert (record.score, record.nonunique_count, record.flip) == (
            bare.score,
            bare.nonunique_count,
            bare.flip,
        )


class TestRunTrials:
    def test_serial_and_parallel_agree(self):
        serial = run_trials(SMALL, workers=1)
        parallel = run_trials(SMALL, workers=3)
        assert serial == parallel

    def test_records_arrive_in_trial_order(self):
        records = run_trials(SMALL, workers=3)
        assert [r.trial_index for r in records] == list(range(SMALL.trials))


class TestWilsonInterval:
    def test_frozen_values(self):
        assert _wilson_interval(5, 10) == pytest.approx(
            (0.236593090512564, 0.7634069094874361), rel=1e-12
        )
        assert _wilson_interval(95, 100) == pytest.approx(
            (0.8882495307680808, 0.9784563208456319), rel=1e-12
        )

    def test_boundary_snapping(self):
        lo, hi = _wilson_interval(0, 17)
        assert lo == 0.0 and hi < 0.2
        lo, hi = _wilson_interval(17, 17)
        assert hi == 1.0 and lo > 0.8

    @given(st.integers(min_value=1, max_value=10**6), st.data())
    def test_contains_the_point_estimate(self, total, data):
        hits = data.draw(st.integers(min_value=0, max_value=total))
        lo, hi = _wilson_interval(hits, total)
        assert 0.0 <= lo <= hits / total <= hi <= 1.0


def synthetic_record(i, delta, category, nonunique, m):
    return TrialRecord(
        trial_index=i,
        score=10,
        nonunique_count=nonunique,
        nonunique_fraction=nonunique / m,
        flip=FlipOutcome(t=1 + i % m, delta=delta, category=category),
        events=None,
        statements=None,
    )


class TestSummarize:
    # n=10, delta=0.1 gives m=9; epsilon=0.5 puts the threshold at 4.5.
    CONFIG = ExperimentConfig(n=10, delta=0.1, epsilon=0.5, trials=5, seed=0)

    def records(self):
        rows = [
            (1, "DISAG_YDIFF", 5),
            (1, "DISAG_MISMATCH", 9),
            (-1, "AGREE_MATCH", 0),
            (0, "AGREE_MATCH", 2),
            (1, "AGREE_MISMATCH", 4),
        ]
        return [
            synthetic_record(i, d, c, u, self.CONFIG.m)
            for i, (d, c, u) in enumerate(rows)
        ]

    def test_exact_aggregates(self):
        summary = summarize(self.CONFIG, self.records())
        assert summary.m == 9
        assert summary.mean_delta == 0.4
        assert summary.stderr_delta == pytest.approx(
            math.sqrt(statistics.variance([1, 1, -1, 0, 1]) / 5)
        )
        assert summary.p_hat == 0.4
        assert (summary.ci_lo, summary.ci_hi) == _wilson_interval(2, 5)
        assert summary.mean_u_fraction == pytest.approx(20 / 45)
        assert summary.category_counts == {
            "DISAG_YDIFF": 1,
            "DISAG_MISMATCH": 1,
            "DISAG_MATCH": 0,
            "AGREE_MISMATCH": 1,
            "AGREE_MATCH": 2,
        }
        assert summary.mean_delta_by_category == {
            "DISAG_YDIFF": 1.0,
            "DISAG_MISMATCH": 1.0,
            "DISAG_MATCH": None,
            "AGREE_MISMATCH": 1.0,
            "AGREE_MATCH": -0.5,
        }
        assert summary.bound == theorem_bound(10, 0.1, 0.5)

    def test_order_invariant(self):
        records = self.records()
        shuffled = records[:]
        random.Random(4).shuffle(shuffled)
        assert summarize(self.CONFIG, shuffled) == summarize(self.CONFIG, records)

    def test_single_trial_has_zero_stderr(self):
        config = ExperimentConfig(n=10, delta=0.1, epsilon=0.5, trials=1, seed=0)
        summary = summarize(config, self.records()[:1])
        assert summary.stderr_delta == 0.0

    def test_record_count_mismatch(self):
        with pytest.raises(InvalidInputError):
            summarize(self.CONFIG, self.records()[:3])

    def test_threshold_is_inclusive_at_exact_equality(self):
        # m = 16 and epsilon = 0.25 put the threshold at exactly 4, and
        # a count of exactly 4 must register as a hit.
        config = ExperimentConfig(n=20, delta=0.2, epsilon=0.25, trials=2, seed=0)
        records = [
            synthetic_record(0, 0, "AGREE_MATCH", 4, 16),
            synthetic_record(1, 0, "AGREE_MATCH", 3, 16),
        ]
        assert summarize(config, records).p_hat == 0.5


class TestAggregatedCollections:
    CONFIG = ExperimentConfig(
        n=30,
        delta=0.2,
        epsilon=0.3,
        trials=40,
        seed=123,
        collect_events=True,
        collect_statements=True,
    )

    def test_event_rates_match_a_manual_reduction(self):
        records = run_trials(self.CONFIG)
        summary = summarize(self.CONFIG, records)
        for key in ("pair_typical", "agree_typical", "disagree_typical", "uniform_typical"):
            values = [
                getattr(r.events, key)
                for r in records
                if getattr(r.events, key) is not None
            ]
            if values:
                assert summary.event_rates[key] == sum(values) / len(values)
            else:
                assert summary.event_rates[key] is None

    def test_statement_means_match_a_manual_reduction(self):
        records = run_trials(self.CONFIG)
        summary = summarize(self.CONFIG, records)
        for key in ("stmt_i", "stmt_ii", "stmt_iii", "stmt_iv"):
            values = [
                getattr(r.statements, key)
                for r in records
                if getattr(r.statements, key) is not None
            ]
            assert summary.statement_means[key] == pytest.approx(
                sum(values) / len(values)
            )
        for k, label in enumerate(("00", "01", "10", "11")):
            cells = [r.statements.stmt_v[k] for r in records]
            assert summary.statement_means[f"stmt_v_{label}"] == pytest.approx(
                sum(cells) / len(cells)
            )

    def test_rates_are_none_when_not_collected(self):
        summary = run_experiment(SMALL)
        assert summary.event_rates is None
        assert summary.statement_means is None


class TestSerialization:
    def test_summary_field_names_and_order(self):
        summary = run_experiment(SMALL)
        assert tuple(summary.to_dict()) == SUMMARY_CSV_HEADER
        assert len(SUMMARY_CSV_HEADER) == 18

    def test_summary_csv_row(self):
        summary = run_experiment(SMALL)
        row = summary_csv_row(summary)
        assert len(row) == len(SUMMARY_CSV_HEADER)
        fields = dict(zip(SUMMARY_CSV_HEADER, row))
        assert fields["n"] == "30"
        assert fields["trials"] == "40"
        assert fields["bound_vacuous"] in ("true", "false")
        assert float(fields["mean_delta"]) == summary.mean_delta

    def test_trial_csv_row_fixed_width(self):
        bare = trial_csv_row(run_trial(SMALL, 0))
        assert len(bare) == len(TRIAL_CSV_HEADER) == 20
        # Event and statement cells stay blank without collection.
        assert bare[7:] == ("",) * 13
        full_config = ExperimentConfig(
            n=30,
            delta=0.2,
            epsilon=0.3,
            trials=1,
            seed=123,
            collect_events=True,
            collect_statements=True,
        )
        full = trial_csv_row(run_trial(full_config, 0))
        assert len(full) == 20
        assert full[7] in ("true", "false")
        assert full[11] in ("small-disagreement", "mid", "large-disagreement")

    def test_rows_are_csv_safe(self):
        summary = run_experiment(SMALL)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(SUMMARY_CSV_HEADER)
        writer.writerow(summary_csv_row(summary))
        parsed = list(csv.reader(io.StringIO(buffer.getvalue())))
        assert parsed[0] == list(SUMMARY_CSV_HEADER)
        assert len(parsed[1]) == 18


class TestSweepAndExact:
    def test_sweep_matches_individual_runs(self):
        configs = [
            ExperimentConfig(n=20, delta=0.2, epsilon=0.3, trials=10, seed=5),
            ExperimentConfig(n=20, delta=0.4, epsilon=0.3, trials=10, seed=5),
        ]
        summaries = sweep(configs)
        assert summaries == [run_experiment(c) for c in configs]

    @pytest.mark.parametrize("m,n", [(2, 3), (3, 5), (4, 6)])
    def test_flip_sum_is_exactly_zero(self, m, n):
        assert exact_expectation(m, n) == 0

    def test_enumeration_limit(self):
        with pytest.raises(ResourceLimitError):
            exact_expectation(10, 12)

    def test_dimension_validation(self):
        with pytest.raises(InvalidInputError):
            exact_expectation(0, 3)
        with pytest.raises(InvalidInputError):
            exact_expectation(3, 3)
