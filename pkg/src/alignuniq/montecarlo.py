"""Seeded Monte Carlo estimation of score-change and uniqueness statistics.

Each trial draws a fresh uniform instance (x, y), solves it, flips one
uniform random bit of x, and records the score change together with the
local-uniqueness measurements.  Trial randomness comes from a
counter-based generator keyed by (seed, trial index), so a trial's
record is a pure function of those two integers: serial and parallel
runs produce identical results, and any trial can be replayed alone.

Within a trial the draw order is fixed and documented: x symbols, then
y symbols, then the flip position.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import (
    BinarySequence,
    ModelParams,
    best_score,
    build_score_matrix,
    extremal_alignments,
)
from .errors import DomainError, InvalidInputError, ResourceLimitError
from .flip import FLIP_CATEGORIES, FlipOutcome, delta_score, flip_at
from .stats import (
    BoundReport,
    EventMembership,
    StatementReport,
    event_membership,
    statement_checks,
    theorem_bound,
)

__all__ = [
    "ExperimentConfig",
    "TrialRecord",
    "Summary",
    "trial_generator",
    "run_trial",
    "run_trials",
    "run_experiment",
    "summarize",
    "exact_expectation",
    "sweep",
    "SUMMARY_CSV_HEADER",
    "TRIAL_CSV_HEADER",
    "summary_csv_row",
    "trial_csv_row",
]

_MASK64 = (1 << 64) - 1

# 97.5% standard normal quantile, for the two-sided 95% Wilson interval.
_Z95 = 1.959963984540054

EXACT_ENUMERATION_LIMIT = 1_000_000


@dataclass(frozen=True)
class ExperimentConfig:
    """Complete, reproducible description of one experiment."""

    n: int
    delta: float
    epsilon: float
    trials: int
    seed: int
    collect_events: bool = False
    collect_statements: bool = False

    def __post_init__(self) -> None:
        ModelParams(self.n, self.delta)
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError(
                f"epsilon must lie strictly between 0 and 1, got {self.epsilon}"
            )
        if self.trials < 1:
            raise InvalidInputError(f"trials must be at least 1, got {self.trials}")

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.n, self.delta)

    @property
    def m(self) -> int:
        return self.params.m


@dataclass(frozen=True)
class TrialRecord:
    """Everything measured on one sampled instance."""

    trial_index: int
    score: int
    nonunique_count: int
    nonunique_fraction: float
    flip: FlipOutcome
    events: EventMembership | None
    statements: StatementReport | None


@dataclass(frozen=True)
class Summary:
    """Aggregate estimates over all trials of one experiment.

    event_rates and statement_means are populated only when the config
    collected them; the serialized row carries the fixed column set
    regardless.
    """

    config: ExperimentConfig
    m: int
    mean_delta: float
    stderr_delta: float
    p_hat: float
    ci_lo: float
    ci_hi: float
    mean_u_fraction: float
    category_counts: dict[str, int]
    mean_delta_by_category: dict[str, float | None]
    event_rates: dict[str, float | None] | None
    statement_means: dict[str, float | None] | None
    bound: BoundReport

    def to_dict(self) -> dict:
        """The fixed serialization fields, in CSV column order."""
        out: dict = {
            "n": self.config.n,
            "delta": self.config.delta,
            "epsilon": self.config.epsilon,
            "trials": self.config.trials,
            "seed": self.config.seed,
            "mean_delta": self.mean_delta,
            "stderr_delta": self.stderr_delta,
            "p_hat": self.p_hat,
            "ci_lo": self.ci_lo,
            "ci_hi": self.ci_hi,
            "mean_u_fraction": self.mean_u_fraction,
        }
        for category in FLIP_CATEGORIES:
            out[f"mean_delta_{category}"] = self.mean_delta_by_category[category]
        out["bound_raw"] = self.bound.raw
        out["bound_vacuous"] = self.bound.vacuous
        return out


def trial_generator(seed: int, trial_index: int) -> np.random.Generator:
    """Dedicated random stream of one trial.

    Counter-based, keyed by the pair of integers, so streams for
    different trials are independent without any sequential seeding.
    """
    if trial_index < 0:
        raise InvalidInputError(f"trial index must be nonnegative, got {trial_index}")
    key = np.array([seed & _MASK64, trial_index & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def run_trial(config: ExperimentConfig, trial_index: int) -> TrialRecord:
    """Sample, solve, and measure one instance."""
    params = config.params
    rng = trial_generator(config.seed, trial_index)
    x = BinarySequence(
        tuple(int(b) for b in rng.integers(0, 2, size=params.m, dtype=np.uint8))
    )
    y = BinarySequence(
        tuple(int(b) for b in rng.integers(0, 2, size=params.n, dtype=np.uint8))
    )
    t = int(rng.integers(1, params.m + 1))
    pair = extremal_alignments(build_score_matrix(x, y), x, y)
    outcome = delta_score(x, y, t, pair=pair)
    events = (
        event_membership(x, y, pair, config.delta, config.epsilon)
        if config.collect_events
        else None
    )
    statements = statement_checks(x, y, pair) if config.collect_statements else None
    return TrialRecord(
        trial_index=trial_index,
        score=pair.score,
        nonunique_count=pair.nonunique_count,
        nonunique_fraction=pair.nonunique_count / params.m,
        flip=outcome,
        events=events,
        statements=statements,
    )


def _run_span(args: tuple[ExperimentConfig, int, int]) -> list[TrialRecord]:
    config, start, stop = args
    return [run_trial(config, i) for i in range(start, stop)]


def run_trials(config: ExperimentConfig, workers: int = 1) -> list[TrialRecord]:
    """All trial records, in trial-index order regardless of worker count."""
    if workers <= 1:
        return [run_trial(config, i) for i in range(config.trials)]
    span = max(1, math.ceil(config.trials / (workers * 4)))
    spans = [
        (config, start, min(start + span, config.trials))
        for start in range(0, config.trials, span)
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_span, spans))
    return [record for part in parts for record in part]


def _wilson_interval(hits: int, total: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion.

    Stays sensible when the proportion sits at 0 or 1, which the
    uniqueness-threshold indicator regularly does; the endpoints are
    pinned to exactly 0 and 1 there so the interval always contains the
    point estimate despite rounding.
    """
    z2 = _Z95 * _Z95
    p = hits / total
    center = (p + z2 / (2.0 * total)) / (1.0 + z2 / total)
    half = (
        _Z95
        * math.sqrt(p * (1.0 - p) / total + z2 / (4.0 * total * total))
        / (1.0 + z2 / total)
    )
    lo = 0.0 if hits == 0 else max(0.0, center - half)
    hi = 1.0 if hits == total else min(1.0, center + half)
    return lo, hi


def summarize(config: ExperimentConfig, records: list[TrialRecord]) -> Summary:
    """Reduce trial records to a Summary.

    All accumulators are integers, so the reduction is exact and its
    result cannot depend on the order records were produced in.
    """
    if len(records) != config.trials:
        raise InvalidInputError(
            f"expected {config.trials} records, got {len(records)}"
        )
    m = config.m
    total = config.trials
    delta_sum = 0
    delta_sq_sum = 0
    nonunique_sum = 0
    threshold_hits = 0
    category_counts = {category: 0 for category in FLIP_CATEGORIES}
    category_delta_sums = {category: 0 for category in FLIP_CATEGORIES}
    for record in records:
        d = record.flip.delta
        delta_sum += d
        delta_sq_sum += d * d
        nonunique_sum += record.nonunique_count
        if record.nonunique_count >= m * config.epsilon:
            threshold_hits += 1
        category_counts[record.flip.category] += 1
        category_delta_sums[record.flip.category] += d

    mean_delta = delta_sum / total
    if total > 1:
        variance = (delta_sq_sum - delta_sum * delta_sum / total) / (total - 1)
        stderr_delta = math.sqrt(max(0.0, variance) / total)
    else:
        stderr_delta = 0.0
    ci_lo, ci_hi = _wilson_interval(threshold_hits, total)
    mean_delta_by_category: dict[str, float | None] = {
        category: (category_delta_sums[category] / count if count else None)
        for category, count in category_counts.items()
    }

    event_rates = _event_rates(records) if config.collect_events else None
    statement_means = (
        _statement_means(records) if config.collect_statements else None
    )
    return Summary(
        config=config,
        m=m,
        mean_delta=mean_delta,
        stderr_delta=stderr_delta,
        p_hat=threshold_hits / total,
        ci_lo=ci_lo,
        ci_hi=ci_hi,
        mean_u_fraction=nonunique_sum / (total * m),
        category_counts=category_counts,
        mean_delta_by_category=mean_delta_by_category,
        event_rates=event_rates,
        statement_means=statement_means,
        bound=theorem_bound(config.n, config.delta, config.epsilon),
    )


def _event_rates(records: list[TrialRecord]) -> dict[str, float | None]:
    keys = ("pair_typical", "agree_typical", "disagree_typical", "uniform_typical")
    hits = dict.fromkeys(keys, 0)
    applicable = dict.fromkeys(keys, 0)
    for record in records:
        membership = record.events
        if membership is None:
            continue
        for key in keys:
            value = getattr(membership, key)
            if value is None:
                continue
            applicable[key] += 1
            hits[key] += int(value)
    return {
        key: (hits[key] / applicable[key] if applicable[key] else None)
        for key in keys
    }


def _statement_means(records: list[TrialRecord]) -> dict[str, float | None]:
    keys = ("stmt_i", "stmt_ii", "stmt_iii", "stmt_iv")
    sums = dict.fromkeys(keys, 0.0)
    counts = dict.fromkeys(keys, 0)
    cell_sums = [0.0, 0.0, 0.0, 0.0]
    cell_count = 0
    for record in records:
        report = record.statements
        if report is None:
            continue
        for key in keys:
            value = getattr(report, key)
            if value is None:
                continue
            sums[key] += value
            counts[key] += 1
        cell_count += 1
        for k in range(4):
            cell_sums[k] += report.stmt_v[k]
    out: dict[str, float | None] = {
        key: (sums[key] / counts[key] if counts[key] else None) for key in keys
    }
    for k, label in enumerate(("00", "01", "10", "11")):
        out[f"stmt_v_{label}"] = cell_sums[k] / cell_count if cell_count else None
    return out


def run_experiment(config: ExperimentConfig, workers: int = 1) -> Summary:
    """Run all trials and aggregate them."""
    return summarize(config, run_trials(config, workers))


def sweep(configs: list[ExperimentConfig], workers: int = 1) -> list[Summary]:
    """Run several experiments in sequence, one Summary per config."""
    return [run_experiment(config, workers) for config in configs]


def exact_expectation(m: int, n: int, limit: int = EXACT_ENUMERATION_LIMIT) -> int:
    """Sum of the score change over every (x, y, t) triple, exactly.

    Flipping is an involution pairing each (x, t) with (x-flipped, t),
    and the two changes cancel, so the sum must be zero.  This function
    does not use that argument: it enumerates everything and adds up
    integers, providing an exact end-to-end check of the solver.
    """
    if m < 1 or n <= m:
        raise InvalidInputError(f"need 1 <= m < n, got m={m}, n={n}")
    work = (1 << m) * (1 << n) * m
    if work > limit:
        raise ResourceLimitError(
            f"2^{m} * 2^{n} * {m} = {work} flips exceeds the enumeration limit {limit}"
        )
    xs = [BinarySequence(bits) for bits in itertools.product((0, 1), repeat=m)]
    total = 0
    for ybits in itertools.product((0, 1), repeat=n):
        y = BinarySequence(ybits)
        scores = {x.bits: best_score(x, y) for x in xs}
        for x in xs:
            base = scores[x.bits]
            for t in range(1, m + 1):
                total += scores[flip_at(x, t).bits] - base
    return total


SUMMARY_CSV_HEADER: tuple[str, ...] = (
    "n",
    "delta",
    "epsilon",
    "trials",
    "seed",
    "mean_delta",
    "stderr_delta",
    "p_hat",
    "ci_lo",
    "ci_hi",
    "mean_u_fraction",
    *(f"mean_delta_{category}" for category in FLIP_CATEGORIES),
    "bound_raw",
    "bound_vacuous",
)

TRIAL_CSV_HEADER: tuple[str, ...] = (
    "trial_index",
    "score",
    "nonunique_count",
    "nonunique_fraction",
    "t",
    "delta",
    "category",
    "pair_typical",
    "agree_typical",
    "disagree_typical",
    "uniform_typical",
    "regime",
    "stmt_i",
    "stmt_ii",
    "stmt_iii",
    "stmt_iv",
    "stmt_v_00",
    "stmt_v_01",
    "stmt_v_10",
    "stmt_v_11",
)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def summary_csv_row(summary: Summary) -> tuple[str, ...]:
    """Serialize a Summary in SUMMARY_CSV_HEADER order."""
    fields = summary.to_dict()
    return tuple(_cell(fields[name]) for name in SUMMARY_CSV_HEADER)


def trial_csv_row(record: TrialRecord) -> tuple[str, ...]:
    """Serialize a TrialRecord in TRIAL_CSV_HEADER order.

    Event and statement cells are blank unless the experiment collected
    them, so the column set never varies.
    """
    cells = [
        str(record.trial_index),
        str(record.score),
        str(record.nonunique_count),
        str(record.nonunique_fraction),
        *record.flip.csv_fragment(),
    ]
    if record.events is None:
        cells.extend([""] * 5)
    else:
        e = record.events
        cells.extend(
            [
                _cell(e.pair_typical),
                _cell(e.agree_typical),
                _cell(e.disagree_typical),
                _cell(e.uniform_typical),
                e.regime,
            ]
        )
    if record.statements is None:
        cells.extend([""] * 8)
    else:
        s = record.statements
        cells.extend(
            [
                _cell(s.stmt_i),
                _cell(s.stmt_ii),
                _cell(s.stmt_iii),
                _cell(s.stmt_iv),
                *(str(v) for v in s.stmt_v),
            ]
        )
    return tuple(cells)
