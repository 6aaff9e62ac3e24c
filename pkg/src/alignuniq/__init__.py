"""Gapped alignment of random binary sequences.

Aligns a length-m 0/1 sequence against a longer length-n one with all
gaps on the short side, finds the two optimal alignments that bound all
others pointwise, measures where the optimum is locally nonunique, and
runs the seeded bit-flip experiments that connect the score change to
the amount of nonuniqueness, together with the closed-form probability
bound for it.
"""

from .core import (
    Alignment,
    BinarySequence,
    ExtremalPair,
    ModelParams,
    ScoreMatrix,
    alignment_score,
    best_score,
    build_score_matrix,
    extremal_alignments,
    nonuniqueness_count,
    optimal_score,
)
from .errors import DomainError, InvalidInputError, ResourceLimitError
from .flip import FLIP_CATEGORIES, FlipOutcome, delta_score, flip_at, random_flip
from .montecarlo import (
    SUMMARY_CSV_HEADER,
    TRIAL_CSV_HEADER,
    ExperimentConfig,
    Summary,
    TrialRecord,
    exact_expectation,
    run_experiment,
    run_trial,
    run_trials,
    summarize,
    summary_csv_row,
    sweep,
    trial_csv_row,
    trial_generator,
)
from .oracle import (
    EntropyBoundReport,
    brute_extremal,
    brute_nonunique_mask,
    brute_optimal_set,
    count_alignments,
    entropy_bound_check,
    enumerate_alignments,
)
from .stats import (
    PAIR_SUPPORT,
    R_SUPPORT,
    BoundReport,
    EmpiricalDist,
    EpsilonThresholds,
    EventMembership,
    RSequence,
    StatementReport,
    entropy,
    epsilon_thresholds,
    event_membership,
    pair_empirical,
    pair_reference_law,
    r_empirical,
    r_sequence,
    reference_law,
    statement_checks,
    theorem_bound,
)

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "BinarySequence",
    "BoundReport",
    "DomainError",
    "EmpiricalDist",
    "EntropyBoundReport",
    "EpsilonThresholds",
    "EventMembership",
    "ExperimentConfig",
    "ExtremalPair",
    "FLIP_CATEGORIES",
    "FlipOutcome",
    "InvalidInputError",
    "ModelParams",
    "PAIR_SUPPORT",
    "RSequence",
    "R_SUPPORT",
    "ResourceLimitError",
    "SUMMARY_CSV_HEADER",
    "ScoreMatrix",
    "StatementReport",
    "Summary",
    "TRIAL_CSV_HEADER",
    "TrialRecord",
    "alignment_score",
    "best_score",
    "brute_extremal",
    "brute_nonunique_mask",
    "brute_optimal_set",
    "build_score_matrix",
    "count_alignments",
    "delta_score",
    "entropy",
    "entropy_bound_check",
    "enumerate_alignments",
    "epsilon_thresholds",
    "event_membership",
    "exact_expectation",
    "extremal_alignments",
    "flip_at",
    "nonuniqueness_count",
    "optimal_score",
    "pair_empirical",
    "pair_reference_law",
    "r_empirical",
    "r_sequence",
    "random_flip",
    "reference_law",
    "run_experiment",
    "run_trial",
    "run_trials",
    "statement_checks",
    "summarize",
    "summary_csv_row",
    "sweep",
    "theorem_bound",
    "trial_csv_row",
    "trial_generator",
]
