"""Empirical distributions, deviation events, and the probability bound.

The quantities here all live on one aligned instance: the empirical
distribution of matched symbol pairs, the three-valued match-change
sequence read off the two extremal alignments, sup-norm deviations of
both from their reference laws, and the closed-form bound on the
probability that a random instance escapes the typical behaviour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Alignment, BinarySequence, ExtremalPair
from .errors import DomainError, InvalidInputError

__all__ = [
    "EmpiricalDist",
    "RSequence",
    "EpsilonThresholds",
    "EventMembership",
    "StatementReport",
    "BoundReport",
    "PAIR_SUPPORT",
    "R_SUPPORT",
    "entropy",
    "epsilon_thresholds",
    "pair_empirical",
    "pair_reference_law",
    "r_sequence",
    "r_empirical",
    "reference_law",
    "event_membership",
    "statement_checks",
    "theorem_bound",
]

PAIR_SUPPORT: tuple[tuple[int, int], ...] = ((0, 0), (0, 1), (1, 0), (1, 1))
R_SUPPORT: tuple[int, ...] = (-1, 0, 1)

_R_MODES = ("agree", "disagree", "uniform")


@dataclass(frozen=True)
class EmpiricalDist:
    """Finitely supported distribution stored as exact cell counts.

    Keeping integer counts instead of floats makes partition identities
    exact; probabilities are derived on demand.
    """

    support: tuple
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.support) != len(self.counts):
            raise InvalidInputError(
                f"{len(self.support)} support points but {len(self.counts)} counts"
            )
        if len(set(self.support)) != len(self.support):
            raise InvalidInputError("support points must be distinct")
        if any(c < 0 for c in self.counts):
            raise InvalidInputError("counts must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def empty(self) -> bool:
        """True when the distribution was built from zero samples."""
        return self.total == 0

    @property
    def probs(self) -> tuple[float, ...]:
        """Cell probabilities; all zero (not an error) on an empty distribution.

        Empty subsamples occur legitimately, for instance when the two
        extremal alignments coincide everywhere, so they are flagged
        rather than rejected.
        """
        total = self.total
        if total == 0:
            return tuple(0.0 for _ in self.counts)
        return tuple(c / total for c in self.counts)

    def prob(self, outcome) -> float:
        try:
            k = self.support.index(outcome)
        except ValueError as exc:
            raise InvalidInputError(f"{outcome!r} not in support {self.support}") from exc
        return self.probs[k]

    def sup_distance(self, other: "EmpiricalDist") -> float:
        """Largest absolute probability gap over the common support."""
        if self.support != other.support:
            raise InvalidInputError(
                f"supports differ: {self.support} vs {other.support}"
            )
        return max(abs(p - q) for p, q in zip(self.probs, other.probs))


@dataclass(frozen=True)
class RSequence:
    """Match-change values at every position, with the agreement mask.

    values[i] is +1 when flipping x at position i+1 would raise the
    alignment score by one along the extremal pair, -1 when it would
    lower it, and 0 when the two extremal images see different symbols
    so the change cancels.  agree_mask marks positions where the two
    extremal alignments coincide.
    """

    values: tuple[int, ...]
    agree_mask: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.agree_mask):
            raise InvalidInputError("values and agree_mask must have equal length")
        if any(v not in (-1, 0, 1) for v in self.values):
            raise InvalidInputError("values must lie in {-1, 0, +1}")


@dataclass(frozen=True)
class EpsilonThresholds:
    """Deviation radii for the four large-deviation events."""

    pair_dev: float
    agree_dev: float
    disagree_dev: float
    uniform_dev: float


def entropy(delta: float) -> float:
    """Binary entropy of delta in nats."""
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie strictly between 0 and 1, got {delta}")
    return -(delta * math.log(delta) + (1.0 - delta) * math.log(1.0 - delta))


def epsilon_thresholds(delta: float, epsilon: float) -> EpsilonThresholds:
    """Deviation radii used by the events, as functions of (delta, epsilon).

    Each radius scales like sqrt(H(delta)); they are calibrated so that
    the union of failure probabilities stays exponentially small in n.
    """
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie strictly between 0 and 1, got {epsilon}")
    h = entropy(delta)
    gap = 1.0 - delta
    return EpsilonThresholds(
        pair_dev=math.sqrt(9.0 * h / (4.0 * gap)),
        agree_dev=math.sqrt(3.0 * h / (2.0 * gap * epsilon)),
        disagree_dev=math.sqrt(27.0 * h / (8.0 * gap * epsilon)),
        uniform_dev=math.sqrt(3.0 * h / (2.0 * gap * (1.0 - epsilon))),
    )


def _check_alignment_dims(
    x: BinarySequence, y: BinarySequence, alignment: Alignment
) -> None:
    if len(alignment) != len(x):
        raise InvalidInputError(
            f"alignment covers {len(alignment)} positions but x has {len(x)}"
        )
    if alignment.images[-1] > len(y):
        raise InvalidInputError(
            f"alignment image {alignment.images[-1]} exceeds |y| = {len(y)}"
        )


def pair_empirical(
    x: BinarySequence, y: BinarySequence, alignment: Alignment
) -> EmpiricalDist:
    """Empirical distribution of (x symbol, matched y symbol) pairs."""
    _check_alignment_dims(x, y, alignment)
    cells = 2 * x.array.astype(np.int64) + y.array[alignment.index_array]
    counts = np.bincount(cells, minlength=4)
    return EmpiricalDist(PAIR_SUPPORT, tuple(int(c) for c in counts))


def pair_reference_law() -> EmpiricalDist:
    """Law of an independent fair pair: uniform on the four symbol pairs."""
    return EmpiricalDist(PAIR_SUPPORT, (1, 1, 1, 1))


def r_sequence(
    x: BinarySequence, y: BinarySequence, lo: Alignment, hi: Alignment
) -> RSequence:
    """Read the match-change values off an extremal pair of alignments.

    Where the two alignments agree, the value is +1 on a mismatch of x
    against y (flipping x there gains a match) and -1 on a match.  Where
    they disagree, the two images may see different y symbols, in which
    case a flip trades one match for another and the value is 0;
    otherwise the sign is read from the shared y symbol as before.
    """
    _check_alignment_dims(x, y, lo)
    _check_alignment_dims(x, y, hi)
    lo_idx = lo.index_array
    hi_idx = hi.index_array
    if bool(np.any(lo_idx > hi_idx)):
        raise InvalidInputError("lower alignment must sit pointwise at or below upper")
    xa = x.array
    y_lo = y.array[lo_idx]
    y_hi = y.array[hi_idx]
    agree = lo_idx == hi_idx
    sign = np.where(xa != y_lo, 1, -1)
    values = np.where(agree, sign, np.where(y_lo != y_hi, 0, sign))
    return RSequence(
        values=tuple(int(v) for v in values),
        agree_mask=tuple(bool(b) for b in agree),
    )


def r_empirical(seq: RSequence, mode: str) -> EmpiricalDist:
    """Empirical distribution of the match-change values on a subsample.

    mode selects the positions: "agree" and "disagree" split on the
    agreement mask, "uniform" keeps all positions.
    """
    if mode not in _R_MODES:
        raise InvalidInputError(f"mode must be one of {_R_MODES}, got {mode!r}")
    if mode == "agree":
        selected = [v for v, a in zip(seq.values, seq.agree_mask) if a]
    elif mode == "disagree":
        selected = [v for v, a in zip(seq.values, seq.agree_mask) if not a]
    else:
        selected = list(seq.values)
    counts = (selected.count(-1), selected.count(0), selected.count(1))
    return EmpiricalDist(R_SUPPORT, counts)


def reference_law(mode: str) -> EmpiricalDist:
    """Limit law of the match-change values on the given subsample.

    Agreement positions carry a fair sign and never cancel, so the law
    is (1/2, 0, 1/2) on (-1, 0, +1).  Disagreement positions cancel half
    the time, giving (1/4, 1/2, 1/4); the all-positions law used in the
    near-total disagreement regime is the same by coincidence of the
    model, not by definition.
    """
    if mode not in _R_MODES:
        raise InvalidInputError(f"mode must be one of {_R_MODES}, got {mode!r}")
    if mode == "agree":
        return EmpiricalDist(R_SUPPORT, (1, 0, 1))
    return EmpiricalDist(R_SUPPORT, (1, 2, 1))


@dataclass(frozen=True)
class EventMembership:
    """Which deviation events one instance belongs to.

    pair_typical is always decided.  Of the three match-change events,
    only those meaningful for the instance's disagreement regime are
    decided; the others stay None.
    """

    pair_typical: bool
    agree_typical: bool | None
    disagree_typical: bool | None
    uniform_typical: bool | None
    regime: str

    def to_dict(self) -> dict:
        return {
            "pair_typical": self.pair_typical,
            "agree_typical": self.agree_typical,
            "disagree_typical": self.disagree_typical,
            "uniform_typical": self.uniform_typical,
            "regime": self.regime,
        }


def event_membership(
    x: BinarySequence,
    y: BinarySequence,
    pair: ExtremalPair,
    delta: float,
    epsilon: float,
) -> EventMembership:
    """Decide the deviation events for one instance.

    The pair event asks that both extremal alignments read a nearly
    uniform symbol-pair distribution off y.  The match-change events
    compare subsample empiricals with their reference laws, but only in
    the regime where the subsample is a positive fraction of positions:
    agreement and disagreement events when the disagreement count is
    between epsilon*m and (1-epsilon)*m, the all-positions event when it
    exceeds (1-epsilon)*m.  The all-positions radius is widened by
    2*epsilon to absorb the boundary positions the regime cannot pin down.
    """
    thresholds = epsilon_thresholds(delta, epsilon)
    m = len(x)
    if len(pair.lo) != m:
        raise InvalidInputError(
            f"extremal pair covers {len(pair.lo)} positions but x has {m}"
        )
    reference = pair_reference_law()
    dev_lo = pair_empirical(x, y, pair.lo).sup_distance(reference)
    dev_hi = pair_empirical(x, y, pair.hi).sup_distance(reference)
    pair_typical = max(dev_lo, dev_hi) < thresholds.pair_dev

    d = pair.nonunique_count
    agree_typical: bool | None = None
    disagree_typical: bool | None = None
    uniform_typical: bool | None = None
    if m * epsilon <= d <= m * (1.0 - epsilon):
        regime = "mid"
        seq = r_sequence(x, y, pair.lo, pair.hi)
        agree_typical = (
            r_empirical(seq, "agree").sup_distance(reference_law("agree"))
            < thresholds.agree_dev
        )
        disagree_typical = (
            r_empirical(seq, "disagree").sup_distance(reference_law("disagree"))
            < thresholds.disagree_dev
        )
    elif d > m * (1.0 - epsilon):
        regime = "large-disagreement"
        seq = r_sequence(x, y, pair.lo, pair.hi)
        uniform_typical = (
            r_empirical(seq, "uniform").sup_distance(reference_law("uniform"))
            < thresholds.uniform_dev + 2.0 * epsilon
        )
    else:
        regime = "small-disagreement"
    return EventMembership(
        pair_typical=pair_typical,
        agree_typical=agree_typical,
        disagree_typical=disagree_typical,
        uniform_typical=uniform_typical,
        regime=regime,
    )


@dataclass(frozen=True)
class StatementReport:
    """Conditional flip-gain fractions on one instance.

    Each field is the empirical probability of a flip outcome given a
    position class; fields are None when the class is empty.  stmt_v is
    the symbol-pair empirical read off the lower extremal alignment, in
    support order (0,0), (0,1), (1,0), (1,1).
    """

    stmt_i: float | None
    stmt_ii: float | None
    stmt_iii: float | None
    stmt_iv: float | None
    stmt_v: tuple[float, float, float, float]

    def to_dict(self) -> dict:
        return {
            "stmt_i": self.stmt_i,
            "stmt_ii": self.stmt_ii,
            "stmt_iii": self.stmt_iii,
            "stmt_iv": self.stmt_iv,
            "stmt_v": {
                "00": self.stmt_v[0],
                "01": self.stmt_v[1],
                "10": self.stmt_v[2],
                "11": self.stmt_v[3],
            },
        }


def statement_checks(
    x: BinarySequence, y: BinarySequence, pair: ExtremalPair
) -> StatementReport:
    """Empirical fractions behind the typical-instance picture.

    i: mismatch fraction on agreement positions.  ii, iii, iv: fractions
    of disagreement positions whose two images see different y symbols,
    the same y symbol mismatching x, and the same y symbol matching x;
    the three partition the disagreement positions.  v: the symbol-pair
    empirical along the lower extremal alignment.
    """
    m = len(x)
    if len(pair.lo) != m:
        raise InvalidInputError(
            f"extremal pair covers {len(pair.lo)} positions but x has {m}"
        )
    xa = x.array
    lo_idx = pair.lo.index_array
    hi_idx = pair.hi.index_array
    y_lo = y.array[lo_idx]
    y_hi = y.array[hi_idx]
    agree = lo_idx == hi_idx
    disagree = ~agree

    def fraction(numer: np.ndarray, denom: np.ndarray) -> float | None:
        total = int(denom.sum())
        if total == 0:
            return None
        return int((numer & denom).sum()) / total

    same_y = y_lo == y_hi
    report_v = pair_empirical(x, y, pair.lo).probs
    return StatementReport(
        stmt_i=fraction(xa != y_lo, agree),
        stmt_ii=fraction(y_lo != y_hi, disagree),
        stmt_iii=fraction(same_y & (xa != y_lo), disagree),
        stmt_iv=fraction(same_y & (xa == y_lo), disagree),
        stmt_v=(report_v[0], report_v[1], report_v[2], report_v[3]),
    )


@dataclass(frozen=True)
class BoundReport:
    """Closed-form bound on the atypical-instance probability."""

    n: int
    delta: float
    epsilon: float
    numerator: float
    denominator: float
    raw: float
    clamped: float
    vacuous: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "epsilon": self.epsilon,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "raw": self.raw,
            "clamped": self.clamped,
            "vacuous": self.vacuous,
        }


def theorem_bound(n: int, delta: float, epsilon: float) -> BoundReport:
    """Evaluate the closed-form probability bound at finite n.

    The numerator collects the deviation-event failure probabilities;
    the denominator is the worst-case conditional flip gain across the
    disagreement regimes.  The bound only carries information when the
    denominator is positive and the value lands below one; otherwise it
    is flagged vacuous.  The function never raises on a vacuous
    combination, since mapping out where the bound fails is part of its
    job.
    """
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}")
    thresholds = epsilon_thresholds(delta, epsilon)
    tail = math.exp(-n * entropy(delta))
    numerator = 4.0 * thresholds.pair_dev + 8.0 * tail
    widened = thresholds.uniform_dev + 2.0 * epsilon
    denominator = (0.5 - 3.0 * max(widened, thresholds.disagree_dev)) * epsilon + min(
        0.5 - 3.0 * widened, -2.0 * thresholds.agree_dev
    ) * (1.0 - epsilon)
    if denominator == 0.0:
        raw = math.inf
    else:
        raw = numerator / denominator + 10.0 * tail
    vacuous = denominator <= 0.0 or raw >= 1.0
    return BoundReport(
        n=n,
        delta=delta,
        epsilon=epsilon,
        numerator=numerator,
        denominator=denominator,
        raw=raw,
        clamped=min(max(raw, 0.0), 1.0),
        vacuous=vacuous,
    )
