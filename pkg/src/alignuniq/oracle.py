"""Exhaustive ground truth for small instances.

Everything here is deliberately naive: alignments are enumerated one by
one and scored by direct evaluation, with no dynamic programming and no
shared code with the fast path.  The point is to have an independent
reference that the optimised implementation must reproduce exactly on
every instance small enough to enumerate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .core import Alignment, BinarySequence, alignment_score
from .errors import DomainError, InvalidInputError, ResourceLimitError

__all__ = [
    "DEFAULT_ENUM_CAP",
    "EntropyBoundReport",
    "enumerate_alignments",
    "count_alignments",
    "brute_optimal_set",
    "brute_extremal",
    "brute_nonunique_mask",
    "entropy_bound_check",
]

DEFAULT_ENUM_CAP = 10_000_000


def count_alignments(m: int, n: int) -> int:
    """Number of order-preserving injections of 1..m into 1..n.

    Choosing the image set determines the injection, so the count is the
    binomial coefficient C(n, m), evaluated exactly.
    """
    if m < 0 or n < 0:
        raise InvalidInputError(f"lengths must be nonnegative, got m={m}, n={n}")
    return math.comb(n, m)


def enumerate_alignments(
    m: int, n: int, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[Alignment]:
    """Yield every alignment of m positions into n, in lexicographic order.

    Raises ResourceLimitError before yielding anything if the count
    C(n, m) exceeds `cap`.
    """
    if not 1 <= m <= n:
        raise InvalidInputError(f"need 1 <= m <= n, got m={m}, n={n}")
    total = count_alignments(m, n)
    if total > cap:
        raise ResourceLimitError(
            f"C({n}, {m}) = {total} alignments exceeds the enumeration cap {cap}"
        )
    for combo in itertools.combinations(range(1, n + 1), m):
        yield Alignment(combo)


def brute_optimal_set(
    x: BinarySequence, y: BinarySequence, cap: int = DEFAULT_ENUM_CAP
) -> tuple[int, list[Alignment]]:
    """Optimal score and the full list of optimal alignments, by enumeration.

    The list preserves lexicographic order of image tuples.
    """
    if len(x) >= len(y):
        raise InvalidInputError(
            f"x must be strictly shorter than y, got |x|={len(x)}, |y|={len(y)}"
        )
    best = -1
    optimal: list[Alignment] = []
    for alignment in enumerate_alignments(len(x), len(y), cap):
        s = alignment_score(x, y, alignment)
        if s > best:
            best = s
            optimal = [alignment]
        elif s == best:
            optimal.append(alignment)
    return best, optimal


def brute_extremal(
    x: BinarySequence, y: BinarySequence, cap: int = DEFAULT_ENUM_CAP
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Pointwise minimum and maximum over all optimal alignments."""
    _, optimal = brute_optimal_set(x, y, cap)
    lo = list(optimal[0].images)
    hi = list(optimal[0].images)
    for alignment in optimal[1:]:
        lo = [min(a, b) for a, b in zip(lo, alignment.images)]
        hi = [max(a, b) for a, b in zip(hi, alignment.images)]
    return tuple(lo), tuple(hi)


def brute_nonunique_mask(
    x: BinarySequence, y: BinarySequence, cap: int = DEFAULT_ENUM_CAP
) -> tuple[bool, ...]:
    """Positions where some two optimal alignments disagree."""
    lo, hi = brute_extremal(x, y, cap)
    return tuple(a != b for a, b in zip(lo, hi))


@dataclass(frozen=True)
class EntropyBoundReport:
    """Exact alignment count against its exponential entropy bound."""

    n: int
    delta: float
    m: int
    count: int
    bound: float
    holds: bool
    in_hypothesis: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "m": self.m,
            "count": self.count,
            "bound": self.bound,
            "holds": self.holds,
            "in_hypothesis": self.in_hypothesis,
        }


def entropy_bound_check(n: int, delta: float) -> EntropyBoundReport:
    """Compare the exact alignment count C(n, m) with exp(n * H(delta)).

    H is the binary entropy of delta in nats.  The bound is guaranteed
    for delta < 5/6 (`in_hypothesis`); outside that range the comparison
    is still performed and simply reported.  Unlike a full model
    instance, m = 0 is tolerated here so the bound can be probed right
    up to delta = 1.
    """
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}")
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie strictly between 0 and 1, got {delta}")
    m = math.floor(n - delta * n)
    count = count_alignments(m, n)
    entropy = -(delta * math.log(delta) + (1.0 - delta) * math.log(1.0 - delta))
    try:
        bound = math.exp(n * entropy)
    except OverflowError:
        bound = math.inf
    return EntropyBoundReport(
        n=n,
        delta=delta,
        m=m,
        count=count,
        bound=bound,
        holds=count <= bound,
        in_hypothesis=delta < 5.0 / 6.0,
    )
