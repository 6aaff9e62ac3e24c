"""Single-bit flips of x and their effect on the optimal score.

Flipping one symbol of x is measure preserving when x is uniform, so
the score change has exact mean zero even though individual flips are
biased: a flip at a position where the two extremal alignments see
different y symbols always gains a match somewhere, which is the
mechanism that forces widespread local uniqueness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    BinarySequence,
    ExtremalPair,
    best_score,
    build_score_matrix,
    extremal_alignments,
)
from .errors import InvalidInputError

__all__ = ["FLIP_CATEGORIES", "FlipOutcome", "flip_at", "delta_score", "random_flip"]

# Flip position classes, read off the extremal pair of the unflipped
# instance.  DISAG/AGREE says whether the two extremal images differ at
# the position; YDIFF marks differing y symbols under the two images;
# MISMATCH/MATCH compares x against the (shared) y symbol.
FLIP_CATEGORIES: tuple[str, ...] = (
    "DISAG_YDIFF",
    "DISAG_MISMATCH",
    "DISAG_MATCH",
    "AGREE_MISMATCH",
    "AGREE_MATCH",
)


@dataclass(frozen=True)
class FlipOutcome:
    """Result of one bit flip: position, score change, position class."""

    t: int
    delta: int
    category: str

    def __post_init__(self) -> None:
        if self.delta not in (-1, 0, 1):
            raise InvalidInputError(f"score change must lie in -1..1, got {self.delta}")
        if self.category not in FLIP_CATEGORIES:
            raise InvalidInputError(f"unknown category {self.category!r}")

    def csv_fragment(self) -> tuple[str, str, str]:
        """The (t, delta, category) cells of a CSV row."""
        return (str(self.t), str(self.delta), self.category)


def flip_at(x: BinarySequence, t: int) -> BinarySequence:
    """Copy of x with the symbol at 1-based position t inverted."""
    if not 1 <= t <= len(x):
        raise InvalidInputError(f"flip position {t} outside 1..{len(x)}")
    bits = list(x.bits)
    bits[t - 1] = 1 - bits[t - 1]
    return BinarySequence(tuple(bits))


def _classify(
    x: BinarySequence, y: BinarySequence, pair: ExtremalPair, t: int
) -> str:
    lo_image = pair.lo.images[t - 1]
    hi_image = pair.hi.images[t - 1]
    xt = x.bits[t - 1]
    y_lo = y.bits[lo_image - 1]
    if lo_image != hi_image:
        if y_lo != y.bits[hi_image - 1]:
            return "DISAG_YDIFF"
        return "DISAG_MISMATCH" if xt != y_lo else "DISAG_MATCH"
    return "AGREE_MISMATCH" if xt != y_lo else "AGREE_MATCH"


def delta_score(
    x: BinarySequence,
    y: BinarySequence,
    t: int,
    pair: ExtremalPair | None = None,
) -> FlipOutcome:
    """Score change caused by flipping x at position t.

    The change is computed from two full solves, one before and one
    after the flip, with no incremental shortcut.  The category comes
    from the extremal pair of the unflipped instance, so the outcome is
    a pure function of (x, y, t); a caller holding that pair already may
    pass it to skip the first solve.
    """
    if not 1 <= t <= len(x):
        raise InvalidInputError(f"flip position {t} outside 1..{len(x)}")
    if pair is None:
        pair = extremal_alignments(build_score_matrix(x, y), x, y)
    elif len(pair.lo) != len(x):
        raise InvalidInputError(
            f"extremal pair covers {len(pair.lo)} positions but x has {len(x)}"
        )
    flipped_score = best_score(flip_at(x, t), y)
    return FlipOutcome(
        t=t,
        delta=flipped_score - pair.score,
        category=_classify(x, y, pair, t),
    )


def random_flip(
    x: BinarySequence,
    y: BinarySequence,
    rng: np.random.Generator,
    pair: ExtremalPair | None = None,
) -> FlipOutcome:
    """Flip at a position drawn uniformly from 1..|x| by the given generator."""
    t = int(rng.integers(1, len(x) + 1))
    return delta_score(x, y, t, pair=pair)
