"""Shared strategies and naive reference implementations for the tests.

The reference code here repeats definitions in the most literal way
possible (enumeration, direct counting) and must stay independent of
the library internals it is used to check.
"""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

from alignuniq import Alignment, BinarySequence


@st.composite
def instances(draw, min_n: int = 2, max_n: int = 16):
    """Random (x, y) with 1 <= |x| < |y| <= max_n."""
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(1, n - 1))
    xbits = draw(st.lists(st.integers(0, 1), min_size=m, max_size=m))
    ybits = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return BinarySequence(tuple(xbits)), BinarySequence(tuple(ybits))


def direct_score(x: BinarySequence, y: BinarySequence, images: tuple[int, ...]) -> int:
    """Score by literal definition, bypassing the Alignment type."""
    return sum(1 for k, j in enumerate(images) if x.bits[k] == y.bits[j - 1])


def all_alignments(m: int, n: int):
    """Every strictly increasing image tuple, smallest first."""
    return itertools.combinations(range(1, n + 1), m)


def naive_optimal_set(
    x: BinarySequence, y: BinarySequence
) -> tuple[int, list[tuple[int, ...]]]:
    """Optimal score and optimal image tuples by full enumeration."""
    best = -1
    optimal: list[tuple[int, ...]] = []
    for images in all_alignments(len(x), len(y)):
        s = direct_score(x, y, images)
        if s > best:
            best, optimal = s, [images]
        elif s == best:
            optimal.append(images)
    return best, optimal


def naive_prefix_best(
    x: BinarySequence, y: BinarySequence, i: int, j: int
) -> int:
    """Best score over prefix alignments of x[1..i] whose last image is j.

    Matches the meaning of one banded table cell, computed by raw
    enumeration; only usable for tiny shapes.
    """
    best = -1
    for head in itertools.combinations(range(1, j), i - 1):
        best = max(best, direct_score(x, y, head + (j,)))
    return best


def naive_extremes(
    x: BinarySequence, y: BinarySequence
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Pointwise min and max image vectors over the optimal set."""
    _, optimal = naive_optimal_set(x, y)
    lo = tuple(min(vals) for vals in zip(*optimal))
    hi = tuple(max(vals) for vals in zip(*optimal))
    return lo, hi


def as_alignment(images: tuple[int, ...]) -> Alignment:
    return Alignment(images)
