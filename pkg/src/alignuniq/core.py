"""Banded alignment of binary sequences, with extremal optimal alignments.

The model aligns a short 0/1 sequence x of length m against a longer one
y of length n by an order-preserving injection of positions: position i
of x is matched to position a(i) of y with a(1) < a(2) < ... < a(m), so
all gaps fall in x.  The score of an alignment counts the positions
where the matched symbols agree, and an alignment is optimal when no
injection scores higher.

Because an injection can shift position i by at most the length surplus
n - m, the dynamic program lives on a diagonal band: row i only has
feasible columns i..i+(n-m).  `build_score_matrix` fills that band,
`extremal_alignments` recovers the two optimal alignments that bound
every other one pointwise, and the gap between them localises where the
optimum fails to be unique.

All public positions are 1-based; arrays used internally are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError, InvalidInputError

__all__ = [
    "BinarySequence",
    "ModelParams",
    "Alignment",
    "ScoreMatrix",
    "ExtremalPair",
    "alignment_score",
    "build_score_matrix",
    "best_score",
    "optimal_score",
    "extremal_alignments",
    "nonuniqueness_count",
]


@dataclass(frozen=True)
class BinarySequence:
    """Immutable sequence of 0/1 symbols."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bits) == 0:
            raise InvalidInputError("sequence must contain at least one symbol")
        if any(b not in (0, 1) for b in self.bits):
            raise InvalidInputError("sequence symbols must be 0 or 1")

    @classmethod
    def from_string(cls, text: str) -> "BinarySequence":
        """Parse a string such as "010011" into a sequence."""
        if not text or set(text) - {"0", "1"}:
            raise InvalidInputError(f"not a 0/1 string: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_iterable(cls, bits) -> "BinarySequence":
        return cls(tuple(int(b) for b in bits))

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return self.to_string()

    @cached_property
    def array(self) -> np.ndarray:
        """Read-only uint8 view of the symbols."""
        arr = np.array(self.bits, dtype=np.uint8)
        arr.flags.writeable = False
        return arr


@dataclass(frozen=True)
class ModelParams:
    """Instance dimensions: y has length n, x has length m = floor(n - delta*n).

    delta is the proportion of y that the alignment must skip; it fixes m
    from n, so the pair (n, delta) determines the whole geometry.
    """

    n: int
    delta: float
    m: int = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidInputError(f"n must be at least 2, got {self.n}")
        if not 0.0 < self.delta < 1.0:
            raise DomainError(f"delta must lie strictly between 0 and 1, got {self.delta}")
        object.__setattr__(self, "m", math.floor(self.n - self.delta * self.n))
        if not 1 <= self.m < self.n:
            raise InvalidInputError(
                f"delta={self.delta} leaves m={self.m} aligned positions at n={self.n}; need 1 <= m < n"
            )

    @property
    def band_width(self) -> int:
        """Maximal shift of any aligned position: the length surplus n - m."""
        return self.n - self.m


@dataclass(frozen=True)
class Alignment:
    """Order-preserving injection, stored as the 1-based tuple of images.

    images[i-1] is the position of y matched to position i of x; the
    tuple must be strictly increasing.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) == 0:
            raise InvalidInputError("alignment must cover at least one position")
        prev = 0
        for v in self.images:
            if v <= prev:
                raise InvalidInputError(
                    f"alignment images must be strictly increasing positive integers, got {self.images}"
                )
            prev = v

    @classmethod
    def identity(cls, m: int) -> "Alignment":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def from_string(cls, text: str) -> "Alignment":
        """Parse a comma-separated image list such as "1,2,4,7"."""
        try:
            images = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise InvalidInputError(f"not a comma-separated integer list: {text!r}") from exc
        return cls(images)

    def to_string(self) -> str:
        return ",".join(str(v) for v in self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __str__(self) -> str:
        return self.to_string()

    @cached_property
    def index_array(self) -> np.ndarray:
        """Read-only 0-based index array for fancy indexing into y."""
        arr = np.array(self.images, dtype=np.int64) - 1
        arr.flags.writeable = False
        return arr


@dataclass(frozen=True, eq=False)
class ScoreMatrix:
    """Banded table of best prefix scores.

    Cell (i, j), 1-based, is the best score of any alignment of the first
    i positions of x whose last image is exactly j.  Only the band
    i <= j <= i + band_width is feasible; cells outside it hold no value.
    Rows are stored densely at offset j - i, so the table costs
    m * (band_width + 1) cells instead of m * n.
    """

    m: int
    n: int
    rows: np.ndarray

    @property
    def band_width(self) -> int:
        return self.n - self.m

    def is_valid(self, i: int, j: int) -> bool:
        """Whether the 1-based cell (i, j) lies inside the feasible band."""
        return 1 <= i <= self.m and i <= j <= i + self.band_width

    def cell(self, i: int, j: int) -> int | None:
        """Score at the 1-based cell (i, j), or None outside the band."""
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise InvalidInputError(f"cell ({i}, {j}) outside the {self.m} x {self.n} table")
        if j < i or j > i + self.band_width:
            return None
        return int(self.rows[i - 1, j - i])

    def row_values(self, i: int) -> np.ndarray:
        """Read-only scores of row i at offsets 0..band_width (images i..i+band_width)."""
        if not 1 <= i <= self.m:
            raise InvalidInputError(f"row {i} outside 1..{self.m}")
        return self.rows[i - 1]


@dataclass(frozen=True)
class ExtremalPair:
    """The pointwise lowest and highest optimal alignments of one instance.

    Every optimal alignment sits between `lo` and `hi` position by
    position, and both bounds are themselves optimal.  They differ
    exactly at the positions where more than one optimal image exists,
    so `nonunique_count` measures how far the optimum is from unique.
    """

    lo: Alignment
    hi: Alignment
    score: int
    nonunique: tuple[bool, ...]
    nonunique_count: int


def _check_instance(x: BinarySequence, y: BinarySequence) -> None:
    if len(x) >= len(y):
        raise InvalidInputError(
            f"x must be strictly shorter than y, got |x|={len(x)}, |y|={len(y)}"
        )


def alignment_score(x: BinarySequence, y: BinarySequence, alignment: Alignment) -> int:
    """Count the positions i where x and y agree under the alignment.

    This is a direct evaluation of the score definition and is used as
    the reference against which the dynamic program is checked.
    """
    if len(alignment) != len(x):
        raise InvalidInputError(
            f"alignment covers {len(alignment)} positions but x has {len(x)}"
        )
    if alignment.images[-1] > len(y):
        raise InvalidInputError(
            f"alignment image {alignment.images[-1]} exceeds |y| = {len(y)}"
        )
    ybits = y.bits
    return sum(1 for xb, j in zip(x.bits, alignment.images) if xb == ybits[j - 1])


def _dp_rows(xa: np.ndarray, ya: np.ndarray) -> np.ndarray:
    """Fill the banded table row by row.

    Row 0 is the pointwise match indicator on the first band.  Each later
    row adds its match indicator to the running prefix maximum of the row
    above: offset o of row i may extend any cell of row i-1 at offset at
    most o, because the previous image must be strictly smaller.  The
    prefix maximum turns the inner minimisation into one vector pass, so
    the fill costs O(m * band_width) instead of O(m * band_width**2).
    """
    m = int(xa.size)
    n = int(ya.size)
    width = n - m + 1
    windows = np.lib.stride_tricks.sliding_window_view(ya, width)[:m]
    match = (windows == xa[:, None]).astype(np.int64)
    rows = np.empty((m, width), dtype=np.int64)
    rows[0] = match[0]
    prefix = np.empty(width, dtype=np.int64)
    for i in range(1, m):
        np.maximum.accumulate(rows[i - 1], out=prefix)
        np.add(match[i], prefix, out=rows[i])
    return rows


def build_score_matrix(x: BinarySequence, y: BinarySequence) -> ScoreMatrix:
    """Compute the full banded table of best prefix scores."""
    _check_instance(x, y)
    rows = _dp_rows(x.array, y.array)
    rows.flags.writeable = False
    return ScoreMatrix(m=len(x), n=len(y), rows=rows)


def best_score(x: BinarySequence, y: BinarySequence) -> int:
    """Optimal alignment score using O(band_width) memory.

    Identical recurrence to `build_score_matrix`, keeping only the
    current row; use it when the table itself is not needed.
    """
    _check_instance(x, y)
    xa = x.array
    ya = y.array
    m = int(xa.size)
    width = int(ya.size) - m + 1
    row = (ya[:width] == xa[0]).astype(np.int64)
    prefix = np.empty(width, dtype=np.int64)
    for i in range(1, m):
        np.maximum.accumulate(row, out=prefix)
        np.add(ya[i : i + width] == xa[i], prefix, out=row)
    return int(row.max())


def optimal_score(matrix: ScoreMatrix) -> int:
    """Best full-alignment score: the maximum of the last row."""
    return int(matrix.rows[-1].max())


def _rightmost_backtrack(rows: np.ndarray) -> tuple[int, np.ndarray]:
    """Trace the optimal alignment with the largest image at every position.

    Start from the rightmost maximiser of the last row.  Stepping up from
    image j of row i, any optimal predecessor is a maximiser of row i-1
    over images strictly below j, and taking the rightmost of those keeps
    the alignment pointwise maximal: the true pointwise maximum satisfies
    the same local condition, so it can never sit to the right of this
    choice, while optimality of the traced alignment forces equality.

    Returns the optimal score and the 0-based image array.
    """
    m, width = rows.shape
    last = rows[m - 1]
    score = int(last.max())
    offset = int(np.flatnonzero(last == score)[-1])
    images = np.empty(m, dtype=np.int64)
    j = m - 1 + offset
    images[m - 1] = j
    for i in range(m - 1, 0, -1):
        # Predecessor images run from i-1 (offset 0) up to j-1 inclusive.
        limit = min(j - i, width - 1)
        segment = rows[i - 1, : limit + 1]
        offset = int(np.flatnonzero(segment == segment.max())[-1])
        j = i - 1 + offset
        images[i - 1] = j
    return score, images


def extremal_alignments(
    matrix: ScoreMatrix, x: BinarySequence, y: BinarySequence
) -> ExtremalPair:
    """Recover the pointwise minimal and maximal optimal alignments.

    The maximal one comes from rightmost backtracking on the given table.
    The minimal one is the mirror image of the same procedure on the
    reversed instance: reversing x and y reverses every alignment, which
    swaps pointwise minima with maxima without changing scores.  Both
    results are re-scored directly as a consistency check.
    """
    xa = x.array
    ya = y.array
    if (matrix.m, matrix.n) != (int(xa.size), int(ya.size)):
        raise InvalidInputError(
            f"table is {matrix.m} x {matrix.n} but instance is {xa.size} x {ya.size}"
        )
    score, hi0 = _rightmost_backtrack(matrix.rows)
    rev_score, rev0 = _rightmost_backtrack(_dp_rows(xa[::-1], ya[::-1]))
    lo0 = (matrix.n - 1) - rev0[::-1]
    assert rev_score == score, "mirrored solve disagrees on the optimal score"
    assert int((xa == ya[lo0]).sum()) == score, "lower alignment failed re-scoring"
    assert int((xa == ya[hi0]).sum()) == score, "upper alignment failed re-scoring"
    differs = lo0 != hi0
    return ExtremalPair(
        lo=Alignment(tuple(int(v) + 1 for v in lo0)),
        hi=Alignment(tuple(int(v) + 1 for v in hi0)),
        score=score,
        nonunique=tuple(bool(b) for b in differs),
        nonunique_count=int(differs.sum()),
    )


def nonuniqueness_count(pair: ExtremalPair) -> int:
    """Number of positions whose optimal image is not unique.

    Recomputed from the two alignments rather than read from the stored
    count, so it can serve as an independent cross-check.
    """
    return sum(1 for a, b in zip(pair.lo.images, pair.hi.images) if a != b)
