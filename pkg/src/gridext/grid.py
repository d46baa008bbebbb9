"""Grid posets: finite products of chains under the componentwise order.

A grid shape (a_1, ..., a_k) describes the poset whose elements are integer
vectors x with 1 <= x_j <= a_j, ordered by x <= y iff x_j <= y_j for every
coordinate.  The rank of x is 1 + sum_j (x_j - 1), so ranks run from 1 at
the bottom corner to 1 + sum_j (a_j - 1) at the top corner.

Every point also has a canonical integer index used for compact storage and
for all file formats produced by this package:

    index(x) = sum_j (x_j - 1) * prod_{l > j} a_l

i.e. row-major order with the last coordinate varying fastest.  Coordinates
are 1-based, indices are 0-based.  This numbering is part of the external
contract and must not change.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError, ShapeMismatchError

__all__ = [
    "GridShape",
    "Point",
    "RankLevel",
    "leq",
    "covers",
    "up_degree",
    "rank_levels",
    "whitney_numbers",
    "max_antichain_size",
]


@dataclass(frozen=True)
class GridShape:
    """Chain lengths (a_1, ..., a_k) of a product-of-chains poset."""

    lengths: tuple[int, ...]

    def __post_init__(self):
        try:
            lengths = tuple(int(a) for a in self.lengths)
        except TypeError as exc:
            raise DomainError(f"chain lengths must be an iterable of ints, got {self.lengths!r}") from exc
        if not lengths:
            raise DomainError("a grid shape needs at least one chain")
        if any(a < 1 for a in lengths):
            raise DomainError(f"chain lengths must be >= 1, got {lengths}")
        object.__setattr__(self, "lengths", lengths)

    @classmethod
    def equilateral(cls, m: int, n: int) -> "GridShape":
        """The shape with n chains of equal length m."""
        if n < 1:
            raise DomainError(f"need at least one chain, got n={n}")
        return cls((int(m),) * int(n))

    @property
    def num_chains(self) -> int:
        return len(self.lengths)

    @cached_property
    def size(self) -> int:
        """Number of points, prod_j a_j."""
        return math.prod(self.lengths)

    @cached_property
    def num_ranks(self) -> int:
        """Largest rank value, 1 + sum_j (a_j - 1)."""
        return 1 + sum(a - 1 for a in self.lengths)

    @property
    def is_equilateral(self) -> bool:
        return len(set(self.lengths)) == 1

    # --- canonical indexing ------------------------------------------------

    @cached_property
    def strides(self) -> tuple[int, ...]:
        """Multipliers of (x_j - 1) in the canonical index; strides[-1] == 1."""
        out = [1] * len(self.lengths)
        for j in range(len(self.lengths) - 2, -1, -1):
            out[j] = out[j + 1] * self.lengths[j + 1]
        return tuple(out)

    def index_of(self, coords: tuple[int, ...]) -> int:
        """Canonical index of a coordinate vector (validates the vector)."""
        self._check_coords(coords)
        return sum((x - 1) * s for x, s in zip(coords, self.strides))

    def coords_of(self, index: int) -> tuple[int, ...]:
        """Coordinate vector of a canonical index."""
        if not 0 <= index < self.size:
            raise DomainError(f"index {index} out of range for shape {self.lengths} (size {self.size})")
        return self.coords_table[index]

    def point(self, coords) -> "Point":
        return Point(self, tuple(coords))

    def point_at(self, index: int) -> "Point":
        return Point(self, self.coords_of(index))

    def points(self):
        """All points in canonical index order."""
        for coords in self.coords_table:
            yield Point(self, coords)

    def _check_coords(self, coords) -> None:
        if len(coords) != len(self.lengths):
            raise DomainError(f"expected {len(self.lengths)} coordinates, got {len(coords)}")
        for x, a in zip(coords, self.lengths):
            if not 1 <= x <= a:
                raise DomainError(f"coordinate {x} out of range 1..{a} in {tuple(coords)}")

    # --- precomputed tables, indexed by canonical index --------------------
    #
    # These back every hot loop in the package.  All of them are immutable
    # and computed once per shape.

    @cached_property
    def coords_table(self) -> tuple[tuple[int, ...], ...]:
        ranges = [range(1, a + 1) for a in self.lengths]
        return tuple(itertools.product(*ranges))

    @cached_property
    def rank_table(self) -> tuple[int, ...]:
        base = len(self.lengths)
        return tuple(1 - base + sum(c) for c in self.coords_table)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        """upper_covers[i] lists indices of points covering point i."""
        out = []
        for i, coords in enumerate(self.coords_table):
            ups = tuple(
                i + s
                for x, a, s in zip(coords, self.lengths, self.strides)
                if x < a
            )
            out.append(ups)
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        """lower_covers[i] lists indices of points covered by point i."""
        out = []
        for i, coords in enumerate(self.coords_table):
            out.append(tuple(i - s for x, s in zip(coords, self.strides) if x > 1))
        return tuple(out)

    @cached_property
    def lower_cover_masks(self) -> tuple[int, ...]:
        """Bitmask of lower covers per point; bit v set iff v is covered."""
        out = []
        for downs in self.lower_covers:
            mask = 0
            for d in downs:
                mask |= 1 << d
            out.append(mask)
        return tuple(out)

    def index_leq(self, i: int, j: int) -> bool:
        """Componentwise order test on canonical indices (no validation)."""
        ci, cj = self.coords_table[i], self.coords_table[j]
        return all(a <= b for a, b in zip(ci, cj))

    def __str__(self) -> str:
        return "x".join(str(a) for a in self.lengths)


@dataclass(frozen=True)
class Point:
    """A point of a grid poset: a shape plus a 1-based coordinate vector."""

    shape: GridShape
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(x) for x in self.coords)
        self.shape._check_coords(coords)
        object.__setattr__(self, "coords", coords)

    @property
    def rank(self) -> int:
        return 1 + sum(x - 1 for x in self.coords)

    @property
    def index(self) -> int:
        return sum((x - 1) * s for x, s in zip(self.coords, self.shape.strides))

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.coords) + ")"


@dataclass(frozen=True)
class RankLevel:
    """All points of one rank, in canonical index order."""

    rank: int
    members: tuple[Point, ...]

    @property
    def size(self) -> int:
        return len(self.members)


def _same_shape(p: Point, q: Point) -> GridShape:
    if p.shape != q.shape:
        raise ShapeMismatchError(f"points live on different shapes: {p.shape} vs {q.shape}")
    return p.shape


def leq(p: Point, q: Point) -> bool:
    """Componentwise order: p <= q iff every coordinate of p is <= q's."""
    _same_shape(p, q)
    return all(a <= b for a, b in zip(p.coords, q.coords))


def covers(q: Point, p: Point) -> bool:
    """True iff q covers p: q = p + e_j for a single coordinate j."""
    _same_shape(p, q)
    total = 0
    for a, b in zip(p.coords, q.coords):
        d = b - a
        if d < 0:
            return False
        total += d
    return total == 1


def up_degree(p: Point) -> int:
    """Number of upper covers of p inside the grid."""
    return sum(1 for x, a in zip(p.coords, p.shape.lengths) if x < a)


def rank_levels(shape: GridShape) -> tuple[RankLevel, ...]:
    """Points grouped by rank, each level in canonical index order."""
    buckets: list[list[Point]] = [[] for _ in range(shape.num_ranks)]
    for i, coords in enumerate(shape.coords_table):
        buckets[shape.rank_table[i] - 1].append(Point(shape, coords))
    return tuple(RankLevel(s + 1, tuple(b)) for s, b in enumerate(buckets))


def whitney_numbers(shape: GridShape) -> tuple[int, ...]:
    """Level sizes by rank, entry s = number of points of rank s+1.

    Computed by convolving the all-ones vectors of the chain lengths, which
    counts vectors by coordinate sum directly; rank_levels() gives an
    independent route for cross-checking.
    """
    w = [1]
    for a in shape.lengths:
        out = [0] * (len(w) + a - 1)
        for i, x in enumerate(w):
            for d in range(a):
                out[i + d] += x
        w = out
    return tuple(w)


def max_antichain_size(shape: GridShape) -> int:
    """Size of a largest antichain: the largest rank level.

    Grid posets have the Sperner property, so the widest rank level is a
    maximum antichain.  For n equal chains of length m the middle rank
    floor(n*(m-1)/2) + 1 attains it.
    """
    return max(whitney_numbers(shape))
