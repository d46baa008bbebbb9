"""Linear extensions of grid posets: validation, jumps, pits, rank extremes.

A linear extension lists every point of the grid exactly once, never placing
a point before one below it.  Time k (1-based) is a jump when the elements at
positions k and k+1 are not a cover pair; on a grid consecutive elements are
always comparable-by-cover or incomparable, so jumps are exactly the
incomparable consecutive pairs.  A pit at time k is a minimal element of the
part of the grid not yet placed after k steps.

File format (external contract): one extension per line, canonical point
indices separated by single spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .counting import DownSet
from .errors import DomainError, InvalidExtensionError
from .grid import GridShape, Point

__all__ = [
    "LinearExtension",
    "JumpProfile",
    "PitsSequence",
    "jumps",
    "jump_times",
    "pits_sequence",
    "pits_counts",
    "rank_lex_indices",
    "rank_lex_extension",
    "first_of_rank",
    "last_of_rank",
    "read_extensions_file",
    "write_extensions_file",
]


def _validate_order(shape: GridShape, indices: tuple[int, ...]) -> None:
    size = shape.size
    if len(indices) != size:
        raise InvalidExtensionError(f"expected {size} points for shape {shape}, got {len(indices)}")
    coords = shape.coords_table
    masks = shape.lower_cover_masks
    placed = 0
    for pos, v in enumerate(indices, start=1):
        if not 0 <= v < size:
            raise InvalidExtensionError(f"index {v} at time {pos} out of range 0..{size - 1}", position=pos)
        bit = 1 << v
        if placed & bit:
            raise InvalidExtensionError(f"point {coords[v]} repeated at time {pos}", position=pos)
        missing = masks[v] & ~placed
        if missing:
            u = (missing & -missing).bit_length() - 1
            raise InvalidExtensionError(
                f"point {coords[v]} at time {pos} precedes its lower cover {coords[u]}",
                position=pos,
            )
        placed |= bit


@dataclass(frozen=True)
class LinearExtension:
    """An order-respecting arrangement of all points of a grid.

    `indices[k-1]` is the canonical index of the k-th point placed.
    Validation is eager: every instance is a genuine extension, and all
    downstream operations rely on that.
    """

    shape: GridShape
    indices: tuple[int, ...]

    def __post_init__(self):
        indices = tuple(int(v) for v in self.indices)
        _validate_order(self.shape, indices)
        object.__setattr__(self, "indices", indices)

    @classmethod
    def from_points(cls, shape: GridShape, points: Iterable[Point]) -> "LinearExtension":
        idx = []
        for p in points:
            if p.shape != shape:
                raise DomainError(f"point {p} belongs to shape {p.shape}, not {shape}")
            idx.append(p.index)
        return cls(shape, tuple(idx))

    @cached_property
    def order(self) -> tuple[Point, ...]:
        """The extension as Point objects."""
        return tuple(self.shape.point_at(v) for v in self.indices)

    def prefix(self, k: int) -> DownSet:
        """Down-set of the first k points placed (0 <= k <= size)."""
        if not 0 <= k <= len(self.indices):
            raise DomainError(f"prefix length {k} out of range 0..{len(self.indices)}")
        bits = 0
        for v in self.indices[:k]:
            bits |= 1 << v
        return DownSet(self.shape, bits)

    def __len__(self) -> int:
        return len(self.indices)

    def to_line(self) -> str:
        """Serialize per the extension file format."""
        return " ".join(str(v) for v in self.indices)

    @classmethod
    def from_line(cls, shape: GridShape, line: str) -> "LinearExtension":
        try:
            idx = tuple(int(tok) for tok in line.split())
        except ValueError as exc:
            raise InvalidExtensionError(f"malformed extension line: {line!r}") from exc
        return cls(shape, idx)


@dataclass(frozen=True)
class JumpProfile:
    """Sorted jump times of one extension; the degree is their number."""

    jump_times: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.jump_times)


@dataclass(frozen=True)
class PitsSequence:
    """counts[k-1] = number of pits after k placements, k = 1..size."""

    counts: tuple[int, ...]


def jump_times(shape: GridShape, indices: Sequence[int]) -> tuple[int, ...]:
    """Jump times of a raw index sequence (trusted to be a valid extension).

    Time k in [1, size-1] is a jump iff points k and k+1 are not a cover
    pair, which on a valid extension means they are incomparable.
    """
    coords = shape.coords_table
    out = []
    for k in range(1, len(indices)):
        p = coords[indices[k - 1]]
        q = coords[indices[k]]
        total = 0
        for x, y in zip(p, q):
            d = y - x
            if d < 0:
                total = -1
                break
            total += d
        if total != 1:
            out.append(k)
    return tuple(out)


def jumps(ext: LinearExtension) -> JumpProfile:
    """Jump profile of a validated extension."""
    return JumpProfile(jump_times(ext.shape, ext.indices))


def pits_counts(shape: GridShape, indices: Sequence[int]) -> tuple[int, ...]:
    """Pit counts after each placement of a raw index sequence (trusted).

    Maintained incrementally: placing v can only create pits among the
    points covering v, so the total work is O(size * chains).
    """
    masks = shape.lower_cover_masks
    ups = shape.upper_covers
    pits = {v for v, m in enumerate(masks) if m == 0}
    placed = 0
    out = []
    for v in indices:
        pits.discard(v)
        placed |= 1 << v
        for u in ups[v]:
            if not (masks[u] & ~placed):
                pits.add(u)
        out.append(len(pits))
    return tuple(out)


def pits_sequence(ext: LinearExtension) -> PitsSequence:
    """Pits sequence of a validated extension; the last entry is always 0."""
    return PitsSequence(pits_counts(ext.shape, ext.indices))


def rank_lex_indices(shape: GridShape) -> tuple[int, ...]:
    """Indices sorted by (rank, coordinate tuple); valid for any shape.

    Rank strictly increases along the order, so this is always a linear
    extension; it doubles as the deterministic start state for the
    random-walk sampler.
    """
    ranks = shape.rank_table
    coords = shape.coords_table
    return tuple(sorted(range(shape.size), key=lambda v: (ranks[v], coords[v])))


def rank_lex_extension(shape: GridShape) -> LinearExtension:
    """Rank-by-rank, lexicographic-within-rank extension of an equal-chain grid.

    This construction attains the maximum jump degree m^n - 3 among all
    extensions of [m]^n.  Restricted to equal chain lengths; the degree
    guarantee does not transfer to mixed shapes.
    """
    if not shape.is_equilateral:
        raise DomainError(f"rank-lex construction requires equal chain lengths, got {shape}")
    return LinearExtension(shape, rank_lex_indices(shape))


def _require_equilateral_rank(shape: GridShape, s: int) -> tuple[int, int]:
    if not shape.is_equilateral:
        raise DomainError(f"defined for equal chain lengths only, got {shape}")
    if not 1 <= s <= shape.num_ranks:
        raise DomainError(f"rank {s} out of range 1..{shape.num_ranks}")
    return shape.lengths[0], shape.num_chains


def first_of_rank(shape: GridShape, s: int) -> Point:
    """Lexicographically first point of rank s in an equal-chain grid.

    Greedy: scan coordinates left to right, giving each the least value
    that leaves the remaining coordinate sum achievable.  The first
    coordinate comes out as max(s - (n-1)(m-1), 1).
    """
    m, n = _require_equilateral_rank(shape, s)
    rem = s + n - 1  # coordinate sum of every rank-s point
    coords = []
    for j in range(n):
        x = max(1, rem - (n - 1 - j) * m)
        coords.append(x)
        rem -= x
    return Point(shape, tuple(coords))


def last_of_rank(shape: GridShape, s: int) -> Point:
    """Lexicographically last point of rank s; first coordinate is min(s, m)."""
    m, n = _require_equilateral_rank(shape, s)
    rem = s + n - 1
    coords = []
    for j in range(n):
        x = min(m, rem - (n - 1 - j))
        coords.append(x)
        rem -= x
    return Point(shape, tuple(coords))


def write_extensions_file(path, extensions: Iterable[LinearExtension]) -> int:
    """Write extensions one per line; returns the number written."""
    count = 0
    with open(path, "w", encoding="ascii") as fh:
        for ext in extensions:
            fh.write(ext.to_line())
            fh.write("\n")
            count += 1
    return count


def read_extensions_file(path, shape: GridShape) -> list[LinearExtension]:
    """Read and validate an extension file against a shape."""
    out = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(LinearExtension.from_line(shape, line))
            except InvalidExtensionError as exc:
                raise InvalidExtensionError(f"line {lineno}: {exc}", position=exc.position) from exc
    return out
