"""Exact counting of linear extensions and closed-form count bounds.

The counting engine is a dynamic program over down-sets (order ideals): the
number of linear extensions that complete a down-set D is

    g(D) = sum over pits v of g(D + v),      g(whole grid) = 1,

where a pit is a minimal element of the complement.  The answer is g(empty).
States are visited level by level (by ideal cardinality), so the backward
accumulation never misses a successor.  The state space is the full down-set
lattice; a configurable cap refuses shapes where it would not fit in memory.

A DP state is the down-set's bitmask interpreted as a Python int; the int is
bit-for-bit the little-endian byte string of the bitset under the canonical
point-index contract (see grid module), so memo keys are exactly reproducible
across runs and platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import DomainError, ResourceCapError
from .grid import GridShape, Point, whitney_numbers

__all__ = [
    "DEFAULT_STATE_CAP",
    "DownSet",
    "completion_counts",
    "count_extensions",
    "hook_length_count",
    "factorial_product_lower_bound",
    "width_power_upper_bound",
    "normalized_count_root",
    "count_root_window",
]

# Default ceiling on the number of DP states (= down-sets) held in memory.
DEFAULT_STATE_CAP = 10**7


@dataclass(frozen=True)
class DownSet:
    """A downward-closed subset of a grid, encoded as a bitmask.

    Bit v is set iff the point with canonical index v is present.  Downward
    closure is checked eagerly: every lower cover of a member must also be a
    member.
    """

    shape: GridShape
    bits: int

    def __post_init__(self):
        bits = int(self.bits)
        if not 0 <= bits < (1 << self.shape.size):
            raise DomainError(f"bitmask {bits:#x} out of range for shape {self.shape} (size {self.shape.size})")
        masks = self.shape.lower_cover_masks
        rest = bits
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            missing = masks[v] & ~bits
            if missing:
                u = (missing & -missing).bit_length() - 1
                raise DomainError(
                    f"not downward closed: contains {self.shape.coords_table[v]} "
                    f"but not its lower cover {self.shape.coords_table[u]}"
                )
            rest ^= low
        object.__setattr__(self, "bits", bits)

    @classmethod
    def empty(cls, shape: GridShape) -> "DownSet":
        return cls(shape, 0)

    @classmethod
    def full(cls, shape: GridShape) -> "DownSet":
        return cls(shape, (1 << shape.size) - 1)

    @classmethod
    def from_points(cls, shape: GridShape, points: Iterable[Point]) -> "DownSet":
        bits = 0
        for p in points:
            if p.shape != shape:
                raise DomainError(f"point {p} belongs to shape {p.shape}, not {shape}")
            bits |= 1 << p.index
        return cls(shape, bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, item) -> bool:
        idx = item.index if isinstance(item, Point) else int(item)
        return bool(self.bits >> idx & 1)

    def points(self) -> tuple[Point, ...]:
        """Members in canonical index order."""
        return tuple(self.shape.point_at(v) for v in _iter_bits(self.bits))

    def add(self, p: Point) -> "DownSet":
        """New down-set with p added; rejects additions that break closure."""
        if p.shape != self.shape:
            raise DomainError(f"point {p} belongs to shape {p.shape}, not {self.shape}")
        return DownSet(self.shape, self.bits | 1 << p.index)

    def pit_indices(self) -> tuple[int, ...]:
        """Canonical indices of the pits: minimal elements of the complement."""
        return tuple(pit_bits(self.shape, self.bits))

    def pits(self) -> tuple[Point, ...]:
        return tuple(self.shape.point_at(v) for v in self.pit_indices())


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def pit_bits(shape: GridShape, bits: int):
    """Yield pit indices of the down-set `bits`, in increasing index order.

    A pit is a point outside the set all of whose lower covers are inside;
    trusts `bits` to encode a valid down-set.
    """
    masks = shape.lower_cover_masks
    rest = ~bits & ((1 << shape.size) - 1)
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        if not (masks[v] & ~bits):
            yield v
        rest ^= low


@lru_cache(maxsize=32)
def _completion_counts(shape: GridShape, cap: int) -> Mapping[int, int]:
    size = shape.size
    full = (1 << size) - 1
    masks = shape.lower_cover_masks

    # Forward pass: discover all down-sets, grouped by cardinality.
    levels: list[set[int]] = [set() for _ in range(size + 1)]
    levels[0].add(0)
    states = 1
    for k in range(size):
        nxt = levels[k + 1]
        for bits in levels[k]:
            rest = ~bits & full
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                if not (masks[v] & ~bits):
                    nxt.add(bits | low)
                rest ^= low
        states += len(nxt)
        if states > cap:
            raise ResourceCapError(
                f"down-set lattice of {shape} exceeds the state cap of {cap} "
                f"(more than {states} ideals); raise the cap to proceed",
                cap=cap,
            )

    # Backward pass: number of completions of each down-set.
    g: dict[int, int] = {full: 1}
    for k in range(size - 1, -1, -1):
        for bits in levels[k]:
            acc = 0
            rest = ~bits & full
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                if not (masks[v] & ~bits):
                    acc += g[bits | low]
                rest ^= low
            g[bits] = acc
    return MappingProxyType(g)


def completion_counts(shape: GridShape, cap: int | None = None) -> Mapping[int, int]:
    """Read-only map: down-set bitmask -> number of extensions completing it.

    The table for a shape is built once and shared across calls (results are
    identical to a private memo, so sharing is sound).  Raises
    ResourceCapError if the lattice exceeds `cap` states (default 10^7).
    """
    return _completion_counts(shape, DEFAULT_STATE_CAP if cap is None else int(cap))


def count_extensions(shape: GridShape, cap: int | None = None) -> int:
    """Exactly count the linear extensions of a grid shape."""
    return completion_counts(shape, cap)[0]


def hook_length_count(shape: GridShape) -> int:
    """Count extensions of a two-chain grid by the hook length formula.

    A two-chain grid's extensions correspond to standard fillings of an
    a x b rectangle, counted by (ab)! divided by the product of hooks.
    Independent of the down-set DP; used as a counting oracle.
    """
    if shape.num_chains != 2:
        raise DomainError(f"hook length formula needs exactly two chains, got {shape}")
    a, b = shape.lengths
    denom = 1
    for i in range(a):
        for j in range(b):
            denom *= (a - i) + (b - j) - 1
    count, rem = divmod(math.factorial(a * b), denom)
    assert rem == 0, "hook product must divide the factorial"
    return count


def factorial_product_lower_bound(shape: GridShape) -> int:
    """Product of factorials of the rank-level sizes; never exceeds the count.

    Any product of one permutation per rank level is a valid extension, so
    this undercounts.
    """
    return math.prod(math.factorial(w) for w in whitney_numbers(shape))


def width_power_upper_bound(shape: GridShape) -> int:
    """(size / longest chain) ** size, rounded up; never below the count.

    Every antichain of the grid has at most size/max_j a_j elements, and at
    each step of an extension the next point is chosen from an antichain.
    The base is carried as an exact rational and the power's ceiling is
    returned (for grids the base is in fact an integer).
    """
    base = Fraction(shape.size, max(shape.lengths))
    val = base**shape.size
    return -(-val.numerator // val.denominator)


def normalized_count_root(m: int, n: int, count: int) -> float:
    """m^{-1} * count^{1/((n-1) m^n)}: the normalized per-cell growth root.

    For equal-chain grids this value is squeezed into the fixed window given
    by count_root_window(n).  The root of the big integer is evaluated as
    exp(log(count)/t); math.log on an int is exact to double precision
    (>= 15 significant digits), far finer than the window's margins.
    """
    m, n = int(m), int(n)
    if n < 2:
        raise DomainError(f"need n >= 2 chains (exponent undefined below that), got n={n}")
    if m < 2:
        raise DomainError(f"need chain length m >= 2, got m={m}")
    if count < 1:
        raise DomainError(f"count must be a positive integer, got {count}")
    t = (n - 1) * m**n
    return math.exp(math.log(count) / t) / m


def count_root_window(n: int) -> tuple[float, float]:
    """Closed window [(1/(n e))^{1/(n-1)}, e/2] for the normalized root."""
    if n < 2:
        raise DomainError(f"need n >= 2, got n={n}")
    lo = (1.0 / (n * math.e)) ** (1.0 / (n - 1))
    return lo, math.e / 2
