"""Exhaustive enumeration of linear extensions and the adjacent-swap graph.

Vertices are all linear extensions of one grid; two are adjacent when they
differ by swapping a consecutive incomparable pair.  The degree of a vertex
therefore equals the number of jumps of that extension, and edges can be
found by scanning each extension's jump times and looking up the swapped
sequence.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .counting import DEFAULT_STATE_CAP, count_extensions
from .errors import ResourceCapError
from .grid import GridShape
from .jumps import LinearExtension, jump_times

__all__ = [
    "DEFAULT_ENUM_CAP",
    "DEFAULT_BACKTRACK_CAP",
    "TranspositionGraph",
    "GraphStats",
    "enumerate_index_orders",
    "enumerate_extensions",
    "backtracking_count",
    "exhaustive_mean_degree",
    "build_graph",
    "graph_stats",
    "to_dot",
]

DEFAULT_ENUM_CAP = 10**6
DEFAULT_BACKTRACK_CAP = 10**7


def _orders(shape: GridShape) -> Iterator[tuple[int, ...]]:
    # Depth-first over pit choices; keeping the candidate list sorted makes
    # the output lexicographic in the index sequences.
    size = shape.size
    masks = shape.lower_cover_masks
    ups = shape.upper_covers
    prefix: list[int] = []

    def rec(placed: int, pits: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == size:
            yield tuple(prefix)
            return
        for i, v in enumerate(pits):
            now = placed | 1 << v
            fresh = [u for u in ups[v] if not (masks[u] & ~now)]
            prefix.append(v)
            yield from rec(now, sorted(pits[:i] + pits[i + 1 :] + fresh))
            prefix.pop()

    start = [v for v, m in enumerate(masks) if m == 0]
    yield from rec(0, start)


def enumerate_index_orders(
    shape: GridShape,
    cap: int | None = None,
    state_cap: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every extension as a raw index tuple, in lexicographic order.

    This is the bit-exact stream behind the extension file format.  Refuses
    to start when the exact count (from the counting engine, cheap at these
    scales) exceeds `cap` (default 10^6).
    """
    cap = DEFAULT_ENUM_CAP if cap is None else int(cap)
    total = count_extensions(shape, cap=state_cap)
    if total > cap:
        raise ResourceCapError(
            f"shape {shape} has {total} extensions, above the enumeration cap of {cap}",
            cap=cap,
        )
    return _orders(shape)


def enumerate_extensions(
    shape: GridShape,
    cap: int | None = None,
    state_cap: int | None = None,
) -> Iterator[LinearExtension]:
    """Yield every linear extension exactly once, deterministically ordered."""
    for idx in enumerate_index_orders(shape, cap, state_cap):
        yield LinearExtension(shape, idx)


def backtracking_count(shape: GridShape, cap: int | None = None) -> int:
    """Count extensions by exhausting the pit-choice tree, no memoization.

    Deliberately shares no state or recursion with the down-set DP so the
    two counts are independent; the flip side is exponential time, so this
    is an oracle for small shapes only.  Raises ResourceCapError beyond
    `cap` leaves (default 10^7).
    """
    cap = DEFAULT_BACKTRACK_CAP if cap is None else int(cap)
    size = shape.size
    masks = shape.lower_cover_masks
    ups = shape.upper_covers
    count = 0

    def rec(depth: int, placed: int, pits: tuple[int, ...]) -> None:
        nonlocal count
        if depth == size:
            count += 1
            if count > cap:
                raise ResourceCapError(
                    f"shape {shape} has more than {cap} extensions (backtracking cap)",
                    cap=cap,
                )
            return
        depth += 1
        for i, v in enumerate(pits):
            now = placed | 1 << v
            nxt = pits[:i] + pits[i + 1 :]
            for u in ups[v]:
                if not (masks[u] & ~now):
                    nxt += (u,)
            rec(depth, now, nxt)

    rec(0, 0, tuple(v for v, m in enumerate(masks) if m == 0))
    return count


def exhaustive_mean_degree(
    shape: GridShape,
    cap: int | None = None,
    state_cap: int | None = None,
) -> Fraction:
    """Exact average jump count over all extensions, as a fraction."""
    total = 0
    seen = 0
    for idx in enumerate_index_orders(shape, cap, state_cap):
        total += len(jump_times(shape, idx))
        seen += 1
    return Fraction(total, seen)


@dataclass(frozen=True)
class TranspositionGraph:
    """Adjacent-swap graph on all extensions of one grid.

    Vertex ids are positions in `vertices` (lexicographic order of index
    sequences); `edges` holds id pairs (i, j) with i < j;
    `degree_sequence[i]` is the degree of vertex i.
    """

    shape: GridShape
    vertices: tuple[LinearExtension, ...]
    edges: tuple[tuple[int, int], ...]
    degree_sequence: tuple[int, ...]


def build_graph(
    shape: GridShape,
    cap: int | None = None,
    state_cap: int | None = None,
) -> TranspositionGraph:
    """Build the full swap graph by exhaustive enumeration.

    Edges are discovered by scanning each vertex's incomparable consecutive
    pairs and looking the swapped sequence up in a vertex table, so each
    edge must be found exactly twice (once per endpoint); that handshake is
    asserted.
    """
    orders = list(enumerate_index_orders(shape, cap, state_cap))
    position = {o: i for i, o in enumerate(orders)}
    coords = shape.coords_table
    size = shape.size
    edges: list[tuple[int, int]] = []
    degrees = [0] * len(orders)

    for i, o in enumerate(orders):
        for k in range(size - 1):
            a, b = o[k], o[k + 1]
            ca, cb = coords[a], coords[b]
            if all(x <= y for x, y in zip(ca, cb)) or all(y <= x for x, y in zip(ca, cb)):
                continue
            swapped = o[:k] + (b, a) + o[k + 2 :]
            j = position[swapped]  # a legal swap always lands on a vertex
            degrees[i] += 1
            if i < j:
                edges.append((i, j))

    assert sum(degrees) == 2 * len(edges), "every edge must be discovered from both endpoints"
    vertices = tuple(LinearExtension(shape, o) for o in orders)
    return TranspositionGraph(shape, vertices, tuple(edges), tuple(degrees))


@dataclass(frozen=True)
class GraphStats:
    vertices: int
    edges: int
    min_degree: int
    max_degree: int
    avg_degree: Fraction
    degree_histogram: Mapping[int, int]
    connected: bool


def graph_stats(g: TranspositionGraph) -> GraphStats:
    """Degree statistics plus connectivity.

    The average degree is computed both as 2|E|/|V| and as the mean of the
    degree sequence; the two must agree as exact rationals.
    """
    nv = len(g.vertices)
    by_edges = Fraction(2 * len(g.edges), nv)
    by_degrees = Fraction(sum(g.degree_sequence), nv)
    assert by_edges == by_degrees, "handshake: edge count and degree sum disagree"

    adj: list[list[int]] = [[] for _ in range(nv)]
    for i, j in g.edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = bytearray(nv)
    queue = deque([0])
    seen[0] = 1
    reached = 1
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            if not seen[j]:
                seen[j] = 1
                reached += 1
                queue.append(j)

    histogram = dict(sorted(Counter(g.degree_sequence).items()))
    return GraphStats(
        vertices=nv,
        edges=len(g.edges),
        min_degree=min(g.degree_sequence),
        max_degree=max(g.degree_sequence),
        avg_degree=by_edges,
        degree_histogram=histogram,
        connected=reached == nv,
    )


def to_dot(g: TranspositionGraph) -> str:
    """DOT rendering; vertex labels are the extensions' index sequences."""
    lines = ["graph extensions {"]
    for i, ext in enumerate(g.vertices):
        lines.append(f'  v{i} [label="{ext.to_line()}"];')
    for i, j in g.edges:
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
