"""Random generation of linear extensions and empirical statistics.

Two samplers are provided:

- Exact: walks down the down-set lattice, drawing each next point among the
  current pits with probability proportional to the number of completions
  of the enlarged prefix (shared with the counting engine).  Output is
  exactly uniform over all extensions.
- Random walk: a lazy chain on extensions that repeatedly picks a position
  and swaps the consecutive pair there when incomparable.  Its stationary
  distribution is uniform; no mixing-time guarantee is asserted, callers
  choose the step count and the code reports empirical distances only.

Determinism contract (external, bit-exact):

- The exact sampler and the scalar walk consume one stream of 64-bit words
  from numpy's PCG64 bit generator seeded with SeedSequence(seed); word i is
  the i-th output of random_raw.
- randbelow(n): let k = n.bit_length(); assemble ceil(k/64) consecutive
  words big-endian (earlier word more significant) and keep the top k bits
  of that block; reject values >= n and redraw.  A unit float in [0, 1) is
  one word >> 11, times 2^-53.
- Exact sampler step: draw r = randbelow(g(D)) and scan the pits of D in
  increasing canonical index, subtracting each pit's completion count from
  r until it fits.
- Scalar walk step: draw the position k = 1 + randbelow(size - 1), then the
  laziness coin as one unit float; hold when coin < laziness, else swap
  positions k, k+1 if incomparable.
- The vectorized walk ensemble draws from numpy Generator(PCG64(seed)):
  per step one integers(1, size, size=chains) batch, then one
  random(chains) batch; chain c holds when its coin is < laziness.

For parallel use, derive stream i from SeedSequence((seed, i)).
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
from scipy import stats as _scipy_stats

from .bounds import pits_threshold
from .counting import completion_counts, count_extensions
from .errors import DomainError, ResourceCapError
from .grid import GridShape
from .jumps import LinearExtension, jump_times, pits_counts, rank_lex_indices
from .transposition import enumerate_index_orders

__all__ = [
    "SamplerConfig",
    "WordStream",
    "ExactSampler",
    "sample_exact",
    "sample_mcmc",
    "mcmc_ensemble",
    "JumpStats",
    "sample_orders",
    "jump_stats_from_orders",
    "empirical_jump_stats",
    "EntropyProfile",
    "entropy_profile_exact",
    "pits_deficit_fraction",
    "pits_deficit_stats",
    "exact_pits_deficit_fraction",
    "exact_pits_deficit_fractions",
    "ChiSquareResult",
    "chi_square_uniformity",
    "tv_distance_from_uniform",
]


@dataclass(frozen=True)
class SamplerConfig:
    """How to draw random extensions: method, seed, and walk parameters."""

    method: str = "exact"
    seed: int = 0
    mcmc_steps: int = 10_000
    laziness: float = 0.5

    def __post_init__(self):
        if self.method not in ("exact", "mcmc"):
            raise DomainError(f"method must be 'exact' or 'mcmc', got {self.method!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError(f"seed must be a 64-bit nonnegative integer, got {self.seed}")
        if int(self.mcmc_steps) < 0:
            raise DomainError(f"mcmc_steps must be >= 0, got {self.mcmc_steps}")
        if not 0.0 <= float(self.laziness) <= 1.0:
            raise DomainError(f"laziness must be in [0, 1], got {self.laziness}")
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "mcmc_steps", int(self.mcmc_steps))
        object.__setattr__(self, "laziness", float(self.laziness))


class WordStream:
    """Buffered 64-bit word stream with the documented seed-to-stream mapping.

    Buffering never changes the stream: word i is always the i-th
    random_raw output of PCG64(SeedSequence(seed)).
    """

    def __init__(self, seed: int, buffer_size: int = 4096):
        if not 0 <= int(seed) < 2**64:
            raise DomainError(f"seed must be a 64-bit nonnegative integer, got {seed}")
        self._bitgen = np.random.PCG64(np.random.SeedSequence(int(seed)))
        self._buffer_size = int(buffer_size)
        self._buf = None
        self._pos = 0

    def word(self) -> int:
        """Next raw 64-bit word."""
        if self._buf is None or self._pos >= len(self._buf):
            self._buf = self._bitgen.random_raw(self._buffer_size)
            self._pos = 0
        w = int(self._buf[self._pos])
        self._pos += 1
        return w

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by top-bits rejection."""
        if n <= 0:
            raise DomainError(f"need n >= 1, got {n}")
        if n == 1:
            return 0
        k = n.bit_length()
        words = -(-k // 64)
        shift = 64 * words - k
        while True:
            v = 0
            for _ in range(words):
                v = v << 64 | self.word()
            v >>= shift
            if v < n:
                return v

    def unit(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.word() >> 11) * 2.0**-53


class ExactSampler:
    """Draws exactly uniform extensions of one shape from a single stream.

    Builds (or reuses) the completion-count table once; each sample walks
    the lattice from the empty down-set, choosing the next point among the
    current pits with weight g(D + v).  Samples from one instance form one
    deterministic sequence per seed.
    """

    def __init__(self, shape: GridShape, seed: int, state_cap: int | None = None):
        self.shape = shape
        self.seed = int(seed)
        self._g = completion_counts(shape, state_cap)
        self._stream = WordStream(seed)
        self._ups = shape.upper_covers
        self._masks = shape.lower_cover_masks

    def sample_indices(self) -> tuple[int, ...]:
        """One uniform extension as a raw index tuple."""
        g = self._g
        ups = self._ups
        masks = self._masks
        placed = 0
        pits = [v for v, m in enumerate(masks) if m == 0]
        out = []
        for _ in range(self.shape.size):
            r = self._stream.below(g[placed])
            chosen = -1
            for v in pits:
                w = g[placed | 1 << v]
                if r < w:
                    chosen = v
                    break
                r -= w
            assert chosen >= 0, "weights of the pits must sum to g(D)"
            placed |= 1 << chosen
            fresh = [u for u in ups[chosen] if not (masks[u] & ~placed)]
            pits.remove(chosen)
            if fresh:
                pits = sorted(pits + fresh)
            out.append(chosen)
        return tuple(out)

    def sample(self) -> LinearExtension:
        return LinearExtension(self.shape, self.sample_indices())

    def sample_many(self, count: int) -> list[LinearExtension]:
        if count < 0:
            raise DomainError(f"need count >= 0, got {count}")
        return [self.sample() for _ in range(count)]


def sample_exact(shape: GridShape, seed: int, state_cap: int | None = None) -> LinearExtension:
    """First sample of a fresh exact sampler with the given seed."""
    return ExactSampler(shape, seed, state_cap).sample()


def _incomparable(p: tuple[int, ...], q: tuple[int, ...]) -> bool:
    return not (all(x <= y for x, y in zip(p, q)) or all(y <= x for x, y in zip(p, q)))


def sample_mcmc(
    shape: GridShape,
    cfg: SamplerConfig,
    start: LinearExtension | None = None,
) -> LinearExtension:
    """Run the lazy swap walk for cfg.mcmc_steps and return the final state.

    Starts from the points sorted by (rank, coordinates) unless `start` is
    given.  Exactly uniform only in the step limit; the caller owns the
    step budget.
    """
    if start is not None and start.shape != shape:
        raise DomainError(f"start extension lives on {start.shape}, not {shape}")
    order = list(start.indices) if start is not None else list(rank_lex_indices(shape))
    size = shape.size
    if size > 1 and cfg.mcmc_steps > 0:
        coords = shape.coords_table
        stream = WordStream(cfg.seed)
        laziness = cfg.laziness
        for _ in range(cfg.mcmc_steps):
            k = 1 + stream.below(size - 1)
            if stream.unit() < laziness:
                continue
            a, b = order[k - 1], order[k]
            if _incomparable(coords[a], coords[b]):
                order[k - 1], order[k] = b, a
    return LinearExtension(shape, tuple(order))


def _incomparability_matrix(shape: GridShape) -> np.ndarray:
    coords = np.array(shape.coords_table, dtype=np.int64)
    leq = np.all(coords[:, None, :] <= coords[None, :, :], axis=2)
    return ~(leq | leq.T)


def mcmc_ensemble(
    shape: GridShape,
    steps: int,
    chains: int,
    seed: int,
    laziness: float = 0.5,
    starts: np.ndarray | None = None,
) -> np.ndarray:
    """Run many independent lazy swap walks at once (vectorized).

    Returns an int64 array of final states, one row per chain.  All chains
    start at the rank-sorted extension unless `starts` (a (chains, size)
    array of trusted valid extensions) is given.  Uses the documented
    Generator draw pattern, so results are reproducible per seed.
    """
    if steps < 0:
        raise DomainError(f"need steps >= 0, got {steps}")
    if chains < 0:
        raise DomainError(f"need chains >= 0, got {chains}")
    if not 0.0 <= laziness <= 1.0:
        raise DomainError(f"laziness must be in [0, 1], got {laziness}")
    size = shape.size
    if starts is None:
        arr = np.tile(np.array(rank_lex_indices(shape), dtype=np.int64), (chains, 1))
    else:
        arr = np.array(starts, dtype=np.int64)
        if arr.shape != (chains, size):
            raise DomainError(f"starts must have shape ({chains}, {size}), got {arr.shape}")
    if chains == 0 or steps == 0 or size <= 1:
        return arr
    incomparable = _incomparability_matrix(shape)
    rng = np.random.default_rng(seed)
    rows = np.arange(chains)
    for _ in range(steps):
        ks = rng.integers(1, size, size=chains)
        coins = rng.random(chains)
        a = arr[rows, ks - 1]
        b = arr[rows, ks]
        move = (coins >= laziness) & incomparable[a, b]
        r = rows[move]
        kk = ks[move]
        arr[r, kk - 1] = b[move]
        arr[r, kk] = a[move]
    return arr


def sample_orders(shape: GridShape, cfg: SamplerConfig, samples: int) -> Iterator[tuple[int, ...]]:
    """Draw `samples` extensions as raw index tuples per the config.

    The exact method streams from one ExactSampler; the walk method runs
    one vectorized ensemble of `samples` chains.
    """
    if samples <= 0:
        raise DomainError(f"need samples >= 1, got {samples}")
    if cfg.method == "exact":
        sampler = ExactSampler(shape, cfg.seed)
        for _ in range(samples):
            yield sampler.sample_indices()
    else:
        finals = mcmc_ensemble(shape, cfg.mcmc_steps, samples, cfg.seed, cfg.laziness)
        for row in finals.tolist():
            yield tuple(row)


@dataclass(frozen=True)
class JumpStats:
    """Monte-Carlo jump/pits statistics over sampled extensions."""

    samples: int
    mean_degree: float
    degree_stderr: float
    degree_histogram: Mapping[int, int]
    mean_pits_profile: tuple[float, ...]
    pits_profile_stderr: tuple[float, ...]


def _mean_stderr(total: float, total_sq: float, n: int) -> tuple[float, float]:
    mean = total / n
    if n < 2:
        return mean, 0.0
    var = max(0.0, (total_sq - n * mean * mean) / (n - 1))
    return mean, math.sqrt(var / n)


def jump_stats_from_orders(shape: GridShape, orders: Iterable[Sequence[int]]) -> JumpStats:
    """Jump/pits statistics of an explicit batch of trusted index orders.

    Standard errors use the sample standard deviation (zero for a single
    draw).  The mean degree estimates the average vertex degree of the
    swap graph.
    """
    size = shape.size
    deg_total = 0.0
    deg_total_sq = 0.0
    histogram: Counter[int] = Counter()
    pit_total = [0.0] * size
    pit_total_sq = [0.0] * size
    n = 0
    for order in orders:
        d = len(jump_times(shape, order))
        deg_total += d
        deg_total_sq += d * d
        histogram[d] += 1
        for k, c in enumerate(pits_counts(shape, order)):
            pit_total[k] += c
            pit_total_sq[k] += c * c
        n += 1
    if n == 0:
        raise DomainError("need at least one order")
    mean_deg, se_deg = _mean_stderr(deg_total, deg_total_sq, n)
    profile = []
    profile_se = []
    for k in range(size):
        mean_k, se_k = _mean_stderr(pit_total[k], pit_total_sq[k], n)
        profile.append(mean_k)
        profile_se.append(se_k)
    return JumpStats(
        samples=n,
        mean_degree=mean_deg,
        degree_stderr=se_deg,
        degree_histogram=dict(sorted(histogram.items())),
        mean_pits_profile=tuple(profile),
        pits_profile_stderr=tuple(profile_se),
    )


def empirical_jump_stats(shape: GridShape, cfg: SamplerConfig, samples: int) -> JumpStats:
    """Estimate the mean jump count and pits profile from `samples` draws."""
    return jump_stats_from_orders(shape, sample_orders(shape, cfg, samples))


@dataclass(frozen=True)
class EntropyProfile:
    """Conditional entropies of an extension drawn uniformly, in bits.

    Entry k (1-based, k = 1..size-1) is the entropy of the (k+1)-th point
    given the set of the first k points.  The entries sum to lg(count):
    the first point of a grid is forced, so it contributes nothing.
    """

    h: tuple[float, ...]

    @property
    def total_bits(self) -> float:
        return math.fsum(self.h)


def entropy_profile_exact(
    shape: GridShape,
    cap: int | None = None,
    state_cap: int | None = None,
) -> EntropyProfile:
    """Exact conditional entropy profile by full enumeration.

    Groups all extensions by the down-set of their first k points and
    averages the entropy of the next-point distribution over groups.  This
    route is independent of the counting DP, so comparing the profile's sum
    against lg(count) cross-checks the two engines.  Refuses shapes with
    more than `cap` extensions (default 10^5).
    """
    cap = 10**5 if cap is None else int(cap)
    total = count_extensions(shape, cap=state_cap)
    if total > cap:
        raise ResourceCapError(
            f"shape {shape} has {total} extensions, above the entropy enumeration cap of {cap}",
            cap=cap,
        )
    size = shape.size
    if size == 1:
        return EntropyProfile(())
    # next_by_prefix[k][D][v]: extensions whose first k points form down-set
    # D and continue with v.  Grouping by the set, not the ordered prefix,
    # matches the conditional entropy being computed.
    next_by_prefix: list[defaultdict] = [defaultdict(Counter) for _ in range(size)]
    for order in enumerate_index_orders(shape, cap=cap, state_cap=state_cap):
        placed = 1 << order[0]
        for k in range(1, size):
            next_by_prefix[k][placed][order[k]] += 1
            placed |= 1 << order[k]
    h = []
    for k in range(1, size):
        contributions = []
        for counter in next_by_prefix[k].values():
            group = sum(counter.values())
            group_h = -math.fsum(c / group * math.log2(c / group) for c in counter.values())
            contributions.append(group / total * group_h)
        h.append(max(0.0, math.fsum(contributions)))
    return EntropyProfile(tuple(h))


def _deficit_threshold(shape: GridShape, R: float) -> float:
    if not shape.is_equilateral:
        raise DomainError(f"pits thresholds are defined for equal chain lengths, got {shape}")
    return pits_threshold(shape.lengths[0], shape.num_chains, R)


def pits_deficit_stats(
    shape: GridShape,
    cfg: SamplerConfig,
    samples: int,
    R: float,
) -> tuple[float, float]:
    """Monte-Carlo mean and standard error of the low-pits time fraction.

    For each sampled extension, the fraction of times k in [1, size] whose
    pit count falls below the threshold 2^{-R} (m e / 2)^{n-1}.
    """
    threshold = _deficit_threshold(shape, R)
    size = shape.size
    total = 0.0
    total_sq = 0.0
    n = 0
    for order in sample_orders(shape, cfg, samples):
        t = sum(1 for c in pits_counts(shape, order) if c < threshold)
        frac = t / size
        total += frac
        total_sq += frac * frac
        n += 1
    return _mean_stderr(total, total_sq, n)


def pits_deficit_fraction(shape: GridShape, cfg: SamplerConfig, samples: int, R: float) -> float:
    """Monte-Carlo estimate of the expected low-pits time fraction."""
    return pits_deficit_stats(shape, cfg, samples, R)[0]


def exact_pits_deficit_fractions(
    shape: GridShape,
    Rs: Sequence[float],
    cap: int | None = None,
    state_cap: int | None = None,
) -> dict[float, Fraction]:
    """Exhaustive expected low-pits fractions for several R at once.

    Enumerates every extension once and evaluates all thresholds against
    its pits sequence; exact rational output (denominator count * size).
    """
    thresholds = {float(R): _deficit_threshold(shape, R) for R in Rs}
    size = shape.size
    deficits = {R: 0 for R in thresholds}
    seen = 0
    for order in enumerate_index_orders(shape, cap=cap, state_cap=state_cap):
        counts = pits_counts(shape, order)
        for R, threshold in thresholds.items():
            deficits[R] += sum(1 for c in counts if c < threshold)
        seen += 1
    return {R: Fraction(d, seen * size) for R, d in deficits.items()}


def exact_pits_deficit_fraction(
    shape: GridShape,
    R: float,
    cap: int | None = None,
    state_cap: int | None = None,
) -> Fraction:
    """Exhaustive expected low-pits fraction for one R."""
    return exact_pits_deficit_fractions(shape, [R], cap, state_cap)[float(R)]


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    dof: int
    pvalue: float


def chi_square_uniformity(observed: Sequence[int]) -> ChiSquareResult:
    """Chi-square test of the observed cell counts against equal expecteds.

    Pass the full support as cells (zeros included for unobserved cells).
    """
    obs = np.asarray(list(observed), dtype=float)
    if obs.size < 2:
        raise DomainError("need at least two cells")
    if np.any(obs < 0) or obs.sum() <= 0:
        raise DomainError("cell counts must be nonnegative with a positive total")
    res = _scipy_stats.chisquare(obs)
    return ChiSquareResult(float(res.statistic), int(obs.size - 1), float(res.pvalue))


def tv_distance_from_uniform(cell_counts: Iterable[int], support_size: int) -> float:
    """Total variation distance between empirical frequencies and uniform.

    `cell_counts` are the nonzero (or all) observed cell counts; cells of
    the support never observed contribute 1/support_size each.
    """
    cells = [int(c) for c in cell_counts]
    if support_size < len(cells) or support_size < 1:
        raise DomainError(f"support_size {support_size} smaller than the observed cell count {len(cells)}")
    if any(c < 0 for c in cells):
        raise DomainError("cell counts must be nonnegative")
    total = sum(cells)
    if total <= 0:
        raise DomainError("need a positive total count")
    p = 1.0 / support_size
    observed_part = math.fsum(abs(c / total - p) for c in cells)
    missing_part = (support_size - len(cells)) * p
    return 0.5 * (observed_part + missing_part)
