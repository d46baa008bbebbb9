"""Named verification suites: cross-checked relations with recorded values.

Each check names the operations and the relation it tests and records the
measured values, so a report never contains a bare pass/fail without
provenance.  Suites are deterministic functions of their configuration;
reports carry the package version and the fully resolved configuration.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from ._version import __version__
from .bounds import (
    avg_degree_lower_bound,
    almost_regular_fraction,
    factorial_convexity_holds,
    log_count_lower_bound,
    markov_tail_probability,
    pits_fraction_bound,
)
from .counting import (
    DEFAULT_STATE_CAP,
    count_extensions,
    count_root_window,
    factorial_product_lower_bound,
    hook_length_count,
    normalized_count_root,
    width_power_upper_bound,
)
from .errors import DomainError
from .grid import GridShape, max_antichain_size
from .jumps import jump_times, jumps, rank_lex_extension
from .sampling import (
    ExactSampler,
    SamplerConfig,
    chi_square_uniformity,
    entropy_profile_exact,
    exact_pits_deficit_fractions,
    mcmc_ensemble,
    pits_deficit_stats,
    sample_mcmc,
    tv_distance_from_uniform,
)
from .transposition import (
    DEFAULT_ENUM_CAP,
    backtracking_count,
    build_graph,
    enumerate_index_orders,
    exhaustive_mean_degree,
    graph_stats,
)

__all__ = ["VerifyConfig", "CheckResult", "SuiteReport", "SUITES", "run_suite"]

# (m, n) pairs whose normalized count root must sit in the closed window.
SANDWICH_MN = ((2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3))
# Mixed-chain shapes for the bound-ordering sweep, all of size <= 12.
MIXED_SHAPES = ((2, 3), (2, 5), (3, 4), (2, 2, 3), (2, 6))
# (m, n) pairs small enough for exhaustive graph construction.
EXTREMES_MN = ((2, 2), (3, 2), (2, 3), (4, 2))
ENTROPY_MN = ((2, 2), (3, 2), (2, 3))
DEFICIT_MN = ((3, 2), (4, 2))
DEFICIT_RS = (1.0, 2.0, 4.0)


@dataclass(frozen=True)
class VerifyConfig:
    """Resolved knobs for every suite; recorded verbatim in reports."""

    seed: int = 42
    state_cap: int = DEFAULT_STATE_CAP
    enum_cap: int = DEFAULT_ENUM_CAP
    chi_samples: int = 100_000
    tv_runs: int = 100_000
    tv_steps: int = 10_000
    deficit_samples: int = 20_000
    convexity_vectors: int = 10_000

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CheckResult:
    name: str
    relation: str
    observed: str
    expected: str
    passed: bool


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    config: VerifyConfig
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "version": __version__,
            "suite": self.suite,
            "config": self.config.to_dict(),
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (gridext {__version__})"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"{mark} {c.name}: {c.relation} [observed {c.observed}; expected {c.expected}]")
        good = sum(1 for c in self.checks if c.passed)
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"result: {verdict} ({good}/{len(self.checks)} checks)")
        return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _check(name: str, relation: str, observed, expected, passed: bool) -> CheckResult:
    return CheckResult(name, relation, _fmt(observed), _fmt(expected), bool(passed))


def suite_counting(cfg: VerifyConfig) -> SuiteReport:
    checks = []

    for lengths in ((3, 3), (2, 3)):
        shape = GridShape(lengths)
        dp = count_extensions(shape, cfg.state_cap)
        hook = hook_length_count(shape)
        checks.append(
            _check(
                f"{shape} count vs hook oracle",
                "count_extensions == hook_length_count",
                dp,
                hook,
                dp == hook,
            )
        )

    cube = GridShape.equilateral(2, 3)
    dp = count_extensions(cube, cfg.state_cap)
    listed = sum(1 for _ in enumerate_index_orders(cube, cfg.enum_cap, cfg.state_cap))
    checks.append(
        _check(
            f"{cube} count vs enumeration",
            "count_extensions == number of enumerated extensions",
            dp,
            listed,
            dp == listed,
        )
    )

    tesseract = GridShape.equilateral(2, 4)
    dp = count_extensions(tesseract, cfg.state_cap)
    brute = backtracking_count(tesseract)
    checks.append(
        _check(
            f"{tesseract} count vs backtracking oracle",
            "count_extensions == backtracking_count",
            dp,
            brute,
            dp == brute,
        )
    )

    ordered_shapes = [GridShape.equilateral(m, n) for m, n in SANDWICH_MN]
    ordered_shapes += [GridShape(lengths) for lengths in MIXED_SHAPES]
    for shape in ordered_shapes:
        lower = factorial_product_lower_bound(shape)
        count = count_extensions(shape, cfg.state_cap)
        upper = width_power_upper_bound(shape)
        checks.append(
            _check(
                f"{shape} bound ordering",
                "factorial_product_lower_bound <= count_extensions <= width_power_upper_bound",
                f"{lower} <= {count} <= {upper}",
                "nondecreasing",
                lower <= count <= upper,
            )
        )

    return SuiteReport("counting", cfg, tuple(checks))


def suite_bounds(cfg: VerifyConfig) -> SuiteReport:
    checks = []

    for m, n in SANDWICH_MN:
        shape = GridShape.equilateral(m, n)
        count = count_extensions(shape, cfg.state_cap)
        value = normalized_count_root(m, n, count)
        lo, hi = count_root_window(n)
        inside = lo - 1e-9 <= value <= hi + 1e-9
        checks.append(
            _check(
                f"normalized count root ({m},{n})",
                "normalized_count_root within count_root_window",
                f"{value:.12g} in [{lo:.12g}, {hi:.12g}]",
                "inside",
                inside,
            )
        )

    rng = np.random.default_rng(cfg.seed)
    good = 0
    for _ in range(cfg.convexity_vectors):
        length = int(rng.integers(1, 11))
        vec = rng.integers(1, 21, size=length).tolist()
        if factorial_convexity_holds(vec):
            good += 1
    checks.append(
        _check(
            "factorial log-convexity on random vectors",
            "factorial_convexity_holds true for every seeded vector",
            f"{good}/{cfg.convexity_vectors}",
            f"{cfg.convexity_vectors}/{cfg.convexity_vectors}",
            good == cfg.convexity_vectors,
        )
    )

    for m, n in SANDWICH_MN:
        report = log_count_lower_bound(m, n)
        count = count_extensions(GridShape.equilateral(m, n), cfg.state_cap)
        lg_count = math.log(count, 2)
        flag_correct = report.vacuous == (report.value <= 0)
        holds = report.vacuous or lg_count >= report.value - 1e-9
        checks.append(
            _check(
                f"count entropy lower bound ({m},{n})",
                "vacuous flag correct and lg(count) >= non-vacuous bound",
                f"bound {report.value:.6g} (vacuous={report.vacuous}), lg count {lg_count:.6g}",
                "flag matches sign; bound satisfied",
                flag_correct and holds,
            )
        )

    big = log_count_lower_bound(2**10, 2)
    checks.append(
        _check(
            "count entropy lower bound (2^10,2)",
            "bound positive and non-vacuous at very long chains",
            f"{big.value:.12g} (vacuous={big.vacuous})",
            f"{2**20 * 8.0:.12g} (vacuous=False)",
            (not big.vacuous) and math.isclose(big.value, 2**20 * 8.0, rel_tol=1e-12),
        )
    )

    for m, n in EXTREMES_MN:
        shape = GridShape.equilateral(m, n)
        report = avg_degree_lower_bound(m, n)
        mean_deg = exhaustive_mean_degree(shape, cfg.enum_cap, cfg.state_cap)
        holds = float(mean_deg) >= report.value - 1e-9
        checks.append(
            _check(
                f"average degree bound ({m},{n})",
                "exhaustive mean degree >= avg_degree_lower_bound (vacuous at desk scale)",
                f"mean {float(mean_deg):.6g} vs bound {report.value:.6g} (vacuous={report.vacuous})",
                "bound satisfied, vacuous=True",
                holds and report.vacuous,
            )
        )

    huge = avg_degree_lower_bound(2**192, 2)
    checks.append(
        _check(
            "average degree bound (2^192,2)",
            "non-vacuous with value half the grid size",
            f"{huge.value:.12g} (vacuous={huge.vacuous})",
            f"{0.5 * float(2**384):.12g} (vacuous=False)",
            (not huge.vacuous) and math.isclose(huge.value, 0.5 * float(2**384), rel_tol=1e-12),
        )
    )

    near = almost_regular_fraction(2**768, 2)
    desk = almost_regular_fraction(3, 2)
    checks.append(
        _check(
            "almost-regular fraction flags",
            "0.5 non-vacuous at lg m = 768; vacuous at m = 3",
            f"{near.value:.6g} (vacuous={near.vacuous}); {desk.value:.6g} (vacuous={desk.vacuous})",
            "0.5 (False); >= 1 (True)",
            math.isclose(near.value, 0.5, rel_tol=1e-12) and not near.vacuous and desk.vacuous,
        )
    )

    tail_flat = markov_tail_probability(1.0)
    tail_4 = markov_tail_probability(4.0)
    checks.append(
        _check(
            "tail probability flags",
            "delta=1 vacuous at 1; delta=4 gives 0.25",
            f"{tail_flat.value} (vacuous={tail_flat.vacuous}); {tail_4.value} (vacuous={tail_4.vacuous})",
            "1.0 (True); 0.25 (False)",
            tail_flat.vacuous
            and tail_flat.value == 1.0
            and not tail_4.vacuous
            and tail_4.value == 0.25,
        )
    )

    for m, n in DEFICIT_MN:
        shape = GridShape.equilateral(m, n)
        fractions = exact_pits_deficit_fractions(shape, DEFICIT_RS, cfg.enum_cap, cfg.state_cap)
        for R in DEFICIT_RS:
            bound = pits_fraction_bound(n, R)
            measured = fractions[R]
            checks.append(
                _check(
                    f"low-pits fraction ({m},{n}) R={R:g}",
                    "exhaustive deficit fraction <= pits_fraction_bound",
                    f"{float(measured):.6g} (= {measured})",
                    f"<= {bound.value:.6g} (vacuous={bound.vacuous})",
                    float(measured) <= bound.value + 1e-12,
                )
            )

    return SuiteReport("bounds", cfg, tuple(checks))


def suite_extremes(cfg: VerifyConfig) -> SuiteReport:
    checks = []
    for m, n in EXTREMES_MN:
        shape = GridShape.equilateral(m, n)
        graph = build_graph(shape, cfg.enum_cap, cfg.state_cap)
        stats = graph_stats(graph)
        size = shape.size

        checks.append(
            _check(
                f"{shape} max degree",
                "max vertex degree == m^n - 3",
                stats.max_degree,
                size - 3,
                stats.max_degree == size - 3,
            )
        )
        checks.append(
            _check(
                f"{shape} min degree",
                "min vertex degree == m^(n-1) - 1",
                stats.min_degree,
                m ** (n - 1) - 1,
                stats.min_degree == m ** (n - 1) - 1,
            )
        )
        rank_lex_deg = jumps(rank_lex_extension(shape)).degree
        checks.append(
            _check(
                f"{shape} rank-lex attains max",
                "jumps(rank_lex_extension).degree == max degree",
                rank_lex_deg,
                stats.max_degree,
                rank_lex_deg == stats.max_degree,
            )
        )
        bad_boundary = 0
        degree_mismatch = 0
        for i, vertex in enumerate(graph.vertices):
            times = jump_times(shape, vertex.indices)
            if 1 in times or (size - 1) in times:
                bad_boundary += 1
            if len(times) != graph.degree_sequence[i]:
                degree_mismatch += 1
        checks.append(
            _check(
                f"{shape} boundary times never jump",
                "no extension jumps at time 1 or size-1",
                f"{bad_boundary} offenders",
                "0 offenders",
                bad_boundary == 0,
            )
        )
        checks.append(
            _check(
                f"{shape} degree equals jump count",
                "graph degree == jumps(vertex).degree for every vertex",
                f"{degree_mismatch} mismatches",
                "0 mismatches",
                degree_mismatch == 0,
            )
        )
        checks.append(
            _check(
                f"{shape} connectivity",
                "swap graph connected",
                stats.connected,
                True,
                stats.connected,
            )
        )
        mean_by_jumps = Fraction(sum(graph.degree_sequence), stats.vertices)
        checks.append(
            _check(
                f"{shape} handshake",
                "2 edges / vertices == mean jump count (exact rationals)",
                f"{stats.avg_degree}",
                f"{mean_by_jumps}",
                stats.avg_degree == mean_by_jumps,
            )
        )
    return SuiteReport("extremes", cfg, tuple(checks))


def suite_entropy(cfg: VerifyConfig) -> SuiteReport:
    checks = []
    for m, n in ENTROPY_MN:
        shape = GridShape.equilateral(m, n)
        profile = entropy_profile_exact(shape, cap=10**5, state_cap=cfg.state_cap)
        count = count_extensions(shape, cfg.state_cap)
        lg_count = math.log(count, 2)
        rel_err = abs(profile.total_bits - lg_count) / max(1.0, abs(lg_count))
        checks.append(
            _check(
                f"{shape} chain rule",
                "sum of conditional entropies == lg(count) within 1e-9 relative",
                f"{profile.total_bits:.12g} vs {lg_count:.12g} (rel err {rel_err:.3g})",
                "<= 1e-9",
                rel_err <= 1e-9,
            )
        )
        ceiling = math.log2(max_antichain_size(shape))
        worst = max(profile.h) if profile.h else 0.0
        checks.append(
            _check(
                f"{shape} antichain ceiling",
                "every conditional entropy <= lg(max antichain size)",
                f"max entry {worst:.12g}",
                f"<= {ceiling:.12g}",
                worst <= ceiling + 1e-12,
            )
        )
    diamond = entropy_profile_exact(GridShape.equilateral(2, 2))
    checks.append(
        _check(
            "diamond profile",
            "profile of the 2x2 grid is (1, 0, 0): only the second point is uncertain",
            f"{tuple(round(x, 12) for x in diamond.h)}",
            "(1.0, 0.0, 0.0)",
            diamond.h == (1.0, 0.0, 0.0),
        )
    )
    return SuiteReport("entropy", cfg, tuple(checks))


def suite_sampling(cfg: VerifyConfig) -> SuiteReport:
    checks = []
    shape = GridShape.equilateral(3, 2)
    support = list(enumerate_index_orders(shape, cfg.enum_cap, cfg.state_cap))

    sampler = ExactSampler(shape, cfg.seed, cfg.state_cap)
    counts = Counter(sampler.sample_indices() for _ in range(cfg.chi_samples))
    unexpected = set(counts) - set(support)
    cells = [counts.get(o, 0) for o in support]
    chi = chi_square_uniformity(cells)
    checks.append(
        _check(
            "exact sampler support",
            "every sampled extension appears in the enumerated support",
            f"{len(unexpected)} foreign sequences",
            "0",
            not unexpected,
        )
    )
    checks.append(
        _check(
            "exact sampler uniformity",
            f"chi-square over {len(support)} cells, {cfg.chi_samples} samples, p > 0.01",
            f"stat {chi.statistic:.4f}, p {chi.pvalue:.4f}",
            "p > 0.01",
            chi.pvalue > 0.01,
        )
    )

    finals = mcmc_ensemble(shape, cfg.tv_steps, cfg.tv_runs, cfg.seed)
    walk_counts = Counter(map(tuple, finals.tolist()))
    tv = tv_distance_from_uniform(walk_counts.values(), len(support))
    checks.append(
        _check(
            "walk sampler distance",
            f"TV distance to uniform after {cfg.tv_steps} steps over {cfg.tv_runs} runs < 0.05",
            f"{tv:.5f}",
            "< 0.05",
            tv < 0.05,
        )
    )

    first = ExactSampler(shape, cfg.seed, cfg.state_cap)
    second = ExactSampler(shape, cfg.seed, cfg.state_cap)
    same_exact = all(first.sample_indices() == second.sample_indices() for _ in range(50))
    walk_cfg = SamplerConfig(method="mcmc", seed=cfg.seed, mcmc_steps=500)
    same_walk = sample_mcmc(shape, walk_cfg).indices == sample_mcmc(shape, walk_cfg).indices
    checks.append(
        _check(
            "determinism",
            "identical seeds reproduce identical samples byte-for-byte",
            f"exact={same_exact}, walk={same_walk}",
            "exact=True, walk=True",
            same_exact and same_walk,
        )
    )

    exact_frac = exact_pits_deficit_fractions(shape, [2.0], cfg.enum_cap, cfg.state_cap)[2.0]
    mc_mean, mc_se = pits_deficit_stats(
        shape, SamplerConfig(method="exact", seed=cfg.seed), cfg.deficit_samples, 2.0
    )
    slack = max(4 * mc_se, 1e-9)
    agree = abs(mc_mean - float(exact_frac)) <= slack
    checks.append(
        _check(
            "deficit estimator agreement",
            "Monte-Carlo low-pits fraction within 4 standard errors of the exhaustive value",
            f"{mc_mean:.6g} (se {mc_se:.2g}) vs exact {float(exact_frac):.6g}",
            f"|diff| <= {slack:.2g}",
            agree,
        )
    )

    return SuiteReport("sampling", cfg, tuple(checks))


SUITES = {
    "counting": suite_counting,
    "bounds": suite_bounds,
    "extremes": suite_extremes,
    "entropy": suite_entropy,
    "sampling": suite_sampling,
}


def run_suite(name: str, cfg: VerifyConfig | None = None) -> list[SuiteReport]:
    """Run one suite by name, or all of them with name 'all'."""
    cfg = cfg or VerifyConfig()
    if name == "all":
        return [fn(cfg) for fn in SUITES.values()]
    if name not in SUITES:
        known = ", ".join([*SUITES, "all"])
        raise DomainError(f"unknown suite {name!r}; available: {known}")
    return [SUITES[name](cfg)]
