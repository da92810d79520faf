"""Monte Carlo driver, empirical reserve distributions and risk measures.

Replicate ``r`` always consumes stream id ``r`` of the master seed, and each
replicate's statistics are computed inside its own task and written into a
slot keyed by the replicate index.  Results are therefore bit-identical for
any worker count and any scheduling order.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .aggregate import MomentPair, reserve_breakdown, total_known_payments
from .errors import ParameterError
from .model import ModelParams, simulate_path, validate_params
from .streams import RandomStream

__all__ = [
    "DEFAULT_STATISTICS",
    "EmpiricalDistribution",
    "RiskReport",
    "SummaryStats",
    "build_risk_report",
    "expected_shortfall",
    "run_monte_carlo",
    "summary_stats",
    "value_at_risk",
]

DEFAULT_STATISTICS = ("ibnr_count", "ibnr_reserve", "reported_reserve", "total_reserve")

#: Snap tolerance when mapping a level to an order-statistic rank; absorbs
#: float fuzz in products like (1 - 0.95) * n without moving genuine ranks.
_RANK_EPS = 1e-9


@dataclass(eq=False)
class EmpiricalDistribution:
    """Sorted sample of one scalar statistic across MC replicates."""

    samples: np.ndarray
    statistic_name: str = ""

    def __post_init__(self):
        arr = np.array(self.samples, dtype=float)
        arr.sort()
        arr.flags.writeable = False
        self.samples = arr

    @property
    def replicate_count(self) -> int:
        return int(self.samples.size)

    def value_at_risk(self, level: float) -> float:
        return value_at_risk(self, level)

    def expected_shortfall(self, level: float) -> float:
        return expected_shortfall(self, level)


def _check_level(level: float) -> None:
    if not (0.0 < level < 1.0):
        raise ParameterError(f"level must lie strictly inside (0, 1), got {level!r}")


def value_at_risk(dist: EmpiricalDistribution, level: float) -> float:
    """Empirical VaR: the order statistic at 1-based rank ceil(level * R)."""
    _check_level(level)
    n = dist.replicate_count
    if n == 0:
        raise ValueError("value_at_risk of an empty distribution")
    rank = int(math.ceil(level * n - _RANK_EPS))
    rank = min(max(rank, 1), n)
    return float(dist.samples[rank - 1])


def expected_shortfall(dist: EmpiricalDistribution, level: float) -> float:
    """Mean of the ceil((1 - level) * R) largest samples; >= VaR at the same level."""
    _check_level(level)
    n = dist.replicate_count
    if n == 0:
        raise ValueError("expected_shortfall of an empty distribution")
    tail = int(math.ceil((1.0 - level) * n - _RANK_EPS))
    tail = min(max(tail, 1), n)
    return float(dist.samples[n - tail :].mean())


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    std_dev: float
    minimum: float
    maximum: float


def summary_stats(dist: EmpiricalDistribution) -> SummaryStats:
    """Sample mean and standard deviation (R-1 denominator), min and max.

    A single-replicate distribution reports a standard deviation of 0 with a
    warning rather than failing.
    """
    n = dist.replicate_count
    if n == 0:
        raise ValueError("summary_stats of an empty distribution")
    if n == 1:
        warnings.warn(
            "standard deviation of a single replicate reported as 0", UserWarning, stacklevel=2
        )
        std = 0.0
    else:
        std = float(dist.samples.std(ddof=1))
    return SummaryStats(
        mean=float(dist.samples.mean()),
        std_dev=std,
        minimum=float(dist.samples[0]),
        maximum=float(dist.samples[-1]),
    )


@dataclass(frozen=True)
class RiskReport:
    """Distribution summary plus tail risk measures for one statistic."""

    statistic_name: str
    replicate_count: int
    mean: float
    std_dev: float
    value_at_risk: dict[float, float] = field(default_factory=dict)
    expected_shortfall: dict[float, float] = field(default_factory=dict)
    analytic_mean: float | None = None
    analytic_std: float | None = None


def build_risk_report(
    dist: EmpiricalDistribution,
    levels,
    analytic: MomentPair | None = None,
) -> RiskReport:
    stats = summary_stats(dist)
    return RiskReport(
        statistic_name=dist.statistic_name,
        replicate_count=dist.replicate_count,
        mean=stats.mean,
        std_dev=stats.std_dev,
        value_at_risk={float(a): value_at_risk(dist, a) for a in levels},
        expected_shortfall={float(a): expected_shortfall(dist, a) for a in levels},
        analytic_mean=None if analytic is None else analytic.mean,
        analytic_std=None if analytic is None else analytic.std,
    )


def _statistic_row(path, names):
    breakdown = reserve_breakdown(path)
    row = []
    for name in names:
        if name == "known_payments":
            row.append(total_known_payments(path))
        else:
            row.append(float(getattr(breakdown, name)))
    return row


def run_monte_carlo(
    params: ModelParams,
    replicates: int,
    master_seed: int,
    statistics=DEFAULT_STATISTICS,
    *,
    workers: int = 1,
) -> dict[str, EmpiricalDistribution]:
    """Run independent replicates and collect per-replicate reserve statistics.

    Supported statistic names: ``ibnr_count``, ``ibnr_reserve``,
    ``reported_reserve``, ``total_reserve`` and ``known_payments``.
    """
    validate_params(params)
    if replicates < 1:
        raise ParameterError(f"replicates must be >= 1, got {replicates!r}")
    names = tuple(statistics)
    known = set(DEFAULT_STATISTICS) | {"known_payments"}
    bad = [n for n in names if n not in known]
    if bad:
        raise ParameterError(f"unknown statistics {bad}; supported: {sorted(known)}")

    values = np.empty((replicates, len(names)))

    def one(r: int):
        path = simulate_path(RandomStream(master_seed, r), params)
        return _statistic_row(path, names)

    if workers <= 1:
        for r in range(replicates):
            values[r] = one(r)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for r, row in enumerate(pool.map(one, range(replicates))):
                values[r] = row

    return {
        name: EmpiricalDistribution(values[:, c], statistic_name=name)
        for c, name in enumerate(names)
    }
