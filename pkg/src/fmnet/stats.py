"""Distribution summaries and paired tests used for corpus reporting.

Conventions, chosen once and used everywhere:

- The median uses the midpoint rule for even-length samples.
- The 95% coverage interval spans the nearest-rank 2.5th and 97.5th
  percentiles: the k-th smallest value with k = ceil(q * n), clamped to the
  sample. It reports where the middle 95% of observed values lie; it is not
  a confidence interval for the median.
- Spearman correlation is the Pearson correlation of average ranks (ties get
  the mean of the positions they occupy) and is suppressed for fewer than 4
  pairs or when either side has no rank variance.
- The signed-rank test drops zero differences, average-ranks ties, takes W
  as the sum of ranks of positive differences, and approximates the null by
  a normal with tie-corrected variance and a 0.5 continuity correction. The
  p-value is one-sided in the direction named by ``alternative``; effect
  size is r = Z / sqrt(N) over the non-zero pairs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class Alternative(enum.Enum):
    """Direction of a one-sided paired comparison."""

    A_GREATER = "a_greater"
    B_GREATER = "b_greater"


@dataclass(frozen=True)
class StatsSummary:
    n: int
    median: float
    ci_low: float
    ci_high: float
    rho: float | None = None


@dataclass(frozen=True)
class WilcoxonResult:
    n_pairs: int
    n_effective: int
    w_statistic: float
    z_value: float
    p_value: float
    effect_size_r: float
    effect_label: str
    degenerate: bool

    def significant(self, alpha: float = 0.05) -> bool:
        return not self.degenerate and self.p_value < alpha


def effect_label(r: float) -> str:
    """Magnitude label for an effect size r."""
    magnitude = abs(r)
    if magnitude < 0.1:
        return "negligible"
    if magnitude < 0.3:
        return "small"
    if magnitude < 0.5:
        return "moderate"
    return "large"


def _nearest_rank(sorted_values: np.ndarray, quantile: float) -> float:
    n = len(sorted_values)
    rank = math.ceil(quantile * n)
    rank = min(max(rank, 1), n)
    return float(sorted_values[rank - 1])


def median_and_coverage(values: Sequence[float]) -> StatsSummary:
    """Median plus the 95% nearest-rank coverage interval."""
    if len(values) == 0:
        raise ValueError("cannot summarize an empty sample")
    data = np.asarray(values, dtype=float)
    ordered = np.sort(data)
    return StatsSummary(
        n=len(ordered),
        median=float(np.median(ordered)),
        ci_low=_nearest_rank(ordered, 0.025),
        ci_high=_nearest_rank(ordered, 0.975),
    )


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks; tied values share the mean of their positions."""
    data = np.asarray(values, dtype=float)
    order = np.argsort(data, kind="stable")
    ranks = np.empty(len(data), dtype=float)
    i = 0
    while i < len(data):
        j = i
        while j + 1 < len(data) and data[order[j + 1]] == data[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def spearman_rho(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Rank correlation; None when too short or rank-degenerate."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 4:
        return None
    rx = average_ranks(x)
    ry = average_ranks(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    denominator = math.sqrt(float(dx @ dx) * float(dy @ dy))
    if denominator == 0.0:
        return None
    return float(dx @ dy) / denominator


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def wilcoxon_signed_rank(
    a: Sequence[float],
    b: Sequence[float],
    alternative: Alternative | str,
) -> WilcoxonResult:
    """One-sided paired signed-rank test of a against b.

    ``alternative`` says which side is hypothesized larger. When every pair
    is tied the test carries no information; the result is flagged degenerate
    with the p = 0.5 convention, W = 0, Z = 0 and a negligible effect.
    """
    alternative = Alternative(alternative)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) == 0:
        raise ValueError("cannot test empty samples")

    differences = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    nonzero = differences[differences != 0.0]
    n = len(nonzero)
    if n == 0:
        return WilcoxonResult(
            n_pairs=len(a), n_effective=0, w_statistic=0.0, z_value=0.0,
            p_value=0.5, effect_size_r=0.0, effect_label=effect_label(0.0),
            degenerate=True,
        )

    ranks = average_ranks(np.abs(nonzero))
    w = float(ranks[nonzero > 0].sum())
    mean = n * (n + 1) / 4.0
    variance = n * (n + 1) * (2 * n + 1) / 24.0
    _, tie_counts = np.unique(np.abs(nonzero), return_counts=True)
    variance -= float(((tie_counts ** 3) - tie_counts).sum()) / 48.0
    sigma = math.sqrt(variance)

    if alternative is Alternative.A_GREATER:
        z = (w - mean - 0.5) / sigma
        p = _normal_sf(z)
    else:
        z = (w - mean + 0.5) / sigma
        # Lower tail as sf(-z), not 1 - sf(z): swapping the samples and the
        # direction then yields the exact same p, bit for bit.
        p = _normal_sf(-z)
    r = z / math.sqrt(n)
    return WilcoxonResult(
        n_pairs=len(a), n_effective=n, w_statistic=w, z_value=z,
        p_value=p, effect_size_r=r, effect_label=effect_label(r),
        degenerate=False,
    )


def summarize_metric(
    values: Sequence[float], sizes: Sequence[float] | None = None
) -> StatsSummary:
    """median_and_coverage plus, when sizes are given, rank correlation of
    the metric against model size."""
    summary = median_and_coverage(values)
    if sizes is None:
        return summary
    return StatsSummary(
        n=summary.n, median=summary.median,
        ci_low=summary.ci_low, ci_high=summary.ci_high,
        rho=spearman_rho(values, sizes),
    )
