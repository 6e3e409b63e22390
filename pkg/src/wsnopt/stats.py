"""Paired nonparametric comparison of algorithms: the Wilcoxon signed-rank
test (exact null distribution up to n = 25, tie-corrected normal
approximation with continuity correction beyond) and grouped summary
statistics over run records.

Zero differences are excluded and tied absolute differences receive
average ranks, the standard conventions. Exact p-values come from the
full null distribution of the positive-rank sum (every one of the 2^n
sign assignments, counted by dynamic programming over doubled ranks), so
they match literal sign-pattern enumeration to float precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

EXACT_LIMIT = 25

_ALTERNATIVES = ("two-sided", "greater", "less")


class UndefinedTestError(ValueError):
    """No nonzero differences remain; the signed-rank test is undefined."""


@dataclass(frozen=True)
class PairedSample:
    """Per-pair metric differences between two algorithms, zeros excluded."""

    labels: tuple[str, str]
    differences: tuple[float, ...]

    def __post_init__(self):
        kept = tuple(float(d) for d in self.differences if d != 0.0)
        object.__setattr__(self, "differences", kept)
        object.__setattr__(self, "labels", (str(self.labels[0]), str(self.labels[1])))

    @classmethod
    def from_pairs(
        cls, label_a: str, label_b: str,
        values_a: Sequence[float], values_b: Sequence[float],
    ) -> PairedSample:
        if len(values_a) != len(values_b):
            raise ValueError(
                f"paired samples must have equal length, got {len(values_a)} and {len(values_b)}"
            )
        diffs = tuple(float(a) - float(b) for a, b in zip(values_a, values_b))
        return cls(labels=(label_a, label_b), differences=diffs)


@dataclass(frozen=True)
class WilcoxonResult:
    w_statistic: float
    n_effective: int
    p_value: float
    method: str  # "exact" | "normal-approximation"


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with tied values sharing the average of their positions."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    sorted_vals = values[order]
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _exact_tail_counts(doubled_ranks: np.ndarray) -> np.ndarray:
    """ways[s] = number of sign assignments with doubled positive-rank sum s."""
    total = int(doubled_ranks.sum())
    ways = np.zeros(total + 1, dtype=np.int64)
    ways[0] = 1
    for r in doubled_ranks.tolist():
        ways[r:] = ways[r:] + ways[:total + 1 - r]
    return ways


def _exact_pvalue(ranks: np.ndarray, w_plus: float, alternative: str) -> float:
    doubled = np.rint(2.0 * ranks).astype(np.int64)
    w2 = int(round(2.0 * w_plus))
    total = int(doubled.sum())
    ways = _exact_tail_counts(doubled)
    denom = float(2 ** len(ranks))
    if alternative == "greater":
        return float(ways[w2:].sum()) / denom
    if alternative == "less":
        return float(ways[:w2 + 1].sum()) / denom
    w2_min = min(w2, total - w2)
    two = (float(ways[:w2_min + 1].sum()) + float(ways[total - w2_min:].sum())) / denom
    return min(1.0, two)


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _normal_pvalue(ranks: np.ndarray, w_plus: float, alternative: str) -> float:
    """Continuity-corrected normal tail with tie-corrected variance."""
    n = len(ranks)
    mean = n * (n + 1) / 4.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    tie_term = float((tie_counts.astype(np.float64) ** 3 - tie_counts).sum()) / 48.0
    var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
    sd = math.sqrt(var)
    if alternative == "greater":
        return _normal_sf((w_plus - mean - 0.5) / sd)
    if alternative == "less":
        return 1.0 - _normal_sf((w_plus - mean + 0.5) / sd)
    w_minus = n * (n + 1) / 2.0 - w_plus
    t = min(w_plus, w_minus)
    return min(1.0, 2.0 * (1.0 - _normal_sf((t - mean + 0.5) / sd)))


def wilcoxon_signed_rank(
    sample: PairedSample, alternative: str = "two-sided"
) -> WilcoxonResult:
    """Signed-rank test on a paired sample.

    alternative "greater" tests whether the first label's metric tends to
    exceed the second's. Exact whenever n_effective <= 25.
    """
    if alternative not in _ALTERNATIVES:
        raise ValueError(f"alternative must be one of {_ALTERNATIVES}, got {alternative!r}")
    diffs = np.asarray(sample.differences)
    if diffs.size == 0:
        raise UndefinedTestError(
            f"all differences between {sample.labels[0]} and {sample.labels[1]} "
            "are zero; the signed-rank test is undefined"
        )
    ranks = _average_ranks(np.abs(diffs))
    w_plus = float(ranks[diffs > 0].sum())
    w_minus = float(ranks[diffs < 0].sum())
    n = diffs.size
    if n <= EXACT_LIMIT:
        p = _exact_pvalue(ranks, w_plus, alternative)
        method = "exact"
    else:
        p = _normal_pvalue(ranks, w_plus, alternative)
        method = "normal-approximation"
    statistic = min(w_plus, w_minus) if alternative == "two-sided" else w_plus
    return WilcoxonResult(
        w_statistic=statistic, n_effective=n, p_value=p, method=method
    )


# ---------------------------------------------------------------------------
# Summary statistics

DEFAULT_SUMMARY_METRICS = (
    "n_nodes", "coverage", "connectivity_ratio", "energy_total", "wall_time",
)


def _get(record, key: str):
    if isinstance(record, dict):
        return record[key]
    return getattr(record, key)


def summarize_runs(
    records: Iterable,
    group_by: Sequence[str] = ("scenario_id", "algorithm"),
    metrics: Sequence[str] = DEFAULT_SUMMARY_METRICS,
) -> list[dict]:
    """Mean/sd/min/max/count of each metric per group, as long-format rows.

    Records may be dataclasses or dicts. Standard deviation is the sample
    one (ddof=1), reported as 0.0 for singleton groups.
    """
    records = list(records)
    if not records:
        raise ValueError("no records to summarize")
    groups: dict[tuple, list] = {}
    for record in records:
        key = tuple(_get(record, k) for k in group_by)
        groups.setdefault(key, []).append(record)
    rows = []
    for key in sorted(groups):
        members = groups[key]
        for metric in metrics:
            values = np.array([float(_get(r, metric)) for r in members])
            sd = float(values.std(ddof=1)) if len(values) > 1 else 0.0
            rows.append({
                **dict(zip(group_by, key)),
                "metric": metric,
                "mean": float(values.mean()),
                "sd": sd,
                "min": float(values.min()),
                "max": float(values.max()),
                "count": len(values),
            })
    return rows


def render_summary_table(rows: list[dict], floor_ints: bool = False) -> str:
    """Plain-text table; floor_ints floors mean/min/max for display only."""
    if not rows:
        return ""
    headers = list(rows[0].keys())
    rendered = []
    for row in rows:
        cells = []
        for h in headers:
            value = row[h]
            if isinstance(value, float):
                if floor_ints and h in ("mean", "min", "max"):
                    cells.append(str(math.floor(value)))
                else:
                    cells.append(f"{value:.6g}")
            else:
                cells.append(str(value))
        rendered.append(cells)
    widths = [max(len(h), *(len(r[i]) for r in rendered)) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)),
        "  ".join("-" * w for w in widths),
    ]
    for cells in rendered:
        lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)))
    return "\n".join(lines)
