"""Rank statistics, reliability coefficients and significance tests.

Everything here is deterministic; the only randomness in the package flows
through :func:`random_baseline`, which is seeded explicitly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as sps

ICC_MODELS = ("one_way", "two_way_single", "two_way_average")


class StatsError(ValueError):
    pass


@dataclass(frozen=True)
class CorrelationResult:
    rho: float
    n: int
    p_value: float


@dataclass(frozen=True)
class ICCResult:
    icc: float
    model: str
    p_value: float


@dataclass(frozen=True)
class WilcoxonResult:
    w: float
    p_value: float
    n_nonzero: int
    all_zero: bool = False


def rank_with_ties(values) -> np.ndarray:
    """Ranks 1..n; tied values share the mean of the ranks they occupy."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise StatsError("cannot rank an empty sequence")
    order = np.argsort(v, kind="mergesort")
    sorted_v = v[order]
    group_start = np.empty(v.size, dtype=bool)
    group_start[0] = True
    np.not_equal(sorted_v[1:], sorted_v[:-1], out=group_start[1:])
    group_id = np.cumsum(group_start) - 1
    counts = np.bincount(group_id)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    mean_rank = starts + (counts - 1) / 2.0 + 1.0
    ranks = np.empty(v.size, dtype=float)
    ranks[order] = mean_rank[group_id]
    return ranks


def spearman(x, y) -> CorrelationResult:
    """Spearman rho = Pearson correlation of tie-averaged ranks.

    Two-sided p via t = rho*sqrt((n-2)/(1-rho^2)) on n-2 degrees of freedom.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise StatsError("inputs must be equal-length 1-d sequences")
    n = x.size
    if n < 3:
        raise StatsError(f"need n >= 3 samples, got {n}")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise StatsError("correlation undefined for constant input")
    rx = rank_with_ties(x) - (n + 1) / 2.0
    ry = rank_with_ties(y) - (n + 1) / 2.0
    rho = float(np.dot(rx, ry) / math.sqrt(np.dot(rx, rx) * np.dot(ry, ry)))
    rho = max(-1.0, min(1.0, rho))
    if abs(rho) == 1.0:
        p = 0.0
    else:
        t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
        p = float(2.0 * sps.t.sf(abs(t), df=n - 2))
    return CorrelationResult(rho=rho, n=n, p_value=p)


def williams_test(r12: float, r13: float, r23: float, n: int) -> tuple[float, float]:
    """Williams' t for the difference of two dependent correlations.

    Tests r12 vs r13 where variable 1 is shared; two-sided p on n-3 degrees
    of freedom.
    """
    for r in (r12, r13, r23):
        if abs(r) > 1:
            raise StatsError(f"correlation {r} outside [-1,1]")
    if n < 4:
        raise StatsError(f"need n >= 4, got {n}")
    k = 1.0 - r12 * r12 - r13 * r13 - r23 * r23 + 2.0 * r12 * r13 * r23
    if k <= 0:
        raise StatsError(f"degenerate correlation matrix (K={k:.6g})")
    rbar = (r12 + r13) / 2.0
    denom = 2.0 * k * (n - 1) / (n - 3) + rbar * rbar * (1.0 - r23) ** 3
    t = (r12 - r13) * math.sqrt((n - 1) * (1.0 + r23) / denom)
    p = float(2.0 * sps.t.sf(abs(t), df=n - 3))
    return t, p


def fisher_z_test(r1: float, n1: int, r2: float, n2: int) -> tuple[float, float]:
    """Fisher z for the difference of two independent correlations."""
    if n1 < 4 or n2 < 4:
        raise StatsError("need n >= 4 in both groups")
    z1 = math.atanh(max(-0.999999, min(0.999999, r1)))
    z2 = math.atanh(max(-0.999999, min(0.999999, r2)))
    z = (z1 - z2) / math.sqrt(1.0 / (n1 - 3) + 1.0 / (n2 - 3))
    p = float(2.0 * sps.norm.sf(abs(z)))
    return z, p


def icc(ratings, model: str = "two_way_single") -> ICCResult:
    """Intra-class correlation from a complete items x raters matrix.

    Two-way models use the random-effects ANOVA decomposition; the F test
    is MS_rows over the relevant error term.
    """
    if model not in ICC_MODELS:
        raise StatsError(f"unknown ICC model {model!r}")
    x = np.asarray(ratings, dtype=float)
    if x.ndim != 2:
        raise StatsError("ratings must be a 2-d matrix")
    n, k = x.shape
    if n < 2 or k < 2:
        raise StatsError(f"need >= 2 items and >= 2 raters, got {n}x{k}")
    if np.isnan(x).any():
        raise StatsError("ratings matrix is incomplete")

    grand = x.mean()
    ss_total = float(((x - grand) ** 2).sum())
    ss_rows = float(k * ((x.mean(axis=1) - grand) ** 2).sum())
    ss_cols = float(n * ((x.mean(axis=0) - grand) ** 2).sum())

    ms_rows = ss_rows / (n - 1)
    if model == "one_way":
        ms_within = (ss_total - ss_rows) / (n * (k - 1))
        coeff = _safe_ratio(ms_rows - ms_within, ms_rows + (k - 1) * ms_within)
        f_value = _safe_ratio(ms_rows, ms_within, inf_on_zero=True)
        df2 = n * (k - 1)
    else:
        ms_err = (ss_total - ss_rows - ss_cols) / ((n - 1) * (k - 1))
        ms_err = max(ms_err, 0.0)
        ms_cols = ss_cols / (k - 1)
        if model == "two_way_single":
            denom = ms_rows + (k - 1) * ms_err + k * (ms_cols - ms_err) / n
        else:
            denom = ms_rows + (ms_cols - ms_err) / n
        coeff = _safe_ratio(ms_rows - ms_err, denom)
        f_value = _safe_ratio(ms_rows, ms_err, inf_on_zero=True)
        df2 = (n - 1) * (k - 1)
    p = float(sps.f.sf(f_value, n - 1, df2)) if math.isfinite(f_value) else 0.0
    return ICCResult(icc=coeff, model=model, p_value=p)


def _safe_ratio(num: float, den: float, inf_on_zero: bool = False) -> float:
    if den == 0.0:
        if inf_on_zero:
            return math.inf if num > 0 else 0.0
        return 0.0
    return num / den


def wilcoxon_signed_rank(a, b, exact_threshold: int = 12) -> WilcoxonResult:
    """Paired Wilcoxon signed-rank test, W = min(W+, W-).

    Zero differences are dropped.  Exact two-sided p by sign enumeration
    when the nonzero count is <= ``exact_threshold``, otherwise a normal
    approximation with tie and continuity corrections.  All differences
    zero gives p = 1, flagged via ``all_zero``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise StatsError("inputs must be equal-length 1-d sequences")
    diffs = a - b
    diffs = diffs[diffs != 0]
    n = diffs.size
    if n == 0:
        return WilcoxonResult(w=0.0, p_value=1.0, n_nonzero=0, all_zero=True)

    ranks = rank_with_ties(np.abs(diffs))
    w_plus = float(ranks[diffs > 0].sum())
    w_minus = float(ranks[diffs < 0].sum())
    w = min(w_plus, w_minus)

    if n <= exact_threshold:
        count = 0
        total = 2 ** n
        for signs in itertools.product((0, 1), repeat=n):
            t_plus = sum(r for r, s in zip(ranks, signs) if s)
            if min(t_plus, ranks.sum() - t_plus) <= w + 1e-12:
                count += 1
        p = min(1.0, count / total)
    else:
        mean = n * (n + 1) / 4.0
        tie_term = 0.0
        _, tie_counts = np.unique(ranks, return_counts=True)
        for t in tie_counts:
            tie_term += (t ** 3 - t) / 48.0
        var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
        if var <= 0:
            return WilcoxonResult(w=w, p_value=1.0, n_nonzero=n)
        z = (w - mean + 0.5) / math.sqrt(var)
        p = min(1.0, float(2.0 * sps.norm.cdf(z)))
    return WilcoxonResult(w=w, p_value=p, n_nonzero=n)


def mann_whitney_u(a, b) -> tuple[float, float]:
    """Two-sided Mann-Whitney U via scipy (asymptotic, tie-corrected)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise StatsError("both samples must be non-empty")
    res = sps.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic")
    return float(res.statistic), float(res.pvalue)


def random_baseline(n: int, seed: int) -> list[float]:
    """n uniform [0,1) deviates from numpy's PCG64; fixed seed, fixed list."""
    if n < 0:
        raise StatsError(f"n must be >= 0, got {n}")
    gen = np.random.Generator(np.random.PCG64(seed))
    return gen.random(n).tolist()
