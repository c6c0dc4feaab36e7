"""Meta-evaluation analyses: system summaries, correlation tables, ranking
accuracy against a seeded random baseline, quantization, rating bins and
MR-type splits.

Every analysis is deterministic given (corpus, metric frame, seed, config);
groups too small or columns that are constant are skipped with a logged
warning and an explanatory note in the output cell.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field

from .corpus import Corpus, DIMENSIONS
from .stats import (
    StatsError, fisher_z_test, icc, mann_whitney_u, random_baseline, spearman,
    wilcoxon_signed_rank, williams_test, ICC_MODELS,
)
from .word_metrics import (
    GBM_FIELDS, METRIC_FIELDS, REVERSED_FIELDS, WBM_FIELDS, MetricVector,
)

log = logging.getLogger(__name__)

GROUPINGS = ("dataset_system", "dataset", "system")


class MetaEvalError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Metric frame: per-instance metric columns aligned with the corpus
# ---------------------------------------------------------------------------


@dataclass
class MetricFrame:
    fields: tuple[str, ...]
    columns: dict  # field -> list[float | None]

    @classmethod
    def from_vectors(cls, vectors: list[MetricVector]) -> "MetricFrame":
        columns = {f: [v.get(f) for v in vectors] for f in METRIC_FIELDS}
        return cls(fields=METRIC_FIELDS, columns=columns)

    def __len__(self) -> int:
        return len(next(iter(self.columns.values()), []))

    def column(self, name: str) -> list:
        return self.columns[name]


# ---------------------------------------------------------------------------
# Result records
# ---------------------------------------------------------------------------


@dataclass
class SummaryRow:
    dataset: str
    system: str
    field: str
    mean: float
    sd: float | None
    n: int
    p_value: float | None = None
    significant: bool = False


@dataclass
class CorrelationCell:
    metric: str
    dimension: str
    rho: float | None
    p_value: float | None
    n: int
    significant: bool = False
    best_wbm: bool = False
    best_gbm: bool = False
    note: str | None = None


@dataclass
class WilliamsCell:
    metric_a: str
    metric_b: str
    t: float | None
    p_value: float | None
    n: int
    indistinguishable: bool | None
    note: str | None = None


@dataclass
class GroupResult:
    grouping: str
    group: tuple
    n: int
    cells: list[CorrelationCell] = field(default_factory=list)
    williams: dict = field(default_factory=dict)  # dimension -> list[WilliamsCell]
    pair_rho: dict = field(default_factory=dict)  # (var_a, var_b) -> rho | None


@dataclass
class AccuracyRow:
    dataset: str
    dimension: str
    metric: str
    quantized: bool
    accuracy: float | None
    random_accuracy: float | None
    n_pairs: int
    p_value: float | None
    significant: bool = False
    note: str | None = None


@dataclass
class BinRow:
    metric: str
    rho_bad: float | None
    n_bad: int
    rho_rest: float | None
    n_rest: int
    p_value: float | None
    significant: bool = False
    note: str | None = None


@dataclass
class BinAnalysis:
    dimension: str
    shares: dict  # bin name -> percent
    counts: dict  # bin name -> n
    rows: list[BinRow] = field(default_factory=list)


@dataclass
class MrTypeRow:
    metric: str
    dimension: str
    rho_inform: float | None
    n_inform: int
    rho_other: float | None
    n_other: int
    p_value: float | None
    significant: bool = False
    note: str | None = None


@dataclass
class AnalysisReport:
    config_echo: dict
    n_instances: int
    dataset_counts: list  # rows (dataset, system, count)
    system_summaries: list
    correlations: dict    # grouping -> list[GroupResult]
    accuracy: list
    bins: dict            # dimension -> BinAnalysis
    mr_type: dict         # dimension -> list[MrTypeRow]
    icc: dict
    random_sanity: dict   # dimension -> rho of random column vs medians

    def to_json_dict(self) -> dict:
        return {
            "config": self.config_echo,
            "n_instances": self.n_instances,
            "dataset_counts": self.dataset_counts,
            "system_summaries": [asdict(r) for r in self.system_summaries],
            "correlations": {
                grouping: [
                    {
                        "group": list(g.group),
                        "n": g.n,
                        "cells": [asdict(c) for c in g.cells],
                        "williams": {
                            dim: [asdict(w) for w in cells]
                            for dim, cells in g.williams.items()
                        },
                    }
                    for g in groups
                ]
                for grouping, groups in self.correlations.items()
            },
            "accuracy": [asdict(r) for r in self.accuracy],
            "bins": {
                dim: {
                    "shares": b.shares,
                    "counts": b.counts,
                    "rows": [asdict(r) for r in b.rows],
                }
                for dim, b in self.bins.items()
            },
            "mr_type": {
                dim: [asdict(r) for r in rows] for dim, rows in self.mr_type.items()
            },
            "icc": self.icc,
            "random_sanity": self.random_sanity,
        }


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _safe_spearman(xs, ys):
    """(rho, p, n, note): pairwise deletion, None rho when undefined."""
    pairs = [(x, y) for x, y in zip(xs, ys) if x is not None and y is not None]
    n = len(pairs)
    if n < 3:
        return None, None, n, "fewer than 3 paired samples"
    x = [p[0] for p in pairs]
    y = [p[1] for p in pairs]
    try:
        res = spearman(x, y)
    except StatsError as exc:
        return None, None, n, str(exc)
    return res.rho, res.p_value, n, None


def _group_indices(corpus: Corpus, grouping: str) -> dict:
    """Ordered group label -> instance indices."""
    if grouping not in GROUPINGS:
        raise MetaEvalError(f"unknown grouping {grouping!r}")
    groups: dict[tuple, list[int]] = {}
    for i, inst in enumerate(corpus.instances):
        if grouping == "dataset_system":
            key = (inst.dataset, inst.system)
        elif grouping == "dataset":
            key = (inst.dataset,)
        else:
            key = (inst.system,)
        groups.setdefault(key, []).append(i)
    return groups


def _subset(column, indices):
    return [column[i] for i in indices]


# ---------------------------------------------------------------------------
# System-level summaries
# ---------------------------------------------------------------------------


def system_summary(corpus: Corpus, frame: MetricFrame, alpha: float = 0.05) -> list[SummaryRow]:
    """Mean/SD per (dataset, system) for every metric and human dimension.

    Within datasets covered by exactly two systems, per-field differences are
    tested with a two-sided Mann-Whitney U and marked when p < alpha.
    """
    groups = _group_indices(corpus, "dataset_system")
    all_fields = METRIC_FIELDS + DIMENSIONS

    def values_for(field_name, indices):
        if field_name in DIMENSIONS:
            return [float(corpus.instances[i].median(field_name)) for i in indices]
        return [v for v in _subset(frame.column(field_name), indices) if v is not None]

    rows: list[SummaryRow] = []
    for (dataset, system), indices in groups.items():
        for field_name in all_fields:
            vals = values_for(field_name, indices)
            if not vals:
                log.warning("summary: %s/%s has no values for %s; omitted",
                            dataset, system, field_name)
                continue
            mean = sum(vals) / len(vals)
            if len(vals) > 1:
                var = sum((v - mean) ** 2 for v in vals) / (len(vals) - 1)
                sd = math.sqrt(var)
            else:
                sd = None
            rows.append(SummaryRow(dataset, system, field_name, mean, sd, len(vals)))

    by_dataset: dict[str, list[str]] = {}
    for dataset, system in groups:
        by_dataset.setdefault(dataset, []).append(system)
    for dataset, systems in by_dataset.items():
        if len(systems) != 2:
            continue
        idx_a = groups[(dataset, systems[0])]
        idx_b = groups[(dataset, systems[1])]
        for field_name in all_fields:
            a = values_for(field_name, idx_a)
            b = values_for(field_name, idx_b)
            if not a or not b:
                continue
            if set(a) == set(b) and len(set(a)) == 1:
                continue  # identical constant columns: no difference to test
            try:
                _, p = mann_whitney_u(a, b)
            except StatsError:
                continue
            for row in rows:
                if row.dataset == dataset and row.field == field_name:
                    row.p_value = p
                    row.significant = p < alpha
    return rows


# ---------------------------------------------------------------------------
# Correlation tables and Williams grids
# ---------------------------------------------------------------------------


def correlation_table(corpus: Corpus, frame: MetricFrame, grouping: str,
                      alpha: float = 0.05) -> list[GroupResult]:
    """Spearman of every metric against every median-rated dimension,
    with per-dimension best-WBM/best-GBM flags and the Williams grid of
    metric-pair correlation differences."""
    results: list[GroupResult] = []
    for group, indices in _group_indices(corpus, grouping).items():
        if len(indices) < 3:
            log.warning("correlations: group %s has %d instances; skipped",
                        "/".join(group), len(indices))
            continue
        result = GroupResult(grouping=grouping, group=group, n=len(indices))
        med = {d: [float(corpus.instances[i].median(d)) for i in indices]
               for d in DIMENSIONS}
        cols = {m: _subset(frame.column(m), indices) for m in METRIC_FIELDS}
        complete = {m: all(v is not None for v in cols[m]) for m in METRIC_FIELDS}
        # metric x metric correlations are dimension-independent: cache them
        r23_cache: dict = {}

        for dimension in DIMENSIONS:
            dim_cells = []
            cell_notes = {}
            for metric in METRIC_FIELDS:
                rho, p, n, note = _safe_spearman(cols[metric], med[dimension])
                if note:
                    log.warning("correlations: %s x %s in %s: %s",
                                metric, dimension, "/".join(group), note)
                cell = CorrelationCell(
                    metric=metric, dimension=dimension, rho=rho, p_value=p,
                    n=n, significant=p is not None and p < alpha, note=note)
                dim_cells.append(cell)
                cell_notes[metric] = (rho, note)
                result.cells.append(cell)
                result.pair_rho[(metric, dimension)] = rho
            for fields_, flag in ((WBM_FIELDS, "best_wbm"), (GBM_FIELDS, "best_gbm")):
                candidates = [c for c in dim_cells
                              if c.metric in fields_ and c.rho is not None]
                if candidates:
                    best = max(candidates, key=lambda c: abs(c.rho))
                    setattr(best, flag, True)

            result.williams[dimension] = _williams_grid(
                cols, med[dimension], alpha, result.pair_rho, complete,
                cell_notes, r23_cache)
        for ia, dim_a in enumerate(DIMENSIONS):
            for dim_b in DIMENSIONS[ia + 1:]:
                rho, _, _, _ = _safe_spearman(med[dim_a], med[dim_b])
                result.pair_rho[(dim_a, dim_b)] = rho
        results.append(result)
    return results


def _williams_grid(cols, human, alpha, pair_rho, complete, cell_notes,
                   r23_cache) -> list:
    n_group = len(human)
    cells = []
    for ia, metric_a in enumerate(METRIC_FIELDS):
        for metric_b in METRIC_FIELDS[ia + 1:]:
            key = (metric_a, metric_b)
            if complete[metric_a] and complete[metric_b]:
                # whole-group statistics are reusable across pairs and dims
                r12, note_a = cell_notes[metric_a]
                r13, note_b = cell_notes[metric_b]
                if key not in r23_cache:
                    rho, _, _, note = _safe_spearman(cols[metric_a], cols[metric_b])
                    r23_cache[key] = (rho, note)
                r23, note_c = r23_cache[key]
                n = n_group
            else:
                triple = [
                    (a, b, h)
                    for a, b, h in zip(cols[metric_a], cols[metric_b], human)
                    if a is not None and b is not None
                ]
                n = len(triple)
                if n < 4:
                    pair_rho.setdefault(key, None)
                    cells.append(WilliamsCell(
                        metric_a=metric_a, metric_b=metric_b, t=None,
                        p_value=None, n=n, indistinguishable=None,
                        note="fewer than 4 complete samples"))
                    continue
                a = [t[0] for t in triple]
                b = [t[1] for t in triple]
                h = [t[2] for t in triple]
                r12, _, _, note_a = _safe_spearman(a, h)
                r13, _, _, note_b = _safe_spearman(b, h)
                if key not in r23_cache:
                    rho, _, _, note = _safe_spearman(a, b)
                    r23_cache[key] = (rho, note)
                r23, note_c = r23_cache[key]
            pair_rho.setdefault(key, r23)
            cell = WilliamsCell(metric_a=metric_a, metric_b=metric_b,
                                t=None, p_value=None, n=n, indistinguishable=None)
            note = note_a or note_b or note_c
            if note:
                cell.note = note
                cells.append(cell)
                continue
            try:
                t_stat, p = williams_test(r12, r13, r23, n)
            except StatsError as exc:
                cell.note = str(exc)
                cells.append(cell)
                continue
            cell.t = t_stat
            cell.p_value = p
            cell.indistinguishable = p >= alpha
            cells.append(cell)
    return cells


# ---------------------------------------------------------------------------
# Quantization
# ---------------------------------------------------------------------------


def quantize(values, *, reverse: bool = False, strategy: str = "minmax",
             scale: int = 6) -> list[int]:
    """Map real scores onto the 1..scale rating grid.

    minmax: linear min-max map, round half away from zero.  eqfreq:
    equal-frequency bins from tie-averaged ranks.  Reversed-scale metrics
    are negated first so that `scale` is always best.  Constant input maps
    everything to `scale` with a warning.
    """
    if strategy not in ("minmax", "eqfreq"):
        raise MetaEvalError(f"unknown quantization strategy {strategy!r}")
    vals = [float(-v if reverse else v) for v in values]
    if not vals:
        return []
    lo, hi = min(vals), max(vals)
    if lo == hi:
        log.warning("quantize: constant input; all values map to %d", scale)
        return [scale] * len(vals)
    if strategy == "minmax":
        out = []
        for v in vals:
            q = 1.0 + (scale - 1.0) * (v - lo) / (hi - lo)
            out.append(int(math.floor(q + 0.5)))  # round half away from zero
        return out
    from .stats import rank_with_ties

    n = len(vals)
    ranks = rank_with_ties(vals)
    return [min(scale, max(1, int(math.ceil(scale * r / n)))) for r in ranks]


# ---------------------------------------------------------------------------
# Ranking accuracy vs the random baseline
# ---------------------------------------------------------------------------


def _valid_pairs(corpus: Corpus, indices=None) -> list[tuple[int, int]]:
    groups: dict[str, list[int]] = {}
    pool = range(len(corpus.instances)) if indices is None else indices
    for i in pool:
        inst = corpus.instances[i]
        if inst.pair_key is not None:
            groups.setdefault(inst.pair_key, []).append(i)
    pairs = []
    for key, idxs in groups.items():
        if len(idxs) == 2 and corpus.instances[idxs[0]].system != corpus.instances[idxs[1]].system:
            pairs.append((idxs[0], idxs[1]))
        else:
            log.warning("ranking: pair_key %r is not a valid 2-system pair; skipped", key)
    return pairs


def _relation(a: float, b: float, eps: float) -> int:
    d = a - b
    if abs(d) <= eps:
        return 0
    return 1 if d > 0 else -1


def ranking_accuracy(corpus: Corpus, frame: MetricFrame, metric: str,
                     dimension: str, *, quantized: bool = False, seed: int = 0,
                     rand_scores=None, epsilon: float = 0.0,
                     strategy: str = "minmax", alpha: float = 0.05,
                     indices=None, dataset: str = "all") -> AccuracyRow:
    """Share of same-MR output pairs ordered like the human medians.

    Ties count as agreement only when both sides tie.  Significance is a
    Wilcoxon signed-rank over per-pair correctness indicators against a
    uniform random score subjected to the same procedure.
    """
    pairs = _valid_pairs(corpus, indices)
    if not pairs:
        raise MetaEvalError("corpus contains no valid output pairs")
    return _pair_accuracy(corpus, frame, metric, dimension, pairs,
                          quantized=quantized, seed=seed,
                          rand_scores=rand_scores, epsilon=epsilon,
                          strategy=strategy, alpha=alpha, dataset=dataset)


def _pair_accuracy(corpus, frame, metric, dimension, pairs, *, quantized,
                   seed, rand_scores, epsilon, strategy, alpha, dataset) -> AccuracyRow:
    if rand_scores is None:
        rand_scores = random_baseline(len(corpus.instances), seed)

    column = frame.column(metric)
    sign = -1.0 if metric in REVERSED_FIELDS else 1.0
    pairs_m = [(i, j) for i, j in pairs
               if column[i] is not None and column[j] is not None]
    row = AccuracyRow(dataset=dataset, dimension=dimension, metric=metric,
                      quantized=quantized, accuracy=None, random_accuracy=None,
                      n_pairs=len(pairs_m), p_value=None)
    if not pairs_m:
        row.note = "metric absent on all pairs"
        log.warning("ranking: %s has no complete pairs for %s", metric, dataset)
        return row

    participants = sorted({i for pair in pairs_m for i in pair})
    metric_vals = {i: sign * column[i] for i in participants}
    rand_vals = {i: rand_scores[i] for i in participants}
    eps = epsilon
    if quantized:
        q_metric = quantize([metric_vals[i] for i in participants], strategy=strategy)
        q_rand = quantize([rand_vals[i] for i in participants], strategy=strategy)
        metric_vals = dict(zip(participants, map(float, q_metric)))
        rand_vals = dict(zip(participants, map(float, q_rand)))
        eps = 0.0

    correct = []
    rand_correct = []
    for i, j in pairs_m:
        human = _relation(corpus.instances[i].median(dimension),
                          corpus.instances[j].median(dimension), 0.0)
        correct.append(1.0 if _relation(metric_vals[i], metric_vals[j], eps) == human else 0.0)
        rand_correct.append(1.0 if _relation(rand_vals[i], rand_vals[j], 0.0) == human else 0.0)

    row.accuracy = 100.0 * sum(correct) / len(correct)
    row.random_accuracy = 100.0 * sum(rand_correct) / len(rand_correct)
    res = wilcoxon_signed_rank(correct, rand_correct)
    row.p_value = res.p_value
    row.significant = res.p_value < alpha and row.accuracy > row.random_accuracy
    return row


def accuracy_table(corpus: Corpus, frame: MetricFrame, *, seed: int = 0,
                   include_quantized: bool = False, epsilon: float = 0.0,
                   strategy: str = "minmax", alpha: float = 0.05,
                   metrics=None) -> list[AccuracyRow]:
    """Per (dataset, dimension, metric) ranking accuracy, raw and optionally
    quantized, with one shared random column drawn from the run seed."""
    rand_scores = random_baseline(len(corpus.instances), seed)
    rows: list[AccuracyRow] = []
    metric_list = list(metrics) if metrics is not None else list(METRIC_FIELDS)
    any_pairs = False
    for dataset, indices in _group_indices(corpus, "dataset").items():
        pairs = _valid_pairs(corpus, indices)
        if not pairs:
            log.warning("ranking: dataset %s has no valid pairs; skipped", dataset[0])
            continue
        any_pairs = True
        modes = (False, True) if include_quantized else (False,)
        for quantized in modes:
            for dimension in DIMENSIONS:
                for metric in metric_list:
                    rows.append(_pair_accuracy(
                        corpus, frame, metric, dimension, pairs,
                        quantized=quantized, seed=seed,
                        rand_scores=rand_scores, epsilon=epsilon,
                        strategy=strategy, alpha=alpha, dataset=dataset[0]))
    if not any_pairs:
        raise MetaEvalError("corpus contains no valid output pairs")
    return rows


# ---------------------------------------------------------------------------
# Bin analysis (bad <= 2, good >= 5, average otherwise)
# ---------------------------------------------------------------------------


def bin_analysis(corpus: Corpus, frame: MetricFrame, dimension: str,
                 alpha: float = 0.05) -> BinAnalysis:
    """Correlations inside the bad bin against the pooled average+good bin,
    compared with Fisher z (independent groups)."""
    if dimension not in DIMENSIONS:
        raise MetaEvalError(f"unknown dimension {dimension!r}")
    meds = corpus.medians(dimension)
    bad = [i for i, m in enumerate(meds) if m <= 2]
    good = [i for i, m in enumerate(meds) if m >= 5]
    average = [i for i, m in enumerate(meds) if 2 < m < 5]
    rest = sorted(average + good)
    total = len(meds)
    if total == 0:
        raise MetaEvalError("empty corpus")
    analysis = BinAnalysis(
        dimension=dimension,
        shares={"bad": 100.0 * len(bad) / total,
                "average": 100.0 * len(average) / total,
                "good": 100.0 * len(good) / total},
        counts={"bad": len(bad), "average": len(average), "good": len(good)},
    )
    for name, idxs in (("bad", bad), ("average", average), ("good", good)):
        if 0 < len(idxs) < 3:
            log.warning("bins: %s bin for %s has %d instances (insufficient)",
                        name, dimension, len(idxs))
    for metric in METRIC_FIELDS:
        col = frame.column(metric)
        rho_bad, _, n_bad, note_bad = _safe_spearman(
            _subset(col, bad), [meds[i] for i in bad])
        rho_rest, _, n_rest, note_rest = _safe_spearman(
            _subset(col, rest), [meds[i] for i in rest])
        row = BinRow(metric=metric, rho_bad=rho_bad, n_bad=n_bad,
                     rho_rest=rho_rest, n_rest=n_rest, p_value=None,
                     note=note_bad or note_rest)
        if rho_bad is not None and rho_rest is not None and n_bad >= 4 and n_rest >= 4:
            try:
                _, p = fisher_z_test(rho_bad, n_bad, rho_rest, n_rest)
                row.p_value = p
                row.significant = p < alpha
            except StatsError as exc:
                row.note = str(exc)
        analysis.rows.append(row)
    return analysis


# ---------------------------------------------------------------------------
# inform vs non-inform MR types
# ---------------------------------------------------------------------------


def mr_type_split(corpus: Corpus, frame: MetricFrame, dimension: str,
                  alpha: float = 0.05) -> list[MrTypeRow]:
    """Correlations for inform-act instances vs all other MR types, with
    Fisher z flags for significantly different correlations."""
    if dimension not in DIMENSIONS:
        raise MetaEvalError(f"unknown dimension {dimension!r}")
    inform = [i for i, inst in enumerate(corpus.instances) if inst.mr.is_inform]
    other = [i for i, inst in enumerate(corpus.instances) if not inst.mr.is_inform]
    if not inform or not other:
        log.warning("mr-type split: one group is empty (inform=%d, other=%d)",
                    len(inform), len(other))
    meds = corpus.medians(dimension)
    rows: list[MrTypeRow] = []
    for metric in METRIC_FIELDS:
        col = frame.column(metric)
        rho_i, _, n_i, note_i = _safe_spearman(
            _subset(col, inform), [float(meds[i]) for i in inform])
        rho_o, _, n_o, note_o = _safe_spearman(
            _subset(col, other), [float(meds[i]) for i in other])
        row = MrTypeRow(metric=metric, dimension=dimension,
                        rho_inform=rho_i, n_inform=n_i,
                        rho_other=rho_o, n_other=n_o, p_value=None,
                        note=note_i or note_o)
        if rho_i is not None and rho_o is not None and n_i >= 4 and n_o >= 4:
            try:
                _, p = fisher_z_test(rho_i, n_i, rho_o, n_o)
                row.p_value = p
                row.significant = p < alpha
            except StatsError as exc:
                row.note = str(exc)
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Rater reliability
# ---------------------------------------------------------------------------


def icc_summary(corpus: Corpus) -> dict:
    """ICC per dimension and over all dimensions stacked, all three models."""
    out: dict = {}
    stacked: list[list[int]] = []
    for dimension in DIMENSIONS:
        matrix = [list(inst.ratings[dimension].scores) for inst in corpus.instances]
        stacked.extend(matrix)
        out[dimension] = _icc_models(matrix)
    out["overall"] = _icc_models(stacked)
    return out


def _icc_models(matrix) -> dict:
    result = {}
    for model in ICC_MODELS:
        try:
            res = icc(matrix, model=model)
            result[model] = {"icc": res.icc, "p_value": res.p_value}
        except StatsError as exc:
            result[model] = {"icc": None, "p_value": None, "note": str(exc)}
    return result


# ---------------------------------------------------------------------------
# Full report
# ---------------------------------------------------------------------------


def analyze(corpus: Corpus, frame: MetricFrame, *, seed: int = 0,
            alpha: float = 0.05, epsilon: float = 0.0,
            quantize_strategy: str = "minmax", include_quantized: bool = False,
            config_echo: dict | None = None) -> AnalysisReport:
    """Compose every analysis into one deterministic report."""
    counts: dict[tuple, int] = {}
    for inst in corpus.instances:
        counts[(inst.dataset, inst.system)] = counts.get((inst.dataset, inst.system), 0) + 1
    dataset_counts = [
        {"dataset": ds, "system": sy, "count": c} for (ds, sy), c in counts.items()
    ]

    rand_scores = random_baseline(len(corpus.instances), seed)
    random_sanity = {}
    for dimension in DIMENSIONS:
        rho, p, n, note = _safe_spearman(
            rand_scores, [float(m) for m in corpus.medians(dimension)])
        random_sanity[dimension] = {"rho": rho, "p_value": p, "n": n, "note": note}

    correlations = {
        grouping: correlation_table(corpus, frame, grouping, alpha=alpha)
        for grouping in GROUPINGS
    }

    try:
        accuracy = accuracy_table(
            corpus, frame, seed=seed, include_quantized=include_quantized,
            epsilon=epsilon, strategy=quantize_strategy, alpha=alpha)
    except MetaEvalError as exc:
        log.warning("ranking accuracy skipped: %s", exc)
        accuracy = []

    return AnalysisReport(
        config_echo=config_echo or {},
        n_instances=len(corpus.instances),
        dataset_counts=dataset_counts,
        system_summaries=system_summary(corpus, frame, alpha=alpha),
        correlations=correlations,
        accuracy=accuracy,
        bins={d: bin_analysis(corpus, frame, d, alpha=alpha) for d in DIMENSIONS},
        mr_type={d: mr_type_split(corpus, frame, d, alpha=alpha) for d in DIMENSIONS},
        icc=icc_summary(corpus),
        random_sanity=random_sanity,
    )
