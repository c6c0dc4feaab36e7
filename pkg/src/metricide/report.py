"""Serialize an AnalysisReport to disk: one JSON document, TSV tables, and
plot-ready CSVs for correlation heatmaps and Williams grids.

All files are written atomically (temp file + rename) so an interrupted run
never leaves a truncated table.  Output is byte-deterministic for a fixed
(corpus, config, seed).
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path

from .corpus import DIMENSIONS
from .meta_eval import AnalysisReport
from .word_metrics import METRIC_FIELDS

NA = "NA"


def _fmt(value, decimals: int = 6) -> str:
    if value is None:
        return NA
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.{decimals}f}"
    return str(value)


def atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _tsv(header, rows) -> str:
    lines = ["\t".join(header)]
    lines.extend("\t".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "-", name) or "none"


def write_metrics_tsv(path: Path, corpus, vectors) -> None:
    header = ["instance_id", "dataset", "system", "pair_key", *METRIC_FIELDS]
    rows = []
    for inst, vec in zip(corpus.instances, vectors):
        rows.append([
            inst.instance_id, inst.dataset, inst.system, inst.pair_key or "",
            *[vec.get(f) for f in METRIC_FIELDS],
        ])
    atomic_write_text(path, _tsv(header, rows))


def write_report(report: AnalysisReport, outdir) -> list[Path]:
    """Write every report artifact under ``outdir``; returns written paths."""
    outdir = Path(outdir)
    written: list[Path] = []

    def emit(relpath: str, text: str):
        path = outdir / relpath
        atomic_write_text(path, text)
        written.append(path)

    emit("report.json", json.dumps(report.to_json_dict(), indent=2,
                                   ensure_ascii=False) + "\n")

    emit("tables/dataset_counts.tsv", _tsv(
        ("dataset", "system", "count"),
        [(r["dataset"], r["system"], r["count"]) for r in report.dataset_counts]))

    emit("tables/summary.tsv", _tsv(
        ("dataset", "system", "field", "mean", "sd", "n", "p_value", "significant"),
        [(r.dataset, r.system, r.field, r.mean, r.sd, r.n, r.p_value, r.significant)
         for r in report.system_summaries]))

    for grouping, groups in report.correlations.items():
        rows = []
        for g in groups:
            label = "/".join(g.group)
            for c in g.cells:
                rows.append((label, c.metric, c.dimension, c.rho, c.p_value,
                             c.n, c.significant, c.best_wbm, c.best_gbm,
                             c.note or ""))
        emit(f"tables/correlations_{grouping}.tsv", _tsv(
            ("group", "metric", "dimension", "rho", "p_value", "n",
             "significant", "best_wbm", "best_gbm", "note"), rows))

    emit("tables/accuracy.tsv", _tsv(
        ("dataset", "dimension", "metric", "quantized", "accuracy",
         "random_accuracy", "n_pairs", "p_value", "significant", "note"),
        [(r.dataset, r.dimension, r.metric, r.quantized, r.accuracy,
          r.random_accuracy, r.n_pairs, r.p_value, r.significant, r.note or "")
         for r in report.accuracy]))

    bin_rows = []
    for dim in DIMENSIONS:
        analysis = report.bins.get(dim)
        if analysis is None:
            continue
        for r in analysis.rows:
            bin_rows.append((dim, r.metric, r.rho_bad, r.n_bad, r.rho_rest,
                             r.n_rest, r.p_value, r.significant, r.note or ""))
    emit("tables/bins.tsv", _tsv(
        ("dimension", "metric", "rho_bad", "n_bad", "rho_rest", "n_rest",
         "p_value", "significant", "note"), bin_rows))

    share_rows = []
    for dim in DIMENSIONS:
        analysis = report.bins.get(dim)
        if analysis is None:
            continue
        for name in ("bad", "average", "good"):
            share_rows.append((dim, name, analysis.counts[name], analysis.shares[name]))
    emit("tables/bin_shares.tsv", _tsv(
        ("dimension", "bin", "count", "share_percent"), share_rows))

    mr_rows = []
    for dim in DIMENSIONS:
        for r in report.mr_type.get(dim, []):
            mr_rows.append((dim, r.metric, r.rho_inform, r.n_inform,
                            r.rho_other, r.n_other, r.p_value, r.significant,
                            r.note or ""))
    emit("tables/mr_type.tsv", _tsv(
        ("dimension", "metric", "rho_inform", "n_inform", "rho_other",
         "n_other", "p_value", "significant", "note"), mr_rows))

    icc_rows = []
    for scope, models in report.icc.items():
        for model, vals in models.items():
            icc_rows.append((scope, model, vals.get("icc"), vals.get("p_value"),
                             vals.get("note", "")))
    emit("tables/icc.tsv", _tsv(
        ("scope", "model", "icc", "p_value", "note"), icc_rows))

    # Plot data: correlation heatmaps (long format) and Williams grids,
    # one file per dataset/system group.
    for g in report.correlations.get("dataset_system", []):
        label = "_".join(_slug(part) for part in g.group)
        heat_rows = [
            (a, b, rho)
            for (a, b), rho in sorted(
                g.pair_rho.items(),
                key=lambda item: (_var_order(item[0][0]), _var_order(item[0][1])))
        ]
        emit(f"plots/corr_{label}.csv",
             "metric_a,metric_b,rho\n" + "".join(
                 f"{a},{b},{_fmt(r)}\n" for a, b, r in heat_rows))
        for dim, cells in g.williams.items():
            emit(f"plots/williams_{label}_{_slug(dim)}.csv",
                 "metric_a,metric_b,indistinguishable_flag\n" + "".join(
                     f"{c.metric_a},{c.metric_b},{_fmt(c.indistinguishable)}\n"
                     for c in cells))
    return written


_VAR_ORDER = {name: i for i, name in enumerate(METRIC_FIELDS + DIMENSIONS)}


def _var_order(name: str) -> int:
    return _VAR_ORDER.get(name, len(_VAR_ORDER))
