"""Command-line surface: ``metricide validate|score|analyze``.

Exit codes: 0 success, 1 analysis warnings promoted by --strict, 2 input
errors.  All randomness flows from --seed (or METRICIDE_SEED when the flag
is absent; default 0).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .corpus import (
    Corpus, CorpusLoadError, load_corpus, load_dictionary, load_embeddings,
    load_synonyms, scan_corpus,
)
from .meta_eval import MetaEvalError, MetricFrame, analyze
from .report import atomic_write_text, write_metrics_tsv, write_report
from .word_metrics import (
    METRIC_FIELDS, MetricInputError, MetricVector, score_corpus,
)

log = logging.getLogger("metricide")

EXIT_OK = 0
EXIT_WARNINGS = 1
EXIT_INPUT_ERROR = 2


@dataclass
class RunConfig:
    input: str
    format: str | None = None
    out: str = "metricide-out"
    embeddings: str | None = None
    dictionary: str | None = None
    synonyms: str | None = None
    metrics: tuple | None = None
    metrics_file: str | None = None
    quantize: bool = False
    quant_strategy: str = "minmax"
    epsilon: float = 0.0
    seed: int = 0
    alpha: float = 0.05
    strict: bool = False
    lenient: bool = False

    def echo(self) -> dict:
        d = asdict(self)
        d["metrics"] = list(self.metrics) if self.metrics else None
        d["version"] = __version__
        return d


class _WarningCounter(logging.Handler):
    def __init__(self):
        super().__init__(level=logging.WARNING)
        self.count = 0

    def emit(self, record):
        self.count += 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metricide",
        description="Automatic NLG metrics and their meta-evaluation "
                    "against human judgments.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--input", required=True, help="corpus file (csv or json)")
        p.add_argument("--format", choices=("csv", "json"),
                       help="input format; inferred from the suffix when omitted")
        p.add_argument("--out", default="metricide-out", help="output directory")
        p.add_argument("--embeddings", help="word vector table for sim")
        p.add_argument("--dictionary", help="word list for msp "
                                             "(bundled list when omitted)")
        p.add_argument("--synonyms", help="synonym lexicon for meteor stage 3")
        p.add_argument("--metrics", help="comma-separated metric subset "
                                          "(default: all 21)")
        p.add_argument("--quantize", action="store_true",
                       help="add a quantized section to the accuracy table")
        p.add_argument("--quant-strategy", choices=("minmax", "eqfreq"),
                       default="minmax")
        p.add_argument("--epsilon", type=float, default=0.0,
                       help="tie width for raw metric comparisons")
        p.add_argument("--seed", type=int, default=None,
                       help="run seed (default: METRICIDE_SEED or 0)")
        p.add_argument("--alpha", type=float, default=0.05,
                       help="significance level")
        p.add_argument("--strict", action="store_true",
                       help="exit 1 when any analysis warning was raised")
        p.add_argument("--lenient", action="store_true",
                       help="skip and log malformed rows instead of aborting")

    add_common(sub.add_parser("validate", help="schema and integrity checks"))
    add_common(sub.add_parser("score", help="write per-instance metric vectors"))
    analyze_p = sub.add_parser("analyze", help="run every analysis and write reports")
    add_common(analyze_p)
    analyze_p.add_argument("--metrics-file",
                           help="reuse a metrics.tsv from a previous score run")
    return parser


def _config_from_args(args) -> RunConfig:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("METRICIDE_SEED", "0"))
    metrics = None
    if args.metrics:
        metrics = tuple(m.strip() for m in args.metrics.split(",") if m.strip())
        unknown = [m for m in metrics if m not in METRIC_FIELDS]
        if unknown:
            raise MetricInputError(
                f"unknown metrics: {', '.join(unknown)} "
                f"(choose from {', '.join(METRIC_FIELDS)})")
    return RunConfig(
        input=args.input, format=args.format, out=args.out,
        embeddings=args.embeddings, dictionary=args.dictionary,
        synonyms=args.synonyms, metrics=metrics,
        metrics_file=getattr(args, "metrics_file", None),
        quantize=args.quantize, quant_strategy=args.quant_strategy,
        epsilon=args.epsilon, seed=seed, alpha=args.alpha,
        strict=args.strict, lenient=args.lenient)


def _load_inputs(config: RunConfig) -> tuple[Corpus, dict | None]:
    corpus = load_corpus(config.input, format=config.format, lenient=config.lenient)
    embeddings = load_embeddings(config.embeddings) if config.embeddings else None
    dictionary = load_dictionary(config.dictionary) if config.dictionary else None
    corpus.embedding_table = embeddings
    corpus.dictionary = dictionary
    synonyms = load_synonyms(config.synonyms) if config.synonyms else None
    enabled = config.metrics
    if enabled and "sim" in enabled and embeddings is None:
        raise MetricInputError(
            "metric 'sim' requires a word embedding table; supply --embeddings")
    if enabled is None and embeddings is None:
        log.warning("no --embeddings given; the sim column will be NA")
    return corpus, synonyms


def _score_vectors(corpus, config, synonyms) -> list[MetricVector]:
    enabled = config.metrics
    if enabled is None and corpus.embedding_table is None:
        enabled = tuple(f for f in METRIC_FIELDS if f != "sim")
    return score_corpus(corpus, synonyms=synonyms, enabled=enabled)


def _frame_from_tsv(path, corpus) -> MetricFrame:
    by_id: dict[str, dict] = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split("\t")
        missing = [c for c in ("instance_id", *METRIC_FIELDS) if c not in header]
        if missing:
            raise CorpusLoadError(
                f"metrics file lacks columns: {', '.join(missing)}")
        for line in fh:
            parts = line.rstrip("\n").split("\t")
            row = dict(zip(header, parts))
            by_id[row["instance_id"]] = row
    columns: dict[str, list] = {f: [] for f in METRIC_FIELDS}
    for inst in corpus.instances:
        row = by_id.get(inst.instance_id)
        if row is None:
            raise CorpusLoadError(
                f"metrics file has no row for instance {inst.instance_id!r}")
        for f in METRIC_FIELDS:
            raw = row.get(f, "NA")
            columns[f].append(None if raw in ("", "NA") else float(raw))
    return MetricFrame(fields=METRIC_FIELDS, columns=columns)


def cmd_validate(config: RunConfig) -> int:
    corpus, issues = scan_corpus(config.input, format=config.format)
    counts: dict[tuple, int] = {}
    for inst in corpus.instances:
        counts[(inst.dataset, inst.system)] = counts.get(
            (inst.dataset, inst.system), 0) + 1
    print(f"{len(issues)} errors")
    for issue in issues:
        print(f"  {issue}", file=sys.stderr)
    for (dataset, system), count in sorted(counts.items()):
        print(f"{dataset}\t{system}\t{count}")
    print(f"total\t\t{len(corpus.instances)}")
    return EXIT_INPUT_ERROR if issues else EXIT_OK


def cmd_score(config: RunConfig) -> int:
    corpus, synonyms = _load_inputs(config)
    vectors = _score_vectors(corpus, config, synonyms)
    out = Path(config.out)
    write_metrics_tsv(out / "metrics.tsv", corpus, vectors)
    print(f"wrote {out / 'metrics.tsv'} ({len(vectors)} rows)")
    return EXIT_OK


def cmd_analyze(config: RunConfig) -> int:
    corpus, synonyms = _load_inputs(config)
    out = Path(config.out)
    if config.metrics_file:
        frame = _frame_from_tsv(config.metrics_file, corpus)
    else:
        vectors = _score_vectors(corpus, config, synonyms)
        write_metrics_tsv(out / "metrics.tsv", corpus, vectors)
        frame = MetricFrame.from_vectors(vectors)
    report = analyze(
        corpus, frame, seed=config.seed, alpha=config.alpha,
        epsilon=config.epsilon, quantize_strategy=config.quant_strategy,
        include_quantized=config.quantize, config_echo=config.echo())
    written = write_report(report, out)
    print(f"wrote {len(written)} report files under {out}")
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    counter = _WarningCounter()
    logging.getLogger("metricide").addHandler(counter)
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        handler = {"validate": cmd_validate, "score": cmd_score,
                   "analyze": cmd_analyze}[args.command]
        code = handler(config)
    except (CorpusLoadError, MetricInputError, MetaEvalError, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if code == EXIT_OK and config.strict and counter.count:
        print(f"{counter.count} warnings raised under --strict", file=sys.stderr)
        return EXIT_WARNINGS
    return code


if __name__ == "__main__":
    sys.exit(main())
