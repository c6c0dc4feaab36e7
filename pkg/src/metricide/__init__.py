"""metricide: automatic NLG evaluation metrics and their meta-evaluation.

Scores corpora of meaning representations, system outputs and human
references with 21 word-based and grammar-based metrics, and reproduces the
accompanying meta-evaluation pipeline: rater reliability, system summaries,
utterance-level correlations with significance, ranking accuracy against a
seeded random baseline, quantization, and rating-bin analysis.
"""

__version__ = "0.1.0"

from .corpus import (
    Corpus, Instance, MeaningRepresentation, RatingTriple,
    load_corpus, median_rating, parse_mr,
)
from .meta_eval import (
    AnalysisReport, MetricFrame, analyze, bin_analysis, correlation_table,
    icc_summary, mr_type_split, quantize, ranking_accuracy, system_summary,
)
from .stats import (
    CorrelationResult, ICCResult, icc, rank_with_ties, random_baseline,
    spearman, wilcoxon_signed_rank, williams_test,
)
from .textproc import TokenSequence, count_syllables, edit_distance, ngrams, porter_stem, tokenize
from .word_metrics import (
    GBM_FIELDS, METRIC_FIELDS, WBM_FIELDS, MetricVector,
    bleu, cider, corpus_bleu, lepor, meteor, nist, rouge_l, score_corpus, sim, ter,
)
