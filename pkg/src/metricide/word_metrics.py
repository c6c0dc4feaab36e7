"""Word-based metrics: reference overlap and semantic similarity.

Each metric scores one system output against the instance's reference set;
corpus means are plain averages of per-instance scores.  All functions are
pure and accept either a :class:`~metricide.textproc.TokenSequence` or a
plain token list.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, fields as dataclass_fields
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import grammar_metrics
from .corpus import Corpus, MeaningRepresentation
from .textproc import TokenSequence, edit_distance, ngrams, porter_stem, tokenize

BLEU_EPSILON = 1e-9
METEOR_ALPHA = 0.9
METEOR_BETA = 3.0
METEOR_GAMMA = 0.5
LEPOR_ALPHA = 1.0
LEPOR_BETA = 1.0
# NIST brevity factor reaches 0.5 when the candidate is 2/3 of the mean
# reference length.
NIST_BREVITY_BETA = math.log(0.5) / math.log(2.0 / 3.0) ** 2

WBM_FIELDS = ("ter", "bleu1", "bleu2", "bleu3", "bleu4", "rouge", "nist",
              "lepor", "cider", "meteor", "sim")
GBM_FIELDS = ("re", "len", "cpw", "wps", "sps", "spw", "pol", "ppw", "msp", "prs")
METRIC_FIELDS = WBM_FIELDS + GBM_FIELDS
# Metrics where lower means better; negated before any ordering comparison.
REVERSED_FIELDS = frozenset({"ter"})


class MetricInputError(ValueError):
    pass


def _tokens(seq) -> tuple[str, ...]:
    if isinstance(seq, TokenSequence):
        return seq.tokens
    return tuple(seq)


def _check_refs(references) -> list[tuple[str, ...]]:
    refs = [_tokens(r) for r in references]
    if not refs:
        raise MetricInputError("at least one reference is required")
    return refs


# ---------------------------------------------------------------------------
# BLEU
# ---------------------------------------------------------------------------


def bleu(candidate, references, max_n: int = 4) -> float:
    """Sentence BLEU: clipped n-gram precisions, brevity penalty.

    Zero clipped counts are smoothed with epsilon 1e-9 so that the geometric
    mean stays defined for the short, noisy outputs common in this data.
    The brevity reference length is the one closest to the candidate length
    (ties to the shorter reference).
    """
    if max_n < 1:
        raise MetricInputError(f"max_n must be >= 1, got {max_n}")
    refs = _check_refs(references)
    cand = _tokens(candidate)
    if not cand:
        return 0.0
    c = len(cand)
    r = min((abs(len(t) - c), len(t)) for t in refs)[1]
    bp = min(1.0, math.exp(1.0 - r / c))
    log_sum = 0.0
    for n in range(1, max_n + 1):
        total = c - n + 1
        if total <= 0:
            p = BLEU_EPSILON
        else:
            cand_counts = ngrams(cand, n)
            max_ref: Counter = Counter()
            for t in refs:
                for g, cnt in ngrams(t, n).items():
                    if cnt > max_ref[g]:
                        max_ref[g] = cnt
            clipped = sum(min(cnt, max_ref[g]) for g, cnt in cand_counts.items())
            p = clipped / total if clipped else BLEU_EPSILON / total
        log_sum += math.log(p)
    return bp * math.exp(log_sum / max_n)


# ---------------------------------------------------------------------------
# NIST
# ---------------------------------------------------------------------------


def nist(candidate, references, max_n: int = 5) -> float:
    """Information-weighted n-gram score with the squared-log brevity factor.

    Information weights come from this instance's reference set: info(g) =
    log2(count of g minus its last token / count of g), the numerator being
    the total reference word count for unigrams.
    """
    refs = _check_refs(references)
    cand = _tokens(candidate)
    if not cand:
        return 0.0
    total_ref_words = sum(len(t) for t in refs)
    if total_ref_words == 0:
        raise MetricInputError("all references are empty")

    ref_counts: Counter = Counter()
    per_ref = []
    for t in refs:
        counts_by_n = {}
        for n in range(1, max_n + 1):
            counts = ngrams(t, n)
            counts_by_n[n] = counts
            ref_counts.update(counts)
        per_ref.append(counts_by_n)

    def info(gram) -> float:
        denom = ref_counts[gram]
        num = ref_counts[gram[:-1]] if len(gram) > 1 else total_ref_words
        return math.log2(num / denom)

    score = 0.0
    for n in range(1, max_n + 1):
        total = len(cand) - n + 1
        if total <= 0:
            continue
        max_ref: Counter = Counter()
        for counts_by_n in per_ref:
            for g, cnt in counts_by_n[n].items():
                if cnt > max_ref[g]:
                    max_ref[g] = cnt
        matched_info = sum(
            info(g) * min(cnt, max_ref[g])
            for g, cnt in ngrams(cand, n).items()
            if max_ref[g]
        )
        score += matched_info / total
    ratio = len(cand) / (total_ref_words / len(refs))
    brevity = 1.0 if ratio >= 1.0 else math.exp(
        NIST_BREVITY_BETA * math.log(ratio) ** 2)
    return score * brevity


# ---------------------------------------------------------------------------
# TER
# ---------------------------------------------------------------------------


def ter(candidate, references) -> float:
    """Translation edit rate: edits (incl. greedy block shifts) / ref length.

    Lower is better.  Minimum over the reference set; each reference
    normalizes by its own length.
    """
    refs = _check_refs(references)
    for t in refs:
        if not t:
            raise MetricInputError("empty reference")
    cand = _tokens(candidate)
    return min(_ter_edits(cand, t) / len(t) for t in refs)


def _misaligned_positions(hyp, ref) -> set:
    """Hypothesis indices not consumed by a match in one (deterministic)
    optimal edit alignment.  Blocks without such a position cannot shift
    usefully and are pruned from the search."""
    lh, lr = len(hyp), len(ref)
    dp = [list(range(lr + 1))]
    for i in range(1, lh + 1):
        prev = dp[i - 1]
        row = [i] + [0] * lr
        tok = hyp[i - 1]
        for j in range(1, lr + 1):
            if tok == ref[j - 1]:
                row[j] = prev[j - 1]
            else:
                row[j] = min(prev[j - 1], prev[j], row[j - 1]) + 1
        dp.append(row)
    mis = set()
    i, j = lh, lr
    while i > 0 or j > 0:
        if (i > 0 and j > 0 and hyp[i - 1] == ref[j - 1]
                and dp[i][j] == dp[i - 1][j - 1]):
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and dp[i][j] == dp[i - 1][j - 1] + 1:
            mis.add(i - 1)
            i, j = i - 1, j - 1
        elif i > 0 and dp[i][j] == dp[i - 1][j] + 1:
            mis.add(i - 1)
            i -= 1
        else:
            j -= 1
    return mis


@lru_cache(maxsize=200_000)
def _ter_edits(hyp: tuple, ref: tuple) -> int:
    """Shift-aware edit count for one hypothesis/reference pair.

    Greedy loop: among block moves whose tokens exactly match a reference
    span (tried at that span's landing position) and touch at least one
    currently misaligned word, apply the one that most reduces the
    remaining edit distance, at a cost of one edit per shift, until no
    move reduces it.
    """
    vocab: dict[str, int] = {}
    h = [vocab.setdefault(t, len(vocab)) for t in hyp]
    r = [vocab.setdefault(t, len(vocab)) for t in ref]
    dist = edit_distance(h, r)
    if dist <= 1:
        # a single shift costs what it could save; the total cannot improve
        return dist

    ref_pos: dict[int, list[int]] = defaultdict(list)
    for j, t in enumerate(r):
        ref_pos[t].append(j)

    shifts = 0
    current = h
    lr = len(r)
    while dist > 0:
        best_dist = dist
        best_new = None
        n_cur = len(current)
        mis = _misaligned_positions(current, r)
        if not mis:
            break  # only insertions remain; no source block can help
        # prefix counts of misaligned positions, for O(1) block checks
        mis_prefix = [0] * (n_cur + 1)
        for k in range(n_cur):
            mis_prefix[k + 1] = mis_prefix[k] + (k in mis)
        tried: set[tuple] = set()
        for i in range(n_cur):
            positions = ref_pos.get(current[i])
            if not positions:
                continue
            for p in positions:
                run = 1
                while (i + run < n_cur and p + run < lr
                       and current[i + run] == r[p + run]):
                    run += 1
                for length in range(1, run + 1):
                    if mis_prefix[i + length] == mis_prefix[i]:
                        continue  # fully aligned block
                    rest = current[:i] + current[i + length:]
                    j = p if p <= len(rest) else len(rest)
                    if j == i:
                        continue
                    trial = rest[:j] + current[i : i + length] + rest[j:]
                    key = tuple(trial)
                    if key in tried:
                        continue
                    tried.add(key)
                    d = edit_distance(trial, r, bound=best_dist)
                    if d < best_dist:
                        best_dist = d
                        best_new = trial
        if best_new is None:
            break
        shifts += 1
        current = best_new
        dist = best_dist
    return shifts + dist


# ---------------------------------------------------------------------------
# ROUGE-L
# ---------------------------------------------------------------------------


def rouge_l(candidate, references) -> float:
    """LCS F1 (beta = 1), maximum over the reference set."""
    refs = _check_refs(references)
    cand = _tokens(candidate)
    if not cand:
        return 0.0
    best = 0.0
    for t in refs:
        if not t:
            continue
        lcs = _lcs_length(cand, t)
        if lcs == 0:
            continue
        p = lcs / len(cand)
        r = lcs / len(t)
        best = max(best, 2.0 * p * r / (p + r))
    return best


def _lcs_length(a: tuple, b: tuple) -> int:
    prev = [0] * (len(b) + 1)
    for tok in a:
        cur = [0] * (len(b) + 1)
        for j, other in enumerate(b, start=1):
            if tok == other:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


# ---------------------------------------------------------------------------
# METEOR
# ---------------------------------------------------------------------------


def meteor(candidate, references, synonyms: dict | None = None) -> float:
    """Staged alignment (exact, stem, optional synonym) with a fragmentation
    penalty; recall-weighted harmonic mean at alpha 0.9, penalty
    gamma (ch/m)^beta with beta 3, gamma 0.5.  Maximum over references.
    """
    refs = _check_refs(references)
    cand = _tokens(candidate)
    if not cand:
        return 0.0
    best = 0.0
    for t in refs:
        if not t:
            continue
        links = _meteor_align(cand, t, synonyms)
        m = len(links)
        if m == 0:
            continue
        p = m / len(cand)
        r = m / len(t)
        fmean = p * r / (METEOR_ALPHA * p + (1.0 - METEOR_ALPHA) * r)
        chunks = _chunk_count(links)
        penalty = METEOR_GAMMA * (chunks / m) ** METEOR_BETA
        best = max(best, fmean * (1.0 - penalty))
    return best


def _crossings(links) -> int:
    count = 0
    for (i1, j1), (i2, j2) in combinations(links, 2):
        if (i1 - i2) * (j1 - j2) < 0:
            count += 1
    return count


def _choose_links(cand_pos, ref_pos, want, existing):
    """Pick `want` links between occurrence lists, preferring fewest
    crossings against links placed so far; ties resolve leftmost."""
    if len(cand_pos) == want and len(ref_pos) == want:
        return list(zip(cand_pos, ref_pos))
    if math.comb(len(cand_pos), want) * math.comb(len(ref_pos), want) <= 256:
        best = None
        for cs in combinations(cand_pos, want):
            for rs in combinations(ref_pos, want):
                new = list(zip(cs, rs))
                key = (_crossings(existing + new), cs, rs)
                if best is None or key < best[0]:
                    best = (key, new)
        return best[1]
    return list(zip(cand_pos[:want], ref_pos[:want]))


_stem = lru_cache(maxsize=65536)(porter_stem)


def _meteor_align(cand, ref, synonyms):
    free_c = [True] * len(cand)
    free_r = [True] * len(ref)
    links: list[tuple[int, int]] = []

    for key_fn in (lambda tok: tok, _stem):
        cmap: dict[str, list[int]] = {}
        rmap: dict[str, list[int]] = {}
        for i, tok in enumerate(cand):
            if free_c[i]:
                cmap.setdefault(key_fn(tok), []).append(i)
        for j, tok in enumerate(ref):
            if free_r[j]:
                rmap.setdefault(key_fn(tok), []).append(j)
        for key, cand_pos in cmap.items():
            ref_pos = rmap.get(key)
            if not ref_pos:
                continue
            want = min(len(cand_pos), len(ref_pos))
            for i, j in _choose_links(cand_pos, ref_pos, want, links):
                free_c[i] = False
                free_r[j] = False
                links.append((i, j))

    if synonyms:
        for i, tok in enumerate(cand):
            if not free_c[i]:
                continue
            own = synonyms.get(tok, frozenset())
            matches = [
                j for j, rtok in enumerate(ref)
                if free_r[j] and (rtok in own or tok in synonyms.get(rtok, frozenset()))
            ]
            if matches:
                j = min(matches, key=lambda j: (abs(j / len(ref) - i / len(cand)), j))
                free_c[i] = False
                free_r[j] = False
                links.append((i, j))

    return sorted(links)


def _chunk_count(links) -> int:
    chunks = 0
    prev = None
    for i, j in links:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return chunks


# ---------------------------------------------------------------------------
# LEPOR
# ---------------------------------------------------------------------------


def lepor(candidate, references, unmatched_to_zero: bool = False) -> float:
    """Basic unigram LEPOR: length penalty x position penalty x harmonic
    precision/recall (alpha = beta = 1).  Maximum over references.

    ``unmatched_to_zero`` switches the position-difference convention for
    unmatched candidate tokens from distance-to-position-zero (default) to
    no contribution.
    """
    refs = _check_refs(references)
    cand = _tokens(candidate)
    if not cand:
        return 0.0
    best = 0.0
    for t in refs:
        if not t:
            continue
        best = max(best, _lepor_one(cand, t, unmatched_to_zero))
    return best


def _lepor_one(cand, ref, unmatched_to_zero: bool) -> float:
    c, r = len(cand), len(ref)
    if c < r:
        lp = math.exp(1.0 - r / c)
    elif c > r:
        lp = math.exp(1.0 - c / r)
    else:
        lp = 1.0

    positions: dict[str, list[int]] = defaultdict(list)
    for j, tok in enumerate(ref):
        positions[tok].append(j)
    used: set[int] = set()
    matched = 0
    npd_sum = 0.0
    for i, tok in enumerate(cand):
        cand_rel = (i + 1) / c
        open_pos = [j for j in positions.get(tok, ()) if j not in used]
        if open_pos:
            j = min(open_pos, key=lambda j: (abs((j + 1) / r - cand_rel), j))
            used.add(j)
            matched += 1
            npd_sum += abs(cand_rel - (j + 1) / r)
        elif not unmatched_to_zero:
            npd_sum += cand_rel
    if matched == 0:
        return 0.0
    npos = math.exp(-npd_sum / c)
    precision = matched / c
    recall = matched / r
    harmonic = (LEPOR_ALPHA + LEPOR_BETA) / (
        LEPOR_ALPHA / recall + LEPOR_BETA / precision)
    return lp * npos * harmonic


# ---------------------------------------------------------------------------
# CIDEr
# ---------------------------------------------------------------------------


def cider(items, max_n: int = 4, idf_plus_one: bool = True) -> list[float]:
    """Plain CIDEr over an evaluation set: 10 x mean over n of the mean
    reference cosine between TF-IDF n-gram vectors.

    IDF comes from this set's reference sets; with ``idf_plus_one`` (the
    default) idf(g) = log(N / (1 + df_g)), otherwise the document-frequency
    floor form log(N / max(1, df_g)) which is exactly invariant under
    duplicating the corpus.
    """
    if not items:
        raise MetricInputError("cider requires a non-empty evaluation set")
    norm = [(_tokens(c), [_tokens(r) for r in refs]) for c, refs in items]
    n_items = len(norm)
    df: Counter = Counter()
    for _, refs in norm:
        grams: set = set()
        for t in refs:
            for n in range(1, max_n + 1):
                grams.update(ngrams(t, n))
        df.update(grams)

    log_n = math.log(n_items)

    def idf(gram) -> float:
        d = df.get(gram, 0)
        if idf_plus_one:
            return log_n - math.log(1.0 + d)
        return log_n - math.log(max(1.0, d))

    scores = []
    for cand, refs in norm:
        acc = 0.0
        for n in range(1, max_n + 1):
            cvec = {g: cnt * idf(g) for g, cnt in ngrams(cand, n).items()}
            cnorm = math.sqrt(sum(v * v for v in cvec.values()))
            if cnorm == 0.0 or not refs:
                continue
            sim_sum = 0.0
            for t in refs:
                rvec = {g: cnt * idf(g) for g, cnt in ngrams(t, n).items()}
                rnorm = math.sqrt(sum(v * v for v in rvec.values()))
                if rnorm == 0.0:
                    continue
                dot = sum(v * rvec[g] for g, v in cvec.items() if g in rvec)
                sim_sum += max(0.0, dot / (cnorm * rnorm))
            acc += sim_sum / len(refs)
        scores.append(10.0 * acc / max_n)
    return scores


# ---------------------------------------------------------------------------
# SIM
# ---------------------------------------------------------------------------


def sim(mr: MeaningRepresentation, candidate, embeddings: dict) -> float:
    """Embedding cosine between the verbalized MR and the output.

    The MR side is the token bag of act-type tokens, slot names and slot
    values.  Out-of-vocabulary tokens are dropped; a fully OOV side scores
    0.  Cosine is clamped to [0, 1].
    """
    if embeddings is None:
        raise MetricInputError(
            "sim requires a word embedding table; supply one via --embeddings")
    bag: list[str] = list(tokenize(mr.act_type.replace("_", " ")).tokens)
    for name, value in mr.slots:
        bag.extend(tokenize(name.replace("_", " ")).tokens)
        if value is not None:
            bag.extend(tokenize(value.replace("_", " ")).tokens)
    v1 = _mean_vector(bag, embeddings)
    v2 = _mean_vector(_tokens(candidate), embeddings)
    if v1 is None or v2 is None:
        return 0.0
    n1 = float(np.linalg.norm(v1))
    n2 = float(np.linalg.norm(v2))
    if n1 == 0.0 or n2 == 0.0:
        return 0.0
    return max(0.0, min(1.0, float(np.dot(v1, v2)) / (n1 * n2)))


def _mean_vector(tokens, embeddings):
    vecs = [embeddings[t] for t in tokens if t in embeddings]
    if not vecs:
        return None
    return np.mean(vecs, axis=0)


# ---------------------------------------------------------------------------
# Per-instance metric vectors
# ---------------------------------------------------------------------------


@dataclass
class MetricVector:
    """The 21 per-instance metric values, in the fixed report order."""

    ter: float | None = None
    bleu1: float | None = None
    bleu2: float | None = None
    bleu3: float | None = None
    bleu4: float | None = None
    rouge: float | None = None
    nist: float | None = None
    lepor: float | None = None
    cider: float | None = None
    meteor: float | None = None
    sim: float | None = None
    re: float | None = None
    len: float | None = None
    cpw: float | None = None
    wps: float | None = None
    sps: float | None = None
    spw: float | None = None
    pol: float | None = None
    ppw: float | None = None
    msp: float | None = None
    prs: float | None = None

    def get(self, field: str) -> float | None:
        return getattr(self, field)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in dataclass_fields(self)}


def score_instance(instance, *, embeddings=None, dictionary=None,
                   synonyms=None, enabled=None, _tok_cache=None) -> MetricVector:
    """All metrics except cider (which needs the whole evaluation set)."""
    cache = _tok_cache if _tok_cache is not None else {}

    def tok(text):
        seq = cache.get(text)
        if seq is None:
            seq = tokenize(text)
            cache[text] = seq
        return seq

    on = set(METRIC_FIELDS if enabled is None else enabled)
    cand = tok(instance.output)
    refs = [tok(r) for r in instance.references]
    vec = MetricVector()

    if "ter" in on:
        vec.ter = ter(cand, refs)
    for n in (1, 2, 3, 4):
        if f"bleu{n}" in on:
            setattr(vec, f"bleu{n}", bleu(cand, refs, max_n=n))
    if "rouge" in on:
        vec.rouge = rouge_l(cand, refs)
    if "nist" in on:
        vec.nist = nist(cand, refs)
    if "lepor" in on:
        vec.lepor = lepor(cand, refs)
    if "meteor" in on:
        vec.meteor = meteor(cand, refs, synonyms)
    if "sim" in on and embeddings is not None:
        vec.sim = sim(instance.mr, cand, embeddings)

    gbm_on = [f for f in GBM_FIELDS if f in on and f != "prs"]
    if gbm_on and cand.word_tokens():
        stats = grammar_metrics.surface_stats(cand, instance.output, dictionary)
        for f in gbm_on:
            setattr(vec, f, float(getattr(stats, f)))
    if "prs" in on:
        vec.prs = grammar_metrics.parse_score(instance)
    return vec


def score_corpus(corpus: Corpus, *, synonyms=None, enabled=None) -> list[MetricVector]:
    """Metric vectors for every instance, source order preserved.

    cider's IDF table is computed per dataset, since reference vocabularies
    are dataset-wide (the same MRs are answered by each system).
    """
    dictionary = corpus.dictionary
    if dictionary is None:
        dictionary = grammar_metrics.default_dictionary()
    on = set(METRIC_FIELDS if enabled is None else enabled)
    cache: dict[str, TokenSequence] = {}
    vectors = [
        score_instance(
            inst, embeddings=corpus.embedding_table, dictionary=dictionary,
            synonyms=synonyms, enabled=on, _tok_cache=cache)
        for inst in corpus.instances
    ]
    if "cider" in on:
        by_dataset: dict[str, list[int]] = {}
        for i, inst in enumerate(corpus.instances):
            by_dataset.setdefault(inst.dataset, []).append(i)
        for idxs in by_dataset.values():
            items = [
                (cache[corpus.instances[i].output],
                 [cache[r] for r in corpus.instances[i].references])
                for i in idxs
            ]
            for i, score in zip(idxs, cider(items)):
                vectors[i].cider = score
    return vectors


def corpus_bleu(candidates, reference_sets, max_n: int = 4) -> float:
    """Aggregate-count BLEU over a corpus (exposed for reference; analyses
    use per-instance means)."""
    if len(candidates) != len(reference_sets):
        raise MetricInputError("candidate and reference lists differ in length")
    if not candidates:
        raise MetricInputError("empty corpus")
    clipped_total = [0] * max_n
    count_total = [0] * max_n
    c_len = 0
    r_len = 0
    for cand_in, refs_in in zip(candidates, reference_sets):
        cand = _tokens(cand_in)
        refs = _check_refs(refs_in)
        c = len(cand)
        c_len += c
        if c:
            r_len += min((abs(len(t) - c), len(t)) for t in refs)[1]
        for n in range(1, max_n + 1):
            total = c - n + 1
            if total <= 0:
                continue
            cand_counts = ngrams(cand, n)
            max_ref: Counter = Counter()
            for t in refs:
                for g, cnt in ngrams(t, n).items():
                    if cnt > max_ref[g]:
                        max_ref[g] = cnt
            clipped_total[n - 1] += sum(
                min(cnt, max_ref[g]) for g, cnt in cand_counts.items())
            count_total[n - 1] += total
    if c_len == 0:
        return 0.0
    bp = min(1.0, math.exp(1.0 - r_len / c_len))
    log_sum = 0.0
    for n in range(max_n):
        if count_total[n] == 0:
            p = BLEU_EPSILON
        elif clipped_total[n] == 0:
            p = BLEU_EPSILON / count_total[n]
        else:
            p = clipped_total[n] / count_total[n]
        log_sum += math.log(p)
    return bp * math.exp(log_sum / max_n)
