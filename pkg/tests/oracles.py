"""Independent oracles used to derive expected metric values.

These deliberately avoid the package's implementations: LCS and TER come
from exhaustive enumeration, the n-gram scores from direct formula
substitution with exact fractions where possible, ICC from explicit
sums-of-squares loops, Spearman from comparison-counting ranks.  They are
only fast enough for tiny inputs.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


# --- rank statistics -------------------------------------------------------


def ranks_by_counting(values):
    """Tie-averaged ranks via pairwise comparisons."""
    out = []
    for v in values:
        less = sum(1 for w in values if w < v)
        equal = sum(1 for w in values if w == v)
        out.append(less + (equal + 1) / 2.0)
    return out


def pearson_explicit(x, y):
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    return sxy / math.sqrt(sxx * syy)


def spearman_oracle(x, y):
    return pearson_explicit(ranks_by_counting(x), ranks_by_counting(y))


# --- sequence primitives ---------------------------------------------------


def lcs_bruteforce(a, b):
    """Longest common subsequence length by enumerating subsequences of a."""
    best = 0
    for mask in range(1 << len(a)):
        sub = [a[i] for i in range(len(a)) if mask >> i & 1]
        if len(sub) <= best:
            continue
        it = iter(b)
        if all(tok in it for tok in sub):
            best = len(sub)
    return best


def edit_distance_recursive(a, b, memo=None):
    if memo is None:
        memo = {}
    key = (len(a), len(b))
    if key in memo:
        return memo[key]
    if not a:
        result = len(b)
    elif not b:
        result = len(a)
    else:
        result = min(
            edit_distance_recursive(a[1:], b[1:], memo) + (a[0] != b[0]),
            edit_distance_recursive(a[1:], b, memo) + 1,
            edit_distance_recursive(a, b[1:], memo) + 1,
        )
    memo[key] = result
    return result


def _all_block_moves(seq):
    n = len(seq)
    for i in range(n):
        for length in range(1, n - i + 1):
            block = seq[i : i + length]
            rest = seq[:i] + seq[i + length :]
            for j in range(len(rest) + 1):
                if j == i:
                    continue
                yield rest[:j] + block + rest[j:]


def ter_bruteforce(hyp, ref, max_shifts=3):
    """Minimum (shifts + edit distance) over all shift sequences up to
    ``max_shifts`` block moves; exhaustive, tiny inputs only."""
    hyp = tuple(hyp)
    ref = tuple(ref)
    frontier = {hyp}
    seen = {hyp}
    best = edit_distance_recursive(hyp, ref)
    for shifts in range(1, max_shifts + 1):
        nxt = set()
        for seq in frontier:
            for moved in _all_block_moves(seq):
                if moved not in seen:
                    seen.add(moved)
                    nxt.add(moved)
        for seq in nxt:
            best = min(best, shifts + edit_distance_recursive(seq, ref))
        frontier = nxt
        if not frontier:
            break
    return best


def wer_bound(hyp, ref):
    """Shift-less word error rate (upper bound for TER)."""
    return edit_distance_recursive(tuple(hyp), tuple(ref)) / len(ref)


# --- n-gram scores by direct substitution ----------------------------------


def _ngram_positions(tokens, n):
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def _count(grams, g):
    return sum(1 for x in grams if x == g)


def bleu_oracle(cand, refs, max_n, epsilon=1e-9):
    cand = list(cand)
    refs = [list(r) for r in refs]
    c = len(cand)
    if c == 0:
        return 0.0
    r = min((abs(len(t) - c), len(t)) for t in refs)[1]
    bp = min(1.0, math.exp(1.0 - Fraction(r, c)))
    product = 1.0
    for n in range(1, max_n + 1):
        grams = _ngram_positions(cand, n)
        if not grams:
            p = epsilon
        else:
            clipped = 0
            for g in set(grams):
                best_ref = max(_count(_ngram_positions(t, n), g) for t in refs)
                clipped += min(_count(grams, g), best_ref)
            p = clipped / len(grams) if clipped else epsilon / len(grams)
        product *= p
    return bp * product ** (1.0 / max_n)


def nist_oracle(cand, refs, max_n=5):
    cand = list(cand)
    refs = [list(r) for r in refs]
    total_words = sum(len(t) for t in refs)
    all_ref_grams = {}
    for n in range(1, max_n + 1):
        for t in refs:
            for g in _ngram_positions(t, n):
                all_ref_grams[g] = all_ref_grams.get(g, 0) + 1

    def info(g):
        denom = all_ref_grams[g]
        num = all_ref_grams.get(g[:-1], total_words) if len(g) > 1 else total_words
        return math.log2(num / denom)

    score = 0.0
    for n in range(1, max_n + 1):
        grams = _ngram_positions(cand, n)
        if not grams:
            continue
        acc = 0.0
        for g in set(grams):
            best_ref = max(_count(_ngram_positions(t, n), g) for t in refs)
            matched = min(_count(grams, g), best_ref)
            if matched and g in all_ref_grams:
                acc += info(g) * matched
        score += acc / len(grams)
    rbar = total_words / len(refs)
    ratio = len(cand) / rbar
    beta = math.log(0.5) / math.log(2.0 / 3.0) ** 2
    brevity = 1.0 if ratio >= 1.0 else math.exp(beta * math.log(ratio) ** 2)
    return score * brevity


def rouge_oracle(cand, refs):
    cand = list(cand)
    best = 0.0
    for t in refs:
        t = list(t)
        lcs = lcs_bruteforce(cand, t)
        if lcs == 0:
            continue
        p = Fraction(lcs, len(cand))
        r = Fraction(lcs, len(t))
        best = max(best, float(2 * p * r / (p + r)))
    return best


def meteor_oracle(cand, ref, stem, alpha=0.9, beta=3.0, gamma=0.5):
    """Brute force over stage-1 (exact) then stage-2 (stem) alignments:
    maximum matches per stage, then fewest crossings, ties lexicographic."""
    cand = list(cand)
    ref = list(ref)

    def matchings(ci, rj, predicate):
        """All maximal one-to-one link sets between free positions."""
        pairs = [(i, j) for i in ci for j in rj if predicate(cand[i], ref[j])]
        best_size = 0
        results = [[]]

        def extend(chosen, used_c, used_r, remaining):
            nonlocal best_size, results
            if len(chosen) > best_size:
                best_size = len(chosen)
                results = [list(chosen)]
            elif len(chosen) == best_size:
                results.append(list(chosen))
            for k, (i, j) in enumerate(remaining):
                if i in used_c or j in used_r:
                    continue
                chosen.append((i, j))
                extend(chosen, used_c | {i}, used_r | {j}, remaining[k + 1:])
                chosen.pop()

        extend([], set(), set(), pairs)
        return [m for m in results if len(m) == best_size]

    def crossings(links):
        return sum(
            1 for (a, b), (c, d) in itertools.combinations(links, 2)
            if (a - c) * (b - d) < 0)

    free_c = set(range(len(cand)))
    free_r = set(range(len(ref)))
    best_links = None
    stage1 = matchings(sorted(free_c), sorted(free_r), lambda x, y: x == y)
    for links1 in stage1:
        rem_c = sorted(free_c - {i for i, _ in links1})
        rem_r = sorted(free_r - {j for _, j in links1})
        stage2 = matchings(rem_c, rem_r, lambda x, y: stem(x) == stem(y))
        for links2 in stage2:
            links = sorted(links1 + links2)
            key = (-len(links), crossings(links), links)
            if best_links is None or key < best_links[0]:
                best_links = (key, links)
    links = best_links[1]
    m = len(links)
    if m == 0:
        return 0.0
    p = m / len(cand)
    r = m / len(ref)
    fmean = p * r / (alpha * p + (1 - alpha) * r)
    chunks = 0
    prev = None
    for i, j in links:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return fmean * (1.0 - gamma * (chunks / m) ** beta)


def lepor_oracle(cand, ref, alpha=1.0, beta=1.0):
    """Direct formula substitution for the basic unigram LEPOR."""
    c = len(cand)
    r = len(ref)
    if c < r:
        lp = math.exp(1 - r / c)
    elif c > r:
        lp = math.exp(1 - c / r)
    else:
        lp = 1.0
    used = set()
    matched = 0
    npd_total = 0.0
    for i, tok in enumerate(cand):
        spots = [j for j, t in enumerate(ref) if t == tok and j not in used]
        if spots:
            j = min(spots, key=lambda j: (abs((j + 1) / r - (i + 1) / c), j))
            used.add(j)
            matched += 1
            npd_total += abs((i + 1) / c - (j + 1) / r)
        else:
            npd_total += (i + 1) / c
    if matched == 0:
        return 0.0
    precision = matched / c
    recall = matched / r
    return (math.exp(-npd_total / c) * lp
            * (alpha + beta) / (alpha / recall + beta / precision))


def cider_oracle(items, max_n=4):
    """Direct substitution: TF-IDF vectors, idf = ln(N/(1+df))."""
    n_items = len(items)
    df = {}
    for _, refs in items:
        grams = set()
        for t in refs:
            for n in range(1, max_n + 1):
                grams.update(_ngram_positions(list(t), n))
        for g in grams:
            df[g] = df.get(g, 0) + 1

    def idf(g):
        return math.log(n_items / (1.0 + df.get(g, 0)))

    scores = []
    for cand, refs in items:
        acc = 0.0
        for n in range(1, max_n + 1):
            cg = _ngram_positions(list(cand), n)
            cvec = {g: _count(cg, g) * idf(g) for g in set(cg)}
            cnorm = math.sqrt(sum(v * v for v in cvec.values()))
            if cnorm == 0:
                continue
            total = 0.0
            for t in refs:
                rg = _ngram_positions(list(t), n)
                rvec = {g: _count(rg, g) * idf(g) for g in set(rg)}
                rnorm = math.sqrt(sum(v * v for v in rvec.values()))
                if rnorm == 0:
                    continue
                dot = sum(v * rvec.get(g, 0.0) for g, v in cvec.items())
                total += max(0.0, dot / (cnorm * rnorm))
            acc += total / len(refs)
        scores.append(10.0 * acc / max_n)
    return scores


# --- ICC by explicit sums of squares ----------------------------------------


def icc_oracle(matrix, model):
    n = len(matrix)
    k = len(matrix[0])
    grand = sum(sum(row) for row in matrix) / (n * k)
    row_means = [sum(row) / k for row in matrix]
    col_means = [sum(matrix[i][j] for i in range(n)) / n for j in range(k)]
    ss_total = sum((matrix[i][j] - grand) ** 2 for i in range(n) for j in range(k))
    ss_rows = k * sum((m - grand) ** 2 for m in row_means)
    ss_cols = n * sum((m - grand) ** 2 for m in col_means)
    ms_rows = ss_rows / (n - 1)
    if model == "one_way":
        ms_within = (ss_total - ss_rows) / (n * (k - 1))
        return (ms_rows - ms_within) / (ms_rows + (k - 1) * ms_within)
    ms_err = (ss_total - ss_rows - ss_cols) / ((n - 1) * (k - 1))
    ms_cols = ss_cols / (k - 1)
    if model == "two_way_single":
        return (ms_rows - ms_err) / (
            ms_rows + (k - 1) * ms_err + k * (ms_cols - ms_err) / n)
    if model == "two_way_average":
        return (ms_rows - ms_err) / (ms_rows + (ms_cols - ms_err) / n)
    raise ValueError(model)
