"""Runtime rehearsal for the full released-data workload.

Builds a synthetic corpus with the released datasets' shape (404 + 1,181 +
875 instances, BAGEL with 2 references, the SF sets with ~5, outputs that
partially overlap their references) and times score + analyze end to end.
The TER shift search dominates; the budget is 60 s on one laptop core.

Usage: python scripts/benchmark_runtime.py [--instances N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from metricide.corpus import Corpus, Instance, RatingTriple, parse_mr
from metricide.meta_eval import MetricFrame, analyze
from metricide.word_metrics import score_corpus

NOUNS = ["restaurant", "hotel", "place", "venue", "bar", "cafe"]
AREAS = ["riverside", "downtown", "embarcadero", "north", "centre", "marina"]
FOODS = ["chinese", "french", "fastfood", "moroccan", "italian", "seafood"]
PRICES = ["cheap", "moderate", "expensive", "pricey"]
FILLER = ["the", "a", "is", "in", "with", "and", "that", "allows", "serves",
          "located", "near", "good", "nice", "there", "are", "no", "kids",
          "dogs", "internet", "access", "food", "area", "price", "range",
          "it", "offers", "you", "can", "find", "very"]


def _sentence(rng, length):
    words = [FILLER[int(i)] for i in rng.integers(0, len(FILLER), size=length)]
    words[int(rng.integers(0, length))] = NOUNS[int(rng.integers(0, len(NOUNS)))]
    return " ".join(words) + "."


def _noisy_copy(rng, text):
    """An output sharing most tokens with its reference: the expensive
    regime for the shift search (many candidate block moves)."""
    tokens = text[:-1].split()
    ops = rng.integers(0, 4)
    for _ in range(int(ops)):
        kind = int(rng.integers(0, 4))
        if not tokens:
            break
        pos = int(rng.integers(0, len(tokens)))
        if kind == 0:
            tokens.insert(pos, FILLER[int(rng.integers(0, len(FILLER)))])
        elif kind == 1 and len(tokens) > 2:
            tokens.pop(pos)
        elif kind == 2:
            tokens[pos] = FILLER[int(rng.integers(0, len(FILLER)))]
        else:
            block_len = int(rng.integers(1, min(4, len(tokens)) + 1))
            start = int(rng.integers(0, max(1, len(tokens) - block_len)))
            block = tokens[start : start + block_len]
            rest = tokens[:start] + tokens[start + block_len:]
            dest = int(rng.integers(0, len(rest) + 1))
            tokens = rest[:dest] + block + rest[dest:]
    return " ".join(tokens) + "."


def build_corpus(total=2460, seed=0) -> Corpus:
    rng = np.random.Generator(np.random.PCG64(seed))
    shape = [("BAGEL", 404, 2, ("TGen", "LOLS")),
             ("SFRest", 1181, 5, ("RNNLG", "LOLS")),
             ("SFHotel", 875, 5, ("RNNLG", "LOLS"))]
    scale = total / 2460
    instances = []
    counter = 0
    for dataset, size, n_refs, systems in shape:
        size = max(2, int(size * scale))
        for k in range(size):
            mr = parse_mr(
                f"inform(name=X, area={AREAS[int(rng.integers(0, len(AREAS)))]}, "
                f"food={FOODS[int(rng.integers(0, len(FOODS)))]}, "
                f"pricerange={PRICES[int(rng.integers(0, len(PRICES)))]})")
            refs = tuple(_sentence(rng, int(rng.integers(8, 26)))
                         for _ in range(n_refs))
            output = _noisy_copy(rng, refs[int(rng.integers(0, n_refs))])
            ratings = {
                d: RatingTriple(tuple(int(x) for x in rng.integers(1, 7, size=3)), d)
                for d in ("informativeness", "naturalness", "quality")
            }
            counter += 1
            instances.append(Instance(
                instance_id=f"i{counter:05d}", dataset=dataset,
                system=systems[k % 2], mr=mr, output=output, references=refs,
                ratings=ratings, parse_score=float(rng.uniform(20, 95)),
                pair_key=f"{dataset}-p{k // 2}" if True else None))
    return Corpus(instances=tuple(instances))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=2460)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    corpus = build_corpus(total=args.instances, seed=args.seed)
    print(f"synthetic corpus: {len(corpus)} instances")

    start = time.perf_counter()
    vectors = score_corpus(corpus)
    score_s = time.perf_counter() - start
    print(f"score:   {score_s:7.2f} s")

    frame = MetricFrame.from_vectors(vectors)
    start = time.perf_counter()
    analyze(corpus, frame, seed=args.seed, include_quantized=True)
    analyze_s = time.perf_counter() - start
    print(f"analyze: {analyze_s:7.2f} s")
    print(f"total:   {score_s + analyze_s:7.2f} s (budget 60 s)")


if __name__ == "__main__":
    main()
