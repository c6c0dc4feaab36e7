"""Regenerate tests/fixtures/micro_oracle.json.

Expected values for the curated micro-corpus come from the independent
oracles in tests/oracles.py (exhaustive LCS and shift search, direct
formula substitution), never from the package implementations.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from metricide.textproc import porter_stem  # noqa: E402

PAIRS = [
    {"name": "identity_sentence",
     "candidate": ["x", "is", "a", "moderately", "priced", "restaurant", "in", "x", "."],
     "references": [["x", "is", "a", "moderately", "priced", "restaurant", "in", "x", "."]]},
    {"name": "clipped_the",
     "candidate": ["the"] * 7,
     "references": [["the", "cat", "is", "on", "the", "mat"]]},
    {"name": "block_shift",
     "candidate": ["c", "a", "b"],
     "references": [["a", "b", "c"]]},
    {"name": "substitution",
     "candidate": ["a", "x", "c"],
     "references": [["a", "b", "c"]]},
    {"name": "lcs_swap",
     "candidate": ["a", "b", "c", "d"],
     "references": [["a", "c", "b", "d"]]},
    {"name": "single_token_identity",
     "candidate": ["hello"],
     "references": [["hello"]]},
    {"name": "short_vs_long",
     "candidate": ["a", "b"],
     "references": [["a", "x", "y", "b"]]},
    {"name": "two_token_identity",
     "candidate": ["a", "b"],
     "references": [["a", "b"]]},
    {"name": "disjoint",
     "candidate": ["q", "w"],
     "references": [["a", "b", "c"]]},
    {"name": "multi_reference",
     "candidate": ["the", "cat", "sat"],
     "references": [["the", "cat", "sat", "on", "the", "mat"],
                    ["a", "dog", "sat"],
                    ["the", "cat", "sat", "."]]},
]


def main() -> None:
    items = [(p["candidate"], p["references"]) for p in PAIRS]
    cider_scores = oracles.cider_oracle(items)
    for pair, cider_value in zip(PAIRS, cider_scores):
        cand = pair["candidate"]
        refs = pair["references"]
        expected = {}
        for n in (1, 2, 3, 4):
            expected[f"bleu{n}"] = oracles.bleu_oracle(cand, refs, n)
        expected["rouge"] = oracles.rouge_oracle(cand, refs)
        expected["nist"] = oracles.nist_oracle(cand, refs)
        expected["ter"] = min(
            oracles.ter_bruteforce(cand, r) / len(r) for r in refs)
        expected["lepor"] = max(oracles.lepor_oracle(cand, r) for r in refs)
        expected["meteor"] = max(
            oracles.meteor_oracle(cand, r, porter_stem) for r in refs)
        expected["cider"] = cider_value
        pair["expected"] = expected

    out = ROOT / "tests" / "fixtures" / "micro_oracle.json"
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(PAIRS, fh, indent=1)
        fh.write("\n")
    print(f"wrote {out}")
    for pair in PAIRS:
        print(pair["name"])
        for key, value in pair["expected"].items():
            print(f"  {key:7s} {value:.10f}")


if __name__ == "__main__":
    main()
