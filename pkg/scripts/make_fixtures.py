"""Regenerate the static test fixtures under tests/fixtures/.

The fixture corpus is small but exercises every analysis path: two
datasets, two system pairs, rating medians spread over all three bins,
a few missing parse scores, flag slots and placeholder values.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

ROWS = [
    # instance_id, pair_key, dataset, system, mr, output, references(list),
    # inf, nat, qual (3 raters each), parse_score
    ("r01a", "r1", "FixRest", "alpha",
     "inform(name=X, food=chinese, pricerange=cheap)",
     "X is a cheap chinese restaurant.",
     ["X is a cheap restaurant serving chinese food.",
      "X serves cheap chinese food."],
     (6, 5, 6), (5, 5, 6), (5, 6, 5), 81.2),
    ("r01b", "r1", "FixRest", "beta",
     "inform(name=X, food=chinese, pricerange=cheap)",
     "X is a restaurant restaurant cheap and and chinese.",
     ["X is a cheap restaurant serving chinese food.",
      "X serves cheap chinese food."],
     (4, 3, 4), (2, 2, 3), (2, 1, 2), 55.0),
    ("r02a", "r2", "FixRest", "alpha",
     "inform_nomatch(area=embarcadero, kidsallowed=yes, pricerange=expensive)",
     "sorry, there are no expensive restaurants in embarcadero that allow kids.",
     ["unfortunately i could not find any expensive restaurants in embarcadero that allow kids."],
     (5, 6, 5), (5, 5, 5), (6, 5, 5), 77.9),
    ("r02b", "r2", "FixRest", "beta",
     "inform_nomatch(area=embarcadero, kidsallowed=yes, pricerange=expensive)",
     "i but i but i but i but i but expensive.",
     ["unfortunately i could not find any expensive restaurants in embarcadero that allow kids."],
     (1, 1, 2), (1, 2, 1), (1, 1, 1), 22.4),
    ("r03a", "r3", "FixRest", "alpha",
     "confirm(food=french)",
     "did you say you are looking for french food?",
     ["you are looking for french food, right?",
      "can i confirm that you want french food?"],
     (5, 5, 4), (6, 5, 5), (5, 5, 5), 88.0),
    ("r03b", "r3", "FixRest", "beta",
     "confirm(food=french)",
     "you want french food right?",
     ["you are looking for french food, right?",
      "can i confirm that you want french food?"],
     (5, 4, 5), (4, 5, 4), (4, 4, 5), 70.3),
    ("r04a", "r4", "FixRest", "alpha",
     "goodbye()",
     "thank you and goodbye.",
     ["goodbye and thank you.", "thank you, goodbye."],
     (6, 6, 5), (6, 6, 6), (6, 5, 6), 93.5),
    ("r04b", "r4", "FixRest", "beta",
     "goodbye()",
     "goodbye goodbye thank.",
     ["goodbye and thank you.", "thank you, goodbye."],
     (4, 4, 5), (2, 3, 2), (2, 2, 3), 41.0),
    ("r05a", "r5", "FixRest", "alpha",
     "inform(name=X, area=riverside, food=fastfood, pricerange=cheap)",
     "X is a cheap fastfood restaurant located near the riverside.",
     ["X is a cheap fastfood restaurant located near the riverside.",
      "located by the riverside, X offers cheap fastfood."],
     (6, 6, 6), (6, 5, 6), (6, 6, 5), 84.5),
    ("r05b", "r5", "FixRest", "beta",
     "inform(name=X, area=riverside, food=fastfood, pricerange=cheap)",
     "x is a restaurant on the riverside called located at the riverside and at is.",
     ["X is a cheap fastfood restaurant located near the riverside.",
      "located by the riverside, X offers cheap fastfood."],
     (2, 1, 2), (1, 1, 2), (2, 1, 1), 30.8),
    ("r06a", "r6", "FixRest", "alpha",
     "request(area)",
     "what area are you looking for?",
     ["in which area would you like to eat?", "which area do you prefer?"],
     (5, 4, 5), (5, 5, 5), (5, 4, 4), 90.1),
    ("r06b", "r6", "FixRest", "beta",
     "request(area)",
     "what area what area do you want?",
     ["in which area would you like to eat?", "which area do you prefer?"],
     (4, 3, 3), (3, 2, 3), (3, 3, 2), None),
    ("h01a", "h1", "FixHotel", "alpha",
     "inform(name=X, area=downtown, dogsallowed=no)",
     "X is a hotel in downtown where dogs are not allowed.",
     ["X is located downtown and does not allow dogs.",
      "the hotel X in downtown does not permit dogs."],
     (6, 5, 6), (5, 6, 5), (5, 5, 6), 86.7),
    ("h01b", "h1", "FixHotel", "gamma",
     "inform(name=X, area=downtown, dogsallowed=no)",
     "X is a downtown hotel, no dogs.",
     ["X is located downtown and does not allow dogs.",
      "the hotel X in downtown does not permit dogs."],
     (4, 5, 4), (4, 4, 3), (4, 3, 4), 62.9),
    ("h02a", "h2", "FixHotel", "alpha",
     "inform_nomatch(area=north, hasinternet=yes)",
     "i am sorry, there are no hotels with internet in the north.",
     ["sorry, i could not find any hotels in the north with internet access."],
     (5, 5, 6), (5, 5, 4), (5, 4, 5), None),
    ("h02b", "h2", "FixHotel", "gamma",
     "inform_nomatch(area=north, hasinternet=yes)",
     "no no hotels north internet sory.",
     ["sorry, i could not find any hotels in the north with internet access."],
     (2, 2, 3), (1, 2, 2), (2, 2, 1), 25.6),
    ("h03a", "h3", "FixHotel", "alpha",
     "goodbye()",
     "have a nice day, goodbye.",
     ["goodbye, have a nice day."],
     (6, 6, 6), (6, 6, 5), (6, 6, 6), 95.2),
    ("h03b", "h3", "FixHotel", "gamma",
     "goodbye()",
     "goodbye have nice day.",
     ["goodbye, have a nice day."],
     (5, 5, 4), (3, 4, 4), (4, 4, 3), 58.3),
]

EMBEDDINGS = {
    "cheap": (1.0, 0.9, 0.1, 0.0),
    "inexpensive": (0.9, 1.0, 0.1, 0.0),
    "expensive": (-0.8, -0.9, 0.2, 0.1),
    "restaurant": (0.1, 0.2, 1.0, 0.3),
    "eatery": (0.1, 0.25, 0.95, 0.3),
    "hotel": (0.0, 0.1, 0.9, 0.6),
    "food": (0.2, 0.3, 0.8, 0.1),
    "chinese": (0.5, 0.1, 0.4, 0.7),
    "french": (0.4, 0.1, 0.5, 0.8),
    "fastfood": (0.6, 0.5, 0.7, 0.1),
    "area": (0.1, 0.0, 0.2, 0.9),
    "riverside": (0.2, 0.1, 0.3, 1.0),
    "embarcadero": (0.3, 0.1, 0.2, 0.95),
    "downtown": (0.25, 0.05, 0.3, 0.9),
    "north": (0.15, 0.0, 0.1, 0.85),
    "kids": (0.7, 0.6, 0.2, 0.2),
    "dogs": (0.65, 0.55, 0.25, 0.2),
    "internet": (0.1, 0.4, 0.6, 0.5),
    "goodbye": (0.0, 0.8, 0.1, 0.4),
    "thank": (0.05, 0.85, 0.15, 0.35),
    "name": (0.3, 0.3, 0.3, 0.3),
    "inform": (0.4, 0.4, 0.2, 0.5),
    "nomatch": (-0.4, 0.2, 0.1, 0.5),
    "confirm": (0.35, 0.45, 0.25, 0.55),
    "request": (0.3, 0.5, 0.2, 0.6),
    "x": (0.5, 0.5, 0.5, 0.5),
    "pricerange": (0.9, 0.8, 0.2, 0.1),
    "kidsallowed": (0.7, 0.65, 0.2, 0.25),
    "dogsallowed": (0.6, 0.6, 0.3, 0.2),
    "hasinternet": (0.15, 0.45, 0.55, 0.5),
    "yes": (0.2, 0.7, 0.3, 0.3),
    "no": (-0.2, 0.6, 0.3, 0.3),
}

SYNONYMS = {
    "cheap": ["inexpensive", "budget"],
    "restaurant": ["eatery"],
    "sorry": ["apologies"],
}


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    header = ["instance_id", "pair_key", "dataset", "system", "mr", "output",
              "references", "inf_1", "inf_2", "inf_3", "nat_1", "nat_2",
              "nat_3", "qual_1", "qual_2", "qual_3", "parse_score"]

    with open(FIXTURES / "corpus.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for (iid, pk, ds, sy, mr, out, refs, inf, nat, qual, prs) in ROWS:
            writer.writerow([
                iid, pk, ds, sy, mr, out, "|~".join(refs),
                *inf, *nat, *qual, "" if prs is None else prs,
            ])

    records = []
    for (iid, pk, ds, sy, mr, out, refs, inf, nat, qual, prs) in ROWS:
        rec = {
            "instance_id": iid, "pair_key": pk, "dataset": ds, "system": sy,
            "mr": mr, "output": out, "references": refs,
        }
        for name, scores in (("inf", inf), ("nat", nat), ("qual", qual)):
            for i, s in enumerate(scores, start=1):
                rec[f"{name}_{i}"] = s
        rec["parse_score"] = prs
        records.append(rec)
    with open(FIXTURES / "corpus.json", "w", encoding="utf-8") as fh:
        json.dump(records, fh, indent=1)
        fh.write("\n")

    with open(FIXTURES / "embeddings.txt", "w", encoding="utf-8") as fh:
        for word, vec in EMBEDDINGS.items():
            fh.write(word + " " + " ".join(str(v) for v in vec) + "\n")

    with open(FIXTURES / "synonyms.txt", "w", encoding="utf-8") as fh:
        for word, syns in SYNONYMS.items():
            fh.write(f"{word}:{','.join(syns)}\n")

    print(f"fixtures written to {FIXTURES}")


if __name__ == "__main__":
    main()
