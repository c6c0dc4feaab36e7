"""Validate, score and analyze a rated NLG corpus in one pass.

Convenience wrapper over the CLI for the common experiment loop:

    python scripts/run_full_eval.py --input data/corpus.csv --out runs/full \
        [--embeddings vectors.txt] [--seed 0] [--quantize]

Equivalent to `metricide validate && metricide score && metricide analyze`
with shared flags; stops early if validation finds hard errors.
"""

from __future__ import annotations

import argparse
import sys

from metricide.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", required=True)
    parser.add_argument("--out", default="metricide-out")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--embeddings")
    parser.add_argument("--dictionary")
    parser.add_argument("--synonyms")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--quantize", action="store_true")
    parser.add_argument("--lenient", action="store_true")
    args = parser.parse_args()

    common = ["--input", args.input, "--out", args.out,
              "--seed", str(args.seed)]
    if args.format:
        common += ["--format", args.format]
    for flag in ("embeddings", "dictionary", "synonyms"):
        value = getattr(args, flag)
        if value:
            common += [f"--{flag}", value]
    if args.lenient:
        common.append("--lenient")

    code = cli_main(["validate"] + common)
    if code != 0 and not args.lenient:
        print("validation failed; aborting (use --lenient to push through)",
              file=sys.stderr)
        return code

    code = cli_main(["score"] + common)
    if code != 0:
        return code

    analyze_args = ["analyze"] + common
    if args.quantize:
        analyze_args.append("--quantize")
    return cli_main(analyze_args)


if __name__ == "__main__":
    sys.exit(main())
