#!/usr/bin/env python3
"""Regenerate the bundled OEIS b-file fixtures.

The fixture values are produced by the product/fixpoint oracles (not the
recurrences that the fixtures are used to test), written in plain b-file
format.  Index ranges follow the upstream b-files: A000081 starts at 0,
A004111 and A000669 at 1.
"""

import argparse
from pathlib import Path

from treeasym.counts import product_form_oracle
from treeasym.oeis import SEQUENCE_IDS

START_INDEX = {"A000081": 0, "A004111": 1, "A000669": 1}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=500, help="largest index (default 500)")
    parser.add_argument(
        "--out",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "src" / "treeasym" / "fixtures",
        help="output directory",
    )
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for variety, sid in SEQUENCE_IDS.items():
        seq = product_form_oracle(variety, args.n, bound=args.n)
        lines = [f"# {sid}: generated by scripts/make_fixtures.py --n {args.n}"]
        for n in range(START_INDEX[sid], args.n + 1):
            lines.append(f"{n} {seq[n]}")
        path = args.out / f"b{sid[1:]}.txt"
        path.write_text("\n".join(lines) + "\n")
        print(f"{path}: {variety} terms {START_INDEX[sid]}..{args.n}")


if __name__ == "__main__":
    main()
