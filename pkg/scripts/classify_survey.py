"""Classify every pair of integer triples up to a bound and tally the verdicts by rule.

The tally shows how much of the space the exact rules settle and how much
is left to the probes or to ``Unknown``.

    python scripts/classify_survey.py --max 5 --budget-ms 200 [--csv out.csv]
"""
import argparse
import collections
import csv
import itertools
import sys
import time

from sinhmajor import classify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=4)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--budget-ms", type=float, default=200)
    ap.add_argument("--csv")
    args = ap.parse_args()

    tuples = list(itertools.combinations_with_replacement(range(args.max, 0, -1), args.n))
    tally = collections.Counter()
    rows = []
    start = time.perf_counter()
    for alpha, beta in itertools.product(tuples, repeat=2):
        c = classify(alpha, beta, budget_ms=args.budget_ms)
        tally[(c.verdict, c.rule)] += 1
        rows.append([" ".join(map(str, alpha)), " ".join(map(str, beta)), c.verdict, c.rule])
    for (verdict, rule), count in sorted(tally.items()):
        print(f"{verdict:<20} {rule:<22} {count}")
    print(f"{len(rows)} pairs in {time.perf_counter() - start:.1f} s")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["alpha", "beta", "verdict", "rule"])
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
