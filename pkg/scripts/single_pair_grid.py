"""CSV of the single-pair region test over a rational grid, with a Gram probe per point.

Columns: a, b, c, d, dominated, probe_witness.  A witness at a point marked
dominated would contradict the region test; the script reports any such
point on stderr and exits 1.

    python scripts/single_pair_grid.py --step 1/2 --max 4 > grid.csv
"""
import argparse
import csv
import itertools
import sys
from fractions import Fraction

from sinhmajor import ExponentPair, classify_single, eval_h, gram_probe


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--step", default="1/2")
    ap.add_argument("--max", default="3")
    ap.add_argument("--a", help="fix a (plot the (c, d) plane)")
    ap.add_argument("--b", help="fix b")
    args = ap.parse_args()
    step, top = Fraction(args.step), Fraction(args.max)
    grid = [step * k for k in range(int(top / step) + 1)]
    a_vals = [Fraction(args.a)] if args.a else grid
    b_vals = [Fraction(args.b)] if args.b else grid

    out = csv.writer(sys.stdout)
    out.writerow(["a", "b", "c", "d", "dominated", "probe_witness"])
    contradictions = 0
    for a, b, c, d in itertools.product(a_vals, b_vals, grid, grid):
        if b == 0 and c == 0:
            continue
        dominated = classify_single(a, b, c, d)
        pair = ExponentPair((a, d), (b, c))
        witness = gram_probe(lambda x: eval_h(pair, x), max_size=8) is not None
        if dominated and witness:
            contradictions += 1
            print(f"contradiction at {(a, b, c, d)}", file=sys.stderr)
        out.writerow([str(a), str(b), str(c), str(d), int(dominated), int(witness)])
    return 1 if contradictions else 0


if __name__ == "__main__":
    sys.exit(main())
