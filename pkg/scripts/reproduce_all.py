"""Run every reproduction bundle and print a pass/fail table with timings.

    python scripts/reproduce_all.py [--seed N] [--json out.json]
"""
import argparse
import json
import sys

from sinhmajor.repro import BUNDLES, DEFAULT_SEED, run_bundle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--json", help="also write the full report here")
    args = ap.parse_args()

    reports = [run_bundle(name, seed=args.seed) for name in BUNDLES]
    for rep in reports:
        print(f"{'PASS' if rep.passed else 'FAIL'}  {rep.name:<26} {rep.seconds:7.2f} s")
        for c in rep.checks:
            mark = "ok " if c.passed else "BAD"
            print(f"      {mark} {c.name}: measured={c.measured!r} expected={c.expected!r}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2, default=str)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
