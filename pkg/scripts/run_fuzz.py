"""Run every fuzz suite and print a one-line summary per suite.

    python scripts/run_fuzz.py --trials 500 --seed 7
"""
import argparse
import json
import sys

from cuspline.fuzz import SUITES, decision_rate, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--verbose", action="store_true", help="dump counterexamples as JSON")
    args = ap.parse_args()

    bad = 0
    for name in SUITES:
        report = run_suite(name, args.trials, args.seed)
        bad += report["failures"]
        print(f"{name:<13} {report['trials']:>6} trials  {report['failures']} failures")
        if args.verbose and report["counterexamples"]:
            print(json.dumps(report["counterexamples"], indent=2, sort_keys=True))
    print(f"unitarizable fraction of random generic parameters: {decision_rate(args.trials, args.seed):.3f}")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
