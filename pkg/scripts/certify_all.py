"""Brute-force certification for n <= 3 and Borel sampling for m <= 6, as one JSON report."""
import argparse
import json

from flagorbit.linalg import QQ, QQI
from flagorbit.oracle import DEFAULT_SEED, borel_invariance_sample, certify_classifier


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()
    report = {"certify": [certify_classifier(n) for n in range(4)], "sampling": []}
    for fld in (QQ, QQI):
        for m in range(1, 7):
            report["sampling"].append(borel_invariance_sample(m, args.trials, args.seed, fld))
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
