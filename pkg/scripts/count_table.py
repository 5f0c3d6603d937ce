"""Orbit counts by formula and by enumeration, plus the (p,q) multiplicity check."""
import argparse
from math import comb

from flagorbit.clans import count_clans, count_pq_clans, enumerate_clans


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--enumerate-up-to", type=int, default=7, help="skip enumeration above this n")
    args = ap.parse_args()
    print(f"{'n':>3} {'formula':>10} {'enumerated':>11} {'sum over (p,q)':>15}")
    for n in range(args.max_n + 1):
        enum = sum(1 for _ in enumerate_clans(n)) if n <= args.enumerate_up_to else "-"
        mult = sum(2 ** (n - p - q) * comb(n, p + q) * count_pq_clans(p, q)
                   for p in range(n + 1) for q in range(n + 1 - p))
        print(f"{n:>3} {count_clans(n):>10} {enum:>11} {mult:>15}")


if __name__ == "__main__":
    main()
