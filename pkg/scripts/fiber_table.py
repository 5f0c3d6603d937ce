"""For each unsigned pair class: d, the matched rows, and the clans of its real fiber."""
import argparse

from flagorbit.clans import count_clans, omega_to_clan
from flagorbit.galois import d_of_tau, k_partition, real_fiber
from flagorbit.params import enumerate_R_circle_classes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int)
    args = ap.parse_args()
    total = 0
    for tau in enumerate_R_circle_classes(args.n):
        d = d_of_tau(tau)
        total += 2 ** d
        clans = ", ".join(omega_to_clan(om).to_text() for om in real_fiber(tau))
        print(f"{tau.column_codes()}  d={d}  one={list(k_partition(tau).one)}  [{clans}]")
    print(f"sum of 2^d = {total}, count formula = {count_clans(args.n)}")


if __name__ == "__main__":
    main()
