"""Convergence of the standardized weight-distribution cumulants to the
limit law.

For each even order the closed cumulant formula is printed across a range of
level counts N together with the N -> infinity limit; the gap shrinks
geometrically, and the ratio column makes the rate visible.
"""
import argparse

from digitsum.altsum import limit_cumulant, standardized_cumulant


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--orders", default="4,6,8", help="Comma-separated even orders.")
    parser.add_argument("--n-max", type=int, default=12)
    args = parser.parse_args()

    for order in (int(tok) for tok in args.orders.split(",")):
        limit = limit_cumulant(order)
        print(f"order {order}: limit {limit:.15g}")
        print(f"{'N':>4s} {'value':>22s} {'gap to limit':>14s} {'gap ratio':>10s}")
        previous_gap = None
        for N in range(1, args.n_max + 1):
            value = standardized_cumulant(N, order)
            gap = abs(value - limit)
            ratio = "" if previous_gap in (None, 0.0) else f"{gap / previous_gap:10.4f}"
            print(f"{N:>4d} {value:>22.15g} {gap:>14.3e} {ratio:>10s}")
            previous_gap = gap
        print()


if __name__ == "__main__":
    main()
