"""Count the standard shapes on the Steinberg support and how they classify."""
import argparse
from collections import Counter
from fractions import Fraction

from cuspline.jantzen import classify_steinberg, steinberg_shapes
from cuspline.lines import CuspidalSymbol
from cuspline.params import SigmaSupport


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()

    sigma = SigmaSupport("sigma", 1)
    print(f"{'alpha':>5} {'n':>2} {'shapes':>6}  classes")
    for alpha in (Fraction(0), Fraction(1, 2), Fraction(1)):
        line = CuspidalSymbol(f"rho{alpha}", True, alpha)
        for n in range(1, args.max_n + 1):
            shapes = steinberg_shapes(line, sigma, n)
            counts = Counter(classify_steinberg(p, n).value for p in shapes)
            summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
            print(f"{str(alpha):>5} {n:>2} {len(shapes):>6}  {summary}")


if __name__ == "__main__":
    main()
