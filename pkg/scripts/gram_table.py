"""Print direct / closed-form and diagram / path determinant ratios for every DN label.

    python scripts/gram_table.py --nmax 6 --w1 1/3 --w2 2/5
"""
import argparse
import time
from fractions import Fraction

from symblob.gram import closed_form_ratio, diagram_path_ratio
from symblob.params import WeightParams, dn_labels


def fmt(r):
    if r is None:
        return "not a monomial"
    sign, (a, b) = r
    return f"{'+' if sign > 0 else '-'} dL^{a} dR^{b}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("--w1", type=Fraction, default=Fraction(1, 3))
    ap.add_argument("--w2", type=Fraction, default=Fraction(2, 5))
    args = ap.parse_args()
    p = WeightParams(args.w1, args.w2)
    print(f"{'label':<16}{'direct/closed':<22}{'diagram/path':<22}secs")
    for n in range(1, args.nmax + 1):
        for L in dn_labels(n):
            t = time.perf_counter()
            a, b = closed_form_ratio(L, p), diagram_path_ratio(L, p)
            print(f"{str(L):<16}{fmt(a):<22}{fmt(b):<22}{time.perf_counter() - t:.2f}")


if __name__ == "__main__":
    main()
