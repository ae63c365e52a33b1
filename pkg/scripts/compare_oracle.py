"""Compare the block classifier against the Hom oracle on a grid of parameter points.

    python scripts/compare_oracle.py --nmax 5
    python scripts/compare_oracle.py --nmax 4 --ell 3 4 --weights -2 -1 1 2 3
"""
import argparse
import itertools
import time
from fractions import Fraction

from symblob.blocks import UnsupportedRegime, classify, classify_bnx
from symblob.exact import RootSpec
from symblob.params import ParameterError, WeightParams
from symblob.oracle import linkage_blocks


def show(bp):
    return [[str(l) for l in c] for c in bp.classes if len(c) > 1]


def points(args):
    specs = [RootSpec.generic()] + [RootSpec.root(l) for l in args.ell]
    ws = [Fraction(w) for w in args.weights]
    for spec, (w1, w2) in itertools.product(specs, itertools.product(ws, repeat=2)):
        yield WeightParams(w1, w2, theta=args.theta, spec=spec)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("--ell", type=int, nargs="*", default=[3])
    ap.add_argument("--weights", nargs="+", default=["1/3", "2/5", "3/4", "1", "2", "-2"])
    ap.add_argument("--theta", type=Fraction)
    args = ap.parse_args()
    bad = total = 0
    for p in points(args):
        for n in range(1, args.nmax + 1):
            try:
                mine = classify_bnx(n, p) if p.theta is not None else classify(n, p)
                t = time.perf_counter()
                oracle = linkage_blocks(n, p)
            except (UnsupportedRegime, ParameterError) as e:
                print(f"skip w1={p.w1} w2={p.w2} ell={p.spec.ell}: {e}")
                break
            total += 1
            ok = mine.canonical() == oracle.canonical()
            bad += not ok
            print(f"w1={p.w1} w2={p.w2} ell={p.spec.ell} n={n} {mine.regime:<30} "
                  f"{'ok' if ok else 'MISMATCH'} {time.perf_counter() - t:.1f}s")
            if not ok:
                print("   classify", show(mine))
                print("   oracle  ", show(oracle))
    print(f"{bad} mismatches out of {total}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
