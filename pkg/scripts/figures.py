"""Write SVG weight plots of the seven reference block pictures into a directory.

    python scripts/figures.py out/
"""
import argparse
import pathlib

from symblob.blocks import classify, plot_weights
from symblob.reference import FIGURE_PARTITIONS, as_triples, expected_triples, figure_params


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", type=pathlib.Path)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name in FIGURE_PARTITIONS:
        n, p = figure_params(name)
        bp = classify(n, p)
        path = args.outdir / f"{name}.svg"
        path.write_text(plot_weights(n, p, bp))
        same = as_triples(bp) == expected_triples(name)
        print(f"{path}  n={n} w1={p.w1} w2={p.w2}  {'matches' if same else 'DIFFERS from'} reference")


if __name__ == "__main__":
    main()
