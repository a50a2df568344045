#!/usr/bin/env python3
"""Render the bound-comparison figure: mutual information vs the three
eavesdropping-information curves, with rate thresholds marked.

Writes bound_curves.png and bound_curves.csv next to this script unless
--out-dir is given.  Requires matplotlib (install the 'plot' extra).
"""

import argparse
from pathlib import Path

import numpy as np

from twqkd import NoiseModel, bound_curve, curve_csv, rate_zero_crossings


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qf-max", type=float, default=0.4)
    parser.add_argument("--steps", type=int, default=400)
    parser.add_argument("--out-dir", type=Path, default=Path(__file__).parent)
    args = parser.parse_args()

    noise = NoiseModel(0.0)
    grid = np.linspace(0.0, args.qf_max, args.steps)
    points = bound_curve(grid, noise)
    (args.out_dir / "bound_curves.csv").write_text(curve_csv(points))

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    def series(attr):
        xs = [p.qf for p in points if getattr(p, attr) is not None]
        ys = [getattr(p, attr) for p in points if getattr(p, attr) is not None]
        return xs, ys

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(*series("i_ab"), "b-", label="I(A:B) = 1 - h(Q)")
    ax.plot(*series("ie_lm05p_upper"), "y--", label="IE upper, four-op x/z")
    ax.plot(*series("ie_six_lower"), "r-.", label="IE lower, six-state")
    ax.plot(*series("ie_lm05gen"), "g:", label="IE, equatorial two-op")
    for name, root in rate_zero_crossings(noise).items():
        if root is not None:
            ax.axvline(root, color="gray", lw=0.5)
    ax.set_xlabel("forward noise qf")
    ax.set_ylabel("bits")
    ax.set_xlim(0, args.qf_max)
    ax.set_ylim(0, 1.02)
    ax.legend(loc="center right", fontsize=9)
    ax.set_title("Information bounds vs forward noise (equal-forward regime)")
    fig.tight_layout()
    fig.savefig(args.out_dir / "bound_curves.png", dpi=150)

    print(f"wrote {args.out_dir / 'bound_curves.csv'}")
    print(f"wrote {args.out_dir / 'bound_curves.png'}")
    for name, root in rate_zero_crossings(noise).items():
        print(f"rate threshold [{name}]: {root:.12g}" if root is not None
              else f"rate threshold [{name}]: none")


if __name__ == "__main__":
    main()
