#!/usr/bin/env python3
"""Fit the spectral gap of the deformed cone Laplacian against t.

The localized oscillator model predicts a gap growing linearly in t; the
least-squares slope printed here should be positive, with gap roughly
doubling when t doubles.
"""

import argparse

from conemorse.spectral import gap_growth, gap_growth_to_csv, suggested_cutoff


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t", type=float, action="append", default=None)
    parser.add_argument("--degree", type=int, default=1, choices=[0, 1, 2, 3])
    parser.add_argument("-o", "--output", default=None, help="write (t, gap) CSV here")
    args = parser.parse_args()
    t_values = args.t or [10.0, 20.0, 40.0]

    result = gap_growth(t_values, cutoff_rule=suggested_cutoff, degree=args.degree)
    for t, n, g in zip(result.t_values, result.cutoffs, result.gaps):
        print(f"t = {t:6.1f}  cutoff = {n:3d}  gap = {g:12.4f}")
    print(f"least-squares slope: {result.slope:.4f}")
    if len(result.gaps) >= 3:
        print(f"gap ratio between the last two t values: {result.gaps[-1] / result.gaps[-2]:.3f}")
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(gap_growth_to_csv(result))
        print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
