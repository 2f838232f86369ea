#!/usr/bin/env python3
"""Regenerates data/banknote.csv.

The sandbox this project was built in has no route to the UCI archive, so the
repository ships a synthetic stand-in for the banknote-authentication table:
same schema (4 real features + 0/1 label), same row count (1372) and label
split (762 genuine / 610 forged), and similar per-class feature geometry, so a
simple linear decision rule separates the classes about as well as on the real
data. Replace data/banknote.csv with the real file (and rerun nothing) if you
have it; the loader only cares about the CSV schema.

Deterministic: fixed seed, output is byte-stable.
"""

import numpy as np

SEED = 20240817
N0, N1 = 762, 610  # class 0 first, then class 1, like the published file


def sample_class(rng, n, m1, s1, m2, s2, m4, s4, f3_base, f3_slope, f3_noise):
    f1 = rng.normal(m1, s1, n)
    f2 = rng.normal(m2, s2, n)
    # curtosis runs against skewness in the real table (corr ~ -0.8)
    f3 = f3_base + f3_slope * (f2 - m2) + rng.normal(0.0, f3_noise, n)
    f4 = rng.normal(m4, s4, n)
    return np.column_stack([f1, f2, f3, f4])


def main():
    rng = np.random.default_rng(SEED)
    c0 = sample_class(rng, N0, 2.60, 1.55, 4.80, 4.60, -1.15, 2.13,
                      f3_base=0.30, f3_slope=-0.52, f3_noise=1.9)
    c1 = sample_class(rng, N1, -2.55, 1.50, -2.20, 4.70, -1.25, 2.07,
                      f3_base=3.30, f3_slope=-0.70, f3_noise=2.2)

    lo = np.array([-7.5, -14.0, -5.5, -8.6])
    hi = np.array([7.5, 13.0, 18.0, 2.8])
    c0 = np.clip(c0, lo, hi)
    c1 = np.clip(c1, lo, hi)

    with open("banknote.csv", "w") as f:
        for row in np.round(c0, 4):
            f.write("%.4f,%.4f,%.4f,%.4f,0\n" % tuple(row))
        for row in np.round(c1, 4):
            f.write("%.4f,%.4f,%.4f,%.4f,1\n" % tuple(row))


if __name__ == "__main__":
    main()
