#!/usr/bin/env python3
"""Sweep seeds of the random benchmark and tabulate, per representation,
how many slices admit a power-law fit at all (at least three distinct
positive degree values) and how many pass the 0.05 significance threshold.

On Poisson-like random graphs the fittability fractions of both
representations saturate near 1.0 at the default parameters (a rank-4
slice still averages about 0.6 links per active row, enough for three
distinct degrees), while the significance fraction is higher for rank-4:
its 3-4 point right tails line up well in log-log space, which says more
about fitting power laws to few points than about the data.  Lowering p
or raising m separates the fittability fractions.

Example:
    python scripts/significance_sweep.py --n 2000 --p 0.003 --m 10 --seeds 30
"""

import argparse

import numpy as np

from affnet import ErConfig, generate_er_affiliation, run_comparison
from affnet.transforms import rank4_to_rank3


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2000)
    parser.add_argument("--p", type=float, default=0.003)
    parser.add_argument("--m", type=int, default=10)
    parser.add_argument("--seeds", type=int, default=30)
    args = parser.parse_args()

    rows = []
    for seed in range(1, args.seeds + 1):
        config = ErConfig(args.n, args.p, args.m, seed)
        rank4, _ = generate_er_affiliation(config)
        report = run_comparison(rank4, rank4_to_rank3(rank4))
        rows.append((
            seed,
            report.rank3.fittable_fraction,
            report.rank4.fittable_fraction,
            report.rank3.significance_fraction,
            report.rank4.significance_fraction,
        ))

    print("seed\tfittable_r3\tfittable_r4\tsignificant_r3\tsignificant_r4")
    for row in rows:
        print("\t".join(str(v) for v in row))

    fit3 = np.array([r[1] for r in rows])
    fit4 = np.array([r[2] for r in rows])
    sig3 = np.array([r[3] for r in rows])
    sig4 = np.array([r[4] for r in rows])
    print(f"# fittable means: r3 {fit3.mean():.4f}, r4 {fit4.mean():.4f}; "
          f"r3 strictly above r4 in {(fit3 > fit4).sum()}/{len(rows)} seeds")
    print(f"# significant means: r3 {sig3.mean():.4f}, r4 {sig4.mean():.4f}; "
          f"r3 strictly above r4 in {(sig3 > sig4).sum()}/{len(rows)} seeds")


if __name__ == "__main__":
    main()
