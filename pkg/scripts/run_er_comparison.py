#!/usr/bin/env python3
"""Generate a random single-affiliation network and run the full
two-representation comparison, writing plot-ready tables.

Example:
    python scripts/run_er_comparison.py --n 2000 --p 0.003 --m 10 --seed 42 --out runs/er42
"""

import argparse
from pathlib import Path

from affnet import ErConfig, generate_er_affiliation, run_comparison
from affnet.pipeline import export_report
from affnet.transforms import rank4_to_rank3


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2000)
    parser.add_argument("--p", type=float, default=0.003)
    parser.add_argument("--m", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", type=Path, default=Path("er_comparison"))
    args = parser.parse_args()

    config = ErConfig(args.n, args.p, args.m, args.seed)
    rank4, _ = generate_er_affiliation(config)
    rank3 = rank4_to_rank3(rank4)
    report = run_comparison(rank4, rank3, metadata={"source": "generated", **config.metadata()})
    written = export_report(report, args.out)

    print(f"links: {rank4.n_links}")
    for name, rep in (("rank3", report.rank3), ("rank4", report.rank4)):
        print(
            f"{name}: density {rep.density['fraction']:.3e}, "
            f"fittable {rep.fittable_fraction:.3f}, "
            f"significant {rep.significance_fraction:.3f}"
        )
    mean3 = sum(s.mean_degree for s in report.rank3.slices) / len(report.rank3.slices)
    mean4 = sum(s.mean_degree for s in report.rank4.slices) / len(report.rank4.slices)
    print(f"slice mean-degree ratio rank4/rank3: {mean4 / mean3:.4f}")
    print(f"wrote {len(written)} files to {args.out}")


if __name__ == "__main__":
    main()
