"""Table of periodic-point counts N_m for a few hyperbolic toral maps.

Each row shows the Lefschetz-formula count, |det(A^m - I)| and, up to
--brute-max, the lattice enumeration.

    python3 scripts/periodic_counts.py --max-m 12 --brute-max 8
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from hypdyn.lefschetz import (
    periodic_count_formula,
    toral_det_count,
    toral_induced_family,
    toral_periodic_points_bruteforce,
)
from hypdyn.matrix import Matrix


@dataclass
class TableConfig:
    max_m: int = 10
    brute_max: int = 6
    maps: dict[str, list[list[int]]] = field(
        default_factory=lambda: {
            "cat": [[2, 1], [1, 1]],
            "fib": [[1, 1], [1, 0]],
            "neg": [[-2, 1], [1, -1]],
            "t3": [[0, 0, 1], [1, 0, 1], [0, 1, 0]],
        }
    )


def run(cfg: TableConfig) -> None:
    for name, rows in cfg.maps.items():
        a = Matrix.from_rows(rows)
        fam = toral_induced_family(a)
        print(f"{name}: {rows}")
        print(f"  {'m':>3} {'formula':>14} {'|det|':>14} {'enumerated':>12}")
        for m in range(1, cfg.max_m + 1):
            f = periodic_count_formula(fam, m).count
            d = toral_det_count(a, m)
            b = str(toral_periodic_points_bruteforce(a, m)) if m <= cfg.brute_max else "-"
            print(f"  {m:>3} {f:>14} {d:>14} {b:>12}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=10)
    ap.add_argument("--brute-max", type=int, default=6)
    args = ap.parse_args()
    run(TableConfig(max_m=args.max_m, brute_max=args.brute_max))


if __name__ == "__main__":
    main()
