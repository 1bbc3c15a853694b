"""Print the cascade and invariant-generator table for a list of types.

    python scripts/generator_table.py --types A1,A2,A3,B2,B3,C3,D4,G2 --r-cap 6
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from cascade_kit.cascade import compute_cascade
from cascade_kit.invariants import CapExceeded, semigroup_generators
from cascade_kit.rootsys import build_root_system


@dataclass(frozen=True)
class TableConfig:
    types: tuple[str, ...] = ("A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "C4", "D4",
                              "D5", "G2", "F4", "E6", "E7")
    r_cap: int = 7


def main(cfg: TableConfig) -> None:
    print(f"{'type':6} {'m':>2}  {'degrees':22} det  generator weights over simple roots")
    for name in cfg.types:
        rs = build_root_system(name)
        cas = compute_cascade(rs)
        try:
            gens = semigroup_generators(rs, cas, cfg.r_cap)
        except CapExceeded as exc:
            print(f"{name:6} {cas.m:>2}  ({exc})")
            continue
        mus = " ".join("(" + ",".join(map(str, mu)) + ")" for mu in gens.mus_simple)
        print(f"{name:6} {cas.m:>2}  {str(list(gens.degrees)):22} {gens.det:>3}  {mus}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--types", default=",".join(TableConfig.types))
    p.add_argument("--r-cap", type=int, default=TableConfig.r_cap)
    a = p.parse_args()
    main(TableConfig(tuple(t for t in a.types.split(",") if t), a.r_cap))
