"""Run every verification suite over a sweep of types and print a timing summary.

    python scripts/verify_all.py --samples 10
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from cascade_kit.cascade import compute_cascade, verify_section1
from cascade_kit.chevalley import build_chevalley
from cascade_kit.coadjoint import DEFAULT_SEED, verify_coadjoint
from cascade_kit.invariants import verify_invariants
from cascade_kit.rootsys import build_root_system


@dataclass(frozen=True)
class SweepConfig:
    section1: tuple[str, ...] = ("A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "C4", "D4",
                                 "D5", "G2", "F4", "E6", "E7", "E8", "B2xG2")
    coadjoint: tuple[str, ...] = ("A2", "A3", "A4", "B2", "B3", "C3", "G2")
    invariants: tuple[str, ...] = ("A2", "A3", "A4", "B2", "B3", "C3", "G2")
    samples: int = 10
    r_cap: int = 6
    seed: int = DEFAULT_SEED


def _timed(label, fn):
    start = time.perf_counter()
    rep = fn()
    status = "pass" if rep.passed else "FAIL " + ",".join(c.check for c in rep.failures())
    print(f"  {label:28} {time.perf_counter() - start:7.2f}s  {status}")
    return rep.passed


def main(cfg: SweepConfig) -> int:
    ok = True
    for name in dict.fromkeys(cfg.section1 + cfg.coadjoint + cfg.invariants):
        rs = build_root_system(name)
        cas = compute_cascade(rs)
        print(f"{name}  m={cas.m}  |Delta+|={len(rs.positive_roots)}")
        if name in cfg.section1:
            ok &= _timed("section1", lambda: verify_section1(rs, cas))
        if name in cfg.coadjoint or name in cfg.invariants:
            tbl = build_chevalley(rs)
        if name in cfg.coadjoint:
            ok &= _timed("coadjoint", lambda: verify_coadjoint(tbl, cas, cfg.samples, cfg.seed))
        if name in cfg.invariants:
            ok &= _timed(f"invariants (r_cap={cfg.r_cap})", lambda: verify_invariants(
                tbl, cas, cfg.r_cap, cfg.seed, invariance_samples=3))
    print("all passed" if ok else "FAILURES")
    return 0 if ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=SweepConfig.samples)
    p.add_argument("--r-cap", type=int, default=SweepConfig.r_cap)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=SweepConfig.seed)
    a = p.parse_args()
    raise SystemExit(main(SweepConfig(samples=a.samples, r_cap=a.r_cap, seed=a.seed)))
