"""Show the generator polynomials of S(n)^N and check the cross-section identity.

    python scripts/invariant_polynomials.py B2
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from cascade_kit.cascade import compute_cascade
from cascade_kit.chevalley import build_chevalley
from cascade_kit.invariants import compute_invariant, semigroup_generators
from cascade_kit.rootsys import build_root_system


@dataclass(frozen=True)
class PolyConfig:
    type: str = "B2"
    r_cap: int = 6


def render(inv, roots) -> str:
    parts = []
    for gamma, c in sorted(inv.terms.items(), reverse=True):
        factors = " ".join(
            ("z" + "".join(map(str, roots[k]))) + (f"^{e}" if e > 1 else "")
            for k, e in enumerate(gamma) if e)
        parts.append(f"{'+' if c > 0 else '-'} {f'{abs(c)} ' if abs(c) != 1 else ''}{factors}")
    return " ".join(parts).lstrip("+ ")


def main(cfg: PolyConfig) -> None:
    rs = build_root_system(cfg.type)
    tbl, cas = build_chevalley(rs), compute_cascade(rs)
    gens = semigroup_generators(rs, cas, cfg.r_cap)
    print(f"{cfg.type}: cascade {list(cas.order)}; z_phi is the coordinate dual to e_phi")
    for mu, simple, deg in zip(gens.mus, gens.mus_simple, gens.degrees):
        inv = compute_invariant(tbl, cas, mu)
        t = {b: Fraction(k + 2) for k, b in enumerate(cas.order)}
        expected = 1
        for b, c in zip(cas.order, mu):
            expected *= t[b] ** c
        print(f"  weight {simple} (degree {deg}): {render(inv, rs.positive_roots)}")
        print(f"    value at t={[int(v) for v in t.values()]}: {inv(t)} (cascade monomial {expected})")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("type", nargs="?", default=PolyConfig.type)
    p.add_argument("--r-cap", type=int, default=PolyConfig.r_cap)
    a = p.parse_args()
    main(PolyConfig(a.type, a.r_cap))
