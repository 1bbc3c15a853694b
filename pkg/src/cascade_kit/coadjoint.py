"""Coadjoint action of n and N on n_- = n^*.

Elements of n_- are dicts ``{phi: coefficient}`` over positive roots phi,
written in the basis dual to {e_phi} under the invariant form:

    hat_e_{-phi} = ((phi, phi) / 2) * e_{-phi},   <e_phi, hat_e_{-psi}> = delta.

With this basis ``coad v`` is exactly the contragredient of ``ad v`` on n,
so polynomials killed by the derivation action of n on S(n) are invariant
functions on n_- (coordinate z_phi = <e_phi, z>).  In simply-laced types
hat_e_{-phi} = e_{-phi}.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .cascade import Cascade
from .chevalley import ChevalleyTable, LieElement
from .report import VerificationReport
from .rootsys import Root, neg

NMinus = dict[Root, Fraction]

DEFAULT_SEED = 0xC05CADE
NONZERO_COEFFS = (-3, -2, -1, 1, 2, 3)


def _scale(tbl: ChevalleyTable, phi: Root) -> int:
    return tbl.rs.norm2(phi) // 2


def clean(z: Mapping) -> NMinus:
    return {tuple(k): Fraction(v) for k, v in z.items() if v != 0}


def to_lie(tbl: ChevalleyTable, z: Mapping) -> LieElement:
    """n_- element (dual-basis coordinates) as a Chevalley-basis LieElement."""
    return LieElement(rank=tbl.rank, roots={neg(phi): c * _scale(tbl, phi) for phi, c in z.items()})


def project_nminus(tbl: ChevalleyTable, x: LieElement) -> NMinus:
    """Projection of g onto n_- along b."""
    out = {}
    for r, c in x.roots.items():
        if all(v <= 0 for v in r):
            phi = neg(r)
            out[phi] = c / _scale(tbl, phi)
    return out


def coad(tbl: ChevalleyTable, v: LieElement, z: Mapping) -> NMinus:
    if not v.in_n():
        raise ValueError("v must lie in n")
    return project_nminus(tbl, tbl.bracket(v, to_lie(tbl, z)))


@dataclass(frozen=True)
class GroupElement:
    """u = exp(factors[0]) * exp(factors[1]) * ... with every factor in n."""

    factors: tuple[LieElement, ...]

    @classmethod
    def exp(cls, log: LieElement) -> "GroupElement":
        if not log.in_n():
            raise ValueError("log must lie in n")
        return cls((log,))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(())

    @property
    def log(self) -> LieElement:
        if len(self.factors) != 1:
            raise ValueError("log is only stored for a single exponential")
        return self.factors[0]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.factors + other.factors)

    def inverse(self) -> "GroupElement":
        return GroupElement(tuple(-f for f in reversed(self.factors)))


def ad_exp(tbl: ChevalleyTable, log: LieElement, x: LieElement) -> LieElement:
    """Ad(exp log)(x) = sum_k (ad log)^k x / k!, finite since log is nilpotent."""
    total, term, k = x, x, 0
    while True:
        k += 1
        term = tbl.bracket(log, term).scale(Fraction(1, k))
        if term.is_zero():
            return total
        total = total + term


def coad_group(tbl: ChevalleyTable, u: GroupElement, z: Mapping) -> NMinus:
    """Coad u (z) = Phi(Ad u (z)); Ad of a product is the composite of the series."""
    x = to_lie(tbl, z)
    for log in reversed(u.factors):
        x = ad_exp(tbl, log, x)
    return project_nminus(tbl, x)


def coad_matrix(tbl: ChevalleyTable, tau: Mapping) -> list[list[Fraction]]:
    """Rows indexed by positive roots (n_- coordinates), column j = coad e_{phi_j} (tau)."""
    pos = tbl.rs.positive_roots
    cols = [coad(tbl, LieElement.root_vector(tbl.rank, phi), tau) for phi in pos]
    return [[col.get(psi, Fraction(0)) for col in cols] for psi in pos]


def isotropy_algebra(tbl: ChevalleyTable, tau: Mapping) -> list[LieElement]:
    """Basis of n_tau = {v in n : coad v (tau) = 0}."""
    pos = tbl.rs.positive_roots
    basis = linalg.nullspace(coad_matrix(tbl, tau), len(pos))
    return [LieElement(rank=tbl.rank, roots=dict(zip(pos, vec))) for vec in basis]


def orbit_dimension(tbl: ChevalleyTable, tau: Mapping) -> int:
    return linalg.rank(coad_matrix(tbl, tau))


# -- cross-section helpers ---------------------------------------------------

def cross_section_point(cascade: Cascade, t: Sequence) -> NMinus:
    """t = sum t_beta e_{-beta} over the cascade order."""
    if len(t) != cascade.m:
        raise ValueError("one coefficient per cascade root")
    return clean(dict(zip(cascade.order, t)))


def in_r_minus(cascade: Cascade, z: Mapping) -> bool:
    B = set(cascade.order)
    return all(phi in B for phi, c in z.items() if c != 0)


def in_r_minus_times(cascade: Cascade, z: Mapping) -> bool:
    return in_r_minus(cascade, z) and all(z.get(b, 0) != 0 for b in cascade.order)


def random_cross_section_point(cascade: Cascade, rng: random.Random) -> NMinus:
    return cross_section_point(cascade, [rng.choice(NONZERO_COEFFS) for _ in cascade.order])


def random_element(tbl: ChevalleyTable, roots: Sequence[Root], rng: random.Random,
                   full: bool = False) -> LieElement:
    """Nonzero element of span{e_phi : phi in roots} with small integer coefficients."""
    roots = list(roots)
    if not roots:
        return LieElement.zero(tbl.rank)
    if full:
        chosen = roots
    else:
        chosen = [r for r in roots if rng.random() < 0.5] or [rng.choice(roots)]
    return LieElement(rank=tbl.rank, roots={r: rng.choice(NONZERO_COEFFS) for r in chosen})


def non_cascade_roots(cascade: Cascade) -> list[Root]:
    B = set(cascade.order)
    return [phi for phi in cascade.rs.positive_roots if phi not in B]


# -- verification --------------------------------------------------------------

def check_s_injectivity(tbl: ChevalleyTable, cascade: Cascade, tau: Mapping,
                        samples: int = 25, seed: int = DEFAULT_SEED) -> VerificationReport:
    rep = VerificationReport("coadjoint", str(tbl.rs.spec), seed, samples)
    if not in_r_minus_times(cascade, tau):
        raise ValueError("tau must lie in r_-^x")
    s = non_cascade_roots(cascade)
    B = set(cascade.order)

    def lands_in_s_minus(v: LieElement) -> bool:
        y = coad(tbl, v, tau)
        return bool(y) and all(phi not in B for phi in y)

    bad = [phi for phi in s if not lands_in_s_minus(LieElement.root_vector(tbl.rank, phi))]
    rep.add("s_injectivity_basis", not bad, bad or None, vectors=len(s))

    rng = random.Random(seed)
    bad = []
    for _ in range(samples if s else 0):
        v = random_element(tbl, s, rng)
        if not lands_in_s_minus(v):
            bad.append(v.roots)
    rep.add("s_injectivity_sampled", not bad, bad[:3] or None)
    return rep


def _maximal(roots: Iterable[Root]) -> list[Root]:
    roots = list(roots)

    def above(x, y):
        d = [a - b for a, b in zip(x, y)]
        return any(d) and all(c >= 0 for c in d)

    return [r for r in roots if not any(above(o, r) for o in roots)]


def check_cross_section(tbl: ChevalleyTable, cascade: Cascade, tau: Mapping,
                        samples: int = 50, seed: int = DEFAULT_SEED) -> VerificationReport:
    """O_tau meets r_-^x only at tau, on sampled group elements.

    Elements with log off r must move tau out of r_-, and the leading
    coefficient of Coad u(tau) - tau at a maximal root of coad log (tau)
    must equal the coefficient of coad log (tau) there.  Elements of R fix tau.
    """
    rep = VerificationReport("coadjoint", str(tbl.rs.spec), seed, samples)
    rng = random.Random(seed)
    s = non_cascade_roots(cascade)
    B = list(cascade.order)
    tau = clean(tau)

    moved_bad, lead_bad, fixed_bad = [], [], []
    for _ in range(samples):
        if s:
            log = random_element(tbl, B, rng) + random_element(tbl, s, rng)
            image = coad_group(tbl, GroupElement.exp(log), tau)
            if in_r_minus(cascade, image):
                moved_bad.append(log.roots)
            y = coad(tbl, log, tau)
            diff = {phi: image.get(phi, 0) - tau.get(phi, 0) for phi in tbl.rs.positive_roots}
            for top in _maximal(y):
                if diff[top] != y[top]:
                    lead_bad.append((log.roots, top))
        log = random_element(tbl, B, rng)
        if coad_group(tbl, GroupElement.exp(log), tau) != tau:
            fixed_bad.append(log.roots)
    ev = "property-based evidence"
    rep.add("cross_section_moves_off_r", not moved_bad, moved_bad[:3] or None, ev)
    rep.add("cross_section_leading_term", not lead_bad, lead_bad[:3] or None, ev)
    rep.add("cross_section_R_fixes", not fixed_bad, fixed_bad[:3] or None, ev)
    return rep


def tangent_rank(tbl: ChevalleyTable, tau: Mapping) -> int:
    """Rank of coad(n)(tau) + Phi[h, tau], the tangent space of the B-orbit."""
    rs = tbl.rs
    rows = [list(col) for col in zip(*coad_matrix(tbl, tau))]
    for i in range(rs.rank):
        h = LieElement([int(i == j) for j in range(rs.rank)])
        y = project_nminus(tbl, tbl.bracket(h, to_lie(tbl, tau)))
        rows.append([y.get(phi, Fraction(0)) for phi in rs.positive_roots])
    return linalg.rank(rows)


def check_open_orbit(tbl: ChevalleyTable, cascade: Cascade, tau: Mapping) -> bool:
    n = len(tbl.rs.positive_roots)
    full = tangent_rank(tbl, tau) == n
    if in_r_minus_times(cascade, tau):
        return full and orbit_dimension(tbl, tau) + cascade.m == n
    return full


def isotropy_is_r(tbl: ChevalleyTable, cascade: Cascade, tau: Mapping) -> bool:
    basis = isotropy_algebra(tbl, tau)
    B = set(cascade.order)
    return len(basis) == cascade.m and all(set(v.roots) <= B for v in basis)


# -- torus action ----------------------------------------------------------------

def character(values: Sequence, phi: Root) -> Fraction:
    """chi_phi(a) for a torus element given by its values on the simple roots."""
    out = Fraction(1)
    for c, n in zip(values, phi):
        out *= Fraction(c) ** n
    return out


def torus_act_nminus(values: Sequence, z: Mapping) -> NMinus:
    """Ad a on n_-: hat_e_{-phi} scales by chi_phi(a)^{-1}."""
    return {phi: c / character(values, phi) for phi, c in z.items()}


def torus_conjugate(values: Sequence, u: GroupElement) -> GroupElement:
    """a^{-1} u a."""
    return GroupElement(tuple(
        LieElement(rank=len(values), roots={r: c / character(values, r) for r, c in f.roots.items()})
        for f in u.factors))


def verify_coadjoint(tbl: ChevalleyTable, cascade: Cascade, samples: int = 25,
                     seed: int = DEFAULT_SEED, group_samples: int | None = None) -> VerificationReport:
    """Run every coadjoint check on ``samples`` seeded points of r_-^x."""
    rs = tbl.rs
    n, m = len(rs.positive_roots), cascade.m
    group_samples = 2 * samples if group_samples is None else group_samples
    rep = VerificationReport("coadjoint", str(rs.spec), seed, samples)
    rng = random.Random(seed)
    taus = [random_cross_section_point(cascade, rng) for _ in range(samples)]

    bad = [t for t in taus if not isotropy_is_r(tbl, cascade, t)]
    rep.add("isotropy_equals_r", not bad, bad[:2] or None)
    bad = [t for t in taus if orbit_dimension(tbl, t) != n - m]
    rep.add("orbit_dimension", not bad, bad[:2] or None, expected=n - m)

    sub = VerificationReport("coadjoint", rep.type)
    for k, t in enumerate(taus):
        part = check_s_injectivity(tbl, cascade, t, samples, seed + k)
        part.extend(check_cross_section(tbl, cascade, t, group_samples, seed + k))
        sub.extend(part)
    for name in ("s_injectivity_basis", "s_injectivity_sampled", "cross_section_moves_off_r",
                 "cross_section_leading_term", "cross_section_R_fixes"):
        items = [c for c in sub.checks if c.check == name]
        failed = [c.witness for c in items if not c.passed]
        rep.add(name, not failed, failed[:2] or None, items[0].evidence)

    bad = [t for t in taus if not check_open_orbit(tbl, cascade, t)]
    rep.add("open_orbit_rank", not bad, bad[:2] or None)

    # off r_-^x the B-orbit tangent space loses the e_{-beta} direction; the
    # N-orbit itself can stay maximal (A3, tau = e_{-theta}), so only <= holds there
    degenerate = []
    for beta in cascade.order:
        drop = dict(taus[0])
        drop.pop(beta)
        if tangent_rank(tbl, drop) >= n or orbit_dimension(tbl, drop) > n - m:
            degenerate.append(drop)
    rep.add("degenerate_points_drop_rank", not degenerate, degenerate[:2] or None)
    return rep
