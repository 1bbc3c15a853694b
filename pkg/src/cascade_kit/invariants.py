"""Weights and generators of the invariant ring S(n)^N.

Polynomials live in S(n) with one variable per positive root, stored as
``{exponent tuple: Fraction}`` with exponents indexed like
``rs.positive_roots``.  n acts on S(n) by the derivation extension of ad;
invariants are the common kernel of the simple root vectors, which generate n.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .cascade import Cascade
from .chevalley import ChevalleyTable
from .coadjoint import DEFAULT_SEED, NONZERO_COEFFS, GroupElement, coad_group, random_element
from .report import VerificationReport
from .rootsys import Root, RootSystem

Exponent = tuple[int, ...]
Poly = dict[Exponent, Fraction]


class CapExceeded(RuntimeError):
    """The enumeration cap is too small to exhibit all generators."""


class TheoremViolation(AssertionError):
    """A computed object contradicts a structural statement being verified."""


# -- weights -------------------------------------------------------------------

def r_coeff(rs: RootSystem, nu: Sequence, beta: Root) -> Fraction:
    return Fraction(rs.inner(beta, nu)) / rs.norm2(beta)


def r_total(rs: RootSystem, cascade: Cascade, nu: Sequence) -> Fraction:
    return sum((r_coeff(rs, nu, b) for b in cascade.order), Fraction(0))


def lattice_weight(cascade: Cascade, coords: Sequence[int]) -> tuple:
    """sum_i coords[i] * beta_i in simple-root coordinates."""
    ell = cascade.rs.rank
    return tuple(sum(c * b[k] for c, b in zip(coords, cascade.order)) for k in range(ell))


def in_cascade_span(rs: RootSystem, cascade: Cascade, nu: Sequence) -> tuple[int, ...] | None:
    """Coordinates of nu over B if nu lies in the lattice Lambda(B), else None.

    Also checks that membership in the rational span agrees with the
    criterion w0(nu) = -nu.
    """
    coeffs = [r_coeff(rs, nu, b) for b in cascade.order]
    in_span = all(Fraction(x) == sum((c * b[k] for c, b in zip(coeffs, cascade.order)), Fraction(0))
                  for k, x in enumerate(nu))
    w0_says = tuple(Fraction(x) for x in rs.longest_element()(nu)) == tuple(-Fraction(x) for x in nu)
    if in_span != w0_says:
        raise TheoremViolation(f"span of B and w0 criterion disagree at {nu}")
    if not in_span or any(c.denominator != 1 for c in coeffs):
        return None
    return tuple(int(c) for c in coeffs)


def _pairing_matrix(rs: RootSystem, cascade: Cascade) -> list[list[int]]:
    return [[rs.inner(b, a) for b in cascade.order] for a in rs.simple_roots]


def is_dominant_coords(pairings: list[list[int]], coords: Sequence[int]) -> bool:
    return all(sum(p * c for p, c in zip(row, coords)) >= 0 for row in pairings)


def l1_ball(m: int, radius: int) -> Iterable[tuple[int, ...]]:
    """Integer vectors of length m with sum |c_i| <= radius."""
    if m == 0:
        yield ()
        return
    for c in range(-radius, radius + 1):
        for rest in l1_ball(m - 1, radius - abs(c)):
            yield (c,) + rest


def dominant_lattice_points(rs: RootSystem, cascade: Cascade, r_cap: int) -> list[tuple[int, ...]]:
    """Dominant points of Lambda(B) with r(nu) <= r_cap, scanning the L1 ball.

    Coordinates over B equal r_beta(nu) because B is orthogonal, so
    r(nu) = sum of coordinates.
    """
    pairings = _pairing_matrix(rs, cascade)
    out = [c for c in l1_ball(cascade.m, r_cap)
           if is_dominant_coords(pairings, c) and sum(c) <= r_cap]
    return sorted(out, key=lambda c: (sum(c), c))


@dataclass(frozen=True)
class GeneratorSet:
    mus: tuple[tuple[int, ...], ...]
    transition: tuple[tuple[int, ...], ...]  # column j = mu_j over B
    det: int
    degrees: tuple[int, ...]
    mus_simple: tuple[tuple[int, ...], ...]
    decompositions: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.mus)

    def laurent_coordinates(self, coords: Sequence[int]) -> tuple[int, ...]:
        return laurent_coordinates(self, coords)


def semigroup_generators(rs: RootSystem, cascade: Cascade, r_cap: int = 6) -> GeneratorSet:
    if r_cap < 1:
        raise ValueError("r_cap must be >= 1")
    m = cascade.m
    points = dominant_lattice_points(rs, cascade, r_cap)
    negative = [p for p in points if min(p, default=0) < 0]
    if negative:
        raise TheoremViolation(f"dominant lattice points with negative B-coordinates: {negative[:3]}")
    pset = set(points)
    nonzero = [p for p in points if any(p)]
    indecomposable = []
    for p in nonzero:
        split = any(
            tuple(a - b for a, b in zip(p, q)) in pset
            for q in nonzero if q != p and sum(q) < sum(p)
        )
        if not split:
            indecomposable.append(p)
    if len(indecomposable) < m:
        raise CapExceeded(f"cap exceeded: r_cap={r_cap} exhibits {len(indecomposable)} of {m} generators")
    if len(indecomposable) > m:
        raise TheoremViolation(f"{len(indecomposable)} indecomposables for m={m}")
    mus = tuple(sorted(indecomposable, key=lambda c: (sum(c), tuple(-x for x in c))))
    transition = tuple(tuple(mu[i] for mu in mus) for i in range(m))
    det = linalg.det(transition)
    if abs(det) != 1:
        raise TheoremViolation(f"transition matrix has determinant {det}")
    gens = GeneratorSet(
        mus=mus,
        transition=transition,
        det=int(det),
        degrees=tuple(sum(mu) for mu in mus),
        mus_simple=tuple(lattice_weight(cascade, mu) for mu in mus),
    )
    for p in points:
        d = laurent_coordinates(gens, p)
        if min(d, default=0) < 0:
            raise TheoremViolation(f"dominant point {p} is not a nonnegative combination")
        gens.decompositions[p] = d
    return gens


def laurent_coordinates(gens: GeneratorSet, coords: Sequence[int]) -> tuple[int, ...]:
    """The integer d with transition @ d = coords."""
    d = linalg.solve(gens.transition, list(coords))
    if d is None or any(x.denominator != 1 for x in d):
        raise TheoremViolation(f"{tuple(coords)} has no integer expression in the generators")
    return tuple(int(x) for x in d)


# -- polynomials -------------------------------------------------------------------

def monomials_of_weight(rs: RootSystem, nu: Sequence, degree: int | None = None) -> list[Exponent]:
    """Exponent vectors gamma with sum gamma(phi) phi = nu (and total degree, if given)."""
    if any(Fraction(x).denominator != 1 or x < 0 for x in nu):
        return []
    pos = rs.positive_roots
    hts = [sum(r) for r in pos]
    nu = tuple(int(x) for x in nu)
    out: list[Exponent] = []
    acc = [0] * len(pos)

    def go(k: int, w: tuple, left: int | None) -> None:
        ht = sum(w)
        if ht == 0:
            if left in (None, 0):
                out.append(tuple(acc))
            return
        if k < 0:
            return
        if left is not None and (left > ht or left * hts[k] < ht):
            return
        phi = pos[k]
        c, cur = 0, w
        while all(x >= 0 for x in cur):
            if left is not None and c > left:
                break
            acc[k] = c
            go(k - 1, cur, None if left is None else left - c)
            cur = tuple(a - b for a, b in zip(cur, phi))
            c += 1
        acc[k] = 0

    go(len(pos) - 1, nu, degree)
    return sorted(out, reverse=True)


def monomial_support(rs: RootSystem, cascade: Cascade, nu: Sequence) -> list[Exponent]:
    """Gamma(nu): monomials of weight nu and degree r(nu)."""
    coords = in_cascade_span(rs, cascade, nu)
    if coords is None or not is_dominant_coords(_pairing_matrix(rs, cascade), coords):
        raise ValueError(f"{tuple(nu)} is not a dominant point of Lambda(B)")
    return monomials_of_weight(rs, nu, sum(coords))


def cascade_monomial(rs: RootSystem, cascade: Cascade, coords: Sequence[int]) -> Exponent:
    gamma = [0] * len(rs.positive_roots)
    for c, b in zip(coords, cascade.order):
        gamma[rs.index(b)] = c
    return tuple(gamma)


def derivation_image(tbl: ChevalleyTable, alpha: Root, gamma: Exponent) -> dict[Exponent, int]:
    """e_alpha acting as a derivation on the monomial z_gamma."""
    rs = tbl.rs
    pos = rs.positive_roots
    out: dict[Exponent, int] = defaultdict(int)
    for k, g in enumerate(gamma):
        if not g:
            continue
        n = tbl.N(alpha, pos[k])
        if not n:
            continue
        target = rs.index(tuple(a + b for a, b in zip(alpha, pos[k])))
        new = list(gamma)
        new[k] -= 1
        new[target] += 1
        out[tuple(new)] += g * n
    return {k: v for k, v in out.items() if v}


def derivation_matrix(tbl: ChevalleyTable, monomials: Sequence[Exponent]):
    """Sparse integer matrix of all simple derivations on span(monomials)."""
    rows: dict[tuple[int, Exponent], int] = {}
    entries: dict[tuple[int, int], int] = {}
    for j, gamma in enumerate(monomials):
        for i, alpha in enumerate(tbl.rs.simple_roots):
            for target, v in derivation_image(tbl, alpha, gamma).items():
                r = rows.setdefault((i, target), len(rows))
                entries[r, j] = v
    return entries, len(rows)


def kernel_dimension_bound(tbl: ChevalleyTable, monomials: Sequence[Exponent]) -> int:
    """Upper bound on the invariant dimension (exact when it is 0)."""
    entries, nrows = derivation_matrix(tbl, monomials)
    return len(monomials) - linalg.rank_mod_p(entries, nrows, len(monomials))


def invariant_kernel(tbl: ChevalleyTable, monomials: Sequence[Exponent]) -> list[Poly]:
    """Exact basis of the invariants inside span(monomials)."""
    entries, nrows = derivation_matrix(tbl, monomials)
    ncols = len(monomials)
    dense = [[0] * ncols for _ in range(nrows)]
    for (i, j), v in entries.items():
        dense[i][j] = v
    basis = linalg.nullspace(dense, ncols) if nrows else linalg.nullspace([], ncols)
    return [{g: c for g, c in zip(monomials, vec) if c} for vec in basis]


@dataclass(frozen=True)
class PolyInvariant:
    weight: tuple[int, ...]  # coordinates over B
    degree: int
    terms: dict[Exponent, Fraction] = field(compare=False)
    roots: tuple[Root, ...] = field(repr=False, compare=False)

    def __call__(self, z: Mapping) -> Fraction:
        return evaluate(self.terms, self.roots, z)

    def to_dict(self) -> dict:
        return {
            "weight": list(self.weight),
            "degree": self.degree,
            "terms": [
                {"exponents": {str(list(self.roots[k])): e for k, e in enumerate(g) if e},
                 "coefficient": str(c)}
                for g, c in sorted(self.terms.items(), reverse=True)
            ],
        }


def evaluate(terms: Mapping[Exponent, Fraction], roots: Sequence[Root], z: Mapping) -> Fraction:
    """Value of a polynomial at z in n_- (coordinate of phi is z[phi])."""
    vals = [Fraction(z.get(r, 0)) for r in roots]
    total = Fraction(0)
    for gamma, c in terms.items():
        term = Fraction(c)
        for v, e in zip(vals, gamma):
            if e:
                term *= v ** e
                if not term:
                    break
        total += term
    return total


def compute_invariant(tbl: ChevalleyTable, cascade: Cascade, coords: Sequence[int]) -> PolyInvariant:
    """The unique invariant of weight sum coords_i beta_i, cascade monomial normalized to 1."""
    rs = tbl.rs
    coords = tuple(coords)
    nu = lattice_weight(cascade, coords)
    monos = monomial_support(rs, cascade, nu)
    kernel = invariant_kernel(tbl, monos)
    if len(kernel) != 1:
        raise TheoremViolation(f"weight {coords}: invariant space of dimension {len(kernel)}")
    (poly,) = kernel
    lead = poly.get(cascade_monomial(rs, cascade, coords), Fraction(0))
    if lead == 0:
        raise TheoremViolation(f"weight {coords}: cascade monomial coefficient vanishes")
    terms = {g: c / lead for g, c in poly.items()}
    return PolyInvariant(coords, sum(coords), terms, rs.positive_roots)


def invariant_multiplicities(tbl: ChevalleyTable, nu: Sequence) -> dict[int, int]:
    """Dimension of the invariants of weight nu in every degree (nonzero entries only)."""
    by_degree: dict[int, list[Exponent]] = defaultdict(list)
    for g in monomials_of_weight(tbl.rs, nu):
        by_degree[sum(g)].append(g)
    out = {}
    for d, monos in sorted(by_degree.items()):
        bound = kernel_dimension_bound(tbl, monos)
        dim = bound and len(invariant_kernel(tbl, monos))
        if dim:
            out[d] = dim
    return out


def all_weight_multiplicity(tbl: ChevalleyTable, cascade: Cascade, nu: Sequence) -> int:
    return sum(invariant_multiplicities(tbl, nu).values())


def poly_mul(a: Mapping[Exponent, Fraction], b: Mapping[Exponent, Fraction]) -> Poly:
    out: Poly = defaultdict(Fraction)
    for ga, ca in a.items():
        for gb, cb in b.items():
            out[tuple(x + y for x, y in zip(ga, gb))] += ca * cb
    return {g: c for g, c in out.items() if c}


def poly_pow(a: Mapping[Exponent, Fraction], k: int, nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: Fraction(1)}
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def proportional(a: Mapping, b: Mapping) -> bool:
    if set(a) != set(b) or not a:
        return False
    g0 = next(iter(a))
    ratio = Fraction(a[g0]) / b[g0]
    return all(Fraction(a[g]) == ratio * b[g] for g in a)


def factorization_check(tbl: ChevalleyTable, cascade: Cascade, gens: GeneratorSet,
                        coords: Sequence[int], cache: dict | None = None) -> bool:
    """xi_nu is proportional to prod xi_{mu_i}^{d_i}."""
    cache = {} if cache is None else cache

    def inv(c):
        c = tuple(c)
        if c not in cache:
            cache[c] = compute_invariant(tbl, cascade, c)
        return cache[c]

    d = laurent_coordinates(gens, coords)
    if min(d) < 0:
        return False
    nvars = len(tbl.rs.positive_roots)
    prod: Poly = {(0,) * nvars: Fraction(1)}
    for mu, k in zip(gens.mus, d):
        prod = poly_mul(prod, poly_pow(inv(mu).terms, k, nvars))
    return proportional(inv(coords).terms, prod)


def evaluate_at_cross_section(inv: PolyInvariant, t: Mapping) -> Fraction:
    return inv(t)


# -- verification --------------------------------------------------------------

def random_nminus(rs: RootSystem, rng: random.Random) -> dict:
    return {phi: rng.choice((-2, -1, 0, 1, 2)) for phi in rs.positive_roots}


def off_lattice_weights(rs: RootSystem, cascade: Cascade, count: int, rng: random.Random,
                        max_coeff: int = 3) -> list[tuple]:
    """Seeded weights that are not dominant points of Lambda(B)."""
    pairings = _pairing_matrix(rs, cascade)
    out = []
    seen = set()
    misses = 0
    while len(out) < count:
        if misses > 50:  # small rank: widen the box
            max_coeff, misses = max_coeff + 1, 0
        if rng.random() < 0.5:
            nu = tuple(rng.randint(0, max_coeff) for _ in range(rs.rank))
        else:
            c = tuple(rng.randint(-1, 2) for _ in range(cascade.m))
            nu = lattice_weight(cascade, c)
        if nu in seen or not any(nu):
            misses += 1
            continue
        coords = in_cascade_span(rs, cascade, nu)
        if coords is not None and is_dominant_coords(pairings, coords):
            misses += 1
            continue
        seen.add(nu)
        out.append(nu)
    return out


def verify_invariants(tbl: ChevalleyTable, cascade: Cascade, r_cap: int = 6,
                      seed: int = DEFAULT_SEED, eval_points: int = 5, off_lattice: int = 20,
                      invariance_samples: int = 0, polynomials: bool = True) -> VerificationReport:
    rs = tbl.rs
    rep = VerificationReport("invariants", str(rs.spec), seed, eval_points)
    try:
        gens = semigroup_generators(rs, cascade, r_cap)
    except (CapExceeded, TheoremViolation) as exc:
        rep.add("semigroup_generators", False, str(exc))
        return rep
    rep.add("semigroup_generators", True, m=gens.m, mus=gens.mus, degrees=gens.degrees,
            transition=gens.transition, det=gens.det)
    if not polynomials:
        return rep

    rng = random.Random(seed)
    points = [p for p in dominant_lattice_points(rs, cascade, r_cap)]
    cache: dict = {}
    mult_bad, degree_bad, lead_bad, fact_bad, eval_bad = [], [], [], [], []
    for p in points:
        nu = lattice_weight(cascade, p)
        mults = invariant_multiplicities(tbl, nu)
        if sum(mults.values()) != 1:
            mult_bad.append((p, mults))
        if mults != {sum(p): 1}:
            degree_bad.append((p, mults))
        try:
            inv = compute_invariant(tbl, cascade, p)
        except TheoremViolation as exc:
            lead_bad.append((p, str(exc)))
            continue
        cache[p] = inv
        if not factorization_check(tbl, cascade, gens, p, cache):
            fact_bad.append(p)
        for _ in range(eval_points):
            t = {b: Fraction(rng.choice(NONZERO_COEFFS)) for b in cascade.order}
            expected = Fraction(1)
            for b, c in zip(cascade.order, p):
                expected *= t[b] ** c
            if inv(t) != expected:
                eval_bad.append((p, t))
    rep.add("multiplicity_one", not mult_bad, mult_bad[:3] or None, weights=len(points))
    rep.add("degree_formula", not degree_bad, degree_bad[:3] or None)
    rep.add("cascade_coefficient_nonzero", not lead_bad, lead_bad[:3] or None)
    rep.add("factorization", not fact_bad, fact_bad[:3] or None)
    rep.add("cross_section_evaluation", not eval_bad, eval_bad[:3] or None)

    bad = []
    for nu in off_lattice_weights(rs, cascade, off_lattice, rng):
        if all_weight_multiplicity(tbl, cascade, nu):
            bad.append(nu)
    rep.add("off_lattice_multiplicity_zero", not bad, bad or None, weights=off_lattice)

    if invariance_samples:
        # every generator against a grid of group elements and points
        us = [GroupElement.exp(random_element(tbl, rs.positive_roots, rng))
              for _ in range(invariance_samples)]
        zs = [random_nminus(rs, rng) for _ in range(invariance_samples)]
        moved = [[coad_group(tbl, u, z) for z in zs] for u in us]
        bad = []
        for p in gens.mus:
            inv = cache[p]
            base = [inv(z) for z in zs]
            bad += [(p, zs[j]) for row in moved for j, w in enumerate(row) if inv(w) != base[j]]
        rep.add("n_invariance", not bad, bad[:3] or None, "property-based evidence",
                group_elements=len(us), points=len(zs))
    return rep


def half_integrality(rs: RootSystem, cascade: Cascade) -> dict:
    """r_beta on the fundamental weights, which generate the dominant cone.

    Every r_beta(omega_i) in Z_+/2 implies r_beta(nu) in Z_+/2 for all
    dominant nu.  Reported as observed: no proof is checked here.
    """
    values = {}
    for i, omega in enumerate(rs.fundamental_weights()):
        values[i + 1] = [r_coeff(rs, omega, b) for b in cascade.order]
    ok = all(r >= 0 and (2 * r).denominator == 1 for row in values.values() for r in row)
    return {"ok": ok, "values": values}
