"""Acceptance criteria 1-7, each at its stated tolerance and runtime bound.

Every test records one PASS/FAIL line, printed in the terminal summary.
"""
import itertools
import json
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from cascade_kit.cascade import compute_cascade, max_strongly_orthogonal, verify_section1
from cascade_kit.chevalley import LieElement, build_chevalley
from cascade_kit.coadjoint import (
    GroupElement, coad, coad_group, cross_section_point, random_element, torus_act_nminus,
    torus_conjugate, verify_coadjoint,
)
from cascade_kit.invariants import (
    compute_invariant, random_nminus, semigroup_generators, verify_invariants,
)
from cascade_kit.rootsys import build_root_system
from conftest import ACCEPTANCE
from oracles import brute_cascade, h_dual_oracle, maximal_so_sets

SEED = 0xC05CADE


def fresh(name):
    rs = build_root_system(name)
    return rs, build_chevalley(rs), compute_cascade(rs)


def record(k, ok, detail):
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


# ---------------------------------------------------------------------------- 1

SECTION1_TYPES = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4",
                  "B2xG2"]
SECTION1_CHECKS = {"layer_partition", "layer_dimension", "layer_ratio", "strong_orthogonality",
                   "maximality", "longest_element_product", "longest_element_restriction"}


def test_criterion_1_section1():
    start = time.perf_counter()
    failures = []
    for name in SECTION1_TYPES:
        rs = build_root_system(name)
        cas = compute_cascade(rs)
        rep = verify_section1(rs, cas)
        names = {c.check for c in rep.checks}
        if not SECTION1_CHECKS <= names or not rep.passed:
            failures.append((name, [c.check for c in rep.failures()]))
        # a single cascade root admits only one product order
        if rep["longest_element_product"].info["orders_checked"] < min(2, math.factorial(cas.m)):
            failures.append((name, "fewer than two product orders"))
        for node in cas.nodes:  # layer size against the classification oracle
            if len(node.layer) != 2 * h_dual_oracle(rs, node.support_set) - 3:
                failures.append((name, node.beta))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    record(1, ok, f"{len(SECTION1_TYPES)} types, {elapsed:.2f}s (< 10s), failures={failures}")
    assert ok


# ---------------------------------------------------------------------------- 2

EXPECTED_M = {"A2": 1, "A3": 2, "B2": 2, "B3": 3, "G2": 2, "D4": 4, "F4": 4}


def test_criterion_2_cascade_sizes():
    bad = {}
    for name, expected in EXPECTED_M.items():
        rs = build_root_system(name)
        cas = compute_cascade(rs)
        tops = [n.beta for n in cas.nodes if n.parent is None]
        sets = maximal_so_sets(rs, tops)
        best = max(len(s) for s in sets)
        got = (cas.m, best, max_strongly_orthogonal(rs), len(brute_cascade(rs)))
        if set(got) != {expected} or frozenset(cas.order) not in sets:
            bad[name] = got
    record(2, not bad, f"{len(EXPECTED_M)} types exact, mismatches={bad}")
    assert not bad


# ---------------------------------------------------------------------------- 3

COADJOINT_TYPES = ["A2", "A3", "B2", "B3", "C3", "G2"]
COADJOINT_CHECKS = {"isotropy_equals_r", "orbit_dimension", "s_injectivity_basis",
                    "s_injectivity_sampled", "cross_section_moves_off_r",
                    "cross_section_leading_term", "cross_section_R_fixes", "open_orbit_rank"}


def test_criterion_3_coadjoint():
    start = time.perf_counter()
    failures = []
    for name in COADJOINT_TYPES:
        rs, tbl, cas = fresh(name)
        rep = verify_coadjoint(tbl, cas, samples=25, seed=SEED, group_samples=50)
        if not COADJOINT_CHECKS <= {c.check for c in rep.checks} or not rep.passed:
            failures.append((name, [c.check for c in rep.failures()]))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30
    record(3, ok, f"{len(COADJOINT_TYPES)} types x 25 tau, {elapsed:.2f}s (< 30s), failures={failures}")
    assert ok


# ---------------------------------------------------------------------------- 4

INVARIANT_TYPES = ["A2", "A3", "A4", "B2", "B3", "G2"]
INVARIANT_CHECKS = {"semigroup_generators", "multiplicity_one", "degree_formula",
                    "cascade_coefficient_nonzero", "factorization", "cross_section_evaluation",
                    "off_lattice_multiplicity_zero"}


def test_criterion_4_invariants():
    start = time.perf_counter()
    failures = []
    for name in INVARIANT_TYPES:
        rs, tbl, cas = fresh(name)
        rep = verify_invariants(tbl, cas, r_cap=6, seed=SEED, eval_points=5, off_lattice=20)
        gens = rep["semigroup_generators"].info
        if not INVARIANT_CHECKS <= {c.check for c in rep.checks} or not rep.passed:
            failures.append((name, [c.check for c in rep.failures()]))
        elif gens["m"] != cas.m or abs(gens["det"]) != 1:
            failures.append((name, "generators"))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    record(4, ok, f"{len(INVARIANT_TYPES)} types at r_cap=6, {elapsed:.2f}s (< 120s), "
                  f"failures={failures}")
    assert ok


# ---------------------------------------------------------------------------- 5

def _mono(rs, *roots):
    g = [0] * len(rs.positive_roots)
    for r in roots:
        g[rs.index(r)] += 1
    return tuple(g)


def test_criterion_5_generator_data():
    bad = []
    rs, tbl, cas = fresh("A2")
    gens = semigroup_generators(rs, cas)
    if gens.mus_simple != ((1, 1),) or gens.degrees != (1,):
        bad.append("A2")

    rs, tbl, cas = fresh("A3")
    gens = semigroup_generators(rs, cas)
    theta, a2 = (1, 1, 1), (0, 1, 0)
    if gens.mus_simple != (theta, (1, 2, 1)) or gens.degrees != (1, 2):
        bad.append("A3 generators")
    quad = compute_invariant(tbl, cas, gens.mus[1])
    want = {_mono(rs, theta, a2): 1, _mono(rs, (1, 1, 0), (0, 1, 1)): None}
    if set(quad.terms) != set(want) or quad.terms[_mono(rs, theta, a2)] != 1 \
            or abs(quad.terms[_mono(rs, (1, 1, 0), (0, 1, 1))]) != 1:
        bad.append(("A3 quadratic", quad.terms))

    rs, tbl, cas = fresh("B2")
    gens = semigroup_generators(rs, cas)
    b1, b2 = cas.order
    if gens.mus_simple != (b1, tuple(x + y for x, y in zip(b1, b2))) or gens.degrees != (1, 2):
        bad.append("B2")
    record(5, not bad, f"A2/A3/B2 generator data exact, mismatches={bad}")
    assert not bad


# ---------------------------------------------------------------------------- 6

JACOBI_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4", "B2xG2"]
RANK3_TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A2xA1"]


def _jacobi_ok(tbl):
    br = tbl.bracket
    return all((br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))).is_zero()
               for x, y, z in itertools.combinations(tbl.basis(), 3))


def _commutator_ok(tbl):
    rs = tbl.rs
    pos = rs.positive_roots
    for a, b, phi in itertools.product(pos, repeat=3):
        v, w = LieElement.root_vector(rs.rank, a), LieElement.root_vector(rs.rank, b)
        z = {phi: Fraction(1)}
        lhs, rhs = coad(tbl, v, coad(tbl, w, z)), coad(tbl, w, coad(tbl, v, z))
        diff = {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)}
        diff = {k: c for k, c in diff.items() if c}
        if diff != coad(tbl, tbl.bracket(v, w), z):
            return False
    return True


def _h_equivariance_ok(tbl, cas, rng, samples=20):
    rs = tbl.rs
    for _ in range(samples):
        values = [Fraction(rng.choice([-3, -2, 2, 3]), rng.choice([1, 2, 5])) for _ in range(rs.rank)]
        u = GroupElement.exp(random_element(tbl, rs.positive_roots, rng))
        tau = cross_section_point(cas, [rng.choice([-2, -1, 1, 3]) for _ in cas.order])
        lhs = coad_group(tbl, u, torus_act_nminus(values, tau))
        rhs = torus_act_nminus(values, coad_group(tbl, torus_conjugate(values, u), tau))
        if lhs != rhs:
            return False
    return True


def _n_invariance_ok(tbl, cas, rng):
    rs = tbl.rs
    gens = semigroup_generators(rs, cas)
    weights = list(gens.mus) + [tuple(map(sum, zip(*gens.mus)))]
    polys = [compute_invariant(tbl, cas, w) for w in weights]
    us = [GroupElement.exp(random_element(tbl, rs.positive_roots, rng)) for _ in range(10)]
    zs = [random_nminus(rs, rng) for _ in range(10)]
    for u, z in itertools.product(us, zs):
        w = coad_group(tbl, u, z)
        if any(p(w) != p(z) for p in polys):
            return False
    return True


def test_criterion_6_consistency_oracles():
    rng = random.Random(SEED)
    bad = []
    for name in JACOBI_TYPES:
        if not _jacobi_ok(fresh(name)[1]):
            bad.append(("jacobi", name))
    for name in RANK3_TYPES:
        if not _commutator_ok(fresh(name)[1]):
            bad.append(("coad_commutator", name))
    for name in ["A2", "A3", "B2", "B3", "C3", "G2"]:
        _, tbl, cas = fresh(name)
        if not _h_equivariance_ok(tbl, cas, rng):
            bad.append(("h_equivariance", name))
    for name in INVARIANT_TYPES:
        _, tbl, cas = fresh(name)
        if not _n_invariance_ok(tbl, cas, rng):
            bad.append(("n_invariance", name))
    record(6, not bad, f"Jacobi {len(JACOBI_TYPES)} types, commutator {len(RANK3_TYPES)}, "
                       f"H-equivariance 6, N-invariance 10x10 on {len(INVARIANT_TYPES)}; bad={bad}")
    assert not bad


# ---------------------------------------------------------------------------- 7

def _cli(*args):
    env = dict(os.environ)
    env.pop("CASCADE_KIT_THREADS", None)
    return subprocess.run([sys.executable, "-m", "cascade_kit", *args],
                          capture_output=True, env=env)


def test_criterion_7_cli_contract():
    first = _cli("verify", "A3", "--checks", "all", "--seed", "7")
    second = _cli("verify", "A3", "--checks", "all", "--seed", "7")
    identical = first.stdout == second.stdout and len(first.stdout) > 0
    parsed = json.loads(first.stdout)
    injected = _cli("verify", "A3", "--checks", "section1", "--seed", "7", "--inject-failure")
    malformed = _cli("verify", "A3x", "--checks", "all")
    codes = (first.returncode, injected.returncode, malformed.returncode)
    ok = (identical and parsed["seed"] == 7 and parsed["status"] == "pass"
          and codes == (0, 1, 2) and malformed.stdout == b"")
    record(7, ok, f"byte-identical={identical}, exit codes pass/inject/malformed={codes}")
    assert ok
