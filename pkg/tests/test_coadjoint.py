import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cascade_kit.chevalley import LieElement
from cascade_kit.coadjoint import (
    GroupElement, check_cross_section, check_open_orbit, check_s_injectivity, coad, coad_group,
    cross_section_point, in_r_minus, isotropy_algebra, isotropy_is_r, orbit_dimension,
    project_nminus, tangent_rank, torus_act_nminus, torus_conjugate, verify_coadjoint,
)
from conftest import system

RANK_LE_3 = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A2xA1"]


def e(rank, root, c=1):
    return LieElement.root_vector(rank, root, c)


def support(z):
    return {phi for phi, c in z.items() if c}


# -- examples -----------------------------------------------------------------

def test_projection_examples():
    _, tbl, _ = system("A2")
    assert project_nminus(tbl, LieElement([1, 0])) == {}
    x = LieElement(rank=2, roots={(-1, 0): 1, (0, 1): 1})
    assert project_nminus(tbl, x) == {(1, 0): 1}
    assert project_nminus(tbl, LieElement.zero(2)) == {}


def test_coad_highest_root_vector_vanishes():
    rs, tbl, _ = system("A2")
    for phi in rs.positive_roots:
        assert coad(tbl, e(2, (1, 1)), {phi: 1}) == {}


def test_coad_examples():
    _, tbl, _ = system("A2")
    y = coad(tbl, e(2, (1, 0)), {(1, 1): 1})
    assert support(y) == {(0, 1)}
    _, tbl, _ = system("B2")
    assert support(coad(tbl, e(2, (0, 1)), {(1, 2): 1})) == {(1, 1)}
    with pytest.raises(ValueError):
        coad(tbl, e(2, (-1, 0)), {(1, 2): 1})


def test_coad_group_examples():
    _, tbl, cas = system("A2")
    z = {(1, 1): Fraction(1)}
    assert coad_group(tbl, GroupElement.identity(), z) == z
    c = 2
    image = coad_group(tbl, GroupElement.exp(e(2, (1, 0), c)), z)
    assert set(image) == {(1, 1), (0, 1)} and image[1, 1] == 1 and abs(image[0, 1]) == c


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "B3", "G2", "D4"])
def test_r_elements_fix_cross_section(name):
    rs, tbl, cas = system(name)
    tau = cross_section_point(cas, [2, -1, 3, 1][:cas.m])
    log = LieElement(rank=rs.rank, roots={b: k + 1 for k, b in enumerate(cas.order)})
    assert coad_group(tbl, GroupElement.exp(log), tau) == tau


def test_isotropy_examples():
    rs, tbl, cas = system("A2")
    (v,) = isotropy_algebra(tbl, {(1, 1): 1})
    assert set(v.roots) == {(1, 1)}
    rs, tbl, cas = system("A3")
    basis = isotropy_algebra(tbl, cross_section_point(cas, [1, 1]))
    assert len(basis) == 2 and all(set(v.roots) <= set(cas.order) for v in basis)
    assert len(isotropy_algebra(tbl, {})) == len(rs.positive_roots)


@pytest.mark.parametrize("name,dim", [("A2", 2), ("A3", 4), ("B2", 2)])
def test_orbit_dimension_examples(name, dim):
    _, tbl, cas = system(name)
    assert orbit_dimension(tbl, cross_section_point(cas, [3, -2][:cas.m])) == dim


def test_s_injectivity_examples():
    _, tbl, cas = system("B2")
    tau = cross_section_point(cas, [3, 1])
    y = coad(tbl, e(2, (0, 1)), tau)
    assert support(y) == {(1, 1)} and y[1, 1] != 0
    assert check_s_injectivity(tbl, cas, tau, samples=10).passed
    _, tbl, cas = system("A3")
    y = coad(tbl, e(3, (1, 0, 0)), cross_section_point(cas, [1, 1]))
    assert support(y) == {(0, 1, 1)}
    with pytest.raises(ValueError):
        check_s_injectivity(tbl, cas, {(1, 1, 1): 1})


def test_cross_section_examples():
    _, tbl, cas = system("A2")
    tau = cross_section_point(cas, [2])
    assert not in_r_minus(cas, coad_group(tbl, GroupElement.exp(e(2, (1, 0))), tau))
    assert coad_group(tbl, GroupElement.exp(e(2, (1, 1), 5)), tau) == tau
    _, tbl, cas = system("B2")
    tau = cross_section_point(cas, [1, 1])
    log = LieElement(rank=2, roots={(0, 1): 1, (1, 1): 1})
    assert not in_r_minus(cas, coad_group(tbl, GroupElement.exp(log), tau))
    assert check_cross_section(tbl, cas, tau, samples=10).passed


def test_open_orbit_examples():
    _, tbl, cas = system("A2")
    assert tangent_rank(tbl, cross_section_point(cas, [1])) == 3
    _, tbl, cas = system("A3")
    assert check_open_orbit(tbl, cas, cross_section_point(cas, [2, -3]))
    assert tangent_rank(tbl, cross_section_point(cas, [2, -3])) == 6
    degenerate = {(1, 1, 1): Fraction(2)}
    assert not check_open_orbit(tbl, cas, degenerate)


def test_off_cross_section_orbit_can_stay_maximal():
    # tau = e_{-theta} in A3 lies outside r_-^x yet has isotropy r and a generic-size
    # N-orbit; only the B-orbit tangent rank drops
    _, tbl, cas = system("A3")
    z = {(1, 1, 1): Fraction(1)}
    assert orbit_dimension(tbl, z) == 4
    assert tangent_rank(tbl, z) < 6
    assert isotropy_is_r(tbl, cas, z)
    assert not check_open_orbit(tbl, cas, z)


# -- exhaustive identities ----------------------------------------------------------

def _pair(x, z):
    """<x, z> for x in n and z in n_- (dual bases)."""
    return sum((c * z.get(phi, 0) for phi, c in x.roots.items()), Fraction(0))


@pytest.mark.parametrize("name", RANK_LE_3)
def test_coad_commutator_consistency(name):
    rs, tbl, _ = system(name)
    pos = rs.positive_roots
    for a, b in itertools.product(pos, repeat=2):
        v, w = e(rs.rank, a), e(rs.rank, b)
        vw = tbl.bracket(v, w)
        for phi in pos:
            z = {phi: Fraction(1)}
            lhs = coad(tbl, v, coad(tbl, w, z))
            rhs = coad(tbl, w, coad(tbl, v, z))
            diff = {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)}
            assert support(diff) == support(coad(tbl, vw, z))
            assert all(diff.get(k, 0) == c for k, c in coad(tbl, vw, z).items())


@pytest.mark.parametrize("name", RANK_LE_3)
def test_coad_is_contragredient_of_ad(name):
    rs, tbl, _ = system(name)
    pos = rs.positive_roots
    for a, b, c in itertools.product(pos, repeat=3):
        v, x = e(rs.rank, a), e(rs.rank, b)
        z = {c: Fraction(1)}
        assert _pair(x, coad(tbl, v, z)) == -_pair(tbl.bracket(v, x), z)


# -- property-based -------------------------------------------------------------------

@st.composite
def n_elem(draw, rs, sparse=True):
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(rs.positive_roots),
                           max_size=len(rs.positive_roots)))
    return LieElement(rank=rs.rank, roots=dict(zip(rs.positive_roots, coeffs)))


@st.composite
def nminus(draw, rs):
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(rs.positive_roots),
                           max_size=len(rs.positive_roots)))
    return {phi: Fraction(c) for phi, c in zip(rs.positive_roots, coeffs) if c}


types3 = st.sampled_from(["A2", "A3", "B2", "B3", "C3", "G2"])


@given(types3, st.data())
def test_group_law(name, data):
    rs, tbl, _ = system(name)
    u = GroupElement.exp(data.draw(n_elem(rs)))
    w = GroupElement.exp(data.draw(n_elem(rs)))
    z = data.draw(nminus(rs))
    assert coad_group(tbl, u * w, z) == coad_group(tbl, u, coad_group(tbl, w, z))
    assert coad_group(tbl, u.inverse(), coad_group(tbl, u, z)) == {k: v for k, v in z.items() if v}


@given(types3, st.data())
def test_coad_linear(name, data):
    rs, tbl, _ = system(name)
    v = data.draw(n_elem(rs))
    z1, z2 = data.draw(nminus(rs)), data.draw(nminus(rs))
    total = {k: z1.get(k, 0) + z2.get(k, 0) for k in set(z1) | set(z2)}
    lhs = coad(tbl, v, total)
    a, b = coad(tbl, v, z1), coad(tbl, v, z2)
    rhs = {k: a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)}
    assert support(lhs) == support(rhs) and all(lhs[k] == rhs[k] for k in lhs)


@given(types3, st.data())
def test_h_equivariance(name, data):
    rs, tbl, cas = system(name)
    values = data.draw(st.lists(st.sampled_from([Fraction(-2), Fraction(1, 3), Fraction(3), Fraction(-1, 2)]),
                                min_size=rs.rank, max_size=rs.rank))
    u = GroupElement.exp(data.draw(n_elem(rs)))
    tau = cross_section_point(cas, data.draw(st.lists(st.sampled_from([-2, -1, 1, 3]),
                                                       min_size=cas.m, max_size=cas.m)))
    lhs = coad_group(tbl, u, torus_act_nminus(values, tau))
    rhs = torus_act_nminus(values, coad_group(tbl, torus_conjugate(values, u), tau))
    assert lhs == rhs


@given(types3, st.integers(0, 2**32))
def test_cross_section_isotropy(name, seed):
    rs, tbl, cas = system(name)
    rng = random.Random(seed)
    tau = cross_section_point(cas, [rng.choice([-3, -1, 2, 3]) for _ in cas.order])
    assert isotropy_is_r(tbl, cas, tau)
    assert orbit_dimension(tbl, tau) == len(rs.positive_roots) - cas.m


def test_group_element_log():
    _, tbl, _ = system("A2")
    g = GroupElement.exp(e(2, (1, 0)))
    assert g.log == e(2, (1, 0))
    with pytest.raises(ValueError):
        (g * g).log
    with pytest.raises(ValueError):
        GroupElement.exp(LieElement([1, 0]))


def test_verify_suite_small():
    _, tbl, cas = system("B2")
    rep = verify_coadjoint(tbl, cas, samples=4, seed=3)
    assert rep.passed, rep.summary()
    assert rep["cross_section_R_fixes"].evidence == "property-based evidence"
    assert rep["orbit_dimension"].evidence == "exact"
