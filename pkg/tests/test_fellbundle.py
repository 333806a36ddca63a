import itertools

import pytest
from hypothesis import given, strategies as st

from fellb.catalog import (
    c2diag, line_z2, m2pair, matrix_algebra, pauli_cocycle, swap_action, trivial_action, v4_cocycle,
)
from fellb.exactalg.scalars import I, ONE, Gauss
from fellb.fellbundle import (
    FellBundle, action_product, check_bundle_isomorphism, cocycle_line_bundle, orbit_bundle, restrict_bundle,
    semidirect_bundle, trivial_action_bundle, validate_bundle, validate_bundle_action,
)
from fellb.groupoid import cyclic_group, klein_four, pair_groupoid, translation_space


@pytest.mark.parametrize("make", [c2diag, line_z2, m2pair, v4_cocycle, lambda: v4_cocycle("Y")])
def test_catalog_bundles_are_valid(make):
    assert validate_bundle(make()).ok


def _tamper(b, mult=None, invol=None):
    return FellBundle(b.base, b.dims, {**b.mult, **(mult or {})}, {**b.invol, **(invol or {})}, name="bad")


def test_planted_associativity_defect():
    b = v4_cocycle()
    sign = [[(-b.mult[("a", "b")][0][0][0],)]]
    rep = validate_bundle(_tamper(b, mult={("a", "b"): sign}))
    assert rep.cites("associativity")


def test_planted_involution_defect():
    b = line_z2()
    rep = validate_bundle(_tamper(b, invol={"g": [(Gauss(2),)]}))
    assert rep.cites("involution")


def test_planted_positivity_defect():
    # b* = -b on the odd fibre survives every algebraic axiom but b*b = -1
    b = line_z2()
    rep = validate_bundle(_tamper(b, invol={"g": [(-ONE,)]}))
    assert rep.cites("positivity")
    assert not rep.cites("associativity") and not rep.cites("involution")


def test_planted_saturation_defect():
    g = cyclic_group(2)
    b = FellBundle(g, {"e": 1, "g": 0},
                   {("e", "e"): [[(ONE,)]], ("e", "g"): [[]], ("g", "e"): [], ("g", "g"): []},
                   {"e": [(ONE,)], "g": []}, name="hollow")
    rep = validate_bundle(b)
    assert rep.cites("saturation")


def test_cocycle_must_satisfy_the_identity():
    g = cyclic_group(2)
    bad = {("e", "e"): 1, ("e", "g"): 1, ("g", "e"): 1, ("g", "g"): "i"}
    with pytest.raises(ValueError):
        cocycle_line_bundle(klein_four(), {k: 1 for k in itertools.product("eabc", "eabc") if k != ("a", "a")})
    # i on (g, g) is a valid cocycle on Z/2: it is a coboundary
    assert validate_bundle(cocycle_line_bundle(g, bad)).ok


units = st.sampled_from([ONE, -ONE, I, -I])


@given(st.tuples(units, units, units))
def test_cohomologous_cocycles_give_valid_bundles(f):
    v4 = klein_four()
    fx = dict(zip("abc", f), e=ONE)
    base = pauli_cocycle()
    sigma = {(x, y): base[(x, y)] * fx[x] * fx[y] / fx[v4.comp[(x, y)]] for (x, y) in base}
    assert validate_bundle(cocycle_line_bundle(v4, sigma)).ok


def test_matrix_bundle_over_a_pair_groupoid():
    b = trivial_action_bundle(matrix_algebra(2), pair_groupoid([1, 2, 3]))
    assert validate_bundle(b).ok
    assert all(d == 4 for d in b.dims.values())


def test_semidirect_bundles():
    for act in (swap_action(), trivial_action(c2diag()), trivial_action(m2pair())):
        assert validate_bundle_action(act).ok
        sd = semidirect_bundle(act.bundle, act)
        assert validate_bundle(sd).ok
        assert sum(sd.dims.values()) == sum(act.bundle.dims.values()) * len(act.acting.arrows)


def test_restriction_to_a_wide_subgroupoid():
    b = v4_cocycle()
    assert validate_bundle(restrict_bundle(b, ["e", "a"])).ok
    with pytest.raises(ValueError):
        restrict_bundle(m2pair(), [(1, 1)])


def _a_rtimes_g(a):
    k_act, g_act = translation_space(a.base)
    return action_product(a, k_act, g_act)


@pytest.mark.parametrize("make", [line_z2, m2pair, v4_cocycle])
def test_orbit_of_translation_recovers_the_bundle(make):
    a = make()
    ab, tact = _a_rtimes_g(a)
    assert validate_bundle(ab).ok
    q = orbit_bundle(ab, tact)
    assert validate_bundle(q).ok
    arrow_map = {p: p[0] for p in q.base.arrows}
    assert check_bundle_isomorphism(q, a, arrow_map).ok


def test_orbit_bundle_needs_a_free_action():
    with pytest.raises(ValueError):
        orbit_bundle(c2diag(), swap_action())


def test_isomorphism_check_rejects_a_wrong_map():
    b = v4_cocycle()
    swap = {"e": "e", "a": "b", "b": "a", "c": "c"}
    # swapping X and Z flips the commutator sign, so the cocycle is not preserved
    assert not check_bundle_isomorphism(b, b, swap).ok
    assert check_bundle_isomorphism(b, b, {x: x for x in "eabc"}).ok
