import pytest
from hypothesis import given, strategies as st

from fellb.groupoid import (
    FiniteGroupoid, IsoAction, SpaceAction, action_groupoid, canonical_subgroupoid_equivalence, cyclic_group,
    freeness_witnesses, iso_freeness_witnesses, klein_four, orbit_groupoid, orbit_space, pair_groupoid,
    point_groupoid, product_groupoid, quotient_by_subgroupoid, quotient_translation_space, self_equivalence,
    semidirect_groupoid, subgroupoid, translation_space, trivial_iso_action, units_only, validate_action,
    validate_equivalence_space, validate_groupoid, validate_iso_action,
)


@pytest.mark.parametrize("g", [
    cyclic_group(1), cyclic_group(4), klein_four(), pair_groupoid([1, 2, 3]), units_only(["p", "q"]),
    units_only([]), product_groupoid(pair_groupoid([1, 2]), cyclic_group(3)), point_groupoid(),
])
def test_constructors_validate(g):
    assert validate_groupoid(g).ok


def test_planted_inverse_defect():
    g = cyclic_group(3)
    bad = FiniteGroupoid(g.arrows, g.units, g.src, g.rng, {**g.inv, "g": "g"}, g.comp)
    rep = validate_groupoid(bad)
    assert not rep.ok
    assert rep.cites("invers")


def test_subgroupoid_must_be_closed():
    with pytest.raises(ValueError):
        subgroupoid(cyclic_group(4), ["e", "g"])
    assert len(subgroupoid(cyclic_group(4), ["e", "g2"]).arrows) == 2


@given(st.integers(1, 5), st.integers(1, 3))
def test_products_of_cyclic_and_pair(n, m):
    g = product_groupoid(cyclic_group(n), pair_groupoid(list(range(m))))
    assert validate_groupoid(g).ok
    assert len(g.arrows) == n * m * m
    assert len(g.units) == m


def test_canonical_equivalence_pairings():
    m = klein_four()
    e = canonical_subgroupoid_equivalence(m, ["e", "a"])
    assert validate_equivalence_space(e).ok
    proj = e.meta["projection"]
    for x, y in e.left_pairs():
        assert e.left_pairing(x, y) == (m.comp[(x, m.inv[y])], proj[y])
    for x, y in e.right_pairs():
        assert e.right_pairing(x, y) == m.comp[(m.inv[x], y)]
    assert e.left_pairing("b", "c") == ("a", proj["c"])


def test_canonical_equivalence_over_a_pair_groupoid():
    m = product_groupoid(pair_groupoid([1, 2]), cyclic_group(2))
    h = [a for a in m.arrows if a[0][0] == a[0][1]]
    e = canonical_subgroupoid_equivalence(m, h)
    assert validate_equivalence_space(e).ok
    assert len(e.left.units) == len(m.arrows) // 2


def test_self_equivalence():
    for g in (klein_four(), pair_groupoid([1, 2])):
        assert validate_equivalence_space(self_equivalence(g)).ok


def test_translation_space_commutes_and_is_free():
    g = product_groupoid(pair_groupoid([1, 2]), cyclic_group(2))
    k_act, g_act = translation_space(g)
    assert validate_action(k_act).ok and validate_action(g_act).ok
    assert not freeness_witnesses(g_act)
    for k, t, kt in k_act.pairs():
        for x in g.by_src[g_act.moment[t]]:
            assert k_act.act[(k, g_act.act[(x, t)])] == g_act.act[(x, kt)]


def _swap_on_pairs():
    h = pair_groupoid([1, 2])
    g = cyclic_group(2)
    flip = {1: 2, 2: 1}
    sigma = {(x, a): (a if x == "e" else (flip[a[0]], flip[a[1]])) for x in g.arrows for a in h.arrows}
    return IsoAction(g, h, {a: "e" for a in h.arrows}, sigma)


def test_semidirect_groupoid_axioms():
    for a in (_swap_on_pairs(), trivial_iso_action(cyclic_group(3), pair_groupoid([1, 2]))):
        assert validate_iso_action(a).ok
        m = semidirect_groupoid(a)
        assert validate_groupoid(m).ok
        assert len(m.arrows) == len(a.target.arrows) * len(a.acting.arrows)
        copy = m.meta["copy_of_H"]
        for (x, y), xy in a.target.comp.items():
            assert m.comp[(copy[x], copy[y])] == copy[xy]


def test_orbit_groupoid_of_a_free_action():
    a = _swap_on_pairs()
    assert not iso_freeness_witnesses(a)
    q = orbit_groupoid(a)
    assert validate_groupoid(q).ok
    assert len(q.arrows) == 2
    with pytest.raises(ValueError):
        orbit_groupoid(trivial_iso_action(cyclic_group(2), point_groupoid()))


def test_quotient_translation_space_identifies_the_orbit_space():
    for a in (_swap_on_pairs(), trivial_iso_action(cyclic_group(2), units_only(["p", "q"]))):
        m = semidirect_groupoid(a)
        copy = m.meta["copy_of_H"]
        ra, reps, proj, quot = quotient_by_subgroupoid(m, subgroupoid(m, list(copy.values())))
        k_act, g_act = quotient_translation_space(a, m)
        to_t = {r: (a.target.rng[r[0]], r[1]) for r in reps}
        assert sorted(to_t.values(), key=repr) == sorted(k_act.space, key=repr)
        for k, t, kt in quot.pairs():
            assert k_act.act[(k, to_t[t])] == to_t[kt]
        assert validate_action(k_act).ok and validate_action(g_act).ok


def test_action_groupoid_and_orbit_space():
    g = cyclic_group(4)
    k_act, _ = translation_space(g)
    ag = action_groupoid(k_act)
    assert validate_groupoid(ag).ok
    assert len(ag.arrows) == 16 and len(ag.units) == 4
    reps, proj = orbit_space(k_act)
    assert len(reps) == 1
    bad = SpaceAction(g, ["t"], {"t": "e"}, {(x, "t"): "t" for x in g.arrows})
    assert validate_action(bad).ok and freeness_witnesses(bad)
