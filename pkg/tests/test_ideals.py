import itertools

import pytest
from hypothesis import given, strategies as st

from fellb.catalog import (
    c2diag, diagonal_algebra, group_algebra, line_z2, m2pair, matrix_algebra, swap_action, trivial_action,
    v4_cocycle,
)
from fellb.exactalg import Gauss, UnsupportedInstance
from fellb.exactalg.linalg import Subspace
from fellb.fellbundle import BundleIsoAction, trivial_action_bundle
from fellb.groupoid import cyclic_group, klein_four, pair_groupoid, point_groupoid, trivial_iso_action
from fellb.ideals import (
    FellBundleIdeal, IdealLattice, bundle_to_unit_ideal, enumerate_ideals, enumerate_invariant_ideals,
    generated_ideal, ideal_join, is_invariant_unit_ideal, unit_ideal_from_blocks, unit_to_bundle_ideal,
    validate_ideal,
)

BUNDLES = {
    "C2diag": c2diag, "lineZ2": line_z2, "M2pair": m2pair, "V4": v4_cocycle,
    "M2+C over pair": lambda: trivial_action_bundle(matrix_algebra(2), pair_groupoid([1, 2])),
    "C[V4] over point": lambda: trivial_action_bundle(group_algebra(klein_four()), point_groupoid()),
}
COUNTS = {"C2diag": 4, "lineZ2": 2, "M2pair": 2, "V4": 2, "M2+C over pair": 2, "C[V4] over point": 16}


@pytest.mark.parametrize("name", sorted(BUNDLES))
def test_counts_agree_with_the_subset_oracle(name):
    b = BUNDLES[name]()
    fast = enumerate_ideals(b)
    slow = enumerate_ideals(b, method="subsets")
    assert fast.ideals == slow.ideals
    assert len(fast) == COUNTS[name]
    for j in fast:
        assert validate_ideal(b, j).ok


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_algebra_has_two_to_the_centre(n):
    b = trivial_action_bundle(diagonal_algebra(n), point_groupoid())
    assert len(enumerate_ideals(b)) == 2 ** len(b.unit_algebra(b.base.units[0]).center())


def test_zero_and_full_are_always_present():
    for make in BUNDLES.values():
        b = make()
        lat = enumerate_ideals(b)
        assert FellBundleIdeal.zero(b) in lat and FellBundleIdeal.full(b) in lat


def test_block_cap_is_enforced(monkeypatch):
    monkeypatch.setenv("FELLB_MAX_BLOCKS", "1")
    with pytest.raises(UnsupportedInstance):
        enumerate_ideals(c2diag())
    assert len(enumerate_ideals(m2pair())) == 2


def _elements(b, draw):
    arrows = b.base.arrows
    out = []
    for _ in range(draw(st.integers(0, 2))):
        a = draw(st.sampled_from(arrows))
        coords = tuple(Gauss(draw(st.integers(-2, 2)), draw(st.integers(-1, 1))) for _ in range(b.dims[a]))
        out.append((a, coords))
    return out


@given(st.sampled_from(sorted(BUNDLES)), st.data())
def test_generated_ideals_lie_in_the_lattice(name, data):
    b = BUNDLES[name]()
    lat = enumerate_ideals(b)
    elems = _elements(b, data.draw)
    j = generated_ideal(b, elems)
    assert j in lat
    assert generated_ideal(b, [(a, v) for a, s in j.fibers.items() for v in s.basis]) == j
    # minimality: contained in every enumerated ideal that holds the generators
    for k in lat:
        if all(v in k[a] for a, v in elems):
            assert j <= k
    more = generated_ideal(b, elems + _elements(b, data.draw))
    assert j <= more


@pytest.mark.parametrize("name", sorted(BUNDLES))
def test_lattice_laws(name):
    lat = enumerate_ideals(BUNDLES[name]())
    n = len(lat)
    for i, k in itertools.product(range(n), repeat=2):
        assert validate_ideal(lat.bundle, lat[i] & lat[k]).ok
        m, j = lat.meet[i][k], lat.join[i][k]
        assert lat.le(m, i) and lat.le(m, k) and lat.le(i, j) and lat.le(k, j)
        assert lat.join[i][m] == i and lat.meet[i][j] == i


@pytest.mark.parametrize("name", sorted(BUNDLES))
def test_unit_and_bundle_ideals_round_trip(name):
    b = BUNDLES[name]()
    for j in enumerate_ideals(b):
        unit = bundle_to_unit_ideal(j)
        assert is_invariant_unit_ideal(b, unit)
        assert unit_to_bundle_ideal(b, unit) == j


@pytest.mark.parametrize("name", sorted(BUNDLES))
def test_fibres_are_generated_from_the_source_unit(name):
    b = BUNDLES[name]()
    g = b.base
    for j in enumerate_ideals(b):
        for a in g.arrows:
            s = g.src[a]
            assert Subspace(b.dims[a], b.products(a, b.basis(a), s, j[s].basis)) == j[a]


@pytest.mark.parametrize("name", sorted(BUNDLES))
def test_fibre_membership_via_squares(name):
    # independent description of J_g: v lies in J_g iff v* v lies in I_src(g)
    b = BUNDLES[name]()
    g = b.base
    samples = [tuple(Gauss(c) for c in cs) for cs in itertools.product((-1, 0, 2), repeat=4)]
    for j in enumerate_ideals(b):
        for a in g.arrows:
            d, s = b.dims[a], g.src[a]
            for v in {x[:d] for x in samples}:
                square = b.mul(g.inv[a], b.star(a, v), a, v)
                assert (v in j[a]) == (square in j[s])


def test_non_invariant_unit_ideal_is_rejected():
    b = m2pair()
    unit = unit_ideal_from_blocks(b, {(1, 1): [0]})
    assert not is_invariant_unit_ideal(b, unit)
    with pytest.raises(ValueError):
        unit_to_bundle_ideal(b, unit)


def test_non_ideal_family_fails_validation():
    b = line_z2()
    fibers = {"e": Subspace.zero(1), "g": Subspace.full(1)}
    rep = validate_ideal(b, fibers)
    assert not rep.ok


def test_join_is_the_generated_ideal():
    b = c2diag()
    lat = enumerate_ideals(b)
    atoms = [j for j in lat if sum(j.dims()) == 1]
    assert len(atoms) == 2
    assert ideal_join(*atoms).is_full()


def test_lattice_rejects_non_closed_families():
    b = c2diag()
    lat = enumerate_ideals(b)
    atoms = [j for j in lat if sum(j.dims()) == 1]
    with pytest.raises(ValueError):
        IdealLattice(b, atoms)


def test_invariant_ideals_of_the_catalog_actions():
    assert len(enumerate_invariant_ideals(c2diag(), swap_action())) == 2
    b = c2diag()
    assert len(enumerate_invariant_ideals(b, trivial_action(b))) == 4


def _permutation_action(n, perm):
    b = trivial_action_bundle(diagonal_algebra(n), point_groupoid())
    order = 1
    p = list(perm)
    while p != list(range(n)):
        p = [perm[k] for k in p]
        order += 1
    g = cyclic_group(order)
    iso = trivial_iso_action(g, b.base)
    alpha = {}
    for k, x in enumerate(g.arrows):
        q = list(range(n))
        for _ in range(k):
            q = [perm[i] for i in q]
        mat = [tuple(Gauss(1) if q[c] == r else Gauss(0) for c in range(n)) for r in range(n)]
        for h in b.base.arrows:
            alpha[(x, h)] = mat
    return b, BundleIsoAction(iso, b, alpha)


@given(st.permutations(list(range(4))) | st.permutations(list(range(3))))
def test_invariant_ideals_count_orbits(perm):
    n = len(perm)
    b, act = _permutation_action(n, perm)
    seen, orbits = set(), 0
    for i in range(n):
        if i not in seen:
            orbits += 1
            k = i
            while k not in seen:
                seen.add(k)
                k = perm[k]
    assert len(enumerate_invariant_ideals(b, act)) == 2 ** orbits

