"""Ideals of Fell bundles and their lattices."""

import itertools
import os

from .exactalg.linalg import Subspace, from_columns, nullspace, vsub
from .exactalg.staralg import UnsupportedInstance, block_ideal
from .report import ValidationReport

DEFAULT_MAX_BLOCKS = 16


def max_blocks():
    return int(os.environ.get("FELLB_MAX_BLOCKS", DEFAULT_MAX_BLOCKS))


class FellBundleIdeal:
    """A per-arrow family of subspaces J_g of B_g."""

    def __init__(self, bundle, fibers):
        self.bundle = bundle
        self.fibers = {g: fibers[g] for g in bundle.base.arrows}
        self._key = tuple(self.fibers[g] for g in bundle.base.arrows)

    @classmethod
    def zero(cls, b):
        return cls(b, {g: Subspace.zero(b.dims[g]) for g in b.base.arrows})

    @classmethod
    def full(cls, b):
        return cls(b, {g: Subspace.full(b.dims[g]) for g in b.base.arrows})

    def __getitem__(self, g):
        return self.fibers[g]

    def __eq__(self, other):
        if not isinstance(other, FellBundleIdeal):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __le__(self, other):
        return all(self.fibers[g] <= other.fibers[g] for g in self.fibers)

    def __and__(self, other):
        return FellBundleIdeal(self.bundle, {g: self.fibers[g] & other.fibers[g] for g in self.fibers})

    def fiber_sum(self, other):
        return {g: self.fibers[g] + other.fibers[g] for g in self.fibers}

    def dims(self):
        return tuple(s.dim for s in self._key)

    def is_zero(self):
        return all(s.is_zero() for s in self._key)

    def is_full(self):
        return all(s.is_full() for s in self._key)

    def elements(self):
        from .fellbundle import BundleElement
        return [BundleElement(g, v) for g, s in self.fibers.items() for v in s.basis]

    def __repr__(self):
        return "FellBundleIdeal(%s, dims=%s)" % (self.bundle.name, self.dims())


def validate_ideal(b, fibers):
    """Absorption on both sides, self-adjointness and J_h = A_h J_src(h)."""
    if isinstance(fibers, FellBundleIdeal):
        fibers = fibers.fibers
    rep = ValidationReport("ideal of %s" % b.name)
    g = b.base
    for a in g.arrows:
        if a not in fibers or fibers[a].ambient != b.dims[a]:
            rep.add("shape", "subspace dimension does not match the fibre", arrow=a)
    if not rep.ok:
        return rep
    for (x, y), xy in g.comp.items():
        target = fibers[xy]
        for v in b.products(x, b.basis(x), y, fibers[y].basis):
            if v not in target:
                rep.add("absorption", "B_g J_h not inside J_gh", pair=(x, y))
                break
        for v in b.products(x, fibers[x].basis, y, b.basis(y)):
            if v not in target:
                rep.add("absorption", "J_g B_h not inside J_gh", pair=(x, y))
                break
    for a in g.arrows:
        if fibers[a].conj_image(b.invol[a], b.dims[g.inv[a]]) != fibers[g.inv[a]]:
            rep.add("adjoint", "iota(J_g) != J_g^-1", arrow=a)
        s = g.src[a]
        if Subspace(b.dims[a], b.products(a, b.basis(a), s, fibers[s].basis)) != fibers[a]:
            rep.add("fibering", "J_h != A_h J_src(h)", arrow=a)
    return rep


def generated_ideal(b, elements):
    """Smallest ideal containing the given (arrow, coords) elements, by worklist closure."""
    g = b.base
    fibers = {a: Subspace.zero(b.dims[a]) for a in g.arrows}
    pending = []

    def grow(a, vecs):
        new = fibers[a].add_vectors(vecs)
        if new is not fibers[a]:
            fibers[a] = new
            pending.append(a)

    seeds = {}
    for arrow, coords in elements:
        seeds.setdefault(arrow, []).append(tuple(coords))
    for a in g.arrows:
        if a in seeds:
            grow(a, seeds[a])
    while pending:
        a = pending.pop()
        basis = fibers[a].basis
        for k in g.by_src[g.rng[a]]:
            grow(g.comp[(k, a)], b.products(k, b.basis(k), a, basis))
        for k in g.by_rng[g.src[a]]:
            grow(g.comp[(a, k)], b.products(a, basis, k, b.basis(k)))
        grow(g.inv[a], [b.star(a, v) for v in basis])
    return FellBundleIdeal(b, fibers)


def ideal_join(i, j):
    b = i.bundle
    return generated_ideal(b, [(a, v) for a, s in i.fiber_sum(j).items() for v in s.basis])


def reindex(ideal, target, projection):
    """Literal re-indexing: the ideal of ``target`` with fibre J_{projection(a)} over a."""
    return FellBundleIdeal(target, {a: ideal.fibers[projection(a)] for a in target.base.arrows})


# ---------------------------------------------------------------- unit ideals

def _support(b, u, sub):
    """Indices of the central blocks of A_u spanning the ideal sub; ValueError if it is not a block sum."""
    alg = b.unit_algebra(u)
    idems = b.blocks(u)
    chosen = [k for k, e in enumerate(idems) if e in sub]
    if block_ideal(alg, [idems[k] for k in chosen]) != sub:
        raise ValueError("not a two-sided ideal of the unit fibre at %r" % (u,))
    return chosen


def unit_ideal_from_blocks(b, chosen):
    """chosen: dict unit -> block indices."""
    out = {}
    for u in b.base.units:
        idems = b.blocks(u)
        out[u] = block_ideal(b.unit_algebra(u), [idems[k] for k in chosen.get(u, ())])
    return out


def bundle_to_unit_ideal(j):
    return {u: j.fibers[u] for u in j.bundle.base.units}


def _conjugation_span(b, a, ideal_at, outward):
    """span{e_k* x e_l} (outward False) or span{e_k x e_l*} (outward True) for basis e of B_a."""
    g = b.base
    ia = g.inv[a]
    basis = b.basis(a)
    stars = [b.star(a, e) for e in basis]
    out = []
    if not outward:
        r = g.rng[a]
        for x in ideal_at[r].basis:
            for sk in stars:
                left = b.mul(ia, sk, r, x)
                out.extend(b.mul(ia, left, a, el) for el in basis)
    else:
        s = g.src[a]
        for x in ideal_at[s].basis:
            for ek in basis:
                left = b.mul(a, ek, s, x)
                out.extend(b.mul(a, left, ia, sl) for sl in stars)
    return out


def invariance_witness(b, unit_ideal):
    """First arrow g with B_g* I_r(g) B_g not inside I_s(g) (or the symmetric failure), else None."""
    g = b.base
    for a in g.arrows:
        s, r = g.src[a], g.rng[a]
        for v in _conjugation_span(b, a, unit_ideal, outward=False):
            if v not in unit_ideal[s]:
                return a
        for v in _conjugation_span(b, a, unit_ideal, outward=True):
            if v not in unit_ideal[r]:
                return a
    return None


def is_invariant_unit_ideal(b, unit_ideal):
    for u in b.base.units:
        _support(b, u, unit_ideal[u])
    return invariance_witness(b, unit_ideal) is None


def unit_to_bundle_ideal(b, unit_ideal):
    """J_g = {v in B_g : v* v in I_src(g)}.

    With q the complement of the central support of I_src(g), v* v lies in
    the ideal iff v q = 0, so J_g is the kernel of right multiplication by q.
    """
    g = b.base
    supports = {u: _support(b, u, unit_ideal[u]) for u in g.units}
    bad = invariance_witness(b, unit_ideal)
    if bad is not None:
        raise ValueError("unit ideal is not invariant; absorption breaks at arrow %r" % (bad,))
    comps = {}
    for u in g.units:
        alg = b.unit_algebra(u)
        idems = b.blocks(u)
        q = alg.unit() if alg.dim else ()
        for k in supports[u]:
            q = vsub(q, idems[k])
        comps[u] = q
    fibers = {}
    for a in g.arrows:
        s = g.src[a]
        cols = [b.mul(a, e, s, comps[s]) for e in b.basis(a)]
        m = from_columns(cols, b.dims[a])
        fibers[a] = Subspace(b.dims[a], nullspace(m, b.dims[a]))
    return FellBundleIdeal(b, fibers)


# ---------------------------------------------------------------- enumeration

def global_blocks(b):
    """All (unit, block index) pairs in canonical order."""
    return [(u, k) for u in b.base.units for k in range(len(b.blocks(u)))]


def block_components(b):
    """Connected components of the linking relation between central blocks.

    Block i at rng(g) is linked to block j at src(g) when e_j B_g* e_i B_g != 0.
    Invariant unit ideals are exactly the unions of components.
    """
    g = b.base
    blocks = global_blocks(b)
    parent = {x: x for x in blocks}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in g.arrows:
        s, r = g.src[a], g.rng[a]
        if s == r and g.is_unit(a):
            continue
        for i, ei in enumerate(b.blocks(r)):
            span = _conjugation_span(b, a, {r: Subspace(b.dims[r], [ei])}, outward=False)
            alg = b.unit_algebra(s)
            for j, ej in enumerate(b.blocks(s)):
                if any(any(alg.mul(ej, v)) for v in span):
                    x, y = find((r, i)), find((s, j))
                    if x != y:
                        parent[max(x, y, key=blocks.index)] = min(x, y, key=blocks.index)
    comps = {}
    for x in blocks:
        comps.setdefault(find(x), []).append(x)
    return sorted(comps.values(), key=lambda c: blocks.index(c[0]))


def _candidates_from_subsets(blocks, subsets):
    out = []
    for bits in subsets:
        chosen = {}
        for (u, k), bit in zip(blocks, bits):
            if bit:
                chosen.setdefault(u, []).append(k)
        out.append((tuple(bits), chosen))
    return sorted(out, key=lambda t: t[0])


def enumerate_ideals(b, method="components"):
    """All ideals of b, lifted from invariant unit ideals, in canonical order.

    ``method="subsets"`` scans every subset of central blocks (the brute
    force); the default only forms unions of linkage components.  Every
    candidate is re-checked with is_invariant_unit_ideal either way.
    """
    blocks = global_blocks(b)
    cap = max_blocks()
    if method == "subsets":
        if len(blocks) > cap:
            raise UnsupportedInstance("%d central blocks exceed FELLB_MAX_BLOCKS=%d" % (len(blocks), cap))
        subsets = itertools.product((0, 1), repeat=len(blocks))
    elif method == "components":
        comps = block_components(b)
        if len(comps) > cap:
            raise UnsupportedInstance("%d block components exceed FELLB_MAX_BLOCKS=%d" % (len(comps), cap))
        subsets = []
        for pick in itertools.product((0, 1), repeat=len(comps)):
            members = {x for c, p in zip(comps, pick) if p for x in c}
            subsets.append(tuple(int(x in members) for x in blocks))
    else:
        raise ValueError("unknown method %r" % method)
    ideals = []
    for bits, chosen in _candidates_from_subsets(blocks, subsets):
        unit = unit_ideal_from_blocks(b, chosen)
        if not is_invariant_unit_ideal(b, unit):
            if method == "components":
                raise AssertionError("component union %r failed the invariance check" % (bits,))
            continue
        ideals.append(unit_to_bundle_ideal(b, unit))
    return IdealLattice(b, ideals)


def is_invariant_ideal(j, act):
    """alpha_x(J_h) = J_{x.h} for every x and h."""
    b = j.bundle
    for (x, h), xh in act.iso.sigma.items():
        if j.fibers[h].image(act.alpha[(x, h)], b.dims[xh]) != j.fibers[xh]:
            return False
    return True


def enumerate_invariant_ideals(b, act, method="components"):
    if act.bundle.base != b.base:
        raise ValueError("action is not on this bundle")
    full = enumerate_ideals(b, method=method)
    return IdealLattice(b, [j for j in full.ideals if is_invariant_ideal(j, act)], action=act)


class IdealLattice:
    """A finite lattice of ideals with meet (intersection) and join (generated ideal of the sum)."""

    def __init__(self, bundle, ideals, action=None):
        self.bundle = bundle
        self.ideals = list(ideals)
        self.action = action
        self._index = {j: k for k, j in enumerate(self.ideals)}
        if len(self._index) != len(self.ideals):
            raise ValueError("duplicate ideals")
        n = len(self.ideals)
        self.meet = [[None] * n for _ in range(n)]
        self.join = [[None] * n for _ in range(n)]
        for i in range(n):
            for k in range(i, n):
                a, c = self.ideals[i], self.ideals[k]
                self.meet[i][k] = self.meet[k][i] = self._find(a & c, "meet")
                self.join[i][k] = self.join[k][i] = self._find(ideal_join(a, c), "join")

    def _find(self, j, what):
        try:
            return self._index[j]
        except KeyError:
            raise ValueError("lattice is not closed under %s" % what) from None

    def __len__(self):
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def __getitem__(self, k):
        return self.ideals[k]

    def index(self, j):
        return self._index.get(j)

    def __contains__(self, j):
        return j in self._index

    def le(self, i, k):
        return self.ideals[i] <= self.ideals[k]

    def hasse_edges(self):
        """Cover relations (i, k): ideal i strictly below k with nothing in between."""
        n = len(self)
        below = [[i != k and self.le(i, k) for k in range(n)] for i in range(n)]
        return [(i, k) for i in range(n) for k in range(n)
                if below[i][k] and not any(below[i][m] and below[m][k] for m in range(n))]

    def __repr__(self):
        return "IdealLattice(%s, %d ideals)" % (self.bundle.name, len(self))


def check_lattice_isomorphism(src, dst, mapping):
    """mapping[i] is the index in dst of the image of src[i] (None if the image is missing)."""
    rep = ValidationReport("lattice map %s -> %s" % (src.bundle.name, dst.bundle.name))
    n = len(src)
    mapping = [mapping[i] for i in range(n)]
    if any(m is None for m in mapping):
        rep.add("total", "map is not total into the target lattice",
                missing=[i for i, m in enumerate(mapping) if m is None])
        return rep
    if len(set(mapping)) != n or n != len(dst):
        rep.add("bijectivity", "map is not a bijection", images=mapping, target_size=len(dst))
        return rep
    for i in range(n):
        for k in range(n):
            if mapping[src.meet[i][k]] != dst.meet[mapping[i]][mapping[k]]:
                rep.add("meet", "f(I meet K) != f(I) meet f(K)", pair=(i, k))
            if mapping[src.join[i][k]] != dst.join[mapping[i]][mapping[k]]:
                rep.add("join", "f(I join K) != f(I) join f(K)", pair=(i, k))
            if src.le(i, k) != dst.le(mapping[i], mapping[k]):
                rep.add("order", "order not preserved in both directions", pair=(i, k))
    return rep
