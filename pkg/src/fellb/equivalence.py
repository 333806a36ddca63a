"""Equivalence bundles between Fell bundles, the standard constructions, and the Rieffel correspondence.

An equivalence E between B over G and C over H lives over a (G, H)-equivalence
Z.  Everything is tabulated on basis vectors: ``lact[(g, z)]`` and
``ract[(z, h)]`` are (target point, tensor) pairs for the actions, and
``lip[(z, w)]``, ``rip[(z, w)]`` are (arrow, tensor) pairs for the inner
products.  <e, f>_L is linear in e and conjugate-linear in f; <e, f>_R is
conjugate-linear in e and linear in f.
"""

from .exactalg.linalg import Subspace, axpy, unit_vec
from .exactalg.scalars import ZERO
from .fellbundle import (
    _require, action_bundle, check_bundle_isomorphism, orbit_bundle, restrict_bundle,
    semidirect_bundle, translation_action, validate_bundle_action,
)
from .groupoid import (
    GroupoidEquivalence, SpaceAction, canonical_subgroupoid_equivalence, iso_freeness_witnesses,
    orbit_groupoid, quotient_translation_space, self_equivalence, semidirect_groupoid,
    translation_space, validate_equivalence_space,
)
from .ideals import FellBundleIdeal, generated_ideal
from .report import ValidationReport


def _contract(tensor, x, y, dim):
    acc = [ZERO] * dim
    for i, a in enumerate(x):
        if a:
            row = tensor[i]
            for j, b in enumerate(y):
                if b:
                    axpy(acc, a * b, row[j])
    return tuple(acc)


def _conj(v):
    return tuple(c.conjugate() for c in v)


class EquivalenceBundle:
    def __init__(self, left, right, space, dims, lact, ract, lip, rip, name="", meta=None):
        self.left = left
        self.right = right
        self.space = space
        self.dims = dict(dims)
        self.lact = dict(lact)
        self.ract = dict(ract)
        self.lip = dict(lip)
        self.rip = dict(rip)
        self.name = name
        self.meta = dict(meta or {})

    @classmethod
    def from_rule(cls, left, right, space, dims, lact_rule, ract_rule, lip_rule, rip_rule, name="", meta=None):
        """Tabulate the four operations on basis vectors.

        lact_rule(g, b, z, e) and ract_rule(z, e, h, c) return (point, coords);
        lip_rule(z, e, w, f) and rip_rule(z, e, w, f) return (arrow, coords).
        """
        def basis(d):
            return [unit_vec(d, i) for i in range(d)]

        def tab(rule, p, bp, q, bq):
            target, rows = None, []
            for x in bp:
                row = []
                for y in bq:
                    t, v = rule(p, x, q, y)
                    if target is not None and t != target:
                        raise ValueError("rule moves the target inside one fibre pair %r" % ((p, q),))
                    target = t
                    row.append(tuple(v))
                rows.append(row)
            return target, rows

        la, ra = space.left_action, space.right_action
        lact, ract, lip, rip = {}, {}, {}, {}
        for g, z, gz in la.pairs():
            t, rows = tab(lact_rule, g, basis(left.dims[g]), z, basis(dims[z]))
            lact[(g, z)] = (gz if t is None else t, rows)
        for h, z, zh in ra.pairs():
            t, rows = tab(ract_rule, z, basis(dims[z]), h, basis(right.dims[h]))
            ract[(z, h)] = (zh if t is None else t, rows)
        for z, w in space.left_pairs():
            t, rows = tab(lip_rule, z, basis(dims[z]), w, basis(dims[w]))
            lip[(z, w)] = (space.left_pairing(z, w) if t is None else t, rows)
        for z, w in space.right_pairs():
            t, rows = tab(rip_rule, z, basis(dims[z]), w, basis(dims[w]))
            rip[(z, w)] = (space.right_pairing(z, w) if t is None else t, rows)
        return cls(left, right, space, dims, lact, ract, lip, rip, name=name, meta=meta)

    def __repr__(self):
        return "EquivalenceBundle(%s: %s ~ %s over %d points)" % (
            self.name, self.left.name, self.right.name, len(self.space.space))

    def basis(self, z):
        return [unit_vec(self.dims[z], i) for i in range(self.dims[z])]

    def lmul(self, g, b, z, e):
        t, ten = self.lact[(g, z)]
        return t, _contract(ten, b, e, self.dims[t])

    def rmul(self, z, e, h, c):
        t, ten = self.ract[(z, h)]
        return t, _contract(ten, e, c, self.dims[t])

    def linner(self, z, e, w, f):
        a, ten = self.lip[(z, w)]
        return a, _contract(ten, e, _conj(f), self.left.dims[a])

    def rinner(self, z, e, w, f):
        a, ten = self.rip[(z, w)]
        return a, _contract(ten, _conj(e), f, self.right.dims[a])


def validate_equivalence_bundle(e, bundles=False):
    """Covering, associativity, module compatibility, adjoint symmetry, the
    imprimitivity link, fullness and Gram positivity; empty iff valid.

    With ``bundles=True`` the two Fell bundles are validated as well.
    """
    from .fellbundle import validate_bundle
    rep = ValidationReport("equivalence %s" % e.name)
    sp = e.space
    rep.extend(validate_equivalence_space(sp), "space")
    if e.left.base != sp.left or e.right.base != sp.right:
        rep.add("base", "bundles do not sit over the groupoids of the space")
    if bundles:
        rep.extend(validate_bundle(e.left), "left bundle")
        rep.extend(validate_bundle(e.right), "right bundle")
    if not rep.ok:
        return rep
    L, R = e.left, e.right
    G, H = L.base, R.base
    la, ra = sp.left_action, sp.right_action
    lpairs, rpairs = sp.left_pairs(), sp.right_pairs()
    missing = ([("lact", (g, z)) for g, z, _ in la.pairs() if (g, z) not in e.lact]
               + [("ract", (z, h)) for h, z, _ in ra.pairs() if (z, h) not in e.ract]
               + [("lip", p) for p in lpairs if p not in e.lip]
               + [("rip", p) for p in rpairs if p not in e.rip])
    for table, key in missing:
        rep.add("shape", "operation table is incomplete", table=table, key=key)
    if not rep.ok:
        return rep

    # covering
    for g, z, gz in la.pairs():
        if e.lact[(g, z)][0] != gz:
            rep.add("covering", "left action does not cover g.z", arrow=g, point=z)
    for h, z, zh in ra.pairs():
        if e.ract[(z, h)][0] != zh:
            rep.add("covering", "right action does not cover z.h", arrow=h, point=z)
    for z, w in lpairs:
        if e.lip[(z, w)][0] != sp.left_pairing(z, w):
            rep.add("covering", "<e,f>_L does not cover the left pairing", pair=(z, w))
    for z, w in rpairs:
        if e.rip[(z, w)][0] != sp.right_pairing(z, w):
            rep.add("covering", "<e,f>_R does not cover the right pairing", pair=(z, w))
    if not rep.ok:
        return rep

    # action associativity and the bimodule law
    for (g, k), gk in G.comp.items():
        for z in sp.space:
            if la.moment[z] != G.src[k]:
                continue
            for b in L.basis(g):
                for c in L.basis(k):
                    bc = L.mul(g, b, k, c)
                    for v in e.basis(z):
                        kz, cv = e.lmul(k, c, z, v)
                        if e.lmul(gk, bc, z, v) != e.lmul(g, b, kz, cv):
                            rep.add("left associativity", "(bb').e != b.(b'.e)", pair=(g, k), point=z)
    for (h, k), hk in H.comp.items():
        for z in sp.space:
            if ra.moment[z] != H.rng[h]:
                continue
            for v in e.basis(z):
                for c in R.basis(h):
                    zh, vc = e.rmul(z, v, h, c)
                    for d in R.basis(k):
                        if e.rmul(z, v, hk, R.mul(h, c, k, d)) != e.rmul(zh, vc, k, d):
                            rep.add("right associativity", "e.(cc') != (e.c).c'", pair=(h, k), point=z)
    for g, z, gz in la.pairs():
        for h in H.by_rng[ra.moment[z]]:
            for b in L.basis(g):
                for v in e.basis(z):
                    bz, bv = e.lmul(g, b, z, v)
                    for c in R.basis(h):
                        zh, vc = e.rmul(z, v, h, c)
                        if e.rmul(bz, bv, h, c) != e.lmul(g, b, zh, vc):
                            rep.add("bimodule", "(b.e).c != b.(e.c)", left=g, point=z, right=h)

    # module compatibility of the inner products
    for g, z, gz in la.pairs():
        for w in sp.space:
            if ra.moment[w] != ra.moment[z]:
                continue
            for b in L.basis(g):
                for v in e.basis(z):
                    _, bv = e.lmul(g, b, z, v)
                    for f in e.basis(w):
                        a, ip = e.linner(z, v, w, f)
                        if e.linner(gz, bv, w, f)[1] != L.mul(g, b, a, ip):
                            rep.add("left compatibility", "<b.e,f>_L != b<e,f>_L", arrow=g, pair=(z, w))
    for h, w, wh in ra.pairs():
        for z in sp.space:
            if la.moment[z] != la.moment[w]:
                continue
            for v in e.basis(z):
                for f in e.basis(w):
                    a, ip = e.rinner(z, v, w, f)
                    for c in R.basis(h):
                        _, fc = e.rmul(w, f, h, c)
                        if e.rinner(z, v, wh, fc)[1] != R.mul(a, ip, h, c):
                            rep.add("right compatibility", "<e,f.c>_R != <e,f>_R c", arrow=h, pair=(z, w))
    # inner products see the opposite action through adjoints
    for h, z, zh in ra.pairs():
        hi = H.inv[h]
        for w in sp.space:
            if ra.moment[w] != H.src[h]:
                continue
            wi = ra.act[(w, hi)]
            for v in e.basis(z):
                for c in R.basis(h):
                    _, vc = e.rmul(z, v, h, c)
                    cs = R.star(h, c)
                    for f in e.basis(w):
                        _, fcs = e.rmul(w, f, hi, cs)
                        if e.linner(zh, vc, w, f) != e.linner(z, v, wi, fcs):
                            rep.add("left compatibility", "<e.c,f>_L != <e,f.c*>_L", arrow=h, pair=(z, w))
    for g, z, gz in la.pairs():
        gi = G.inv[g]
        for w in sp.space:
            if la.moment[w] != G.rng[g]:
                continue
            wi = la.act[(gi, w)]
            for b in L.basis(g):
                bs = L.star(g, b)
                for v in e.basis(z):
                    _, bv = e.lmul(g, b, z, v)
                    for f in e.basis(w):
                        _, bsf = e.lmul(gi, bs, w, f)
                        if e.rinner(gz, bv, w, f) != e.rinner(z, v, wi, bsf):
                            rep.add("right compatibility", "<b.e,f>_R != <e,b*.f>_R", arrow=g, pair=(z, w))

    # adjoint symmetry
    for z, w in lpairs:
        for i, v in enumerate(e.basis(z)):
            for j, f in enumerate(e.basis(w)):
                a, ip = e.linner(z, v, w, f)
                if L.star(a, ip) != e.linner(w, f, z, v)[1]:
                    rep.add("adjoint symmetry", "<e,f>_L* != <f,e>_L", pair=(z, w), basis=(i, j))
    for z, w in rpairs:
        for i, v in enumerate(e.basis(z)):
            for j, f in enumerate(e.basis(w)):
                a, ip = e.rinner(z, v, w, f)
                if R.star(a, ip) != e.rinner(w, f, z, v)[1]:
                    rep.add("adjoint symmetry", "<e,f>_R* != <f,e>_R", pair=(z, w), basis=(i, j))

    # imprimitivity link <e,f>_L . g = e . <f,g>_R
    by_rho = {}
    for x in sp.space:
        by_rho.setdefault(la.moment[x], []).append(x)
    for z, w in lpairs:
        for x in by_rho[la.moment[w]]:
            for v in e.basis(z):
                for f in e.basis(w):
                    a, lp = e.linner(z, v, w, f)
                    for y in e.basis(x):
                        c, rp = e.rinner(w, f, x, y)
                        if e.lmul(a, lp, x, y) != e.rmul(z, v, c, rp):
                            rep.add("imprimitivity link", "<e,f>_L.g != e.<f,g>_R", points=(z, w, x))

    # fullness
    spans = {}
    for z, w in lpairs:
        for v in e.basis(z):
            for f in e.basis(w):
                a, ip = e.linner(z, v, w, f)
                spans.setdefault(("L", a), []).append(ip)
    for z, w in rpairs:
        for v in e.basis(z):
            for f in e.basis(w):
                a, ip = e.rinner(z, v, w, f)
                spans.setdefault(("R", a), []).append(ip)
    for side, bundle in (("L", L), ("R", R)):
        for a in bundle.base.arrows:
            got = Subspace(bundle.dims[a], spans.get((side, a), []))
            if got.dim != bundle.dims[a]:
                rep.add("fullness", "inner products do not span the fibre", side=side, arrow=a,
                        rank=got.dim, dim=bundle.dims[a])

    # Gram positivity in each fibre
    for z in sp.space:
        basis = e.basis(z)
        n = len(basis)
        lg = [[e.linner(z, basis[i], z, basis[j])[1] for j in range(n)] for i in range(n)]
        if not L.unit_algebra(la.moment[z]).is_positive_matrix(lg, n):
            rep.add("positivity", "left Gram matrix is not positive", point=z)
        rg = [[e.rinner(z, basis[i], z, basis[j])[1] for j in range(n)] for i in range(n)]
        if not R.unit_algebra(ra.moment[z]).is_positive_matrix(rg, n):
            rep.add("positivity", "right Gram matrix is not positive", point=z)
    return rep


# ---------------------------------------------------------------- constructions

def identity_equivalence(b):
    """B as a B-B equivalence over G as a (G, G)-equivalence."""
    g = b.base
    sp = self_equivalence(g)
    return EquivalenceBundle.from_rule(
        b, b, sp, dict(b.dims),
        lambda x, vb, z, ve: (g.comp[(x, z)], b.mul(x, vb, z, ve)),
        lambda z, ve, x, vc: (g.comp[(z, x)], b.mul(z, ve, x, vc)),
        lambda z, ve, w, vf: (g.comp[(z, g.inv[w])], b.mul(z, ve, g.inv[w], b.star(w, vf))),
        lambda z, ve, w, vf: (g.comp[(g.inv[z], w)], b.mul(g.inv[z], b.star(z, ve), w, vf)),
        name="id(%s)" % b.name, meta={"kind": "identity"})


def equiv_from_subgroupoid(b, h_arrows):
    """B as a (B x| M/H)-(B|_H) equivalence for a wide subgroupoid H of M."""
    m = b.base
    sp = canonical_subgroupoid_equivalence(m, h_arrows)
    h = sp.meta["subgroupoid"]
    proj, quot = sp.meta["projection"], sp.meta["quotient"]
    left = action_bundle(b, quot, name="%s*%s/H" % (b.name, m.name))
    right = restrict_bundle(b, h, name="%s|H" % b.name)
    inv = m.inv
    return EquivalenceBundle.from_rule(
        left, right, sp, {z: b.dims[z] for z in m.arrows},
        lambda p, vb, z, ve: (m.comp[(p[0], z)], b.mul(p[0], vb, z, ve)),
        lambda z, ve, k, vc: (m.comp[(z, k)], b.mul(z, ve, k, vc)),
        lambda z, ve, w, vf: ((m.comp[(z, inv[w])], proj[w]), b.mul(z, ve, inv[w], b.star(w, vf))),
        lambda z, ve, w, vf: (m.comp[(inv[z], w)], b.mul(inv[z], b.star(z, ve), w, vf)),
        name="%s/H" % b.name, meta={"kind": "subgroupoid", "source": b})


def equiv_from_semidirect(a, act, ag=None, left=None):
    """A oc G as an ((A oc G) x| T)-A equivalence, T standing for (H oc G)/H.

    Points of the space are arrows (h, x) of H oc G; the operations are
    (a, k, t).(b, z) = (a alpha_k(b), kz), (b, x).c = (b alpha_x(c), x),
    <(a, x), (b, y)>_L = (a alpha_{xy^-1}(b*), xy^-1, [b, y]) and
    <(a, x), (b, x)>_R = alpha_{x^-1}(a* b); the last is only defined when
    both points share the moment, which forces equal G-coordinates.
    """
    _require(validate_bundle_action(act), "bundle action")
    iso = act.iso
    g, hg = iso.acting, iso.target
    ag = ag or semidirect_bundle(a, act)
    m = ag.base
    k_act, g_act = quotient_translation_space(iso, m)
    left = left or action_bundle(ag, k_act, commuting=g_act,
                                 name="%s*T" % ag.name)
    lg = left.base
    unit_of = lg.meta["unit_of"]
    copy = m.meta["copy_of_H"]

    def point(z):
        return (hg.rng[z[0]], z[1])

    la = SpaceAction(lg, m.arrows, {z: unit_of[point(z)] for z in m.arrows},
                     {((k, point(z)), z): m.comp[(k, z)] for z in m.arrows for k in m.by_src[m.rng[z]]},
                     name="(H<G)*T")
    ra = SpaceAction(hg, m.arrows, {z: iso.sigma[(g.inv[z[1]], hg.src[z[0]])] for z in m.arrows},
                     {(z, k): m.comp[(z, copy[k])] for z in m.arrows
                      for k in hg.by_rng[iso.sigma[(g.inv[z[1]], hg.src[z[0]])]]},
                     side="right", name=hg.name)
    sp = GroupoidEquivalence(lg, hg, la, ra, name="%s/H" % m.name)

    def lact(p, vb, z, ve):
        k = p[0]
        return m.comp[(k, z)], ag.mul(k, vb, z, ve)

    def ract(z, ve, k, vc):
        return m.comp[(z, copy[k])], ag.mul(z, ve, copy[k], vc)

    def lip(z, ve, w, vf):
        wi = m.inv[w]
        return (m.comp[(z, wi)], point(w)), ag.mul(z, ve, wi, ag.star(w, vf))

    def rip(z, ve, w, vf):
        zi = m.inv[z]
        prod = m.comp[(zi, w)]
        return prod[0], ag.mul(zi, ag.star(z, ve), w, vf)

    return EquivalenceBundle.from_rule(
        left, a, sp, {z: ag.dims[z] for z in m.arrows}, lact, ract, lip, rip,
        name="%s~%s" % (left.name, a.name),
        meta={"kind": "semidirect", "source": a, "action": act, "middle": ag,
              "commuting": g_act})


def equiv_from_principal(b, act):
    """B as a (B oc G)-(G\\B) equivalence for a free action of G on B."""
    _require(validate_bundle_action(act), "bundle action")
    iso = act.iso
    if iso_freeness_witnesses(iso):
        raise ValueError("the action is not free")
    g, h = iso.acting, iso.target
    left = semidirect_bundle(b, act)
    right = orbit_bundle(b, act)
    m, q = left.base, right.base
    unit_of = m.meta["unit_of"]
    to_rep = q.meta["to_rep"]
    sig = iso.sigma

    def carry(u, v):
        """The unique x in G with x.v = u, for units u, v of H in one orbit."""
        return next(x for x in g.by_src[iso.fibering[v]] if sig[(x, v)] == u)

    la = SpaceAction(m, h.arrows, {z: unit_of[h.rng[z]] for z in h.arrows},
                     {((k, x), z): h.comp[(k, sig[(x, z)])] for z in h.arrows
                      for (k, x) in m.by_src[unit_of[h.rng[z]]]}, name="%s<%s" % (h.name, g.name))
    ract_pts = {}
    for z in h.arrows:
        for p in q.by_rng[to_rep[h.src[z]][0]]:
            y = carry(h.src[z], h.rng[p])
            ract_pts[(z, p)] = (h.comp[(z, sig[(y, p)])], y)
    ra = SpaceAction(q, h.arrows, {z: to_rep[h.src[z]][0] for z in h.arrows},
                     {k: v[0] for k, v in ract_pts.items()}, side="right", name=q.name)
    sp = GroupoidEquivalence(m, q, la, ra, name="%s<%s ~ %s" % (h.name, g.name, q.name))

    def lact(p, vb, z, ve):
        k, x = p
        xz = sig[(x, z)]
        return h.comp[(k, xz)], b.mul(k, vb, xz, act.apply(x, z, ve))

    def ract(z, ve, p, vc):
        target, y = ract_pts[(z, p)]
        return target, b.mul(z, ve, sig[(y, p)], act.apply(y, p, vc))

    def lip(z, ve, w, vf):
        x = carry(h.src[z], h.src[w])
        wi = h.inv[w]
        xwi = sig[(x, wi)]
        return (h.comp[(z, xwi)], x), b.mul(z, ve, xwi, act.apply(x, wi, b.star(w, vf)))

    def rip(z, ve, w, vf):
        zi = h.inv[z]
        prod = h.comp[(zi, w)]
        rep, y = to_rep[prod]
        return rep, act.apply(y, prod, b.mul(zi, b.star(z, ve), w, vf))

    return EquivalenceBundle.from_rule(
        left, right, sp, dict(b.dims), lact, ract, lip, rip,
        name="%s~%s" % (left.name, right.name), meta={"kind": "principal", "source": b, "action": act})


def equiv_from_action_product_T(a, k_act, g_act, ab=None, tact=None, left=None):
    """A x| T as an ((A x| T) oc G)-A equivalence for commuting actions of K and G on T.

    (a, t, x).(b, t') = (ab, x.t'), (a, t).b = (ab, p(b)^-1.t),
    <(a, t), (b, t')>_L = (ab*, p(b).t, x) with t = x.t', <(a, t), (b, t')>_R = a* b.
    """
    if ab is None:
        ab = action_bundle(a, k_act, commuting=g_act)
    tact = tact or translation_action(ab, commuting=g_act)
    left = left or semidirect_bundle(ab, tact)
    kt, m = ab.base, left.base
    k = a.base
    g = g_act.groupoid
    unit_of = m.meta["unit_of"]
    sig = tact.iso.sigma

    def carry(t, t2):
        return next(x for x in g.by_src[g_act.moment[t2]] if g_act.act[(x, t2)] == t)

    la = SpaceAction(m, kt.arrows, {z: unit_of[kt.rng[z]] for z in kt.arrows},
                     {((hh, x), z): kt.comp[(hh, sig[(x, z)])] for z in kt.arrows
                      for (hh, x) in m.by_src[unit_of[kt.rng[z]]]}, name="%s<%s" % (kt.name, g.name))
    ra = SpaceAction(k, kt.arrows, {z: k.src[z[0]] for z in kt.arrows},
                     {(z, c): (k.comp[(z[0], c)], k_act.act[(k.inv[c], z[1])]) for z in kt.arrows
                      for c in k.by_rng[k.src[z[0]]]}, side="right", name=k.name)
    sp = GroupoidEquivalence(m, k, la, ra, name="%s ~ %s" % (m.name, k.name))

    def lact(p, vb, z, ve):
        hh, x = p
        xz = sig[(x, z)]
        return kt.comp[(hh, xz)], ab.mul(hh, vb, xz, tact.apply(x, z, ve))

    def ract(z, ve, c, vc):
        return (k.comp[(z[0], c)], k_act.act[(k.inv[c], z[1])]), a.mul(z[0], ve, c, vc)

    def lip(z, ve, w, vf):
        x = carry(z[1], w[1])
        wi = kt.inv[w]
        xwi = sig[(x, wi)]
        return (kt.comp[(z, xwi)], x), ab.mul(z, ve, xwi, tact.apply(x, wi, ab.star(w, vf)))

    def rip(z, ve, w, vf):
        zi = k.inv[z[0]]
        return k.comp[(zi, w[0])], a.mul(zi, a.star(z[0], ve), w[0], vf)

    return EquivalenceBundle.from_rule(
        left, a, sp, {z: ab.dims[z] for z in kt.arrows}, lact, ract, lip, rip,
        name="%s~%s" % (left.name, a.name),
        meta={"kind": "action", "source": a, "middle": ab, "action": tact})


def equiv_from_action_product(a, ab=None, tact=None, left=None):
    """A x| G as an ((A x| G) oc G)-A equivalence, G acting on itself by translations."""
    k_act, g_act = translation_space(a.base)
    if ab is not None:
        k_act, g_act = ab.meta["space_action"], ab.meta["commuting"]
    return equiv_from_action_product_T(a, k_act, g_act, ab=ab, tact=tact, left=left)


def subgroupoid_vs_semidirect(a, act):
    """Cross-check of the two descriptions of the left bundle for the semidirect equivalence.

    (A oc G) x| (H oc G)/H, built from the canonical subgroupoid equivalence,
    must be isomorphic to (A oc G) x| T through [h, x] -> (rng h, x), and the
    restriction of A oc G to the copy of H must be isomorphic to A.
    """
    e_sem = equiv_from_semidirect(a, act)
    ag = e_sem.meta["middle"]
    m = ag.base
    copy = m.meta["copy_of_H"]
    e_sub = equiv_from_subgroupoid(ag, list(copy.values()))
    hg = act.iso.target
    arrow_map = {}
    for (k, t) in e_sub.left.base.arrows:
        arrow_map[(k, t)] = (k, (hg.rng[t[0]], t[1]))
    rep = ValidationReport("subgroupoid vs semidirect for %s" % a.name)
    rep.extend(check_bundle_isomorphism(e_sub.left, e_sem.left, arrow_map), "left bundle")
    back = {copy[k]: k for k in hg.arrows}
    rep.extend(check_bundle_isomorphism(e_sub.right, a, back), "restriction")
    return rep


# ---------------------------------------------------------------- Rieffel correspondence

def ideal_to_module(e, ideal, side="left"):
    """M_z = span of I.E landing in E_z (left) or E.I (right), as {point: Subspace}."""
    sp = e.space
    vecs = {z: [] for z in sp.space}
    if side == "left":
        if ideal.bundle.base != e.left.base:
            raise ValueError("ideal is not an ideal of the left bundle")
        for g, z, gz in sp.left_action.pairs():
            for j in ideal.fibers[g].basis:
                for v in e.basis(z):
                    vecs[gz].append(e.lmul(g, j, z, v)[1])
    elif side == "right":
        if ideal.bundle.base != e.right.base:
            raise ValueError("ideal is not an ideal of the right bundle")
        for h, z, zh in sp.right_action.pairs():
            for v in e.basis(z):
                for j in ideal.fibers[h].basis:
                    vecs[zh].append(e.rmul(z, v, h, j)[1])
    else:
        raise ValueError("side must be 'left' or 'right'")
    return {z: Subspace(e.dims[z], vecs[z]) for z in sp.space}


def submodule_witness(e, module):
    """First (table, key) where module fails to be closed under an action, else None."""
    sp = e.space
    for g, z, gz in sp.left_action.pairs():
        for b in e.left.basis(g):
            for v in module[z].basis:
                if e.lmul(g, b, z, v)[1] not in module[gz]:
                    return ("left action", (g, z))
    for h, z, zh in sp.right_action.pairs():
        for v in module[z].basis:
            for c in e.right.basis(h):
                if e.rmul(z, v, h, c)[1] not in module[zh]:
                    return ("right action", (z, h))
    return None


def module_to_ideal(e, module, side="left"):
    """The ideal generated by <M, E>_L (left) or <E, M>_R (right)."""
    bad = submodule_witness(e, module)
    if bad is not None:
        raise ValueError("not a submodule: %s fails at %r" % bad)
    sp = e.space
    gens = []
    if side == "left":
        for z, w in sp.left_pairs():
            for v in module[z].basis:
                for f in e.basis(w):
                    gens.append(e.linner(z, v, w, f))
        return generated_ideal(e.left, gens)
    if side == "right":
        for z, w in sp.right_pairs():
            for v in e.basis(z):
                for f in module[w].basis:
                    gens.append(e.rinner(z, v, w, f))
        return generated_ideal(e.right, gens)
    raise ValueError("side must be 'left' or 'right'")


def rieffel_map(e, ideal, side="left"):
    """Ideal of the ``side`` bundle to the corresponding ideal of the other one."""
    other = "right" if side == "left" else "left"
    return module_to_ideal(e, ideal_to_module(e, ideal, side), other)
