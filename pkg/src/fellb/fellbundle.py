"""Saturated Fell bundles over finite groupoids, by structure constants.

Each fibre B_g is a coordinate space Q(i)^{d_g}.  ``mult[(g, h)][i][j]`` is
the coordinate vector of e_i e_j in B_{gh}; ``invol[g]`` is the matrix J_g
with b* = J_g conj(b) in B_{g^-1}.  The constructions below are literal
re-indexings of these tables.
"""

from collections import namedtuple

from .exactalg.linalg import (
    axpy, identity, matmul, matvec, rank, unit_vec, vconj,
)
from .exactalg.scalars import ZERO, ONE, I, coerce
from .exactalg.staralg import StarAlgebra
from .groupoid import (
    IsoAction, action_groupoid, is_wide, iso_freeness_witnesses, orbit_groupoid,
    semidirect_groupoid, subgroupoid, validate_action, validate_groupoid, validate_iso_action,
)
from .report import ValidationReport

BundleElement = namedtuple("BundleElement", ["arrow", "coords"])


class FellBundle:
    def __init__(self, base, dims, mult, invol, name="", meta=None):
        self.base = base
        self.dims = dict(dims)
        self.mult = dict(mult)
        self.invol = dict(invol)
        self.name = name
        self.meta = dict(meta or {})
        self._algebras = {}
        self._blocks = {}

    @classmethod
    def from_rule(cls, base, dims, mul_rule, star_rule, name="", meta=None):
        """Tabulate mul_rule(g, e_i, h, e_j) and star_rule(g, e_i) on basis vectors."""
        bases = {g: [unit_vec(dims[g], i) for i in range(dims[g])] for g in base.arrows}
        mult = {}
        for (g, h) in base.comp:
            mult[(g, h)] = [[tuple(mul_rule(g, a, h, b)) for b in bases[h]] for a in bases[g]]
        invol = {}
        for g in base.arrows:
            cols = [tuple(star_rule(g, a)) for a in bases[g]]
            n = dims[base.inv[g]]
            invol[g] = [tuple(c[r] for c in cols) for r in range(n)]
        return cls(base, dims, mult, invol, name=name, meta=meta)

    def __repr__(self):
        return "FellBundle(%s over %s, total dim %d)" % (
            self.name or "?", self.base.name, sum(self.dims.values()))

    def basis(self, g):
        return [unit_vec(self.dims[g], i) for i in range(self.dims[g])]

    def zero(self, g):
        return (ZERO,) * self.dims[g]

    def mul(self, g, a, h, b):
        """(a in B_g)(b in B_h), as coordinates in B_{gh}."""
        t = self.mult[(g, h)]
        acc = [ZERO] * self.dims[self.base.comp[(g, h)]]
        for i, x in enumerate(a):
            if x:
                row = t[i]
                for j, y in enumerate(b):
                    if y:
                        axpy(acc, x * y, row[j])
        return tuple(acc)

    def star(self, g, a):
        """a* in B_{g^-1}."""
        return matvec(self.invol[g], vconj(a))

    def emul(self, x, y):
        return BundleElement(self.base.comp[(x.arrow, y.arrow)], self.mul(x.arrow, x.coords, y.arrow, y.coords))

    def estar(self, x):
        return BundleElement(self.base.inv[x.arrow], self.star(x.arrow, x.coords))

    def element(self, arrow, coords):
        coords = tuple(coerce(c) for c in coords)
        if len(coords) != self.dims[arrow]:
            raise ValueError("fibre over %r has dimension %d" % (arrow, self.dims[arrow]))
        return BundleElement(arrow, coords)

    def products(self, g, rows_a, h, rows_b):
        return [self.mul(g, a, h, b) for a in rows_a for b in rows_b]

    def unit_algebra(self, u):
        if u not in self._algebras:
            if not self.base.is_unit(u):
                raise ValueError("%r is not a unit" % (u,))
            self._algebras[u] = StarAlgebra(self.dims[u], self.mult[(u, u)], self.invol[u])
        return self._algebras[u]

    def blocks(self, u):
        """Minimal central idempotents of the unit fibre A_u (cached)."""
        if u not in self._blocks:
            from .exactalg.staralg import central_blocks
            self._blocks[u] = central_blocks(self.unit_algebra(u))
        return self._blocks[u]


def validate_bundle(b):
    """Exhaustive axiom check; empty report iff b is a saturated Fell bundle."""
    rep = ValidationReport("bundle %s" % b.name)
    g = b.base
    rep.extend(validate_groupoid(g), "base")
    if not rep.ok:
        return rep
    for a in g.arrows:
        if a not in b.dims:
            rep.add("fibres", "missing fibre dimension", arrow=a)
        elif b.dims[a] != b.dims.get(g.inv[a]):
            rep.add("fibres", "B_g and B_g^-1 must have equal dimension", arrow=a)
    for a in g.arrows:
        j = b.invol.get(a)
        if j is None or len(j) != b.dims[g.inv[a]] or any(len(r) != b.dims[a] for r in j):
            rep.add("involution", "involution matrix has the wrong shape", arrow=a)
    for (x, y), xy in g.comp.items():
        t = b.mult.get((x, y))
        if (t is None or len(t) != b.dims[x] or any(len(r) != b.dims[y] for r in t)
                or any(len(v) != b.dims[xy] for r in t for v in r)):
            rep.add("multiplication", "multiplication tensor has the wrong shape", pair=(x, y))
    if not rep.ok:
        return rep

    for (x, y), xy in g.comp.items():
        for z in g.by_rng[g.src[y]]:
            yz = g.comp[(y, z)]
            for i, ea in enumerate(b.basis(x)):
                for j, eb in enumerate(b.basis(y)):
                    ab = b.mult[(x, y)][i][j]
                    for k, ec in enumerate(b.basis(z)):
                        if b.mul(xy, ab, z, ec) != b.mul(x, ea, yz, b.mult[(y, z)][j][k]):
                            rep.add("associativity", "(ab)c != a(bc)", arrows=(x, y, z), basis=(i, j, k))
    for a in g.arrows:
        back = matmul(b.invol[g.inv[a]], [tuple(v.conjugate() for v in r) for r in b.invol[a]])
        if back != identity(b.dims[a]):
            rep.add("involution", "iota_{g^-1} iota_g != id", arrow=a)
    for (x, y), xy in g.comp.items():
        for i, ea in enumerate(b.basis(x)):
            for j, eb in enumerate(b.basis(y)):
                lhs = b.star(xy, b.mult[(x, y)][i][j])
                rhs = b.mul(g.inv[y], b.star(y, eb), g.inv[x], b.star(x, ea))
                if lhs != rhs:
                    rep.add("anti-multiplicative", "(ab)* != b* a*", pair=(x, y), basis=(i, j))
    if not rep.ok:
        return rep
    for u in g.units:
        alg = b.unit_algebra(u)
        if alg.dim and not alg.is_cstar():
            rep.add("C*-criterion", "unit fibre trace form is not positive definite", unit=u)
    if not rep.ok:
        return rep
    for a in g.arrows:
        s = g.src[a]
        basis = b.basis(a)
        stars = [b.star(a, e) for e in basis]
        entries = [[b.mul(g.inv[a], stars[i], a, basis[j]) for j in range(len(basis))]
                   for i in range(len(basis))]
        if not b.unit_algebra(s).is_positive_matrix(entries, len(basis)):
            rep.add("positivity", "[b_i* b_j] is not positive", arrow=a)
    for (x, y), xy in g.comp.items():
        prods = [v for r in b.mult[(x, y)] for v in r]
        if rank(prods, b.dims[xy]) != b.dims[xy]:
            rep.add("saturation", "B_g B_h does not span B_gh", pair=(x, y))
    return rep


def check_bundle_isomorphism(b1, b2, arrow_map, fiber_maps=None):
    """Is arrow_map (with optional per-arrow coordinate matrices) an isomorphism b1 -> b2?"""
    rep = ValidationReport("isomorphism %s -> %s" % (b1.name, b2.name))
    g1, g2 = b1.base, b2.base
    images = [arrow_map.get(a) for a in g1.arrows]
    if len(set(images)) != len(images) or set(images) != set(g2.arrows):
        rep.add("bijection", "arrow map is not a bijection", sizes=(len(g1.arrows), len(g2.arrows)))
        return rep
    f = arrow_map
    for a in g1.arrows:
        if f[g1.src[a]] != g2.src[f[a]] or f[g1.rng[a]] != g2.rng[f[a]] or f[g1.inv[a]] != g2.inv[f[a]]:
            rep.add("groupoid", "arrow map does not preserve src/rng/inv", arrow=a)
        if b1.dims[a] != b2.dims[f[a]]:
            rep.add("fibres", "fibre dimensions differ", arrow=a)
    for (x, y), xy in g1.comp.items():
        if g2.comp.get((f[x], f[y])) != f[xy]:
            rep.add("groupoid", "arrow map does not preserve composition", pair=(x, y))
    if not rep.ok:
        return rep

    def fm(a, v):
        return matvec(fiber_maps[a], v) if fiber_maps else v

    for (x, y), xy in g1.comp.items():
        for i, ea in enumerate(b1.basis(x)):
            for j, eb in enumerate(b1.basis(y)):
                if fm(xy, b1.mult[(x, y)][i][j]) != b2.mul(f[x], fm(x, ea), f[y], fm(y, eb)):
                    rep.add("multiplication", "structure constants differ", pair=(x, y), basis=(i, j))
    for a in g1.arrows:
        for i, ea in enumerate(b1.basis(a)):
            if fm(g1.inv[a], b1.star(a, ea)) != b2.star(f[a], fm(a, ea)):
                rep.add("involution", "involutions differ", arrow=a, basis=i)
    return rep


# ---------------------------------------------------------------- actions by isomorphisms

class BundleIsoAction:
    """G acting on a Fell bundle: an IsoAction on its base plus linear maps alpha[(x, h)]: A_h -> A_{x.h}."""

    def __init__(self, iso, bundle, alpha, name=""):
        self.iso = iso
        self.bundle = bundle
        self.alpha = dict(alpha)
        self.name = name or iso.name

    @property
    def acting(self):
        return self.iso.acting

    def apply(self, x, h, v):
        return matvec(self.alpha[(x, h)], v)

    def __repr__(self):
        return "BundleIsoAction(%s on %s)" % (self.acting.name, self.bundle.name)


def identity_alpha(iso, bundle):
    return {(x, h): identity(bundle.dims[h]) for (x, h) in iso.sigma}


def validate_bundle_action(act):
    iso, b = act.iso, act.bundle
    rep = ValidationReport("bundle action %s" % act.name)
    rep.extend(validate_iso_action(iso), "groupoid action")
    if iso.target != b.base:
        rep.add("base", "action does not act on the bundle's base")
    if not rep.ok:
        return rep
    g, h = iso.acting, iso.target
    sig = iso.sigma
    for (x, k), v in sig.items():
        m = act.alpha.get((x, k))
        if m is None or len(m) != b.dims[v] or any(len(r) != b.dims[k] for r in m):
            rep.add("shape", "alpha matrix has the wrong shape", pair=(x, k))
    if not rep.ok:
        return rep
    for (x, k) in sig:
        if g.is_unit(x) and act.alpha[(x, k)] != identity(b.dims[k]):
            rep.add("unit", "alpha_u is not the identity", arrow=x, target=k)
    for (x, y), xy in g.comp.items():
        for k in iso.fiber(g.src[y]):
            lhs = act.alpha[(xy, k)]
            rhs = matmul(act.alpha[(x, sig[(y, k)])], act.alpha[(y, k)]) if b.dims[k] else lhs
            if lhs != rhs:
                rep.add("composition", "alpha_xy != alpha_x alpha_y", pair=(x, y), target=k)
    for (k, l), kl in h.comp.items():
        for x in g.by_src[iso.fibering[k]]:
            for ea in b.basis(k):
                for eb in b.basis(l):
                    lhs = act.apply(x, kl, b.mul(k, ea, l, eb))
                    rhs = b.mul(sig[(x, k)], act.apply(x, k, ea), sig[(x, l)], act.apply(x, l, eb))
                    if lhs != rhs:
                        rep.add("multiplicative", "alpha_x(ab) != alpha_x(a) alpha_x(b)", arrow=x, pair=(k, l))
    for (x, k) in sig:
        for ea in b.basis(k):
            if act.apply(x, h.inv[k], b.star(k, ea)) != b.star(sig[(x, k)], act.apply(x, k, ea)):
                rep.add("*-preserving", "alpha_x(a*) != alpha_x(a)*", arrow=x, target=k)
    return rep


def _require(rep, what):
    if not rep.ok:
        raise ValueError("invalid %s: %r" % (what, rep))


# ---------------------------------------------------------------- constructions

def restrict_bundle(b, arrows, name=None):
    """B restricted to a wide subgroupoid (given by its arrows or as a groupoid)."""
    arrows = arrows.arrows if hasattr(arrows, "arrows") else arrows
    sub = subgroupoid(b.base, arrows, name="%s|H" % b.base.name)
    if not is_wide(b.base, sub):
        raise ValueError("subgroupoid is not wide")
    return FellBundle(sub, {a: b.dims[a] for a in sub.arrows},
                      {k: b.mult[k] for k in sub.comp}, {a: b.invol[a] for a in sub.arrows},
                      name=name or "%s|H" % b.name, meta={"kind": "restrict", "source": b})


def semidirect_bundle(a, act, name=None):
    """A oc G over H oc G: fibre A_h at (h, x), (a, x)(b, y) = (a alpha_x(b), xy), (a, x)* = (alpha_{x^-1}(a*), x^-1)."""
    _require(validate_bundle_action(act), "bundle action")
    iso = act.iso
    g = iso.acting
    m = semidirect_groupoid(iso)
    dims = {(h, x): a.dims[h] for (h, x) in m.arrows}

    def mul_rule(p, va, q, vb):
        (h, x), (k, _) = p, q
        xk = iso.sigma[(x, k)]
        return a.mul(h, va, xk, act.apply(x, k, vb))

    def star_rule(p, va):
        h, x = p
        return act.apply(g.inv[x], a.base.inv[h], a.star(h, va))

    return FellBundle.from_rule(m, dims, mul_rule, star_rule, name=name or "%s<%s" % (a.name, g.name),
                                meta={"kind": "semidirect", "source": a, "action": act})


def action_bundle(b, space_action, commuting=None, name=None):
    """B x| T over the action groupoid: fibre B_m at (m, t), (a, t)(b, s) = (ab, s), (a, t)* = (a*, p(a).t).

    ``commuting`` optionally records a commuting left action of a second
    groupoid on T, used by :func:`translation_action`.
    """
    if space_action.groupoid != b.base:
        raise ValueError("space action is not an action of the bundle's base")
    mt = action_groupoid(space_action)
    if commuting is not None:
        _check_commuting(space_action, commuting)
    dims = {(m, t): b.dims[m] for (m, t) in mt.arrows}

    def mul_rule(p, va, q, vb):
        return b.mul(p[0], va, q[0], vb)

    def star_rule(p, va):
        return b.star(p[0], va)

    return FellBundle.from_rule(mt, dims, mul_rule, star_rule,
                                name=name or "%s*%s" % (b.name, space_action.name or "T"),
                                meta={"kind": "action", "source": b, "space_action": space_action,
                                      "commuting": commuting})


def _check_commuting(k_act, g_act):
    if k_act.space != g_act.space:
        raise ValueError("commuting action lives on a different space")
    for k, t, kt in k_act.pairs():
        if g_act.moment[kt] != g_act.moment[t]:
            raise ValueError("actions do not commute: %r moves the second moment" % (k,))
        for x in g_act.groupoid.by_src[g_act.moment[t]]:
            xt = g_act.act[(x, t)]
            if k_act.act.get((k, xt)) != g_act.act.get((x, kt)):
                raise ValueError("actions do not commute at %r" % ((k, x, t),))


def translation_action(ab, commuting=None):
    """The G-action x.(b, t) = (b, x.t) on an action bundle B x| T, alpha = identity.

    With T = G and x.y = y x^-1 this is x.(b, y) = (b, y x^-1).
    """
    commuting = commuting or ab.meta.get("commuting")
    if ab.meta.get("kind") != "action" or commuting is None:
        raise ValueError("base is not an action groupoid carrying a commuting action")
    mt = ab.base
    _check_commuting(ab.meta["space_action"], commuting)
    g = commuting.groupoid
    fibering = {(m, t): commuting.moment[t] for (m, t) in mt.arrows}
    sigma = {(x, (m, t)): (m, commuting.act[(x, t)])
             for (m, t) in mt.arrows for x in g.by_src[commuting.moment[t]]}
    iso = IsoAction(g, mt, fibering, sigma, name="translation")
    act = BundleIsoAction(iso, ab, identity_alpha(iso, ab), name="translation")
    _require(validate_bundle_action(act), "translation action")
    return act


def action_product(b, k_act, g_act, name=None):
    """(B x| T, G-action) for a bispace (K on T, commuting G on T)."""
    ab = action_bundle(b, k_act, commuting=g_act, name=name)
    return ab, translation_action(ab)


def orbit_bundle(b, act, name=None):
    """G\\B over G\\H for a free action; fibre over an orbit is A_rep, transported by alpha."""
    _require(validate_bundle_action(act), "bundle action")
    iso = act.iso
    if iso_freeness_witnesses(iso):
        raise ValueError("the action is not free")
    h, g = iso.target, iso.acting
    q = orbit_groupoid(iso)
    to_rep = q.meta["to_rep"]
    dims = {p: b.dims[p] for p in q.arrows}

    def shift(p, r):
        return next(x for x in g.by_src[iso.fibering[r]] if iso.sigma[(x, h.rng[r])] == h.src[p])

    def transport(k, v):
        rep, z = to_rep[k]
        return act.apply(z, k, v)

    def mul_rule(p, va, r, vb):
        x = shift(p, r)
        xr = iso.sigma[(x, r)]
        return transport(h.comp[(p, xr)], b.mul(p, va, xr, act.apply(x, r, vb)))

    def star_rule(p, va):
        return transport(h.inv[p], b.star(p, va))

    return FellBundle.from_rule(q, dims, mul_rule, star_rule, name=name or "%s\\%s" % (g.name, b.name),
                                meta={"kind": "orbit", "source": b, "action": act})


def trivial_action_bundle(algebras, g, alpha=None, name=""):
    """B_gamma = A_{src(gamma)}, (a, gamma)(b, eta) = (alpha_{eta^-1}(a) b, gamma eta), (a, gamma)* = alpha_gamma(a*).

    ``algebras`` maps units to StarAlgebras (or is a single StarAlgebra for
    all units); ``alpha[gamma]`` is a matrix A_{src} -> A_{rng}, identity
    by default.
    """
    if isinstance(algebras, StarAlgebra):
        algebras = {u: algebras for u in g.units}
    if alpha is None:
        alpha = {}
        for c in g.arrows:
            if algebras[g.src[c]].dim != algebras[g.rng[c]].dim:
                raise ValueError("give alpha when unit fibres differ")
            alpha[c] = identity(algebras[g.src[c]].dim)
    for (x, y), xy in g.comp.items():
        if alpha[xy] != matmul(alpha[x], alpha[y]) and algebras[g.src[y]].dim:
            raise ValueError("alpha does not respect composition at %r" % ((x, y),))
    for u in g.units:
        if alpha[u] != identity(algebras[u].dim):
            raise ValueError("alpha_u must be the identity")
    for c in g.arrows:
        src_alg, rng_alg = algebras[g.src[c]], algebras[g.rng[c]]
        for ea in src_alg.basis():
            for eb in src_alg.basis():
                if matvec(alpha[c], src_alg.mul(ea, eb)) != rng_alg.mul(matvec(alpha[c], ea), matvec(alpha[c], eb)):
                    raise ValueError("alpha is not multiplicative at %r" % (c,))
            if matvec(alpha[c], src_alg.star(ea)) != rng_alg.star(matvec(alpha[c], ea)):
                raise ValueError("alpha is not *-preserving at %r" % (c,))
    dims = {c: algebras[g.src[c]].dim for c in g.arrows}

    def mul_rule(x, va, y, vb):
        return algebras[g.src[y]].mul(matvec(alpha[g.inv[y]], va), vb)

    def star_rule(x, va):
        return matvec(alpha[x], algebras[g.src[x]].star(va))

    return FellBundle.from_rule(g, dims, mul_rule, star_rule, name=name or "triv(%s)" % g.name,
                                meta={"kind": "trivial"})


UNIMODULAR = (ONE, -ONE, I, -I)


def cocycle_line_bundle(g, sigma, name=""):
    """Line bundle over a finite group twisted by a normalized 2-cocycle with values in {1, -1, i, -i}."""
    if len(g.units) != 1:
        raise ValueError("cocycle bundles are built over groups")
    e = g.units[0]
    s = {k: coerce(v) for k, v in sigma.items()}
    for x in g.arrows:
        for y in g.arrows:
            if s.get((x, y)) not in UNIMODULAR:
                raise ValueError("cocycle value at %r must be one of 1, -1, i, -i" % ((x, y),))
    for x in g.arrows:
        if s[(e, x)] != ONE or s[(x, e)] != ONE:
            raise ValueError("cocycle is not normalized at %r" % (x,))
    for x in g.arrows:
        for y in g.arrows:
            for z in g.arrows:
                xy, yz = g.comp[(x, y)], g.comp[(y, z)]
                if s[(x, y)] * s[(xy, z)] != s[(y, z)] * s[(x, yz)]:
                    raise ValueError("cocycle identity fails at %r" % ((x, y, z),))
    dims = {x: 1 for x in g.arrows}
    return FellBundle.from_rule(
        g, dims, lambda x, va, y, vb: (s[(x, y)] * va[0] * vb[0],),
        lambda x, va: (s[(g.inv[x], x)].conjugate() * va[0].conjugate(),),
        name=name or "line(%s)" % g.name, meta={"kind": "cocycle", "cocycle": s})
