"""Finite groupoids, their actions, and groupoid equivalences.

Arrow identifiers are opaque hashable tokens.  Every groupoid keeps its
arrows in a fixed order, and "least token" always means "first in that
order", which keeps every construction deterministic.
"""

from collections import defaultdict

from .report import ValidationReport


class FiniteGroupoid:
    def __init__(self, arrows, units, src, rng, inv, comp, name="", meta=None):
        self.arrows = tuple(arrows)
        self.units = tuple(units)
        self.src = dict(src)
        self.rng = dict(rng)
        self.inv = dict(inv)
        self.comp = dict(comp)
        self.name = name
        self.meta = dict(meta or {})
        self.order = {a: i for i, a in enumerate(self.arrows)}
        self._unit_set = frozenset(self.units)
        self.by_src = defaultdict(list)
        self.by_rng = defaultdict(list)
        for a in self.arrows:
            if a in self.src:
                self.by_src[self.src[a]].append(a)
            if a in self.rng:
                self.by_rng[self.rng[a]].append(a)

    @classmethod
    def from_rule(cls, arrows, units, src, rng, inv, compose, name="", meta=None):
        """Build the composition table by calling compose(g, h) on every pair with src(g) = rng(h)."""
        arrows = list(arrows)
        comp = {}
        by_rng = defaultdict(list)
        for h in arrows:
            by_rng[rng[h]].append(h)
        for g in arrows:
            for h in by_rng[src[g]]:
                comp[(g, h)] = compose(g, h)
        return cls(arrows, units, src, rng, inv, comp, name=name, meta=meta)

    def __len__(self):
        return len(self.arrows)

    def __iter__(self):
        return iter(self.arrows)

    def __contains__(self, a):
        return a in self.order

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (self.arrows == other.arrows and self.units == other.units and self.src == other.src
                and self.rng == other.rng and self.inv == other.inv and self.comp == other.comp)

    def __hash__(self):
        return hash((self.arrows, self.units))

    def __repr__(self):
        return "FiniteGroupoid(%s: %d arrows, %d units)" % (self.name or "?", len(self.arrows), len(self.units))

    def is_unit(self, a):
        return a in self._unit_set

    def mul(self, g, h):
        try:
            return self.comp[(g, h)]
        except KeyError:
            raise ValueError("arrows %r and %r are not composable" % (g, h)) from None

    def composable_pairs(self):
        return list(self.comp)

    def least(self, tokens):
        return min(tokens, key=self.order.__getitem__)

    def sort(self, tokens):
        return sorted(tokens, key=self.order.__getitem__)


def validate_groupoid(g):
    rep = ValidationReport("groupoid %s" % g.name)
    arrows = set(g.arrows)
    for u in g.units:
        if u not in arrows:
            rep.add("units", "unit is not an arrow", unit=u)
        elif g.src.get(u) != u or g.rng.get(u) != u:
            rep.add("units", "src/rng of a unit must be itself", unit=u)
    for a in g.arrows:
        for label, table in (("src", g.src), ("rng", g.rng)):
            if a not in table:
                rep.add(label, "%s undefined" % label, arrow=a)
            elif not g.is_unit(table[a]):
                rep.add(label, "%s does not land in the unit space" % label, arrow=a, value=table[a])
        if g.inv.get(a) not in arrows:
            rep.add("inverse", "inverse undefined or not an arrow", arrow=a)
    if not rep.ok:
        return rep
    for a in g.arrows:
        for b in g.arrows:
            defined = (a, b) in g.comp
            if defined != (g.src[a] == g.rng[b]):
                rep.add("composability", "composition must be defined exactly when src(g) = rng(h)",
                        pair=(a, b))
    for (a, b), c in g.comp.items():
        if c not in arrows:
            rep.add("composition", "product is not an arrow", pair=(a, b), value=c)
        elif g.src[c] != g.src[b] or g.rng[c] != g.rng[a]:
            rep.add("composition", "product has wrong source or range", pair=(a, b))
    if not rep.ok:
        return rep
    for a in g.arrows:
        if g.comp.get((g.rng[a], a)) != a or g.comp.get((a, g.src[a])) != a:
            rep.add("identity", "units do not act as identities", arrow=a)
        ia = g.inv[a]
        if g.comp.get((a, ia)) != g.rng[a] or g.comp.get((ia, a)) != g.src[a] or g.inv.get(ia) != a:
            rep.add("inverse", "inverse axiom fails", arrow=a)
    for (a, b), ab in g.comp.items():
        for c in g.by_rng[g.src[b]]:
            if g.comp[(ab, c)] != g.comp[(a, g.comp[(b, c)])]:
                rep.add("associativity", "(ab)c != a(bc)", triple=(a, b, c))
    return rep


# ---------------------------------------------------------------- constructors

def group(elements, mul, identity, name=""):
    """A group as a one-unit groupoid; mul is a callable or a dict {(a, b): ab}."""
    elements = list(elements)
    table = mul if callable(mul) else (lambda a, b: mul[(a, b)])
    inv = {}
    for a in elements:
        inv[a] = next(b for b in elements if table(a, b) == identity)
    src = {a: identity for a in elements}
    return FiniteGroupoid.from_rule(elements, [identity], src, dict(src), inv, table, name=name)


def cyclic_group(n, name=None):
    """Z/n with tokens 'e', 'g', 'g2', ... ('g' generates)."""
    tok = ["e", "g"] + ["g%d" % k for k in range(2, n)]
    tok = tok[:n]
    return group(tok, lambda a, b: tok[(tok.index(a) + tok.index(b)) % n], "e", name=name or "Z%d" % n)


def klein_four(name="V4"):
    """Z/2 x Z/2 with tokens e, a, b, c (c = ab)."""
    bits = {"e": (0, 0), "a": (1, 0), "b": (0, 1), "c": (1, 1)}
    back = {v: k for k, v in bits.items()}
    return group("eabc", lambda x, y: back[tuple((p + q) % 2 for p, q in zip(bits[x], bits[y]))], "e", name=name)


def point_groupoid(token="e", name="pt"):
    return units_only([token], name=name)


def units_only(points, name=""):
    """The groupoid whose arrows are all units (a discrete space)."""
    points = list(points)
    ident = {p: p for p in points}
    return FiniteGroupoid.from_rule(points, points, ident, ident, ident, lambda a, b: a, name=name)


def pair_groupoid(points, name=None):
    """Arrows (i, j) with src j, rng i and (i, j)(j, k) = (i, k)."""
    points = list(points)
    arrows = [(i, j) for i in points for j in points]
    return FiniteGroupoid.from_rule(
        arrows, [(i, i) for i in points],
        {a: (a[1], a[1]) for a in arrows}, {a: (a[0], a[0]) for a in arrows},
        {a: (a[1], a[0]) for a in arrows}, lambda a, b: (a[0], b[1]),
        name=name or "P%d" % len(points))


def product_groupoid(g, h, name=None):
    arrows = [(a, b) for a in g.arrows for b in h.arrows]
    return FiniteGroupoid.from_rule(
        arrows, [(u, v) for u in g.units for v in h.units],
        {(a, b): (g.src[a], h.src[b]) for a, b in arrows},
        {(a, b): (g.rng[a], h.rng[b]) for a, b in arrows},
        {(a, b): (g.inv[a], h.inv[b]) for a, b in arrows},
        lambda x, y: (g.comp[(x[0], y[0])], h.comp[(x[1], y[1])]),
        name=name or "%sx%s" % (g.name, h.name))


def subgroupoid(g, arrows, name=None):
    """The subgroupoid on the given arrows; ValueError unless closed."""
    keep = set(arrows)
    for a in keep:
        if a not in g:
            raise ValueError("%r is not an arrow of %s" % (a, g.name))
        if g.inv[a] not in keep or g.src[a] not in keep or g.rng[a] not in keep:
            raise ValueError("not closed under inverse/source/range at %r" % (a,))
    for (a, b), c in g.comp.items():
        if a in keep and b in keep and c not in keep:
            raise ValueError("not closed under composition at %r" % ((a, b),))
    ordered = g.sort(keep)
    return FiniteGroupoid(
        ordered, [u for u in g.units if u in keep],
        {a: g.src[a] for a in ordered}, {a: g.rng[a] for a in ordered},
        {a: g.inv[a] for a in ordered},
        {k: c for k, c in g.comp.items() if k[0] in keep and k[1] in keep},
        name=name or "%s|sub" % g.name)


def is_wide(g, sub):
    return set(sub.units) == set(g.units)


# ---------------------------------------------------------------- space actions

class SpaceAction:
    """An action of a groupoid on a finite space.

    Left: act[(k, t)] = k.t, defined when src(k) = moment(t).
    Right: act[(t, k)] = t.k, defined when moment(t) = rng(k).
    """

    def __init__(self, groupoid, space, moment, act, side="left", name=""):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.groupoid = groupoid
        self.space = tuple(space)
        self.moment = dict(moment)
        self.act = dict(act)
        self.side = side
        self.name = name
        self.order = {t: i for i, t in enumerate(self.space)}

    @classmethod
    def from_rule(cls, groupoid, space, moment, rule, side="left", name=""):
        act = {}
        for t in space:
            if side == "left":
                for k in groupoid.by_src[moment[t]]:
                    act[(k, t)] = rule(k, t)
            else:
                for k in groupoid.by_rng[moment[t]]:
                    act[(t, k)] = rule(t, k)
        return cls(groupoid, space, moment, act, side=side, name=name)

    def apply(self, k, t):
        key = (k, t) if self.side == "left" else (t, k)
        try:
            return self.act[key]
        except KeyError:
            raise ValueError("action undefined at %r" % (key,)) from None

    def pairs(self):
        """(arrow, point, image) triples."""
        if self.side == "left":
            return [(k, t, v) for (k, t), v in self.act.items()]
        return [(k, t, v) for (t, k), v in self.act.items()]

    def __repr__(self):
        return "SpaceAction(%s %s on %d points)" % (self.groupoid.name, self.side, len(self.space))


def validate_action(a):
    g = a.groupoid
    rep = ValidationReport("%s action %s" % (a.side, a.name))
    pts = set(a.space)
    for t in a.space:
        if not g.is_unit(a.moment.get(t)):
            rep.add("moment", "moment does not land in the unit space", point=t)
    if not rep.ok:
        return rep
    left = a.side == "left"
    for k in g.arrows:
        for t in a.space:
            want = (g.src[k] if left else g.rng[k]) == a.moment[t]
            have = ((k, t) if left else (t, k)) in a.act
            if want != have:
                rep.add("domain", "action must be defined exactly on the fibred product", arrow=k, point=t)
    for k, t, v in a.pairs():
        if v not in pts:
            rep.add("closure", "image is not a point", arrow=k, point=t)
        elif a.moment[v] != (g.rng[k] if left else g.src[k]):
            rep.add("moment", "moment of the image is wrong", arrow=k, point=t)
    if not rep.ok:
        return rep
    for t in a.space:
        if a.apply(a.moment[t], t) != t:
            rep.add("unit", "units must act trivially", point=t)
    for (k, l), kl in g.comp.items():
        for t in a.space:
            if left and g.src[l] == a.moment[t]:
                if a.apply(kl, t) != a.apply(k, a.apply(l, t)):
                    rep.add("associativity", "(kl).t != k.(l.t)", arrows=(k, l), point=t)
            if not left and g.rng[k] == a.moment[t]:
                if a.apply(kl, t) != a.apply(l, a.apply(k, t)):
                    rep.add("associativity", "t.(kl) != (t.k).l", arrows=(k, l), point=t)
    return rep


def freeness_witnesses(a):
    g = a.groupoid
    return [(k, t) for k, t, v in a.pairs() if v == t and not g.is_unit(k)]


def orbit_space(a):
    """Orbit representatives (least point of each orbit) and the projection."""
    parent = {t: t for t in a.space}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for _, t, v in a.pairs():
        rt, rv = find(t), find(v)
        if rt != rv:
            if a.order[rt] < a.order[rv]:
                parent[rv] = rt
            else:
                parent[rt] = rv
    classes = defaultdict(list)
    for t in a.space:
        classes[find(t)].append(t)
    proj = {}
    for members in classes.values():
        rep = min(members, key=a.order.__getitem__)
        for t in members:
            proj[t] = rep
    reps = tuple(t for t in a.space if proj[t] == t)
    return reps, proj


def action_groupoid(a, name=None):
    """K x| T: arrows (k, t) with src(k) = moment(t); units identified with T via (moment(t), t)."""
    if a.side != "left":
        raise ValueError("action_groupoid needs a left action")
    rep = validate_action(a)
    if not rep.ok:
        raise ValueError("invalid action: %r" % rep)
    k_ = a.groupoid
    arrows = [(k, t) for k in k_.arrows for t in a.space if k_.src[k] == a.moment[t]]
    unit_of = {t: (a.moment[t], t) for t in a.space}
    return FiniteGroupoid.from_rule(
        arrows, [unit_of[t] for t in a.space],
        {(k, t): unit_of[t] for k, t in arrows},
        {(k, t): unit_of[a.apply(k, t)] for k, t in arrows},
        {(k, t): (k_.inv[k], a.apply(k, t)) for k, t in arrows},
        lambda x, y: (k_.comp[(x[0], y[0])], y[1]),
        name=name or "%s*%s" % (k_.name, a.name or "T"),
        meta={"kind": "action", "action": a, "unit_of": unit_of,
              "point_of": {u: t for t, u in unit_of.items()}})


# ---------------------------------------------------------------- actions by isomorphisms

class IsoAction:
    """G acting on the groupoid H by isomorphisms.

    ``fibering`` maps each arrow of H to a unit of G (H_u is the preimage of
    u); ``sigma[(x, h)]`` is x.h for h in H_{src(x)}.
    """

    def __init__(self, acting, target, fibering, sigma, name=""):
        self.acting = acting
        self.target = target
        self.fibering = dict(fibering)
        self.sigma = dict(sigma)
        self.name = name

    def apply(self, x, h):
        try:
            return self.sigma[(x, h)]
        except KeyError:
            raise ValueError("%r cannot act on %r" % (x, h)) from None

    def fiber(self, u):
        return [h for h in self.target.arrows if self.fibering[h] == u]

    def __repr__(self):
        return "IsoAction(%s on %s)" % (self.acting.name, self.target.name)


def trivial_iso_action(acting, target, fibering=None):
    """Every x acts as the identity; needs every arrow of acting to be a loop at a unit over which H sits."""
    if fibering is None:
        if len(acting.units) != 1:
            raise ValueError("give an explicit fibering for a non-group acting groupoid")
        fibering = {h: acting.units[0] for h in target.arrows}
    sigma = {(x, h): h for x in acting.arrows for h in target.arrows if fibering[h] == acting.src[x]}
    return IsoAction(acting, target, fibering, sigma, name="trivial")


def validate_iso_action(a):
    g, h = a.acting, a.target
    rep = ValidationReport("iso action %s" % a.name)
    for k in h.arrows:
        if not g.is_unit(a.fibering.get(k)):
            rep.add("fibering", "fibering map must land in the unit space of the acting groupoid", arrow=k)
    if not rep.ok:
        return rep
    rho = a.fibering
    for (k, l), kl in h.comp.items():
        if not (rho[k] == rho[l] == rho[kl]):
            rep.add("fibering", "fibering is not constant on composable products", pair=(k, l))
    for k in h.arrows:
        if rho[h.inv[k]] != rho[k]:
            rep.add("fibering", "fibering is not constant under inversion", arrow=k)
    for x in g.arrows:
        for k in h.arrows:
            want = rho[k] == g.src[x]
            if want != ((x, k) in a.sigma):
                rep.add("domain", "x.h must be defined exactly when fibering(h) = src(x)", pair=(x, k))
    if not rep.ok:
        return rep
    for (x, k), v in a.sigma.items():
        if v not in h or rho[v] != g.rng[x]:
            rep.add("closure", "x.h must lie over rng(x)", pair=(x, k))
    if not rep.ok:
        return rep
    for x in g.arrows:
        dom = a.fiber(g.src[x])
        img = [a.sigma[(x, k)] for k in dom]
        if sorted(map(h.order.get, img)) != sorted(map(h.order.get, a.fiber(g.rng[x]))):
            rep.add("bijection", "sigma_x is not a bijection between fibres", arrow=x)
        for k in dom:
            if g.is_unit(x) and a.sigma[(x, k)] != k:
                rep.add("unit", "units must act trivially", arrow=x, target=k)
            if a.sigma[(x, h.inv[k])] != h.inv[a.sigma[(x, k)]]:
                rep.add("homomorphism", "sigma_x does not commute with inversion", arrow=x, target=k)
            if h.src[a.sigma[(x, k)]] != a.sigma[(x, h.src[k])]:
                rep.add("homomorphism", "sigma_x does not preserve source", arrow=x, target=k)
    for (k, l), kl in h.comp.items():
        for x in g.by_src[rho[k]]:
            sk, sl = a.sigma[(x, k)], a.sigma[(x, l)]
            if h.comp.get((sk, sl)) != a.sigma[(x, kl)]:
                rep.add("homomorphism", "sigma_x(kl) != sigma_x(k) sigma_x(l)", arrow=x, pair=(k, l))
    for (x, y), xy in g.comp.items():
        for k in a.fiber(g.src[y]):
            if a.sigma[(xy, k)] != a.sigma[(x, a.sigma[(y, k)])]:
                rep.add("composition", "sigma_xy != sigma_x sigma_y", pair=(x, y), target=k)
    return rep


def iso_freeness_witnesses(a):
    return [(x, k) for (x, k), v in a.sigma.items() if v == k and not a.acting.is_unit(x)]


def semidirect_groupoid(a, name=None):
    """H oc G: arrows (h, x) with fibering(h) = rng(x) and (h, x)(k, y) = (h sigma_x(k), xy)."""
    rep = validate_iso_action(a)
    if not rep.ok:
        raise ValueError("invalid action by isomorphisms: %r" % rep)
    g, h = a.acting, a.target
    rho, sig = a.fibering, a.sigma
    arrows = [(k, x) for k in h.arrows for x in g.arrows if rho[k] == g.rng[x]]
    unit_of = {v: (v, rho[v]) for v in h.units}

    def src(k, x):
        xi = g.inv[x]
        return (sig[(xi, h.src[k])], g.src[x])

    return FiniteGroupoid.from_rule(
        arrows, [unit_of[v] for v in h.units],
        {(k, x): src(k, x) for k, x in arrows},
        {(k, x): (h.rng[k], g.rng[x]) for k, x in arrows},
        {(k, x): (sig[(g.inv[x], h.inv[k])], g.inv[x]) for k, x in arrows},
        lambda p, q: (h.comp[(p[0], sig[(p[1], q[0])])], g.comp[(p[1], q[1])]),
        name=name or "%s<%s" % (h.name, g.name),
        meta={"kind": "semidirect", "iso": a, "unit_of": unit_of,
              "copy_of_H": {k: (k, rho[k]) for k in h.arrows}})


def orbit_groupoid(a, name=None):
    """G\\H for a free action by isomorphisms; arrows are least-token orbit representatives.

    meta['to_rep'][h] = (rep, z) with z.h = rep.
    """
    if iso_freeness_witnesses(a):
        raise ValueError("the action is not free")
    g, h = a.acting, a.target
    to_rep = {}
    for k in h.arrows:
        orbit = [(a.sigma[(x, k)], x) for x in g.by_src[a.fibering[k]]]
        rep = h.least([o for o, _ in orbit])
        z = next(x for o, x in orbit if o == rep)
        to_rep[k] = (rep, z)
    reps = [k for k in h.arrows if to_rep[k][0] == k]

    def compose(p, q):
        # the unique x with src(p) = x.rng(q)
        x = next(x for x in g.by_src[a.fibering[q]] if a.sigma[(x, h.rng[q])] == h.src[p])
        return to_rep[h.comp[(p, a.sigma[(x, q)])]][0]

    src = {k: to_rep[h.src[k]][0] for k in reps}
    rng = {k: to_rep[h.rng[k]][0] for k in reps}
    return FiniteGroupoid.from_rule(
        reps, [k for k in reps if h.is_unit(k)], src, rng,
        {k: to_rep[h.inv[k]][0] for k in reps}, compose,
        name=name or "%s\\%s" % (g.name, h.name),
        meta={"kind": "orbit", "iso": a, "to_rep": to_rep})


# ---------------------------------------------------------------- equivalences

class GroupoidEquivalence:
    """Z with a left action of ``left`` and a right action of ``right``."""

    def __init__(self, left, right, left_action, right_action, name=""):
        if left_action.side != "left" or right_action.side != "right":
            raise ValueError("need a left and a right action")
        if left_action.space != right_action.space:
            raise ValueError("actions must share the space")
        self.left = left
        self.right = right
        self.left_action = left_action
        self.right_action = right_action
        self.space = left_action.space
        self.name = name
        self.meta = {}
        self._lp = None
        self._rp = None

    def rho(self, z):
        return self.left_action.moment[z]

    def sigma(self, z):
        return self.right_action.moment[z]

    def _lookups(self):
        if self._lp is None:
            lp, rp = defaultdict(list), defaultdict(list)
            for g, y, x in self.left_action.pairs():
                lp[(x, y)].append(g)
            for h, x, y in self.right_action.pairs():
                rp[(x, y)].append(h)
            self._lp, self._rp = lp, rp
        return self._lp, self._rp

    def left_pairing(self, x, y):
        """The unique g with x = g.y (needs sigma(x) = sigma(y))."""
        if self.sigma(x) != self.sigma(y):
            raise ValueError("left pairing needs sigma(x) = sigma(y)")
        found = self._lookups()[0].get((x, y), [])
        if len(found) != 1:
            raise ValueError("left pairing at %r is not unique (%d candidates)" % ((x, y), len(found)))
        return found[0]

    def right_pairing(self, x, y):
        """The unique h with x.h = y (needs rho(x) = rho(y))."""
        if self.rho(x) != self.rho(y):
            raise ValueError("right pairing needs rho(x) = rho(y)")
        found = self._lookups()[1].get((x, y), [])
        if len(found) != 1:
            raise ValueError("right pairing at %r is not unique (%d candidates)" % ((x, y), len(found)))
        return found[0]

    def left_pairs(self):
        """Pairs (x, y) in Z *_sigma Z."""
        by = defaultdict(list)
        for z in self.space:
            by[self.sigma(z)].append(z)
        return [(x, y) for x in self.space for y in by[self.sigma(x)]]

    def right_pairs(self):
        by = defaultdict(list)
        for z in self.space:
            by[self.rho(z)].append(z)
        return [(x, y) for x in self.space for y in by[self.rho(x)]]


def equivalence_pairings(e, x, y, side="left"):
    return e.left_pairing(x, y) if side == "left" else e.right_pairing(x, y)


def validate_equivalence_space(e):
    rep = ValidationReport("equivalence space %s" % e.name)
    rep.extend(validate_groupoid(e.left), "left groupoid")
    rep.extend(validate_groupoid(e.right), "right groupoid")
    rep.extend(validate_action(e.left_action), "left action")
    rep.extend(validate_action(e.right_action), "right action")
    if not rep.ok:
        return rep
    la, ra = e.left_action, e.right_action
    for g, z, gz in la.pairs():
        if e.sigma(gz) != e.sigma(z):
            rep.add("commuting", "left action moves sigma", arrow=g, point=z)
        for h in e.right.by_rng[e.sigma(z)]:
            if la.act.get((g, ra.act[(z, h)])) != ra.act.get((gz, h)):
                rep.add("commuting", "(g.z).h != g.(z.h)", left=g, point=z, right=h)
    for h, z, zh in ra.pairs():
        if e.rho(zh) != e.rho(z):
            rep.add("commuting", "right action moves rho", arrow=h, point=z)
    for k, t in freeness_witnesses(la):
        rep.add("freeness", "left action not free", arrow=k, point=t)
    for k, t in freeness_witnesses(ra):
        rep.add("freeness", "right action not free", arrow=k, point=t)
    for label, act, moment, units in (("Z/H ~ G0", ra, e.rho, e.left.units),
                                      ("G\\Z ~ H0", la, e.sigma, e.right.units)):
        reps, proj = orbit_space(act)
        for t in act.space:
            if moment(t) != moment(proj[t]):
                rep.add(label, "moment map is not constant on orbits", point=t)
        images = [moment(r) for r in reps]
        if len(set(images)) != len(images):
            rep.add(label, "moment map does not separate orbits", orbits=len(reps))
        if set(images) != set(units):
            rep.add(label, "moment map does not induce a bijection onto the unit space",
                    orbits=len(reps), units=len(units))
    return rep


def self_equivalence(g):
    """G as a (G, G)-equivalence by left and right multiplication."""
    la = SpaceAction.from_rule(g, g.arrows, g.rng, lambda k, t: g.comp[(k, t)], name="G")
    ra = SpaceAction.from_rule(g, g.arrows, g.src, lambda t, k: g.comp[(t, k)], side="right", name="G")
    return GroupoidEquivalence(g, g, la, ra, name="%s-self" % g.name)


def quotient_by_subgroupoid(m, h):
    """Right action of H on the arrows of M, its orbit space M/H, and M acting on M/H."""
    ra = SpaceAction.from_rule(h, m.arrows, m.src, lambda t, k: m.comp[(t, k)], side="right", name="H")
    reps, proj = orbit_space(ra)
    quot = SpaceAction.from_rule(m, reps, {t: m.rng[t] for t in reps},
                                 lambda k, t: proj[m.comp[(k, t)]], name="%s/H" % m.name)
    return ra, reps, proj, quot


def canonical_subgroupoid_equivalence(m, h_arrows):
    """M as an (M x| M/H, H)-equivalence for a wide subgroupoid H."""
    h = h_arrows if isinstance(h_arrows, FiniteGroupoid) else subgroupoid(m, h_arrows, name="H")
    if not all(a in m for a in h.arrows):
        raise ValueError("not a subgroupoid")
    subgroupoid(m, h.arrows)
    if not is_wide(m, h):
        raise ValueError("subgroupoid is not wide")
    ra, reps, proj, quot = quotient_by_subgroupoid(m, h)
    lg = action_groupoid(quot, name="%s*%s/H" % (m.name, m.name))
    unit_of = lg.meta["unit_of"]
    la = SpaceAction(lg, m.arrows, {z: unit_of[proj[z]] for z in m.arrows},
                     {((k, proj[z]), z): m.comp[(k, z)] for z in m.arrows for k in m.by_src[m.rng[z]]},
                     name="M*M/H")
    e = GroupoidEquivalence(lg, h, la, ra, name="%s/H" % m.name)
    e.meta.update(subgroupoid=h, projection=proj, quotient=quot)
    return e


# ---------------------------------------------------------------- bispaces

def translation_space(g):
    """G acting on itself by left translation, with the commuting action x.y = y x^-1."""
    k_act = SpaceAction.from_rule(g, g.arrows, g.rng, lambda k, t: g.comp[(k, t)], name=g.name)
    g_act = SpaceAction.from_rule(g, g.arrows, g.src, lambda x, y: g.comp[(y, g.inv[x])],
                                  name="%s-right" % g.name)
    return k_act, g_act


def quotient_translation_space(a, m=None):
    """The space T = {(v, y) : v in H0, fibering(v) = rng(y)} standing for (H oc G)/H.

    Returns (H oc G acting by (h, x).(v, y) = (rng h, xy), G acting by
    x.(v, y) = (v, y x^-1)).  The map [h, x] -> (rng h, x) identifies the
    orbit space (H oc G)/H with T.
    """
    g, h = a.acting, a.target
    m = m or semidirect_groupoid(a)
    rho = a.fibering
    pts = [(v, y) for v in h.units for y in g.arrows if rho[v] == g.rng[y]]
    unit_of = m.meta["unit_of"]
    k_act = SpaceAction.from_rule(m, pts, {t: unit_of[t[0]] for t in pts},
                                  lambda k, t: (h.rng[k[0]], g.comp[(k[1], t[1])]), name="%s/H" % m.name)
    g_act = SpaceAction.from_rule(g, pts, {t: g.src[t[1]] for t in pts},
                                  lambda x, t: (t[0], g.comp[(t[1], g.inv[x])]), name="%s-right" % g.name)
    return k_act, g_act
