"""Ladder diagrams of ideal lattices and the certificates built on them."""

from .equivalence import (
    equiv_from_action_product, equiv_from_action_product_T, equiv_from_semidirect,
    ideal_to_module, rieffel_map,
)
from .fellbundle import action_product, semidirect_bundle, translation_action
from .groupoid import translation_space
from .ideals import (
    check_lattice_isomorphism, enumerate_ideals, enumerate_invariant_ideals, is_invariant_ideal,
    reindex, validate_ideal,
)
from .report import ValidationReport

NODES = ("X", "Y", "Z", "W")
RUNGS = (("f", "X", "Y"), ("g", "Y", "Z"), ("h", "Z", "W"))
STRUTS = (("u", "X", "Z"), ("v", "Y", "W"))


class LadderDiagram:
    """Four finite node sets with rungs f: X->Y, g: Y->Z, h: Z->W and struts u: X->Z, v: Y->W.

    Maps are dicts; an image outside the target node set is allowed and is
    reported by :func:`ladder_lemma_check`.
    """

    def __init__(self, X, Y, Z, W, f, g, h, u, v, labels=None, meta=None):
        self.nodes = {"X": list(X), "Y": list(Y), "Z": list(Z), "W": list(W)}
        self.maps = {"f": dict(f), "g": dict(g), "h": dict(h), "u": dict(u), "v": dict(v)}
        self.labels = dict(labels or {})
        self.meta = dict(meta or {})
        self.build_report = ValidationReport("ladder construction")

    def sizes(self):
        return tuple(len(self.nodes[n]) for n in NODES)

    def __repr__(self):
        return "LadderDiagram(%s)" % "/".join(str(s) for s in self.sizes())


class LadderCertificate(ValidationReport):
    """A report plus the facts established along the way."""

    def __init__(self, subject=""):
        super().__init__(subject)
        self.facts = {}

    @property
    def certified(self):
        return self.ok

    def to_json(self):
        out = super().to_json()
        out["facts"] = {k: v for k, v in sorted(self.facts.items())}
        return out


def _describe(x):
    if hasattr(x, "dims"):
        return list(x.dims())
    return x


def _bijective(m, dom, cod):
    imgs = [m[x] for x in dom]
    return len(set(imgs)) == len(imgs) and set(imgs) == set(cod)


def ladder_lemma_check(d):
    """Commutativity, then bijective struts, then each rung by direct inspection.

    If the hypotheses hold and a rung still fails to be bijective the
    result carries an 'alarm' violation: the lemma cannot fail, so the
    implementation is inconsistent.
    """
    cert = LadderCertificate("ladder lemma")
    cert.extend(d.build_report, "construction")
    members = {n: set(d.nodes[n]) for n in NODES}
    total = True
    for name, dom, cod in RUNGS + STRUTS:
        m = d.maps[name]
        for x in d.nodes[dom]:
            if x not in m:
                cert.add("totality", "map is undefined on an element", map=name, element=_describe(x))
                total = False
            elif m[x] not in members[cod]:
                cert.add("totality", "image lies outside the target node set", map=name,
                         element=_describe(x), image=_describe(m[x]))
                total = False
    cert.facts["total"] = total
    if not total:
        return cert
    f, g, h, u, v = (d.maps[k] for k in "fghuv")
    commutes = True
    for x in d.nodes["X"]:
        if u[x] != g[f[x]]:
            cert.add("commutativity", "u != g o f", element=_describe(x))
            commutes = False
    for y in d.nodes["Y"]:
        if v[y] != h[g[y]]:
            cert.add("commutativity", "v != h o g", element=_describe(y))
            commutes = False
    cert.facts["commutes"] = commutes
    struts = True
    for name, dom, cod in STRUTS:
        if not _bijective(d.maps[name], d.nodes[dom], d.nodes[cod]):
            cert.add("strut", "strut is not a bijection", map=name,
                     domain=len(d.nodes[dom]), codomain=len(d.nodes[cod]),
                     images=len({d.maps[name][x] for x in d.nodes[dom]}))
            struts = False
    cert.facts["struts_bijective"] = struts
    rungs = {name: _bijective(d.maps[name], d.nodes[dom], d.nodes[cod]) for name, dom, cod in RUNGS}
    cert.facts["rungs_bijective"] = rungs
    if commutes and struts:
        for name, ok in rungs.items():
            if not ok:
                cert.add("alarm", "hypotheses hold but a rung is not bijective", map=name)
    cert.facts["sizes"] = list(d.sizes())
    return cert


def _first(p):
    return p[0]


def _ideal_map(src, target_bundle, target_lattice, rep, label, invariant_under=None):
    """I -> literal re-indexing of I into target_bundle, revalidated."""
    out = {}
    for i in src:
        j = reindex(i, target_bundle, _first)
        v = validate_ideal(target_bundle, j)
        if not v.ok:
            rep.add("alarm", "image is not an ideal", map=label, source=list(i.dims()))
        if invariant_under is not None and not is_invariant_ideal(j, invariant_under):
            rep.add("alarm", "image is not invariant", map=label, source=list(i.dims()))
        out[i] = target_lattice.ideals[target_lattice.index(j)] if j in target_lattice else j
    return out


def _strut_map(e, src, target_lattice):
    out = {}
    for i in src:
        j = rieffel_map(e, i, "right")
        out[i] = target_lattice.ideals[target_lattice.index(j)] if j in target_lattice else j
    return out


def build_left_ladder(a, act):
    """Nodes I_G(A), I(A oc G), I_G((A oc G) x| T), I((A oc G) x| T oc G).

    T stands for (H oc G)/H.  Rungs are re-indexings, struts are Rieffel
    correspondences through the semidirect and action-product equivalences.
    """
    ag = semidirect_bundle(a, act)
    e_u = equiv_from_semidirect(a, act, ag=ag)
    zb = e_u.left
    tz = translation_action(zb)
    e_v = equiv_from_action_product_T(ag, zb.meta["space_action"], zb.meta["commuting"], ab=zb, tact=tz)
    wb = e_v.left
    lat = {"X": enumerate_invariant_ideals(a, act), "Y": enumerate_ideals(ag),
           "Z": enumerate_invariant_ideals(zb, tz), "W": enumerate_ideals(wb)}
    rep = ValidationReport("left ladder")
    f = _ideal_map(lat["X"], ag, lat["Y"], rep, "f")
    g = _ideal_map(lat["Y"], zb, lat["Z"], rep, "g", invariant_under=tz)
    h = _ideal_map(lat["Z"], wb, lat["W"], rep, "h")
    u = _strut_map(e_u, lat["X"], lat["Z"])
    v = _strut_map(e_v, lat["Y"], lat["W"])
    labels = {"X": "I_G(A)", "Y": "I(A<G)", "Z": "I_G(A<G*G)", "W": "I(A<G*G<G)",
              "f": "I -> I<G", "g": "J -> J*G", "h": "K -> K<G",
              "u": "I -> I<G*G", "v": "J -> J*G<G"}
    d = LadderDiagram(*(lat[n].ideals for n in NODES), f, g, h, u, v, labels=labels,
                      meta={"side": "left", "lattices": lat, "bundles": {"X": a, "Y": ag, "Z": zb, "W": wb},
                            "equivalences": {"u": e_u, "v": e_v}, "action": act, "top_action": tz})
    d.build_report = rep
    return d


def build_right_ladder(a):
    """Nodes I(A), I_G(A x| G), I(A x| G oc G), I_G((A x| G oc G) x| T)."""
    k_act, g_act = translation_space(a.base)
    ab, tact = action_product(a, k_act, g_act)
    e_u = equiv_from_action_product(a, ab=ab, tact=tact)
    zb = e_u.left
    e_v = equiv_from_semidirect(ab, tact, ag=zb)
    wb = e_v.left
    tw = translation_action(wb)
    lat = {"X": enumerate_ideals(a), "Y": enumerate_invariant_ideals(ab, tact),
           "Z": enumerate_ideals(zb), "W": enumerate_invariant_ideals(wb, tw)}
    rep = ValidationReport("right ladder")
    f = _ideal_map(lat["X"], ab, lat["Y"], rep, "f", invariant_under=tact)
    g = _ideal_map(lat["Y"], zb, lat["Z"], rep, "g")
    h = _ideal_map(lat["Z"], wb, lat["W"], rep, "h", invariant_under=tw)
    u = _strut_map(e_u, lat["X"], lat["Z"])
    v = _strut_map(e_v, lat["Y"], lat["W"])
    labels = {"X": "I(A)", "Y": "I_G(A*G)", "Z": "I(A*G<G)", "W": "I_G(A*G<G*G)",
              "f": "I -> I*G", "g": "J -> J<G", "h": "K -> K*G",
              "u": "I -> I*G<G", "v": "J -> J<G*G"}
    d = LadderDiagram(*(lat[n].ideals for n in NODES), f, g, h, u, v, labels=labels,
                      meta={"side": "right", "lattices": lat, "bundles": {"X": a, "Y": ab, "Z": zb, "W": wb},
                            "equivalences": {"u": e_u, "v": e_v}, "action": tact, "top_action": tw})
    d.build_report = rep
    return d


def extend_left_ladder(d):
    """One more level upward: the left ladder of (Z-bundle, its G-action), glued along Z and W."""
    if d.meta.get("side") != "left":
        raise ValueError("only left ladders are extended")
    upper = build_left_ladder(d.meta["bundles"]["Z"], d.meta["top_action"])
    cert = LadderCertificate("extended ladder")
    if upper.nodes["X"] != d.nodes["Z"] or upper.nodes["Y"] != d.nodes["W"]:
        cert.add("gluing", "upper ladder does not start at the top of the lower one")
    cert.extend(ladder_lemma_check(d), "lower")
    up = ladder_lemma_check(upper)
    cert.extend(up, "upper")
    cert.facts["sizes"] = list(d.sizes()) + list(upper.sizes()[2:])
    cert.facts["upper"] = up.facts
    return cert, upper


# ---------------------------------------------------------------- strut verification

def _module_matches(rep, module, expected, label, source):
    for z, sub in module.items():
        if sub != expected.fibers[z]:
            rep.add("module", "intermediate module differs from the re-indexed ideal",
                    strut=label, ideal=list(source.dims()), point=z, got=sub.dim, want=expected.fibers[z].dim)
            return


def verify_strut_left(a, act, diagram=None):
    """Rieffel through the semidirect equivalence sends I to I<G*G, via the module I<G; and conversely."""
    d = diagram or build_left_ladder(a, act)
    e = d.meta["equivalences"]["u"]
    ag, zb = d.meta["bundles"]["Y"], d.meta["bundles"]["Z"]
    rep = ValidationReport("left strut for %s" % a.name)
    for i in d.meta["lattices"]["X"]:
        module = ideal_to_module(e, i, "right")
        middle = reindex(i, ag, _first)
        _module_matches(rep, module, middle, "u", i)
        want = reindex(middle, zb, _first)
        got = rieffel_map(e, i, "right")
        if got != want:
            bad = next(x for x in zb.base.arrows if got.fibers[x] != want.fibers[x])
            rep.add("image", "Rieffel image differs from I<G*G", ideal=list(i.dims()), fiber=bad)
    xs = d.meta["lattices"]["X"]
    for j in d.meta["lattices"]["Z"]:
        back = rieffel_map(e, j, "left")
        if not is_invariant_ideal(back, act):
            rep.add("converse", "ideal generated by the right pairings is not invariant", ideal=list(j.dims()))
        elif back not in xs or reindex(reindex(back, ag, _first), zb, _first) != j:
            rep.add("converse", "invariant ideal does not come back from the re-indexed form", ideal=list(j.dims()))
    return rep


def verify_strut_right(a, diagram=None, cross_check=True):
    """Rieffel through the action-product equivalence sends I to I*G<G, via the module I*G."""
    d = diagram or build_right_ladder(a)
    e = d.meta["equivalences"]["u"]
    ab, zb = d.meta["bundles"]["Y"], d.meta["bundles"]["Z"]
    rep = ValidationReport("right strut for %s" % a.name)
    for i in d.meta["lattices"]["X"]:
        module = ideal_to_module(e, i, "right")
        middle = reindex(i, ab, _first)
        _module_matches(rep, module, middle, "u", i)
        want = reindex(middle, zb, _first)
        got = rieffel_map(e, i, "right")
        if got != want:
            bad = next(x for x in zb.base.arrows if got.fibers[x] != want.fibers[x])
            rep.add("image", "Rieffel image differs from I*G<G", ideal=list(i.dims()), fiber=bad)
    if cross_check:
        # the same strut read as the left strut for A x| G with its translation action
        e_v = d.meta["equivalences"]["v"]
        wb = d.meta["bundles"]["W"]
        for j in d.meta["lattices"]["Y"]:
            module = ideal_to_module(e_v, j, "right")
            middle = reindex(j, zb, _first)
            _module_matches(rep, module, middle, "v", j)
            if rieffel_map(e_v, j, "right") != reindex(middle, wb, _first):
                rep.add("special case", "left strut fails for the translation action", ideal=list(j.dims()))
    return rep


# ---------------------------------------------------------------- theorem certificates

def _rung_certificate(subject, src, dst, bundle, invariant_under=None):
    cert = LadderCertificate(subject)
    mapping = []
    for i in src:
        j = reindex(i, bundle, _first)
        if not validate_ideal(bundle, j).ok:
            cert.add("ideal", "image is not an ideal", ideal=list(i.dims()))
        if invariant_under is not None and not is_invariant_ideal(j, invariant_under):
            cert.add("invariance", "image is not invariant", ideal=list(i.dims()))
        mapping.append(dst.index(j))
    hit = set(mapping)
    for k, j in enumerate(dst):
        if k not in hit:
            cert.add("surjectivity", "target ideal is not an image", ideal=list(j.dims()))
    if len([m for m in mapping if m is not None]) != len({m for m in mapping if m is not None}):
        cert.add("injectivity", "two ideals have the same image")
    if cert.ok:
        cert.extend(check_lattice_isomorphism(src, dst, mapping), "lattice")
    cert.facts.update(source=len(src), target=len(dst), mapping=mapping)
    return cert


def theorem_fb_ladder_check(a, act, diagram=None):
    """I -> I<G is a lattice isomorphism from the invariant ideals of A onto all ideals of A<G."""
    if diagram is not None:
        lat, ag = diagram.meta["lattices"], diagram.meta["bundles"]["Y"]
        src, dst = lat["X"], lat["Y"]
    else:
        ag = semidirect_bundle(a, act)
        src, dst = enumerate_invariant_ideals(a, act), enumerate_ideals(ag)
    return _rung_certificate("invariant ideals of %s vs ideals of %s" % (a.name, ag.name), src, dst, ag)


def theorem_bonus_ladder_check(a, diagram=None):
    """I -> I*G is a lattice isomorphism from all ideals of A onto the invariant ideals of A*G."""
    if diagram is not None:
        lat, ab, tact = diagram.meta["lattices"], diagram.meta["bundles"]["Y"], diagram.meta["action"]
        src, dst = lat["X"], lat["Y"]
    else:
        ab, tact = action_product(a, *translation_space(a.base))
        src, dst = enumerate_ideals(a), enumerate_invariant_ideals(ab, tact)
    return _rung_certificate("ideals of %s vs invariant ideals of %s" % (a.name, ab.name), src, dst, ab,
                             invariant_under=tact)
