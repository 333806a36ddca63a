"""JSON instance files: schema check, reference resolution, construction of domain objects."""

import json
from importlib import resources

import jsonschema

from .catalog import diagonal_algebra, group_algebra, matrix_algebra
from .exactalg.linalg import identity
from .exactalg.scalars import parse_scalar
from .exactalg.staralg import StarAlgebra
from .fellbundle import BundleIsoAction, FellBundle, cocycle_line_bundle, trivial_action_bundle
from .groupoid import (
    FiniteGroupoid, IsoAction, cyclic_group, group, klein_four, pair_groupoid, subgroupoid,
    trivial_iso_action, units_only,
)


class InstanceError(ValueError):
    """A problem with an instance file, located by field path and (for parse errors) line."""

    def __init__(self, message, field=None, line=None, column=None):
        super().__init__(message)
        self.message = message
        self.field = field
        self.line = line
        self.column = column

    def to_json(self):
        out = {"error": self.message}
        if self.field is not None:
            out["field"] = self.field
        if self.line is not None:
            out["line"] = self.line
            out["column"] = self.column
        return out

    def __str__(self):
        where = []
        if self.line is not None:
            where.append("line %d" % self.line)
        if self.field:
            where.append(self.field)
        return "%s (%s)" % (self.message, ", ".join(where)) if where else self.message


def schema():
    return json.loads(resources.files("fellb").joinpath("data/instance.schema.json").read_text())


def _tok(x):
    """JSON token to a hashable: lists become tuples."""
    if isinstance(x, list):
        return tuple(_tok(y) for y in x)
    return x


def _path(parts):
    out = ""
    for p in parts:
        out += "[%d]" % p if isinstance(p, int) else ("." if out else "") + str(p)
    return out


class Instance:
    def __init__(self, name, path=None):
        self.name = name
        self.path = path
        self.groupoids = {}
        self.cocycles = {}
        self.bundles = {}
        self.actions = {}
        self.subgroupoids = {}
        self.claims = {}
        self._action_owner = {}

    def bundle(self, key=None):
        if key is None:
            if not self.bundles:
                raise KeyError("instance has no bundles")
            key = next(iter(self.bundles))
        if key not in self.bundles:
            raise KeyError("no bundle %r" % key)
        return self.bundles[key]

    def bundle_id(self, key=None):
        return key if key is not None else next(iter(self.bundles))

    def action(self, key=None, bundle_id=None):
        """Named action, else the first action on bundle_id, else None."""
        if key is not None:
            if key not in self.actions:
                raise KeyError("no action %r" % key)
            return self.actions[key]
        for k, (bid, act) in self._action_owner.items():
            if bundle_id is None or bid == bundle_id:
                return act
        return None

    def action_id(self, key=None, bundle_id=None):
        if key is not None:
            return key
        for k, (bid, _) in self._action_owner.items():
            if bundle_id is None or bid == bundle_id:
                return k
        return None


class _Loader:
    def __init__(self, doc, inst):
        self.doc = doc
        self.inst = inst

    def ref(self, table, key, field):
        if key not in table:
            raise InstanceError("dangling reference %r" % (key,), field=field)
        return table[key]

    def arrow(self, g, token, field):
        t = _tok(token)
        if t not in g.src:
            raise InstanceError("dangling reference: %r is not an arrow of %s" % (t, g.name), field=field)
        return t

    def scalar(self, x, field):
        try:
            return parse_scalar(x)
        except (ValueError, TypeError) as exc:
            raise InstanceError("bad scalar %r: %s" % (x, exc), field=field) from None

    def vector(self, v, field):
        return tuple(self.scalar(x, "%s[%d]" % (field, i)) for i, x in enumerate(v))

    def matrix(self, m, field):
        return [self.vector(r, "%s[%d]" % (field, i)) for i, r in enumerate(m)]

    # -- groupoids
    def groupoid(self, key, spec):
        f = "groupoids.%s" % key
        kind = spec["kind"]
        if kind == "units":
            return units_only([_tok(u) for u in spec.get("units", [])], name=key)
        if kind == "pair":
            return pair_groupoid([_tok(p) for p in spec.get("points", [])], name=key)
        if kind == "cyclic":
            if "order" not in spec:
                raise InstanceError("cyclic groupoid needs 'order'", field=f)
            return cyclic_group(spec["order"], name=key)
        if kind == "klein":
            return klein_four(name=key)
        if kind == "group":
            return self.group(key, spec, f)
        return self.explicit_groupoid(key, spec, f)

    def group(self, key, spec, f):
        els = spec.get("elements")
        ident = spec.get("identity")
        table = spec.get("table")
        if els is None or ident is None or table is None:
            raise InstanceError("group needs 'elements', 'identity' and 'table'", field=f)
        if ident not in els:
            raise InstanceError("dangling reference %r" % ident, field=f + ".identity")
        mul = {}
        for x in els:
            row = table.get(x)
            if row is None:
                raise InstanceError("missing table row", field="%s.table.%s" % (f, x))
            for y in els:
                if y not in row:
                    raise InstanceError("missing table entry", field="%s.table.%s.%s" % (f, x, y))
                if row[y] not in els:
                    raise InstanceError("dangling reference %r" % row[y], field="%s.table.%s.%s" % (f, x, y))
                mul[(x, y)] = row[y]
        try:
            return group(els, mul, ident, name=key)
        except StopIteration:
            raise InstanceError("table has an element without inverse", field=f + ".table") from None

    def explicit_groupoid(self, key, spec, f):
        units = [_tok(u) for u in spec.get("units", [])]
        uset = set(units)
        arrows = list(units)
        src = {u: u for u in units}
        rng = {u: u for u in units}
        for i, a in enumerate(spec.get("arrows", [])):
            t = _tok(a["id"])
            for end, table in (("src", src), ("rng", rng)):
                e = _tok(a[end])
                if e not in uset:
                    raise InstanceError("dangling reference: %r is not a unit" % (e,),
                                        field="%s.arrows[%d].%s" % (f, i, end))
                table[t] = e
            if t in uset:
                raise InstanceError("arrow id repeats a unit", field="%s.arrows[%d].id" % (f, i))
            arrows.append(t)
        known = set(arrows)
        inv = {u: u for u in units}
        for i, pair in enumerate(spec.get("inverse", [])):
            a, b = (_tok(x) for x in pair)
            for j, x in enumerate((a, b)):
                if x not in known:
                    raise InstanceError("dangling reference %r" % (x,), field="%s.inverse[%d][%d]" % (f, i, j))
            inv[a], inv[b] = b, a
        comp = {}
        for a in arrows:
            comp[(a, src[a])] = a
            comp[(rng[a], a)] = a
        for i, triple in enumerate(spec.get("compose", [])):
            a, b, c = (_tok(x) for x in triple)
            for j, x in enumerate((a, b, c)):
                if x not in known:
                    raise InstanceError("dangling reference %r" % (x,), field="%s.compose[%d][%d]" % (f, i, j))
            comp[(a, b)] = c
        return FiniteGroupoid(arrows, units, src, rng, inv, comp, name=key)

    # -- algebras and bundles
    def algebra(self, spec, f):
        kind = spec["kind"]
        if kind == "diagonal":
            return diagonal_algebra(spec.get("n", 1))
        if kind == "matrix":
            return matrix_algebra(spec.get("n", 1))
        if kind == "group_algebra":
            return group_algebra(self.ref(self.inst.groupoids, spec.get("group"), f + ".group"))
        d = spec.get("dim")
        if d is None or "mult" not in spec or "invol" not in spec:
            raise InstanceError("explicit algebra needs 'dim', 'mult' and 'invol'", field=f)
        mult = [[self.vector(v, "%s.mult[%d][%d]" % (f, i, j)) for j, v in enumerate(row)]
                for i, row in enumerate(spec["mult"])]
        return StarAlgebra(d, mult, self.matrix(spec["invol"], f + ".invol"))

    def bundle(self, key, spec):
        f = "bundles.%s" % key
        g = self.ref(self.inst.groupoids, spec["groupoid"], f + ".groupoid")
        kind = spec["kind"]
        try:
            if kind == "trivial":
                if "algebra" not in spec:
                    raise InstanceError("trivial bundle needs 'algebra'", field=f)
                return trivial_action_bundle(self.algebra(spec["algebra"], f + ".algebra"), g, name=key)
            if kind == "cocycle":
                c = self.ref(self.inst.cocycles, spec.get("cocycle"), f + ".cocycle")
                return cocycle_line_bundle(g, c, name=key)
        except InstanceError:
            raise
        except ValueError as exc:
            raise InstanceError(str(exc), field=f) from None
        return self.explicit_bundle(key, spec, g, f)

    def explicit_bundle(self, key, spec, g, f):
        dims = {}
        for i, (a, d) in enumerate(spec.get("dims", [])):
            dims[self.arrow(g, a, "%s.dims[%d][0]" % (f, i))] = d
        for a in g.arrows:
            if a not in dims:
                raise InstanceError("missing fibre dimension for %r" % (a,), field=f + ".dims")
        mult = {}
        for i, ent in enumerate(spec.get("mult", [])):
            ff = "%s.mult[%d]" % (f, i)
            x = self.arrow(g, ent["pair"][0], ff + ".pair[0]")
            y = self.arrow(g, ent["pair"][1], ff + ".pair[1]")
            mult[(x, y)] = [[self.vector(v, "%s.table[%d][%d]" % (ff, r, c)) for c, v in enumerate(row)]
                            for r, row in enumerate(ent["table"])]
        invol = {}
        for i, ent in enumerate(spec.get("invol", [])):
            ff = "%s.invol[%d]" % (f, i)
            invol[self.arrow(g, ent["arrow"], ff + ".arrow")] = self.matrix(ent["matrix"], ff + ".matrix")
        return FellBundle(g, dims, mult, invol, name=key)

    def cocycle(self, key, spec):
        f = "cocycles.%s" % key
        g = self.ref(self.inst.groupoids, spec["groupoid"], f + ".groupoid")
        out = {}
        for i, (x, y, v) in enumerate(spec["values"]):
            ff = "%s.values[%d]" % (f, i)
            out[(self.arrow(g, x, ff + "[0]"), self.arrow(g, y, ff + "[1]"))] = self.scalar(v, ff + "[2]")
        return out

    def action(self, key, spec):
        f = "actions.%s" % key
        acting = self.ref(self.inst.groupoids, spec["acting"], f + ".acting")
        b = self.ref(self.inst.bundles, spec["bundle"], f + ".bundle")
        h = b.base
        if "fibering" in spec:
            fib = {}
            for i, (a, u) in enumerate(spec["fibering"]):
                ff = "%s.fibering[%d]" % (f, i)
                fib[self.arrow(h, a, ff + "[0]")] = self.arrow(acting, u, ff + "[1]")
        elif len(acting.units) == 1:
            fib = {a: acting.units[0] for a in h.arrows}
        else:
            raise InstanceError("give 'fibering' when the acting groupoid has several units", field=f)
        if "sigma" in spec:
            sig = {}
            for i, (x, a, xa) in enumerate(spec["sigma"]):
                ff = "%s.sigma[%d]" % (f, i)
                sig[(self.arrow(acting, x, ff + "[0]"), self.arrow(h, a, ff + "[1]"))] = self.arrow(h, xa, ff + "[2]")
            iso = IsoAction(acting, h, fib, sig, name=key)
        else:
            try:
                iso = trivial_iso_action(acting, h, fib)
            except KeyError as exc:
                raise InstanceError("fibering misses arrow %s" % exc, field=f + ".fibering") from None
            iso.name = key
        alpha = {(x, a): identity(b.dims[a]) for (x, a) in iso.sigma}
        for i, ent in enumerate(spec.get("alpha", [])):
            ff = "%s.alpha[%d]" % (f, i)
            x = self.arrow(acting, ent["x"], ff + ".x")
            a = self.arrow(h, ent["h"], ff + ".h")
            if (x, a) not in iso.sigma:
                raise InstanceError("%r does not act on %r" % (x, a), field=ff)
            alpha[(x, a)] = self.matrix(ent["matrix"], ff + ".matrix")
        return spec["bundle"], BundleIsoAction(iso, b, alpha, name=key)

    def run(self):
        d = self.doc
        inst = self.inst
        for k, spec in d["groupoids"].items():
            inst.groupoids[k] = self.groupoid(k, spec)
        for k, spec in d.get("cocycles", {}).items():
            inst.cocycles[k] = self.cocycle(k, spec)
        for k, spec in d["bundles"].items():
            inst.bundles[k] = self.bundle(k, spec)
        owners = {}
        for k, spec in d.get("actions", {}).items():
            owners[k] = self.action(k, spec)
            inst.actions[k] = owners[k][1]
        inst._action_owner = owners
        for k, spec in d.get("subgroupoids", {}).items():
            f = "subgroupoids.%s" % k
            g = self.ref(inst.groupoids, spec["groupoid"], f + ".groupoid")
            arrows = [self.arrow(g, a, "%s.arrows[%d]" % (f, i)) for i, a in enumerate(spec["arrows"])]
            try:
                inst.subgroupoids[k] = subgroupoid(g, arrows, name=k)
            except ValueError as exc:
                raise InstanceError(str(exc), field=f) from None
        inst.claims = d.get("claims", {})
        return inst


def load_document(doc, path=None):
    errors = sorted(jsonschema.Draft7Validator(schema()).iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise InstanceError("schema: %s" % e.message, field=_path(e.absolute_path) or "(root)")
    inst = Instance(doc["name"], path=path)
    return _Loader(doc, inst).run()


def load_instance(path):
    """Parse, schema-check and resolve an instance file; raises InstanceError."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InstanceError("cannot read %s: %s" % (path, exc.strerror)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError("JSON parse error: %s" % exc.msg, line=exc.lineno, column=exc.colno) from None
    return load_document(doc, path=str(path))
