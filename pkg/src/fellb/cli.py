"""Command line front end: JSON reports, DOT pictures, exit status 0 / 2 / 3."""

import argparse
import json
import sys
import time

from .dot import ideal_label, ladder_to_dot, lattice_to_dot
from .equivalence import (
    equiv_from_action_product, equiv_from_principal, equiv_from_semidirect, equiv_from_subgroupoid,
    ideal_to_module, module_to_ideal, rieffel_map, validate_equivalence_bundle,
)
from .exactalg.staralg import UnsupportedInstance
from .fellbundle import (
    action_product, orbit_bundle, restrict_bundle, semidirect_bundle, validate_bundle,
    validate_bundle_action,
)
from .groupoid import iso_freeness_witnesses, translation_space, validate_groupoid
from .ideals import check_lattice_isomorphism, enumerate_ideals, enumerate_invariant_ideals
from .instance import InstanceError, load_instance
from .ladder import (
    build_left_ladder, build_right_ladder, ladder_lemma_check, theorem_bonus_ladder_check,
    theorem_fb_ladder_check, verify_strut_left, verify_strut_right,
)
from .report import _plain

EXIT_OK, EXIT_FAIL, EXIT_UNSUPPORTED = 0, 2, 3


class Run:
    """Collects checks and results for one command."""

    def __init__(self, command, args):
        self.command = command
        self.args = args
        self.checks = []
        self.results = {}
        self.timing = {}
        self.unsupported = None

    def check(self, name, outcome, **witness):
        """outcome: a ValidationReport, or a bool plus a witness for the failing case."""
        if hasattr(outcome, "violations"):
            entry = {"name": name, "status": "pass" if outcome.ok else "fail"}
            if not outcome.ok:
                entry["violations"] = [v.to_json() for v in outcome.violations]
        else:
            entry = {"name": name, "status": "pass" if outcome else "fail"}
            if not outcome:
                entry["witness"] = _plain(witness) if witness else {"detail": "no further data"}
        self.checks.append(entry)
        return entry["status"] == "pass"

    @property
    def status(self):
        if self.unsupported is not None:
            return "unsupported"
        return "pass" if all(c["status"] == "pass" for c in self.checks) else "fail"

    def exit_code(self):
        return {"pass": EXIT_OK, "fail": EXIT_FAIL, "unsupported": EXIT_UNSUPPORTED}[self.status]

    def to_json(self, timing=False):
        out = {"command": self.command, "args": self.args, "status": self.status,
               "checks": self.checks, "results": _plain(self.results)}
        if self.unsupported is not None:
            out["unsupported"] = self.unsupported
        if timing:
            out["timing"] = {k: round(v, 4) for k, v in self.timing.items()}
        return out


def _claim(run, inst, section, key, got):
    want = inst.claims.get(section, {}).get(key)
    if want is not None:
        run.check("claims/%s/%s" % (section, key), want == got, expected=want, got=got)


def _lattice_json(lat):
    return {"count": len(lat),
            "ideals": [{"index": k, "label": ideal_label(j), "dims": list(j.dims())}
                       for k, j in enumerate(lat.ideals)],
            "meet": lat.meet, "join": lat.join, "hasse": [list(e) for e in lat.hasse_edges()]}


def _need_action(inst, args):
    act = inst.action(args.action, inst.bundle_id(args.bundle))
    if act is None:
        raise KeyError("this command needs an action and the instance has none")
    return act


# ---------------------------------------------------------------- commands

def cmd_validate(run, inst, args):
    for k, g in inst.groupoids.items():
        run.check("groupoid/%s" % k, validate_groupoid(g))
    for k, b in inst.bundles.items():
        rep = validate_bundle(b)
        run.check("bundle/%s" % k, rep)
        if rep.ok:
            blocks = {str(u): len(b.blocks(u)) for u in b.base.units}
            run.results.setdefault("blocks", {})[k] = blocks
        run.results.setdefault("bundles", {})[k] = {
            "arrows": len(b.base.arrows), "units": len(b.base.units), "total_dim": sum(b.dims.values())}
    for k, a in inst.actions.items():
        run.check("action/%s" % k, validate_bundle_action(a))
    if "valid" in inst.claims:
        got = all(c["status"] == "pass" for c in run.checks)
        run.check("claims/valid", got == inst.claims["valid"], expected=inst.claims["valid"], got=got)


def cmd_product(run, inst, args):
    a = inst.bundle(args.bundle)
    kind = args.kind
    if kind == "semidirect":
        prod = semidirect_bundle(a, _need_action(inst, args))
    elif kind == "action":
        prod, tact = action_product(a, *translation_space(a.base))
        run.check("translation action", validate_bundle_action(tact))
    elif kind == "restrict":
        if not inst.subgroupoids:
            raise KeyError("restrict needs a subgroupoid in the instance")
        sub = inst.subgroupoids[args.subgroupoid or next(iter(inst.subgroupoids))]
        prod = restrict_bundle(a, sub)
    else:
        act = inst.action(args.action, inst.bundle_id(args.bundle))
        if act is None:
            # G acts freely on A x| G by translation; its orbit bundle recovers A
            ab, act = action_product(a, *translation_space(a.base))
            a = ab
        free = not iso_freeness_witnesses(act.iso)
        run.check("free action", free, action=act.name)
        if not free:
            return
        prod = orbit_bundle(a, act)
    run.check("product bundle", validate_bundle(prod))
    run.results["product"] = {"kind": kind, "name": prod.name, "arrows": len(prod.base.arrows),
                              "units": len(prod.base.units), "total_dim": sum(prod.dims.values())}


def cmd_ideals(run, inst, args):
    bid = inst.bundle_id(args.bundle)
    a = inst.bundle(bid)
    if args.invariant:
        aid = inst.action_id(args.action, bid)
        act = _need_action(inst, args)
        lat = enumerate_invariant_ideals(a, act)
        oracle = enumerate_invariant_ideals(a, act, method="subsets")
        _claim(run, inst, "invariant_ideals", aid, len(lat))
    else:
        lat = enumerate_ideals(a)
        oracle = enumerate_ideals(a, method="subsets")
        _claim(run, inst, "ideals", bid, len(lat))
    run.check("subsets oracle", lat.ideals == oracle.ideals, components=len(lat), subsets=len(oracle))
    run.results["lattice"] = _lattice_json(lat)
    run.results["dot"] = lattice_to_dot(lat)


def _equivalence(inst, args, a):
    c = args.construction
    if c == "left":
        return equiv_from_semidirect(a, _need_action(inst, args))
    if c == "right":
        return equiv_from_action_product(a)
    if c == "subgroupoid":
        if not inst.subgroupoids:
            raise KeyError("the subgroupoid construction needs a subgroupoid in the instance")
        sub = inst.subgroupoids[args.subgroupoid or next(iter(inst.subgroupoids))]
        return equiv_from_subgroupoid(a, sub)
    act = inst.action(args.action, inst.bundle_id(args.bundle))
    if act is None:
        ab, act = action_product(a, *translation_space(a.base))
        a = ab
    return equiv_from_principal(a, act)


def cmd_rieffel(run, inst, args):
    a = inst.bundle(args.bundle)
    e = _equivalence(inst, args, a)
    run.check("equivalence axioms", validate_equivalence_bundle(e))
    left, right = enumerate_ideals(e.left), enumerate_ideals(e.right)
    images = [right.index(rieffel_map(e, j, "left")) for j in left]
    run.check("lattice isomorphism", check_lattice_isomorphism(left, right, images))
    trips = [k for k, j in enumerate(left) if module_to_ideal(e, ideal_to_module(e, j, "left"), "left") != j]
    run.check("round trip left", not trips, ideals=trips)
    trips = [k for k, j in enumerate(right) if module_to_ideal(e, ideal_to_module(e, j, "right"), "right") != j]
    run.check("round trip right", not trips, ideals=trips)
    run.results.update(construction=args.construction, equivalence=e.name,
                       left=_lattice_json(left), right=_lattice_json(right), mapping=images)


def _ladder(inst, args):
    bid = inst.bundle_id(args.bundle)
    a = inst.bundle(bid)
    if args.side == "left":
        act = _need_action(inst, args)
        return a, act, inst.action_id(args.action, bid), build_left_ladder(a, act)
    return a, None, bid, build_right_ladder(a)


def cmd_ladder(run, inst, args):
    a, act, key, d = _ladder(inst, args)
    cert = ladder_lemma_check(d)
    run.check("ladder lemma", cert)
    if args.side == "left":
        run.check("left strut", verify_strut_left(a, act, d))
        thm = theorem_fb_ladder_check(a, act, d)
        run.check("rung isomorphism I -> I<G", thm)
    else:
        run.check("right strut", verify_strut_right(a, d))
        thm = theorem_bonus_ladder_check(a, d)
        run.check("rung isomorphism I -> I*G", thm)
    _claim(run, inst, "ladder_%s" % args.side, key, list(d.sizes()))
    run.results.update(side=args.side, sizes=list(d.sizes()), labels=d.labels,
                       certificate=cert.facts, rung_mapping=thm.facts.get("mapping"),
                       invariance_under="translation in the last coordinate")


def cmd_export_dot(run, inst, args):
    if args.what == "lattice":
        bid = inst.bundle_id(args.bundle)
        a = inst.bundle(bid)
        lat = enumerate_invariant_ideals(a, _need_action(inst, args)) if args.invariant else enumerate_ideals(a)
        text = lattice_to_dot(lat)
    else:
        _, _, _, d = _ladder(inst, args)
        text = ladder_to_dot(d, name="%s ladder" % args.side)
    run.results["dot"] = text


COMMANDS = {"validate": cmd_validate, "product": cmd_product, "ideals": cmd_ideals,
            "rieffel": cmd_rieffel, "ladder": cmd_ladder, "export-dot": cmd_export_dot}


def build_parser():
    p = argparse.ArgumentParser(prog="fellb", description="Exact checks for ideals of Fell bundles over finite groupoids.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("instance", help="instance JSON file")
    common.add_argument("--bundle", help="bundle id (default: the first one)")
    common.add_argument("--action", help="action id (default: the first one on the bundle)")
    common.add_argument("--subgroupoid", help="subgroupoid id (default: the first one)")
    common.add_argument("--timing", action="store_true", help="add wall-clock timings to the report")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="run every axiom suite")
    q = sub.add_parser("product", parents=[common], help="build and validate a derived bundle")
    q.add_argument("--kind", required=True, choices=["semidirect", "action", "restrict", "orbit"])
    q = sub.add_parser("ideals", parents=[common], help="enumerate the ideal lattice")
    q.add_argument("--invariant", action="store_true", help="only ideals invariant under the action")
    q = sub.add_parser("rieffel", parents=[common], help="Rieffel correspondence through an equivalence")
    q.add_argument("--construction", required=True, choices=["left", "right", "subgroupoid", "principal"])
    q = sub.add_parser("ladder", parents=[common], help="ladder diagram with strut and rung certificates")
    q.add_argument("--side", required=True, choices=["left", "right"])
    q = sub.add_parser("export-dot", parents=[common], help="DOT for a lattice or a ladder")
    q.add_argument("--what", required=True, choices=["lattice", "ladder"])
    q.add_argument("--side", default="left", choices=["left", "right"])
    q.add_argument("--invariant", action="store_true")
    q.add_argument("-o", "--output", help="write DOT here instead of stdout")
    return p


def run(argv=None, out=None):
    """Execute one command; returns (exit status, report dict)."""
    args = build_parser().parse_args(argv)
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "timing") and v not in (None, False)}
    r = Run(args.command, echo)
    t0 = time.perf_counter()
    try:
        inst = load_instance(args.instance)
        r.timing["load"] = time.perf_counter() - t0
        r.results["instance"] = inst.name
        COMMANDS[args.command](r, inst, args)
    except InstanceError as exc:
        r.check("instance", False, **exc.to_json())
    except UnsupportedInstance as exc:
        r.unsupported = {"reason": str(exc), "witness": getattr(exc, "witness", None)}
    except (KeyError, ValueError) as exc:
        r.check("input", False, error=str(exc.args[0]) if exc.args else repr(exc))
    r.timing["total"] = time.perf_counter() - t0
    return r.exit_code(), r.to_json(timing=args.timing)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    code, report = run(argv)
    dot = report["results"].get("dot") if report["command"] == "export-dot" else None
    if dot is not None and code == EXIT_OK:
        opts = build_parser().parse_args(argv)
        if opts.output:
            with open(opts.output, "w", encoding="utf-8") as fh:
                fh.write(dot)
        else:
            sys.stdout.write(dot)
    else:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
