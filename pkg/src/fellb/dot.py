"""Graphviz DOT text for ideal lattices and ladder diagrams."""


def _quote(s):
    return '"%s"' % str(s).replace('"', '\\"')


def ideal_label(j):
    if j.is_zero():
        return "0"
    if j.is_full():
        return "full"
    b = j.bundle
    parts = []
    for u in b.base.units:
        ks = [str(k) for k, e in enumerate(b.blocks(u)) if e in j.fibers[u]]
        if ks:
            parts.append("%s:%s" % (u, "+".join(ks)))
    return "blocks " + " ".join(parts)


def lattice_to_dot(lattice, name=None):
    """Hasse diagram, bottom to top."""
    name = name or "ideals of %s" % lattice.bundle.name
    lines = ["digraph %s {" % _quote(name), "  rankdir=BT;", "  node [shape=box];"]
    for k, j in enumerate(lattice.ideals):
        lines.append("  n%d [label=%s];" % (k, _quote("I%d: %s" % (k, ideal_label(j)))))
    for i, k in lattice.hasse_edges():
        lines.append("  n%d -> n%d;" % (i, k))
    lines.append("}")
    return "\n".join(lines) + "\n"


def ladder_to_dot(d, name="ladder"):
    """The four node sets as boxes with cardinalities; rungs solid, struts dashed."""
    from .ladder import NODES, RUNGS, STRUTS
    lab = d.labels
    lines = ["digraph %s {" % _quote(name), "  rankdir=BT;", "  node [shape=box];"]
    for n in NODES:
        lines.append("  %s [label=%s];" % (n, _quote("%s\\n|%s| = %d" % (lab.get(n, n), n, len(d.nodes[n])))))
    for m, a, b in RUNGS:
        lines.append("  %s -> %s [label=%s];" % (a, b, _quote("%s: %s" % (m, lab.get(m, m)))))
    for m, a, b in STRUTS:
        lines.append("  %s -> %s [style=dashed, label=%s];" % (a, b, _quote("%s: %s" % (m, lab.get(m, m)))))
    lines.append("}")
    return "\n".join(lines) + "\n"
