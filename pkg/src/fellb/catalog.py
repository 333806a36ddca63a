"""Named small instances used by the tests, fixtures and the CLI."""

from .exactalg.linalg import identity, inverse, matmul, unit_vec, zero_vec
from .exactalg.scalars import ZERO, ONE, I, coerce
from .exactalg.staralg import StarAlgebra
from .fellbundle import BundleIsoAction, cocycle_line_bundle, trivial_action_bundle
from .groupoid import (
    IsoAction, cyclic_group, klein_four, pair_groupoid, point_groupoid, trivial_iso_action,
)


def diagonal_algebra(n):
    """C^n with pointwise product and coordinatewise conjugation."""
    mult = [[unit_vec(n, i) if i == j else zero_vec(n) for j in range(n)] for i in range(n)]
    return StarAlgebra(n, mult, identity(n))


def matrix_algebra(n):
    """M_n(C) in the matrix-unit basis e_(i,j) -> index i*n + j."""
    d = n * n
    mult = [[unit_vec(d, (a // n) * n + b % n) if a % n == b // n else zero_vec(d)
             for b in range(d)] for a in range(d)]
    invol = [tuple(ONE if c == (r % n) * n + r // n else ZERO for c in range(d)) for r in range(d)]
    return StarAlgebra(d, mult, invol)


def group_algebra(g):
    """C[G] for a group G, basis = group elements, g* = g^-1."""
    arrows = g.arrows
    d = len(arrows)
    idx = {a: k for k, a in enumerate(arrows)}
    mult = [[unit_vec(d, idx[g.comp[(a, b)]]) for b in arrows] for a in arrows]
    invol = [tuple(ONE if arrows[c] == g.inv[arrows[r]] else ZERO for c in range(d)) for r in range(d)]
    return StarAlgebra(d, mult, invol)


def c2diag():
    """C + C over a point."""
    return trivial_action_bundle(diagonal_algebra(2), point_groupoid("pt"), name="C2diag")


def line_z2():
    g = cyclic_group(2)
    return cocycle_line_bundle(g, {(x, y): ONE for x in g.arrows for y in g.arrows}, name="lineZ2")


def m2pair():
    """Matrix units as a line bundle over the pair groupoid on two points."""
    return trivial_action_bundle(diagonal_algebra(1), pair_groupoid([1, 2]), name="M2pair")


def cocycle_from_projective(g, mats):
    """sigma(x, y) with u_x u_y = sigma(x, y) u_xy, for a projective representation given as matrices."""
    out = {}
    for (x, y), xy in g.comp.items():
        prod = matmul(matmul(mats[x], mats[y]), inverse(mats[xy]))
        c = prod[0][0]
        if prod != [tuple(c if i == j else ZERO for j in range(len(prod))) for i in range(len(prod))]:
            raise ValueError("not a projective representation at %r" % ((x, y),))
        out[(x, y)] = c
    return out


def _m(rows):
    return [tuple(coerce(v) for v in r) for r in rows]


PAULI = {
    "I": _m([[1, 0], [0, 1]]),
    "X": _m([[0, 1], [1, 0]]),
    "Z": _m([[1, 0], [0, -1]]),
    "Y": _m([[0, "-i"], ["i", 0]]),
}
PAULI["XZ"] = matmul(PAULI["X"], PAULI["Z"])


def pauli_cocycle(variant="XZ"):
    """Nontrivial cocycle on V4 from a ← X, b ← Z, c ← XZ (real, values ±1) or c ← Y (values ±1, ±i)."""
    v4 = klein_four()
    mats = {"e": PAULI["I"], "a": PAULI["X"], "b": PAULI["Z"], "c": PAULI[variant]}
    return cocycle_from_projective(v4, mats)


def v4_cocycle(variant="XZ"):
    return cocycle_line_bundle(klein_four(), pauli_cocycle(variant), name="V4cocycle")


def product_cocycle(s1, s2):
    return {k: s1[k] * s2[k] for k in s1}


def swap_action(bundle=None):
    """Z/2 swapping the two blocks of C2diag."""
    bundle = bundle or c2diag()
    g = cyclic_group(2)
    iso = trivial_iso_action(g, bundle.base)
    swap = [(ZERO, ONE), (ONE, ZERO)]
    alpha = {(x, h): (swap if x == "g" else identity(2)) for (x, h) in iso.sigma}
    return BundleIsoAction(iso, bundle, alpha, name="swap2")


def trivial_action(bundle, g=None, name="triv"):
    """g (default Z/2) acting trivially on a bundle over any base."""
    g = g or cyclic_group(2)
    iso = trivial_iso_action(g, bundle.base)
    return BundleIsoAction(iso, bundle, {(x, h): identity(bundle.dims[h]) for (x, h) in iso.sigma}, name=name)


def point_action(bundle):
    """The trivial group acting trivially."""
    return trivial_action(bundle, point_groupoid("1", name="1"), name="trivial-group")
