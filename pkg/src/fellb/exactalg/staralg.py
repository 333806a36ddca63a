"""Finite-dimensional *-algebras given by structure constants."""

from fractions import Fraction

from .linalg import (
    Subspace, axpy, from_columns, identity, is_hermitian, matvec, nullspace,
    positive_definite, psd_check, rref, solve, unit_vec, vconj, zero_vec, vsub,
)
from .scalars import ZERO, ONE, Gauss


class NotCStarAlgebra(ValueError):
    pass


class UnsupportedInstance(ValueError):
    """Raised when an exact answer would need a field extension of Q(i)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StarAlgebra:
    """A *-algebra presented by structure constants.

    ``mult[i][j]`` is the coordinate vector of e_i e_j and ``invol`` the
    matrix J with a* = J conj(a).
    """

    def __init__(self, dim, mult, invol):
        self.dim = dim
        self.mult = mult
        self.invol = invol
        self._unit = None

    def mul(self, a, b):
        acc = [ZERO] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            row = self.mult[i]
            for j, y in enumerate(b):
                if y:
                    axpy(acc, x * y, row[j])
        return tuple(acc)

    def star(self, a):
        return matvec(self.invol, vconj(a))

    def basis(self):
        return [unit_vec(self.dim, i) for i in range(self.dim)]

    def left_matrix(self, a):
        return from_columns([self.mul(a, e) for e in self.basis()], self.dim)

    def right_matrix(self, a):
        return from_columns([self.mul(e, a) for e in self.basis()], self.dim)

    def unit(self):
        if self._unit is None:
            n = self.dim
            # u e_j = e_j and e_j u = e_j, linear in the coordinates of u
            rows, rhs = [], []
            for j in range(n):
                for k in range(n):
                    rows.append(tuple(self.mult[i][j][k] for i in range(n)))
                    rhs.append(ONE if j == k else ZERO)
                    rows.append(tuple(self.mult[j][i][k] for i in range(n)))
                    rhs.append(ONE if j == k else ZERO)
            u = solve(rows, rhs, n) if n else ()
            if u is None:
                raise NotCStarAlgebra("algebra has no unit")
            self._unit = u
        return self._unit

    def trace(self, a):
        return sum((self.left_matrix(a)[i][i] for i in range(self.dim)), ZERO)

    def trace_form(self):
        """Gram matrix T[i][j] = tr L(e_i* e_j); tr L(a* b) = conj(a) . T . b."""
        basis = self.basis()
        stars = [self.star(e) for e in basis]
        return [tuple(self.trace(self.mul(stars[i], basis[j])) for j in range(self.dim))
                for i in range(self.dim)]

    def is_cstar(self):
        t = self.trace_form()
        return is_hermitian(t) and positive_definite(t)

    def axiom_failures(self):
        """Associativity / involution / C*-criterion failures as (check, detail) pairs."""
        out = []
        b = self.basis()
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    if self.mul(self.mul(b[i], b[j]), b[k]) != self.mul(b[i], self.mul(b[j], b[k])):
                        out.append(("associativity", (i, j, k)))
        for i in range(self.dim):
            if self.star(self.star(b[i])) != b[i]:
                out.append(("involutive", (i,)))
            for j in range(self.dim):
                if self.star(self.mul(b[i], b[j])) != self.mul(self.star(b[j]), self.star(b[i])):
                    out.append(("anti-multiplicative", (i, j)))
        if not out:
            t = self.trace_form()
            if not is_hermitian(t):
                out.append(("trace form Hermitian", ()))
            elif not positive_definite(t):
                out.append(("C*-criterion", ()))
        return out

    def center(self):
        """Basis of {z : z e_j = e_j z for all j}."""
        n = self.dim
        rows = []
        for j in range(n):
            for k in range(n):
                rows.append(tuple(self.mult[i][j][k] - self.mult[j][i][k] for i in range(n)))
        return nullspace(rows, n)

    def ideal_span(self, vectors):
        """Two-sided ideal generated by vectors (unital, so A v A suffices)."""
        b = self.basis()
        out = [self.mul(self.mul(x, v), y) for v in vectors for x in b for y in b]
        return Subspace(self.dim, out)

    def gram_operator(self, entries, size):
        """Hermitian matrix representing [entries[i][j]] in M_size(A) on A^size.

        Blocks are T . L(entries[i][j]) with T the trace form, so positivity
        of the element matches positive semidefiniteness of the matrix.
        """
        t = self.trace_form()
        n = self.dim
        big = [[ZERO] * (size * n) for _ in range(size * n)]
        for i in range(size):
            for j in range(size):
                blk = _matmul(t, self.left_matrix(entries[i][j]))
                for r in range(n):
                    for c in range(n):
                        big[i * n + r][j * n + c] = blk[r][c]
        return [tuple(r) for r in big]

    def is_positive_matrix(self, entries, size):
        """Is [entries[i][j]] a positive element of M_size(A)?"""
        if self.dim == 0 or size == 0:
            return True
        g = self.gram_operator(entries, size)
        if not is_hermitian(g):
            return False
        return psd_check(g)


def _matmul(a, b):
    n = len(b[0]) if b else 0
    return [tuple(sum((row[k] * b[k][c] for k in range(len(row)) if row[k] and b[k][c]), ZERO)
                  for c in range(n)) for row in a]


def _min_poly(alg, x, e):
    """Monic minimal polynomial of x in the unital algebra eAe (unit e), low degree first."""
    powers = [e]
    while True:
        nxt = alg.mul(powers[-1], x)
        cols = powers
        m = from_columns(cols, alg.dim)
        sol = solve(m, nxt, len(cols))
        if sol is not None:
            return [-c for c in sol] + [ONE]
        powers.append(nxt)
        if len(powers) > alg.dim + 1:
            raise ArithmeticError("minimal polynomial degree exceeds dimension")


def _gauss_roots(coeffs):
    """Distinct roots of a polynomial over Q(i), requiring a full Q(i) splitting."""
    deg = len(coeffs) - 1
    if deg == 1:
        return [-coeffs[0] / coeffs[1]]
    import sympy

    t = sympy.Symbol("t")
    poly = sum((sympy.Rational(int(c.re.numerator), int(c.re.denominator))
                + sympy.I * sympy.Rational(int(c.im.numerator), int(c.im.denominator))) * t ** k
               for k, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.expand(poly), t, gaussian=True)
    roots = []
    for f, mult in factors:
        p = sympy.Poly(f, t)
        if p.degree() > 1:
            raise UnsupportedInstance(
                "central idempotents are not rational over Q(i)", witness=str(p.as_expr()))
        if mult > 1:
            raise NotCStarAlgebra("center is not semisimple (repeated root)")
        a1, a0 = p.all_coeffs()
        r = sympy.nsimplify(-a0 / a1)
        re_, im = sympy.re(r), sympy.im(r)
        roots.append(Gauss(_frac(re_), _frac(im)))
    return roots


def _frac(r):
    import sympy

    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def _sort_key(v):
    first = next((k for k, x in enumerate(v) if x), len(v))
    return (first, tuple((-x.re, -x.im) for x in v))


def central_blocks(alg):
    """Minimal central idempotents of a finite-dimensional C*-algebra.

    Each center basis element is diagonalised inside every current block
    eZ by Lagrange interpolation on the roots of its minimal polynomial;
    once every center element acts as a scalar on a block the block is
    minimal.
    """
    if alg.dim == 0:
        return []
    if not alg.is_cstar():
        raise NotCStarAlgebra("trace form is not positive definite")
    idems = [alg.unit()]
    for z in alg.center():
        split = []
        for e in idems:
            x = alg.mul(e, z)
            poly = _min_poly(alg, x, e)
            if len(poly) == 2:
                split.append(e)
                continue
            roots = _gauss_roots(poly)
            for i, lam in enumerate(roots):
                p = e
                for j, mu in enumerate(roots):
                    if i != j:
                        factor = vsub(x, tuple(mu * c for c in e))
                        p = tuple(c / (lam - mu) for c in alg.mul(p, factor))
                split.append(p)
        idems = split
    return sorted(idems, key=_sort_key)


def block_ideal(alg, idems):
    """The ideal (sum of idems) A as a subspace."""
    b = alg.basis()
    return Subspace(alg.dim, [alg.mul(e, x) for e in idems for x in b])
