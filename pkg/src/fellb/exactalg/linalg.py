"""Dense exact linear algebra over Q(i).

Vectors are tuples of :class:`Gauss`; matrices are lists of row tuples.
"""

from .scalars import ZERO, ONE, Gauss, coerce


def vec(values):
    return tuple(coerce(v) for v in values)


def zero_vec(n):
    return (ZERO,) * n


def unit_vec(n, i):
    return tuple(ONE if k == i else ZERO for k in range(n))


def is_zero(v):
    return not any(v)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    if not c:
        return (ZERO,) * len(v)
    return tuple(c * a for a in v)


def vconj(v):
    return tuple(a.conjugate() for a in v)


def axpy(acc, c, v):
    """acc + c*v, with acc a list updated in place."""
    if not c:
        return acc
    for k, a in enumerate(v):
        if a:
            acc[k] = acc[k] + c * a
    return acc


def identity(n):
    return [unit_vec(n, i) for i in range(n)]


def zeros(r, c):
    return [(ZERO,) * c for _ in range(r)]


def transpose(m, ncols=None):
    if not m:
        return [() for _ in range(ncols or 0)]
    return [tuple(row[j] for row in m) for j in range(len(m[0]))]


def matvec(m, v):
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in m)


def matmul(a, b):
    bt = transpose(b)
    return [tuple(sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt) for row in a]


def conj_transpose(m):
    return [tuple(x.conjugate() for x in row) for row in transpose(m)]


def from_columns(cols, nrows):
    if not cols:
        return [() for _ in range(nrows)]
    return [tuple(c[i] for c in cols) for i in range(nrows)]


def rref(rows, ncols):
    """Reduced row-echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != ONE:
            inv = ONE / piv
            m[r] = [x * inv if x else x for x in m[r]]
        row = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    for k in range(c, ncols):
                        if row[k]:
                            mi[k] = mi[k] - f * row[k]
        pivots.append(c)
        r += 1
    return [tuple(x) for x in m[:r]], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def nullspace(m, ncols):
    """Basis of {x : m x = 0}."""
    red, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(m, b, ncols):
    """One solution x of m x = b, or None."""
    aug = [tuple(row) + (bi,) for row, bi in zip(m, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(m):
    n = len(m)
    aug = [tuple(row) + unit_vec(n, i) for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


class Subspace:
    """A subspace of Q(i)^n stored by its canonical RREF basis.

    Equality and hashing go through the canonical basis, so two spans are
    equal exactly when their bases coincide.
    """

    __slots__ = ("ambient", "basis", "pivots", "_hash")

    def __init__(self, ambient, vectors=()):
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient:
                raise ValueError("vector of length %d in ambient dimension %d" % (len(v), ambient))
        self.ambient = ambient
        basis, pivots = rref(vectors, ambient)
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)
        self._hash = None

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def full(cls, n):
        return cls(n, identity(n))

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def is_full(self):
        return len(self.basis) == self.ambient

    def reduce(self, v):
        """Residue of v modulo the subspace (zero iff v lies in it)."""
        r = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = r[p]
            if c:
                for k, a in enumerate(row):
                    if a:
                        r[k] = r[k] - c * a
        return tuple(r)

    def __contains__(self, v):
        return not any(self.reduce(v))

    def __le__(self, other):
        self._check(other)
        return all(b in other for b in self.basis)

    def __ge__(self, other):
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient, self.basis))
        return self._hash

    def _check(self, other):
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ: %d vs %d" % (self.ambient, other.ambient))

    def __add__(self, other):
        self._check(other)
        return Subspace(self.ambient, self.basis + other.basis)

    def add_vectors(self, vectors):
        """Span of self together with vectors; returns self when nothing new is added."""
        new = [v for v in vectors if any(self.reduce(v))]
        if not new:
            return self
        return Subspace(self.ambient, self.basis + tuple(new))

    def annihilator(self):
        """{w : w . v = 0 for all v}, with the bilinear (unconjugated) pairing."""
        if not self.basis:
            return Subspace.full(self.ambient)
        return Subspace(self.ambient, nullspace(self.basis, self.ambient))

    def __and__(self, other):
        self._check(other)
        if self <= other:
            return self
        if other <= self:
            return other
        return (self.annihilator() + other.annihilator()).annihilator()

    def image(self, matrix, target_dim):
        """Image under a linear map given as a target_dim x ambient matrix."""
        return Subspace(target_dim, [matvec(matrix, b) for b in self.basis])

    def conj_image(self, matrix, target_dim):
        """Image under the conjugate-linear map v -> matrix . conj(v)."""
        return Subspace(target_dim, [matvec(matrix, vconj(b)) for b in self.basis])

    def __repr__(self):
        return "Subspace(%d, dim=%d)" % (self.ambient, self.dim)


def span(vectors, ambient):
    return Subspace(ambient, vectors)


def canonical_subspace(vectors, ambient):
    return Subspace(ambient, [vec(v) for v in vectors])


def subspace_intersect(a, b):
    return a & b


def trace(m):
    return sum((m[i][i] for i in range(len(m))), ZERO)


def charpoly(m):
    """Coefficients [c_0, ..., c_n] of det(tI - m), c_n = 1 (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = zeros(n, n)
    for k in range(1, n + 1):
        prev = matmul(m, mk) if k > 1 else mk
        c = coeffs[n - k + 1]
        mk = [tuple(prev[i][j] + (c if i == j else ZERO) for j in range(n)) for i in range(n)]
        coeffs[n - k] = -trace(matmul(m, mk)) / Gauss(k)
    return coeffs


def det(m):
    n = len(m)
    if n == 0:
        return ONE
    c0 = charpoly(m)[0]
    return -c0 if n % 2 else c0


def is_hermitian(m):
    n = len(m)
    return all(m[i][j] == m[j][i].conjugate() for i in range(n) for j in range(i, n))


def psd_check(m):
    """Exact positive-semidefiniteness test for a Hermitian matrix.

    A Hermitian matrix has real spectrum, so its characteristic polynomial
    det(tI - m) = sum c_k t^k has only nonnegative roots iff the
    coefficients alternate: (-1)^(n-k) c_k >= 0 for every k.
    """
    m = [tuple(coerce(x) for x in row) for row in m]
    if not is_hermitian(m):
        raise ValueError("psd_check needs a Hermitian matrix")
    n = len(m)
    coeffs = charpoly(m)
    for k, c in enumerate(coeffs):
        if c.im:
            raise ArithmeticError("non-real characteristic coefficient for a Hermitian matrix")
        if (n - k) % 2:
            if c.re > 0:
                return False
        elif c.re < 0:
            return False
    return True


def positive_definite(m):
    return psd_check(m) and bool(det(m))
