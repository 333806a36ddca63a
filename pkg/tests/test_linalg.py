import itertools

import sympy
from hypothesis import given, strategies as st

from fellb.exactalg import Gauss, I, Subspace, charpoly, det, is_hermitian, nullspace, positive_definite, psd_check, rref
from fellb.exactalg.linalg import conj_transpose, inverse, matmul, rank, solve

small = st.integers(-3, 3)
entry = st.builds(lambda a, b: Gauss(a, b), small, small)


def matrices(rows, cols):
    return st.lists(st.lists(entry, min_size=cols, max_size=cols).map(tuple), min_size=rows, max_size=rows)


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(int(x.re.numerator), int(x.re.denominator))
                          + sympy.I * sympy.Rational(int(x.im.numerator), int(x.im.denominator)) for x in r] for r in m])


def principal_minors_psd(m):
    """Sylvester oracle: a Hermitian matrix is PSD iff every principal minor is >= 0."""
    n = len(m)
    s = to_sympy(m)
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            minor = sympy.simplify(s.extract(list(idx), list(idx)).det())
            if sympy.re(minor) < 0:
                return False
    return True


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: matrices(r, c).map(lambda m: (m, c)))))
def test_rank_and_nullspace_against_sympy(mc):
    m, c = mc
    s = to_sympy(m)
    assert rank(m, c) == s.rank()
    ns = nullspace(m, c)
    assert len(ns) == c - s.rank()
    for v in ns:
        assert all(sum((a * b for a, b in zip(row, v)), Gauss(0)) == 0 for row in m)


@given(matrices(3, 3))
def test_charpoly_and_det_against_sympy(m):
    t = sympy.Symbol("t")
    want = sympy.Poly(to_sympy(m).charpoly(t).as_expr(), t).all_coeffs()[::-1]
    got = charpoly(m)
    assert [to_sympy([[c]])[0, 0] for c in got] == [sympy.nsimplify(w) for w in want]
    assert to_sympy([[det(m)]])[0, 0] == sympy.simplify(to_sympy(m).det())


@given(matrices(3, 3))
def test_psd_on_gram_matrices(x):
    g = matmul(conj_transpose(x), x)
    assert is_hermitian(g)
    assert psd_check(g)


@given(st.integers(1, 3).flatmap(lambda n: matrices(n, n)))
def test_psd_matches_principal_minor_oracle(x):
    n = len(x)
    h = [tuple(x[i][j] + x[j][i].conjugate() for j in range(n)) for i in range(n)]
    assert psd_check(h) == principal_minors_psd(h)


def test_psd_small_examples():
    assert psd_check([[2, 1], [1, 2]])
    assert not psd_check([[1, 0], [0, -1]])
    assert psd_check([[1, I], [-I, 1]])
    assert not positive_definite([[1, I], [-I, 1]])


@given(st.integers(1, 3).flatmap(lambda n: matrices(n, n)))
def test_inverse_and_solve(m):
    n = len(m)
    if rank(m, n) < n:
        return
    inv = inverse(m)
    assert matmul(m, inv) == [tuple(Gauss(int(i == j)) for j in range(n)) for i in range(n)]
    b = tuple(Gauss(k) for k in range(n))
    x = solve(m, b, n)
    assert tuple(sum((a * c for a, c in zip(row, x)), Gauss(0)) for row in m) == b


vectors = st.lists(st.lists(entry, min_size=3, max_size=3).map(tuple), max_size=3)


@given(vectors, vectors)
def test_subspace_lattice_laws(a, b):
    sa, sb = Subspace(3, a), Subspace(3, b)
    meet, join = sa & sb, sa + sb
    assert meet <= sa and meet <= sb and sa <= join and sb <= join
    assert join.dim + meet.dim == sa.dim + sb.dim
    assert Subspace(3, sa.basis) == sa
    for v in a:
        assert v in sa


def test_rref_is_canonical():
    rows, piv = rref([(Gauss(2), Gauss(4)), (Gauss(1), Gauss(2))], 2)
    assert piv == [0]
    assert rows == [(Gauss(1), Gauss(2))]
