import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from clusterchar.exactfield import (
    DuplicateAbscissa,
    FieldElem,
    InconsistentSystem,
    Matrix,
    interpolate,
    is_prime,
    minimal_polynomial,
    next_prime,
    poly_eval,
    poly_roots,
    primes_from,
)

PRIMES = st.sampled_from([2, 3, 5, 7, 13])


@st.composite
def matrices(draw, p=None, max_side=5):
    p = p or draw(PRIMES)
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(rows, p, c)


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert next_prime(13) == 17
    assert primes_from((2, 3), 5) == [2, 3, 5, 7, 11]


@given(PRIMES, st.integers(), st.integers(), st.integers())
def test_field_axioms(p, a, b, c):
    x, y, z = FieldElem(a % p, p), FieldElem(b % p, p), FieldElem(c % p, p)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if int(x):
        assert x * x.inverse() == FieldElem(1, p)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        FieldElem(0, 5).inverse()


@settings(max_examples=60)
@given(matrices())
def test_rank_plus_nullity(m):
    K = m.kernel_basis()
    assert m.rank() + K.cols == m.cols
    assert (m @ K).is_zero()


@settings(max_examples=60)
@given(matrices())
def test_rank_of_transpose(m):
    assert m.rank() == m.T.rank()


@settings(max_examples=40)
@given(st.integers(1, 4), PRIMES, st.integers(0, 10 ** 6))
def test_inverse_and_solve(n, p, seed):
    rng = random.Random(seed)
    m = Matrix.random(n, n, p, rng)
    if not m.is_invertible():
        return
    assert m @ m.inverse() == Matrix.identity(n, p)
    b = Matrix.random(n, 2, p, rng)
    assert m @ m.solve(b) == b


def test_solve_inconsistent():
    m = Matrix.from_rows([[1, 0], [0, 0]], 5)
    with pytest.raises(InconsistentSystem):
        m.solve(Matrix.from_rows([[0], [1]], 5))


def test_rref_is_fully_reduced():
    red, piv = Matrix.from_rows([[1, 2, 1], [1, 2, 3]], 5).rref()
    assert piv == [0, 2]
    assert red.data[0] == (1, 2, 0)


@settings(max_examples=40)
@given(st.lists(st.integers(0, 12), min_size=1, max_size=5), st.sampled_from([13, 17, 4099, 4111]))
def test_poly_roots_matches_brute_force(coeffs, p):
    poly = list(coeffs) + [1]
    found = poly_roots(poly, p)
    if p < 200:
        expected = [x for x in range(p) if poly_eval(poly, x, p) == 0]
        assert sorted(found) == expected
    else:
        assert all(poly_eval(poly, x, p) == 0 for x in found)
        assert len(found) == len(set(found))


@settings(max_examples=40)
@given(st.integers(1, 4), st.integers(0, 10 ** 6))
def test_minimal_polynomial_annihilates(n, seed):
    p = 7
    m = Matrix.random(n, n, p, random.Random(seed))
    mp = minimal_polynomial(m)
    assert mp[-1] == 1
    acc = Matrix.zeros(n, n, p)
    for k, c in enumerate(mp):
        acc = acc + m.power(k).scale(c)
    assert acc.is_zero()


def test_interpolate_known_polynomial():
    poly = interpolate([(2, 3), (3, 4)])
    assert poly.coefficients == (Fraction(1), Fraction(1))
    assert poly(1) == 2
    assert str(poly) == "q + 1"


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6))
def test_interpolation_reproduces_every_point(coeffs):
    xs = [2, 3, 5, 7, 11, 13, 17][:len(coeffs) + 1]
    pts = [(x, sum(c * x ** k for k, c in enumerate(coeffs))) for x in xs]
    poly = interpolate(pts)
    assert all(poly(x) == y for x, y in pts)
    assert poly(1) == sum(coeffs)


def test_duplicate_abscissa():
    with pytest.raises(DuplicateAbscissa):
        interpolate([(2, 1), (2, 1)])
