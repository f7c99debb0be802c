from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from hypdyn.matrix import (
    Matrix,
    MatrixSizeError,
    char_poly,
    det,
    evaluate_poly_at_matrix,
    exterior_power,
    inverse,
    smith_normal_form,
)
from hypdyn.poly import Poly, binomial_bounds, count_real_roots, poly_gcd, squarefree_factors
from hypdyn.spectral import (
    NotHyperbolicError,
    count_roots_outside_unit_circle,
    graeffe,
    has_unit_circle_root,
    is_roots_of_unity_only,
    spectral_radius_exceeds_one,
    unit_circle_root_count,
)

small_int = st.integers(-6, 6)


def int_matrices(min_n=1, max_n=4, square=False, lo=-6, hi=6):
    @st.composite
    def build(draw):
        r = draw(st.integers(min_n, max_n))
        c = r if square else draw(st.integers(min_n, max_n))
        rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r))
        return Matrix.from_rows(rows)

    return build()


def determinantal_divisors(m: Matrix) -> list[int]:
    """gcd of all k x k minors, via sympy determinants."""
    sm = sympy.Matrix(m.tolist())
    out = []
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for rs in itertools.combinations(range(m.rows), k):
            for cs in itertools.combinations(range(m.cols), k):
                g = gcd(g, int(sm.extract(list(rs), list(cs)).det()))
        out.append(g)
    return out


# -- Smith normal form -------------------------------------------------------------


def test_snf_zero_matrix():
    s = smith_normal_form(Matrix.zeros(2, 2))
    assert s.D == Matrix.zeros(2, 2)
    assert s.U == Matrix.identity(2) and s.V == Matrix.identity(2)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_snf_identity(n):
    assert smith_normal_form(Matrix.identity(n)).D == Matrix.identity(n)


def test_snf_worked_example():
    m = Matrix.from_rows([[2, 4], [6, 8]])
    s = smith_normal_form(m)
    assert s.D == Matrix.diag([2, 4])
    assert s.U @ m @ s.V == s.D


def test_snf_rejects_oversized():
    with pytest.raises(MatrixSizeError):
        smith_normal_form(Matrix.zeros(65, 2))


@given(int_matrices())
def test_snf_invariants(m):
    s = smith_normal_form(m)
    assert s.U @ m @ s.V == s.D
    assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1
    diag = s.diagonal
    for i in range(m.rows):
        for j in range(m.cols):
            if i != j:
                assert s.D[i, j] == 0
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert diag[: len(nz)] == nz  # nonzero entries come first
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(int_matrices(max_n=3, lo=-9, hi=9))
def test_snf_matches_determinantal_divisors(m):
    dd = determinantal_divisors(m)
    diag = smith_normal_form(m).diagonal
    prod = 1
    for k, d in enumerate(diag):
        prod *= d
        assert prod == dd[k]


def test_snf_is_deterministic():
    m = Matrix.from_rows([[3, 5, 7], [2, 4, 6], [1, 1, 9]])
    a, b = smith_normal_form(m), smith_normal_form(m)
    assert (a.U, a.D, a.V) == (b.U, b.D, b.V)


# -- determinants, inverses, characteristic polynomials ------------------------------


@given(int_matrices(square=True, max_n=5))
def test_det_matches_sympy(m):
    assert det(m) == sympy.Matrix(m.tolist()).det()


@given(int_matrices(square=True, max_n=4))
def test_inverse_roundtrip(m):
    if det(m) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
    else:
        assert m @ inverse(m) == Matrix.identity(m.rows)


@pytest.mark.parametrize("rows, coeffs", [
    ([[1, 0], [0, 1]], [1, -2, 1]),
    ([[2, 1], [1, 1]], [1, -3, 1]),
    ([[7]], [-7, 1]),
])
def test_char_poly_examples(rows, coeffs):
    assert char_poly(Matrix.from_rows(rows)) == Poly.of(coeffs)


def test_char_poly_rejects_non_square():
    with pytest.raises(ValueError):
        char_poly(Matrix.zeros(2, 3))


@given(int_matrices(square=True, max_n=5))
def test_cayley_hamilton(m):
    assert evaluate_poly_at_matrix(char_poly(m), m).is_zero


@given(int_matrices(square=True, max_n=4))
def test_char_poly_matches_sympy(m):
    x = sympy.Symbol("x")
    ref = sympy.Poly(sympy.Matrix(m.tolist()).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert list(char_poly(m).coeffs) == [int(c) for c in ref]


def test_char_poly_rational_entries():
    m = Matrix.from_rows([[Fraction(1, 2), 0], [0, 3]])
    assert char_poly(m) == Poly.of([Fraction(3, 2), Fraction(-7, 2), 1])


# -- exterior powers ----------------------------------------------------------------


def test_exterior_power_edge_cases():
    a = Matrix.from_rows([[2, 1, 0], [1, 1, 4], [0, 3, 5]])
    assert exterior_power(a, 0) == Matrix.from_rows([[1]])
    assert exterior_power(a, 1) == a
    assert exterior_power(a, 3) == Matrix.from_rows([[det(a)]])
    with pytest.raises(ValueError):
        exterior_power(a, 4)
    with pytest.raises(ValueError):
        exterior_power(a, -1)


def test_exterior_power_size_guard():
    with pytest.raises(MatrixSizeError):
        exterior_power(Matrix.identity(16), 8)  # C(16, 8) = 12870


@given(int_matrices(square=True, min_n=2, max_n=3))
def test_alternating_trace_is_det_of_i_minus_a(m):
    n = m.rows
    total = sum((-1) ** k * exterior_power(m, k).trace() for k in range(n + 1))
    assert total == det(Matrix.identity(n) - m)


@given(int_matrices(square=True, max_n=4))
def test_exterior_trace_is_elementary_symmetric(m):
    # coefficient of x^(n-k) in det(xI - A) is (-1)^k e_k
    p = char_poly(m)
    n = m.rows
    for k in range(n + 1):
        assert exterior_power(m, k).trace() == (-1) ** k * p.coeff(n - k)


@given(int_matrices(square=True, max_n=3), int_matrices(square=True, max_n=3))
def test_exterior_power_is_functorial(a, b):
    if a.rows != b.rows:
        return
    for k in range(a.rows + 1):
        assert exterior_power(a @ b, k) == exterior_power(a, k) @ exterior_power(b, k)


# -- spectral predicates -------------------------------------------------------------


@pytest.mark.parametrize("coeffs, expected", [([-1, 1], True), ([1, 1, 1], True), ([1, -3, 1], False)])
def test_roots_of_unity_examples(coeffs, expected):
    assert is_roots_of_unity_only(Poly.of(coeffs)) is expected


@pytest.mark.parametrize("coeffs, expected", [([-2, 1], True), ([1, 0, 1], False), ([1, -3, 1], True)])
def test_spectral_radius_examples(coeffs, expected):
    assert spectral_radius_exceeds_one(Poly.of(coeffs)) is expected


def test_roots_of_unity_rejects_non_monic():
    with pytest.raises(ValueError):
        is_roots_of_unity_only(Poly.of([1, 2]))


def test_graeffe_squares_roots():
    # (x - 2)(x + 3) -> roots 4, 9
    assert graeffe(Poly.of([-6, 1, 1])) == Poly.of([36, -13, 1])


def test_binomial_bounds():
    assert binomial_bounds(4) == [comb(4, k) for k in range(5)]


def _cyclotomic_oracle(coeffs: list[int]) -> bool:
    """p | (x^120 - 1)^deg p  iff every root is a root of unity of order dividing 120.

    Every cyclotomic factor of degree <= 4 has order in {1,2,3,4,5,6,8,10,12}, all dividing 120.
    """
    x = sympy.Symbol("x")
    p = sympy.Poly(list(reversed(coeffs)), x)
    if p.eval(0) == 0:
        return False
    r = sympy.Poly(x ** 120 - 1, x).rem(p)
    acc = sympy.Poly(1, x)
    for _ in range(p.degree()):
        acc = (acc * r).rem(p)
    return acc.is_zero


MONIC_SMALL = [
    list(c) + [1]
    for deg in range(1, 5)
    for c in itertools.product(range(-3, 4), repeat=deg)
]


def test_roots_of_unity_exhaustive_small_polys():
    """All monic polys of degree <= 4 with coefficients in [-3, 3] against the divisibility oracle."""
    bad = [c for c in MONIC_SMALL if is_roots_of_unity_only(Poly.of(c)) != _cyclotomic_oracle(c)]
    assert not bad, bad[:5]
    assert len(MONIC_SMALL) == 7 + 49 + 343 + 2401


def _numeric_roots(coeffs: list[int]) -> list[complex]:
    """Roots with multiplicity; squarefree parts first so the root finder converges."""
    x = sympy.Symbol("x")
    _, factors = sympy.Poly(list(reversed(coeffs)), x).sqf_list()
    out = []
    for f, k in factors:
        out += [complex(r) for r in f.nroots(n=30, maxsteps=200)] * k
    return out


@given(st.sampled_from(MONIC_SMALL))
def test_spectral_radius_against_numeric_roots(coeffs):
    big = spectral_radius_exceeds_one(Poly.of(coeffs))
    r = max(abs(z) for z in _numeric_roots(coeffs))
    # small integer polynomials never have roots within 1e-6 of the circle unless on it
    assert big == (r > 1 + 1e-6)


@given(st.sampled_from(MONIC_SMALL))
def test_root_counts_against_numeric_roots(coeffs):
    roots = _numeric_roots(coeffs)
    p = Poly.of(coeffs)
    on_circle = sum(abs(abs(r) - 1) <= 1e-6 for r in roots)
    assert unit_circle_root_count(p) == on_circle
    if on_circle:
        with pytest.raises(NotHyperbolicError):
            count_roots_outside_unit_circle(p)
    else:
        assert count_roots_outside_unit_circle(p) == sum(abs(r) > 1 + 1e-6 for r in roots)


def test_unit_circle_root_that_is_not_root_of_unity():
    # 5x^2 - 6x + 5 has roots (3 +- 4i)/5
    p = Poly.of([5, -6, 5])
    assert has_unit_circle_root(p)
    assert unit_circle_root_count(p) == 2


# -- polynomial helpers --------------------------------------------------------------


@given(st.lists(small_int, min_size=2, max_size=5), st.lists(small_int, min_size=2, max_size=5))
def test_gcd_divides_both(a, b):
    pa, pb = Poly.of(a), Poly.of(b)
    if pa.is_zero or pb.is_zero:
        return
    g = poly_gcd(pa, pb)
    assert (pa % g).is_zero and (pb % g).is_zero


def test_squarefree_and_sturm():
    p = Poly.of([-1, 1]) ** 2 * Poly.of([2, 1])  # (x-1)^2 (x+2)
    facs = squarefree_factors(p)
    assert {(f, k) for f, k in facs} == {(Poly.of([-1, 1]), 2), (Poly.of([2, 1]), 1)}
    assert count_real_roots(p) == 2
    assert count_real_roots(p, lo=0) == 1
