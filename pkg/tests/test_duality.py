from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hypdyn.duality import (
    DualPairing,
    cohomology_transport,
    dual_map,
    pairing_preserved,
    reciprocal_eigen_check,
    reciprocal_transform,
)
from hypdyn.matrix import Matrix, char_poly, det
from hypdyn.poly import Poly
from hypdyn.spectral import count_roots_outside_unit_circle, has_unit_circle_root, spectral_radius_exceeds_one

CAT = Matrix.from_rows([[2, 1], [1, 1]])


@st.composite
def invertible_rational(draw, max_n=4):
    """L U P with nonzero diagonals: invertible by construction, shrinks towards I."""
    n = draw(st.integers(1, max_n))
    q = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    nz = q.filter(bool).map(lambda x: x or 1) | st.just(Fraction(1))
    lower = [[draw(nz) if i == j else (draw(q) if j < i else 0) for j in range(n)] for i in range(n)]
    upper = [[draw(nz) if i == j else (draw(q) if j > i else 0) for j in range(n)] for i in range(n)]
    perm = draw(st.permutations(range(n)))
    pm = [[int(perm[i] == j) for j in range(n)] for i in range(n)]
    m = Matrix.from_rows(lower) @ Matrix.from_rows(upper) @ Matrix.from_rows(pm)
    assert det(m) != 0
    return m


signs = st.sampled_from([1, -1])


def test_dual_map_examples():
    i2 = Matrix.identity(2)
    assert dual_map(i2, 1) == i2
    assert dual_map(i2, -1) == i2.scale(-1)
    assert dual_map(CAT, 1) == Matrix.from_rows([[1, -1], [-1, 2]])


def test_dual_map_errors():
    with pytest.raises(ValueError):
        dual_map(Matrix.from_rows([[1, 2], [2, 4]]), 1)
    with pytest.raises(ValueError):
        dual_map(CAT, 2)


def test_reciprocal_examples():
    assert reciprocal_eigen_check(Poly.of([-2, 1]), Poly.of([Fraction(-1, 2), 1]), 1)
    assert reciprocal_eigen_check(Poly.of([1, -3, 1]), Poly.of([1, -3, 1]), 1)
    assert reciprocal_eigen_check(Poly.of([1, -3, 1]), Poly.of([1, 3, 1]), -1)
    assert not reciprocal_eigen_check(Poly.of([1, -3, 1]), Poly.of([1, 3, 1]), 1)


def test_reciprocal_errors():
    with pytest.raises(ValueError):
        reciprocal_eigen_check(Poly.of([-2, 1]), Poly.of([1, 0, 1]), 1)
    with pytest.raises(ValueError):
        reciprocal_transform(Poly.of([0, 1]), 1)


def test_cohomology_transport_examples():
    assert cohomology_transport(Poly.of([-1, 1]), 1) == Poly.of([-1, 1])
    assert cohomology_transport(Poly.of([1, 3, 1]), -1) == Poly.of([1, -3, 1])
    assert cohomology_transport(Poly.of([1, -3, 1]), 1) == Poly.of([1, -3, 1])


@given(invertible_rational(), signs)
def test_dual_map_identity_and_spectrum(a, s):
    b = dual_map(a, s)
    assert b.T @ a == Matrix.identity(a.rows).scale(s)
    assert reciprocal_eigen_check(char_poly(a), char_poly(b), s)
    assert dual_map(b, s) == a


def _roots(p: Poly) -> list[complex]:
    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c for c in p.coeffs]
    _, factors = sympy.Poly(coeffs[::-1], x).sqf_list()
    out = []
    for f, k in factors:
        out += [complex(r) for r in f.nroots(n=30, maxsteps=200)] * k
    return out


def _same_multiset(xs: list[complex], ys: list[complex]) -> bool:
    ys = list(ys)
    for x in xs:
        j = min(range(len(ys)), key=lambda i: abs(ys[i] - x), default=None)
        if j is None or abs(ys[j] - x) > 1e-8 * max(1, abs(x)):
            return False
        ys.pop(j)
    return not ys


@given(invertible_rational(max_n=4), signs)
def test_reciprocal_roots_numerically(a, s):
    """Transported roots are s / l, checked on sympy's numeric roots."""
    expected = [s / r for r in _roots(char_poly(a))]
    assert _same_multiset(_roots(reciprocal_transform(char_poly(a), s)), expected)


@given(invertible_rational(max_n=3), signs)
def test_general_pairing(a, s):
    g = Matrix.from_rows([[0, 1], [1, 0]]) if a.rows == 2 else Matrix.identity(a.rows).scale(2)
    pairing = DualPairing(g, s)
    b = dual_map(a, s, pairing)
    assert pairing_preserved(a, b, s, pairing)
    assert reciprocal_eigen_check(char_poly(a), char_poly(b), s)


def test_pairing_validation():
    with pytest.raises(ValueError):
        DualPairing(Matrix.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(ValueError):
        DualPairing(Matrix.identity(2), 0)
    assert DualPairing.dual_bases(3).is_dual_bases


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), signs)
def test_large_root_becomes_small(coeffs, s):
    """p has a root with |l| > 1 iff its transport has a root with |l| < 1."""
    p = Poly.of([*coeffs, 1])
    if p.coeff(0) == 0 or has_unit_circle_root(p):
        return
    q = reciprocal_transform(p, s).clear_denominators()
    inside = q.degree - count_roots_outside_unit_circle(q)
    assert spectral_radius_exceeds_one(p) == (inside > 0)
