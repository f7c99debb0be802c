"""Certified spectral predicates without numeric root finding.

Two families live here:

* Kronecker-style tests for monic integer polynomials, driven by Graeffe
  root squaring. If every root lies in the closed unit disk, every Graeffe
  iterate has coefficients bounded by the binomial numbers C(n, k), and there
  are finitely many such monic integer polynomials, so the iteration must
  cycle. A root outside the disk makes the Mahler measure square at every
  step, so some coefficient eventually breaks the bound.
* Unit-circle certification and root counting for rational polynomials,
  used for hyperbolicity of derivative matrices. Roots on the circle are
  common roots of p and its reversal; the self-reciprocal gcd is folded by
  y = x + 1/x and the fold is checked for real roots in (-2, 2) with Sturm
  sequences. Roots outside the circle are counted from the inertia of the
  Schur-Cohn form, itself read off exactly by Descartes' rule (the form is
  symmetric, so its characteristic polynomial has only real roots).
"""

from __future__ import annotations

from fractions import Fraction

from .matrix import Matrix, char_poly
from .poly import (
    Poly,
    binomial_bounds,
    count_real_roots,
    count_real_roots_with_multiplicity,
    poly_gcd,
    sign_changes,
)

MAX_GRAEFFE_STEPS = 100_000


class NotHyperbolicError(ValueError):
    """Raised when a spectrum touches the unit circle."""


def _require_monic_integer(p: Poly, what: str) -> None:
    if p.is_zero:
        raise ValueError(f"{what}: zero polynomial")
    if not p.is_integral or not p.is_monic:
        raise ValueError(f"{what} needs a monic integer polynomial, got {p}")


def graeffe(p: Poly) -> Poly:
    """Root-squaring step: the result has roots r**2 for each root r of p."""
    n = p.degree
    minus = Poly(tuple(c if k % 2 == 0 else -c for k, c in enumerate(p.coeffs)))
    prod = p * minus
    sign = -1 if n % 2 else 1
    return Poly(tuple(sign * prod.coeff(2 * k) for k in range(n + 1)))


def _exceeds_binomial_bound(p: Poly, bounds: list[int]) -> bool:
    n = p.degree
    # coefficient of x^(n-k) is (-1)^k e_k(roots), and |e_k| <= C(n, k)
    return any(abs(p.coeff(n - k)) > bounds[k] for k in range(n + 1))


def _graeffe_disk_test(p: Poly) -> bool:
    """True iff every root of the monic integer polynomial p has |r| <= 1."""
    bounds = binomial_bounds(p.degree)
    seen: set[tuple[int, ...]] = set()
    q = p
    for _ in range(MAX_GRAEFFE_STEPS):
        if _exceeds_binomial_bound(q, bounds):
            return False
        if q.coeffs in seen:
            return True
        seen.add(q.coeffs)
        q = graeffe(q)
    raise RuntimeError("Graeffe iteration neither cycled nor escaped")  # pragma: no cover


def is_roots_of_unity_only(p: Poly) -> bool:
    """True iff every complex root of the monic integer polynomial p is a root of unity."""
    _require_monic_integer(p, "is_roots_of_unity_only")
    if p.degree == 0:
        return True
    if p.coeff(0) == 0:
        return False
    # nonzero constant term + all roots in the closed disk forces |r| = 1 for
    # every root, and Kronecker then gives roots of unity
    return _graeffe_disk_test(p)


def spectral_radius_exceeds_one(p: Poly) -> bool:
    """True iff some root of the monic integer polynomial p has |r| > 1."""
    _require_monic_integer(p, "spectral_radius_exceeds_one")
    if p.degree == 0:
        return False
    return not _graeffe_disk_test(p)


# -- rational polynomials: unit circle ---------------------------------------


def _fold_palindromic(g: Poly) -> Poly:
    """For palindromic g of degree 2d return h with g(x) = x^d h(x + 1/x)."""
    d = g.degree // 2
    # s_k(y) = x^k + x^-k as a polynomial in y = x + 1/x
    s = [Poly((2,)), Poly((0, 1))]
    for _ in range(2, d + 1):
        s.append(Poly((0, 1)) * s[-1] - s[-2])
    h = Poly((g.coeff(d),))
    for k in range(1, d + 1):
        h = h + s[k] * g.coeff(d + k)
    return h


def _reciprocal_part(p: Poly) -> tuple[Poly, Poly]:
    """Split p (no zero roots) as g * q with g = gcd(p, reversal of p)."""
    g = poly_gcd(p, p.reversed())
    if g.degree < 1:
        return Poly((1,)), p
    return g, p // g


def unit_circle_root_count(p: Poly) -> int:
    """Number of distinct roots of p on the unit circle (exact)."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    core, _ = p.strip_zero_roots()
    if core.degree < 1:
        return 0
    g, _ = _reciprocal_part(core)
    count = 0
    for r in (1, -1):
        if g.degree >= 1 and g(r) == 0:
            count += 1
            while g.degree >= 1 and g(r) == 0:
                g = g // Poly((-r, 1))
    if g.degree < 1:
        return count
    h = _fold_palindromic(g.monic())
    # each real root y of h in (-2, 2) gives a conjugate pair on the circle
    inner = count_real_roots(h, Fraction(-2), Fraction(2)) - (1 if h(2) == 0 else 0)
    return count + 2 * inner


def has_unit_circle_root(p: Poly) -> bool:
    return unit_circle_root_count(p) > 0


def _schur_cohn_form(p: Poly) -> Matrix:
    n = p.degree
    a = p.coeffs
    lower = [[a[i - j] if i >= j else 0 for j in range(n)] for i in range(n)]
    upper = [[a[n - (i - j)] if i >= j else 0 for j in range(n)] for i in range(n)]
    A = Matrix.from_rows(lower)
    B = Matrix.from_rows(upper)
    return A.T @ A - B.T @ B


def _inertia(sym: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric matrix."""
    cp, zeros = char_poly(sym).strip_zero_roots()
    pos = sign_changes(cp.coeffs)
    neg = sign_changes(cp.substitute_scaled(-1).coeffs)
    return pos, neg, zeros


def count_roots_outside_unit_circle(p: Poly) -> int:
    """Roots of p with |r| > 1, with multiplicity. p must avoid the unit circle."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if has_unit_circle_root(p):
        raise NotHyperbolicError(f"{p} has a root on the unit circle")
    core, _ = p.strip_zero_roots()
    if core.degree < 1:
        return 0
    g, q = _reciprocal_part(core)
    # g's roots pair up as r, 1/r with equal multiplicity and none on the circle
    outside = g.degree // 2
    if q.degree >= 1:
        pos, neg, zero = _inertia(_schur_cohn_form(q))
        if zero:
            raise RuntimeError("degenerate Schur-Cohn form after removing reciprocal pairs")  # pragma: no cover
        outside += q.degree - neg
    return outside


def count_real_roots_below(p: Poly, bound: Fraction | int) -> int:
    """Real roots strictly below ``bound``, with multiplicity."""
    total = count_real_roots_with_multiplicity(p, None, bound)
    if p(bound) == 0:
        mult = 0
        q = p
        while q(bound) == 0:
            q = q // Poly((-bound, 1))
            mult += 1
        total -= mult
    return total
