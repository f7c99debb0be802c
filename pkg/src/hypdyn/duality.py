"""Transport of induced maps through the intersection pairing.

If f preserves the pairing up to its degree s = deg f = +-1, that is
Ind(f a, f b) = s Ind(a, b), then with A, B the matrices of f on the two
dual groups and G the intersection matrix, A^T G B = s G. In dual bases
(G = I) this reads B = s (A^-1)^T, so the spectrum of B is {s / l}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import Matrix, det, inverse
from .poly import Poly


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ValueError(f"degree sign must be +1 or -1, got {sign!r}")


@dataclass(frozen=True)
class DualPairing:
    intersection_matrix: Matrix
    degree_sign: int = 1

    def __post_init__(self) -> None:
        _check_sign(self.degree_sign)
        g = self.intersection_matrix
        if not g.is_square:
            raise ValueError("intersection matrix must be square")
        if det(g) == 0:
            raise ValueError("intersection pairing is degenerate")

    @classmethod
    def dual_bases(cls, n: int, degree_sign: int = 1) -> "DualPairing":
        return cls(Matrix.identity(n), degree_sign)

    @property
    def is_dual_bases(self) -> bool:
        return self.intersection_matrix == Matrix.identity(self.intersection_matrix.rows)


def dual_map(a: Matrix, degree_sign: int = 1, pairing: DualPairing | None = None) -> Matrix:
    """Matrix B of f on the dual group, solving A^T G B = s G."""
    _check_sign(degree_sign)
    if not a.is_square:
        raise ValueError("dual_map needs a square matrix")
    if det(a) == 0:
        raise ValueError("dual_map needs an invertible matrix")
    a_inv_t = inverse(a).T
    if pairing is None or pairing.is_dual_bases:
        if pairing is not None and pairing.intersection_matrix.rows != a.rows:
            raise ValueError("pairing size does not match the matrix")
        return a_inv_t.scale(degree_sign)
    g = pairing.intersection_matrix
    if g.rows != a.rows:
        raise ValueError("pairing size does not match the matrix")
    return (inverse(g) @ a_inv_t @ g).scale(degree_sign)


def pairing_preserved(a: Matrix, b: Matrix, degree_sign: int, pairing: DualPairing | None = None) -> bool:
    """Exact check of A^T G B = s G."""
    g = Matrix.identity(a.rows) if pairing is None else pairing.intersection_matrix
    return a.T @ g @ b == g.scale(degree_sign)


def reciprocal_transform(p: Poly, degree_sign: int) -> Poly:
    """Monic polynomial whose roots are s / l for the roots l of p."""
    _check_sign(degree_sign)
    if p.is_zero or p.degree < 0:
        raise ValueError("zero polynomial")
    if p.coeff(0) == 0:
        raise ValueError("polynomial has a zero root; its reciprocal is undefined")
    n = p.degree
    # x^n p(s/x) = sum_k c_k s^k x^(n-k)
    coeffs = [0] * (n + 1)
    for k, c in enumerate(p.coeffs):
        coeffs[n - k] = c * degree_sign ** k
    return Poly(tuple(coeffs)).monic()


def reciprocal_eigen_check(pa: Poly, pb: Poly, degree_sign: int) -> bool:
    """True iff the roots of pb are exactly s / l over the roots l of pa, with multiplicity."""
    if pa.degree != pb.degree:
        raise ValueError(f"degree mismatch: {pa.degree} vs {pb.degree}")
    if pb.is_zero:
        raise ValueError("zero polynomial")
    return reciprocal_transform(pa, degree_sign) == pb.monic()


def cohomology_transport(pb: Poly, degree_sign: int) -> Poly:
    """Characteristic polynomial of f^* given that of f_* on the dual group."""
    return reciprocal_transform(pb, degree_sign)
