"""Lefschetz numbers, fixed-point indices and periodic-point counts.

Every count has two independent routes: a trace formula over the induced
maps on homology, and a brute-force enumeration of the periodic points of
the concrete model (toral automorphisms, the doubling map underlying the
solenoid).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .homology import ChainComplexPair, betti_numbers
from .matrix import Matrix, char_poly, det, exterior_power
from .spectral import (
    NotHyperbolicError,
    count_real_roots_below,
    count_roots_outside_unit_circle,
    has_unit_circle_root,
)

EQUAL_INDEX_CAVEAT = (
    "N_m = |L(f^m)| holds only when every point of Fix(f^m) has the same index"
)
MAX_SOLENOID_ITERATE = 24


@dataclass(frozen=True)
class InducedMapFamily:
    """Integer matrices of f_* on the free part of H_k, k = 0..top degree."""

    matrices: tuple[Matrix, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrices", tuple(self.matrices))
        for k, a in enumerate(self.matrices):
            if not a.is_square:
                raise ValueError(f"degree {k}: induced map must be square, got {a.rows}x{a.cols}")
            if not a.is_integral:
                raise ValueError(f"degree {k}: induced map must have integer entries")

    @classmethod
    def from_lists(cls, mats: Sequence[Sequence[Sequence[int]]], name: str = "") -> "InducedMapFamily":
        out = []
        for m in mats:
            rows = [list(r) for r in m]
            out.append(Matrix.from_rows(rows, cols=len(rows)) if rows else Matrix.zeros(0, 0))
        return cls(tuple(out), name)

    @property
    def top_degree(self) -> int:
        return len(self.matrices) - 1

    @property
    def ranks(self) -> list[int]:
        return [a.rows for a in self.matrices]

    def power(self, m: int) -> "InducedMapFamily":
        if m < 0:
            raise ValueError("negative iterate")
        return InducedMapFamily(tuple(a ** m for a in self.matrices), self.name)

    def check_against(self, pair: ChainComplexPair) -> None:
        """Raise unless the matrix sizes equal the Betti numbers of ``pair``."""
        betti = betti_numbers(pair)
        if self.ranks != betti:
            raise ValueError(f"family ranks {self.ranks} do not match Betti numbers {betti}")


def toral_induced_family(a: Matrix) -> InducedMapFamily:
    """Action of the linear map L_A on H_*(T^n): exterior powers of A."""
    if not a.is_square:
        raise ValueError("toral map needs a square matrix")
    if not a.is_integral:
        raise ValueError("toral map needs integer entries")
    if det(a) == 0:
        raise ValueError("singular matrix does not induce a toral map of finite degree")
    return InducedMapFamily(tuple(exterior_power(a, k) for k in range(a.rows + 1)), "toral")


def solenoid_family() -> InducedMapFamily:
    """Solid torus D^2 x S^1 with z -> 2z on the core circle."""
    return InducedMapFamily(
        (Matrix.identity(1), Matrix.from_rows([[2]]), Matrix.zeros(0, 0), Matrix.zeros(0, 0)),
        "solenoid")


def lefschetz_number(family: InducedMapFamily, m: int = 1) -> int:
    if m < 1:
        raise ValueError("iterate must be >= 1")
    total = 0
    for k, a in enumerate(family.matrices):
        total += (-1) ** k * (a ** m).trace()
    return int(total)


@dataclass(frozen=True)
class PeriodicCount:
    m: int
    count: int
    lefschetz: int
    # None: hypothesis not checked; True/False: checked against supplied indices
    hypothesis_verified: bool | None = None
    caveat: str = EQUAL_INDEX_CAVEAT


def periodic_count_formula(
    family: InducedMapFamily,
    m: int,
    fixed_points: Sequence["HyperbolicFixedPointData"] | None = None,
) -> PeriodicCount:
    """|L(f^m)| with the equal-index caveat attached.

    When the fixed points of f^m are supplied, the equal-index hypothesis is
    checked and recorded rather than assumed.
    """
    lef = lefschetz_number(family, m)
    verified = None
    if fixed_points is not None:
        verified = equal_index_report(fixed_points).all_equal
    return PeriodicCount(m, abs(lef), lef, verified)


# -- toral oracle ---------------------------------------------------------


def _hermite_upper(b: Matrix) -> list[list[int]]:
    """Upper triangular H = U B with U unimodular (integer row operations only)."""
    h = [list(map(int, r)) for r in b.entries]
    n = len(h)
    for col in range(n):
        # Euclid on column entries at rows >= col
        while True:
            nz = [i for i in range(col, n) if h[i][col] != 0]
            if not nz:
                raise ZeroDivisionError("singular matrix")
            piv = min(nz, key=lambda i: (abs(h[i][col]), i))
            h[col], h[piv] = h[piv], h[col]
            done = True
            for i in range(col + 1, n):
                q = h[i][col] // h[col][col]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[col])]
                if h[i][col]:
                    done = False
            if done:
                break
    return h


def toral_periodic_points_bruteforce(a: Matrix, m: int, *, points: bool = False) -> int | list[tuple[Fraction, ...]]:
    """Count x in [0,1)^n with (A^m - I) x in Z^n by explicit enumeration.

    The lattice B^{-1} Z^n / Z^n is listed coordinate by coordinate from a
    triangular form of B = A^m - I; each point is then checked against B
    itself and against the others for distinctness mod Z^n.
    """
    if m < 1:
        raise ValueError("iterate must be >= 1")
    if not a.is_square or not a.is_integral:
        raise ValueError("toral map needs a square integer matrix")
    n = a.rows
    b = a ** m - Matrix.identity(n)
    try:
        h = _hermite_upper(b)
    except ZeroDivisionError:
        raise NotHyperbolicError(f"A^{m} - I is singular: iterate {m} is not hyperbolic") from None

    # every solution has denominator dividing D = prod |h_ii| = |det B|, so
    # points are stored as integer numerators y = D x
    big_d = 1
    for i in range(n):
        big_d *= abs(h[i][i])
    found: list[tuple[int, ...]] = [()]
    for i in reversed(range(n)):
        d = h[i][i]
        nxt = []
        for tail in found:
            # h_ii x_i + sum_{j>i} h_ij x_j = integer, x_i in [0, 1)
            s = sum(h[i][j] * tail[j - i - 1] for j in range(i + 1, n))
            for k in range(abs(d)):
                num = k * big_d - s
                if num % d:
                    raise AssertionError("denominator bound violated")  # pragma: no cover
                nxt.append(((num // d) % big_d,) + tail)
        found = nxt

    seen = set(found)
    for y in found:
        for row in b.entries:
            if sum(c * yi for c, yi in zip(row, y)) % big_d:
                raise AssertionError(f"enumerated point {y}/{big_d} is not periodic")  # pragma: no cover
    if len(seen) != len(found):
        raise AssertionError("enumeration produced duplicate points")  # pragma: no cover
    if points:
        return [tuple(Fraction(yi, big_d) for yi in y) for y in sorted(seen)]
    return len(seen)


def toral_det_count(a: Matrix, m: int) -> int:
    """|det(A^m - I)|, the lattice index."""
    return abs(int(det(a ** m - Matrix.identity(a.rows))))


def solenoid_count(m: int) -> int:
    """Fixed points of the m-th iterate of angle doubling, by exhaustive check.

    Candidates are the angles k / (2 (2^m - 1)); the grid contains every
    fixed point plus as many non-fixed ones, so the check is not vacuous.
    """
    if not 1 <= m <= MAX_SOLENOID_ITERATE:
        raise ValueError(f"iterate must be in 1..{MAX_SOLENOID_ITERATE}")
    den = 2 * (2 ** m - 1)
    k = np.arange(den, dtype=np.int64)
    y = k.copy()
    for _ in range(m):
        y = (2 * y) % den
    return int(np.count_nonzero(y == k))


# -- fixed-point indices ----------------------------------------------------


@dataclass(frozen=True)
class HyperbolicFixedPointData:
    """Derivative of the map at a fixed point; hyperbolicity is checked on creation."""

    df: Matrix
    label: str = ""
    unstable_dimension: int = field(init=False)
    orientation_sign: int = field(init=False)

    def __post_init__(self) -> None:
        if not self.df.is_square:
            raise ValueError("derivative must be square")
        p = char_poly(self.df)
        if has_unit_circle_root(p):
            raise NotHyperbolicError(f"derivative {self.df} has an eigenvalue on the unit circle")
        object.__setattr__(self, "unstable_dimension", count_roots_outside_unit_circle(p))
        # det of Df on the unstable subspace: complex pairs contribute |l|^2 > 0,
        # so the sign comes from real eigenvalues below -1
        object.__setattr__(self, "orientation_sign", -1 if count_real_roots_below(p, -1) % 2 else 1)


@dataclass(frozen=True)
class FixedPointIndex:
    index: int
    unstable_dimension: int
    orientation_sign: int


def fixed_point_index(data: HyperbolicFixedPointData) -> FixedPointIndex:
    """sign det(I - Df), checked against (-1)^u * Delta."""
    n = data.df.rows
    d = det(Matrix.identity(n) - data.df)
    if d == 0:  # pragma: no cover - excluded by hyperbolicity
        raise NotHyperbolicError("1 is an eigenvalue")
    index = 1 if d > 0 else -1
    decomposed = (-1) ** data.unstable_dimension * data.orientation_sign
    if index != decomposed:
        raise AssertionError(
            f"index {index} disagrees with (-1)^{data.unstable_dimension} * {data.orientation_sign}")  # pragma: no cover
    return FixedPointIndex(index, data.unstable_dimension, data.orientation_sign)


@dataclass(frozen=True)
class EqualIndexReport:
    all_equal: bool
    indices: tuple[int, ...]
    common: int | None


def equal_index_report(points: Sequence[HyperbolicFixedPointData]) -> EqualIndexReport:
    idx = tuple(fixed_point_index(p).index for p in points)
    equal = len(set(idx)) <= 1
    return EqualIndexReport(equal, idx, idx[0] if idx and equal else None)


@dataclass(frozen=True)
class LefschetzHopfReport:
    m: int
    index_sum: int
    lefschetz: int
    indices: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return self.index_sum == self.lefschetz


def verify_lefschetz_hopf(
    family: InducedMapFamily,
    fixed_points: Sequence[HyperbolicFixedPointData],
    m: int = 1,
) -> LefschetzHopfReport:
    """Compare the index sum over Fix(f^m) with L(f^m).

    Each entry of ``fixed_points`` carries the derivative of f^m at that point.
    """
    idx = tuple(fixed_point_index(p).index for p in fixed_points)
    return LefschetzHopfReport(m, sum(idx), lefschetz_number(family, m), idx)


def toral_fixed_points(a: Matrix, m: int) -> list[HyperbolicFixedPointData]:
    """Fixed points of L_A^m, each with derivative A^m."""
    am = a ** m
    pts = toral_periodic_points_bruteforce(a, m, points=True)
    return [HyperbolicFixedPointData(am, str(tuple(str(c) for c in x))) for x in pts]
