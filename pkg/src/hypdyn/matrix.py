"""Dense exact matrices, Smith normal form, characteristic polynomials.

Everything here is exact: entries are Python ints or Fractions and no
operation ever rounds. Sizes are capped at :data:`MAX_DIM` rows/columns so a
desk-scale mistake fails loudly instead of running for an hour.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .poly import Number, Poly, exact_div, format_number, normalize, parse_number

MAX_DIM = 64
MAX_EXTERIOR_DIM = 10_000


class MatrixSizeError(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    """Row-major exact matrix. ``IntMatrix`` is the integral special case."""

    rows: int
    cols: int
    entries: tuple[tuple[Number, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")
        norm = tuple(tuple(normalize(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", norm)

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Number | str]], cols: int | None = None) -> "Matrix":
        rows = [tuple(parse_number(x) for x in r) for r in data]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diag(cls, values: Sequence[Number]) -> "Matrix":
        n = len(values)
        return cls(n, n, tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Number:
        i, j = ij
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self.entries for x in r)

    def tolist(self) -> list[list[Number]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = tuple(
            tuple(sum((a * b for a, b in zip(r, c)), 0) for c in ocols) for r in self.entries
        )
        return Matrix(self.rows, other.cols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c: Number) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.entries))

    def __pow__(self, e: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("matrix power needs a square matrix")
        if e < 0:
            return inverse(self) ** (-e)
        result = Matrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def trace(self) -> Number:
        if not self.is_square:
            raise ValueError("trace needs a square matrix")
        return normalize(sum((self.entries[i][i] for i in range(self.rows)), 0))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def delete(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "Matrix":
        drop_r, drop_c = set(rows), set(cols)
        keep_r = [i for i in range(self.rows) if i not in drop_r]
        keep_c = [j for j in range(self.cols) if j not in drop_c]
        return self.submatrix(keep_r, keep_c)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def _same_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(format_number(x) for x in r) + "]" for r in self.entries) + "]"


IntMatrix = Matrix


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = [[0] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return Matrix(n, m, tuple(tuple(r) for r in out))


def _check_size(m: Matrix, what: str) -> None:
    if m.rows > MAX_DIM or m.cols > MAX_DIM:
        raise MatrixSizeError(f"{what}: {m.rows}x{m.cols} exceeds the {MAX_DIM}x{MAX_DIM} limit")


def _require_square(m: Matrix, what: str) -> None:
    if not m.is_square:
        raise ValueError(f"{what} needs a square matrix, got {m.rows}x{m.cols}")


def det(m: Matrix) -> Number:
    """Determinant by fraction-free (Bareiss) elimination."""
    _require_square(m, "det")
    _check_size(m, "det")
    n = m.rows
    if n == 0:
        return 1
    a = [list(r) for r in m.entries]
    sign = 1
    prev: Number = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return normalize(sign * a[n - 1][n - 1])


def inverse(m: Matrix) -> Matrix:
    """Exact inverse over the rationals (Gauss-Jordan)."""
    _require_square(m, "inverse")
    _check_size(m, "inverse")
    n = m.rows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.entries)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return Matrix(n, n, tuple(tuple(r[n:]) for r in a))


# -- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ M @ V == D`` with U, V unimodular and D in Smith form."""

    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D.entries[i][i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def _min_pivot(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_abs = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            v = row[j]
            if v != 0 and (best is None or abs(v) < best_abs):
                best, best_abs = (i, j), abs(v)
    return best


def smith_normal_form(m: Matrix) -> SnfDecomposition:
    """Smith normal form of an integer matrix with unimodular transforms.

    The pivot is always the nonzero entry of least absolute value in the
    active submatrix, ties going to the lowest (row, col); the output is
    therefore a deterministic function of the input.
    """
    if not m.is_integral:
        raise ValueError("Smith normal form needs an integer matrix")
    _check_size(m, "smith_normal_form")
    r, c = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    v = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i: int, k: int) -> None:
        if i != k:
            a[i], a[k] = a[k], a[i]
            u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        if j != k:
            for row in a:
                row[j], row[k] = row[k], row[j]
            for row in v:
                row[j], row[k] = row[k], row[j]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(r, c)):
        piv = _min_pivot(a, t)
        if piv is None:
            break
        while True:
            i, j = piv
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
                dirty = dirty or a[i][t] != 0
            for j in range(t + 1, c):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                dirty = dirty or a[t][j] != 0
            if dirty:
                piv = _min_pivot(a, t)
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                piv = _min_pivot(a, t)
                continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    def mk(rows: list[list[int]], nr: int, nc: int) -> Matrix:
        return Matrix(nr, nc, tuple(tuple(row) for row in rows))

    return SnfDecomposition(mk(u, r, r), mk(a, r, c), mk(v, c, c))


# -- characteristic polynomial -----------------------------------------------


def char_poly(a: Matrix) -> Poly:
    """det(xI - A) by Berkowitz's division-free algorithm."""
    _require_square(a, "char_poly")
    _check_size(a, "char_poly")
    n = a.rows
    if n == 0:
        return Poly((1,))
    e = a.entries
    # vec holds det(xI - B) coefficients, highest degree first, for the
    # trailing principal submatrix B = A[k:, k:].
    vec: list[Number] = [1, -e[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        s = n - k
        alpha = e[k][k]
        row = e[k][k + 1:]
        col = [e[i][k] for i in range(k + 1, n)]
        sub = [list(e[i][k + 1:]) for i in range(k + 1, n)]
        toeplitz: list[Number] = [1, -alpha]
        w = col
        for _ in range(s - 1):
            toeplitz.append(-sum((x * y for x, y in zip(row, w)), 0))
            w = [sum((x * y for x, y in zip(r_, w)), 0) for r_ in sub]
        new = []
        for i in range(s + 1):
            new.append(sum((toeplitz[i - j] * vec[j] for j in range(min(i, s - 1) + 1)), 0))
        vec = new
    return Poly(tuple(reversed(vec)))


def evaluate_poly_at_matrix(p: Poly, a: Matrix) -> Matrix:
    _require_square(a, "matrix evaluation")
    acc = Matrix.zeros(a.rows, a.cols)
    ident = Matrix.identity(a.rows)
    for c in reversed(p.coeffs):
        acc = acc @ a + ident.scale(c)
    return acc


# -- exterior powers ---------------------------------------------------------


def exterior_power(a: Matrix, k: int) -> Matrix:
    """Matrix of the k-th exterior power in the lexicographic basis of k-subsets.

    Entry (I, J) is the minor det A[I, J]; column J is the image of e_J.
    """
    _require_square(a, "exterior_power")
    n = a.rows
    if not 0 <= k <= n:
        raise ValueError(f"exterior degree {k} outside 0..{n}")
    size = comb(n, k)
    if size > MAX_EXTERIOR_DIM:
        raise MatrixSizeError(f"exterior power of dimension C({n},{k}) = {size} exceeds {MAX_EXTERIOR_DIM}")
    subsets = list(combinations(range(n), k))
    if k == 0:
        return Matrix.identity(1)
    out = tuple(tuple(det(a.submatrix(I, J)) for J in subsets) for I in subsets)
    return Matrix(size, size, out)
