"""Cellular chain complexes of pairs (X, A) and their integral homology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

from .matrix import Matrix, smith_normal_form

Mode = Literal["absolute", "relative"]


class ChainComplexError(ValueError):
    pass


@dataclass(frozen=True)
class HomologyGroup:
    """Z^free_rank plus cyclic torsion Z/t_1 + ... with t_i | t_{i+1}."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        t = tuple(self.torsion)
        if any(x < 2 for x in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not a divisibility chain of entries >= 2")
        object.__setattr__(self, "torsion", t)

    @property
    def real_rank(self) -> int:
        return self.free_rank

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def cohomology_rank(h: HomologyGroup) -> int:
    """Rank of real cohomology in the same degree; torsion dies over R."""
    return h.free_rank


@dataclass(frozen=True)
class ChainComplexPair:
    """Cellular chain complex of X with a subcomplex A.

    ``cells[k]`` lists the labels of the k-cells of X. ``boundaries[k]`` is the
    matrix of d_k : C_k -> C_{k-1}, shape (#cells[k-1], #cells[k]); index 0
    holds the 0 x #cells[0] zero map so indices line up with degrees.
    """

    cells: tuple[tuple[str, ...], ...]
    boundaries: tuple[Matrix, ...]
    subcomplex: frozenset[str] = field(default_factory=frozenset)
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(tuple(c) for c in self.cells))
        object.__setattr__(self, "subcomplex", frozenset(self.subcomplex))
        if len(self.boundaries) == len(self.cells) - 1:
            # d_0 omitted by the caller
            object.__setattr__(self, "boundaries", (Matrix.zeros(0, len(self.cells[0])),) + tuple(self.boundaries))
        self.validate()

    @property
    def top_dimension(self) -> int:
        return len(self.cells) - 1

    def cell_count(self, k: int) -> int:
        return len(self.cells[k]) if 0 <= k < len(self.cells) else 0

    def boundary(self, k: int) -> Matrix:
        if k <= 0:
            return Matrix.zeros(0, self.cell_count(0))
        if k > self.top_dimension:
            return Matrix.zeros(self.cell_count(k - 1), 0)
        return self.boundaries[k]

    def validate(self) -> None:
        if len(self.boundaries) != len(self.cells):
            raise ChainComplexError(f"{len(self.cells)} cell degrees but {len(self.boundaries)} boundary maps")
        labels: set[str] = set()
        for k, cs in enumerate(self.cells):
            for c in cs:
                if c in labels:
                    raise ChainComplexError(f"duplicate cell label {c!r}")
                labels.add(c)
        for k in range(1, len(self.cells)):
            d = self.boundaries[k]
            if (d.rows, d.cols) != (self.cell_count(k - 1), self.cell_count(k)):
                raise ChainComplexError(
                    f"d_{k} has shape {d.rows}x{d.cols}, expected {self.cell_count(k - 1)}x{self.cell_count(k)}")
            if not d.is_integral:
                raise ChainComplexError(f"d_{k} has non-integer entries")
        for k in range(2, len(self.cells)):
            if not (self.boundaries[k - 1] @ self.boundaries[k]).is_zero():
                raise ChainComplexError(f"d_{k - 1} o d_{k} != 0 (degree {k})")
        missing = self.subcomplex - labels
        if missing:
            raise ChainComplexError(f"subcomplex cells not in X: {sorted(missing)}")
        for k in range(1, len(self.cells)):
            d = self.boundaries[k]
            for j, c in enumerate(self.cells[k]):
                if c not in self.subcomplex:
                    continue
                for i, face in enumerate(self.cells[k - 1]):
                    if d.entries[i][j] and face not in self.subcomplex:
                        raise ChainComplexError(f"boundary of subcomplex cell {c!r} meets {face!r} outside A")

    def euler_characteristic(self, mode: Mode = "absolute") -> int:
        total = 0
        for k, cs in enumerate(self.cells):
            n = sum(1 for c in cs if mode == "absolute" or c not in self.subcomplex)
            total += (-1) ** k * n
        return total

    def quotient(self) -> "ChainComplexPair":
        """Relative complex C(X)/C(A): cells of A deleted."""
        keep = [[j for j, c in enumerate(cs) if c not in self.subcomplex] for cs in self.cells]
        cells = tuple(tuple(self.cells[k][j] for j in keep[k]) for k in range(len(self.cells)))
        bds = [Matrix.zeros(0, len(keep[0]))]
        for k in range(1, len(self.cells)):
            bds.append(self.boundaries[k].submatrix(keep[k - 1], keep[k]))
        return ChainComplexPair(cells, tuple(bds), frozenset(), name=f"{self.name}/A" if self.name else "")

    def with_subcomplex(self, sub: Sequence[str] | frozenset[str]) -> "ChainComplexPair":
        return ChainComplexPair(self.cells, self.boundaries, frozenset(sub), self.name)


def homology(pair: ChainComplexPair, mode: Mode = "absolute") -> list[HomologyGroup]:
    """Integral homology H_k(X) or H_k(X, A), k = 0..top dimension."""
    if mode not in ("absolute", "relative"):
        raise ValueError(f"unknown mode {mode!r}")
    cx = pair.quotient() if mode == "relative" and pair.subcomplex else pair
    n = cx.top_dimension
    ranks: list[int] = []
    factors: list[list[int]] = []
    for k in range(n + 2):
        if 1 <= k <= n:
            snf = smith_normal_form(cx.boundary(k))
            ranks.append(snf.rank)
            factors.append(snf.invariant_factors)
        else:
            ranks.append(0)
            factors.append([])
    out = []
    for k in range(n + 1):
        free = cx.cell_count(k) - ranks[k] - ranks[k + 1]
        torsion = tuple(d for d in factors[k + 1] if d > 1)
        out.append(HomologyGroup(free, torsion))
    return out


def betti_numbers(pair: ChainComplexPair, mode: Mode = "absolute") -> list[int]:
    return [h.free_rank for h in homology(pair, mode)]
