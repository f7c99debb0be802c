"""CW models of the standard spaces and pairs used throughout.

Cell counts (degree 0, 1, 2, 3):

=================  =============================  ===========================
space              cells of X                     subcomplex A
=================  =============================  ===========================
circle             1, 1                           empty
sphere(n)          1, 0, ..., 0, 1                empty
surface_Sg(g)      1, 2g, 1                       empty
torus_Tn(n)        C(n, k) in degree k            empty
RP2                1, 1, 1                        empty
klein_bottle       1, 2, 1                        empty
interval           2, 1                           both endpoints
handlebody(g)      1, 2g, 1 + g, 1                boundary surface S_g
solid_torus        handlebody(1)                  boundary torus
T2xI               2, 5, 4, 1                     T^2 x {0, 1}
=================  =============================  ===========================

The handlebody model: S_g with one vertex, edges a_i, b_i and a single
2-cell F whose attaching word is the product of commutators; meridian disks
D_i attached along a_i; one 3-cell B. Cutting along the D_i leaves a ball
whose boundary crosses F once and each D_i twice with opposite signs, so
d(B) = F.
"""

from __future__ import annotations

from itertools import combinations
from typing import Any

from .homology import ChainComplexPair
from .matrix import Matrix

SPACE_NAMES = (
    "circle",
    "sphere",
    "surface_Sg",
    "torus_Tn",
    "RP2",
    "klein_bottle",
    "interval",
    "solid_torus",
    "handlebody",
    "T2xI",
    "S3_heegaard",
)


def _mat(rows: int, cols: int, entries: dict[tuple[int, int], int] | None = None) -> Matrix:
    data = [[0] * cols for _ in range(rows)]
    for (i, j), v in (entries or {}).items():
        data[i][j] = v
    return Matrix(rows, cols, tuple(tuple(r) for r in data))


def _zero_complex(cells: list[list[str]], name: str, sub: frozenset[str] = frozenset()) -> ChainComplexPair:
    bds = [_mat(0, len(cells[0]))]
    for k in range(1, len(cells)):
        bds.append(_mat(len(cells[k - 1]), len(cells[k])))
    return ChainComplexPair(tuple(tuple(c) for c in cells), tuple(bds), sub, name)


def circle() -> ChainComplexPair:
    return _zero_complex([["v"], ["e"]], "circle")


def sphere(n: int) -> ChainComplexPair:
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    cells: list[list[str]] = [["v"]] + [[] for _ in range(n - 1)] + [["s"]]
    return _zero_complex(cells, f"S{n}")


def surface(g: int) -> ChainComplexPair:
    _check_genus(g)
    if g == 0:
        return _zero_complex([["v"], [], ["F"]], "S_0")
    edges = [x for i in range(1, g + 1) for x in (f"a{i}", f"b{i}")]
    return _zero_complex([["v"], edges, ["F"]], f"S_{g}")


def torus(n: int) -> ChainComplexPair:
    """Product CW structure on T^n: one k-cell per k-subset, all boundaries zero."""
    if not 1 <= n <= 3:
        raise ValueError("torus_Tn supports n in 1..3")
    cells = []
    for k in range(n + 1):
        cells.append(["v" if k == 0 else "e" + "".join(str(i + 1) for i in s)
                      for s in combinations(range(n), k)])
    return _zero_complex(cells, f"T{n}")


def rp2() -> ChainComplexPair:
    return ChainComplexPair(
        (("v",), ("e",), ("f",)),
        (_mat(0, 1), _mat(1, 1), _mat(1, 1, {(0, 0): 2})),
        frozenset(), "RP2")


def klein_bottle() -> ChainComplexPair:
    # attaching word a b a^-1 b
    return ChainComplexPair(
        (("v",), ("a", "b"), ("f",)),
        (_mat(0, 1), _mat(1, 2), _mat(2, 1, {(1, 0): 2})),
        frozenset(), "klein_bottle")


def interval() -> ChainComplexPair:
    """([0,1], {0, 1}) with d(I) = 1 - 0."""
    return ChainComplexPair(
        (("0", "1"), ("I",)),
        (_mat(0, 2), _mat(2, 1, {(0, 0): -1, (1, 0): 1})),
        frozenset({"0", "1"}), "I")


def handlebody(g: int) -> ChainComplexPair:
    _check_genus(g)
    edges = [x for i in range(1, g + 1) for x in (f"a{i}", f"b{i}")]
    disks = [f"D{i}" for i in range(1, g + 1)]
    cells = [["v"], edges, ["F"] + disks, ["B"]]
    d2 = {(2 * (i - 1), i): 1 for i in range(1, g + 1)}  # d(D_i) = a_i
    bds = (
        _mat(0, 1),
        _mat(1, 2 * g),
        _mat(2 * g, 1 + g, d2),
        _mat(1 + g, 1, {(0, 0): 1}),  # d(B) = F
    )
    sub = frozenset(["v", *edges, "F"])
    return ChainComplexPair(tuple(tuple(c) for c in cells), bds, sub, f"handlebody_{g}")


def product(x: ChainComplexPair, y: ChainComplexPair, name: str = "") -> ChainComplexPair:
    """Product pair (X, A) x (Y, B) = (X x Y, A x Y u X x B).

    Sign rule: d(s x t) = ds x t + (-1)^|s| s x dt.
    """
    n = x.top_dimension + y.top_dimension
    cells: list[list[str]] = [[] for _ in range(n + 1)]
    index: dict[str, tuple[int, int]] = {}
    parts: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n + 1)]
    for p in range(x.top_dimension + 1):
        for q in range(y.top_dimension + 1):
            for i, s in enumerate(x.cells[p]):
                for j, t in enumerate(y.cells[q]):
                    label = f"{s}*{t}"
                    index[label] = (p + q, len(cells[p + q]))
                    cells[p + q].append(label)
                    parts[p + q].append((p, i, q, j))
    bds = [_mat(0, len(cells[0]))]
    for k in range(1, n + 1):
        entries: dict[tuple[int, int], int] = {}
        for col, (p, i, q, j) in enumerate(parts[k]):
            t = y.cells[q][j]
            s = x.cells[p][i]
            if p >= 1:
                dx = x.boundary(p)
                for r, face in enumerate(x.cells[p - 1]):
                    c = dx.entries[r][i]
                    if c:
                        row = index[f"{face}*{t}"][1]
                        entries[(row, col)] = entries.get((row, col), 0) + c
            if q >= 1:
                dy = y.boundary(q)
                for r, face in enumerate(y.cells[q - 1]):
                    c = dy.entries[r][j]
                    if c:
                        row = index[f"{s}*{face}"][1]
                        entries[(row, col)] = entries.get((row, col), 0) + (-1) ** p * c
        bds.append(_mat(len(cells[k - 1]), len(cells[k]), entries))
    sub = frozenset(
        f"{s}*{t}"
        for p in range(x.top_dimension + 1) for s in x.cells[p]
        for q in range(y.top_dimension + 1) for t in y.cells[q]
        if s in x.subcomplex or t in y.subcomplex
    )
    return ChainComplexPair(tuple(tuple(c) for c in cells), tuple(bds), sub,
                            name or f"{x.name}x{y.name}")


def t2xi() -> ChainComplexPair:
    return product(torus(2), interval(), "T2xI")


def double(pair: ChainComplexPair) -> ChainComplexPair:
    """P = M u_A M' glued along A, returned as the pair (P, N) with N = M'.

    Excision identifies H_*(P, N) with H_*(M, A).
    """
    inner = [[c for c in cs if c not in pair.subcomplex] for cs in pair.cells]
    copy = {c: c + "'" for cs in inner for c in cs}
    cells = [list(cs) + [copy[c] for c in inner[k]] for k, cs in enumerate(pair.cells)]
    pos = [{c: i for i, c in enumerate(cs)} for cs in cells]
    bds = [_mat(0, len(cells[0]))]
    for k in range(1, len(cells)):
        d = pair.boundary(k)
        entries: dict[tuple[int, int], int] = {}
        for j, c in enumerate(pair.cells[k]):
            for i, face in enumerate(pair.cells[k - 1]):
                v = d.entries[i][j]
                if not v:
                    continue
                entries[(pos[k - 1][face], pos[k][c])] = v
                if c in copy:
                    twin = copy.get(face, face)
                    entries[(pos[k - 1][twin], pos[k][copy[c]])] = v
        bds.append(_mat(len(cells[k - 1]), len(cells[k]), entries))
    sub = frozenset(pair.subcomplex) | frozenset(copy.values())
    return ChainComplexPair(tuple(tuple(c) for c in cells), tuple(bds), sub, f"double({pair.name})")


def s3_heegaard() -> ChainComplexPair:
    """S^3 as two solid tori glued so each meridian is the other's longitude.

    Subcomplex: the second solid torus N, so (P, N) excises to (M, dM).
    """
    cells = (("v",), ("m", "l"), ("F", "D", "E"), ("B", "C"))
    bds = (
        _mat(0, 1),
        _mat(1, 2),
        _mat(2, 3, {(0, 1): 1, (1, 2): 1}),            # d(D) = m, d(E) = l
        _mat(3, 2, {(0, 0): 1, (0, 1): -1}),           # d(B) = F, d(C) = -F
    )
    return ChainComplexPair(cells, bds, frozenset({"v", "m", "l", "F", "E", "C"}), "S3_heegaard")


def _check_genus(g: Any) -> None:
    if isinstance(g, bool) or not isinstance(g, int) or g < 0:
        raise ValueError(f"invalid genus {g!r}")


def build_standard_space(name: str, **params: Any) -> ChainComplexPair:
    """Build one of :data:`SPACE_NAMES` with keyword parameters (genus, n)."""
    if name == "circle":
        return circle()
    if name == "sphere":
        return sphere(int(params.get("n", 2)))
    if name == "surface_Sg":
        return surface(params.get("genus", params.get("g", 0)))
    if name == "torus_Tn":
        return torus(int(params.get("n", 2)))
    if name == "RP2":
        return rp2()
    if name == "klein_bottle":
        return klein_bottle()
    if name == "interval":
        return interval()
    if name == "solid_torus":
        h = handlebody(1)
        return ChainComplexPair(h.cells, h.boundaries, h.subcomplex, "solid_torus")
    if name == "handlebody":
        return handlebody(params.get("genus", params.get("g", 0)))
    if name == "T2xI":
        return t2xi()
    if name == "S3_heegaard":
        return s3_heegaard()
    raise ValueError(f"unknown space {name!r}; expected one of {', '.join(SPACE_NAMES)}")
