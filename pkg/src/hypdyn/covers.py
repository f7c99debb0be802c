"""Orientation character and oriented double cover of simplicial manifolds.

A top simplex tau is written by its sorted vertex tuple; the pair (tau, o)
with o = +-1 stands for tau with orientation o times the vertex order. Two
top simplices sharing a facet phi are coherently oriented when
o [tau:phi] + o' [tau':phi] = 0, so each dual-graph edge carries the sign
w = -[tau:phi][tau':phi] relating o' to o.

The cover has top cells (tau, o) for both signs, glued across facets by w.
A face sigma lifts to the connected components of {(tau, o) : tau contains
sigma} under gluings across facets that contain sigma. Covers of
simplicial complexes are simplicial, so the cover is again described by its
top simplices over lifted vertices (v, i).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Hashable, Iterable, Mapping, Sequence

from .homology import ChainComplexPair
from .matrix import Matrix

Vertex = Hashable
Simplex = tuple


class ManifoldError(ValueError):
    pass


class LiftError(ValueError):
    pass


def _vlabel(v: Vertex) -> str:
    if isinstance(v, tuple):
        return "~".join(str(x) for x in v)
    return str(v)


def simplex_label(s: Simplex) -> str:
    return "[" + ",".join(_vlabel(v) for v in s) + "]"


def _sort_sign(seq: Sequence[Vertex]) -> tuple[tuple, int]:
    """Sorted tuple and the sign of the sorting permutation (0 if repeated)."""
    items = list(seq)
    if len(set(items)) != len(items):
        return tuple(sorted(items)), 0
    sign = 1
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return tuple(sorted(items)), sign


def _facets(s: Simplex) -> list[tuple[Simplex, int]]:
    """Codimension-one faces with incidence (-1)^i."""
    return [(s[:i] + s[i + 1:], (-1) ** i) for i in range(len(s))]


@dataclass(frozen=True)
class CombinatorialManifold:
    """Pure simplicial complex whose codimension-one faces lie in at most two top simplices."""

    top_simplices: tuple[Simplex, ...]
    name: str = ""
    faces: tuple[tuple[Simplex, ...], ...] = field(init=False, repr=False, compare=False)
    adjacency: tuple[tuple[int, int, Simplex], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        tops = sorted({tuple(sorted(s)) for s in self.top_simplices})
        if not tops:
            raise ManifoldError("empty complex")
        if len(tops) != len(self.top_simplices):
            raise ManifoldError("repeated top simplex")
        n = len(tops[0]) - 1
        if any(len(s) != n + 1 or len(set(s)) != n + 1 for s in tops):
            raise ManifoldError("top simplices must all have the same dimension and distinct vertices")
        object.__setattr__(self, "top_simplices", tuple(tops))
        faces: list[set[Simplex]] = [set() for _ in range(n + 1)]
        for s in tops:
            for k in range(n + 1):
                faces[k].update(combinations(s, k + 1))
        object.__setattr__(self, "faces", tuple(tuple(sorted(f)) for f in faces))
        incident: dict[Simplex, list[int]] = {}
        for t, s in enumerate(tops):
            for phi, _ in _facets(s):
                incident.setdefault(phi, []).append(t)
        adj = []
        for phi in sorted(incident):
            ts = incident[phi]
            if len(ts) > 2:
                raise ManifoldError(f"non-manifold adjacency: face {simplex_label(phi)} lies in {len(ts)} top simplices")
            if len(ts) == 2:
                adj.append((ts[0], ts[1], phi))
        object.__setattr__(self, "adjacency", tuple(adj))

    @property
    def dimension(self) -> int:
        return len(self.top_simplices[0]) - 1

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(s[0] for s in self.faces[0])

    @property
    def is_closed(self) -> bool:
        return len(self.faces[self.dimension - 1]) == len(self.adjacency)

    def chain_complex(self) -> ChainComplexPair:
        index = [{s: i for i, s in enumerate(fs)} for fs in self.faces]
        bds = [Matrix.zeros(0, len(self.faces[0]))]
        for k in range(1, self.dimension + 1):
            rows = [[0] * len(self.faces[k]) for _ in self.faces[k - 1]]
            for j, s in enumerate(self.faces[k]):
                for face, sign in _facets(s):
                    rows[index[k - 1][face]][j] += sign
            bds.append(Matrix(len(self.faces[k - 1]), len(self.faces[k]), tuple(tuple(r) for r in rows)))
        cells = tuple(tuple(simplex_label(s) for s in fs) for fs in self.faces)
        return ChainComplexPair(cells, tuple(bds), frozenset(), self.name)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(fs) for k, fs in enumerate(self.faces))

    def components(self) -> list[list[int]]:
        """Connected components of the dual graph, as sorted top-simplex indices."""
        nbrs: dict[int, list[int]] = {i: [] for i in range(len(self.top_simplices))}
        for a, b, _ in self.adjacency:
            nbrs[a].append(b)
            nbrs[b].append(a)
        seen: set[int] = set()
        out = []
        for root in range(len(self.top_simplices)):
            if root in seen:
                continue
            comp = []
            queue = deque([root])
            seen.add(root)
            while queue:
                t = queue.popleft()
                comp.append(t)
                for u in sorted(nbrs[t]):
                    if u not in seen:
                        seen.add(u)
                        queue.append(u)
            out.append(sorted(comp))
        return out

    def edge_sign(self, a: int, b: int, phi: Simplex) -> int:
        """w with o_b = w o_a for coherent orientations across phi."""
        ia = dict(_facets(self.top_simplices[a]))[phi]
        ib = dict(_facets(self.top_simplices[b]))[phi]
        return -ia * ib


@dataclass(frozen=True)
class OrientationCharacter:
    orientable: bool
    local_orientation: tuple[int, ...]
    # per dual edge (a, b, phi): +1 if the propagated orientations agree with
    # coherence, -1 otherwise; products along dual cycles realize the character
    edge_character: tuple[tuple[int, int, Simplex, int], ...]
    components: int

    @property
    def reversing_edges(self) -> list[tuple[int, int, Simplex]]:
        return [(a, b, phi) for a, b, phi, c in self.edge_character if c < 0]


def orientation_character(m: CombinatorialManifold) -> OrientationCharacter:
    """Propagate orientations breadth-first from the first top simplex of each component."""
    n_top = len(m.top_simplices)
    nbrs: dict[int, list[tuple[int, Simplex]]] = {i: [] for i in range(n_top)}
    for a, b, phi in m.adjacency:
        nbrs[a].append((b, phi))
        nbrs[b].append((a, phi))
    orient: list[int] = [0] * n_top
    comps = m.components()
    for comp in comps:
        root = comp[0]
        orient[root] = 1
        queue = deque([root])
        while queue:
            t = queue.popleft()
            for u, phi in sorted(nbrs[t]):
                if orient[u] == 0:
                    orient[u] = m.edge_sign(t, u, phi) * orient[t]
                    queue.append(u)
    chars = tuple(
        (a, b, phi, m.edge_sign(a, b, phi) * orient[a] * orient[b]) for a, b, phi in m.adjacency)
    return OrientationCharacter(all(c > 0 for *_, c in chars), tuple(orient), chars, len(comps))


@dataclass(frozen=True)
class DoubleCover:
    base: CombinatorialManifold
    cover: CombinatorialManifold
    # (tau index, o) -> cover top simplex
    sheets: Mapping[tuple[int, int], Simplex]
    vertex_lift: Mapping[tuple[Vertex, int, int], Vertex]
    deck_map: Mapping[Vertex, Vertex]

    def project_vertex(self, v: Vertex) -> Vertex:
        return v[0]

    def project(self, s: Simplex) -> Simplex:
        return tuple(v[0] for v in s)

    def deck_vertex(self, v: Vertex) -> Vertex:
        return self.deck_map[v]

    def deck(self, s: Simplex) -> Simplex:
        return tuple(sorted(self.deck_vertex(v) for v in s))

    def projection_map(self) -> list[Matrix]:
        """Chain map p_# from the cover complex to the base complex, per degree."""
        out = []
        for k in range(self.cover.dimension + 1):
            idx = {s: i for i, s in enumerate(self.base.faces[k])}
            rows = [[0] * len(self.cover.faces[k]) for _ in self.base.faces[k]]
            for j, s in enumerate(self.cover.faces[k]):
                rows[idx[self.project(s)]][j] = 1
            out.append(Matrix(len(self.base.faces[k]), len(self.cover.faces[k]), tuple(tuple(r) for r in rows)))
        return out


def _deck_table(sheets: Mapping[tuple[int, int], Simplex]) -> dict[Vertex, Vertex]:
    table: dict[Vertex, Vertex] = {}
    for (t, o), top in sheets.items():
        for v, w in zip(top, sheets[(t, -o)]):
            if table.setdefault(v, w) != w:  # pragma: no cover - lift sets would not form a cover
                raise ManifoldError("deck involution is not well defined")
    return table


def _lift_components(m: CombinatorialManifold) -> dict[tuple[Vertex, int, int], int]:
    """For each vertex v and sheet (tau, o) with v in tau, the index of its lift of v."""
    out: dict[tuple[Vertex, int, int], int] = {}
    containing: dict[Vertex, list[int]] = {}
    for t, s in enumerate(m.top_simplices):
        for v in s:
            containing.setdefault(v, []).append(t)
    glue: dict[int, list[tuple[int, Simplex]]] = {}
    for a, b, phi in m.adjacency:
        glue.setdefault(a, []).append((b, phi))
        glue.setdefault(b, []).append((a, phi))
    for v, ts in containing.items():
        idx = 0
        for t0 in ts:
            for o0 in (1, -1):
                if (v, t0, o0) in out:
                    continue
                queue = deque([(t0, o0)])
                out[(v, t0, o0)] = idx
                while queue:
                    t, o = queue.popleft()
                    for u, phi in glue.get(t, []):
                        if v not in phi:
                            continue
                        nxt = (u, m.edge_sign(t, u, phi) * o)
                        if (v, *nxt) not in out:
                            out[(v, *nxt)] = idx
                            queue.append(nxt)
                idx += 1
    return out


def oriented_double_cover(m: CombinatorialManifold) -> DoubleCover:
    comp = _lift_components(m)
    sheets: dict[tuple[int, int], Simplex] = {}
    tops = []
    for t, s in enumerate(m.top_simplices):
        for o in (1, -1):
            top = tuple((v, comp[(v, t, o)]) for v in s)
            sheets[(t, o)] = top
            tops.append(top)
    cover = CombinatorialManifold(tuple(tops), f"cover({m.name})" if m.name else "cover")
    lift = {(v, t, o): (v, i) for (v, t, o), i in comp.items()}
    return DoubleCover(m, cover, sheets, lift, _deck_table(sheets))


# -- cellular maps --------------------------------------------------------


@dataclass(frozen=True)
class CellularSelfMap:
    """Simplicial self-map given on vertices, with its induced chain map."""

    manifold: CombinatorialManifold
    vertex_map: Mapping[Vertex, Vertex]

    def __post_init__(self) -> None:
        vs = set(self.manifold.vertices)
        if set(self.vertex_map) != vs:
            raise ValueError("vertex map must be defined on exactly the vertices")
        if not set(self.vertex_map.values()) <= vs:
            raise ValueError("vertex map leaves the complex")
        for k, fs in enumerate(self.manifold.faces):
            present = set(fs)
            for s in fs:
                img, sign = _sort_sign([self.vertex_map[v] for v in s])
                if sign and img not in present:
                    raise ValueError(f"image of {simplex_label(s)} is not a simplex")

    @classmethod
    def from_vertex_map(cls, m: CombinatorialManifold, vmap: Mapping[Vertex, Vertex]) -> "CellularSelfMap":
        return cls(m, dict(vmap))

    def image(self, s: Simplex) -> tuple[Simplex, int]:
        return _sort_sign([self.vertex_map[v] for v in s])

    def chain_matrices(self) -> list[Matrix]:
        out = []
        for fs in self.manifold.faces:
            idx = {s: i for i, s in enumerate(fs)}
            rows = [[0] * len(fs) for _ in fs]
            for j, s in enumerate(fs):
                img, sign = self.image(s)
                if sign:
                    rows[idx[img]][j] += sign
            out.append(Matrix(len(fs), len(fs), tuple(tuple(r) for r in rows)))
        return out

    def is_chain_map(self) -> bool:
        cx = self.manifold.chain_complex()
        f = self.chain_matrices()
        return all(cx.boundary(k) @ f[k] == f[k - 1] @ cx.boundary(k) for k in range(1, len(f)))

    def compose(self, other: "CellularSelfMap") -> "CellularSelfMap":
        """self after other."""
        return CellularSelfMap(self.manifold, {v: self.vertex_map[other.vertex_map[v]] for v in other.vertex_map})

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.vertex_map.items())


@dataclass(frozen=True)
class LiftReport:
    lift: CellularSelfMap
    sheet: int
    cells_checked: int


def lift_map(f: CellularSelfMap, cover: DoubleCover, sheet: int = 1) -> LiftReport:
    """Lift f to the orientation cover: (tau, o) -> (f tau, sheet * eps(tau) * o).

    eps(tau) is the sign with which f carries the vertex order of tau to that
    of its image; the two lifts differ by the deck involution and ``sheet``
    chooses between them (sheet = +1 lifts the identity to the identity).
    Raises :class:`LiftError` when f is not a chain map, collapses a top
    simplex, or the push-forward is not compatible with the gluings.
    """
    if sheet not in (1, -1):
        raise ValueError("sheet must be +1 or -1")
    base = cover.base
    if f.manifold != base:
        raise LiftError("map is not defined on the base of this cover")
    if not f.is_chain_map():
        raise LiftError("map is not a chain map")
    top_index = {s: i for i, s in enumerate(base.top_simplices)}
    vmap: dict[Vertex, Vertex] = {}
    for (t, o), top in cover.sheets.items():
        img, eps = f.image(base.top_simplices[t])
        if eps == 0:
            raise LiftError(f"map collapses top simplex {simplex_label(base.top_simplices[t])}")
        target = cover.sheets[(top_index[img], sheet * eps * o)]
        lifted = dict((v[0], v) for v in target)
        for v in top:
            w = lifted[f.vertex_map[v[0]]]
            if vmap.setdefault(v, w) != w:
                raise LiftError(f"push-forward is not well defined at cover vertex {_vlabel(v)}")
    try:
        lift = CellularSelfMap(cover.cover, vmap)
    except ValueError as exc:
        raise LiftError(str(exc)) from None
    # commuting square p o lift = f o p, cell by cell and on chains
    checked = 0
    for fs in cover.cover.faces:
        for s in fs:
            img, sign = lift.image(s)
            bimg, bsign = f.image(cover.project(s))
            if sign != bsign or (sign and cover.project(img) != bimg):
                raise LiftError(f"commuting square fails at {simplex_label(s)}")
            checked += 1
    p = cover.projection_map()
    fb, fc = f.chain_matrices(), lift.chain_matrices()
    for k in range(len(p)):
        if p[k] @ fc[k] != fb[k] @ p[k]:
            raise LiftError(f"chain-level commuting square fails in degree {k}")  # pragma: no cover
    return LiftReport(lift, sheet, checked)


# -- standard triangulations --------------------------------------------------

RP2_FACETS = ((1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
              (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6))


def rp2_6() -> CombinatorialManifold:
    """Six-vertex real projective plane (half of the icosahedron)."""
    return CombinatorialManifold(RP2_FACETS, "RP2")


def sphere_tetrahedron() -> CombinatorialManifold:
    return CombinatorialManifold(tuple(combinations(range(1, 5), 3)), "S2")


def _grid(n: int, twist: bool, name: str) -> CombinatorialManifold:
    def vid(i: int, j: int) -> int:
        if twist and j == n:
            i = -i
        return (i % n) * n + (j % n) + 1

    tris = []
    for i in range(n):
        for j in range(n):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            tris.append((a, b, c))
            tris.append((a, c, d))
    return CombinatorialManifold(tuple(tris), name)


def torus_grid(n: int = 3) -> CombinatorialManifold:
    return _grid(n, False, "T2")


def klein_grid(n: int = 3) -> CombinatorialManifold:
    """Square grid with the j-direction identification reversing i."""
    return _grid(n, True, "klein_bottle")


def is_closed_surface(m: CombinatorialManifold) -> bool:
    """Every edge in exactly two triangles and every vertex link a single cycle."""
    if m.dimension != 2:
        return False
    if len(m.adjacency) != len(m.faces[1]):
        return False
    for v in m.vertices:
        link_edges = [tuple(x for x in s if x != v) for s in m.top_simplices if v in s]
        nbr: dict[Vertex, list[Vertex]] = {}
        for a, b in link_edges:
            nbr.setdefault(a, []).append(b)
            nbr.setdefault(b, []).append(a)
        if any(len(x) != 2 for x in nbr.values()):
            return False
        start = next(iter(nbr))
        seen = {start}
        prev, cur = None, start
        while True:
            nxt = [x for x in nbr[cur] if x != prev][0] if prev is not None else nbr[cur][0]
            if nxt == start:
                break
            if nxt in seen:
                return False
            seen.add(nxt)
            prev, cur = cur, nxt
        if len(seen) != len(nbr):
            return False
    return True


def simplicial_automorphisms(m: CombinatorialManifold) -> Iterable[dict[Vertex, Vertex]]:
    """Vertex permutations preserving the set of top simplices, in lexicographic order."""
    vs = list(m.vertices)
    tops = set(m.top_simplices)
    for perm in permutations(vs):
        vmap = dict(zip(vs, perm))
        if all(tuple(sorted(vmap[v] for v in s)) in tops for s in m.top_simplices):
            yield vmap


def first_involution(m: CombinatorialManifold) -> dict[Vertex, Vertex]:
    """First non-identity simplicial involution in lexicographic order."""
    for vmap in simplicial_automorphisms(m):
        if any(k != v for k, v in vmap.items()) and all(vmap[vmap[v]] == v for v in vmap):
            return vmap
    raise ValueError("no non-trivial involution")
