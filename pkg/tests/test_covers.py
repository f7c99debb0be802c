from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from hypdyn.covers import (
    CellularSelfMap,
    CombinatorialManifold,
    LiftError,
    ManifoldError,
    first_involution,
    is_closed_surface,
    klein_grid,
    lift_map,
    orientation_character,
    oriented_double_cover,
    rp2_6,
    simplicial_automorphisms,
    sphere_tetrahedron,
    torus_grid,
)
from hypdyn.homology import homology

SURFACES = {
    "RP2": (rp2_6, False),
    "klein": (klein_grid, False),
    "T2": (torus_grid, True),
    "S2": (sphere_tetrahedron, True),
}


def relabel(m: CombinatorialManifold, seed: int) -> CombinatorialManifold:
    rng = random.Random(seed)
    vs = list(m.vertices)
    image = vs[:]
    rng.shuffle(image)
    tops = [tuple(image[vs.index(v)] for v in s) for s in m.top_simplices]
    rng.shuffle(tops)
    return CombinatorialManifold(tuple(tops), m.name)


@pytest.mark.parametrize("name", SURFACES)
def test_models_are_closed_surfaces(name):
    m = SURFACES[name][0]()
    assert is_closed_surface(m) and m.is_closed


@pytest.mark.parametrize("name", SURFACES)
def test_orientation_character(name):
    build, orientable = SURFACES[name]
    ch = orientation_character(build())
    assert ch.orientable is orientable
    assert bool(ch.reversing_edges) is (not orientable)


@given(st.sampled_from(sorted(SURFACES)), st.integers(0, 10 ** 6))
def test_character_class_independent_of_labels(name, seed):
    build, orientable = SURFACES[name]
    assert orientation_character(relabel(build(), seed)).orientable is orientable


def test_rp2_cover_is_sphere():
    cov = oriented_double_cover(rp2_6())
    h = homology(cov.cover.chain_complex())
    assert cov.cover.euler_characteristic() == 2
    assert [str(g) for g in h] == ["Z", "0", "Z"]
    assert len(cov.cover.components()) == 1


def test_klein_cover_is_torus():
    cov = oriented_double_cover(klein_grid())
    h = homology(cov.cover.chain_complex())
    assert cov.cover.euler_characteristic() == 0
    assert [str(g) for g in h] == ["Z", "Z^2", "Z"]
    assert orientation_character(cov.cover).orientable


@pytest.mark.parametrize("build", [torus_grid, sphere_tetrahedron])
def test_orientable_base_gives_two_copies(build):
    base = build()
    cov = oriented_double_cover(base)
    comps = cov.cover.components()
    assert len(comps) == 2
    h = homology(cov.cover.chain_complex())
    hb = homology(base.chain_complex())
    assert [g.free_rank for g in h] == [2 * g.free_rank for g in hb]


@given(st.sampled_from(sorted(SURFACES)), st.integers(0, 10 ** 6))
def test_cover_invariants(name, seed):
    base = relabel(SURFACES[name][0](), seed)
    cov = oriented_double_cover(base)
    cover = cov.cover
    assert cover.euler_characteristic() == 2 * base.euler_characteristic()
    assert orientation_character(cover).orientable
    top = homology(cover.chain_complex())[-1]
    assert top.free_rank == len(cover.components()) and not top.torsion
    for fs in cover.faces:
        for s in fs:
            t = cov.deck(s)
            assert t != s  # free on cells
            assert cov.project(t) == cov.project(s)
            assert cov.deck(t) == s
    for k, fs in enumerate(cover.faces):
        assert len(fs) == 2 * len(base.faces[k])


def test_projection_is_chain_map():
    cov = oriented_double_cover(rp2_6())
    p = cov.projection_map()
    cb, cc = cov.base.chain_complex(), cov.cover.chain_complex()
    for k in range(1, len(p)):
        assert cb.boundary(k) @ p[k] == p[k - 1] @ cc.boundary(k)


def test_non_manifold_rejected():
    with pytest.raises(ManifoldError):
        CombinatorialManifold(((1, 2, 3), (1, 2, 4), (1, 2, 5)))


# -- lifting ------------------------------------------------------------------------


def test_identity_lifts_to_identity():
    base = rp2_6()
    cov = oriented_double_cover(base)
    ident = CellularSelfMap(base, {v: v for v in base.vertices})
    rep = lift_map(ident, cov)
    assert rep.lift.is_identity()
    other = lift_map(ident, cov, sheet=-1).lift
    assert all(other.vertex_map[v] == cov.deck_vertex(v) for v in cov.cover.vertices)


def test_rp2_involution_lift():
    base = rp2_6()
    cov = oriented_double_cover(base)
    f = CellularSelfMap(base, first_involution(base))
    assert f.is_chain_map()
    rep = lift_map(f, cov)
    assert rep.cells_checked == sum(len(fs) for fs in cov.cover.faces)
    assert rep.lift.compose(rep.lift).is_identity()


def test_lift_of_inverse_composes_to_identity():
    base = rp2_6()
    cov = oriented_double_cover(base)
    autos = list(simplicial_automorphisms(base))
    assert len(autos) == 60
    for vmap in autos:
        inv = {w: v for v, w in vmap.items()}
        f, g = CellularSelfMap(base, vmap), CellularSelfMap(base, inv)
        assert lift_map(f, cov).lift.compose(lift_map(g, cov).lift).is_identity()


def test_orientation_preserving_torus_map_is_block_diagonal():
    base = torus_grid()
    cov = oriented_double_cover(base)
    # translation (i, j) -> (i + 1, j) of the 3 x 3 grid
    shift = {v: ((v - 1) // 3 + 1) % 3 * 3 + (v - 1) % 3 + 1 for v in base.vertices}
    lift = lift_map(CellularSelfMap(base, shift), cov).lift
    comps = cov.cover.components()
    where = {}
    for ci, comp in enumerate(comps):
        for t in comp:
            for v in cov.cover.top_simplices[t]:
                where[v] = ci
    assert all(where[lift.vertex_map[v]] == where[v] for v in cov.cover.vertices)


def test_lift_errors():
    base = rp2_6()
    cov = oriented_double_cover(base)
    with pytest.raises(LiftError):
        lift_map(CellularSelfMap(torus_grid(), {v: v for v in torus_grid().vertices}), cov)
    with pytest.raises(ValueError):
        CellularSelfMap(base, {1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})  # not simplicial
    collapse = CellularSelfMap(base, {v: 1 for v in base.vertices})
    with pytest.raises(LiftError):
        lift_map(collapse, cov)
