"""Constructive colorings: weak extension, 4-coloring, BWBW/BBBW boundaries, K6 minus an edge."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import enumerated, k6_minus_edge_plus_vertex
from ppquad import library
from ppquad.colorings import B, W, mono_faces
from ppquad.construct import (
    bbbw_coloring,
    bwbw_coloring,
    cliques,
    extend_weak,
    find_x_subgraphs,
    four_color,
    has_k6,
    is_proper,
    near_triangulation,
    x_subgraph_coloring,
)
from ppquad.errors import DomainError, PreconditionError
from ppquad.harness import weak_oracle, z_graphs
from ppquad.surface import SPHERE, from_polygons


def quad_near_triangulations(g):
    """Delete each edge of a plane triangulation; the merged face becomes the outer quad."""
    out = []
    for e in range(g.m):
        (f1, _), (f2, _) = g.edge_sides[e]
        a, b = g.edges[e]
        c = next(x for x in g.faces[f1].vertices if x not in (a, b))
        d = next(x for x in g.faces[f2].vertices if x not in (a, b))
        if c == d:
            continue
        polys = [f.vertices for f in g.faces if f.face_id not in (f1, f2)] + [(a, c, b, d)]
        h = from_polygons(polys, SPHERE, g.n)
        out.append(near_triangulation(h, [a, c, b, d]))
    return out


def plane_hosts():
    return [library.octahedron(), library.icosahedron(), library.stacked_k4(), library.k4()]


def wheel4():
    return from_polygons([(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4), (3, 2, 1, 0)], SPHERE)


# -- extend_weak -------------------------------------------------------------


def test_extend_weak_k4():
    k4 = library.k4()
    f = k4.faces[0]
    a, b, c = f.vertices
    out = extend_weak(k4, 0, {a: B, b: B, c: W})
    assert mono_faces(k4, out) == [] and out[a] == B and out[c] == W
    assert out[next(v for v in range(4) if v not in f.vertices)] == W
    with pytest.raises(DomainError):
        extend_weak(k4, 0, {a: B, b: B, c: B})
    with pytest.raises(PreconditionError):
        extend_weak(k4, 0, {a: B})


@pytest.mark.parametrize("g", plane_hosts(), ids=lambda g: f"n{g.n}")
def test_extend_weak_every_face(g):
    for f in g.faces:
        for cols in itertools.product((B, W), repeat=3):
            if len(set(cols)) == 1:
                continue
            c_f = dict(zip(f.vertices, cols))
            out = extend_weak(g, f.face_id, c_f)
            assert mono_faces(g, out) == []
            assert all(out[v] == c_f[v] for v in c_f)


# -- four_color --------------------------------------------------------------


def test_four_color_basics():
    k4 = library.k4()
    phi = four_color(4, k4.edges)
    assert sorted(phi.values()) == [1, 2, 3, 4]
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    phi = four_color(5, c5)
    assert is_proper(c5, phi) and len(set(phi.values())) <= 3
    o = library.octahedron()
    assert is_proper(o.edges, four_color(6, o.edges))
    assert four_color(3, [(0, 1)], {0: 1, 1: 1}) is None


@given(st.integers(0, 11), st.integers(1, 4))
def test_four_color_precolored(v, col):
    ico = library.icosahedron()
    phi = four_color(12, ico.edges, {v: col})
    assert phi is not None and phi[v] == col and is_proper(ico.edges, phi)


# -- boundary patterns -------------------------------------------------------


def test_bwbw_plain_and_wheel():
    nt = near_triangulation(library.cycle(4), [0, 1, 2, 3])
    bc = bwbw_coloring(nt)
    assert [bc.coloring[u] for u in nt.boundary] == [B, W, B, W] and bc.mono == ()
    nt = near_triangulation(wheel4(), [0, 1, 2, 3])
    bc = bwbw_coloring(nt)
    assert bc.mono == () and len(nt.inner_faces) == 4


def test_bbbw_plain_and_wheel():
    nt = near_triangulation(library.cycle(4), [0, 1, 2, 3])
    bc = bbbw_coloring(nt)
    assert bc.branch == "weak" and [bc.coloring[u] for u in nt.boundary] == [B, B, B, W]
    w = wheel4()
    nt = near_triangulation(w, [0, 1, 2, 3])
    bc = bbbw_coloring(nt)
    assert [bc.coloring[u] for u in (0, 1, 2)] == [B, B, B]
    assert set(bc.mono) <= {nt.outer}
    # exhaustive: some completion is weak or mono only on the outer face
    assert any(not mono_faces(w, {0: B, 1: B, 2: B, 3: c3, 4: c4}) or
               mono_faces(w, {0: B, 1: B, 2: B, 3: c3, 4: c4}) == [nt.outer]
               for c3 in (B, W) for c4 in (B, W))


def test_bbbw_rejects_chord():
    g = from_polygons([(0, 1, 2), (0, 2, 3), (3, 2, 1, 0)], SPHERE)
    with pytest.raises(PreconditionError):
        bbbw_coloring(near_triangulation(g, [0, 1, 2, 3]))


@pytest.mark.parametrize("host", plane_hosts(), ids=lambda g: f"n{g.n}")
def test_boundary_patterns_on_quads(host):
    for nt in quad_near_triangulations(host):
        g = nt.graph
        bc = bwbw_coloring(nt)
        assert mono_faces(g, bc.coloring) == []
        u1, u2, u3, u4 = nt.boundary
        for rot in range(4):
            b = nt.boundary[rot:] + nt.boundary[:rot]
            if b[2] in g.neighbors[b[0]]:
                continue
            bc = bbbw_coloring(near_triangulation(g, b))
            c = bc.coloring
            assert c[b[0]] == c[b[1]] == c[b[2]] == B
            mono = mono_faces(g, c)
            inner = [f for f in mono if f != nt.outer]
            assert inner == [] and len(mono) <= 1
            if bc.branch == "weak":
                assert c[b[3]] == W


# -- K6 minus an edge --------------------------------------------------------


def test_cliques(k6):
    assert cliques(k6, 6) == [tuple(range(6))] and has_k6(k6)
    assert not has_k6(k6_minus_edge_plus_vertex())


def test_x_subgraph_fixture():
    g = k6_minus_edge_plus_vertex()
    xs = find_x_subgraphs(g)
    assert xs and {xs[0].v1, xs[0].v4} == {0, 1}
    c, x, branch = x_subgraph_coloring(g)
    assert mono_faces(g, c) == [] and c[x.u] == c[x.v] == W
    assert branch in ("weak", "near-weak")


def test_x_subgraph_on_enumerated():
    hits = 0
    for g in enumerated(8):
        if has_k6(g) or not find_x_subgraphs(g):
            continue
        for x in find_x_subgraphs(g):
            c, _, _ = x_subgraph_coloring(g, x)
            assert mono_faces(g, c) == []
        hits += 1
    assert hits == 7


def test_x_subgraph_rejects_k6(k6):
    with pytest.raises(DomainError):
        x_subgraph_coloring(k6)


def test_z_graphs():
    zs = z_graphs()
    assert len(zs) == 2
    mins = sorted(min(g.degree(v) for v in range(g.n)) for g in zs)
    assert mins == [4, 5]
    for g in zs:
        assert g.n == 10 and g.is_simple() and weak_oracle(g)
        assert not find_x_subgraphs(g) and not has_k6(g)
