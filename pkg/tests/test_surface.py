"""Signed rotation systems: validation, face tracing, signs, contractibility, edge-width."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import enumerated
from ppquad import library, pem
from ppquad.errors import StructuralError
from ppquad.surface import (
    PROJECTIVE_PLANE,
    SPHERE,
    EmbeddedGraph,
    edge_width,
    is_bipartite,
    is_contractible,
    is_orientable,
    normalize_signs,
    relabel,
    require_valid,
    shortest_noncontractible_cycle,
    switch,
    validate,
)


def _flip_sign(g: EmbeddedGraph, e: int) -> EmbeddedGraph:
    signs = list(g.signs)
    signs[e] = -signs[e]
    return EmbeddedGraph(g.n, g.edges, g.rotation, tuple(signs), g.surface, g.allow_loops)


def test_k6_counts(k6):
    rep = validate(k6)
    assert rep.valid and (rep.n, rep.m, rep.f, rep.chi) == (6, 15, 10, 1)
    assert all(f.length == 3 for f in k6.faces)


def test_k4_and_cycle_on_sphere():
    rep = validate(library.k4())
    assert rep.valid and rep.f == 4 and rep.chi == 2
    c4 = library.cycle(4)
    assert sorted(f.length for f in c4.faces) == [4, 4]


def test_flipped_sign_breaks_euler(k6):
    bad = [e for e in range(k6.m) if not validate(_flip_sign(k6, e)).valid]
    assert bad, "some single sign flip must change the face structure"
    rep = validate(_flip_sign(k6, bad[0]))
    assert rep.problems


def test_every_dart_once(k6):
    darts = [d for rot in k6.rotation for d in rot]
    assert len(darts) == len(set(darts)) == 2 * k6.m
    sides = [(f.face_id, k) for f in k6.faces for k in range(f.length)]
    assert len(sides) == 2 * k6.m


def test_signs_normalize(k6, octahedron):
    assert set(normalize_signs(octahedron).signs) == {1}
    assert is_orientable(octahedron) and not is_orientable(k6)
    assert -1 in normalize_signs(k6).signs
    once = normalize_signs(k6)
    assert normalize_signs(once) == once


@given(st.lists(st.integers(0, 5), max_size=6))
def test_switching_preserves_faces(vs):
    g = library.k6()
    h = g
    for v in vs:
        h = switch(h, v)
    assert validate(h).valid
    assert sorted(sorted(f.vertices) for f in h.faces) == sorted(sorted(f.vertices) for f in g.faces)


def test_contractibility(k6, octahedron):
    for f in octahedron.faces:
        assert is_contractible(octahedron, f.edge_ids)
    for f in k6.faces:
        assert is_contractible(k6, f.edge_ids)
    # every edge of K6 lies on a noncontractible triangle
    for e, (a, b) in enumerate(k6.edges):
        found = False
        for c in range(6):
            if c in (a, b):
                continue
            cyc = [e, k6.edges_between(b, c)[0], k6.edges_between(c, a)[0]]
            found |= not is_contractible(k6, cyc)
        assert found


def test_edge_width(k6):
    assert edge_width(k6) == 3
    c = shortest_noncontractible_cycle(k6)
    assert len(c.edges) == 3 and not is_contractible(k6, c.edges)


def test_edge_width_of_multigraphs():
    from ppquad.reducer import apply, applicable_specs

    widths = set()
    for g in enumerated(7):
        for spec in applicable_specs(g):
            h = apply(g, spec).after
            w = edge_width(h)
            loops = any(a == b for a, b in h.edges)
            if loops:
                assert w == 1
            widths.add(w)
    assert {1, 2} <= widths


def test_bipartite():
    side = is_bipartite(library.cycle(4))
    assert side is not None and sorted(list(side.values()).count(s) for s in (0, 1)) == [2, 2]
    assert is_bipartite(library.k6()) is None
    assert is_bipartite(library.cube()) is not None


def test_pem_round_trip(tmp_path, pp_corpus):
    for g in pp_corpus:
        text = pem.dumps(g)
        assert pem.dumps(pem.loads(text)) == text
    p = tmp_path / "k6.pem"
    pem.write(library.k6(), p)
    assert pem.read(p).edges == library.k6().edges


def test_pem_rejects_garbage():
    with pytest.raises(StructuralError):
        pem.loads("surface pp\nvertices 2\nrot 0 9.0\n")


@given(st.permutations(range(6)))
def test_relabel_preserves_validity(perm):
    g = relabel(library.k6(), list(perm))
    require_valid(g)
    assert edge_width(g) == 3


def test_enumerated_instances_valid(pp_corpus):
    for g in pp_corpus:
        rep = validate(g)
        assert rep.valid and rep.chi == 1 and g.m == 3 * g.n - 3 and rep.f == 2 * g.n - 2
        assert g.surface == PROJECTIVE_PLANE and g.is_simple()
    assert library.k4().surface == SPHERE
