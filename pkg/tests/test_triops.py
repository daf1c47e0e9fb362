"""Triangulation operations: separating triangles, paste/split, 2-cycles, dual, face colorings."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from ppquad import library
from ppquad.errors import DomainError
from ppquad.harness import sbq_oracle, weak_oracle
from ppquad.reducer import V2ADD, ContractionSpec, apply
from ppquad.surface import PROJECTIVE_PLANE, validate
from ppquad.triops import (
    BLUE,
    RED,
    PastingSpec,
    contract_2cycle,
    contract_all_2cycles,
    contractible_2cycles,
    dual,
    face_2coloring,
    is_quadrangulation,
    is_triangulation,
    paste,
    paste_all,
    separating_3cycles,
    split_along,
)


def _face_sets(g):
    return sorted(sorted(f.vertices) for f in g.faces)


def test_recognizers(k6):
    assert is_triangulation(k6) and is_triangulation(library.k4())
    assert is_quadrangulation(library.cube()) and not is_triangulation(library.cube())


def test_separating_triangles(k6, octahedron):
    assert separating_3cycles(octahedron) == []
    assert separating_3cycles(k6) == []
    seps = separating_3cycles(library.stacked_k4())
    assert len(seps) == 1
    assert len(seps[0].inner_vertices) + len(seps[0].outer_vertices) == 2


def test_split_stacked_k4_gives_two_k4():
    g = library.stacked_k4()
    sides = separating_3cycles(g)[0]
    a, b = split_along(g, list(sides.cycle.edges))
    assert (a.graph.n, b.graph.n) == (4, 4)
    assert all(validate(p.graph).valid for p in (a, b))


def test_paste_then_split_inverse():
    g = paste(PastingSpec(library.k4(), 0, library.k4(), 0))
    assert g.n == 5 and validate(g).valid
    sides = separating_3cycles(g)[0]
    a, b = split_along(g, list(sides.cycle.edges))
    assert a.graph.n == b.graph.n == 4


def test_paste_empty_guest_is_identity(k6):
    assert paste(PastingSpec(k6, 3, None)) is k6


def test_paste_all_gluings(k6, octahedron):
    out = paste_all(k6, 0, octahedron, 0)
    assert len(out) == 6
    assert all(validate(g).valid and g.n == 9 for g in out)


@given(st.lists(st.tuples(st.integers(0, 9), st.sampled_from(["k4", "octahedron"])), min_size=1, max_size=3))
def test_random_pastings_valid(assign):
    g = library.k6()
    for face, guest in assign:
        h = library.BUILTINS[guest]()
        g = paste(PastingSpec(g, face % len(g.faces), h, 0))
    rep = validate(g)
    assert rep.valid and rep.chi == 1 and g.m == 3 * g.n - 3


def test_contract_empty_2cycle_removes_inner_vertex(k6):
    g = apply(k6, ContractionSpec(V2ADD, (0,))).after
    assert g.n == 7
    cs = contractible_2cycles(g)
    assert len(cs) == 1
    step = contract_2cycle(g, cs[0])
    assert step.after.n == 6 and step.removed == frozenset({6})
    assert _face_sets(step.after) == _face_sets(k6)
    # SBQ existence is unchanged
    assert sbq_oracle(g) == sbq_oracle(step.after) == weak_oracle(g)


def test_contract_rejects_simple(k6):
    assert contractible_2cycles(k6) == []
    assert contract_all_2cycles(k6) == []
    with pytest.raises(DomainError):
        contract_2cycle(k6, (0, 1))


def test_dual_shapes(k6, octahedron):
    d = dual(library.k4())
    assert d.n == 4 and d.is_cubic()
    d = dual(k6)
    assert (d.n, d.m) == (10, 15) and d.is_cubic()
    d = dual(octahedron)
    assert d.n == 8 and d.is_cubic()
    colors = face_2coloring(octahedron)
    for a, b in d.edge_ends:
        assert colors[a] != colors[b]


def test_face_2coloring(octahedron):
    colors = face_2coloring(octahedron, red=3)
    assert colors[3] == RED
    assert list(colors.values()).count(RED) == list(colors.values()).count(BLUE) == 4
    # red faces other than the root number |F|/2 - 1
    assert sum(1 for f, c in colors.items() if c == RED and f != 3) == len(octahedron.faces) // 2 - 1
    with pytest.raises(DomainError):
        face_2coloring(library.k4())
    with pytest.raises(DomainError):
        face_2coloring(library.k6())


def test_pp_surface_kept(k6):
    g = paste(PastingSpec(k6, 0, library.octahedron(), 0))
    assert g.surface == PROJECTIVE_PLANE
