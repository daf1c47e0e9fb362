"""Quasi-Eulerian recognition, decomposition replay, and prescribed mono-face extensions."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from ppquad import library
from ppquad.colorings import B, W, mono_count_histogram, mono_faces
from ppquad.errors import DomainError, PreconditionError
from ppquad.harness import plane_pastings
from ppquad.quasi import (
    decompose,
    extend_mono_to_near_weak,
    extend_mono_to_two_mono,
    is_quasi_eulerian,
    qe_oracle,
    replay,
    same_faces,
    two_mono_coloring,
    verify_decomposition,
)
from ppquad.triops import BLUE, RED, PastingSpec, face_2coloring, is_eulerian, paste, separating_3cycles


def _red_blue(g):
    colors = face_2coloring(g, 0)
    red = [f for f, c in colors.items() if c == RED]
    blue = [f for f, c in colors.items() if c == BLUE]
    return red, blue


def oct_with(guest, color):
    o = library.octahedron()
    red, blue = _red_blue(o)
    face = (blue if color == BLUE else red)[0] if (blue if color == BLUE else red)[0] != 0 else red[1]
    return paste(PastingSpec(o, face, guest, 0))


def plane_instances():
    out = [library.octahedron(), library.k4(), library.stacked_k4(), library.icosahedron()]
    out += [g for _, g in plane_pastings()]
    out += [oct_with(library.k4(), BLUE), oct_with(library.k4(), RED), oct_with(library.octahedron(), BLUE)]
    return out


def check_all_faces(g):
    for f in range(len(g.faces)):
        d = decompose(g, f)
        assert verify_decomposition(d)
        assert same_faces(replay(d), g)
        qe = d.quasi_eulerian
        assert qe == qe_oracle(g, f) == (is_quasi_eulerian(g, f) is not None)
        if qe:
            c = extend_mono_to_two_mono(g, f, B, d)
            assert len(mono_faces(g, c)) == 2 and f in mono_faces(g, c)
            with pytest.raises(DomainError):
                extend_mono_to_near_weak(g, f, B, d)
        else:
            c = extend_mono_to_near_weak(g, f, W, d)
            assert mono_faces(g, c) == [f] and c[g.faces[f].vertices[0]] == W
            with pytest.raises(DomainError):
                extend_mono_to_two_mono(g, f, B, d)


def test_base_cases(octahedron):
    assert all(is_quasi_eulerian(octahedron, f) for f in range(8))
    k4 = library.k4()
    assert not any(is_quasi_eulerian(k4, f) for f in range(4))
    assert qe_oracle(octahedron, 0) and not qe_oracle(k4, 0)


def test_blue_vs_red_pasting():
    on_blue = oct_with(library.k4(), BLUE)
    on_red = oct_with(library.k4(), RED)
    assert is_quasi_eulerian(on_blue, 0) is None
    assert is_quasi_eulerian(on_red, 0) is not None
    assert not qe_oracle(on_blue, 0) and qe_oracle(on_red, 0)


def test_decomposition_shape():
    g = oct_with(library.octahedron(), BLUE)
    d = decompose(g, 0)
    assert d.eulerian and d.quasi_eulerian and len(d.attachments) == 1
    a = d.attachments[0]
    assert a.color == BLUE and a.child is not None and a.child.quasi_eulerian
    assert d.depth() == 2
    assert not separating_3cycles(d.skeleton) and is_eulerian(d.skeleton)
    assert d.face_colors[d.skeleton_root] == RED
    tree = d.to_dict()
    assert len(tree["blue"]) == 1 and tree["blue"][0]["child"]["kind"] == "skeleton"


@pytest.mark.parametrize("g", plane_instances(), ids=lambda g: f"n{g.n}")
def test_recognizer_matches_oracle(g):
    check_all_faces(g)


@given(st.lists(st.tuples(st.integers(0, 40), st.sampled_from(["k4", "octahedron"])), min_size=1, max_size=2),
       st.sampled_from(["octahedron", "k4"]))
def test_random_nested_pastings(assign, host):
    g = library.BUILTINS[host]()
    for face, guest in assign:
        h = library.BUILTINS[guest]()
        if g.n + h.n - 3 > 9:
            break
        g = paste(PastingSpec(g, face % len(g.faces), h, 0))
    check_all_faces(g)


def test_two_mono_on_octahedron(octahedron):
    red, blue = _red_blue(octahedron)
    c = two_mono_coloring(octahedron, red[0], blue[0])
    assert sorted(mono_faces(octahedron, c)) == sorted([red[0], blue[0]])
    with pytest.raises(PreconditionError):
        two_mono_coloring(octahedron, red[0], red[1])


def test_mono_red_equals_mono_blue(octahedron):
    from itertools import product

    red, blue = _red_blue(octahedron)
    for bits in product((B, W), repeat=6):
        mono = mono_faces(octahedron, dict(enumerate(bits)))
        assert sum(f in red for f in mono) == sum(f in blue for f in mono)


def test_k4_near_weak_and_octahedron_errors(octahedron):
    k4 = library.k4()
    for f in range(4):
        c = extend_mono_to_near_weak(k4, f)
        assert mono_faces(k4, c) == [f]
    with pytest.raises(DomainError):
        extend_mono_to_near_weak(octahedron, 0)
    with pytest.raises(DomainError):
        extend_mono_to_two_mono(k4, 0)
    with pytest.raises(PreconditionError):
        decompose(library.k6(), 0)


def test_eulerian_even_mono(octahedron):
    assert all(k % 2 == 0 for k in mono_count_histogram(octahedron))
