"""Dual matchings, {1,3}-factors, quadrangulation extraction, parity, max-cut."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from ppquad import library
from ppquad.colorings import B, W, mono_faces
from ppquad.errors import DomainError, PreconditionError
from ppquad.factors import (
    coloring_to_factor,
    cut_size,
    factor_to_coloring,
    factors,
    has_perfect_matching,
    is_perfect_matching,
    matching_through,
    max_bipartite_subgraph,
    parity_bipartite,
    perfect_matchings,
    quadrangulation_from,
    three_vertices,
)
from ppquad.reducer import complement_bipartite
from ppquad.surface import is_bipartite, shortest_noncontractible_cycle
from ppquad.triops import dual, is_quadrangulation


def brute_matchings(d):
    """Perfect matchings by trying every edge subset of size n/2."""
    out = set()
    for sub in itertools.combinations(range(d.m), d.n // 2):
        if is_perfect_matching(d, sub):
            out.add(frozenset(sub))
    return out


@pytest.mark.parametrize("name,count", [("k4", 3), ("octahedron", 9), ("k6", 6)])
def test_matching_counts(name, count):
    d = dual(library.BUILTINS[name]())
    ms = set(perfect_matchings(d))
    assert len(ms) == count
    assert ms == brute_matchings(d)


def test_limit_and_through():
    d = dual(library.k6())
    assert len(list(perfect_matchings(d, limit=1))) == 1
    for e in range(d.m):
        m = matching_through(d, e)
        assert e in m and is_perfect_matching(d, m)
    oc = dual(library.octahedron())
    assert all(len(matching_through(oc, e)) == 4 for e in range(oc.m))
    assert all(len(matching_through(dual(library.k4()), e)) == 2 for e in range(6))


def test_quadrangulation_extraction(octahedron):
    m = next(perfect_matchings(dual(octahedron)))
    q, emap = quadrangulation_from(octahedron, m)
    assert is_quadrangulation(q) and len(q.faces) == 4 and q.n == 6
    assert set(emap) == set(range(octahedron.m)) - m
    k4 = library.k4()
    q, _ = quadrangulation_from(k4, next(perfect_matchings(dual(k4))))
    assert sorted(f.length for f in q.faces) == [4, 4] and is_bipartite(q)
    f0 = k4.faces[0].edge_ids
    with pytest.raises(DomainError):
        quadrangulation_from(k4, {f0[0], f0[1]})
    with pytest.raises(PreconditionError):
        quadrangulation_from(library.cube(), set())


def test_parity_equals_bfs_on_corpus(pp_corpus):
    checked = 0
    for g in pp_corpus:
        for m in perfect_matchings(dual(g)):
            q, _ = quadrangulation_from(g, m)
            assert parity_bipartite(g, m) == (is_bipartite(q) is not None) == complement_bipartite(g, m)
            checked += 1
    assert checked > 200


def test_parity_on_sphere_and_k6(k6, octahedron):
    assert all(parity_bipartite(octahedron, m) for m in perfect_matchings(dual(octahedron)))
    assert not any(parity_bipartite(k6, m) for m in perfect_matchings(dual(k6)))


def test_parity_violation_gives_odd_noncontractible_cycle(k6):
    from ppquad.surface import is_contractible
    from ppquad.triops import three_cycles

    found = 0
    for m in perfect_matchings(dual(k6)):
        for tri in three_cycles(k6):
            if is_contractible(k6, tri) or set(tri) & m:
                continue
            # |C & M| = 0 and |C| = 3 violate the congruence; C survives in T - M as an odd cycle
            assert not parity_bipartite(k6, m)
            q, emap = quadrangulation_from(k6, m)
            assert set(tri) <= set(emap) and is_bipartite(q) is None
            found += 1
    assert found > 0


@pytest.mark.parametrize("name,count", [("k4", 8), ("octahedron", 32), ("k6", 64)])
def test_13_factor_counts(name, count):
    g = library.BUILTINS[name]()
    fs = list(factors(dual(g), {1, 3}))
    assert len(fs) == count
    if g.surface == "sphere":
        assert count == 2 ** (g.n - 1)


def test_coloring_factor_correspondence(k6, octahedron):
    for g in (library.k4(), octahedron):
        for bits in itertools.product((B, W), repeat=g.n):
            c = dict(enumerate(bits))
            f = coloring_to_factor(g, c)
            d = dual(g)
            assert all(k in (1, 3) for k in [sum(1 for e in f if v in d.edge_ends[e]) for v in range(d.n)])
            assert sorted(three_vertices(d, f)) == sorted(mono_faces(g, c))
            back = factor_to_coloring(g, f)
            assert mono_faces(g, back) == mono_faces(g, c)
    with pytest.raises(DomainError):
        factor_to_coloring(k6, set())


def test_factor_to_coloring_rejects_non_factor(octahedron):
    with pytest.raises(DomainError):
        factor_to_coloring(octahedron, {0})


def test_maxcut(k6, octahedron):
    size, c = max_bipartite_subgraph(k6)
    assert size == 9 == cut_size(k6, c) and c[0] == B
    assert max_bipartite_subgraph(octahedron)[0] == 8
    assert max_bipartite_subgraph(library.icosahedron())[0] == 20
    with pytest.raises(PreconditionError):
        max_bipartite_subgraph(library.cube())


def test_maxcut_bnb_agrees(pp_corpus, monkeypatch):
    from ppquad import factors as fmod

    for g in pp_corpus[:8]:
        exact = fmod._maxcut_exhaustive(g)
        bnb = fmod._maxcut_bnb(g, 10 ** 6)
        assert exact[0] == bnb[0] == cut_size(g, bnb[1])


@given(st.lists(st.sampled_from([B, W]), min_size=6, max_size=6))
def test_cut_never_exceeds_two_thirds(bits):
    g = library.k6()
    assert cut_size(g, dict(enumerate(bits))) <= 2 * g.m // 3 - 1


def test_has_perfect_matching_removed():
    d = dual(library.octahedron())
    assert has_perfect_matching(d)
    assert not has_perfect_matching(d, removed=[0])
