"""Canonical forms and enumeration of small projective-plane triangulations."""

from __future__ import annotations

import functools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import enumerated
from ppquad import library
from ppquad.canon import canonical_code, canonical_key, enumerate_pp_triangulations, isomorphic
from ppquad.errors import BudgetExceeded
from ppquad.harness import paste_family, z_graphs
from ppquad.surface import relabel, switch


@functools.lru_cache(maxsize=None)
def instances():
    return tuple(enumerated(8)) + tuple(z_graphs()) + (library.icosahedron(), paste_family({1: "octahedron"}))


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_code_invariant_under_relabel_and_switch(data):
    g = data.draw(st.sampled_from(instances()))
    perm = data.draw(st.permutations(list(range(g.n))))
    h = relabel(g, perm)
    for v in data.draw(st.lists(st.integers(0, g.n - 1), max_size=4)):
        h = switch(h, v)
    assert canonical_code(h) == canonical_code(g)
    assert canonical_key(h) == canonical_key(g)


def test_codes_separate_distinct_classes():
    gs = list(instances())
    keys = {canonical_key(g) for g in gs}
    assert len(keys) == len(gs)
    assert not isomorphic(library.k6(), paste_family({1: "k4"}))


def test_counts():
    counts = {}
    for g in enumerated(8):
        counts[g.n] = counts.get(g.n, 0) + 1
    assert counts == {6: 1, 7: 3, 8: 16}
    assert isomorphic(next(iter(enumerated(8))), library.k6())


def test_orders_agree():
    star = [canonical_code(g) for g in enumerate_pp_triangulations(7, "star")]
    plain = [canonical_code(g) for g in enumerate_pp_triangulations(7, "plain")]
    assert star == plain and len(set(star)) == 4


def test_output_sorted_and_simple():
    gs = list(enumerated(8))
    codes = [canonical_code(g) for g in gs]
    assert codes == sorted(codes)
    assert all(g.is_simple() and g.surface == "pp" for g in gs)


def test_budget(monkeypatch):
    with pytest.raises(BudgetExceeded):
        list(enumerate_pp_triangulations(9))
    monkeypatch.setenv("PPQUAD_MAX_N", "7")
    with pytest.raises(BudgetExceeded):
        list(enumerate_pp_triangulations(8))
