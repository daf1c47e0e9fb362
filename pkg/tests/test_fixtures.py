"""Stored pem fixtures: they load, match their generators, and keep their verdicts."""

from __future__ import annotations

import functools
import sys
from pathlib import Path

import pytest

from ppquad import pem
from ppquad.canon import canonical_key
from ppquad.decider import HAS_SBQ, NO_SBQ, decide_sbq
from ppquad.harness import sbq_oracle

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE.parent / "scripts"))

from make_fixtures import fixtures as _fixtures  # noqa: E402

fixtures = functools.lru_cache(maxsize=None)(_fixtures)

EXPECTED = {
    "k6": NO_SBQ,
    "z": HAS_SBQ,
    "z_prime": HAS_SBQ,
    "k6_oct1": NO_SBQ,
    "k6_oct156": NO_SBQ,
    "k6_k4_1": HAS_SBQ,
    "k6_minus_edge_plus_vertex": HAS_SBQ,
}


@pytest.mark.parametrize("name", sorted(fixtures()))
def test_fixture(name):
    g = pem.read(HERE / "fixtures" / f"{name}.pem")
    assert canonical_key(g) == canonical_key(fixtures()[name])
    if name in EXPECTED:
        v = decide_sbq(g).verdict
        assert v == EXPECTED[name]
        if g.n <= 10:
            assert (v == HAS_SBQ) == sbq_oracle(g)
