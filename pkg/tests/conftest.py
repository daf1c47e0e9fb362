"""Shared fixtures: small named instances and the enumerated corpus."""

from __future__ import annotations

import functools
import os

import pytest
from hypothesis import HealthCheck, settings

from ppquad import library
from ppquad.canon import enumerate_pp_triangulations
from ppquad.surface import PROJECTIVE_PLANE, from_triangles

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@functools.lru_cache(maxsize=None)
def enumerated(max_n: int = 8) -> tuple:
    return tuple(enumerate_pp_triangulations(max_n))


def k6_minus_edge_plus_vertex():
    """K6 minus edge 01 with a new vertex 6 in the quadrilateral 0 5 1 2: contains X, not K6."""
    faces = [f for f in library.K6_FACES if not {0, 1} <= set(f)]
    faces += [(0, 5, 6), (5, 1, 6), (1, 2, 6), (2, 0, 6)]
    return from_triangles(faces, PROJECTIVE_PLANE)


@pytest.fixture(scope="session")
def pp_corpus():
    return enumerated(8)


@pytest.fixture
def k6():
    return library.k6()


@pytest.fixture
def octahedron():
    return library.octahedron()
