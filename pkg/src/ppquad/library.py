"""Small named embeddings used as fixtures and corpus seeds."""

from __future__ import annotations

from ppquad.surface import PROJECTIVE_PLANE, SPHERE, EmbeddedGraph, from_polygons, from_triangles

# hemi-icosahedron: the unique embedding of K6 in the projective plane
K6_FACES = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
)

OCTAHEDRON_FACES = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
    (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4),
)

K4_FACES = ((0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2))

CUBE_FACES = (
    (0, 1, 2, 3), (4, 7, 6, 5), (0, 4, 5, 1),
    (1, 5, 6, 2), (2, 6, 7, 3), (3, 7, 4, 0),
)


def k6() -> EmbeddedGraph:
    return from_triangles(K6_FACES, PROJECTIVE_PLANE)


def octahedron() -> EmbeddedGraph:
    return from_triangles(OCTAHEDRON_FACES, SPHERE)


def k4() -> EmbeddedGraph:
    return from_triangles(K4_FACES, SPHERE)


def cube() -> EmbeddedGraph:
    return from_polygons(CUBE_FACES, SPHERE)


def cycle(k: int) -> EmbeddedGraph:
    """A k-cycle on the sphere: two faces of length k."""
    ring = list(range(k))
    return from_polygons([ring, ring[::-1]], SPHERE)


def stacked_k4() -> EmbeddedGraph:
    """K4 with one face subdivided by a new vertex: one separating triangle."""
    faces = [f for f in K4_FACES if f != (1, 3, 2)]
    faces += [(1, 3, 4), (3, 2, 4), (2, 1, 4)]
    return from_triangles(faces, SPHERE)


def icosahedron() -> EmbeddedGraph:
    top, bottom = 0, 11
    upper = [1, 2, 3, 4, 5]
    lower = [6, 7, 8, 9, 10]
    faces = []
    for i in range(5):
        a, b = upper[i], upper[(i + 1) % 5]
        c, d = lower[i], lower[(i + 1) % 5]
        faces.append((top, a, b))
        faces.append((a, c, b))
        faces.append((b, c, d))
        faces.append((bottom, d, c))
    return from_triangles(faces, SPHERE)


BUILTINS = {
    "k6": k6,
    "octahedron": octahedron,
    "k4": k4,
    "cube": cube,
    "stacked_k4": stacked_k4,
    "icosahedron": icosahedron,
}
