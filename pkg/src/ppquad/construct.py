"""Constructive weak colorings: face extension, boundary patterns, K6 minus an edge."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ppquad.colorings import B, W, Coloring, complete_coloring, mono_faces
from ppquad.errors import DomainError, PreconditionError, TheoremViolation
from ppquad.surface import PROJECTIVE_PLANE, SPHERE, EmbeddedGraph
from ppquad.triops import Region, order_cycle, regions, subsurface

FourColoring = dict  # vertex -> 1..4


# -- weak extension ----------------------------------------------------------


def extend_weak(t: EmbeddedGraph, f: int, c_f: Mapping[int, str], faces: Iterable[int] | None = None) -> Coloring:
    """Weak coloring of ``t`` agreeing with ``c_f`` on the vertices of face ``f``."""
    verts = set(t.faces[f].vertices)
    if set(c_f) != verts:
        raise PreconditionError("c_f must color exactly the vertices of f")
    if len(set(c_f.values())) < 2:
        raise DomainError("face coloring is monochromatic")
    out = complete_coloring(t, c_f, faces)
    if out is None:
        raise TheoremViolation("no weak extension of a bichromatic face coloring")
    return out


# -- four coloring -----------------------------------------------------------


def four_color(
    n: int,
    edges: Iterable[tuple[int, int]],
    precolored: Mapping[int, int] | None = None,
) -> FourColoring | None:
    """Proper 4-coloring by DSATUR-ordered backtracking, or None if impossible.

    ``None`` only arises with a precoloring; an unconstrained planar input
    that fails raises TheoremViolation.
    """
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise PreconditionError("four_color needs a loopless graph")
        adj[u].add(v)
        adj[v].add(u)
    color: dict[int, int] = dict(precolored or {})
    for u, v in itertools.combinations(list(color), 2):
        if v in adj[u] and color[u] == color[v]:
            return None

    def pick() -> int | None:
        best, key = None, None
        for v in range(n):
            if v in color:
                continue
            sat = len({color[w] for w in adj[v] if w in color})
            k = (sat, len(adj[v]), -v)
            if key is None or k > key:
                best, key = v, k
        return best

    def dfs() -> bool:
        v = pick()
        if v is None:
            return True
        used = {color[w] for w in adj[v] if w in color}
        for x in (1, 2, 3, 4):
            if x not in used:
                color[v] = x
                if dfs():
                    return True
                del color[v]
        return False

    if dfs():
        return color
    if precolored:
        return None
    raise TheoremViolation("planar graph without a 4-coloring")


def is_proper(edges: Iterable[tuple[int, int]], phi: Mapping[int, int]) -> bool:
    return all(phi[u] != phi[v] for u, v in edges)


# -- near-triangulations -----------------------------------------------------


@dataclass(frozen=True)
class NearTriangulation:
    """Plane graph whose faces are triangles except the outer face."""

    graph: EmbeddedGraph
    outer: int
    boundary: tuple[int, ...]  # outer walk starting at u1

    @property
    def inner_faces(self) -> list[int]:
        return [f.face_id for f in self.graph.faces if f.face_id != self.outer]


def near_triangulation(g: EmbeddedGraph, boundary: Sequence[int]) -> NearTriangulation:
    """Locate the outer face whose walk is ``boundary`` up to rotation/reflection."""
    if g.surface != SPHERE:
        raise PreconditionError("near-triangulations are plane")
    k = len(boundary)
    target = list(boundary)
    for face in g.faces:
        walk = list(face.vertices)
        if len(walk) != k:
            continue
        for w in (walk, walk[::-1]):
            for s in range(k):
                if w[s:] + w[:s] == target:
                    return NearTriangulation(g, face.face_id, tuple(boundary))
    raise PreconditionError(f"no face with boundary walk {list(boundary)}")


@dataclass(frozen=True)
class BoundaryColoring:
    coloring: Coloring
    mono: tuple[int, ...]  # mono faces, outer included
    branch: str


def bwbw_coloring(nt: NearTriangulation) -> BoundaryColoring:
    """Weak coloring with u1, u3 black and u2, u4 white (apex plus 4-coloring)."""
    g = nt.graph
    if len(nt.boundary) != 4:
        raise PreconditionError("outer face must have length 4")
    u1, u2, u3, u4 = nt.boundary
    x = g.n
    edges = [e for e in g.edges if e[0] != e[1]] + [(x, u) for u in nt.boundary]
    phi = four_color(g.n + 1, edges, {x: 1, u1: 2, u2: 3})
    if phi is None:
        raise TheoremViolation("apex graph is not 4-colorable with a triangle precolored")
    if phi[u3] == 2:
        black, branch = {1, 2}, "u3=2"
    elif phi[u3] == 4:
        black, branch = {2, 4}, "u3=4"
    else:
        raise TheoremViolation(f"u3 received color {phi[u3]}")
    c = {v: (B if phi[v] in black else W) for v in range(g.n)}
    if [c[u] for u in nt.boundary] != [B, W, B, W]:
        raise TheoremViolation("boundary pattern is not BWBW")
    mono = tuple(mono_faces(g, c))
    if mono:
        raise TheoremViolation(f"BWBW coloring has mono faces {mono}")
    return BoundaryColoring(c, mono, branch)


def bbbw_coloring(nt: NearTriangulation) -> BoundaryColoring:
    """u1, u2, u3 black: weak, or near-weak with the outer face the only mono face.

    u1 and u3 are identified before 4-coloring; the weak branch (u4 white) is
    tried first.
    """
    g = nt.graph
    if len(nt.boundary) != 4:
        raise PreconditionError("outer face must have length 4")
    u1, u2, u3, u4 = nt.boundary
    if u3 in g.neighbors[u1]:
        raise PreconditionError("u1 and u3 are adjacent")
    merge = {v: (u1 if v == u3 else v) for v in range(g.n)}
    edges = [(merge[a], merge[b]) for a, b in g.edges if merge[a] != merge[b]]
    phi = None
    for x4, branch in ((3, "weak"), (2, "near-weak")):
        phi = four_color(g.n, edges, {u1: 1, u2: 2, u4: x4})
        if phi is not None:
            break
    if phi is None:
        raise TheoremViolation("identified graph has no 4-coloring")
    phi[u3] = phi[u1]
    c = {v: (B if phi[v] in (1, 2) else W) for v in range(g.n)}
    mono = tuple(mono_faces(g, c))
    if branch == "weak" and mono:
        raise TheoremViolation(f"weak BBBW branch has mono faces {mono}")
    if branch == "near-weak" and set(mono) - {nt.outer}:
        raise TheoremViolation(f"near-weak BBBW branch has inner mono faces {mono}")
    return BoundaryColoring(c, mono, branch)


# -- K6 minus an edge --------------------------------------------------------


@dataclass(frozen=True)
class XSubgraph:
    """Embedded K6 minus v1v4; the quad region has boundary v1 v2 v4 v3."""

    u: int
    v: int
    v1: int
    v2: int
    v3: int
    v4: int
    quad: Region
    triangles: tuple[Region, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.u, self.v, self.v1, self.v2, self.v3, self.v4)


def cliques(g: EmbeddedGraph, k: int) -> list[tuple[int, ...]]:
    """All k-cliques as increasing vertex tuples."""
    nb = g.neighbors
    out: list[tuple[int, ...]] = []

    def grow(clique: tuple[int, ...], cand: list[int]) -> None:
        if len(clique) == k:
            out.append(clique)
            return
        for i, w in enumerate(cand):
            grow(clique + (w,), [x for x in cand[i + 1:] if x in nb[w]])

    for v in range(g.n):
        grow((v,), sorted(x for x in nb[v] if x > v))
    return out


def has_k6(g: EmbeddedGraph) -> bool:
    return bool(cliques(g, 6))


def find_x_subgraphs(g: EmbeddedGraph) -> list[XSubgraph]:
    """Every K6-minus-an-edge whose induced sub-embedding has 8 triangles and a quad."""
    nb = g.neighbors
    out = []
    for v1, v4 in itertools.combinations(range(g.n), 2):
        if v4 in nb[v1]:
            continue
        common = sorted((nb[v1] & nb[v4]) - {v1, v4})
        for quad4 in itertools.combinations(common, 4):
            if not all(b in nb[a] for a, b in itertools.combinations(quad4, 2)):
                continue
            verts = (v1, v4) + quad4
            cut = set()
            ok = True
            for a, b in itertools.combinations(verts, 2):
                if {a, b} == {v1, v4}:
                    continue
                es = g.edges_between(a, b)
                if len(es) != 1:
                    ok = False
                    break
                cut.add(es[0])
            if not ok:
                continue
            parts = regions(g, cut)
            if len(parts) != 9 or any(p.chi != 1 for p in parts):
                continue
            lengths = sorted(len(p.boundary_edges) for p in parts)
            if lengths != [3] * 8 + [4]:
                continue
            quad = next(p for p in parts if len(p.boundary_edges) == 4)
            ring = {x for e in quad.boundary_edges for x in g.edges[e]}
            if not {v1, v4} <= ring:
                continue
            v2, v3 = sorted(ring - {v1, v4})
            u, v = sorted(set(quad4) - {v2, v3})
            tris = tuple(p for p in parts if p is not quad)
            out.append(XSubgraph(u, v, v1, v2, v3, v4, quad, tris))
    return out


def x_subgraph_coloring(g: EmbeddedGraph, x: XSubgraph | None = None) -> tuple[Coloring, XSubgraph, str]:
    """Weak coloring of a projective-plane triangulation containing X but no K6."""
    if g.surface != PROJECTIVE_PLANE:
        raise PreconditionError("expects a projective-plane triangulation")
    if has_k6(g):
        raise DomainError("graph contains K6")
    if x is None:
        found = find_x_subgraphs(g)
        if not found:
            raise PreconditionError("no embedded K6 minus an edge")
        x = found[0]
    ring = [x.quad.boundary_edges[i] for i in range(4)]
    h, vmap, _, caps = subsurface(g, x.quad.faces, [order_cycle(g, ring)], SPHERE)
    back = {old: new for new, old in enumerate(vmap)}
    nt = near_triangulation(h, [back[x.v1], back[x.v2], back[x.v4], back[x.v3]])
    if caps and nt.outer != caps[0]:
        raise TheoremViolation("quad cap does not match the outer face")
    bc = bbbw_coloring(nt)
    c: dict[int, str] = {vmap[i]: col for i, col in bc.coloring.items()}
    c[x.u] = W
    c[x.v] = W
    for tri in x.triangles:
        fixed = {v: c[v] for v in c}
        filled = complete_coloring(g, fixed, tri.faces)
        if filled is None:
            raise TheoremViolation("triangular region has no weak extension")
        for v in tri.vertices:
            c.setdefault(v, filled[v])
    missing = [v for v in range(g.n) if v not in c]
    if missing:
        raise TheoremViolation(f"vertices {missing} left uncolored")
    if mono_faces(g, c):
        raise TheoremViolation("X-subgraph coloring is not weak")
    return c, x, bc.branch

