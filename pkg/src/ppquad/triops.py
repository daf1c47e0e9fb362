"""Triangulation surgery: sides of cycles, separating triangles, split/paste,
2-cycle contraction, the dual cubic graph and Eulerian face 2-colorings."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ppquad.errors import DomainError, PreconditionError
from ppquad.surface import (
    PROJECTIVE_PLANE,
    SPHERE,
    CycleRef,
    Dart,
    EmbeddedGraph,
    build,
    cycle_vertices,
    is_contractible,
)

RED, BLUE = "R", "B"


def is_triangulation(g: EmbeddedGraph) -> bool:
    return all(f.length == 3 for f in g.faces)


def is_quadrangulation(g: EmbeddedGraph) -> bool:
    return all(f.length == 4 for f in g.faces)


# -- regions cut out by a set of edges ---------------------------------------


@dataclass(frozen=True)
class Region:
    """A connected block of faces after cutting along some edges."""

    faces: frozenset[int]
    vertices: frozenset[int]
    boundary_edges: tuple[int, ...]
    chi: int

    def interior(self, boundary_vertices: Iterable[int]) -> frozenset[int]:
        return self.vertices - frozenset(boundary_vertices)


def regions(g: EmbeddedGraph, cut: Iterable[int]) -> list[Region]:
    """Flood-fill faces across every edge not in ``cut``."""
    cut = set(cut)
    comp = [-1] * len(g.faces)
    blocks: list[list[int]] = []
    for start in range(len(g.faces)):
        if comp[start] >= 0:
            continue
        comp[start] = len(blocks)
        block = [start]
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for d in g.faces[f].darts:
                if d.edge in cut:
                    continue
                for other, _ in g.edge_sides[d.edge]:
                    if comp[other] < 0:
                        comp[other] = comp[start]
                        block.append(other)
                        queue.append(other)
        blocks.append(block)
    out = []
    for block in blocks:
        verts = {v for f in block for v in g.faces[f].vertices}
        counts: dict[int, int] = {}
        for f in block:
            for d in g.faces[f].darts:
                counts[d.edge] = counts.get(d.edge, 0) + 1
        chi = len(verts) - len(counts) + len(block)
        boundary = tuple(sorted(e for e, k in counts.items() if e in cut and k == 1))
        out.append(Region(frozenset(block), frozenset(verts), boundary, chi))
    return out


def cycle_darts(g: EmbeddedGraph, edges: Sequence[int]) -> list[Dart]:
    """Darts walking once around a cycle."""
    verts = cycle_vertices(g, edges)
    if len(edges) == 1:
        return [Dart(edges[0], 0)]
    darts = []
    for k, e in enumerate(edges):
        a = verts[k]
        darts.append(Dart(e, 0 if g.edges[e][0] == a else 1))
    return darts


def order_cycle(g: EmbeddedGraph, edges: Iterable[int]) -> list[int]:
    """Arrange an unordered set of cycle edges into cyclic order."""
    edges = list(edges)
    if len(edges) <= 2:
        return edges
    remaining = edges[1:]
    ordered = [edges[0]]
    cur = g.edges[edges[0]][1]
    while remaining:
        for e in remaining:
            u, v = g.edges[e]
            if cur in (u, v):
                ordered.append(e)
                remaining.remove(e)
                cur = v if cur == u else u
                break
        else:
            raise DomainError(f"edges {edges} do not form a cycle")
    return ordered


def subsurface(
    g: EmbeddedGraph,
    face_ids: Iterable[int],
    caps: Sequence[Sequence[int]] = (),
    surface: str | None = None,
    allow_loops: bool = False,
) -> tuple[EmbeddedGraph, list[int], list[int], list[int]]:
    """Build the graph formed by some faces of ``g`` plus cap faces.

    Each cap is a cycle (edge ids) closed off by a new face.  Returns the
    graph, the vertex and edge maps back to ``g``, and the new face ids of the
    caps.
    """
    faces = [list(g.faces[f].darts) for f in sorted(face_ids)]
    cap_walks = [cycle_darts(g, list(c)) for c in caps]
    edge_map = dict(enumerate(g.edges))
    h, vmap, emap = build(edge_map, faces + cap_walks, surface or g.surface, allow_loops)
    vindex = {v: i for i, v in enumerate(vmap)}
    cap_ids = []
    for c in caps:
        key = frozenset(vindex[v] for v in cycle_vertices(g, list(c)))
        edge_key = sorted(emap.index(e) for e in c)
        for face in h.faces:
            if face.length == len(c) and sorted(face.edge_ids) == edge_key \
                    and frozenset(face.vertices) == key and face.face_id not in cap_ids:
                cap_ids.append(face.face_id)
                break
    return h, vmap, emap, cap_ids


# -- separating triangles ----------------------------------------------------


@dataclass(frozen=True)
class CycleSides:
    """The two sides of a contractible cycle; ``inner`` is a disk."""

    cycle: CycleRef
    inner: Region
    outer: Region
    inner_vertices: frozenset[int]
    outer_vertices: frozenset[int]


def cycle_sides(g: EmbeddedGraph, edges: Sequence[int]) -> CycleSides:
    if not is_contractible(g, edges):
        raise DomainError("noncontractible cycle has no disk side")
    parts = regions(g, edges)
    if len(parts) != 2:
        raise DomainError(f"cycle splits the surface into {len(parts)} parts")
    a, b = parts
    if g.surface == PROJECTIVE_PLANE:
        if b.chi == 1 and a.chi != 1:
            a, b = b, a
    else:
        if len(b.vertices) < len(a.vertices):
            a, b = b, a
    ring = set(cycle_vertices(g, edges))
    return CycleSides(CycleRef(tuple(edges), True), a, b,
                      a.vertices - ring, b.vertices - ring)


def three_cycles(g: EmbeddedGraph) -> list[tuple[int, int, int]]:
    """All 3-cycles as sorted edge-id triples."""
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if u != v:
            incident[u].append(e)
            incident[v].append(e)
    found = set()
    for e1, (a, b) in enumerate(g.edges):
        if a == b:
            continue
        for e2 in incident[b]:
            if e2 == e1:
                continue
            c = g.edges[e2][0] if g.edges[e2][1] == b else g.edges[e2][1]
            if c in (a, b):
                continue
            for e3 in incident[c]:
                if e3 in (e1, e2):
                    continue
                if a in g.edges[e3] and b not in g.edges[e3]:
                    found.add(tuple(sorted((e1, e2, e3))))
    return sorted(found)


def facial_edge_sets(g: EmbeddedGraph) -> set[frozenset[int]]:
    return {frozenset(f.edge_ids) for f in g.faces}


def separating_3cycles(g: EmbeddedGraph) -> list[CycleSides]:
    """Contractible, non-facial triangles with vertices strictly on both sides."""
    facial = facial_edge_sets(g)
    out = []
    for tri in three_cycles(g):
        if frozenset(tri) in facial:
            continue
        if not is_contractible(g, tri):
            continue
        sides = cycle_sides(g, list(tri))
        if sides.inner_vertices and sides.outer_vertices:
            out.append(sides)
    return out


# -- split and paste ---------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    graph: EmbeddedGraph
    vmap: list[int]
    emap: list[int]
    cap_face: int


def split_along(g: EmbeddedGraph, edges: Sequence[int]) -> tuple[Piece, Piece]:
    """Cut along a separating triangle into the disk piece and the rest."""
    sides = cycle_sides(g, edges)
    if not (sides.inner_vertices and sides.outer_vertices):
        raise DomainError("cycle is not separating")
    inner = subsurface(g, sides.inner.faces, [edges], SPHERE)
    outer = subsurface(g, sides.outer.faces, [edges], g.surface, g.allow_loops)
    return (Piece(inner[0], inner[1], inner[2], inner[3][0]),
            Piece(outer[0], outer[1], outer[2], outer[3][0]))


@dataclass(frozen=True)
class PastingSpec:
    host: EmbeddedGraph
    host_face: int
    guest: EmbeddedGraph | None
    guest_face: int = 0
    correspondence: Mapping[int, int] | None = None  # guest vertex -> host vertex


def _face_triangle(g: EmbeddedGraph, face: int) -> tuple[list[int], list[int]]:
    walk = g.faces[face]
    if walk.length != 3 or len(set(walk.vertices)) != 3:
        raise PreconditionError(f"face {face} is not a triangle")
    return list(walk.vertices), list(walk.edge_ids)


def gluings(g_face_vertices: Sequence[int], h_face_vertices: Sequence[int]) -> list[dict[int, int]]:
    """The six bijections between two triangles' vertex sets."""
    return [dict(zip(h_face_vertices, p)) for p in itertools.permutations(g_face_vertices)]


def paste(spec: PastingSpec) -> EmbeddedGraph:
    """Glue ``guest`` into ``host`` by identifying the two chosen faces."""
    host, guest = spec.host, spec.guest
    hv, he = _face_triangle(host, spec.host_face)
    if guest is None:
        return host
    if guest.surface != SPHERE:
        raise DomainError("only plane triangulations can be pasted in")
    gv, ge = _face_triangle(guest, spec.guest_face)
    corr = dict(spec.correspondence) if spec.correspondence else dict(zip(gv, hv))
    if sorted(corr) != sorted(gv) or sorted(corr.values()) != sorted(hv):
        raise PreconditionError("correspondence must map the guest face onto the host face")

    vshift = {v: host.n + i for i, v in enumerate(v for v in range(guest.n) if v not in corr)}
    vmap = {**vshift, **corr}
    host_edge = {}
    for e in ge:
        a, b = guest.edges[e]
        target = [x for x in he if set(host.edges[x]) == {corr[a], corr[b]}]
        if len(target) != 1:
            raise PreconditionError("cannot match guest face edges to host face edges")
        host_edge[e] = target[0]
    emap = {}
    next_id = host.m
    for e in range(guest.m):
        if e in host_edge:
            emap[e] = host_edge[e]
        else:
            emap[e] = next_id
            next_id += 1
    edge_table = dict(enumerate(host.edges))
    for e, (a, b) in enumerate(guest.edges):
        if e not in host_edge:
            edge_table[emap[e]] = (vmap[a], vmap[b])

    def translate(d: Dart) -> Dart:
        if d.edge in host_edge:
            tail = vmap[guest.tail(d)]
            t = host_edge[d.edge]
            return Dart(t, 0 if host.edges[t][0] == tail else 1)
        return Dart(emap[d.edge], d.end)

    faces = [list(f.darts) for f in host.faces if f.face_id != spec.host_face]
    faces += [[translate(d) for d in f.darts] for f in guest.faces if f.face_id != spec.guest_face]
    g, vm, _ = build(edge_table, faces, host.surface, host.allow_loops)
    assert vm == list(range(len(vm)))
    return g


def paste_all(host: EmbeddedGraph, host_face: int, guest: EmbeddedGraph, guest_face: int) -> list[EmbeddedGraph]:
    hv, _ = _face_triangle(host, host_face)
    gv, _ = _face_triangle(guest, guest_face)
    return [paste(PastingSpec(host, host_face, guest, guest_face, c)) for c in gluings(hv, gv)]


# -- 2-cycles ----------------------------------------------------------------


def two_cycles(g: EmbeddedGraph) -> list[tuple[int, int]]:
    out = []
    for key, es in sorted(g.edge_lookup.items(), key=lambda kv: kv[1]):
        if len(key) == 2 and len(es) > 1:
            out.extend(itertools.combinations(sorted(es), 2))
    return out


def contractible_2cycles(g: EmbeddedGraph) -> list[tuple[int, int]]:
    return [c for c in two_cycles(g) if is_contractible(g, c)]


@dataclass(frozen=True)
class Contraction2:
    """Record of one 2-cycle contraction, enough to lift colorings back."""

    before: EmbeddedGraph
    after: EmbeddedGraph
    vmap: list[int]          # after vertex -> before vertex
    emap: list[int]          # after edge -> before edge
    disk_faces: frozenset[int]
    removed: frozenset[int]  # before vertices deleted


def contract_2cycle(g: EmbeddedGraph, c: Sequence[int]) -> Contraction2:
    """Delete the inside of a contractible 2-cycle and merge its two edges."""
    e1, e2 = sorted(c)
    if not is_contractible(g, (e1, e2)):
        raise DomainError("2-cycle is noncontractible")
    sides = cycle_sides(g, (e1, e2))
    if g.surface == SPHERE and not sides.inner_vertices:
        sides = CycleSides(sides.cycle, sides.outer, sides.inner,
                           sides.outer_vertices, sides.inner_vertices)
    if not sides.inner_vertices:
        raise DomainError("2-cycle bounds an empty disk")

    def merge(d: Dart) -> Dart:
        if d.edge != e2:
            return d
        tail = g.tail(d)
        return Dart(e1, 0 if g.edges[e1][0] == tail else 1)

    faces = [[merge(d) for d in g.faces[f].darts] for f in sorted(sides.outer.faces)]
    after, vmap, emap = build(dict(enumerate(g.edges)), faces, g.surface, g.allow_loops)
    return Contraction2(g, after, vmap, emap, sides.inner.faces, sides.inner_vertices)


def contract_all_2cycles(g: EmbeddedGraph) -> list[Contraction2]:
    steps = []
    cur = g
    while True:
        cands = contractible_2cycles(cur)
        if not cands:
            return steps
        step = contract_2cycle(cur, cands[0])
        steps.append(step)
        cur = step.after


# -- dual --------------------------------------------------------------------


@dataclass(frozen=True)
class DualGraph:
    """Dual multigraph: one vertex per face, one edge per primal edge (same id)."""

    n: int
    edge_ends: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.edge_ends)

    def incident(self) -> list[list[tuple[int, int]]]:
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e, (a, b) in enumerate(self.edge_ends):
            inc[a].append((e, b))
            if a != b:
                inc[b].append((e, a))
        return inc

    def degree(self, f: int) -> int:
        return sum((a == f) + (b == f) for a, b in self.edge_ends)

    def is_cubic(self) -> bool:
        return all(self.degree(f) == 3 for f in range(self.n))


def dual(g: EmbeddedGraph) -> DualGraph:
    ends = tuple((s[0][0], s[1][0]) for s in g.edge_sides)
    return DualGraph(len(g.faces), ends)


def dual_edge_cut_components(d: DualGraph, cut: Iterable[int]) -> int:
    cut = set(cut)
    parent = list(range(d.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (a, b) in enumerate(d.edge_ends):
        if e not in cut:
            parent[find(a)] = find(b)
    return len({find(x) for x in range(d.n)})


def face_2coloring(g: EmbeddedGraph, red: int = 0) -> dict[int, str]:
    """Proper red/blue face coloring of an Eulerian plane triangulation."""
    if g.surface != SPHERE:
        raise DomainError("face 2-coloring is defined for plane triangulations")
    if any(g.degree(v) % 2 for v in range(g.n)):
        raise DomainError("triangulation is not Eulerian")
    d = dual(g)
    inc = d.incident()
    color = {red: RED}
    queue = deque([red])
    while queue:
        f = queue.popleft()
        for _, h in inc[f]:
            if h not in color:
                color[h] = BLUE if color[f] == RED else RED
                queue.append(h)
            elif color[h] == color[f]:
                raise DomainError("dual is not bipartite")
    return color


def is_eulerian(g: EmbeddedGraph) -> bool:
    return all(g.degree(v) % 2 == 0 for v in range(g.n))
