"""Signed rotation systems for graphs on the sphere and the projective plane.

An edge ``e = (u, v)`` owns two darts: ``Dart(e, 0)`` sits at ``u`` and
``Dart(e, 1)`` at ``v``.  Each vertex carries the cyclic order of its darts and
each edge a sign; a ``-1`` edge reverses the local orientation when crossed.
Faces are traced with the usual rule: leave a corner through the next dart in
the current direction, cross the edge, multiply the direction by its sign.

Everything downstream is built on two primitives: :func:`trace_faces` and its
inverse :func:`from_faces`, which recovers rotations and signs from a list of
facial dart walks.  Local surgery (pasting, cutting, contracting) is done by
editing face lists and rebuilding.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from ppquad.errors import DomainError, StructuralError

SPHERE = "sphere"
PROJECTIVE_PLANE = "pp"
EULER_CHAR = {SPHERE: 2, PROJECTIVE_PLANE: 1}


class Dart(NamedTuple):
    edge: int
    end: int

    def mate(self) -> "Dart":
        return Dart(self.edge, 1 - self.end)

    def __str__(self) -> str:
        return f"{self.edge}.{self.end}"


class Corner(NamedTuple):
    """Angle at ``vertex`` between rotation positions ``index`` and ``index + 1``."""

    vertex: int
    index: int


@dataclass(frozen=True)
class FaceWalk:
    face_id: int
    darts: tuple[Dart, ...]
    corners: tuple[Corner, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(c.vertex for c in self.corners)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(d.edge for d in self.darts)


@dataclass(frozen=True)
class CycleRef:
    edges: tuple[int, ...]
    contractible: bool | None = None


@dataclass
class ValidationReport:
    valid: bool
    n: int
    m: int
    f: int | None
    chi: int | None
    problems: list[str] = field(default_factory=list)


def _rotate_min_first(rot: Sequence[Dart]) -> tuple[Dart, ...]:
    if not rot:
        return ()
    k = min(range(len(rot)), key=lambda i: rot[i])
    return tuple(rot[k:]) + tuple(rot[:k])


@dataclass(frozen=True)
class EmbeddedGraph:
    """A multigraph with a signed rotation system on the sphere or the projective plane.

    Rotations are stored starting from their smallest dart, so two graphs that
    differ only in where each cyclic order was cut compare equal.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[Dart, ...], ...]
    signs: tuple[int, ...]
    surface: str = PROJECTIVE_PLANE
    allow_loops: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        object.__setattr__(
            self,
            "rotation",
            tuple(_rotate_min_first([Dart(*d) for d in rot]) for rot in self.rotation),
        )
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))

    @property
    def m(self) -> int:
        return len(self.edges)

    def tail(self, d: Dart) -> int:
        return self.edges[d.edge][d.end]

    def head(self, d: Dart) -> int:
        return self.edges[d.edge][1 - d.end]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    @cached_property
    def position(self) -> dict[Dart, Corner]:
        pos = {}
        for v, rot in enumerate(self.rotation):
            for i, d in enumerate(rot):
                pos[d] = Corner(v, i)
        return pos

    @cached_property
    def faces(self) -> tuple[FaceWalk, ...]:
        return tuple(_trace(self))

    @cached_property
    def edge_sides(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For every edge, the (face id, step) pairs that traverse it."""
        sides: list[list[tuple[int, int]]] = [[] for _ in range(self.m)]
        for face in self.faces:
            for k, d in enumerate(face.darts):
                sides[d.edge].append((face.face_id, k))
        return tuple(tuple(s) for s in sides)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                nb[u].add(v)
                nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def edge_lookup(self) -> dict[frozenset[int], list[int]]:
        table: dict[frozenset[int], list[int]] = {}
        for e, (u, v) in enumerate(self.edges):
            table.setdefault(frozenset((u, v)), []).append(e)
        return table

    def edges_between(self, u: int, v: int) -> list[int]:
        return list(self.edge_lookup.get(frozenset((u, v)), ()))

    @property
    def euler_characteristic(self) -> int:
        return self.n - self.m + len(self.faces)

    def is_simple(self) -> bool:
        return all(len(es) == 1 and len(k) == 2 for k, es in self.edge_lookup.items())

    def face_by_vertices(self, vertices: Iterable[int]) -> int:
        key = frozenset(vertices)
        for face in self.faces:
            if frozenset(face.vertices) == key:
                return face.face_id
        raise DomainError(f"no face on vertices {sorted(key)}")

    def cycle_sign(self, edges: Iterable[int]) -> int:
        s = 1
        for e in edges:
            s *= self.signs[e]
        return s

    def __repr__(self) -> str:
        return f"EmbeddedGraph(n={self.n}, m={self.m}, surface={self.surface!r})"


# -- face tracing ------------------------------------------------------------


def _check_rotation(g: EmbeddedGraph) -> None:
    if len(g.rotation) != g.n:
        raise StructuralError(f"{len(g.rotation)} rotations for {g.n} vertices")
    if len(g.signs) != g.m:
        raise StructuralError(f"{len(g.signs)} signs for {g.m} edges")
    seen = set()
    for v, rot in enumerate(g.rotation):
        for d in rot:
            if not (0 <= d.edge < g.m and d.end in (0, 1)):
                raise StructuralError(f"unknown dart {d} at vertex {v}")
            if d in seen:
                raise StructuralError(f"dart {d} appears twice")
            if g.tail(d) != v:
                raise StructuralError(f"dart {d} listed at {v} but belongs to {g.tail(d)}")
            seen.add(d)
    if len(seen) != 2 * g.m:
        raise StructuralError("some darts are missing from the rotations")


def _trace(g: EmbeddedGraph) -> list[FaceWalk]:
    _check_rotation(g)
    rot = g.rotation
    pos = g.position
    used: set[Corner] = set()
    faces: list[FaceWalk] = []
    for v in range(g.n):
        for i in range(len(rot[v])):
            if Corner(v, i) in used:
                continue
            darts: list[Dart] = []
            corners: list[Corner] = []
            corner, s = Corner(v, i), 1
            while True:
                if corner in used:
                    raise StructuralError("face tracing re-entered a corner")
                used.add(corner)
                corners.append(corner)
                cv, ci = corner
                deg = len(rot[cv])
                out = rot[cv][(ci + 1) % deg] if s > 0 else rot[cv][ci]
                darts.append(out)
                s *= g.signs[out.edge]
                w, j = pos[out.mate()]
                corner = Corner(w, j) if s > 0 else Corner(w, (j - 1) % len(rot[w]))
                if corner == Corner(v, i) and s == 1:
                    break
            faces.append(FaceWalk(len(faces), tuple(darts), tuple(corners)))
    return faces


def trace_faces(g: EmbeddedGraph) -> list[FaceWalk]:
    """Facial walks of ``g`` in a deterministic order."""
    return list(g.faces)


# -- construction ------------------------------------------------------------


def from_faces(
    n: int,
    edges: Sequence[tuple[int, int]],
    faces: Sequence[Sequence[Dart]],
    surface: str,
    allow_loops: bool = False,
    allow_spurs: bool = False,
) -> EmbeddedGraph:
    """Rebuild rotations and signs from facial dart walks.

    Each face is a cyclic list of darts where ``Dart(e, k)`` leaves vertex
    ``edges[e][k]``.  Faces may be listed in either direction.  With
    ``allow_spurs`` a walk may turn back along an edge at a degree-1 vertex.
    """
    edges = [tuple(e) for e in edges]
    faces = [[Dart(*d) for d in f] for f in faces]

    def tail(d: Dart) -> int:
        return edges[d.edge][d.end]

    # corner (face, step) sits at tail(faces[f][k]) between in-dart and out-dart
    corner_darts: dict[tuple[int, int], tuple[Dart, Dart]] = {}
    at_dart: dict[Dart, list[tuple[int, int]]] = {}
    for fi, face in enumerate(faces):
        if not face:
            raise StructuralError("empty face")
        for k, out in enumerate(face):
            prev = face[k - 1]
            incoming = prev.mate()
            if tail(incoming) != tail(out):
                raise StructuralError(f"face {fi} is not a closed walk at step {k}")
            if incoming == out and not allow_spurs:
                raise StructuralError(f"face {fi} doubles back along edge {out.edge}")
            corner_darts[(fi, k)] = (incoming, out)
            at_dart.setdefault(incoming, []).append((fi, k))
            at_dart.setdefault(out, []).append((fi, k))

    darts_at: list[list[Dart]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        for end in (0, 1):
            d = Dart(e, end)
            if len(at_dart.get(d, ())) != 2:
                raise StructuralError(f"dart {d} is used by {len(at_dart.get(d, ()))} corners")
            darts_at[tail(d)].append(d)

    rotation: list[list[Dart]] = []
    orient: dict[tuple[int, int], int] = {}
    for x in range(n):
        if not darts_at[x]:
            rotation.append([])
            continue
        start = min(darts_at[x])
        rot = [start]
        corner = at_dart[start][0]
        cur = start
        order: list[tuple[int, int]] = []
        while True:
            order.append(corner)
            a, b = corner_darts[corner]
            nxt = b if a == cur else a
            if nxt == start:
                break
            rot.append(nxt)
            c0, c1 = at_dart[nxt]
            corner = c1 if c0 == corner else c0
            cur = nxt
        if len(rot) != len(darts_at[x]):
            raise StructuralError(f"the corners at vertex {x} do not form a single disk")
        deg = len(rot)
        for i, c in enumerate(order):
            incoming, out = corner_darts[c]
            if incoming == rot[i] and out == rot[(i + 1) % deg]:
                orient[c] = 1
            else:
                orient[c] = -1
        rotation.append(rot)

    signs: list[int | None] = [None] * len(edges)
    for fi, face in enumerate(faces):
        for k, out in enumerate(face):
            s = orient[(fi, k)] * orient[(fi, (k + 1) % len(face))]
            if signs[out.edge] is None:
                signs[out.edge] = s
            elif signs[out.edge] != s:
                raise StructuralError(f"faces disagree on the sign of edge {out.edge}")
    return EmbeddedGraph(n, tuple(edges), tuple(tuple(r) for r in rotation),
                         tuple(signs), surface, allow_loops)


def from_polygons(
    polygons: Sequence[Sequence[int]],
    surface: str,
    n: int | None = None,
) -> EmbeddedGraph:
    """Simple graph from faces given as vertex cycles; edges are inferred."""
    if n is None:
        n = 1 + max(v for p in polygons for v in p)
    index: dict[frozenset[int], int] = {}
    edges: list[tuple[int, int]] = []
    for p in polygons:
        for a, b in zip(p, list(p[1:]) + [p[0]]):
            key = frozenset((a, b))
            if key not in index:
                index[key] = len(edges)
                edges.append((min(a, b), max(a, b)))
    faces = []
    for p in polygons:
        walk = []
        for a, b in zip(p, list(p[1:]) + [p[0]]):
            e = index[frozenset((a, b))]
            walk.append(Dart(e, 0 if edges[e][0] == a else 1))
        faces.append(walk)
    return from_faces(n, edges, faces, surface)


def from_triangles(triangles: Sequence[Sequence[int]], surface: str, n: int | None = None) -> EmbeddedGraph:
    return from_polygons(triangles, surface, n)


def build(
    edge_map: Mapping[int, tuple[int, int]],
    faces: Sequence[Sequence[Dart]],
    surface: str,
    allow_loops: bool = False,
    allow_spurs: bool = False,
) -> tuple[EmbeddedGraph, list[int], list[int]]:
    """Like :func:`from_faces` but with sparse vertex/edge ids.

    Returns the graph with compacted ids plus the maps new vertex -> old
    vertex and new edge -> old edge.
    """
    used_edges = sorted({d.edge for f in faces for d in f})
    vmap = sorted({x for e in used_edges for x in edge_map[e]})
    vindex = {v: i for i, v in enumerate(vmap)}
    eindex = {e: i for i, e in enumerate(used_edges)}
    edges = [(vindex[edge_map[e][0]], vindex[edge_map[e][1]]) for e in used_edges]
    new_faces = [[Dart(eindex[d.edge], d.end) for d in f] for f in faces]
    g = from_faces(len(vmap), edges, new_faces, surface, allow_loops, allow_spurs)
    return g, vmap, used_edges


def face_darts(g: EmbeddedGraph) -> list[list[Dart]]:
    return [list(f.darts) for f in g.faces]


def relabel(g: EmbeddedGraph, perm: Sequence[int]) -> EmbeddedGraph:
    """Rename vertex ``v`` to ``perm[v]``."""
    inv = [0] * g.n
    for v, p in enumerate(perm):
        inv[p] = v
    edges = tuple((perm[u], perm[v]) for u, v in g.edges)
    rotation = tuple(g.rotation[inv[p]] for p in range(g.n))
    return EmbeddedGraph(g.n, edges, rotation, g.signs, g.surface, g.allow_loops)


# -- validation --------------------------------------------------------------


def _connected(g: EmbeddedGraph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    queue = deque([0])
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == g.n


def validate(g: EmbeddedGraph) -> ValidationReport:
    problems: list[str] = []
    if g.surface not in EULER_CHAR:
        problems.append(f"unknown surface {g.surface!r}")
    for e, (u, v) in enumerate(g.edges):
        if not (0 <= u < g.n and 0 <= v < g.n):
            problems.append(f"edge {e} has an undeclared endpoint")
    if any(s not in (1, -1) for s in g.signs):
        problems.append("signs must be +1 or -1")
    f = chi = None
    if not problems:
        try:
            f = len(g.faces)
            chi = g.n - g.m + f
        except StructuralError as exc:
            problems.append(str(exc))
    if chi is not None:
        if g.surface in EULER_CHAR and chi != EULER_CHAR[g.surface]:
            problems.append(f"Euler characteristic {chi} does not match surface {g.surface}")
        if not _connected(g):
            problems.append("graph is disconnected")
        if g.surface == SPHERE and not is_orientable(g):
            problems.append("sphere embedding is not orientable")
        for e in range(g.m):
            if g.is_loop(e):
                if g.surface == SPHERE or g.signs[e] == 1:
                    problems.append(f"edge {e} is a contractible loop")
                elif not g.allow_loops:
                    problems.append(f"edge {e} is a loop but loops are not allowed")
    return ValidationReport(not problems, g.n, g.m, f, chi, problems)


def require_valid(g: EmbeddedGraph) -> None:
    rep = validate(g)
    if not rep.valid:
        raise StructuralError("; ".join(rep.problems))


# -- orientation -------------------------------------------------------------


def switch(g: EmbeddedGraph, v: int) -> EmbeddedGraph:
    """Reverse the local orientation at ``v``; the embedding is unchanged."""
    rotation = list(g.rotation)
    rotation[v] = tuple(reversed(g.rotation[v]))
    signs = list(g.signs)
    for e, (a, b) in enumerate(g.edges):
        if (a == v) != (b == v):
            signs[e] = -signs[e]
    return EmbeddedGraph(g.n, g.edges, tuple(rotation), tuple(signs), g.surface, g.allow_loops)


def _spanning_tree_switches(g: EmbeddedGraph) -> list[int]:
    flip = [1] * g.n
    seen = [False] * g.n
    to_switch = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for d in g.rotation[x]:
                y = g.head(d)
                if seen[y]:
                    continue
                seen[y] = True
                flip[y] = flip[x] * g.signs[d.edge]
                if flip[y] < 0:
                    to_switch.append(y)
                queue.append(y)
    return to_switch


def normalize_signs(g: EmbeddedGraph) -> EmbeddedGraph:
    """Equivalent embedding whose BFS spanning-tree edges all have sign +1."""
    to_switch = set(_spanning_tree_switches(g))
    if not to_switch:
        return g
    rotation = [tuple(reversed(r)) if v in to_switch else r for v, r in enumerate(g.rotation)]
    signs = list(g.signs)
    for e, (a, b) in enumerate(g.edges):
        if (a in to_switch) != (b in to_switch):
            signs[e] = -signs[e]
    return EmbeddedGraph(g.n, g.edges, tuple(rotation), tuple(signs), g.surface, g.allow_loops)


def is_orientable(g: EmbeddedGraph) -> bool:
    return all(s == 1 for s in normalize_signs(g).signs)


# -- cycles ------------------------------------------------------------------


def cycle_vertices(g: EmbeddedGraph, edges: Sequence[int]) -> list[int]:
    """Vertex sequence of a cycle given as a cyclic edge sequence.

    Raises DomainError when the edges do not form a closed walk without
    repeated vertices.
    """
    if not edges:
        raise DomainError("empty cycle")
    if len(set(edges)) != len(edges):
        raise DomainError("cycle repeats an edge")
    if len(edges) == 1:
        u, v = g.edges[edges[0]]
        if u != v:
            raise DomainError("a single non-loop edge is not a cycle")
        return [u]
    for start in g.edges[edges[0]]:
        walk = [start]
        cur = start
        ok = True
        for e in edges:
            u, v = g.edges[e]
            if cur == u:
                cur = v
            elif cur == v:
                cur = u
            else:
                ok = False
                break
            walk.append(cur)
        if ok and cur == start:
            verts = walk[:-1]
            if len(set(verts)) == len(verts):
                return verts
    raise DomainError(f"edges {list(edges)} do not form a cycle")


def is_contractible(g: EmbeddedGraph, c: CycleRef | Sequence[int]) -> bool:
    edges = c.edges if isinstance(c, CycleRef) else tuple(c)
    cycle_vertices(g, edges)
    if g.surface == SPHERE:
        return True
    return g.cycle_sign(edges) == 1


def shortest_noncontractible_cycle(g: EmbeddedGraph) -> CycleRef:
    """Shortest one-sided cycle, found in the orientation double cover."""
    if g.surface != PROJECTIVE_PLANE:
        raise DomainError("only projective-plane embeddings have noncontractible cycles")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        adj[u].append((e, v))
        if u != v:
            adj[v].append((e, u))
    best: list[int] | None = None
    for v in range(g.n):
        parent: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {(v, 1): None}
        queue = deque([(v, 1)])
        target = (v, -1)
        while queue and target not in parent:
            x, t = queue.popleft()
            for e, y in adj[x]:
                nxt = (y, t * g.signs[e])
                if nxt not in parent:
                    parent[nxt] = ((x, t), e)
                    queue.append(nxt)
        if target not in parent:
            continue
        walk = []
        node = target
        while parent[node] is not None:
            prev, e = parent[node]
            walk.append(e)
            node = prev
        if best is None or len(walk) < len(best):
            best = walk[::-1]
    if best is None:
        raise DomainError("embedding is orientable; no noncontractible cycle")
    cycle_vertices(g, best)
    return CycleRef(tuple(best), contractible=False)


def edge_width(g: EmbeddedGraph) -> int:
    return len(shortest_noncontractible_cycle(g).edges)


def is_bipartite(g: EmbeddedGraph) -> dict[int, int] | None:
    """BFS 2-coloring with sides 0/1, or None when an odd cycle exists."""
    return bipartition(g.n, g.edges)


def bipartition(n: int, edges: Iterable[tuple[int, int]]) -> dict[int, int] | None:
    """BFS 2-coloring of an abstract multigraph, or None when an odd cycle exists."""
    side: dict[int, int] = {}
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if u == v:
            return None
        adj[u].append(v)
        adj[v].append(u)
    for root in range(n):
        if root in side:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    return side
