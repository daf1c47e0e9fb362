"""Decide whether a projective-plane triangulation has a spanning bipartite quadrangulation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Mapping

from ppquad.colorings import B, W, Coloring, complete_coloring, mono_faces
from ppquad.construct import NearTriangulation, bwbw_coloring, cliques, extend_weak, near_triangulation
from ppquad.errors import DomainError, PreconditionError, TheoremViolation
from ppquad.factors import (
    coloring_to_factor,
    is_perfect_matching,
    matching_through,
    parity_bipartite,
    perfect_matchings,
    quadrangulation_from,
)
from ppquad.quasi import QEDecomposition, decompose, verify_decomposition, extend_mono_to_near_weak, extend_mono_to_two_mono
from ppquad.surface import (
    PROJECTIVE_PLANE,
    SPHERE,
    Dart,
    EmbeddedGraph,
    from_faces,
    is_bipartite,
    is_contractible,
    require_valid,
)
from ppquad.triops import (
    Contraction2,
    Region,
    contract_all_2cycles,
    dual,
    is_triangulation,
    order_cycle,
    regions,
    subsurface,
    two_cycles,
)

HAS_SBQ = "HAS_SBQ"
NO_SBQ = "NO_SBQ"


# -- K6 skeletons ------------------------------------------------------------


@dataclass(frozen=True)
class K6Region:
    """One of the ten disks cut out by an embedded K6."""

    triangle: tuple[int, int, int]
    edges: tuple[int, int, int]
    region: Region
    interior: frozenset[int]
    piece: EmbeddedGraph | None = None      # plane triangulation: triangle plus inside
    piece_vmap: tuple[int, ...] = ()
    piece_root: int = -1
    decomposition: QEDecomposition | None = None

    @property
    def empty(self) -> bool:
        return not self.interior

    @property
    def quasi_eulerian(self) -> bool:
        return self.empty or self.decomposition.quasi_eulerian


@dataclass(frozen=True)
class K6Structure:
    vertices: tuple[int, ...]
    regions: tuple[K6Region, ...]

    @property
    def all_quasi_eulerian(self) -> bool:
        return all(r.quasi_eulerian for r in self.regions)

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "regions": [
                {
                    "triangle": list(r.triangle),
                    "interior": sorted(r.interior),
                    "quasi_eulerian": r.quasi_eulerian,
                    "decomposition": r.decomposition.to_dict() if r.decomposition else None,
                }
                for r in self.regions
            ],
        }


def _k6_regions(g: EmbeddedGraph, clique: tuple[int, ...]) -> list[tuple[Region, tuple[int, ...]]] | None:
    cut = []
    for a, b in itertools.combinations(clique, 2):
        es = g.edges_between(a, b)
        if len(es) != 1:
            return None
        cut.append(es[0])
    parts = regions(g, cut)
    if len(parts) != 10:
        return None
    out = []
    for p in parts:
        if p.chi != 1 or len(p.boundary_edges) != 3 or not is_contractible(g, p.boundary_edges):
            return None
        out.append((p, p.boundary_edges))
    return out


def find_k6_structures(g: EmbeddedGraph, analyse: bool = True) -> list[K6Structure]:
    """Every 6-clique embedded as the K6 triangulation, with its ten regions."""
    if g.surface != PROJECTIVE_PLANE:
        return []
    found = []
    for clique in cliques(g, 6):
        parts = _k6_regions(g, clique)
        if parts is None:
            continue
        regs = []
        for p, edges in sorted(parts, key=lambda x: sorted({v for e in x[1] for v in g.edges[e]})):
            tri = tuple(sorted({v for e in edges for v in g.edges[e]}))
            interior = p.vertices - set(tri)
            if interior and analyse:
                h, vmap, _, caps = subsurface(g, p.faces, [order_cycle(g, list(edges))], SPHERE)
                regs.append(K6Region(tri, tuple(edges), p, interior, h, tuple(vmap), caps[0],
                                     decompose(h, caps[0])))
            else:
                regs.append(K6Region(tri, tuple(edges), p, interior))
        found.append(K6Structure(clique, tuple(regs)))
    return found


def find_k6_structure(g: EmbeddedGraph) -> K6Structure | None:
    found = find_k6_structures(g)
    return found[0] if found else None


# -- cutting along a one-sided 2-cycle ---------------------------------------


def cut_open_2cycle(g: EmbeddedGraph, c: tuple[int, int]) -> tuple[NearTriangulation, list[int]]:
    """Cut along a noncontractible 2-cycle into a disk bounded by u1' u2' u1'' u2''.

    Returns the near-triangulation and the map new vertex -> old vertex.
    """
    e1, e2 = c
    if is_contractible(g, c):
        raise PreconditionError("2-cycle is contractible")
    u1, u2 = g.edges[e1]
    pos = g.position
    copy_of = {u1: g.n, u2: g.n + 1}

    def arc_a(u: int) -> tuple[int, int, int]:
        p = next(pos[d].index for d in g.rotation[u] if d.edge == e1)
        q = next(pos[d].index for d in g.rotation[u] if d.edge == e2)
        return p, q, g.degree(u)

    arcs = {u: arc_a(u) for u in (u1, u2)}

    def new_vertex(corner) -> int:
        v, i = corner
        if v not in arcs:
            return v
        p, q, deg = arcs[v]
        return v if (i - p) % deg < (q - p) % deg else copy_of[v]

    edge_ends: dict[Any, list[int | None]] = {}
    face_keys = []
    for face in g.faces:
        k = face.length
        keys = []
        for step, d in enumerate(face.darts):
            key = (d.edge, face.face_id, step) if d.edge in (e1, e2) else d.edge
            ends = edge_ends.setdefault(key, [None, None])
            tail = new_vertex(face.corners[step])
            head = new_vertex(face.corners[(step + 1) % k])
            for slot, val in ((d.end, tail), (1 - d.end, head)):
                if ends[slot] is not None and ends[slot] != val:
                    raise TheoremViolation("cut-open edge endpoints disagree")
                ends[slot] = val
            keys.append((key, d.end))
        face_keys.append(keys)
    order = sorted(edge_ends, key=lambda k: (0, k, 0, 0) if isinstance(k, int) else (1,) + k)
    index = {k: i for i, k in enumerate(order)}
    edges = [tuple(edge_ends[k]) for k in order]
    faces = [[Dart(index[k], end) for k, end in keys] for keys in face_keys]
    boundary = [index[k] for k in order if not isinstance(k, int)]
    # close the disk with one outer face walking the four boundary copies
    walk, cur, left = [], u1, list(boundary)
    while left:
        e = next(x for x in left if cur in edges[x])
        left.remove(e)
        end = 0 if edges[e][0] == cur else 1
        walk.append(Dart(e, end))
        cur = edges[e][1 - end]
    h = from_faces(g.n + 2, edges, faces + [walk], SPHERE)
    ring = [edges[d.edge][d.end] for d in walk]
    vmap = list(range(g.n)) + [u1, u2]
    return near_triangulation(h, ring), vmap


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    coloring: Coloring
    matching: frozenset[int]       # edges of G deleted to obtain Q
    quadrangulation: EmbeddedGraph
    q_edge_map: tuple[int, ...]    # Q edge -> G edge
    bipartition: Mapping[int, int]


@dataclass(frozen=True)
class Certificate:
    verdict: str
    graph: EmbeddedGraph
    reduced: EmbeddedGraph
    route: str
    witness: Witness | None = None
    obstruction: K6Structure | None = None
    contractions: int = 0
    notes: tuple[str, ...] = field(default_factory=tuple)

    def verify(self) -> bool:
        if self.verdict == HAS_SBQ:
            return self.witness is not None and verify_witness(self.graph, self.witness)
        return self.obstruction is not None and verify_obstruction(self.reduced, self.obstruction)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"verdict": self.verdict, "route": self.route,
                               "n": self.graph.n, "reduced_n": self.reduced.n,
                               "contractions": self.contractions}
        if self.witness:
            w = self.witness
            out["witness"] = {
                "coloring": "".join(w.coloring[v] for v in range(self.graph.n)),
                "deleted_edges": sorted(w.matching),
                "quadrangulation_edges": sorted(w.q_edge_map),
            }
        if self.obstruction:
            out["obstruction"] = self.obstruction.to_dict()
        return out


def verify_witness(g: EmbeddedGraph, w: Witness) -> bool:
    q = w.quadrangulation
    if q.n != g.n or any(f.length != 4 for f in q.faces):
        return False
    if set(w.q_edge_map) != set(range(g.m)) - set(w.matching):
        return False
    if not is_perfect_matching(dual(g), w.matching):
        return False
    side = is_bipartite(q)
    if side is None:
        return False
    for a, b in q.edges:
        if w.coloring[a] == w.coloring[b]:
            return False
    return not mono_faces(g, w.coloring)


def verify_obstruction(g: EmbeddedGraph, k: K6Structure) -> bool:
    vs = k.vertices
    if len(set(vs)) != 6 or any(b not in g.neighbors[a] for a, b in itertools.combinations(vs, 2)):
        return False
    parts = _k6_regions(g, tuple(sorted(vs)))
    if parts is None or len(k.regions) != 10:
        return False
    seen: dict[int, int] = {}
    for i, r in enumerate(k.regions):
        for v in r.interior:
            if v in seen:
                return False
            seen[v] = i
        if not r.empty:
            if r.decomposition is None or not r.decomposition.quasi_eulerian:
                return False
            if not verify_decomposition(r.decomposition):
                return False
    return set(seen) | set(vs) == set(range(g.n))


# -- the decision procedure --------------------------------------------------


def _check_input(g: EmbeddedGraph) -> None:
    require_valid(g)
    if g.surface != PROJECTIVE_PLANE:
        raise DomainError("expects a projective-plane triangulation")
    if not is_triangulation(g):
        raise DomainError("not a triangulation: some face is not a triangle")


def _lift_coloring(steps: list[Contraction2], c: Coloring) -> Coloring:
    """Carry a coloring back through 2-cycle contractions, filling each disk."""
    for step in reversed(steps):
        before = step.before
        fixed = {step.vmap[v]: col for v, col in c.items()}
        filled = complete_coloring(before, fixed, step.disk_faces)
        if filled is None:
            raise TheoremViolation("contracted disk has no weak filling")
        c = filled
    return c


def _witness_from_coloring(g: EmbeddedGraph, c: Coloring) -> Witness:
    m = coloring_to_factor(g, c)
    q, emap = quadrangulation_from(g, m)
    side = is_bipartite(q)
    return Witness(c, m, q, tuple(emap), side or {})


def _witness_from_matching(g: EmbeddedGraph, m: frozenset[int]) -> Witness:
    q, emap = quadrangulation_from(g, m)
    side = is_bipartite(q)
    if side is None:
        raise TheoremViolation("matching passed the parity test but Q is not bipartite")
    c = {v: (B if s == 0 else W) for v, s in side.items()}
    return Witness(c, frozenset(m), q, tuple(emap), side)


def matching_search(g: EmbeddedGraph) -> frozenset[int] | None:
    """First perfect matching of the dual passing the parity test."""
    for m in perfect_matchings(dual(g)):
        if parity_bipartite(g, m):
            return m
    return None


def _k6_witness(g: EmbeddedGraph, k: K6Structure) -> Coloring:
    j = next(i for i, r in enumerate(k.regions) if not r.quasi_eulerian)
    bad = k.regions[j]
    c = {v: (B if v in bad.triangle else W) for v in k.vertices}
    inner = extend_mono_to_near_weak(bad.piece, bad.piece_root, B, bad.decomposition)
    return _fill_regions(g, k, c, {j: inner})


def _fill_regions(g: EmbeddedGraph, k: K6Structure, c: Coloring, special: Mapping[int, Coloring]) -> Coloring:
    c = dict(c)
    for i, r in enumerate(k.regions):
        if r.empty:
            continue
        if i in special:
            piece = special[i]
        else:
            cap = {v: c[r.piece_vmap[v]] for v in r.piece.faces[r.piece_root].vertices}
            piece = extend_weak(r.piece, r.piece_root, cap)
        for v, col in piece.items():
            c[r.piece_vmap[v]] = col
    return c


def decide_sbq(g: EmbeddedGraph, verify: bool = True) -> Certificate:
    _check_input(g)
    steps = contract_all_2cycles(g)
    h = steps[-1].after if steps else g
    notes: list[str] = []

    def finish(cert: Certificate) -> Certificate:
        if verify and not cert.verify():
            raise TheoremViolation(f"certificate failed verification on route {cert.route}")
        return cert

    def has(c_or_m, route: str) -> Certificate:
        if isinstance(c_or_m, frozenset):
            w_h = _witness_from_matching(h, c_or_m)
            c = w_h.coloring
        else:
            c = c_or_m
        c = _lift_coloring(steps, c)
        w = _witness_from_coloring(g, c)
        return finish(Certificate(HAS_SBQ, g, h, route, witness=w, contractions=len(steps), notes=tuple(notes)))

    loops = [e for e in range(h.m) if h.is_loop(e)]
    if loops:
        return has(matching_through(dual(h), loops[0]), "noncontractible-loop")
    nc2 = [c for c in two_cycles(h) if not is_contractible(h, c)]
    if nc2:
        nt, vmap = cut_open_2cycle(h, nc2[0])
        bc = bwbw_coloring(nt)
        c = {}
        for v, col in bc.coloring.items():
            old = vmap[v]
            if old in c and c[old] != col:
                raise TheoremViolation("boundary copies disagree after cutting")
            c[old] = col
        return has(c, "noncontractible-2-cycle")

    structures = find_k6_structures(h)
    for k in structures:
        if k.all_quasi_eulerian:
            return finish(Certificate(NO_SBQ, g, h, "k6-obstruction", obstruction=k,
                                      contractions=len(steps), notes=tuple(notes)))
    if structures:
        try:
            c = _k6_witness(h, structures[0])
            if mono_faces(h, c):
                raise TheoremViolation("K6 witness construction is not weak")
            return has(c, "k6-construction")
        except TheoremViolation as exc:
            notes.append(f"k6 construction failed: {exc}")
    m = matching_search(h)
    if m is None:
        raise TheoremViolation("no K6 obstruction but no parity-satisfying matching")
    return has(m, "matching-search")


# -- weak or near-weak colorings ---------------------------------------------


def near_weak_k6(k: K6Structure) -> tuple[Coloring, int]:
    """First K6 coloring (exhaustive over 2^6) with exactly one monochromatic region triangle."""
    vs = k.vertices
    for bits in itertools.product((B, W), repeat=6):
        c = dict(zip(vs, bits))
        mono = [i for i, r in enumerate(k.regions) if len({c[v] for v in r.triangle}) == 1]
        if len(mono) == 1:
            return c, mono[0]
    raise TheoremViolation("K6 has no near-weak coloring")


def near_weak_or_weak(g: EmbeddedGraph, cert: Certificate | None = None) -> Coloring:
    cert = cert or decide_sbq(g)
    if cert.verdict == HAS_SBQ:
        return cert.witness.coloring
    h, k = cert.reduced, cert.obstruction
    c, j = near_weak_k6(k)
    r = k.regions[j]
    special = {}
    if not r.empty:
        x = c[r.triangle[0]]
        special[j] = extend_mono_to_two_mono(r.piece, r.piece_root, x, r.decomposition)
    c = _fill_regions(h, k, c, special)
    steps = contract_all_2cycles(g)
    c = _lift_coloring(steps, c)
    if len(mono_faces(g, c)) != 1:
        raise TheoremViolation(f"near-weak construction has {len(mono_faces(g, c))} mono faces")
    return c


def bipartite_subgraph_bound(g: EmbeddedGraph, cert: Certificate | None = None) -> tuple[int, Coloring]:
    """|E| - |F_c| for the weak or near-weak coloring c."""
    c = near_weak_or_weak(g, cert)
    return g.m - len(coloring_to_factor(g, c)), c
