"""Local reductions of multitriangulations and lifting of quadrangulations through them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ppquad.errors import DomainError, PreconditionError, TheoremViolation
from ppquad.surface import Corner, Dart, EmbeddedGraph, bipartition, build, is_contractible
from ppquad.triops import dual
from ppquad.factors import is_perfect_matching

log = logging.getLogger(__name__)

C4, C6, C55, V2REM, V2ADD = "C4", "C6", "C55", "V2REM", "V2ADD"
KINDS = (C4, C6, C55, V2REM, V2ADD)


@dataclass(frozen=True)
class ContractionSpec:
    """``pivot``: the removed vertex (or (u, v) for C55, an edge id for V2ADD).

    ``at``: identified vertices, e.g. (v2, v4) for C4, (v2, v4, v6) for C6,
    ((v1, v5), (v2, v4)) for C55; unused for V2REM/V2ADD.
    """

    kind: str
    pivot: tuple[int, ...]
    at: tuple = ()


@dataclass(frozen=True)
class Contraction:
    spec: ContractionSpec
    before: EmbeddedGraph
    after: EmbeddedGraph
    vmap: tuple[int, ...]                  # after vertex -> before vertex
    emap: tuple[int, ...]                  # after edge -> before edge
    merged: tuple[tuple[int, int], ...]    # (survivor, dropped) edge pairs, before ids
    labels: Mapping[str, int] = field(default_factory=dict)   # local names -> vertex / edge ids
    symmetry: str = "identity"


# -- local structure ---------------------------------------------------------


@dataclass(frozen=True)
class Link:
    """Neighbours, spokes, rims and faces around a vertex, in rotation order."""

    vertex: int
    neighbors: tuple[int, ...]
    spokes: tuple[int, ...]
    rims: tuple[int, ...]     # rims[i] joins neighbors[i] and neighbors[i+1]
    faces: tuple[int, ...]    # faces[i] is the face at corner i


def link(g: EmbeddedGraph, v: int) -> Link:
    rot = g.rotation[v]
    at_corner = {}
    for face in g.faces:
        for c in face.corners:
            at_corner[c] = face.face_id
    nbrs, spokes, rims, faces = [], [], [], []
    k = len(rot)
    for i, d in enumerate(rot):
        if g.is_loop(d.edge):
            raise PreconditionError(f"vertex {v} carries a loop")
        nbrs.append(g.head(d))
        spokes.append(d.edge)
        f = at_corner[Corner(v, i)]
        walk = g.faces[f]
        if walk.length != 3:
            raise PreconditionError("link of a non-triangular face")
        other = [x.edge for x in walk.darts if x.edge not in (d.edge, rot[(i + 1) % k].edge)]
        if len(other) != 1:
            raise PreconditionError(f"degenerate face at corner {i} of vertex {v}")
        rims.append(other[0])
        faces.append(f)
    return Link(v, tuple(nbrs), tuple(spokes), tuple(rims), tuple(faces))


def _rotate(lk: Link, start: int, reverse: bool = False) -> Link:
    """Re-index the link so that neighbour ``start`` comes first (optionally reflected)."""
    k = len(lk.neighbors)
    if not reverse:
        idx = [(start + i) % k for i in range(k)]
        return Link(lk.vertex, tuple(lk.neighbors[i] for i in idx), tuple(lk.spokes[i] for i in idx),
                    tuple(lk.rims[i] for i in idx), tuple(lk.faces[i] for i in idx))
    idx = [(start - i) % k for i in range(k)]
    # reflected: rim between new i and i+1 is old rim at index (start - i - 1)
    ridx = [(start - i - 1) % k for i in range(k)]
    return Link(lk.vertex, tuple(lk.neighbors[i] for i in idx), tuple(lk.spokes[i] for i in idx),
                tuple(lk.rims[i] for i in ridx), tuple(lk.faces[i] for i in ridx))


def _chord_blocks(g: EmbeddedGraph, v_spoke: Mapping[int, int], a: int, b: int, apex: int) -> bool:
    """True when some edge ab closes a contractible triangle with the apex."""
    for e in g.edges_between(a, b):
        if is_contractible(g, [v_spoke[a], e, v_spoke[b]]):
            return True
    return False


# -- the generic editor ------------------------------------------------------


def _edit(
    g: EmbeddedGraph,
    removed_vertices: set[int],
    ident: Mapping[int, int],
    merges: list[tuple[int, int]],
) -> tuple[EmbeddedGraph, list[int], list[int], tuple[tuple[int, int], ...]]:
    """Delete vertices (and their faces), identify vertices, merge edge pairs."""
    rep = {x: ident.get(x, x) for x in range(g.n)}
    survivor = {}
    pairs = []
    for a, b in merges:
        s, d = min(a, b), max(a, b)
        survivor[d] = s
        pairs.append((s, d))
    edge_map = {e: (rep[u], rep[v]) for e, (u, v) in enumerate(g.edges)
                if u not in removed_vertices and v not in removed_vertices and e not in survivor}

    def translate(d: Dart) -> Dart:
        if d.edge not in survivor:
            return d
        s = survivor[d.edge]
        tail = rep[g.tail(d)]
        a, b = edge_map[s]
        if a == b:
            raise TheoremViolation("merged pair became a loop")
        return Dart(s, 0 if a == tail else 1)

    faces = [[translate(d) for d in f.darts] for f in g.faces
             if not any(x in removed_vertices for x in f.vertices)]
    loops = any(a == b for a, b in edge_map.values())
    h, vmap, emap = build(edge_map, faces, g.surface, g.allow_loops or loops)
    return h, vmap, emap, tuple(pairs)


def _distinct(xs: Iterable[int]) -> bool:
    xs = list(xs)
    return len(set(xs)) == len(xs)


# -- operations --------------------------------------------------------------


def apply(g: EmbeddedGraph, spec: ContractionSpec) -> Contraction:
    if spec.kind == C4:
        return _contract_star(g, spec, 4)
    if spec.kind == C6:
        return _contract_star(g, spec, 6)
    if spec.kind == C55:
        return _contract_55(g, spec)
    if spec.kind == V2REM:
        return _remove_2vertex(g, spec)
    if spec.kind == V2ADD:
        return _add_2vertex(g, spec)
    raise PreconditionError(f"unknown contraction kind {spec.kind!r}")


def _contract_star(g: EmbeddedGraph, spec: ContractionSpec, k: int) -> Contraction:
    (v,) = spec.pivot
    if g.degree(v) != k:
        raise PreconditionError(f"vertex {v} has degree {g.degree(v)}, not {k}")
    lk = link(g, v)
    if not _distinct(lk.neighbors):
        raise PreconditionError("neighbours of the pivot are not distinct")
    at = set(spec.at)
    starts = [i for i in range(k) if {lk.neighbors[(i + j) % k] for j in range(1, k, 2)} == at]
    if len(at) != k // 2 or not starts:
        raise PreconditionError(f"{sorted(at)} is not an alternate set of neighbours of {v}")
    lk = _rotate(lk, starts[0])  # neighbours v1..vk with v2, v4, ... identified
    nb = {i + 1: lk.neighbors[i] for i in range(k)}
    spoke = {lk.neighbors[i]: lk.spokes[i] for i in range(k)}
    even = [nb[i] for i in range(2, k + 1, 2)]
    for i, a in enumerate(even):
        for b in even[i + 1:]:
            if _chord_blocks(g, spoke, a, b, v):
                raise PreconditionError(f"contractible 3-cycle through {v}, {a}, {b}")
    rim = {(i + 1, (i + 1) % k + 1): lk.rims[i] for i in range(k)}  # rim[(i, i+1)]
    ident = {x: even[0] for x in even}
    merges = []
    for i in range(1, k + 1, 2):
        before = rim[((i - 2) % k + 1, i)]
        after = rim[(i, i % k + 1)]
        merges.append((before, after))
    h, vmap, emap, pairs = _edit(g, {v}, ident, merges)
    labels = {"v": v, **{f"v{i}": nb[i] for i in nb}}
    labels.update({f"s{i}": spoke[nb[i]] for i in nb})
    labels.update({f"r{a}{b}": e for (a, b), e in rim.items()})
    return Contraction(spec, g, h, tuple(vmap), tuple(emap), pairs, labels, f"rotation {starts[0]}")


def _frame_55(g: EmbeddedGraph, u: int, v: int):
    """Neighbour labels v1..v6 with v ~ (u, v1, v2, v3, v4) and u ~ (v, v4, v5, v6, v1)."""
    if g.degree(u) != 5 or g.degree(v) != 5:
        raise PreconditionError("C55 needs two 5-vertices")
    lv = link(g, v)
    if u not in lv.neighbors:
        raise PreconditionError(f"{u} and {v} are not adjacent")
    lv = _rotate(lv, lv.neighbors.index(u))
    lu = link(g, u)
    lu = _rotate(lu, lu.neighbors.index(v))
    v1, v4 = lv.neighbors[1], lv.neighbors[4]
    if lu.neighbors[1] != v4:
        lu = _rotate(lu, 0, reverse=True)
    if lu.neighbors[1] != v4 or lu.neighbors[4] != v1:
        raise PreconditionError("the two 5-vertices do not share the faces uvv1 and uvv4")
    return lv, lu


def _contract_55(g: EmbeddedGraph, spec: ContractionSpec) -> Contraction:
    u, v = spec.pivot
    lv, lu = _frame_55(g, u, v)
    want = {frozenset(p) for p in spec.at}
    symmetry = "identity"
    nb = {1: lv.neighbors[1], 2: lv.neighbors[2], 3: lv.neighbors[3], 4: lv.neighbors[4],
          5: lu.neighbors[2], 6: lu.neighbors[3]}
    if want != {frozenset((nb[1], nb[5])), frozenset((nb[2], nb[4]))}:
        # reflected frame identifies v1~v3 and v4~v6
        lv, lu = _rotate(lv, 0, reverse=True), _rotate(lu, 0, reverse=True)
        lv, lu = lu, lv
        u, v = v, u
        symmetry = "reflection"
        lv = _rotate(lv, lv.neighbors.index(u))
        lu = _rotate(lu, lu.neighbors.index(v))
        if lu.neighbors[1] != lv.neighbors[4]:
            lu = _rotate(lu, 0, reverse=True)
        nb = {1: lv.neighbors[1], 2: lv.neighbors[2], 3: lv.neighbors[3], 4: lv.neighbors[4],
              5: lu.neighbors[2], 6: lu.neighbors[3]}
        if want != {frozenset((nb[1], nb[5])), frozenset((nb[2], nb[4]))}:
            raise PreconditionError(f"{spec.at} is not a valid C55 identification")
    six = [nb[i] for i in range(1, 7)]
    if not (_distinct(six) or (nb[3] == nb[6] and _distinct(six[:5]))):
        raise PreconditionError("v1..v6 must be distinct except possibly v3 = v6")
    su = {lu.neighbors[i]: lu.spokes[i] for i in range(5)}
    sv = {lv.neighbors[i]: lv.spokes[i] for i in range(5)}
    if _chord_blocks(g, su, nb[1], nb[5], u):
        raise PreconditionError("contractible 3-cycle u v1 v5")
    if _chord_blocks(g, sv, nb[2], nb[4], v):
        raise PreconditionError("contractible 3-cycle v v2 v4")
    rim = {"r12": lv.rims[1], "r23": lv.rims[2], "r34": lv.rims[3],
           "r45": lu.rims[1], "r56": lu.rims[2], "r61": lu.rims[3]}
    ident = {nb[5]: nb[1], nb[4]: nb[2]}
    merges = [(rim["r12"], rim["r45"]), (rim["r23"], rim["r34"]), (rim["r56"], rim["r61"])]
    h, vmap, emap, pairs = _edit(g, {u, v}, ident, merges)
    labels = {"u": u, "v": v, **{f"v{i}": nb[i] for i in nb}, **rim,
              "uv": lv.spokes[0], "vv1": sv[nb[1]], "vv2": sv[nb[2]], "vv3": sv[nb[3]], "vv4": sv[nb[4]],
              "uv4": su[nb[4]], "uv5": su[nb[5]], "uv6": su[nb[6]], "uv1": su[nb[1]]}
    log.debug("C55 frame %s: %s", symmetry, labels)
    return Contraction(spec, g, h, tuple(vmap), tuple(emap), pairs, labels, symmetry)


def _remove_2vertex(g: EmbeddedGraph, spec: ContractionSpec) -> Contraction:
    (w,) = spec.pivot
    if g.degree(w) != 2:
        raise PreconditionError(f"vertex {w} has degree {g.degree(w)}, not 2")
    lk = link(g, w)
    w1, w2 = lk.neighbors
    if w1 == w2:
        raise PreconditionError("2-vertex with a repeated neighbour")
    x, y = lk.rims
    if x == y:
        raise PreconditionError("the two faces at the 2-vertex share their third edge")
    h, vmap, emap, pairs = _edit(g, {w}, {}, [(x, y)])
    labels = {"w": w, "w1": w1, "w2": w2, "e1": lk.spokes[0], "e2": lk.spokes[1], "x": x, "y": y}
    return Contraction(spec, g, h, tuple(vmap), tuple(emap), pairs, labels)


def _add_2vertex(g: EmbeddedGraph, spec: ContractionSpec) -> Contraction:
    """Double edge ``pivot`` and put a new 2-vertex inside the digon."""
    (e,) = spec.pivot
    a, b = g.edges[e]
    if a == b:
        raise PreconditionError("cannot add a 2-vertex on a loop")
    (f1, k1), (f2, k2) = g.edge_sides[e]
    w, e_new, s1, s2 = g.n, g.m, g.m + 1, g.m + 2
    edges = list(g.edges) + [(a, b), (w, a), (w, b)]
    faces = [list(f.darts) for f in g.faces]
    # face f2 now uses the new parallel copy, with the same direction
    d2 = faces[f2][k2]
    faces[f2][k2] = Dart(e_new, d2.end)
    d1 = faces[f1][k1]
    # digon interior: triangles (tail, head, w) on each copy
    tail1, head1 = g.tail(d1), g.head(d1)

    def spoke_to(x: int) -> int:
        return s1 if x == a else s2

    def dart(edge: int, frm: int) -> Dart:
        return Dart(edge, 0 if edges[edge][0] == frm else 1)

    tri1 = [dart(e, head1), dart(spoke_to(tail1), tail1), dart(spoke_to(head1), w)]
    tail2 = edges[e_new][d2.end]
    head2 = edges[e_new][1 - d2.end]
    tri2 = [dart(e_new, head2), dart(spoke_to(tail2), tail2), dart(spoke_to(head2), w)]
    from ppquad.surface import from_faces

    h = from_faces(g.n + 1, edges, faces + [tri1, tri2], g.surface, g.allow_loops)
    return Contraction(spec, g, h, tuple(range(g.n)), tuple(range(g.m)), (),
                       {"w": w, "w1": a, "w2": b, "x": e, "y": e_new, "e1": s1, "e2": s2})


# -- lifting -----------------------------------------------------------------


def lift_matching(c: Contraction, m_after: Iterable[int]) -> frozenset[int]:
    """Turn a dual perfect matching of the contracted graph into one of the original."""
    m_after = set(m_after)
    if c.spec.kind == V2ADD:
        raise PreconditionError("lifting runs from the contracted graph back; V2ADD has no lift")
    if not is_perfect_matching(dual(c.after), m_after):
        raise DomainError("M' is not a perfect matching of the contracted dual")
    m = {c.emap[e] for e in m_after}
    L = c.labels
    kind = c.spec.kind
    if kind in (C4, C6):
        k = 4 if kind == C4 else 6
        for i in range(1, k + 1, 2):
            r_prev = L[f"r{(i - 2) % k + 1}{i}"]
            r_next = L[f"r{i}{i % k + 1}"]
            s = min(r_prev, r_next)
            if s in m:
                m.discard(s)
                m |= {r_prev, r_next}
            else:
                m.add(L[f"s{i}"])
    elif kind == C55:
        m = _lift_55(c, m)
    elif kind == V2REM:
        s = min(L["x"], L["y"])
        if s in m:
            m.discard(s)
            m |= {L["x"], L["y"]}
        else:
            m.add(L["e1"])
    if not is_perfect_matching(dual(c.before), m):
        raise TheoremViolation(f"lifted set is not a perfect matching ({kind})")
    return frozenset(m)


def _lift_55(c: Contraction, m: set[int]) -> set[int]:
    L = c.labels
    merged = {"a3": (L["r23"], L["r34"]), "auv": (L["r12"], L["r45"]), "a6": (L["r56"], L["r61"])}
    flags = {k: min(p) in m for k, p in merged.items()}
    for k, p in merged.items():
        if flags[k]:
            m.discard(min(p))
    a3, auv, a6 = flags["a3"], flags["auv"], flags["a6"]
    table = {
        (False, False, False): ["vv1", "vv3", "uv4", "uv6"],
        (False, False, True): ["vv1", "vv3", "uv4", "r56", "r61"],
        (False, True, False): ["uv", "vv3", "uv6", "r12", "r45"],
        (True, False, True): ["vv1", "uv4", "r23", "r34", "r56", "r61"],
        (False, True, True): ["uv", "vv3", "r12", "r45", "r56", "r61"],
        (True, True, True): ["uv", "r12", "r23", "r34", "r45", "r56", "r61"],
        # mirror images under u <-> v, v1 <-> v4, v2 <-> v5, v3 <-> v6
        (True, False, False): ["uv4", "uv6", "vv1", "r23", "r34"],
        (True, True, False): ["uv", "uv6", "r45", "r12", "r23", "r34"],
    }
    key = (a3, auv, a6)
    if key not in table:
        raise TheoremViolation(f"C55 lifting table has no case {key}")
    log.debug("C55 lift case a3=%s uv=%s a6=%s", a3, auv, a6)
    return m | {L[name] for name in table[key]}


# -- reducible configurations ------------------------------------------------


@dataclass(frozen=True)
class Reducible:
    """A configuration guaranteed by degree counting (sum of 6 - deg is positive)."""

    kind: str                       # deg2 | deg3 | deg4 | deg6 | adj55
    vertices: tuple[int, ...]
    spec: ContractionSpec | None    # an applicable operation, if any


def candidate_specs(g: EmbeddedGraph, r: Reducible) -> list[ContractionSpec]:
    out: list[ContractionSpec] = []
    if r.kind == "deg2":
        out.append(ContractionSpec(V2REM, r.vertices))
    elif r.kind in ("deg4", "deg6"):
        (v,) = r.vertices
        nb = [g.head(d) for d in g.rotation[v]]
        k = len(nb)
        for s in (1, 0):
            out.append(ContractionSpec(C4 if k == 4 else C6, (v,), tuple(nb[i] for i in range(s, k, 2))))
    elif r.kind == "adj55":
        u, v = r.vertices
        try:
            lv, lu = _frame_55(g, u, v)
        except PreconditionError:
            return out
        v1, v2, v3, v4 = lv.neighbors[1:5]
        v5, v6 = lu.neighbors[2], lu.neighbors[3]
        out.append(ContractionSpec(C55, (u, v), ((v1, v5), (v2, v4))))
        out.append(ContractionSpec(C55, (u, v), ((v1, v3), (v4, v6))))
    return out


def find_reducible(g: EmbeddedGraph) -> Reducible:
    """Lowest-id vertex of degree 2, 3, 4 or 6, or lowest 5-vertex with a 5-neighbour."""
    for v in range(g.n):
        d = g.degree(v)
        if d in (2, 3, 4, 6):
            kind = f"deg{d}"
            r = Reducible(kind, (v,), None)
        elif d == 5:
            nbs = sorted(w for w in g.neighbors[v] if g.degree(w) == 5)
            if not nbs:
                continue
            r = Reducible("adj55", (nbs[0], v), None)
        else:
            continue
        for spec in candidate_specs(g, r):
            try:
                apply(g, spec)
            except PreconditionError:
                continue
            return Reducible(r.kind, r.vertices, spec)
        return r
    raise TheoremViolation("no reducible configuration found")


def complement_bipartite(g: EmbeddedGraph, m: Iterable[int]) -> bool:
    """Whether G - M is bipartite (as an abstract multigraph)."""
    m = set(m)
    return bipartition(g.n, [uv for e, uv in enumerate(g.edges) if e not in m]) is not None


def applicable_specs(g: EmbeddedGraph) -> list[ContractionSpec]:
    """Every applicable C4, C6 and C55 contraction and every 2-vertex removal."""
    out = []
    seen = set()
    for v in range(g.n):
        d = g.degree(v)
        rs = []
        if d in (2, 4, 6):
            rs.append(Reducible(f"deg{d}", (v,), None))
        if d == 5:
            rs += [Reducible("adj55", (u, v), None) for u in sorted(g.neighbors[v]) if u < v and g.degree(u) == 5]
        for r in rs:
            for spec in candidate_specs(g, r):
                key = (spec.kind, spec.pivot, frozenset(frozenset(p) if isinstance(p, tuple) else p for p in spec.at))
                if key in seen:
                    continue
                seen.add(key)
                try:
                    apply(g, spec)
                except PreconditionError:
                    continue
                out.append(spec)
    return out


def degree_excess(g: EmbeddedGraph) -> int:
    return sum(6 - g.degree(v) for v in range(g.n))
