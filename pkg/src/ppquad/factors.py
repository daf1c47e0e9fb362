"""Dual matchings and {1,3}-factors, quadrangulation extraction, parity, max-cut."""

from __future__ import annotations

import sys
from collections import deque
from typing import Iterable, Iterator, Mapping

import numpy as np

from ppquad.colorings import B, W, Coloring
from ppquad.config import budgets
from ppquad.errors import BudgetExceeded, DomainError, PreconditionError, TheoremViolation
from ppquad.surface import SPHERE, EmbeddedGraph, build, shortest_noncontractible_cycle
from ppquad.triops import DualGraph, dual, is_triangulation

EdgeSubset = frozenset  # of edge ids


# -- perfect matchings -------------------------------------------------------


def perfect_matchings(
    d: DualGraph,
    limit: int | None = None,
    forced: Iterable[int] = (),
    excluded: Iterable[int] = (),
    removed: Iterable[int] = (),
) -> Iterator[EdgeSubset]:
    """Every perfect matching of ``d`` minus the ``removed`` vertices.

    Deterministic: always branches on the lowest unmatched vertex, trying its
    edges by increasing id.  ``forced`` edges are taken up front.
    """
    removed = set(removed)
    excluded = set(excluded)
    inc: list[list[tuple[int, int]]] = [[] for _ in range(d.n)]
    for e, (a, b) in enumerate(d.edge_ends):
        if a == b or e in excluded or a in removed or b in removed:
            continue
        inc[a].append((e, b))
        inc[b].append((e, a))
    matched = set(removed)
    chosen: list[int] = []
    for e in sorted(set(forced)):
        a, b = d.edge_ends[e]
        if a == b or a in matched or b in matched or e in excluded:
            return
        matched.update((a, b))
        chosen.append(e)
    emitted = 0

    def dfs() -> Iterator[EdgeSubset]:
        nonlocal emitted
        v = next((x for x in range(d.n) if x not in matched), None)
        if v is None:
            emitted += 1
            yield frozenset(chosen)
            return
        for e, w in inc[v]:
            if w in matched:
                continue
            matched.add(v)
            matched.add(w)
            chosen.append(e)
            if _all_coverable(inc, matched, d.n):
                yield from dfs()
            chosen.pop()
            matched.discard(v)
            matched.discard(w)
            if limit is not None and emitted >= limit:
                return

    if limit is not None and limit <= 0:
        return
    yield from dfs()


def _all_coverable(inc: list[list[tuple[int, int]]], matched: set[int], n: int) -> bool:
    for x in range(n):
        if x not in matched and not any(w not in matched for _, w in inc[x]):
            return False
    return True


def has_perfect_matching(d: DualGraph, removed: Iterable[int] = (), forced: Iterable[int] = ()) -> bool:
    return next(perfect_matchings(d, 1, forced=forced, removed=removed), None) is not None


def matching_through(d: DualGraph, e: int) -> EdgeSubset:
    """A perfect matching containing dual edge ``e``."""
    if not d.is_cubic():
        raise PreconditionError("dual is not cubic")
    m = next(perfect_matchings(d, 1, forced=[e]), None)
    if m is None:
        raise TheoremViolation(f"no perfect matching through dual edge {e}")
    return m


def is_perfect_matching(d: DualGraph, m: Iterable[int]) -> bool:
    return is_factor(d, m, {1})


# -- I-factors ---------------------------------------------------------------


def factor_degrees(d: DualGraph, f: Iterable[int]) -> list[int]:
    deg = [0] * d.n
    for e in f:
        a, b = d.edge_ends[e]
        deg[a] += 1
        deg[b] += 1
    return deg


def is_factor(d: DualGraph, f: Iterable[int], allowed: Iterable[int]) -> bool:
    allowed = set(allowed)
    return all(k in allowed for k in factor_degrees(d, f))


def factors(d: DualGraph, allowed: Iterable[int], limit: int | None = None) -> Iterator[EdgeSubset]:
    """Every spanning subgraph whose degrees lie in ``allowed`` (edge-by-edge backtracking)."""
    allowed = sorted(set(allowed))
    deg = [0] * d.n
    left = [d.degree(v) for v in range(d.n)]
    chosen: list[int] = []
    emitted = 0

    def feasible(v: int) -> bool:
        return any(deg[v] <= k <= deg[v] + left[v] for k in allowed)

    def dfs(e: int) -> Iterator[EdgeSubset]:
        nonlocal emitted
        if e == d.m:
            if all(deg[v] in allowed for v in range(d.n)):
                emitted += 1
                yield frozenset(chosen)
            return
        a, b = d.edge_ends[e]
        ends = (a,) * 2 if a == b else (a, b)
        for x in ends:
            left[x] -= 1
        for take in (False, True):
            if take:
                for x in ends:
                    deg[x] += 1
                chosen.append(e)
            if feasible(a) and feasible(b):
                yield from dfs(e + 1)
            if take:
                chosen.pop()
                for x in ends:
                    deg[x] -= 1
            if limit is not None and emitted >= limit:
                break
        for x in ends:
            left[x] += 1

    yield from dfs(0)


def three_vertices(d: DualGraph, f: Iterable[int]) -> list[int]:
    return [v for v, k in enumerate(factor_degrees(d, f)) if k == 3]


# -- quadrangulations --------------------------------------------------------


def quadrangulation_from(t: EmbeddedGraph, m: Iterable[int]) -> tuple[EmbeddedGraph, list[int]]:
    """Q = T - M, merging the two faces across each edge of M.

    Returns Q and the map from Q's edge ids to T's.
    """
    m = set(m)
    if not is_triangulation(t):
        raise PreconditionError("input is not a triangulation")
    if not is_perfect_matching(dual(t), m) or any(t.edge_sides[e][0][0] == t.edge_sides[e][1][0] for e in m):
        raise DomainError("M* is not a perfect matching of the dual")
    walks = []
    for e in sorted(m):
        (f1, k1), (f2, k2) = t.edge_sides[e]
        w1 = list(t.faces[f1].darts)
        w2 = list(t.faces[f2].darts)
        d_e = w1[k1]
        first = w1[k1 + 1:] + w1[:k1]
        other = w2[k2]
        rest = w2[k2 + 1:] + w2[:k2]
        if other == d_e.mate():
            second = rest
        else:
            second = [x.mate() for x in reversed(rest)]
        walks.append(first + second)
    keep = {e: t.edges[e] for e in range(t.m) if e not in m}
    q, vmap, emap = build(keep, walks, t.surface, t.allow_loops, allow_spurs=True)
    if vmap != list(range(t.n)):
        raise TheoremViolation("removing M isolated a vertex")
    return q, emap


def parity_bipartite(t: EmbeddedGraph, m: Iterable[int]) -> bool:
    """|C ∩ M| ≡ |C| (mod 2) on a shortest noncontractible cycle C."""
    if t.surface == SPHERE:
        return True
    c = shortest_noncontractible_cycle(t)
    m = set(m)
    return (sum(1 for e in c.edges if e in m) - len(c.edges)) % 2 == 0


# -- colorings and factors ---------------------------------------------------


def coloring_to_factor(t: EmbeddedGraph, c: Mapping[int, str]) -> EdgeSubset:
    return frozenset(e for e, (u, v) in enumerate(t.edges) if c[u] == c[v])


def factor_to_coloring(t: EmbeddedGraph, f: Iterable[int]) -> Coloring:
    """Coloring in which exactly the edges of F are monochromatic (plane only)."""
    if t.surface != SPHERE:
        raise DomainError("factor-to-coloring is only defined on the sphere")
    f = set(f)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(t.n)]
    for e, (u, v) in enumerate(t.edges):
        adj[u].append((e, v))
        adj[v].append((e, u))
    c: dict[int, str] = {}
    for root in range(t.n):
        if root in c:
            continue
        c[root] = B
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e, y in adj[x]:
                want = c[x] if e in f else (W if c[x] == B else B)
                if y not in c:
                    c[y] = want
                    queue.append(y)
                elif c[y] != want:
                    raise DomainError("F* is not a {1,3}-factor: parity clash")
    return c


# -- maximum bipartite subgraph ----------------------------------------------


def cut_size(g: EmbeddedGraph, c: Mapping[int, str]) -> int:
    return sum(1 for u, v in g.edges if c[u] != c[v])


def max_bipartite_subgraph(g: EmbeddedGraph) -> tuple[int, Coloring]:
    """Maximum cut and the lexicographically least maximizing bipartition (vertex 0 black)."""
    if not is_triangulation(g):
        raise PreconditionError("input is not a triangulation")
    cfg = budgets()
    if g.n <= cfg.maxcut_exhaustive_n:
        return _maxcut_exhaustive(g)
    return _maxcut_bnb(g, cfg.bnb_node_limit)


def _maxcut_exhaustive(g: EmbeddedGraph, chunk: int = 1 << 16) -> tuple[int, Coloring]:
    n = g.n
    eu = np.array([u for u, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v in g.edges], dtype=np.int64)
    total = 1 << (n - 1)
    best, best_x = -1, 0
    shifts = np.array([n - 1 - v for v in range(n)], dtype=np.int64)  # vertex 0 is bit n-1 (always 0)
    for start in range(0, total, chunk):
        xs = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = (xs[:, None] >> shifts[None, :]) & 1
        cut = (bits[:, eu] != bits[:, ev]).sum(axis=1)
        i = int(np.argmax(cut))
        if cut[i] > best:
            best, best_x = int(cut[i]), int(xs[i])
    c = {v: (W if (best_x >> (n - 1 - v)) & 1 else B) for v in range(n)}
    return best, c


def _maxcut_bnb(g: EmbeddedGraph, node_limit: int) -> tuple[int, Coloring]:
    n = g.n
    later: list[list[int]] = [[] for _ in range(n)]  # neighbours with smaller id, per edge
    for u, v in g.edges:
        if u == v:
            continue
        a, b = min(u, v), max(u, v)
        later[b].append(a)
    remaining_after = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        remaining_after[v] = remaining_after[v + 1] + len(later[v])
    side = [0] * n
    best = [-1, None]
    nodes = 0

    def dfs(v: int, cut: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise BudgetExceeded("max-cut branch-and-bound node limit reached")
        if v == n:
            if cut > best[0]:
                best[0], best[1] = cut, side.copy()
            return
        if cut + remaining_after[v] <= best[0]:
            return
        for s in ((0,) if v == 0 else (0, 1)):
            side[v] = s
            dfs(v + 1, cut + sum(1 for a in later[v] if side[a] != s))

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 1000))
    dfs(0, 0)
    return best[0], {v: (W if best[1][v] else B) for v in range(n)}

