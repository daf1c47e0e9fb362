"""Vertex 2-colorings with colors ``B``/``W`` and their monochromatic faces."""

from __future__ import annotations

import sys
from typing import Iterable, Iterator, Mapping

import numpy as np

from ppquad.config import budgets
from ppquad.errors import BudgetExceeded
from ppquad.surface import EmbeddedGraph

B, W = "B", "W"
Coloring = dict  # vertex -> "B" | "W"


def other(color: str) -> str:
    return W if color == B else B


def swap(c: Mapping[int, str]) -> Coloring:
    return {v: other(x) for v, x in c.items()}


def mono_faces(g: EmbeddedGraph, c: Mapping[int, str]) -> list[int]:
    return [f.face_id for f in g.faces if len({c[v] for v in f.vertices}) == 1]


def mono_edges(g: EmbeddedGraph, c: Mapping[int, str]) -> frozenset[int]:
    return frozenset(e for e, (u, v) in enumerate(g.edges) if c[u] == c[v])


def is_weak(g: EmbeddedGraph, c: Mapping[int, str]) -> bool:
    return not mono_faces(g, c)


def is_near_weak(g: EmbeddedGraph, c: Mapping[int, str]) -> bool:
    return len(mono_faces(g, c)) == 1


def to_string(c: Mapping[int, str], n: int) -> str:
    return "".join(c[v] for v in range(n))


def from_string(s: str) -> Coloring:
    return {v: x for v, x in enumerate(s.strip())}


def complete_coloring(
    g: EmbeddedGraph,
    fixed: Mapping[int, str],
    faces: Iterable[int] | None = None,
    max_mono: int = 0,
) -> Coloring | None:
    """Extend ``fixed`` to all vertices with at most ``max_mono`` mono faces.

    Only the listed faces are constrained (all faces by default).  Search is a
    DFS over free vertices that prunes as soon as the mono budget is exceeded.
    """
    face_ids = list(range(len(g.faces))) if faces is None else sorted(set(faces))
    fv = [tuple(set(g.faces[f].vertices)) for f in face_ids]
    touching: dict[int, list[int]] = {}
    for i, vs in enumerate(fv):
        for v in vs:
            touching.setdefault(v, []).append(i)
    color: dict[int, str] = dict(fixed)
    free = [v for v in range(g.n) if v not in color and v in touching]
    for v in range(g.n):
        if v not in color and v not in touching:
            color[v] = B

    base_mono = sum(1 for vs in fv if all(v in color for v in vs) and len({color[v] for v in vs}) == 1)
    if base_mono > max_mono:
        return None

    # most-connected-first order keeps the propagation tight
    order: list[int] = []
    placed = set(color)
    remaining = set(free)
    while remaining:
        v = max(sorted(remaining), key=lambda x: sum(1 for i in touching[x] for y in fv[i] if y in placed))
        order.append(v)
        placed.add(v)
        remaining.remove(v)

    def mono_delta(v: int) -> int:
        k = 0
        for i in touching[v]:
            vs = fv[i]
            if all(x in color for x in vs) and len({color[x] for x in vs}) == 1:
                k += 1
        return k

    def dfs(idx: int, mono: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        for x in (B, W):
            color[v] = x
            k = mono_delta(v)
            if mono + k <= max_mono and dfs(idx + 1, mono + k):
                return True
            del color[v]
        return False

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * len(order) + 1000))
    if dfs(0, base_mono):
        return {v: color[v] for v in range(g.n)}
    return None


# -- exhaustive enumeration ---------------------------------------------------


def mono_count_batches(
    g: EmbeddedGraph,
    fixed: Mapping[int, str] | None = None,
    chunk: int = 1 << 15,
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (colorings, mono-face counts) over every 2-coloring agreeing with ``fixed``.

    Colorings are 0/1 arrays (0 = B).  Without ``fixed`` vertex 0 is pinned to
    B, which loses nothing because swapping colors preserves mono faces.
    """
    fixed = dict(fixed) if fixed else {0: B}
    free = [v for v in range(g.n) if v not in fixed]
    total = 1 << len(free)
    if total > budgets().coloring_cap:
        raise BudgetExceeded(f"2^{len(free)} colorings exceed the exhaustion cap")
    face_vs = [list(f.vertices) for f in g.faces]
    for start in range(0, total, chunk):
        xs = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = np.zeros((len(xs), g.n), dtype=np.int8)
        for v, col in fixed.items():
            bits[:, v] = 0 if col == B else 1
        for j, v in enumerate(free):
            bits[:, v] = (xs >> (len(free) - 1 - j)) & 1
        mono = np.zeros(len(xs), dtype=np.int64)
        for vs in face_vs:
            col = bits[:, vs]
            mono += (col.min(axis=1) == col.max(axis=1))
        yield bits, mono


def bits_to_coloring(bits: np.ndarray) -> Coloring:
    return {v: (B if b == 0 else W) for v, b in enumerate(bits.tolist())}


def find_by_mono_count(g: EmbeddedGraph, count: int, fixed: Mapping[int, str] | None = None) -> Coloring | None:
    for bits, mono in mono_count_batches(g, fixed):
        hit = np.flatnonzero(mono == count)
        if hit.size:
            return bits_to_coloring(bits[hit[0]])
    return None


def mono_count_histogram(g: EmbeddedGraph, fixed: Mapping[int, str] | None = None) -> dict[int, int]:
    hist: dict[int, int] = {}
    for _, mono in mono_count_batches(g, fixed):
        vals, cnt = np.unique(mono, return_counts=True)
        for a, b in zip(vals.tolist(), cnt.tolist()):
            hist[a] = hist.get(a, 0) + b
    return hist
