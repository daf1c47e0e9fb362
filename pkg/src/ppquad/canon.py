"""Canonical forms of signed rotation systems and enumeration of small triangulations."""

from __future__ import annotations

import hashlib
from typing import Iterator

from ppquad.config import budgets
from ppquad.errors import BudgetExceeded, TheoremViolation
from ppquad.surface import PROJECTIVE_PLANE, SPHERE, EmbeddedGraph, from_triangles, require_valid

Code = tuple[int, ...]


# -- canonical form ----------------------------------------------------------


def _code_from(g: EmbeddedGraph, v0: int, i0: int, dir0: int) -> Code:
    """Breadth-first code from one flag; invariant under relabeling and sign switching."""
    label = {v0: 0}
    start = {v0: i0}
    direc = {v0: dir0}
    order = [v0]
    pos = g.position
    code: list[int] = []
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        rot = g.rotation[x]
        d = len(rot)
        code.append(d)
        for j in range(d):
            dart = rot[(start[x] + direc[x] * j) % d]
            mate = dart.mate()
            y = g.head(dart)
            s = direc[x] * g.signs[dart.edge]
            if y not in label:
                label[y] = len(order)
                order.append(y)
                start[y] = pos[mate].index
                direc[y] = s
            dy = len(g.rotation[y])
            code += (label[y], ((pos[mate].index - start[y]) * direc[y]) % dy, s * direc[y])
    if len(order) != g.n:
        raise TheoremViolation("canonical code needs a connected graph")
    return tuple(code)


def canonical_code(g: EmbeddedGraph) -> Code:
    """Least code over all starting darts and both local orientations."""
    best = None
    for v in range(g.n):
        for i in range(g.degree(v)):
            for s in (1, -1):
                c = _code_from(g, v, i, s)
                if best is None or c < best:
                    best = c
    return (g.n, g.m, 0 if g.surface == SPHERE else 1) + (best or ())


def canonical_key(g: EmbeddedGraph) -> str:
    digest = hashlib.sha1(repr(canonical_code(g)).encode()).hexdigest()[:12]
    return f"{g.surface}-n{g.n}-{digest}"


def isomorphic(g: EmbeddedGraph, h: EmbeddedGraph) -> bool:
    return canonical_code(g) == canonical_code(h)


# -- enumeration -------------------------------------------------------------


class _Search:
    """Closes open edges one triangle at a time; links must stay paths or one cycle."""

    def __init__(self, n: int, max_degree: int):
        self.n = n
        self.max_degree = max_degree
        self.faces_target = 2 * n - 2
        self.link: list[dict[int, set[int]]] = [dict() for _ in range(n)]
        self.closed = [False] * n
        self.tris: list[tuple[int, int, int]] = []
        self.used = 0

    def _can_add(self, a: int, b: int, c: int) -> bool:
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            if self.closed[p]:
                return False
            lk = self.link[p]
            if r in lk.get(q, ()):
                return False
            if len(lk.get(q, ())) >= 2 or len(lk.get(r, ())) >= 2:
                return False
            if len(set(lk) | {q, r}) > self.max_degree:
                return False
        return True

    def _closes_cycle(self, p: int, q: int, r: int) -> bool:
        """Does edge qr close a cycle in link(p)? Walk the path from q."""
        lk = self.link[p]
        if q not in lk or r not in lk:
            return False
        prev, cur = None, q
        while True:
            nxt = [w for w in lk[cur] if w != prev]
            if not nxt:
                return False
            prev, cur = cur, nxt[0]
            if cur == r:
                return True

    def add(self, a: int, b: int, c: int) -> list[int] | None:
        """Add a triangle; returns the vertices it closed, or None if a link would break."""
        closing = []
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            if self._closes_cycle(p, q, r):
                # the closed cycle must be the whole link
                lk = self.link[p]
                if any(len(lk[w]) != 2 for w in lk if w not in (q, r)) or len(lk[q]) != 1 or len(lk[r]) != 1:
                    return None
                closing.append(p)
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            lk = self.link[p]
            lk.setdefault(q, set()).add(r)
            lk.setdefault(r, set()).add(q)
        for p in closing:
            self.closed[p] = True
        self.tris.append((a, b, c))
        self.used = max(self.used, a + 1, b + 1, c + 1)
        return closing

    def remove(self, closing: list[int]) -> None:
        a, b, c = self.tris.pop()
        for p in closing:
            self.closed[p] = False
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            lk = self.link[p]
            lk[q].discard(r)
            lk[r].discard(q)
            if not lk[q]:
                del lk[q]
            if not lk[r]:
                del lk[r]
        self.used = max((max(t) + 1 for t in self.tris), default=0)

    def open_edge(self) -> tuple[int, int] | None:
        for a in range(self.used):
            for b in sorted(self.link[a]):
                if b > a and len(self.link[a][b]) == 1:
                    return a, b
        return None

    def run(self) -> Iterator[list[tuple[int, int, int]]]:
        if len(self.tris) > self.faces_target:
            return
        e = self.open_edge()
        if e is None:
            if self.used == self.n and len(self.tris) == self.faces_target and all(self.closed):
                yield list(self.tris)
            return
        a, b = e
        for w in range(min(self.used + 1, self.n)):
            if w in (a, b) or not self._can_add(a, b, w):
                continue
            closing = self.add(a, b, w)
            if closing is None:
                continue
            yield from self.run()
            self.remove(closing)


def _star_seeded(n: int) -> Iterator[list[tuple[int, int, int]]]:
    """Vertex 0 has maximum degree d and link 1, 2, ..., d."""
    for d in range(3, n):
        s = _Search(n, d)
        ok = True
        for i in range(1, d + 1):
            j = i % d + 1
            if s.add(0, i, j) is None:
                ok = False
        if ok:
            yield from s.run()


def _plain(n: int) -> Iterator[list[tuple[int, int, int]]]:
    s = _Search(n, n - 1)
    s.add(0, 1, 2)
    yield from s.run()


ORDERS = {"star": _star_seeded, "plain": _plain}


def enumerate_pp_triangulations(max_n: int, order: str = "star", min_n: int = 6) -> Iterator[EmbeddedGraph]:
    """All simple triangulations of the projective plane with min_n <= n <= max_n, up to isomorphism.

    Output is sorted by (n, canonical code).
    """
    cap = budgets().max_n
    if max_n > cap:
        raise BudgetExceeded(f"max_n={max_n} exceeds the configured bound {cap}")
    gen = ORDERS[order]
    for n in range(min_n, max_n + 1):
        found: dict[Code, EmbeddedGraph] = {}
        for tris in gen(n):
            g = from_triangles(tris, PROJECTIVE_PLANE, n)
            code = canonical_code(g)
            if code not in found:
                require_valid(g)
                found[code] = g
        for code in sorted(found):
            yield found[code]
