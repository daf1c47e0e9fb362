"""Quasi-Eulerian plane triangulations relative to a root face."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from ppquad.colorings import B, Coloring, mono_count_batches, mono_faces, other
from ppquad.construct import extend_weak
from ppquad.errors import DomainError, PreconditionError, TheoremViolation
from ppquad.factors import factor_to_coloring, perfect_matchings
from ppquad.surface import SPHERE, EmbeddedGraph, relabel
from ppquad.triops import (
    BLUE,
    RED,
    PastingSpec,
    dual,
    face_2coloring,
    is_eulerian,
    is_triangulation,
    paste,
    separating_3cycles,
    subsurface,
)


@dataclass(frozen=True)
class Attachment:
    """A plane triangulation pasted onto one skeleton face."""

    face: int                  # skeleton face id
    color: str | None          # R/B when the skeleton is Eulerian
    graph: EmbeddedGraph       # the attached piece, cap face included
    vmap: tuple[int, ...]      # piece vertex -> parent vertex
    root: int                  # cap face of the piece
    child: "QEDecomposition | None" = None  # decomposed when pasted on a blue face


@dataclass(frozen=True)
class QEDecomposition:
    """Skeleton of ``graph`` around ``root`` plus the pieces cut off by maximal separating triangles."""

    graph: EmbeddedGraph
    root: int
    skeleton: EmbeddedGraph
    skeleton_vmap: tuple[int, ...]   # skeleton vertex -> graph vertex
    skeleton_root: int
    face_colors: Mapping[int, str] | None
    attachments: tuple[Attachment, ...]

    @property
    def eulerian(self) -> bool:
        return self.face_colors is not None

    @property
    def red_attachments(self) -> tuple[Attachment, ...]:
        return tuple(a for a in self.attachments if a.color == RED)

    @property
    def blue_attachments(self) -> tuple[Attachment, ...]:
        return tuple(a for a in self.attachments if a.color == BLUE)

    @property
    def quasi_eulerian(self) -> bool:
        return self.eulerian and all(a.child.quasi_eulerian for a in self.blue_attachments)

    def attachment_on(self, face: int) -> Attachment | None:
        return next((a for a in self.attachments if a.face == face), None)

    def depth(self) -> int:
        return 1 + max((a.child.depth() for a in self.blue_attachments), default=0)

    def to_dict(self) -> dict[str, Any]:
        def tri(g: EmbeddedGraph, face: int, vmap) -> list[int]:
            return sorted(vmap[v] for v in g.faces[face].vertices)

        sv = self.skeleton_vmap
        return {
            "kind": "skeleton",
            "root": tri(self.graph, self.root, range(self.graph.n)),
            "vertices": sorted(sv),
            "eulerian": self.eulerian,
            "quasi_eulerian": self.quasi_eulerian,
            "red": [{"face": tri(self.skeleton, a.face, sv), "size": a.graph.n}
                    for a in self.red_attachments],
            "blue": [{"face": tri(self.skeleton, a.face, sv), "child": a.child.to_dict()}
                     for a in self.blue_attachments],
            "uncolored": [{"face": tri(self.skeleton, a.face, sv), "size": a.graph.n}
                          for a in self.attachments if a.color is None],
        }


def _check_plane(t: EmbeddedGraph, f: int) -> None:
    if t.surface != SPHERE:
        raise PreconditionError("quasi-Eulerian triangulations are plane")
    if not t.is_simple() or not is_triangulation(t):
        raise PreconditionError("expects a simple plane triangulation")
    if not 0 <= f < len(t.faces):
        raise PreconditionError(f"no face {f}")


def decompose(t: EmbeddedGraph, f: int) -> QEDecomposition:
    """Cut along the maximal separating triangles away from ``f``; recurse on blue faces."""
    _check_plane(t, f)
    far_sides = []
    for sides in separating_3cycles(t):
        far = sides.outer if f in sides.inner.faces else sides.inner
        far_sides.append((sides.cycle.edges, far.faces))
    maximal = [(c, fs) for c, fs in far_sides if not any(fs < other_fs for _, other_fs in far_sides)]
    maximal.sort(key=lambda x: sorted(x[0]))
    cut_off = frozenset().union(*[fs for _, fs in maximal]) if maximal else frozenset()
    keep = [x for x in range(len(t.faces)) if x not in cut_off]
    s, svmap, _, caps = subsurface(t, keep, [list(c) for c, _ in maximal], SPHERE)
    back = {old: new for new, old in enumerate(svmap)}
    root_key = frozenset(back[v] for v in t.faces[f].vertices)
    sroot = next(x.face_id for x in s.faces
                 if x.face_id not in caps and frozenset(x.vertices) == root_key)
    colors = face_2coloring(s, sroot) if is_eulerian(s) else None
    atts = []
    for (cyc, fs), cap in zip(maximal, caps):
        a, avmap, _, acap = subsurface(t, fs, [list(cyc)], SPHERE)
        color = colors[cap] if colors else None
        child = decompose(a, acap[0]) if color == BLUE else None
        atts.append(Attachment(cap, color, a, tuple(avmap), acap[0], child))
    return QEDecomposition(t, f, s, tuple(svmap), sroot, colors, tuple(atts))


def is_quasi_eulerian(t: EmbeddedGraph, f: int) -> QEDecomposition | None:
    d = decompose(t, f)
    return d if d.quasi_eulerian else None


def qe_oracle(t: EmbeddedGraph, f: int) -> bool:
    """No extension of a monochromatic ``f`` has exactly one monochromatic face."""
    _check_plane(t, f)
    fixed = {v: B for v in t.faces[f].vertices}
    for _, mono in mono_count_batches(t, fixed):
        if np.any(mono == 1):
            return False
    return True


def replay(d: QEDecomposition) -> EmbeddedGraph:
    """Re-paste every attachment onto the skeleton, relabelled to ``d.graph``'s vertex ids."""
    g = d.skeleton
    labels = list(d.skeleton_vmap)  # current vertex -> d.graph vertex
    for a in d.attachments:
        piece = replay(a.child) if a.child is not None else a.graph  # in a.graph's ids
        cap = a.graph.faces[a.root].vertices
        corr = {v: labels.index(a.vmap[v]) for v in cap}
        spec = PastingSpec(g, _face_with_vertices(g, corr.values()), piece,
                           _face_with_vertices(piece, cap), corr)
        g = paste(spec)
        labels += [a.vmap[v] for v in range(piece.n) if v not in corr]
    return relabel(g, labels)


def _face_with_vertices(g: EmbeddedGraph, key) -> int:
    key = frozenset(key)
    return next(x.face_id for x in g.faces if frozenset(x.vertices) == key)


def same_faces(g: EmbeddedGraph, h: EmbeddedGraph) -> bool:
    def fs(x: EmbeddedGraph):
        return sorted(tuple(sorted(f.vertices)) for f in x.faces)

    return g.n == h.n and g.m == h.m and fs(g) == fs(h)


def verify_decomposition(d: QEDecomposition) -> bool:
    """Structural invariants plus replay against the decomposed graph."""
    if separating_3cycles(d.skeleton):
        return False
    if d.eulerian:
        if d.face_colors[d.skeleton_root] != RED or not is_eulerian(d.skeleton):
            return False
        for a in d.blue_attachments:
            if not verify_decomposition(a.child):
                return False
    return same_faces(replay(d), d.graph)


# -- colorings with prescribed monochromatic faces ---------------------------


def two_mono_coloring(e: EmbeddedGraph, r: int, b: int) -> Coloring:
    """Coloring of an Eulerian plane triangulation without separating triangles with mono faces exactly {r, b}."""
    if not is_eulerian(e) or separating_3cycles(e):
        raise PreconditionError("needs an Eulerian triangulation with no separating triangle")
    colors = face_2coloring(e, r)
    if colors[b] != BLUE:
        raise PreconditionError("r and b must have different face colors")
    d = dual(e)
    inc = d.incident()
    removed = {r, b} | {w for _, w in inc[r]} | {w for _, w in inc[b]}
    m = next(perfect_matchings(d, 1, removed=removed), None)
    if m is None:
        raise TheoremViolation("no perfect matching avoiding both closed neighbourhoods")
    factor = set(m) | {x for x, _ in inc[r]} | {x for x, _ in inc[b]}
    c = factor_to_coloring(e, factor)
    if sorted(mono_faces(e, c)) != sorted({r, b}):
        raise TheoremViolation("two-mono coloring has the wrong mono faces")
    return c


def _recolor_root(c: Coloring, g: EmbeddedGraph, f: int, x: str) -> Coloring:
    v = g.faces[f].vertices[0]
    return c if c[v] == x else {k: other(col) for k, col in c.items()}


def _fill(d: QEDecomposition, c_skel: Coloring, special: Mapping[int, Coloring]) -> Coloring:
    """Lift a skeleton coloring to ``d.graph``; ``special`` gives colorings of chosen attachments."""
    out = {d.skeleton_vmap[v]: col for v, col in c_skel.items()}
    for a in d.attachments:
        if a.face in special:
            piece = special[a.face]
        else:
            cap = {v: out[a.vmap[v]] for v in a.graph.faces[a.root].vertices}
            piece = extend_weak(a.graph, a.root, cap)
        for v, col in piece.items():
            w = a.vmap[v]
            if w in out and out[w] != col:
                raise TheoremViolation("attachment coloring disagrees on the cap")
            out[w] = col
    return out


def _mono_root_color(t: EmbeddedGraph, f: int, c_f: Mapping[int, str] | str) -> str:
    if isinstance(c_f, str):
        return c_f
    cols = {c_f[v] for v in t.faces[f].vertices}
    if len(cols) != 1:
        raise PreconditionError("root face coloring is not monochromatic")
    return cols.pop()


def extend_mono_to_near_weak(t: EmbeddedGraph, f: int, c_f: Mapping[int, str] | str = B,
                             d: QEDecomposition | None = None) -> Coloring:
    """Extend a monochromatic ``f`` so that ``f`` is the only monochromatic face."""
    x = _mono_root_color(t, f, c_f)
    d = d or decompose(t, f)
    if d.quasi_eulerian:
        raise DomainError("triangulation is quasi-Eulerian w.r.t. the root face")
    s, sr = d.skeleton, d.skeleton_root
    if not d.eulerian:
        dd = dual(s)
        nbrs = [w for _, w in dd.incident()[sr]]
        if len(set(nbrs)) != 3:
            raise TheoremViolation("root face has a repeated dual neighbour")
        u, v, w = nbrs
        m = next(perfect_matchings(dd, 1, removed={u, v}), None)
        if m is None:
            raise TheoremViolation("dual of a non-Eulerian skeleton is not bicritical")
        star = {e for e, _ in dd.incident()[sr]}
        factor = (set(m) - star) | star
        c_s = _recolor_root(factor_to_coloring(s, factor), s, sr, x)
        c = _fill(d, c_s, {})
    else:
        bad = next(a for a in d.blue_attachments if not a.child.quasi_eulerian)
        c_s = _recolor_root(two_mono_coloring(s, sr, bad.face), s, sr, x)
        y = c_s[s.faces[bad.face].vertices[0]]
        inner = extend_mono_to_near_weak(bad.graph, bad.root, y, bad.child)
        c = _fill(d, c_s, {bad.face: inner})
    if mono_faces(t, c) != [f]:
        raise TheoremViolation(f"near-weak extension has mono faces {mono_faces(t, c)}")
    return c


def extend_mono_to_two_mono(t: EmbeddedGraph, f: int, c_f: Mapping[int, str] | str = B,
                            d: QEDecomposition | None = None) -> Coloring:
    """Extend a monochromatic ``f`` so that exactly two faces, ``f`` among them, are monochromatic."""
    x = _mono_root_color(t, f, c_f)
    d = d or decompose(t, f)
    if not d.quasi_eulerian:
        raise DomainError("triangulation is not quasi-Eulerian w.r.t. the root face")
    s, sr = d.skeleton, d.skeleton_root
    occupied = {a.face for a in d.attachments}
    blue = sorted(k for k, col in d.face_colors.items() if col == BLUE)
    free = [k for k in blue if k not in occupied]
    if free:
        c_s = _recolor_root(two_mono_coloring(s, sr, free[0]), s, sr, x)
        c = _fill(d, c_s, {})
    else:
        a = d.blue_attachments[0]
        c_s = _recolor_root(two_mono_coloring(s, sr, a.face), s, sr, x)
        y = c_s[s.faces[a.face].vertices[0]]
        inner = extend_mono_to_two_mono(a.graph, a.root, y, a.child)
        c = _fill(d, c_s, {a.face: inner})
    mono = mono_faces(t, c)
    if len(mono) != 2 or f not in mono:
        raise TheoremViolation(f"two-mono extension has mono faces {mono}")
    return c

