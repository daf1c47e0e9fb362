"""Plain-text ``.pem`` embedding files.

::

    surface pp
    vertices 6
    edge 0 0 1 +
    ...
    rot 0 0.0 3.0 5.0 7.0 9.0

``rot`` lists the darts around a vertex in clockwise order; ``e.k`` is the
``k``-th end of edge ``e``.  The writer emits edges by id and each rotation
starting from its smallest dart, so ``dumps(loads(text)) == text`` for any
file the writer produced.
"""

from __future__ import annotations

from pathlib import Path

from ppquad.errors import StructuralError
from ppquad.surface import PROJECTIVE_PLANE, SPHERE, Dart, EmbeddedGraph

_SURFACES = {"sphere": SPHERE, "pp": PROJECTIVE_PLANE}


def dumps(g: EmbeddedGraph) -> str:
    name = "pp" if g.surface == PROJECTIVE_PLANE else "sphere"
    lines = [f"surface {name}", f"vertices {g.n}"]
    for e, (u, v) in enumerate(g.edges):
        lines.append(f"edge {e} {u} {v} {'+' if g.signs[e] > 0 else '-'}")
    for v, rot in enumerate(g.rotation):
        lines.append(" ".join([f"rot {v}"] + [str(d) for d in rot]))
    return "\n".join(lines) + "\n"


def loads(text: str) -> EmbeddedGraph:
    surface = None
    n = None
    edges: dict[int, tuple[int, int, int]] = {}
    rots: dict[int, list[Dart]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "surface":
                if tok[1] not in _SURFACES:
                    raise StructuralError(f"line {lineno}: unknown surface {tok[1]!r}")
                surface = _SURFACES[tok[1]]
            elif tok[0] == "vertices":
                n = int(tok[1])
            elif tok[0] == "edge":
                e, u, v = int(tok[1]), int(tok[2]), int(tok[3])
                if tok[4] not in "+-" or len(tok) != 5:
                    raise StructuralError(f"line {lineno}: bad edge sign")
                if e in edges:
                    raise StructuralError(f"line {lineno}: duplicate edge id {e}")
                edges[e] = (u, v, 1 if tok[4] == "+" else -1)
            elif tok[0] == "rot":
                v = int(tok[1])
                if v in rots:
                    raise StructuralError(f"line {lineno}: duplicate rotation for vertex {v}")
                darts = []
                for t in tok[2:]:
                    a, b = t.split(".")
                    darts.append(Dart(int(a), int(b)))
                rots[v] = darts
            else:
                raise StructuralError(f"line {lineno}: unknown record {tok[0]!r}")
        except (IndexError, ValueError) as exc:
            raise StructuralError(f"line {lineno}: cannot parse {raw!r}") from exc
    if surface is None or n is None:
        raise StructuralError("missing surface or vertices header")
    if sorted(edges) != list(range(len(edges))):
        raise StructuralError("edge ids must be 0..m-1")
    for e, (u, v, _) in edges.items():
        if not (0 <= u < n and 0 <= v < n):
            raise StructuralError(f"edge {e} uses an undeclared vertex")
    for v in rots:
        if not 0 <= v < n:
            raise StructuralError(f"rotation for undeclared vertex {v}")
    missing = [v for v in range(n) if v not in rots]
    if missing:
        raise StructuralError(f"missing rotations for vertices {missing}")
    seen: set[Dart] = set()
    for v, darts in rots.items():
        for d in darts:
            if d.edge not in edges or d.end not in (0, 1):
                raise StructuralError(f"unknown dart {d} at vertex {v}")
            if d in seen:
                raise StructuralError(f"duplicate dart {d}")
            if edges[d.edge][d.end] != v:
                raise StructuralError(f"dart {d} does not belong to vertex {v}")
            seen.add(d)
    if len(seen) != 2 * len(edges):
        raise StructuralError("some darts are missing from the rotations")
    m = len(edges)
    loops = any(edges[e][0] == edges[e][1] for e in range(m))
    return EmbeddedGraph(
        n,
        tuple((edges[e][0], edges[e][1]) for e in range(m)),
        tuple(tuple(rots[v]) for v in range(n)),
        tuple(edges[e][2] for e in range(m)),
        surface,
        allow_loops=loops,
    )


def read(path: str | Path) -> EmbeddedGraph:
    return loads(Path(path).read_text())


def write(g: EmbeddedGraph, path: str | Path) -> None:
    Path(path).write_text(dumps(g))
