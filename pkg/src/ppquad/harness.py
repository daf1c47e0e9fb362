"""Brute-force oracles, instance corpus and cross-validation sweeps."""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping

from ppquad import library, pem
from ppquad.canon import canonical_code, canonical_key, enumerate_pp_triangulations
from ppquad.colorings import mono_count_histogram
from ppquad.decider import HAS_SBQ, NO_SBQ, bipartite_subgraph_bound, decide_sbq
from ppquad.errors import DomainError, PPQuadError, PreconditionError, StructuralError
from ppquad.factors import (
    _maxcut_exhaustive,
    parity_bipartite,
    perfect_matchings,
    quadrangulation_from,
)
from ppquad.quasi import is_quasi_eulerian, qe_oracle
from ppquad.reducer import apply, applicable_specs, complement_bipartite, degree_excess, find_reducible, lift_matching
from ppquad.surface import PROJECTIVE_PLANE, SPHERE, EmbeddedGraph, from_triangles, is_contractible, validate
from ppquad.triops import PastingSpec, dual, is_eulerian, paste

log = logging.getLogger(__name__)


class CrossValidationError(PPQuadError):
    """A sweep disagreed with an oracle; carries the offending instance."""

    def __init__(self, message: str, instance: "Instance | None" = None):
        detail = message
        if instance is not None:
            detail += f"\n# offending instance {instance.name}\n" + pem.dumps(instance.graph)
        super().__init__(detail)
        self.instance = instance


# -- oracles -----------------------------------------------------------------


def weak_oracle(g: EmbeddedGraph) -> bool:
    """Some 2-coloring has no monochromatic face (exhaustive)."""
    return mono_count_histogram(g).get(0, 0) > 0


def sbq_oracle(g: EmbeddedGraph) -> bool:
    """Some perfect matching M of the dual leaves T - M bipartite (BFS, no parity shortcut)."""
    return any(complement_bipartite(g, m) for m in perfect_matchings(dual(g)))


def maxcut_oracle(g: EmbeddedGraph) -> int:
    return _maxcut_exhaustive(g)[0]


# -- pasting families --------------------------------------------------------

GUESTS: dict[str, Callable[[], EmbeddedGraph] | None] = {
    "empty": None,
    "k4": library.k4,
    "octahedron": library.octahedron,
    "icosahedron": library.icosahedron,
    "stacked_k4": library.stacked_k4,
}


def guest_graph(guest: str | EmbeddedGraph | None) -> EmbeddedGraph | None:
    if guest is None or isinstance(guest, EmbeddedGraph):
        return guest
    if guest not in GUESTS:
        raise PreconditionError(f"unknown guest {guest!r}; choose from {sorted(GUESTS)}")
    make = GUESTS[guest]
    return make() if make else None


def paste_family(
    assignments: Mapping[int, str | EmbeddedGraph | None],
    base: EmbeddedGraph | None = None,
    base_faces: Iterable[Iterable[int]] = library.K6_FACES,
) -> EmbeddedGraph:
    """Paste guests into faces of ``base`` (K6 by default); faces are numbered from 1."""
    g = base if base is not None else library.k6()
    faces = [tuple(f) for f in base_faces]
    for i in sorted(assignments):
        if not 1 <= i <= len(faces):
            raise PreconditionError(f"face index {i} out of range 1..{len(faces)}")
        guest = guest_graph(assignments[i])
        if guest is None:
            continue
        if guest.surface != SPHERE or any(f.length != 3 for f in guest.faces):
            raise DomainError("guests must be plane triangulations")
        g = paste(PastingSpec(g, g.face_by_vertices(faces[i - 1]), guest, 0))
    return g


def k6_pastings(guests: Iterable[str], count: int, seed_faces: int = 10) -> list[tuple[str, EmbeddedGraph]]:
    """Deterministic family of pairwise non-isomorphic guest assignments to K6 faces."""
    guests = list(guests)
    out = []
    seen = set()
    for r in range(1, seed_faces + 1):
        for subset in itertools.combinations(range(1, seed_faces + 1), r):
            for choice in itertools.product(guests, repeat=r):
                g = paste_family(dict(zip(subset, choice)))
                key = canonical_key(g)
                if key in seen:
                    continue
                seen.add(key)
                out.append(("k6+" + ",".join(f"{f}:{gname}" for f, gname in zip(subset, choice)), g))
                if len(out) >= count:
                    return out
    return out


# -- the graphs Z and Z' -----------------------------------------------------


def _arcs(faces: list[tuple[int, ...]], a: int, cut: set[int]) -> list[set[int]]:
    """Split the faces at vertex ``a`` into arcs separated by the edges a-x, x in cut."""
    at = [i for i, f in enumerate(faces) if a in f]
    parent = {i: i for i in at}

    def find(i: int) -> int:
        while parent[i] != i:
            i = parent[i]
        return i

    for i, j in itertools.combinations(at, 2):
        shared = (set(faces[i]) & set(faces[j])) - {a}
        if len(shared) == 1 and not shared & cut:
            parent[find(i)] = find(j)
    groups: dict[int, set[int]] = {}
    for i in at:
        groups.setdefault(find(i), set()).add(i)
    return list(groups.values())


def z_graphs() -> list[EmbeddedGraph]:
    """Every {5,5}-splitting of K6 along a noncontractible triangle with v3 = v6.

    Labels: u = 6, v = 7, v5 = 8 (copy of v1), v4 = 9 (copy of v2).
    """
    base = library.k6()
    k6_faces = [tuple(f) for f in library.K6_FACES]
    face_sets = {frozenset(f) for f in k6_faces}
    found: dict[tuple, EmbeddedGraph] = {}
    for tri in itertools.combinations(range(6), 3):
        if frozenset(tri) in face_sets:
            continue
        es = [base.edges_between(a, b)[0] for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0]))]
        if is_contractible(base, es):
            continue
        for x in tri:
            for a, b in itertools.permutations([y for y in tri if y != x]):
                arcs_a = _arcs(k6_faces, a, {b, x})
                arcs_b = _arcs(k6_faces, b, {a, x})
                if len(arcs_a) != 2 or len(arcs_b) != 2:
                    continue
                for ra, rb in itertools.product(arcs_a, arcs_b):
                    faces = []
                    for i, f in enumerate(k6_faces):
                        ren = {a: 8} if i in ra else {}
                        if i in rb:
                            ren[b] = 9
                        faces.append(tuple(ren.get(y, y) for y in f))
                    u, v, v1, v2, v3, v4, v5 = 6, 7, a, b, x, 9, 8
                    faces += [(v, u, v1), (v, v1, v2), (v, v2, v3), (v, v3, v4), (v, v4, u),
                              (u, v4, v5), (u, v5, v3), (u, v3, v1)]
                    try:
                        g = from_triangles(faces, PROJECTIVE_PLANE, 10)
                    except (StructuralError, PPQuadError):
                        continue
                    if not validate(g).valid or not g.is_simple():
                        continue
                    found.setdefault(canonical_code(g), g)
    return [found[k] for k in sorted(found)]


# -- corpus ------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    name: str
    graph: EmbeddedGraph
    source: str
    key: str


@dataclass
class Corpus:
    instances: dict[str, Instance] = field(default_factory=dict)

    def add(self, name: str, g: EmbeddedGraph, source: str) -> Instance | None:
        rep = validate(g)
        if not rep.valid:
            raise CrossValidationError(f"instance {name} fails validation: {rep.problems}",
                                       Instance(name, g, source, "invalid"))
        key = canonical_key(g)
        if key in self.instances:
            return None
        inst = Instance(name, g, source, key)
        self.instances[key] = inst
        return inst

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances[k] for k in sorted(self.instances))

    def save(self, directory: str | Path) -> list[Path]:
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        paths = []
        for inst in self:
            p = d / f"{inst.key}.pem"
            pem.write(inst.graph, p)
            paths.append(p)
        return paths


def builtin_corpus(max_pastings: int = 24) -> Corpus:
    c = Corpus()
    for name in ("k6", "octahedron", "k4", "stacked_k4", "icosahedron"):
        c.add(name, library.BUILTINS[name](), "builtin")
    for i, g in enumerate(z_graphs()):
        c.add(f"z{i}", g, "builtin")
    for name, g in k6_pastings(["octahedron", "k4"], max_pastings):
        c.add(name, g, "pasted")
    for name, g in plane_pastings():
        c.add(name, g, "pasted")
    return c


def plane_pastings() -> list[tuple[str, EmbeddedGraph]]:
    """Plane triangulations with n <= 9 built by pasting octahedra and K4 into the octahedron."""
    out = []
    oct_ = library.octahedron()
    for guest in ("k4", "octahedron"):
        for face in (0, 4):  # one face of each colour class
            g = paste(PastingSpec(oct_, face, guest_graph(guest), 0))
            out.append((f"oct+{face}:{guest}", g))
    two = paste(PastingSpec(oct_, 0, library.k4(), 0))
    two = paste(PastingSpec(two, two.face_by_vertices(library.OCTAHEDRON_FACES[5]), library.k4(), 0))
    out.append(("oct+0:k4+5:k4", two))
    return out


def generated_corpus(max_n: int, order: str = "star") -> Corpus:
    c = Corpus()
    for g in enumerate_pp_triangulations(max_n, order):
        c.add(canonical_key(g), g, f"enumerate:{order}")
    return c


def load_corpus(directory: str | Path) -> Corpus:
    c = Corpus()
    for p in sorted(Path(directory).glob("*.pem")):
        c.add(p.stem, pem.read(p), str(p))
    return c


# -- cross-validation --------------------------------------------------------


@dataclass(frozen=True)
class InstanceResult:
    key: str
    name: str
    surface: str
    n: int
    verdict: str
    oracle: str
    weak: bool | None
    maxcut: int | None
    bound: int | None
    bound_ok: bool
    parity_ok: bool
    lifting_ok: bool
    monotri_ok: bool
    existence_ok: bool
    qe_ok: bool
    checks: Mapping[str, int]
    failures: tuple[str, ...]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        return (f"{self.key} {self.verdict} {self.oracle} {self.maxcut if self.maxcut is not None else '-'} "
                f"{int(self.bound_ok)} {int(self.parity_ok)}")


@dataclass(frozen=True)
class Report:
    results: tuple[InstanceResult, ...]

    @property
    def failures(self) -> list[InstanceResult]:
        return [r for r in self.results if not r.ok]

    @property
    def agreement(self) -> float:
        return 1.0 if not self.results else sum(r.ok for r in self.results) / len(self.results)

    def totals(self) -> dict[str, int]:
        tot: dict[str, int] = {}
        for r in self.results:
            for k, v in r.checks.items():
                tot[k] = tot.get(k, 0) + v
        return dict(sorted(tot.items()))

    def render(self, timings: bool = False) -> str:
        lines = ["# key verdict oracle maxcut bound_ok parity_ok"]
        lines += [r.line() for r in self.results]
        lines.append("# aggregate")
        lines.append(f"instances {len(self.results)}")
        lines.append(f"failures {len(self.failures)}")
        lines.append(f"agreement {self.agreement:.4f}")
        for k, v in self.totals().items():
            lines.append(f"checks.{k} {v}")
        for r in self.failures:
            lines.append(f"FAIL {r.key} {r.name}: {'; '.join(r.failures)}")
        if timings:
            lines.append("# timings (not part of the comparison section)")
            lines += [f"{r.key} {r.seconds:.3f}s" for r in self.results]
        return "\n".join(lines) + "\n"

    def raise_on_failure(self, corpus: Corpus | None = None) -> None:
        if not self.failures:
            return
        r = self.failures[0]
        inst = corpus.instances.get(r.key) if corpus else None
        raise CrossValidationError(f"{len(self.failures)} instance(s) disagree; first {r.name}: {r.failures}", inst)


def _sweep_matchings(g: EmbeddedGraph, checks: dict[str, int], fails: list[str]) -> bool:
    ok = True
    for m in perfect_matchings(dual(g)):
        quadrangulation_from(g, m)
        checks["parity"] = checks.get("parity", 0) + 1
        if parity_bipartite(g, m) != complement_bipartite(g, m):
            ok = False
            fails.append(f"parity mismatch on M={sorted(m)}")
            break
    return ok


def _sweep_lifting(g: EmbeddedGraph, checks: dict[str, int], fails: list[str]) -> bool:
    for spec in applicable_specs(g):
        c = apply(g, spec)
        rep = validate(c.after)
        if not rep.valid or c.after.surface != g.surface:
            fails.append(f"{spec} produced an invalid graph: {rep.problems}")
            return False
        for mp in perfect_matchings(dual(c.after)):
            m = lift_matching(c, mp)
            quadrangulation_from(g, m)
            checks["lifting"] = checks.get("lifting", 0) + 1
            if complement_bipartite(g, m) != complement_bipartite(c.after, mp):
                fails.append(f"{spec} lift changes bipartiteness for M'={sorted(mp)}")
                return False
    return True


def _sweep_monotri(g: EmbeddedGraph, checks: dict[str, int], fails: list[str]) -> bool:
    if not is_eulerian(g):
        return True
    hist = mono_count_histogram(g)
    checks["monotri"] = checks.get("monotri", 0) + sum(hist.values())
    odd = [k for k in hist if k % 2]
    if odd:
        fails.append(f"Eulerian instance has colorings with {odd} mono faces")
        return False
    return True


def _sweep_existence(g: EmbeddedGraph, checks: dict[str, int], fails: list[str]) -> bool:
    want = 6 if g.surface == PROJECTIVE_PLANE else 12
    checks["existence"] = checks.get("existence", 0) + 1
    if degree_excess(g) != want:
        fails.append(f"degree excess {degree_excess(g)} != {want}")
        return False
    if g.surface == PROJECTIVE_PLANE:
        find_reducible(g)
    return True


def _sweep_qe(g: EmbeddedGraph, checks: dict[str, int], fails: list[str]) -> bool:
    if g.surface != SPHERE:
        return True
    for f in range(len(g.faces)):
        checks["qe"] = checks.get("qe", 0) + 1
        if (is_quasi_eulerian(g, f) is not None) != qe_oracle(g, f):
            fails.append(f"QE recognizer disagrees with the oracle at face {f}")
            return False
    return True


def check_instance(inst: Instance, lifting: bool = True) -> InstanceResult:
    t0 = time.perf_counter()
    g = inst.graph
    checks: dict[str, int] = {}
    fails: list[str] = []
    verdict = oracle = "-"
    weak = maxcut = bound = None
    bound_ok = True
    try:
        if g.surface == PROJECTIVE_PLANE:
            cert = decide_sbq(g)
            verdict = cert.verdict
            sbq = sbq_oracle(g)
            weak = weak_oracle(g)
            oracle = HAS_SBQ if sbq else NO_SBQ
            checks["verdict"] = 1
            if verdict != oracle:
                fails.append(f"decide_sbq={verdict} but sbq_oracle={oracle}")
            if weak != sbq:
                fails.append(f"weak_oracle={weak} but sbq_oracle={sbq}")
            maxcut = maxcut_oracle(g)
            bound, _ = bipartite_subgraph_bound(g, cert)
            two_thirds = 2 * g.m // 3
            bound_ok = (bound == maxcut and maxcut >= two_thirds - 1
                        and (maxcut == two_thirds) == (verdict == HAS_SBQ))
            checks["bound"] = 1
            if not bound_ok:
                fails.append(f"bound check failed: maxcut={maxcut} bound={bound} 2|E|/3={two_thirds}")
        parity_ok = _sweep_matchings(g, checks, fails)
        lifting_ok = _sweep_lifting(g, checks, fails) if lifting else True
        monotri_ok = _sweep_monotri(g, checks, fails)
        existence_ok = _sweep_existence(g, checks, fails)
        qe_ok = _sweep_qe(g, checks, fails)
    except PPQuadError as exc:
        fails.append(f"{type(exc).__name__}: {exc}")
        parity_ok = lifting_ok = monotri_ok = existence_ok = qe_ok = False
    return InstanceResult(
        inst.key, inst.name, g.surface, g.n, verdict, oracle, weak, maxcut, bound, bound_ok, parity_ok,
        lifting_ok, monotri_ok, existence_ok, qe_ok, dict(sorted(checks.items())), tuple(fails),
        time.perf_counter() - t0,
    )


def cross_validate(corpus: Corpus, workers: int = 1, lifting: bool = True) -> Report:
    """Run every sweep on every instance; results are ordered by canonical key."""
    insts = list(corpus)
    if workers > 1 and len(insts) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check_instance, insts, [lifting] * len(insts)))
    else:
        results = [check_instance(i, lifting) for i in insts]
    return Report(tuple(sorted(results, key=lambda r: r.key)))
