"""Command-line interface: ``ppquad <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ppquad import pem
from ppquad.colorings import mono_faces, to_string
from ppquad.decider import HAS_SBQ, bipartite_subgraph_bound, decide_sbq, near_weak_or_weak
from ppquad.errors import DomainError, PPQuadError, PreconditionError, StructuralError

EXIT_HAS, EXIT_NO, EXIT_INVALID, EXIT_FAIL = 0, 10, 2, 1
KIND_NAMES = {"c4": "C4", "c6": "C6", "c55": "C55", "v2rem": "V2REM", "v2add": "V2ADD"}


def _ints(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    return [int(x) for x in text.replace(" ", ",").split(",") if x]


def _load(path: str):
    return pem.read(path)


def _emit_graph(g, out: str | None) -> None:
    if out:
        pem.write(g, out)
        print(f"wrote {out}")
    else:
        sys.stdout.write(pem.dumps(g))


# -- decider commands --------------------------------------------------------


def cmd_decide(a: argparse.Namespace) -> int:
    g = _load(a.file)
    cert = decide_sbq(g)
    print(f"{cert.verdict} route={cert.route} n={g.n} reduced_n={cert.reduced.n}")
    if a.certificate:
        Path(a.certificate).write_text(json.dumps(cert.to_dict(), indent=2, sort_keys=True) + "\n")
        print(f"wrote {a.certificate}")
    return EXIT_HAS if cert.verdict == HAS_SBQ else EXIT_NO


def cmd_witness(a: argparse.Namespace) -> int:
    g = _load(a.file)
    cert = decide_sbq(g)
    if cert.verdict != HAS_SBQ:
        print(f"{cert.verdict}: no spanning bipartite quadrangulation")
        return EXIT_NO
    w = cert.witness
    print(f"deleted edges {sorted(w.matching)}")
    _emit_graph(w.quadrangulation, a.out)
    return EXIT_HAS


def cmd_coloring(a: argparse.Namespace) -> int:
    g = _load(a.file)
    cert = decide_sbq(g)
    c = near_weak_or_weak(g, cert)
    kind = "weak" if cert.verdict == HAS_SBQ else "near-weak"
    print(f"{kind} {to_string(c, g.n)} mono_faces={len(mono_faces(g, c))}")
    return EXIT_HAS if cert.verdict == HAS_SBQ else EXIT_NO


def cmd_bound(a: argparse.Namespace) -> int:
    g = _load(a.file)
    cert = decide_sbq(g)
    size, c = bipartite_subgraph_bound(g, cert)
    print(f"bipartite_subgraph {size} of {g.m} edges; bipartition {to_string(c, g.n)}")
    return EXIT_HAS if cert.verdict == HAS_SBQ else EXIT_NO


# -- reducer commands --------------------------------------------------------


def _spec(a: argparse.Namespace):
    from ppquad.reducer import C55, ContractionSpec

    kind = KIND_NAMES[a.kind]
    pivot = tuple(_ints(a.pivot))
    at: tuple = tuple(_ints(a.at)) if a.at else ()
    if kind == C55:
        if len(at) != 4:
            raise PreconditionError("c55 needs --at v1,v5,v2,v4 (two identified pairs)")
        at = ((at[0], at[1]), (at[2], at[3]))
    return ContractionSpec(kind, pivot, at)


def cmd_reduce(a: argparse.Namespace) -> int:
    from ppquad.reducer import apply

    g = _load(a.file)
    c = apply(g, _spec(a))
    print(f"# {c.spec.kind} frame={c.symmetry} n {g.n} -> {c.after.n}", file=sys.stderr)
    _emit_graph(c.after, a.out)
    return 0


def cmd_lift(a: argparse.Namespace) -> int:
    from ppquad.reducer import apply, complement_bipartite, lift_matching

    g = _load(a.file)
    c = apply(g, _spec(a))
    text = Path(a.matching).read_text() if Path(a.matching).is_file() else a.matching
    m_after = _ints(text)
    m = lift_matching(c, m_after)
    print(json.dumps({"lifted": sorted(m), "bipartite": complement_bipartite(g, m)}))
    return 0


# -- harness commands --------------------------------------------------------


def cmd_enumerate(a: argparse.Namespace) -> int:
    from ppquad.harness import generated_corpus

    corpus = generated_corpus(a.max_n, a.order)
    paths = corpus.save(a.out)
    counts: dict[int, int] = {}
    for inst in corpus:
        counts[inst.graph.n] = counts.get(inst.graph.n, 0) + 1
    for n in sorted(counts):
        print(f"n={n} {counts[n]}")
    print(f"wrote {len(paths)} files to {a.out}")
    return 0


def cmd_paste(a: argparse.Namespace) -> int:
    from ppquad.harness import paste_family

    faces = _ints(a.faces)
    guests = a.guest.split(",")
    if len(guests) == 1:
        guests = guests * len(faces)
    if len(guests) != len(faces):
        raise PreconditionError("give one guest, or one guest per face")
    _emit_graph(paste_family(dict(zip(faces, guests))), a.out)
    return 0


def cmd_oracle(a: argparse.Namespace) -> int:
    from ppquad.harness import maxcut_oracle, sbq_oracle, weak_oracle

    g = _load(a.file)
    sbq = sbq_oracle(g)
    print(f"sbq {sbq} weak {weak_oracle(g)} maxcut {maxcut_oracle(g)}")
    return EXIT_HAS if sbq else EXIT_NO


def cmd_crossvalidate(a: argparse.Namespace) -> int:
    from ppquad.harness import Corpus, CrossValidationError, builtin_corpus, cross_validate, load_corpus

    corpus = load_corpus(a.dir) if a.dir else Corpus()
    if a.builtin:
        for inst in builtin_corpus():
            corpus.add(inst.name, inst.graph, inst.source)
    report = cross_validate(corpus, workers=a.workers)
    text = report.render(timings=a.timings)
    if a.report:
        Path(a.report).write_text(text)
    sys.stdout.write(text)
    try:
        report.raise_on_failure(corpus)
    except CrossValidationError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    return 0


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ppquad", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("decide", help="decide whether a spanning bipartite quadrangulation exists")
    s.add_argument("file")
    s.add_argument("--certificate", help="write the certificate as JSON")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("witness", help="write a spanning bipartite quadrangulation")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("coloring", help="print a weak or near-weak 2-coloring")
    s.add_argument("file")
    s.set_defaults(func=cmd_coloring)

    s = sub.add_parser("bound", help="bipartite subgraph meeting the 2|E|/3 - 1 bound")
    s.add_argument("file")
    s.set_defaults(func=cmd_bound)

    for name, func in (("reduce", cmd_reduce), ("lift", cmd_lift)):
        s = sub.add_parser(name, help="apply a local reduction" if name == "reduce"
                           else "lift a contracted dual matching")
        s.add_argument("file")
        if name == "lift":
            s.add_argument("matching", help="comma-separated edge ids of the contracted graph, or a file")
        s.add_argument("--kind", required=True, choices=sorted(KIND_NAMES))
        s.add_argument("--pivot", required=True, help="vertex, or u,v for c55, or an edge id for v2add")
        s.add_argument("--at", help="identified vertices: a,b (c4), a,b,c (c6), v1,v5,v2,v4 (c55)")
        if name == "reduce":
            s.add_argument("--out")
        s.set_defaults(func=func)

    s = sub.add_parser("enumerate", help="enumerate projective-plane triangulations")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--order", choices=("star", "plain"), default="star")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("paste", help="paste plane triangulations into faces of K6")
    s.add_argument("--faces", required=True, help="face numbers 1..10")
    s.add_argument("--guest", required=True, help="guest name, or one per face")
    s.add_argument("--out")
    s.set_defaults(func=cmd_paste)

    s = sub.add_parser("oracle", help="brute-force sbq / weak / max-cut")
    s.add_argument("file")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("crossvalidate", help="run every sweep over a corpus")
    s.add_argument("dir", nargs="?")
    s.add_argument("--builtin", action="store_true", help="include the built-in corpus")
    s.add_argument("--report")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--timings", action="store_true")
    s.set_defaults(func=cmd_crossvalidate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (StructuralError, DomainError, PreconditionError, OSError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PPQuadError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
