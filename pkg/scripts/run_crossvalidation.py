"""Cross-validate the decider against the brute-force oracles on generated and built-in corpora."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from ppquad.harness import Corpus, builtin_corpus, cross_validate, generated_corpus, load_corpus


@dataclass(frozen=True)
class RunConfig:
    max_n: int = 8
    order: str = "star"
    pastings: int = 24
    workers: int = 1
    corpus_dir: str | None = None
    report: str = "results/crossvalidation.txt"


def build(cfg: RunConfig) -> Corpus:
    corpus = load_corpus(cfg.corpus_dir) if cfg.corpus_dir else Corpus()
    for inst in generated_corpus(cfg.max_n, cfg.order):
        corpus.add(inst.name, inst.graph, inst.source)
    for inst in builtin_corpus(cfg.pastings):
        corpus.add(inst.name, inst.graph, inst.source)
    return corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    d = RunConfig()
    ap.add_argument("--max-n", type=int, default=d.max_n)
    ap.add_argument("--order", choices=("star", "plain"), default=d.order)
    ap.add_argument("--pastings", type=int, default=d.pastings)
    ap.add_argument("--workers", type=int, default=d.workers)
    ap.add_argument("--corpus-dir", default=d.corpus_dir)
    ap.add_argument("--report", default=d.report)
    cfg = RunConfig(**vars(ap.parse_args()))
    t0 = time.perf_counter()
    corpus = build(cfg)
    report = cross_validate(corpus, workers=cfg.workers)
    Path(cfg.report).parent.mkdir(parents=True, exist_ok=True)
    Path(cfg.report).write_text(report.render(timings=True))
    print(f"{len(corpus)} instances, agreement {report.agreement:.4f}, "
          f"{len(report.failures)} failures, {time.perf_counter() - t0:.1f}s -> {cfg.report}")
    report.raise_on_failure(corpus)


if __name__ == "__main__":
    main()
