"""Count projective-plane triangulations by vertex number under both search orders."""

from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from ppquad.canon import canonical_code, enumerate_pp_triangulations
from ppquad.decider import decide_sbq


@dataclass(frozen=True)
class CountConfig:
    max_n: int = 8
    compare_up_to: int = 7


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    d = CountConfig()
    ap.add_argument("--max-n", type=int, default=d.max_n)
    ap.add_argument("--compare-up-to", type=int, default=d.compare_up_to)
    cfg = CountConfig(**vars(ap.parse_args()))
    t0 = time.perf_counter()
    gs = list(enumerate_pp_triangulations(cfg.max_n))
    routes = Counter((g.n, decide_sbq(g).route) for g in gs)
    counts = Counter(g.n for g in gs)
    print("n count routes")
    for n in sorted(counts):
        r = ", ".join(f"{k}={v}" for (m, k), v in sorted(routes.items()) if m == n)
        print(f"{n} {counts[n]} {r}")
    a = [canonical_code(g) for g in gs if g.n <= cfg.compare_up_to]
    b = [canonical_code(g) for g in enumerate_pp_triangulations(cfg.compare_up_to, "plain")]
    print(f"star and plain orders agree up to n={cfg.compare_up_to}: {a == b}")
    print(f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
