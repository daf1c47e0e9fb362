"""Write the pem fixtures used by the regression tests into tests/fixtures/."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ppquad import library, pem
from ppquad.harness import paste_family, z_graphs

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from conftest import k6_minus_edge_plus_vertex  # noqa: E402


def fixtures():
    z_prime, z = sorted(z_graphs(), key=lambda g: min(g.degree(v) for v in range(g.n)))
    return {
        "k6": library.k6(),
        "z": z,
        "z_prime": z_prime,
        "k6_oct1": paste_family({1: "octahedron"}),
        "k6_oct156": paste_family({1: "octahedron", 5: "octahedron", 6: "octahedron"}),
        "k6_k4_1": paste_family({1: "k4"}),
        "k6_minus_edge_plus_vertex": k6_minus_edge_plus_vertex(),
        "octahedron": library.octahedron(),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(ROOT / "tests" / "fixtures"))
    a = ap.parse_args()
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, g in fixtures().items():
        pem.write(g, out / f"{name}.pem")
        print(f"{name}: n={g.n} m={g.m} surface={g.surface}")


if __name__ == "__main__":
    main()
