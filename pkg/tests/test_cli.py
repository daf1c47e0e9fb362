"""Command-line entry points and exit codes."""

from __future__ import annotations

import json

import pytest

from ppquad import library, pem
from ppquad.cli import EXIT_FAIL, EXIT_HAS, EXIT_INVALID, EXIT_NO, main
from ppquad.harness import paste_family


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in (("k6", library.k6()), ("k6k4", paste_family({1: "k4"})),
                    ("oct", library.octahedron()), ("ico", library.icosahedron())):
        p = tmp_path / f"{name}.pem"
        pem.write(g, p)
        paths[name] = str(p)
    bad = tmp_path / "bad.pem"
    bad.write_text("surface pp\nvertices 3\nedge 0 0 1 +\n")
    paths["bad"] = str(bad)
    return paths


def test_decide(files, tmp_path, capsys):
    assert main(["decide", files["k6"]]) == EXIT_NO
    cert = tmp_path / "cert.json"
    assert main(["decide", files["k6k4"], "--certificate", str(cert)]) == EXIT_HAS
    assert json.loads(cert.read_text())["verdict"] == "HAS_SBQ"
    assert "HAS_SBQ" in capsys.readouterr().out


def test_invalid_inputs(files, tmp_path):
    assert main(["decide", files["bad"]]) == EXIT_INVALID
    assert main(["decide", files["oct"]]) == EXIT_INVALID
    assert main(["decide", str(tmp_path / "missing.pem")]) == EXIT_INVALID
    with pytest.raises(SystemExit):
        main(["nonsense"])


def test_witness_coloring_bound(files, tmp_path, capsys):
    out = tmp_path / "q.pem"
    assert main(["witness", files["k6k4"], "--out", str(out)]) == EXIT_HAS
    q = pem.read(out)
    assert all(f.length == 4 for f in q.faces)
    assert main(["witness", files["k6"]]) == EXIT_NO
    assert main(["coloring", files["k6"]]) == EXIT_NO
    assert "near-weak" in capsys.readouterr().out
    assert main(["bound", files["k6"]]) == EXIT_NO
    assert "bipartite_subgraph 9 of 15" in capsys.readouterr().out


def test_reduce_and_lift(files, tmp_path, capsys):
    from ppquad.reducer import applicable_specs
    from ppquad.factors import perfect_matchings
    from ppquad.triops import dual

    o = library.octahedron()
    spec = applicable_specs(o)[0]
    at = ",".join(map(str, spec.at))
    out = tmp_path / "r.pem"
    assert main(["reduce", files["oct"], "--kind", "c4", "--pivot", str(spec.pivot[0]),
                 "--at", at, "--out", str(out)]) == 0
    h = pem.read(out)
    assert h.n == 4
    m = next(iter(perfect_matchings(dual(h))))
    capsys.readouterr()
    assert main(["lift", files["oct"], ",".join(map(str, sorted(m))), "--kind", "c4",
                 "--pivot", str(spec.pivot[0]), "--at", at]) == 0
    assert len(json.loads(capsys.readouterr().out)["lifted"]) == 4
    assert main(["reduce", files["k6"], "--kind", "c4", "--pivot", "0", "--at", "1,3"]) == EXIT_INVALID
    assert main(["reduce", files["ico"], "--kind", "c55", "--pivot", "0,1", "--at", "1,2"]) == EXIT_INVALID


def test_enumerate_paste_oracle(tmp_path, capsys):
    d = tmp_path / "corpus"
    assert main(["enumerate", "--max-n", "7", "--out", str(d)]) == 0
    assert "n=7 3" in capsys.readouterr().out
    assert len(list(d.glob("*.pem"))) == 4
    out = tmp_path / "p.pem"
    assert main(["paste", "--faces", "1,5,6", "--guest", "octahedron", "--out", str(out)]) == 0
    assert pem.read(out).n == 15
    assert main(["oracle", str(out)]) == EXIT_NO
    assert main(["paste", "--faces", "1,2", "--guest", "k4,k4,k4"]) == EXIT_INVALID
    assert main(["enumerate", "--max-n", "12", "--out", str(d)]) == EXIT_FAIL


def test_crossvalidate(tmp_path, capsys):
    d = tmp_path / "corpus"
    main(["enumerate", "--max-n", "7", "--out", str(d)])
    rep = tmp_path / "report.txt"
    assert main(["crossvalidate", str(d), "--report", str(rep), "--workers", "2"]) == 0
    text = rep.read_text()
    assert "agreement 1.0000" in text and "instances 4" in text
