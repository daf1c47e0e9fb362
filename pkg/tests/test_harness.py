"""Corpus handling, pasting families and the cross-validation report."""

from __future__ import annotations

import pytest

from ppquad import harness, library, pem
from ppquad.canon import isomorphic
from ppquad.decider import HAS_SBQ, NO_SBQ
from ppquad.errors import PPQuadError
from ppquad.harness import (
    Corpus,
    CrossValidationError,
    builtin_corpus,
    cross_validate,
    generated_corpus,
    k6_pastings,
    load_corpus,
    paste_family,
)


def test_paste_family():
    assert isomorphic(paste_family({}), library.k6())
    g = paste_family({1: "octahedron", 5: "octahedron", 6: "octahedron"})
    assert (g.n, g.m) == (15, 42)
    assert paste_family({3: "k4"}).n == 7
    with pytest.raises(PPQuadError):
        paste_family({11: "k4"})


def test_k6_pastings_distinct():
    ps = k6_pastings(["octahedron", "k4"], 24)
    assert len(ps) == 24 and len({name for name, _ in ps}) == 24
    c = Corpus()
    assert all(c.add(name, g, "pasted") for name, g in ps)


def test_corpus_dedup_and_roundtrip(tmp_path):
    c = Corpus()
    assert c.add("a", library.k6(), "x") is not None
    assert c.add("b", library.k6(), "y") is None
    assert len(c) == 1
    c.add("oct", library.octahedron(), "x")
    paths = c.save(tmp_path)
    d = load_corpus(tmp_path)
    assert [i.key for i in d] == [i.key for i in c] and len(paths) == 2


def test_builtin_report_agrees():
    corpus = builtin_corpus(max_pastings=8)
    rep = cross_validate(corpus)
    assert rep.failures == [] and rep.agreement == 1.0
    verdicts = {r.verdict for r in rep.results if r.surface == "pp"}
    assert verdicts == {HAS_SBQ, NO_SBQ}
    assert rep.totals()["verdict"] == sum(r.surface == "pp" for r in rep.results)
    rep.raise_on_failure(corpus)


def test_report_deterministic():
    corpus = generated_corpus(7)
    a = cross_validate(corpus).render()
    b = cross_validate(corpus, workers=2).render()
    assert a == b
    assert "agreement 1.0000" in a and "timings" not in a
    assert "timings" in cross_validate(corpus).render(timings=True)


def test_empty_corpus():
    rep = cross_validate(Corpus())
    assert rep.results == () and rep.agreement == 1.0
    assert "instances 0" in rep.render()


def test_corrupted_fixture(tmp_path):
    text = pem.dumps(library.k6())
    lines = text.splitlines()
    idx = next(i for i, ln in enumerate(lines) if ln.strip() and not ln.startswith("#") and i > 1)
    lines[idx] = lines[idx] + " 99"
    (tmp_path / "bad.pem").write_text("\n".join(lines) + "\n")
    with pytest.raises(PPQuadError):
        load_corpus(tmp_path)


def test_disagreement_is_hard_error(monkeypatch):
    corpus = Corpus()
    corpus.add("k6", library.k6(), "builtin")
    monkeypatch.setattr(harness, "sbq_oracle", lambda g: True)
    rep = cross_validate(corpus, lifting=False)
    assert len(rep.failures) == 1 and "FAIL" in rep.render()
    with pytest.raises(CrossValidationError) as exc:
        rep.raise_on_failure(corpus)
    assert "pem" in str(exc.value).lower() or "k6" in str(exc.value)
