import json
from itertools import product

import pytest

from d4kit.dtuple import DTuple, extend_triple_regular, is_regular_quadruple
from d4kit.gpoly import GPoly, poly_sqrt
from d4kit.search import (
    DISCLAIMER,
    SearchBounds,
    _XGrid,
    _x_extensions,
    audit_lemmas,
    audit_theorem,
    box_polys,
    enumerate_pairs,
    enumerate_pairs_naive,
    extend_all,
    partners,
    result_digest,
    write_corpus,
)

from conftest import DERIVED_TRIPLE, P


@pytest.fixture(scope="module")
def deg2_audit():
    return audit_theorem(SearchBounds(2, 2))


def test_bounds_validation():
    with pytest.raises(ValueError):
        SearchBounds(-1, 2)
    with pytest.raises(ValueError):
        SearchBounds(1, 0)


def test_box_excludes_zero():
    polys = box_polys(SearchBounds(1, 1))
    assert len(polys) == 9 ** 2 - 1
    assert GPoly() not in polys


@pytest.mark.parametrize("deg, bound", [(0, 1), (0, 2), (1, 1), (1, 2)])
def test_pairs_match_naive_double_loop(deg, bound):
    bounds = SearchBounds(deg, bound)
    fast = [(a, b) for a, b, _ in enumerate_pairs(bounds)]
    assert len(fast) == len(set(fast))
    assert set(fast) == enumerate_pairs_naive(bounds)


def test_pair_witnesses_and_order():
    rows = list(enumerate_pairs(SearchBounds(1, 4)))
    assert (P("X"), P("X+4"), P("X+2")) in rows
    for a, b, r in rows[:500]:
        assert r * r == a * b + 4 and r == poly_sqrt(a * b + 4)


def test_constant_box_has_no_pairs():
    assert list(enumerate_pairs(SearchBounds(0, 1))) == []


def test_remark_pair_is_in_the_standard_box():
    assert P("-2iX^2-4iX") in partners(P("2i"), SearchBounds(2, 4))


def test_extend_all_examples():
    assert P("4X+8") in list(extend_all(P("X"), P("X+4"), SearchBounds(1, 8)))
    assert P("2iX^2+4iX+4i") in list(extend_all(P("2i"), P("-2iX^2-4iX"), SearchBounds(2, 4)))
    assert list(extend_all(P("X"), P("X+4"), SearchBounds(1, 1))) == []


def test_constant_box_has_no_quadruples():
    res = audit_theorem(SearchBounds(0, 3))
    assert res.counts["quadruples"] == 0 and res.ok


def test_deg2_audit_finds_only_regular_quadruples(deg2_audit):
    res = deg2_audit
    assert res.counts["quadruples"] > 0
    assert res.violations == []
    for q in res.quadruples:
        assert is_regular_quadruple(*q)
        ext = extend_triple_regular(*q[:3])
        assert q[3] in (ext.d_plus, ext.d_minus)
    for t in res.triples:
        assert all(poly_sqrt(x * y + 4) is not None for x, y in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])))


def test_x_grid_reaches_derived_quadruple():
    # u = 2X^2 + 6X + 2 solves X*d_plus + 4 = u^2, so the grid needs |coeff| <= 6
    xs = [GPoly(c) for c in product(range(-6, 7), repeat=3)]
    grid = _XGrid.from_polys(xs, 3)
    triple = tuple(P(t) for t in DERIVED_TRIPLE)
    found = _x_extensions(triple, grid)
    assert found == [P("4X^3+24X^2+44X+24")]
    assert is_regular_quadruple(*triple, *found)


def test_determinism_across_runs_and_workers():
    b = SearchBounds(1, 2)
    one, two, par = audit_theorem(b), audit_theorem(b), audit_theorem(b, jobs=2)
    assert one.digest == two.digest == par.digest
    assert one.triples == par.triples
    assert one.digest == result_digest(one.pairs, one.triples, one.quadruples)


def test_corpus_round_trip(tmp_path, deg2_audit):
    corpus, manifest = write_corpus(deg2_audit, tmp_path / "out")
    lines = corpus.read_text().splitlines()
    assert len(lines) == deg2_audit.counts["triples"] + deg2_audit.counts["quadruples"]
    for line in lines[:50] + lines[-20:]:
        t = DTuple.from_json(json.loads(line))
        assert len(t) in (3, 4)
    doc = json.loads(manifest.read_text())
    assert doc["disclaimer"] == DISCLAIMER
    assert doc["digest"] == deg2_audit.digest
    assert doc["bounds"] == {"max_deg": 2, "coeff_bound": 2, "depth": 6}


def test_out_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("D4KIT_OUT_DIR", str(tmp_path / "env"))
    corpus, _ = write_corpus(audit_theorem(SearchBounds(1, 1)))
    assert corpus.parent == tmp_path / "env"


def test_smoke_lemma_preset():
    results = audit_lemmas(SearchBounds(1, 3))
    assert results
    assert [r for r in results if r.status == "fail"] == []
