import itertools

import pytest

from cosetlab.series import (
    FactorCatalog,
    IdempotentSeries,
    all_full_series,
    central_idempotents,
    chain_condition_report,
    composition_series,
    defect,
    factors,
    is_series,
    refine_chain,
    schreier_refinement,
    series_isomorphic,
    shortest_subcentral_series,
    subcentral_idempotents,
)

from helpers import idem_of, monoid, sub


def test_c6_has_two_isomorphic_composition_series():
    S = monoid("C6")
    series, truncated = composition_series(S, "subcentral")
    assert not truncated and len(series) == 2
    assert all(s.length == 2 for s in series)
    ok, matching = series_isomorphic(*series)
    assert ok and sorted(matching) == [0, 1]


def test_s3_composition_series():
    S = monoid("S3")
    a3 = idem_of("S3", sub("S3", "(1 2 3)"))
    for kind in ("subcentral", "central"):
        series, _ = composition_series(S, kind)
        assert [s.chain for s in series] == [(S.zero, a3, S.identity)]


def test_s4_subcentral_and_central_lengths_differ():
    S = monoid("S4")
    sub_len = {s.length for s in composition_series(S, "subcentral")[0]}
    cen_len = {s.length for s in composition_series(S, "central")[0]}
    # S4 > A4 > V4 > C2 > 1 versus S4 > A4 > V4 > 1
    assert sub_len == {4} and cen_len == {3}


def test_is_series_rejects():
    S = monoid("S3")
    c2 = idem_of("S3", sub("S3", "(1 2)"))
    ok, why = is_series(S, [S.zero, c2, S.identity], "subcentral")
    assert not ok and "central" in why
    assert not is_series(S, [S.identity], "central")[0]
    assert not is_series(S, [S.zero], "central", full=True)[0]
    assert is_series(S, [S.zero], "central")[0]
    assert not is_series(S, [S.zero, 1], "central")[0]  # 1 is a unit, not idempotent


def test_defects_in_d4():
    S = monoid("D4")
    # reflections generate non-normal subgroups of defect 2
    assert defect(S, idem_of("D4", sub("D4", "(1 3)"))) == 2
    assert defect(S, idem_of("D4", sub("D4", "(1 2 3 4)"))) == 1
    assert defect(S, S.zero) == 0
    assert set(subcentral_idempotents(S)) == set(S.E)


def test_non_subcentral_in_s3():
    S = monoid("S3")
    c2 = idem_of("S3", sub("S3", "(1 2)"))
    assert defect(S, c2) is None
    assert shortest_subcentral_series(S, c2) is None
    assert set(central_idempotents(S)) == set(subcentral_idempotents(S))


def test_refine_chain_gives_subcentral_series():
    S = monoid("D4")
    r = idem_of("D4", sub("D4", "(1 3)"))
    out = refine_chain(S, [S.zero, r])
    assert out.chain[0] == S.zero and out.chain[-1] == S.identity
    assert r in out.chain
    assert is_series(S, out.chain, "subcentral", full=True)[0]


def test_refine_chain_rejects_non_subcentral():
    S = monoid("S3")
    with pytest.raises(ValueError):
        refine_chain(S, [S.zero, idem_of("S3", sub("S3", "(1 2)"))])


@pytest.mark.parametrize("name,kind", [("C6", "subcentral"), ("D4", "subcentral"), ("Q8", "central"),
                                       ("C2xC4", "central"), ("A4", "subcentral")])
def test_schreier_refinement(name, kind):
    S = monoid(name)
    full, _ = all_full_series(S, kind, cap=40)
    cat = FactorCatalog(S)
    for a, b in itertools.islice(itertools.combinations(full, 2), 60):
        res = schreier_refinement(S, a, b, cat)
        assert res.first.length == res.second.length == a.length * b.length
        assert res.first.chain[0] == res.second.chain[0] == S.zero
        assert res.first.chain[-1] == res.second.chain[-1] == S.identity
        assert res.ok


def test_factor_descriptors_track_unit_quotients():
    S = monoid("C6")
    series, _ = composition_series(S, "subcentral")
    orders = sorted(d.unit_order for d in factors(S, series[0]))
    assert orders == [2, 3]


def test_series_of_different_length_not_isomorphic():
    S = monoid("C4")
    a = IdempotentSeries(S, (S.zero, S.identity), "central")
    b = composition_series(S, "central")[0][0]
    assert b.length == 2 and not series_isomorphic(a, b)[0]


def test_collapsed_drops_repeats():
    S = monoid("C2")
    s = IdempotentSeries(S, (S.zero, S.zero, S.identity, S.identity), "central")
    assert s.collapsed() == (S.zero, S.identity)


def test_chain_condition_report():
    rep = chain_condition_report(monoid("S3"))
    assert rep["E_c"] == 3 and rep["E_sc"] == 3
    assert rep["subcentral_composition_exists"] and rep["central_composition_exists"]
