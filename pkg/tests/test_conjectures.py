import pytest
from hypothesis import given, settings, strategies as st

from cosetlab import conjectures as cj
from cosetlab.nilpotency import NILPOTENT

from helpers import monoid


@pytest.mark.parametrize("name", ["C2", "C3", "C5"])
def test_problem1_on_simple_groups(name):
    S = monoid(name)
    res = cj.probe_problem1(S)
    assert res.skipped is None and res.instances == len(S.E)
    assert all(cj.replay_problem1(S, w) for w in res.witnesses)
    # e = 0 has filter all of S; no conjugate meets it in {1}
    assert [w["e"] for w in res.candidates] == [S.zero]


def test_problem1_skips_non_simple():
    assert cj.probe_problem1(monoid("C4")).skipped


def test_problem3_skips_with_solvable_normal_subgroup():
    res = cj.probe_problem3(monoid("S3"), k=5)
    assert res.skipped and res.instances == 0
    with pytest.raises(ValueError):
        cj.probe_problem3(monoid("S3"), k=3)


def test_problem3_search_replays():
    S = monoid("S3")
    for e in S.E:
        units, _, trunc = cj._search_problem3(S, e, 5, None)
        w = {"e": e, "k": 5, "found": units is not None, "units": units}
        assert not trunc and cj.replay_problem3(S, w)


@pytest.mark.parametrize("name", ["C6", "S3", "D4", "A4", "Q8"])
def test_problem4a_replays(name):
    S = monoid(name)
    res = cj.probe_problem4a(S)
    assert res.skipped is None and res.instances > 0
    assert all(cj.replay_problem4a(S, w) for w in res.witnesses)
    assert res.summary["max_difference"] >= 0


def test_empirical_k():
    results = [cj.probe_problem4a(monoid(n)) for n in ("C6", "S3", "D4")]
    assert cj.empirical_k(results) == 1
    assert cj.empirical_k([]) is None


def test_problem6_on_q8_is_exhaustive_and_replays():
    S = monoid("Q8")
    res = cj.probe_problem6(S)
    n = len(S.E) ** 3
    assert res.instances + res.summary["hypothesis_unmet"] == 2 * n
    assert not res.candidates
    for w in res.witnesses[::17]:
        assert cj.replay_problem6(S, w)


def test_problem6_targets():
    S = monoid("D4")
    lengths = cj.FilterLengths(S)
    w = cj.problem6_outcome(S, S.zero, S.identity, S.identity, NILPOTENT, lengths)
    # 0 v 1 = 1
    assert w["M"] == [S.identity]
    assert w["max_S"] == w["Max_S"] == S.identity
    assert w["a"] and w["b"]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(monoid("S3").E), min_size=1, max_size=5))
def test_idempotent_products_are_order_independent(xs):
    assert cj.check_product_order_independent(monoid("S3"), xs)


def test_not_probeable_problems_have_reasons():
    assert set(cj.NOT_PROBEABLE) == {"2", "5"}


def test_truncation_flag():
    S = monoid("S3")
    units, examined, trunc = cj._search_problem3(S, S.identity, 5, max_tuples=0)
    assert units is None and trunc and examined == 1
