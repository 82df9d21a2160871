import pytest
from hypothesis import given, settings, strategies as st

from cosetlab.group_core import CapExceeded
from cosetlab.subgroup_lattice import emit_lattice_dot, enumerate_subgroups

import oracles
from helpers import CORPUS, group, lattice, sub


@pytest.mark.parametrize("name", CORPUS + ("A5",))
def test_enumeration_matches_brute_force(name):
    lat = lattice(name) if name != "A5" else enumerate_subgroups(group("A5"))
    assert set(lat.members) == oracles.all_subgroups(oracles.table_of(lat.group))
    assert len(set(lat.members)) == len(lat.members)


@pytest.mark.parametrize("name,count", [("C1", 1), ("S3", 6), ("S4", 30), ("D4", 10), ("Q8", 6)])
def test_subgroup_counts(name, count):
    # counts frozen from oracles.all_subgroups
    assert len(lattice(name)) == count


def test_ordering_convention():
    lat = lattice("S4")
    assert lat.order(lat.trivial) == 1 and lat.order(lat.top) == 24
    keys = [(len(m), tuple(sorted(m))) for m in lat.members]
    assert keys == sorted(keys)


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_subgroups(group("S4"), cap=10)


def test_subnormal_defect_examples():
    lat = lattice("S4")
    assert lat.subnormal_defect(lat.top) == 0
    assert lat.subnormal_defect(lat.id_of(sub("S4", "(1 2)(3 4)"))) == 2
    s3 = lattice("S3")
    assert s3.subnormal_defect(s3.id_of(sub("S3", "(1 2)"))) is None
    assert all(lat.subnormal_defect(h) <= 1 for h in range(len(lat)) if lat.normal[h])


@pytest.mark.parametrize("name", ("S3", "D4", "Q8", "A4", "S4", "D6"))
def test_defect_matches_oracle(name):
    lat = lattice(name)
    T = oracles.table_of(lat.group)
    for h, m in enumerate(lat.members):
        assert lat.subnormal_defect(h) == oracles.subnormal_defect(T, m)


@pytest.mark.parametrize("name", CORPUS)
def test_index_sum_matches_raw_cosets(name):
    lat = lattice(name)
    raw = oracles.all_cosets(oracles.table_of(lat.group))
    assert sum(lat.index_in_group(h) for h in range(len(lat))) == len(raw)


@pytest.mark.parametrize("name", CORPUS)
def test_normal_iff_singleton_class(name):
    lat = lattice(name)
    singles = {c[0] for c in lat.conjugacy_classes if len(c) == 1}
    assert singles == {h for h in range(len(lat)) if lat.normal[h]}


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(CORPUS), st.data())
def test_lattice_axioms(name, data):
    lat = lattice(name)
    n = len(lat)
    a, b, c = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    J, M = lat.join, lat.meet
    assert J[a, a] == a and M[a, a] == a
    assert J[a, b] == J[b, a] and M[a, b] == M[b, a]
    assert J[a, M[a, b]] == a and M[a, J[a, b]] == a
    assert J[J[a, b], c] == J[a, J[b, c]]
    # join is the least enumerated upper bound, meet the largest lower bound
    ub = [x for x in range(n) if lat.leq[a, x] and lat.leq[b, x]]
    assert all(lat.leq[J[a, b], x] for x in ub) and J[a, b] in ub
    lb = [x for x in range(n) if lat.leq[x, a] and lat.leq[x, b]]
    assert all(lat.leq[x, M[a, b]] for x in lb) and M[a, b] in lb


def test_dot_output():
    assert emit_lattice_dot(lattice("C1")).count("[label=") == 1
    text = emit_lattice_dot(lattice("S3"))
    assert text.count("[label=") == 6
    assert text.count("doublecircle") == 3
    assert '"#0 |H|=1"' in text
