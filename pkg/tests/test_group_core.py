import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cosetlab.group_core import (
    GroupAxiomError,
    ParseError,
    center,
    closure,
    conjugate_subgroup,
    derived_length,
    from_table,
    group_isomorphism,
    is_normal,
    load_group,
    nilpotency_class,
    normalizer,
    parse_group,
    preset,
    quotient_group,
    subgroup_generate,
    Subgroup,
)

import oracles
from helpers import CORPUS, elem, group, sub


def test_preset_trivial():
    assert preset("C1").order == 1


def test_perm_spec_order():
    # frozen from oracles.gen_closure on the two generators
    G = parse_group("perm degree=3 gens=(1 2);(1 2 3)")
    assert G.order == 6
    assert len(oracles.gen_closure(oracles.table_of(G), [1, 2])) <= 6


def test_q8_single_involution():
    G = group("Q8")
    assert G.order == 8
    assert oracles.count_involutions(oracles.table_of(G)) == 1


def test_table_spec_and_comments():
    G = parse_group("# Klein\ntable 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n")
    assert G.order == 4 and G.is_abelian


def test_preset_spec_and_products():
    assert parse_group("preset S3").order == 6
    assert preset("C2xC2xC2").order == 8
    assert load_group("S3xC2").order == 12


@pytest.mark.parametrize("text,line", [
    ("perm degree=3 gens=(1 2", 1),
    ("perm degree=3 gens=(1 4)", 1),
    ("bogus", 1),
    ("table 2\n0 1\n1", 3),
])
def test_parse_errors_carry_position(text, line):
    with pytest.raises(ParseError) as info:
        parse_group(text)
    assert info.value.line == line


def test_non_group_table_reports_witness():
    # x*y = x (left zero band) is associative but has no identity
    with pytest.raises(GroupAxiomError):
        from_table([[0, 0], [1, 1]])
    # non-associative Latin square
    with pytest.raises(GroupAxiomError) as info:
        from_table([[0, 1, 2], [1, 0, 0], [2, 2, 1]])
    assert info.value.witness


def test_subgroup_generate():
    G = group("S3")
    assert subgroup_generate(G, []).members == {G.identity}
    assert subgroup_generate(G, [elem("S3", "(1 2)"), elem("S3", "(1 3)")]).order == 6
    assert subgroup_generate(group("S4"), [elem("S4", "(1 2)(3 4)")]).order == 2


def test_conjugate_subgroup_s3():
    # (1 2) conjugated by (1 2 3) under left-to-right composition
    G = group("S3")
    H = Subgroup(G, sub("S3", "(1 2)"))
    g = elem("S3", "(1 2 3)")
    assert conjugate_subgroup(H, G.identity).members == H.members
    assert conjugate_subgroup(H, g).members == sub("S3", "(2 3)")
    A3 = Subgroup(G, sub("S3", "(1 2 3)"))
    assert all(conjugate_subgroup(A3, x).members == A3.members for x in G.elements)


def test_is_normal():
    G = group("S3")
    A3, T = sub("S3", "(1 2 3)"), sub("S3", "(1 2)")
    assert is_normal(A3, G.all, G) and not is_normal(T, G.all, G)
    assert is_normal(T, T, G)
    V4 = sub("S4", "(1 2)(3 4)", "(1 3)(2 4)")
    assert is_normal(V4, group("S4").all, group("S4"))
    with pytest.raises(ValueError):
        is_normal(G.all, T, G)


def test_normalizer():
    G = group("S3")
    assert normalizer(Subgroup(G, G.trivial)).members == G.all
    assert normalizer(Subgroup(G, sub("S3", "(1 2)"))).members == sub("S3", "(1 2)")
    assert normalizer(Subgroup(G, sub("S3", "(1 2 3)"))).members == G.all


def test_quotients():
    G = group("S3")
    assert quotient_group(G, G.all).order == 1
    assert quotient_group(G, sub("S3", "(1 2 3)")).order == 2
    S4 = group("S4")
    Q = quotient_group(S4, sub("S4", "(1 2)(3 4)", "(1 3)(2 4)"))
    assert Q.order == 6 and group_isomorphism(Q, group("S3")) is not None
    with pytest.raises(ValueError):
        quotient_group(G, sub("S3", "(1 2)"))


@pytest.mark.parametrize("name", CORPUS + ("A5",))
def test_class_and_length_match_oracle(name):
    G = group(name)
    T = oracles.table_of(G)
    assert nilpotency_class(G) == oracles.lcs_class(T)
    assert derived_length(G) == oracles.derived_len(T)


def test_class_values():
    assert nilpotency_class(group("C1")) == 0
    assert nilpotency_class(group("C5")) == 1
    assert nilpotency_class(group("Q8")) == 2 and nilpotency_class(group("D4")) == 2
    assert nilpotency_class(group("S3")) is None
    assert derived_length(group("S4")) == 3 and derived_length(group("S3")) == 2


def test_center():
    assert center(group("Q8")).order == 2
    assert center(group("S3")).order == 1


@pytest.mark.parametrize("name", CORPUS)
def test_axioms_exhaustive(name):
    G = group(name)
    m = G.mul
    assert (m[m, :] == m[:, m]).all()
    assert (G.inv[G.inv] == np.arange(G.order)).all()


names = st.sampled_from(CORPUS)


@settings(max_examples=60, deadline=None)
@given(names, st.data())
def test_conjugation_composes(name, data):
    G = group(name)
    H = Subgroup(G, closure(G, [data.draw(st.integers(0, G.order - 1))]))
    g1 = data.draw(st.integers(0, G.order - 1))
    g2 = data.draw(st.integers(0, G.order - 1))
    lhs = conjugate_subgroup(H, int(G.mul[g1, g2]))
    rhs = conjugate_subgroup(conjugate_subgroup(H, g1), g2)
    assert lhs.members == rhs.members


@settings(max_examples=40, deadline=None)
@given(names)
def test_quotient_order_and_series_relation(name):
    G = group(name)
    for N in (G.trivial, center(G).members, G.all):
        assert quotient_group(G, N).order == G.order // len(N)
    c, d = nilpotency_class(G), derived_length(G)
    if c is not None:
        assert d is not None and d <= c
