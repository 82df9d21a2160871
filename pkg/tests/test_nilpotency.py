import pytest

from cosetlab.coset_monoid import normal_subgroup_monoid
from cosetlab.group_core import preset
from cosetlab.inverse_monoid import (
    PreconditionError,
    chain_semilattice,
    group_with_zero,
    symmetric_inverse_monoid,
)
from cosetlab.nilpotency import (
    NILPOTENT,
    aabtrans_check,
    central_chains,
    fasec_check,
    g_lengths,
    gnilu_check,
    is_g_nilpotent_series,
    is_g_solvable_series,
    niliff_check,
    nilsubc_check,
    nseq_check,
    nsl1eq_check,
    sei_check,
    shortest_series,
    snchr_check,
    subcanti_check,
)

import oracles
from helpers import CORPUS, group, idem_of, lattice, monoid, sub

# [DERIVED] by the brute-force lower central / derived series oracles
SPOT = {
    "Q8": (2, 2),
    "D4": (2, 2),
    "S3": (None, 2),
    "S4": (None, 3),
    "A4": (None, 2),
    "C1": (0, 0),
    "C5": (1, 1),
    "V4": (1, 1),
    "C2xC4": (1, 1),
}


@pytest.mark.parametrize("name", sorted(SPOT))
def test_spot_values(name):
    rep = g_lengths(monoid(name))
    assert (rep.g_nilpotent_length, rep.g_solvable_length) == SPOT[name]


@pytest.mark.parametrize("name", sorted(SPOT))
def test_spot_values_match_oracle(name):
    T = oracles.table_of(group(name))
    assert (oracles.lcs_class(T), oracles.derived_len(T)) == SPOT[name]


@pytest.mark.parametrize("name", CORPUS)
def test_lengths_transfer_from_group(name):
    ok, w = snchr_check(group(name), monoid(name))
    assert ok, w


def test_s3_series_solvable_not_nilpotent():
    S = monoid("S3")
    chain = (S.zero, idem_of("S3", sub("S3", "(1 2 3)")), S.identity)
    assert is_g_solvable_series(S, chain)
    assert not is_g_nilpotent_series(S, chain)


def test_q8_centre_series_is_nilpotent():
    S = monoid("Q8")
    G = group("Q8")
    Z = [g for g in G.elements if all(G.mul[g, x] == G.mul[x, g] for x in G.elements)]
    chain = (S.zero, idem_of("Q8", Z), S.identity)
    assert is_g_nilpotent_series(S, chain)
    assert shortest_series(S, NILPOTENT) is not None


def test_non_central_chain_rejected():
    S = monoid("S3")
    with pytest.raises(PreconditionError):
        is_g_nilpotent_series(S, (S.zero, idem_of("S3", sub("S3", "(1 2)")), S.identity))


def test_nsl1eq_commutative_only_for_abelian():
    assert nsl1eq_check(g_lengths(monoid("C6")))[0]
    rep = g_lengths(monoid("S3"))
    assert not rep.commutative and nsl1eq_check(rep)[0]


@pytest.mark.parametrize("name", ["C4", "S3", "D4", "Q8", "A4", "S3xC2"])
def test_nilpotency_lemmas(name):
    S = monoid(name)
    rep = g_lengths(S)
    chains, _ = central_chains(S)
    assert all(nseq_check(S, c)[0] for c in chains)
    assert gnilu_check(S, rep)[0]
    assert fasec_check(S)[0]
    assert niliff_check(S, rep)[0]
    assert aabtrans_check(S)[0]
    assert subcanti_check(S)[0]
    if rep.g_nilpotent:
        assert sei_check(S, chains)[0]
        assert nilsubc_check(S, rep)[0]


def test_nilsubc_requires_nilpotent():
    with pytest.raises(PreconditionError):
        nilsubc_check(monoid("S3"))


@pytest.mark.parametrize("make", [
    lambda: symmetric_inverse_monoid(2),
    lambda: chain_semilattice(3),
    lambda: group_with_zero(preset("S3")),
    lambda: normal_subgroup_monoid(lattice("S4")).monoid,
])
def test_checks_on_other_monoids(make):
    S = make()
    assert aabtrans_check(S)[0]
    assert subcanti_check(S)[0]
    assert nsl1eq_check(g_lengths(S))[0]
    if S.is_factorizable:
        assert fasec_check(S)[0]


def test_niliff_on_normal_subgroup_monoid():
    S = normal_subgroup_monoid(lattice("D4")).monoid
    assert S.is_dual_isomorphism()[0]
    assert niliff_check(S)[0]

