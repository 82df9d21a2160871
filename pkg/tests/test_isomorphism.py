import numpy as np
from hypothesis import given, settings, strategies as st

from cosetlab.isomorphism import find_isomorphism, is_isomorphism

from helpers import CORPUS, group


def relabel(mul, perm):
    """Table of the same structure under the bijection x -> perm[x]."""
    n = len(perm)
    inv = np.empty(n, dtype=np.int64)
    inv[perm] = np.arange(n)
    return np.asarray(perm)[mul[np.ix_(inv, inv)]]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_relabelled_groups_are_isomorphic(name, rnd):
    mul = group(name).mul
    perm = list(range(len(mul)))
    rnd.shuffle(perm)
    other = relabel(mul, np.array(perm))
    phi = find_isomorphism(mul, other)
    assert phi is not None and is_isomorphism(mul, other, phi)


def test_non_isomorphic_same_order():
    assert find_isomorphism(group("Q8").mul, group("D4").mul) is None
    assert find_isomorphism(group("C4").mul, group("V4").mul) is None
    assert find_isomorphism(group("C6").mul, group("S3").mul) is None
