"""Cached builds shared across test modules."""

from functools import lru_cache

from cosetlab.coset_monoid import CosetMonoid
from cosetlab.group_core import preset
from cosetlab.subgroup_lattice import enumerate_subgroups
from cosetlab.verify import DEFAULT_CORPUS

CORPUS = DEFAULT_CORPUS
SMALL = ("C1", "C2", "C3", "C4", "C6", "V4", "S3", "Q8", "D4")


@lru_cache(maxsize=None)
def group(name):
    return preset(name)


@lru_cache(maxsize=None)
def lattice(name):
    return enumerate_subgroups(group(name))


@lru_cache(maxsize=None)
def coset(name):
    return CosetMonoid(lattice(name))


def monoid(name):
    return coset(name).monoid


def idem_of(name, members):
    """Idempotent of K(G) for the subgroup with these element indices."""
    K = coset(name)
    return K.idempotent_of[K.lattice.id_of(members)]


def elem(name, cycles):
    """Element index of a permutation preset given in cycle notation."""
    from cosetlab.group_core import cycle_string, parse_cycles

    G = group(name)
    degree = int(G.backend.rsplit("-", 1)[1])
    return G.labels.index(cycle_string(parse_cycles(cycles, degree)))


def sub(name, *cycles):
    """Element-index set of the subgroup generated by the given permutations."""
    from cosetlab.group_core import closure

    return closure(group(name), [elem(name, c) for c in cycles])
