"""All subgroups of a small group, with join/meet/conjugation tables."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Optional

import numpy as np

from .group_core import (
    CapExceeded,
    FiniteGroup,
    Subgroup,
    closure,
    conjugate_set,
)


def _sort_key(members: frozenset) -> tuple:
    return (len(members), tuple(sorted(members)))


class SubgroupLattice:
    """Subgroups of ``group`` in deterministic order.

    Index 0 is the trivial subgroup and the last index is the whole group;
    in between, subgroups are sorted by (order, sorted member tuple).
    """

    def __init__(self, group: FiniteGroup, members: list[frozenset]):
        self.group = group
        self.members = sorted(set(members), key=_sort_key)
        self.index = {m: i for i, m in enumerate(self.members)}
        self.subgroups = [Subgroup(group, m) for m in self.members]

    def __len__(self) -> int:
        return len(self.members)

    @property
    def trivial(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.members) - 1

    def id_of(self, members) -> int:
        return self.index[frozenset(members)]

    def order(self, h: int) -> int:
        return len(self.members[h])

    def index_in_group(self, h: int) -> int:
        return self.group.order // len(self.members[h])

    @cached_property
    def leq(self) -> np.ndarray:
        """leq[h, k] iff subgroup h is contained in subgroup k."""
        n = len(self)
        out = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(self.members):
            for j, b in enumerate(self.members):
                out[i, j] = a <= b
        return out

    @cached_property
    def join(self) -> np.ndarray:
        n = len(self)
        out = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                if self.leq[i, j]:
                    k = j
                elif self.leq[j, i]:
                    k = i
                else:
                    k = self.index[closure(self.group, self.members[i] | self.members[j])]
                out[i, j] = out[j, i] = k
        return out

    @cached_property
    def meet(self) -> np.ndarray:
        n = len(self)
        out = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                k = self.index[self.members[i] & self.members[j]]
                out[i, j] = out[j, i] = k
        return out

    @cached_property
    def conj(self) -> np.ndarray:
        """conj[h, g] = id of g^{-1} H g."""
        G = self.group
        out = np.zeros((len(self), G.order), dtype=np.int64)
        for h, m in enumerate(self.members):
            for g in G.elements:
                out[h, g] = self.index[conjugate_set(G, m, g)]
        return out

    @cached_property
    def normal(self) -> np.ndarray:
        return np.array([bool((self.conj[h] == h).all()) for h in range(len(self))])

    def normal_in(self, h: int, k: int) -> bool:
        """H normal in K (requires H <= K)."""
        if not self.leq[h, k]:
            raise ValueError("normal_in requires H <= K")
        return all(self.conj[h, g] == h for g in self.members[k])

    @cached_property
    def normal_pairs(self) -> np.ndarray:
        """normal_pairs[h, k] iff H <= K and H is normal in K."""
        n = len(self)
        out = np.zeros((n, n), dtype=bool)
        for h in range(n):
            for k in range(n):
                if self.leq[h, k]:
                    out[h, k] = all(self.conj[h, g] == h for g in self.members[k])
        return out

    @cached_property
    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for h in range(len(self)):
            if h in seen:
                continue
            cls = tuple(sorted(set(int(x) for x in self.conj[h])))
            seen.update(cls)
            out.append(cls)
        return out

    def conjugate(self, h: int, g: int) -> int:
        return int(self.conj[h, g])

    def subnormal_defect(self, h: int) -> Optional[int]:
        """Shortest chain H = K_m <| ... <| K_0 = G, by BFS down from G."""
        dist = {self.top: 0}
        queue = deque([self.top])
        while queue:
            k = queue.popleft()
            if k == h:
                return dist[k]
            for x in range(len(self)):
                if x not in dist and x != k and self.leq[h, x] and self.normal_pairs[x, k]:
                    dist[x] = dist[k] + 1
                    queue.append(x)
        return None

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering pairs (h, k): H < K with nothing strictly between."""
        n = len(self)
        edges = []
        for h in range(n):
            for k in range(n):
                if h == k or not self.leq[h, k]:
                    continue
                if not any(self.leq[h, x] and self.leq[x, k] and x not in (h, k) for x in range(n)):
                    edges.append((h, k))
        return edges

    def label(self, h: int) -> str:
        return f"#{h} |H|={self.order(h)}"


def cyclic_subgroups(G: FiniteGroup) -> list[frozenset]:
    return sorted({closure(G, [g]) for g in G.elements}, key=_sort_key)


def enumerate_subgroups(G: FiniteGroup, cap: Optional[int] = None) -> SubgroupLattice:
    """Start from the cyclic subgroups and close under joins with them."""
    if cap is not None and G.order > cap:
        raise CapExceeded(f"group order {G.order} exceeds cap {cap}")
    cyclic = cyclic_subgroups(G)
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        new = []
        for h in frontier:
            for c in cyclic:
                if c <= h:
                    continue
                j = closure(G, h | c)
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    return SubgroupLattice(G, list(found))


def emit_lattice_dot(lat: SubgroupLattice) -> str:
    lines = ["digraph subgroups {", "  rankdir=BT;"]
    for h in range(len(lat)):
        shape = "doublecircle" if lat.normal[h] else "ellipse"
        lines.append(f'  s{h} [label="{lat.label(h)}", shape={shape}];')
    for h, k in lat.hasse_edges():
        lines.append(f"  s{h} -> s{k};")
    lines.append("}")
    return "\n".join(lines) + "\n"
