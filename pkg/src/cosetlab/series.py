"""Subcentral and central idempotent series, refinements and factors."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .config import SERIES_CAP
from .inverse_monoid import NO_JOIN, Factor, FiniteInverseMonoid, monoid_isomorphic

KINDS = ("subcentral", "central")


class JoinMissing(ValueError):
    pass


@dataclass(frozen=True)
class IdempotentSeries:
    monoid: FiniteInverseMonoid = field(compare=False, repr=False)
    chain: tuple[int, ...]
    kind: str

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    def steps(self) -> list[tuple[int, int]]:
        return list(zip(self.chain, self.chain[1:]))

    def collapsed(self) -> tuple[int, ...]:
        out = [self.chain[0]]
        for x in self.chain[1:]:
            if x != out[-1]:
                out.append(x)
        return tuple(out)


def admissible(S: FiniteInverseMonoid, x: int, y: int, kind: str) -> bool:
    """May y follow x in a series of the given kind?"""
    if not S.leq[x, y]:
        return False
    if kind == "subcentral":
        return S.is_central_in_filter(y, x)
    if kind == "central":
        return bool(S.central[y])
    raise ValueError(f"unknown series kind {kind!r}")


def is_series(
    S: FiniteInverseMonoid, chain: Iterable[int], kind: str, full: bool = False
) -> tuple[bool, Optional[str]]:
    """Validate a chain from zero; ``full`` also requires it to end at 1."""
    chain = list(chain)
    if not chain:
        return False, "empty chain"
    for x in chain:
        if not S.is_idempotent[x]:
            return False, f"{x} is not idempotent"
    if chain[0] != S.zero:
        return False, f"chain starts at {chain[0]}, not at zero {S.zero}"
    if full and chain[-1] != S.identity:
        return False, f"chain ends at {chain[-1]}, not at identity {S.identity}"
    for i, (x, y) in enumerate(zip(chain, chain[1:])):
        if not S.leq[x, y]:
            return False, f"step {i}: {x} <= {y} fails"
        if not admissible(S, x, y, kind):
            return False, f"step {i}: {y} not central in {'filter of ' + str(x) if kind == 'subcentral' else 'S'}"
    return True, None


def _bfs_subcentral(S: FiniteInverseMonoid, base: int) -> dict[int, Optional[int]]:
    parent: dict[int, Optional[int]] = {base: None}
    queue = deque([base])
    while queue:
        x = queue.popleft()
        for y in S.E:
            if y not in parent and y != x and admissible(S, x, y, "subcentral"):
                parent[y] = x
                queue.append(y)
    return parent


def shortest_subcentral_series(S: FiniteInverseMonoid, e: int, base: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """A shortest subcentral chain base -> e (base defaults to zero)."""
    base = S.zero if base is None else base
    parent = _bfs_subcentral(S, base)
    if e not in parent:
        return None
    path = [e]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def defect(S: FiniteInverseMonoid, e: int, base: Optional[int] = None) -> Optional[int]:
    if not S.is_idempotent[e]:
        raise ValueError(f"{e} is not idempotent")
    path = shortest_subcentral_series(S, e, base)
    return None if path is None else len(path) - 1


def is_subcentral(S: FiniteInverseMonoid, e: int) -> bool:
    return defect(S, e) is not None


def subcentral_idempotents(S: FiniteInverseMonoid) -> tuple[int, ...]:
    reach = _bfs_subcentral(S, S.zero)
    return tuple(e for e in S.E if e in reach)


def central_idempotents(S: FiniteInverseMonoid) -> tuple[int, ...]:
    return tuple(e for e in S.E if S.central[e])


def refine_chain(S: FiniteInverseMonoid, chain: Iterable[int]) -> IdempotentSeries:
    """Splice shortest series of each entry into one subcentral series of S.

    Entry i+1 contributes the terms e_i v x for x along its own shortest series.
    """
    chain = list(chain)
    if not chain or chain[-1] != S.identity:
        chain.append(S.identity)
    paths = []
    for i, e in enumerate(chain):
        if i and not S.leq[chain[i - 1], e]:
            raise ValueError(f"chain not ascending at position {i}")
        p = shortest_subcentral_series(S, e)
        if p is None:
            raise ValueError(f"{e} is not subcentral")
        paths.append(p)
    out = list(paths[0])
    for i in range(len(chain) - 1):
        for x in paths[i + 1][1:]:
            j = S.join(chain[i], x)
            if j == NO_JOIN:
                raise JoinMissing(f"{chain[i]} v {x} does not exist")
            out.append(j)
    return IdempotentSeries(S, tuple(out), "subcentral")


# ------------------------------------------------------------------ factors

class FactorCatalog:
    """Materialized factors F_{e,f} and their isomorphism classes, per monoid."""

    def __init__(self, S: FiniteInverseMonoid):
        self.S = S
        self._factors: dict[tuple[int, int], Factor] = {}
        self._class: dict[tuple[int, int], int] = {}
        self._reps: dict[tuple, list[tuple[int, tuple[int, int]]]] = {}
        self._n_classes = 0

    def factor(self, e: int, f: int) -> Factor:
        key = (e, f)
        if key not in self._factors:
            self._factors[key] = self.S.factor_submonoid(e, f)
        return self._factors[key]

    def iso_class(self, e: int, f: int) -> int:
        key = (e, f)
        if key in self._class:
            return self._class[key]
        M = self.factor(e, f).monoid
        bucket = self._reps.setdefault(M.fingerprint, [])
        for cid, rep in bucket:
            if monoid_isomorphic(M, self.factor(*rep).monoid)[0]:
                self._class[key] = cid
                return cid
        cid = self._n_classes
        self._n_classes += 1
        bucket.append((cid, key))
        self._class[key] = cid
        return cid

    def isomorphic(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        return self.iso_class(*a) == self.iso_class(*b)


@dataclass(frozen=True)
class FactorDescriptor:
    e: int
    f: int
    size: int
    unit_order: int
    fingerprint: tuple
    iso_class: int


def factors(S: FiniteInverseMonoid, series: IdempotentSeries, catalog: Optional[FactorCatalog] = None) -> list[FactorDescriptor]:
    catalog = catalog or FactorCatalog(S)
    out = []
    for e, f in series.steps():
        fac = catalog.factor(e, f)
        M = fac.monoid
        out.append(FactorDescriptor(e, f, M.size, len(fac.units), M.fingerprint, catalog.iso_class(e, f)))
    return out


def _bipartite_matching(n: int, ok) -> Optional[list[int]]:
    match_right = [-1] * n

    def augment(i: int, seen: list[bool]) -> bool:
        for j in range(n):
            if ok(i, j) and not seen[j]:
                seen[j] = True
                if match_right[j] < 0 or augment(match_right[j], seen):
                    match_right[j] = i
                    return True
        return False

    for i in range(n):
        if not augment(i, [False] * n):
            return None
    left = [-1] * n
    for j, i in enumerate(match_right):
        left[i] = j
    return left


def series_isomorphic(
    a: IdempotentSeries, b: IdempotentSeries, catalog: Optional[FactorCatalog] = None
) -> tuple[bool, Optional[list[int]]]:
    """Same length and a factor bijection with pairwise isomorphic factors."""
    if a.length != b.length:
        return False, None
    catalog = catalog or FactorCatalog(a.monoid)
    sa, sb = a.steps(), b.steps()
    m = _bipartite_matching(len(sa), lambda i, j: catalog.isomorphic(sa[i], sb[j]))
    return (m is not None), m


# ------------------------------------------------------------------ Schreier

@dataclass
class SchreierResult:
    first: IdempotentSeries
    second: IdempotentSeries
    pairing: list[tuple[int, int]]  # step index in first <-> step index in second
    pairs_isomorphic: list[bool]

    @property
    def ok(self) -> bool:
        return all(self.pairs_isomorphic)


def schreier_refinement(
    S: FiniteInverseMonoid,
    g1: IdempotentSeries,
    g2: IdempotentSeries,
    catalog: Optional[FactorCatalog] = None,
) -> SchreierResult:
    """Refine two full series to isomorphic series of length m*n.

    Terms: e_ij = e_i (e_{i-1} v f_j) and f_ij = f_j (e_i v f_{j-1}).
    """
    if g1.kind != g2.kind:
        raise ValueError("series kinds differ")
    e, f = g1.chain, g2.chain
    m, n = len(e) - 1, len(f) - 1
    catalog = catalog or FactorCatalog(S)

    def join(x: int, y: int) -> int:
        j = S.join(x, y)
        if j == NO_JOIN:
            raise JoinMissing(f"{x} v {y} does not exist")
        return j

    def e_ij(i: int, j: int) -> int:
        return int(S.mul[e[i], join(e[i - 1], f[j])])

    def f_ij(i: int, j: int) -> int:
        # at i = 0 this is f_j f_{j-1} = f_{j-1}
        return int(S.mul[f[j], join(e[i], f[j - 1])])

    if m == 0 or n == 0:
        ref_e, ref_f = [e[0]], [f[0]]
    else:
        ref_e = [e_ij(1, 0)] + [e_ij(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
        ref_f = [f_ij(0, 1)] + [f_ij(i, j) for j in range(1, n + 1) for i in range(1, m + 1)]
    first = IdempotentSeries(S, tuple(ref_e), g1.kind)
    second = IdempotentSeries(S, tuple(ref_f), g2.kind)
    pairing, iso = [], []
    sa, sb = first.steps(), second.steps()
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            p = (i - 1) * n + (j - 1)
            q = (j - 1) * m + (i - 1)
            pairing.append((p, q))
            valid = admissible(S, *sa[p], g1.kind) and admissible(S, *sb[q], g2.kind)
            iso.append(valid and catalog.isomorphic(sa[p], sb[q]))
    return SchreierResult(first, second, pairing, iso)


# ------------------------------------------------------------------ enumeration

def _covering_steps(S: FiniteInverseMonoid, x: int, kind: str) -> list[int]:
    ups = [y for y in S.E if y != x and admissible(S, x, y, kind)]
    return [y for y in ups if not any(z != y and S.leq[z, y] for z in ups)]


def composition_series(
    S: FiniteInverseMonoid, kind: str, cap: int = SERIES_CAP
) -> tuple[list[IdempotentSeries], bool]:
    """All composition series of the kind (DFS, index order); (series, truncated)."""
    out: list[IdempotentSeries] = []
    truncated = False
    steps_cache: dict[int, list[int]] = {}

    def steps(x: int) -> list[int]:
        if x not in steps_cache:
            steps_cache[x] = _covering_steps(S, x, kind)
        return steps_cache[x]

    def dfs(path: list[int]) -> None:
        nonlocal truncated
        if truncated:
            return
        x = path[-1]
        if x == S.identity:
            if len(out) >= cap:
                truncated = True
                return
            out.append(IdempotentSeries(S, tuple(path), kind))
            return
        for y in steps(x):
            path.append(y)
            dfs(path)
            path.pop()

    dfs([S.zero])
    return out, truncated


def all_full_series(
    S: FiniteInverseMonoid, kind: str, cap: int = SERIES_CAP
) -> tuple[list[IdempotentSeries], bool]:
    """Every strictly ascending full series of the kind, capped."""
    out: list[IdempotentSeries] = []
    truncated = False
    nexts = {x: [y for y in S.E if y != x and admissible(S, x, y, kind)] for x in S.E}

    def dfs(path: list[int]) -> None:
        nonlocal truncated
        if truncated:
            return
        x = path[-1]
        if x == S.identity:
            if len(out) >= cap:
                truncated = True
                return
            out.append(IdempotentSeries(S, tuple(path), kind))
            return
        for y in nexts[x]:
            path.append(y)
            dfs(path)
            path.pop()

    dfs([S.zero])
    return out, truncated


def chain_condition_report(S: FiniteInverseMonoid, cap: int = SERIES_CAP) -> dict:
    """Finite monoids satisfy both chain conditions; composition series must exist."""
    report = {
        "E_c": len(central_idempotents(S)),
        "E_sc": len(subcentral_idempotents(S)),
        "acc_dcc": True,
    }
    for kind in KINDS:
        series, truncated = composition_series(S, kind, cap=cap)
        report[f"{kind}_composition_exists"] = bool(series)
        report[f"{kind}_composition_count"] = len(series)
        report[f"{kind}_truncated"] = truncated
    return report
