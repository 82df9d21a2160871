"""Finite probes of open problems translated into coset-monoid language.

A probe searches exhaustively on one monoid and reports what it saw.  A
"candidate" is an instance where the searched-for object does not exist;
it is evidence, not a disproof, and always carries a replayable witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

from .config import Caps
from .inverse_monoid import NO_JOIN, FiniteInverseMonoid
from .nilpotency import NILPOTENT, SOLVABLE, g_lengths
from .series import central_idempotents

NOT_PROBEABLE = {
    "2": "quantifies over torsion-free (hence infinite) groups",
    "5": "quantifies over 2-groups with possibly infinite filters",
}


@dataclass
class ProbeResult:
    problem: str
    group: str
    instances: int = 0
    witnesses: list = field(default_factory=list)
    candidates: list = field(default_factory=list)
    truncated: bool = False
    skipped: Optional[str] = None
    summary: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "problem": self.problem,
            "group": self.group,
            "instances": self.instances,
            "witnesses": self.witnesses,
            "candidates": self.candidates,
            "truncated": self.truncated,
            "skipped": self.skipped,
            "summary": self.summary,
        }


class FilterLengths:
    """G-nilpotent and G-solvable lengths of e^ for each idempotent, memoized."""

    def __init__(self, S: FiniteInverseMonoid):
        self.S = S
        self._cache: dict[int, tuple[Optional[int], Optional[int]]] = {}

    def __call__(self, e: int) -> tuple[Optional[int], Optional[int]]:
        if e not in self._cache:
            F = self.S.filter_up(e).materialize(name=f"{self.S.name}[{e}^]")
            rep = g_lengths(F)
            self._cache[e] = (rep.g_nilpotent_length, rep.g_solvable_length)
        return self._cache[e]

    def has(self, e: int, kind: str) -> bool:
        nil, sol = self(e)
        return (nil if kind == NILPOTENT else sol) is not None


def filter_set(S: FiniteInverseMonoid, e: int) -> frozenset:
    return frozenset(int(x) for x in S.filter_members(e))


def conjugated_filter(S: FiniteInverseMonoid, e: int, g: int) -> frozenset:
    """g^-1 (e^) g, computed elementwise."""
    gi = int(S.inv[g])
    return frozenset(int(S.mul[S.mul[gi, x], g]) for x in S.filter_members(e))


# ------------------------------------------------------------------ problem 1

def replay_problem1(S: FiniteInverseMonoid, w: dict) -> bool:
    """Re-evaluate a stored problem-1 outcome."""
    e = w["e"]
    if w["found"]:
        return filter_set(S, e) & conjugated_filter(S, e, w["g"]) == {S.identity}
    return all(filter_set(S, e) & conjugated_filter(S, e, g) != {S.identity} for g in S.units)


def probe_problem1(S: FiniteInverseMonoid, lengths: Optional[FilterLengths] = None) -> ProbeResult:
    res = ProbeResult("1", S.name)
    if set(central_idempotents(S)) != {S.zero, S.identity}:
        res.skipped = "hypothesis unmet: central idempotents other than 0 and 1 exist (group not simple)"
        return res
    lengths = lengths or FilterLengths(S)
    for e in S.E:
        if not lengths.has(e, NILPOTENT):
            continue
        res.instances += 1
        base = filter_set(S, e)
        hit = next((g for g in S.units if base & conjugated_filter(S, e, g) == {S.identity}), None)
        w = {"e": e, "found": hit is not None, "g": hit}
        res.witnesses.append(w)
        if hit is None:
            res.candidates.append(w)
    res.summary = {"nilpotent_filters": res.instances, "candidates": len(res.candidates)}
    return res


# ------------------------------------------------------------------ problem 3

def replay_problem3(S: FiniteInverseMonoid, w: dict) -> bool:
    e = w["e"]
    if w["found"]:
        sets = [conjugated_filter(S, e, g) for g in w["units"]]
        return len(w["units"]) <= w["k"] and reduce(frozenset.__and__, sets) == {S.identity}
    return _search_problem3(S, e, w["k"], None)[0] is None


def _conjugate_reps(S: FiniteInverseMonoid, e: int) -> dict[int, int]:
    """Distinct conjugates g^-1 e g mapped to one unit g producing each."""
    reps: dict[int, int] = {}
    for g in S.units:
        reps.setdefault(S.conjugate(e, g), g)
    return reps


def _search_problem3(S: FiniteInverseMonoid, e: int, k: int, max_tuples: Optional[int]):
    """Up to k conjugate filters with intersection {1}; the first may be e^ itself."""
    reps = _conjugate_reps(S, e)
    conj = sorted(reps)
    filters = {c: filter_set(S, c) for c in conj}
    target = frozenset({S.identity})
    examined = 0
    # conjugating a solution by g_1^-1 gives one that contains e^ itself
    for r in range(0, k):
        for combo in itertools.combinations([c for c in conj if c != e], r):
            examined += 1
            if max_tuples is not None and examined > max_tuples:
                return None, examined, True
            inter = reduce(frozenset.__and__, (filters[c] for c in combo), filters[e])
            if inter == target:
                return [S.identity] + [reps[c] for c in combo], examined, False
    return None, examined, False


def probe_problem3(S: FiniteInverseMonoid, k: int = 7, caps: Caps = Caps(),
                   lengths: Optional[FilterLengths] = None) -> ProbeResult:
    if k not in (5, 7):
        raise ValueError("k must be 5 or 7")
    res = ProbeResult(f"3(k={k})", S.name)
    lengths = lengths or FilterLengths(S)
    bad = [f for f in central_idempotents(S) if f != S.identity and lengths.has(f, SOLVABLE)]
    if bad:
        res.skipped = f"hypothesis unmet: central idempotent {bad[0]} has a G-solvable filter (solvable normal subgroup)"
        return res
    for e in S.E:
        if not lengths.has(e, SOLVABLE):
            continue
        res.instances += 1
        units, examined, trunc = _search_problem3(S, e, k, caps.max_tuples)
        w = {"e": e, "k": k, "found": units is not None, "units": units, "examined": examined}
        if trunc:
            res.truncated = True
            w["truncated"] = True
        else:
            res.witnesses.append(w)
            if units is None:
                res.candidates.append(w)
    res.summary = {"solvable_filters": res.instances, "candidates": len(res.candidates)}
    return res


# ------------------------------------------------------------------ problem 4a

def replay_problem4a(S: FiniteInverseMonoid, w: dict) -> bool:
    F = S.filter_up(w["e"]).materialize()
    return (g_lengths(S).g_solvable_length == w["d_s"]
            and g_lengths(F).g_solvable_length == w["d_s_filter"]
            and w["difference"] == w["d_s"] - w["d_s_filter"])


def probe_problem4a(S: FiniteInverseMonoid, lengths: Optional[FilterLengths] = None) -> ProbeResult:
    res = ProbeResult("4a", S.name)
    ds = g_lengths(S).g_solvable_length
    if ds is None:
        res.skipped = "hypothesis unmet: monoid is not G-solvable"
        return res
    lengths = lengths or FilterLengths(S)
    for e in S.covers_zero():
        res.instances += 1
        sub = lengths(e)[1]
        res.witnesses.append({"e": e, "d_s": ds, "d_s_filter": sub, "difference": ds - sub})
    diffs = [w["difference"] for w in res.witnesses]
    res.summary = {"d_s": ds, "max_difference": max(diffs) if diffs else None,
                   "primitive_idempotents": res.instances}
    return res


def empirical_k(results: list[ProbeResult]) -> Optional[int]:
    vals = [r.summary["max_difference"] for r in results
            if r.skipped is None and r.summary.get("max_difference") is not None]
    return max(vals) if vals else None


# ------------------------------------------------------------------ problem 6

def product_of(S: FiniteInverseMonoid, xs) -> int:
    """Product in increasing index order (idempotents commute, so order is immaterial)."""
    return reduce(lambda a, b: int(S.mul[a, b]), sorted(xs), S.identity)


def problem6_set(S: FiniteInverseMonoid, e: int, f: int, h: int) -> frozenset:
    """M = {e v f' v h' : f' D f, h' D h}; None entries are impossible in coset monoids."""
    D = S.green_label["D"]
    fs = [x for x in S.E if D[x] == D[f]]
    hs = [x for x in S.E if D[x] == D[h]]
    out = set()
    for a in fs:
        for b in hs:
            j = S.join(e, a)
            j = NO_JOIN if j == NO_JOIN else S.join(j, b)
            if j == NO_JOIN:
                raise ValueError(f"join missing for ({e}, {a}, {b})")
            out.add(j)
    return frozenset(out)


def problem6_targets(S: FiniteInverseMonoid, M: frozenset) -> tuple[int, int]:
    """(max_S, Max_S): product of minimal-|x theta| elements, product of maximal elements."""
    sizes = {x: len(S.theta(x)) for x in M}
    m = min(sizes.values())
    small = [x for x in M if sizes[x] == m]
    maximal = [x for x in M if not any(y != x and S.leq[x, y] for y in M)]
    return product_of(S, small), product_of(S, maximal)


def problem6_outcome(S: FiniteInverseMonoid, e: int, f: int, h: int, kind: str,
                     lengths: FilterLengths) -> dict:
    M = problem6_set(S, e, f, h)
    small, big = problem6_targets(S, M)
    good = [c for c in central_idempotents(S) if lengths.has(c, kind)]
    ca = next((c for c in good if S.leq[c, small]), None)
    cb = next((c for c in good if S.leq[c, big]), None)
    return {"e": e, "f": f, "h": h, "kind": kind, "M": sorted(M), "max_S": small, "Max_S": big,
            "a": ca is not None, "c_a": ca, "b": cb is not None, "c_b": cb}


def replay_problem6(S: FiniteInverseMonoid, w: dict) -> bool:
    got = problem6_outcome(S, w["e"], w["f"], w["h"], w["kind"], FilterLengths(S))
    return got == w


def probe_problem6(S: FiniteInverseMonoid, triples=None, kinds=(NILPOTENT, SOLVABLE),
                   lengths: Optional[FilterLengths] = None) -> ProbeResult:
    """Tabulate outcomes (a) and (b) over idempotent triples (all by default)."""
    res = ProbeResult("6", S.name)
    lengths = lengths or FilterLengths(S)
    if triples is None:
        triples = list(itertools.product(S.E, repeat=3))
    skipped_hyp = 0
    for kind in kinds:
        for e, f, h in triples:
            if not all(lengths.has(x, kind) for x in (e, f, h)):
                skipped_hyp += 1
                continue
            res.instances += 1
            w = problem6_outcome(S, e, f, h, kind, lengths)
            res.witnesses.append(w)
            if not (w["a"] and w["b"]):
                res.candidates.append(w)
    res.summary = {
        "hypothesis_unmet": skipped_hyp,
        "a_holds": sum(w["a"] for w in res.witnesses),
        "b_holds": sum(w["b"] for w in res.witnesses),
        "candidates": len(res.candidates),
    }
    return res


def check_product_order_independent(S: FiniteInverseMonoid, xs) -> bool:
    xs = list(xs)
    first = product_of(S, xs)
    return all(reduce(lambda a, b: int(S.mul[a, b]), p, S.identity) == first
               for p in itertools.islice(itertools.permutations(xs), 120))
