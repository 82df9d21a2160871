"""G-nilpotent and G-solvable series, their lengths, and the related checks.

A chain 0 = e_0 <= ... <= e_n = 1 of central idempotents is G-nilpotent
when every factor F_{e_i,e_{i+1}} lies in the centre of e_{i+1}S, and
G-solvable when every factor is commutative.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .group_core import (
    FiniteGroup,
    commutator_subgroup,
    derived_length,
    from_table,
    group_isomorphism,
    is_normal,
    nilpotency_class,
    quotient_group,
    subgroup_as_group,
)
from .inverse_monoid import FiniteInverseMonoid, PreconditionError
from .series import (
    central_idempotents,
    defect,
    is_series,
)

NILPOTENT = "nilpotent"
SOLVABLE = "solvable"


class StepOracle:
    """Memoized per-step factor conditions for one monoid."""

    def __init__(self, S: FiniteInverseMonoid):
        self.S = S
        self._nil: dict[tuple[int, int], bool] = {}
        self._sol: dict[tuple[int, int], bool] = {}
        self._zcentre: dict[int, frozenset] = {}

    def _factor_members(self, e: int, f: int) -> tuple[int, ...]:
        return self.S.factor_submonoid(e, f).view.members

    def centre_of_principal(self, f: int) -> frozenset:
        """Z(F_{0,f}) with F_{0,f} = fS, membership intrinsic to the view."""
        if f not in self._zcentre:
            self._zcentre[f] = frozenset(self.S.principal_view(f).centre())
        return self._zcentre[f]

    def nilpotent_step(self, e: int, f: int) -> bool:
        key = (e, f)
        if key not in self._nil:
            members = self._factor_members(e, f)
            self._nil[key] = frozenset(members) <= self.centre_of_principal(f)
        return self._nil[key]

    def solvable_step(self, e: int, f: int) -> bool:
        key = (e, f)
        if key not in self._sol:
            members = self._factor_members(e, f)
            self._sol[key] = len(self.S.centre(members)) == len(members)
        return self._sol[key]

    def step(self, e: int, f: int, kind: str) -> bool:
        return self.nilpotent_step(e, f) if kind == NILPOTENT else self.solvable_step(e, f)


def _check_central_chain(S: FiniteInverseMonoid, chain) -> None:
    for x in chain:
        if not (S.is_idempotent[x] and S.central[x]):
            raise PreconditionError(f"chain entry {x} is not a central idempotent")
    ok, why = is_series(S, chain, "central", full=True)
    if not ok:
        raise PreconditionError(why)


def is_g_nilpotent_series(S: FiniteInverseMonoid, chain, oracle: Optional[StepOracle] = None) -> bool:
    _check_central_chain(S, chain)
    oracle = oracle or StepOracle(S)
    return all(oracle.nilpotent_step(e, f) for e, f in zip(chain, chain[1:]))


def is_g_solvable_series(S: FiniteInverseMonoid, chain, oracle: Optional[StepOracle] = None) -> bool:
    _check_central_chain(S, chain)
    oracle = oracle or StepOracle(S)
    return all(oracle.solvable_step(e, f) for e, f in zip(chain, chain[1:]))


def shortest_series(S: FiniteInverseMonoid, kind: str, oracle: Optional[StepOracle] = None) -> Optional[tuple[int, ...]]:
    """BFS over central idempotents from 0 to 1 along admissible steps."""
    oracle = oracle or StepOracle(S)
    Ec = central_idempotents(S)
    parent: dict[int, Optional[int]] = {S.zero: None}
    queue = deque([S.zero])
    while queue:
        x = queue.popleft()
        if x == S.identity:
            break
        for y in Ec:
            if y in parent or y == x or not S.leq[x, y]:
                continue
            if oracle.step(x, y, kind):
                parent[y] = x
                queue.append(y)
    if S.identity not in parent:
        return None
    path = [S.identity]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


@dataclass
class ClassificationReport:
    name: str
    g_nilpotent: bool
    g_nilpotent_length: Optional[int]
    g_solvable: bool
    g_solvable_length: Optional[int]
    nilpotent_witness: Optional[tuple[int, ...]]
    solvable_witness: Optional[tuple[int, ...]]
    unit_nilpotency_class: Optional[int]
    unit_derived_length: Optional[int]
    commutative: bool
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "monoid": self.name,
            "g_nilpotent": self.g_nilpotent,
            "g_nilpotent_length": self.g_nilpotent_length,
            "g_solvable": self.g_solvable,
            "g_solvable_length": self.g_solvable_length,
            "nilpotent_witness": list(self.nilpotent_witness) if self.nilpotent_witness else None,
            "solvable_witness": list(self.solvable_witness) if self.solvable_witness else None,
            "unit_nilpotency_class": self.unit_nilpotency_class,
            "unit_derived_length": self.unit_derived_length,
            "commutative": self.commutative,
            "notes": self.notes,
        }


def g_lengths(S: FiniteInverseMonoid, oracle: Optional[StepOracle] = None) -> ClassificationReport:
    oracle = oracle or StepOracle(S)
    nil = shortest_series(S, NILPOTENT, oracle)
    sol = shortest_series(S, SOLVABLE, oracle)
    U = S.unit_group
    notes = []
    if not S.is_dual_isomorphism()[0]:
        notes.append("theta is not a dual isomorphism; theorems are not asserted")
    return ClassificationReport(
        name=S.name,
        g_nilpotent=nil is not None,
        g_nilpotent_length=None if nil is None else len(nil) - 1,
        g_solvable=sol is not None,
        g_solvable_length=None if sol is None else len(sol) - 1,
        nilpotent_witness=nil,
        solvable_witness=sol,
        unit_nilpotency_class=nilpotency_class(U),
        unit_derived_length=derived_length(U),
        commutative=S.is_commutative,
        notes=notes,
    )


def central_chains(S: FiniteInverseMonoid, cap: int = 2000) -> tuple[list[tuple[int, ...]], bool]:
    """Strictly ascending chains of central idempotents from 0 to 1."""
    Ec = central_idempotents(S)
    out: list[tuple[int, ...]] = []
    truncated = False

    def dfs(path: list[int]) -> None:
        nonlocal truncated
        if truncated:
            return
        x = path[-1]
        if x == S.identity:
            if len(out) >= cap:
                truncated = True
            else:
                out.append(tuple(path))
            return
        for y in Ec:
            if y != x and S.leq[x, y]:
                path.append(y)
                dfs(path)
                path.pop()

    dfs([S.zero])
    return out, truncated


# ------------------------------------------------------------------ group side

def unit_index(S: FiniteInverseMonoid, x: int) -> int:
    return S.unit_pos[x]


def uf_criterion(S: FiniteInverseMonoid, e: int, f: int, kind: str) -> bool:
    """UF_{e,f} inside Z(S) (nilpotent) or abelian (solvable)."""
    units = S.factor_submonoid(e, f).units
    if kind == NILPOTENT:
        return all(S.central[u] for u in units)
    return len(S.centre(units)) == len(units)


def _central_quotient(G: FiniteGroup, upper: frozenset, lower: frozenset) -> bool:
    """upper/lower <= Z(G/lower), i.e. [upper, G] <= lower."""
    return commutator_subgroup(upper, G.all, G).members <= lower


def _abelian_quotient(G: FiniteGroup, upper: frozenset, lower: frozenset) -> bool:
    return commutator_subgroup(upper, upper, G).members <= lower


def theta_series_length(S: FiniteInverseMonoid, kind: str) -> Optional[int]:
    """Shortest central (resp. abelian) series of U made of normal subgroups in E theta."""
    G = S.unit_group
    image = sorted({S.theta(e) for e in S.E}, key=lambda m: (-len(m), sorted(m)))
    normal = [m for m in image if is_normal(m, G.all, G)]
    top, bottom = G.all, G.trivial
    if top not in normal or bottom not in normal:
        return None
    test = _central_quotient if kind == NILPOTENT else _abelian_quotient
    dist = {top: 0}
    queue = deque([top])
    while queue:
        x = queue.popleft()
        if x == bottom:
            return dist[x]
        for y in normal:
            if y not in dist and y < x and test(G, x, y):
                dist[y] = dist[x] + 1
                queue.append(y)
    return None


# ------------------------------------------------------------------ checks
# Each returns (ok, witness-or-None, instances examined).

def nseq_check(S: FiniteInverseMonoid, chain, oracle: Optional[StepOracle] = None) -> tuple[bool, Optional[tuple]]:
    """Factor-based and unit-group-based criteria agree on this chain."""
    oracle = oracle or StepOracle(S)
    for kind in (NILPOTENT, SOLVABLE):
        by_factor = all(oracle.step(e, f, kind) for e, f in zip(chain, chain[1:]))
        by_units = all(uf_criterion(S, e, f, kind) for e, f in zip(chain, chain[1:]))
        if by_factor != by_units:
            return False, (kind, tuple(chain), by_factor, by_units)
    return True, None


def sei_check(S: FiniteInverseMonoid, chains=None, oracle: Optional[StepOracle] = None) -> tuple[bool, Optional[tuple], int]:
    """Idempotents inside a G-nilpotent step are central, and inserting one keeps the series G-nilpotent."""
    oracle = oracle or StepOracle(S)
    if chains is None:
        chains, _ = central_chains(S)
    n = 0
    for chain in chains:
        if not all(oracle.nilpotent_step(e, f) for e, f in zip(chain, chain[1:])):
            continue
        for i, (e, f) in enumerate(zip(chain, chain[1:])):
            for x in S.interval(e, f):
                n += 1
                if not S.central[x]:
                    return False, ("not central", chain, x), n
                new = chain[: i + 1] + (x,) + chain[i + 1 :]
                if not all(oracle.nilpotent_step(a, b) for a, b in zip(new, new[1:])):
                    return False, ("insertion breaks series", chain, x), n
    return True, None, n


def nsl1eq_check(rep: ClassificationReport) -> tuple[bool, Optional[tuple]]:
    """Length at most 1 for either kind iff commutative (trivial monoid has length 0)."""
    a = rep.g_nilpotent_length is not None and rep.g_nilpotent_length <= 1
    b = rep.g_solvable_length is not None and rep.g_solvable_length <= 1
    c = rep.commutative
    return (a == b == c), (None if a == b == c else (a, b, c))


def gnilu_check(S: FiniteInverseMonoid, rep: ClassificationReport) -> tuple[bool, Optional[tuple]]:
    """Unit group and every maximal subgroup H_e obey the length bound."""
    if rep.g_nilpotent:
        n = rep.g_nilpotent_length
        c = rep.unit_nilpotency_class
        if c is None or c > n:
            return False, ("units nilpotency", c, n)
    if rep.g_solvable:
        n = rep.g_solvable_length
        d = rep.unit_derived_length
        if d is None or d > n:
            return False, ("units derived length", d, n)
    return gnilu_subgroup_bound_check(S, rep)


def h_class_group(S: FiniteInverseMonoid, e: int) -> FiniteGroup:
    cls = S.h_class(e)
    pos = {x: i for i, x in enumerate(cls)}
    table = [[pos[int(S.mul[a, b])] for b in cls] for a in cls]
    return from_table(table, [S.labels[x] for x in cls], name=f"H_{e}")


def gnilu_subgroup_bound_check(S: FiniteInverseMonoid, rep: ClassificationReport) -> tuple[bool, Optional[tuple]]:
    for e in S.E:
        H = h_class_group(S, e)
        if rep.g_nilpotent:
            c = nilpotency_class(H)
            if c is None or c > rep.g_nilpotent_length:
                return False, ("H-class nilpotency", e, c)
        if rep.g_solvable:
            d = derived_length(H)
            if d is None or d > rep.g_solvable_length:
                return False, ("H-class derived length", e, d)
    return True, None


def stabilizer(S: FiniteInverseMonoid, e: int) -> frozenset:
    """N_e = {g : g^{-1} e g = e}, as unit-group indices."""
    return frozenset(i for i, g in enumerate(S.units) if S.conjugate(e, g) == e)


def fasec_check(S: FiniteInverseMonoid) -> tuple[bool, Optional[tuple], int]:
    """H_e is isomorphic to N_e / (e theta cap N_e) for every idempotent."""
    G = S.unit_group
    for e in S.E:
        H = h_class_group(S, e)
        N = stabilizer(S, e)
        NG = subgroup_as_group(G, N)
        pos = {x: i for i, x in enumerate(sorted(N))}
        kernel = frozenset(pos[x] for x in S.theta(e) & N)
        Q = quotient_group(NG, kernel)
        if group_isomorphism(H, Q) is None:
            return False, (e, H.order, Q.order), len(S.E)
    return True, None, len(S.E)


def niliff_check(S: FiniteInverseMonoid, rep: Optional[ClassificationReport] = None) -> tuple[bool, Optional[tuple]]:
    """Monoid-side verdicts match the unit group plus an E-theta series search."""
    rep = rep or g_lengths(S)
    G = S.unit_group
    for kind, verdict, length, group_ok in (
        (NILPOTENT, rep.g_nilpotent, rep.g_nilpotent_length, nilpotency_class(G) is not None),
        (SOLVABLE, rep.g_solvable, rep.g_solvable_length, derived_length(G) is not None),
    ):
        theta_len = theta_series_length(S, kind)
        rhs = group_ok and theta_len is not None
        if verdict != rhs:
            return False, (kind, verdict, group_ok, theta_len)
        if verdict and theta_len != length:
            return False, (kind, "length", length, theta_len)
    return True, None


def snchr_check(G: FiniteGroup, S: FiniteInverseMonoid, rep: Optional[ClassificationReport] = None) -> tuple[bool, Optional[tuple]]:
    """Class and derived length of G equal the G-lengths of K(G)."""
    rep = rep or g_lengths(S)
    got = (rep.g_nilpotent_length, rep.g_solvable_length)
    want = (nilpotency_class(G), derived_length(G))
    return got == want, (None if got == want else (got, want))


def aabtrans_check(S: FiniteInverseMonoid) -> tuple[bool, Optional[tuple], int]:
    """Anti-abnormality composes along e >= f >= g."""
    E = S.E
    aa: dict[tuple[int, int], bool] = {}
    for x in E:
        view = S.filter_up(x)
        for y in E:
            if S.leq[x, y]:
                aa[(y, x)] = S.is_anti_abnormal(y, view)
    n = 0
    for g in E:
        for f in E:
            if not S.leq[g, f]:
                continue
            for e in E:
                if not S.leq[f, e]:
                    continue
                if aa[(e, f)] and aa[(f, g)]:
                    n += 1
                    if not aa[(e, g)]:
                        return False, (e, f, g), n
    return True, None, n


def subcanti_check(S: FiniteInverseMonoid) -> tuple[bool, Optional[tuple], int]:
    from .series import subcentral_idempotents

    sc = subcentral_idempotents(S)
    for e in sc:
        if not S.is_anti_abnormal(e):
            return False, (e,), len(sc)
    return True, None, len(sc)


def nilsubc_check(S: FiniteInverseMonoid, rep: Optional[ClassificationReport] = None) -> tuple[bool, Optional[tuple]]:
    """Parts (i)-(iii): every idempotent subcentral, with the f_i = e_i f witness."""
    rep = rep or g_lengths(S)
    if not rep.g_nilpotent:
        raise PreconditionError("monoid is not G-nilpotent")
    chain = rep.nilpotent_witness
    for f in S.E:
        if defect(S, f) is None:
            return False, ("not subcentral", f)
        witness = tuple(int(S.mul[e, f]) for e in chain)
        ok, why = is_series(S, witness, "subcentral")
        if not ok or witness[-1] != f:
            return False, ("witness chain", f, witness, why)
    for f in S.E:
        if f == S.zero:
            continue
        if not any(e != f and S.leq[e, f] and S.is_central_in_filter(f, e) for e in S.E):
            return False, ("no lower e", f)
    for f in S.covers_zero():
        if not S.central[f]:
            return False, ("0-minimal not central", f)
    return True, None
