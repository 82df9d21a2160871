"""Extensional checks of the structural lemmas on a finite inverse monoid.

Every check returns a :class:`CheckResult`.  Hypotheses that a monoid does
not satisfy produce ``skipped`` with a reason, never a silent pass.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .config import Caps
from .group_core import CapExceeded, conjugate_set, is_normal
from .inverse_monoid import NO_JOIN, FiniteInverseMonoid, MonoidAxiomError, monoid_isomorphic
from .series import (
    KINDS,
    FactorCatalog,
    JoinMissing,
    all_full_series,
    chain_condition_report,
    composition_series,
    is_series,
    refine_chain,
    schreier_refinement,
    series_isomorphic,
    shortest_subcentral_series,
    subcentral_idempotents,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    status: str
    instances: int = 0
    witness: Any = None
    reason: Optional[str] = None
    notes: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def as_dict(self) -> dict:
        out: dict = {"status": self.status, "instances": self.instances}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.reason is not None:
            out["reason"] = self.reason
        if self.notes:
            out["notes"] = _jsonable(self.notes)
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if hasattr(x, "item"):
        return x.item()
    return x


def passed(n: int, **notes) -> CheckResult:
    return CheckResult(PASS, n, notes=notes)


def failed(n: int, witness) -> CheckResult:
    return CheckResult(FAIL, n, witness=witness)


def skipped(reason: str, n: int = 0) -> CheckResult:
    return CheckResult(SKIPPED, n, reason=reason)


def _needs_factorizable(S: FiniteInverseMonoid) -> Optional[CheckResult]:
    if not S.is_factorizable:
        return skipped("monoid is not factorizable")
    return None


def _needs_dual_iso(S: FiniteInverseMonoid) -> Optional[CheckResult]:
    ok, why = S.is_dual_isomorphism()
    return None if ok else skipped(f"theta is not a dual isomorphism: {why}")


def _central_pairs(S: FiniteInverseMonoid) -> list[tuple[int, int]]:
    """(e, f) with e <= f and f central in the filter of e."""
    return [(e, f) for e in S.E for f in S.E if S.leq[e, f] and S.is_central_in_filter(f, e)]


# ------------------------------------------------------------------ filters and factors

def fgeq_i(S: FiniteInverseMonoid) -> CheckResult:
    """The filter of e equals [e, 1] . theta(e)."""
    if (r := _needs_factorizable(S)):
        return r
    for e in S.E:
        lhs = frozenset(int(x) for x in S.filter_members(e))
        rhs = S.products(S.interval(e, S.identity), S.theta_units(e))
        if lhs != rhs:
            return failed(len(S.E), {"e": e, "only_filter": lhs - rhs, "only_product": rhs - lhs})
    return passed(len(S.E))


def fgeq_ii(S: FiniteInverseMonoid) -> CheckResult:
    """eS equals [0, e] . G."""
    if (r := _needs_factorizable(S)):
        return r
    for e in S.E:
        lhs = frozenset(int(x) for x in S.mul[e])
        rhs = S.products(S.interval(S.zero, e), S.units)
        if lhs != rhs:
            return failed(len(S.E), {"e": e})
    return passed(len(S.E))


def fgeq_iii(S: FiniteInverseMonoid) -> CheckResult:
    """F_{e,f} = [e,f] . theta(e) with identity f and units f . theta(e)."""
    if (r := _needs_factorizable(S)):
        return r
    pairs = _central_pairs(S)
    for e, f in pairs:
        fac = S.factor_submonoid(e, f)
        members = frozenset(fac.view.members)
        if members != S.interval_product(e, f):
            return failed(len(pairs), {"e": e, "f": f, "part": "factor"})
        if any(int(S.mul[f, s]) != s or int(S.mul[s, f]) != s for s in members):
            return failed(len(pairs), {"e": e, "f": f, "part": "identity"})
        units = frozenset(s for s in members if S.rdom[s] == f and S.ldom[s] == f)
        if units != frozenset(fac.units):
            return failed(len(pairs), {"e": e, "f": f, "part": "units"})
    return passed(len(pairs))


# ------------------------------------------------------------------ theta and centrality

def thecon_i(S: FiniteInverseMonoid) -> CheckResult:
    """theta(g^-1 e g) = g^-1 theta(e) g."""
    G = S.unit_group
    n = 0
    for e in S.E:
        for gi, g in enumerate(S.units):
            n += 1
            lhs = S.theta(S.conjugate(e, g))
            rhs = conjugate_set(G, S.theta(e), gi)
            if lhs != rhs:
                return failed(n, {"e": e, "g": g})
    return passed(n)


def thecon_ii(S: FiniteInverseMonoid) -> CheckResult:
    """With theta injective: e central iff theta(e) normal in the units."""
    if (r := _needs_factorizable(S)):
        return r
    images = [S.theta(e) for e in S.E]
    if len(set(images)) != len(images):
        return skipped("theta is not injective")
    G = S.unit_group
    for e, th in zip(S.E, images):
        if bool(S.central[e]) != is_normal(th, G.all, G):
            return failed(len(S.E), {"e": e})
    return passed(len(S.E))


def thecon_iii(S: FiniteInverseMonoid) -> CheckResult:
    """e central: e v f central in the filter of f, and central in S when f is."""
    if (r := _needs_factorizable(S)):
        return r
    n = missing = 0
    for e in S.E:
        if not S.central[e]:
            continue
        for f in S.E:
            j = S.join(e, f)
            if j == NO_JOIN:
                missing += 1
                continue
            n += 1
            if not S.is_central_in_filter(j, f):
                return failed(n, {"e": e, "f": f, "part": "filter"})
            if S.central[f] and not S.central[j]:
                return failed(n, {"e": e, "f": f, "part": "S"})
    return passed(n, missing_joins=missing)


def thecon_iv(S: FiniteInverseMonoid) -> CheckResult:
    """e1 central in the filter of e2: e1 v f central in the filter of e2 v f."""
    if (r := _needs_factorizable(S)):
        return r
    n = missing = 0
    for e2, e1 in _central_pairs(S):
        for f in S.E:
            a, b = S.join(e1, f), S.join(e2, f)
            if a == NO_JOIN or b == NO_JOIN:
                missing += 1
                continue
            n += 1
            if not (S.leq[b, a] and S.is_central_in_filter(a, b)):
                return failed(n, {"e1": e1, "e2": e2, "f": f})
    return passed(n, missing_joins=missing)


def thecon_v(S: FiniteInverseMonoid) -> CheckResult:
    """e1 central in the filter of e2, f central in S: e1 f central in the filter of e2 f."""
    if (r := _needs_dual_iso(S)):
        return r
    n = 0
    central = [f for f in S.E if S.central[f]]
    for e2, e1 in _central_pairs(S):
        for f in central:
            n += 1
            a, b = int(S.mul[e1, f]), int(S.mul[e2, f])
            if not (S.leq[b, a] and S.is_central_in_filter(a, b)):
                return failed(n, {"e1": e1, "e2": e2, "f": f})
    return passed(n)


def phie(S: FiniteInverseMonoid) -> CheckResult:
    """a -> f a is a homomorphism of the filter of e into itself with image F_{e,f}."""
    pairs = _central_pairs(S)
    for e, f in pairs:
        phi = S.phi_homomorphism(e, f)
        if not phi.is_homomorphism(S):
            return failed(len(pairs), {"e": e, "f": f, "part": "homomorphism"})
        if phi.image != frozenset(S.factor_submonoid(e, f).view.members):
            return failed(len(pairs), {"e": e, "f": f, "part": "image"})
        if not all(S.leq[e, x] for x in phi.image):
            return failed(len(pairs), {"e": e, "f": f, "part": "codomain"})
    return passed(len(pairs))


# ------------------------------------------------------------------ isomorphism lemmas

def iso2(S: FiniteInverseMonoid, caps: Caps = Caps()) -> CheckResult:
    """For rho = rho_{e,f} on the filter of e and T = filter of h (h >= e):
    the saturation U of T is an inverse submonoid and U/rho_U = T/rho_T."""
    n = 0
    truncated = False
    for e, f in _central_pairs(S):
        filt = [int(x) for x in S.filter_members(e)]
        key = lambda x, f=f: int(S.mul[f, x])
        for h in S.interval(e, S.identity):
            if n >= caps.series_pairs:
                truncated = True
                break
            n += 1
            T = [int(x) for x in S.filter_members(h)]
            tkeys = {key(t) for t in T}
            U = [x for x in filt if key(x) in tkeys]
            Uset = set(U)
            if not S.products(U, U) <= Uset or any(int(S.inv[x]) not in Uset for x in U):
                return failed(n, {"e": e, "f": f, "h": h, "part": "U not inverse submonoid"})
            try:
                QU = S.quotient(U, key)
                QT = S.quotient(T, key)
            except MonoidAxiomError as err:
                return failed(n, {"e": e, "f": f, "h": h, "part": str(err)})
            if QU.size != QT.size or not monoid_isomorphic(QU, QT, cap=caps.isomorphism)[0]:
                return failed(n, {"e": e, "f": f, "h": h, "part": "quotients differ"})
    res = passed(n)
    if truncated:
        res.notes["truncated_at"] = caps.series_pairs
    return res


def iso2pe_i(S: FiniteInverseMonoid, catalog: Optional[FactorCatalog] = None) -> CheckResult:
    """e central, e v f exists: F_{f, e v f} = F_{ef, e}."""
    if (r := _needs_dual_iso(S)):
        return r
    catalog = catalog or FactorCatalog(S)
    n = missing = 0
    for e in S.E:
        if not S.central[e]:
            continue
        for f in S.E:
            j = S.join(e, f)
            if j == NO_JOIN:
                missing += 1
                continue
            n += 1
            ef = int(S.mul[e, f])
            if not (S.is_central_in_filter(j, f) and S.is_central_in_filter(e, ef)):
                return failed(n, {"e": e, "f": f, "part": "precondition"})
            if not catalog.isomorphic((f, j), (ef, e)):
                return failed(n, {"e": e, "f": f})
    return passed(n, missing_joins=missing)


def iso2pe_ii(S: FiniteInverseMonoid, catalog: Optional[FactorCatalog] = None) -> CheckResult:
    """Zassenhaus-type step: the two refined factors are central and isomorphic."""
    if (r := _needs_dual_iso(S)):
        return r
    catalog = catalog or FactorCatalog(S)
    pairs = _central_pairs(S)
    n = missing = 0
    for (e, e1), (f, f1) in itertools.product(pairs, repeat=2):
        joins = (S.join(e, f), S.join(e, f1), S.join(e1, f))
        if NO_JOIN in joins:
            missing += 1
            continue
        n += 1
        ef, ef1, e1f = joins
        a_lo, a_hi = int(S.mul[e1, ef]), int(S.mul[e1, ef1])
        b_lo, b_hi = int(S.mul[f1, ef]), int(S.mul[f1, e1f])
        if not (S.leq[a_lo, a_hi] and S.is_central_in_filter(a_hi, a_lo)):
            return failed(n, {"e": e, "e1": e1, "f": f, "f1": f1, "part": "first centrality"})
        if not (S.leq[b_lo, b_hi] and S.is_central_in_filter(b_hi, b_lo)):
            return failed(n, {"e": e, "e1": e1, "f": f, "f1": f1, "part": "second centrality"})
        if not catalog.isomorphic((a_lo, a_hi), (b_lo, b_hi)):
            return failed(n, {"e": e, "e1": e1, "f": f, "f1": f1, "part": "isomorphism"})
    return passed(n, missing_joins=missing)


# ------------------------------------------------------------------ series

def subcs(S: FiniteInverseMonoid) -> CheckResult:
    """(i) e subcentral gives e v f subcentral in the filter of f;
    (ii) chains of subcentral idempotents refine to full subcentral series."""
    if (r := _needs_factorizable(S)):
        return r
    sc = subcentral_idempotents(S)
    n = 0
    lattice = all(S.join(a, b) != NO_JOIN for a in S.E for b in S.E)
    if lattice:
        for e in sc:
            for f in S.E:
                n += 1
                if shortest_subcentral_series(S, S.join(e, f), base=f) is None:
                    return failed(n, {"part": "i", "e": e, "f": f})
    if (r := _needs_dual_iso(S)):
        return passed(n, part_ii="skipped: " + r.reason)
    chains = [(e,) for e in sc] + [(a, b) for a in sc for b in sc if a != b and S.leq[a, b]]
    for chain in chains:
        n += 1
        try:
            ser = refine_chain(S, chain)
        except JoinMissing as err:
            return failed(n, {"part": "ii", "chain": chain, "error": str(err)})
        ok, why = is_series(S, ser.chain, "subcentral", full=True)
        if not ok or not set(chain) <= set(ser.chain):
            return failed(n, {"part": "ii", "chain": chain, "series": ser.chain, "why": why})
    return passed(n, lattice=lattice)


def schre(S: FiniteInverseMonoid, caps: Caps = Caps(), catalog: Optional[FactorCatalog] = None) -> CheckResult:
    """Every pair of full series has isomorphic refinements of length m*n."""
    if (r := _needs_dual_iso(S)):
        return r
    catalog = catalog or FactorCatalog(S)
    n = 0
    notes: dict = {}
    for kind in KINDS:
        series, truncated = all_full_series(S, kind, cap=caps.full_series)
        if truncated:
            notes[f"{kind}_series_truncated_at"] = caps.full_series
        for a, b in itertools.combinations_with_replacement(series, 2):
            if n >= caps.series_pairs:
                notes["pairs_truncated_at"] = caps.series_pairs
                break
            n += 1
            res = schreier_refinement(S, a, b, catalog)
            m = a.length * b.length
            if res.first.length != m or res.second.length != m:
                return failed(n, {"kind": kind, "a": a.chain, "b": b.chain, "part": "length"})
            for orig, ref in ((a, res.first), (b, res.second)):
                ok, why = is_series(S, ref.chain, kind, full=True)
                if not ok:
                    return failed(n, {"kind": kind, "a": a.chain, "b": b.chain, "part": why})
                if not set(orig.chain) <= set(ref.chain):
                    return failed(n, {"kind": kind, "a": a.chain, "b": b.chain, "part": "not a refinement"})
            if not res.ok:
                return failed(n, {"kind": kind, "a": a.chain, "b": b.chain, "part": "pairing"})
    return passed(n, **notes)


def jorh(S: FiniteInverseMonoid, caps: Caps = Caps(), catalog: Optional[FactorCatalog] = None) -> CheckResult:
    """All pairs of composition series of each kind are isomorphic."""
    if (r := _needs_dual_iso(S)):
        return r
    catalog = catalog or FactorCatalog(S)
    n = 0
    notes: dict = {}
    for kind in KINDS:
        series, truncated = composition_series(S, kind, cap=caps.series)
        notes[f"{kind}_count"] = len(series)
        if truncated:
            notes[f"{kind}_truncated_at"] = caps.series
        for a, b in itertools.combinations(series, 2):
            if n >= caps.series_pairs:
                notes["pairs_truncated_at"] = caps.series_pairs
                break
            n += 1
            if not series_isomorphic(a, b, catalog)[0]:
                return failed(n, {"kind": kind, "a": a.chain, "b": b.chain})
    return passed(n, **notes)


def jorhex(S: FiniteInverseMonoid, caps: Caps = Caps()) -> CheckResult:
    """Finite monoids satisfy ACC/DCC; composition series of both kinds exist."""
    rep = chain_condition_report(S, cap=caps.series)
    for kind in KINDS:
        if not rep[f"{kind}_composition_exists"]:
            return failed(1, {"kind": kind, "report": rep})
    return passed(1, **rep)


LEMMA_CHECKS: dict[str, Callable[..., CheckResult]] = {
    "fgeq-i": fgeq_i,
    "fgeq-ii": fgeq_ii,
    "fgeq-iii": fgeq_iii,
    "thecon-i": thecon_i,
    "thecon-ii": thecon_ii,
    "thecon-iii": thecon_iii,
    "thecon-iv": thecon_iv,
    "thecon-v": thecon_v,
    "phie": phie,
    "iso2": iso2,
    "iso2pe-i": iso2pe_i,
    "iso2pe-ii": iso2pe_ii,
    "subcs": subcs,
    "schre": schre,
    "jorh": jorh,
    "jorhex": jorhex,
}


def run_lemma_checks(S: FiniteInverseMonoid, caps: Caps = Caps()) -> dict[str, CheckResult]:
    catalog = FactorCatalog(S)
    out = {}
    for name, fn in LEMMA_CHECKS.items():
        kwargs: dict = {}
        if "caps" in fn.__code__.co_varnames:
            kwargs["caps"] = caps
        if "catalog" in fn.__code__.co_varnames:
            kwargs["catalog"] = catalog
        try:
            out[name] = fn(S, **kwargs)
        except CapExceeded as err:
            out[name] = skipped(f"cap exceeded: {err}")
    return out
