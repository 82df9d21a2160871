"""The coset monoid K(G): all right cosets of all subgroups.

Product rule: ``Ha * Kb = <H, a K a^{-1}> ab``.  Zero is G, identity is {1},
and the idempotents are exactly the subgroups themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .config import MONOID_SIZE_CAP
from .group_core import CapExceeded
from .inverse_monoid import validate_inverse_monoid
from .isomorphism import find_isomorphism
from .subgroup_lattice import SubgroupLattice, enumerate_subgroups


@dataclass(frozen=True)
class CosetElement:
    subgroup: int
    representative: int  # minimal element index of the coset
    members: frozenset


class CosetMonoid:
    """K(G) together with the group/monoid dictionary."""

    def __init__(self, lattice: SubgroupLattice, subgroup_ids: Optional[Iterable[int]] = None):
        self.lattice = lattice
        G = lattice.group
        ids = range(len(lattice)) if subgroup_ids is None else sorted(set(subgroup_ids))
        self.subgroup_ids = tuple(ids)
        elements: list[CosetElement] = []
        for h in self.subgroup_ids:
            H = lattice.members[h]
            seen = set()
            cosets = []
            for a in G.elements:
                if a in seen:
                    continue
                c = frozenset(int(G.mul[x, a]) for x in H)
                seen |= c
                cosets.append(CosetElement(h, min(c), c))
            elements.extend(sorted(cosets, key=lambda c: c.representative))
        if len(elements) > MONOID_SIZE_CAP:
            raise CapExceeded(f"coset monoid size {len(elements)} exceeds cap {MONOID_SIZE_CAP}")
        self.elements = elements
        self.index = {(c.subgroup, c.representative): i for i, c in enumerate(elements)}
        # coset_of[h][g] = monoid index of the coset Hg
        self.coset_of = {}
        for i, c in enumerate(elements):
            row = self.coset_of.setdefault(c.subgroup, np.full(G.order, -1, dtype=np.int64))
            row[list(c.members)] = i
        # vectorized form of product(): coset of <H, a K a^-1> containing ab
        cosets = np.full((len(lattice), G.order), -1, dtype=np.int64)
        for h, row in self.coset_of.items():
            cosets[h] = row
        sub = np.array([c.subgroup for c in elements], dtype=np.int64)
        rep = np.array([c.representative for c in elements], dtype=np.int64)
        k_conj = lattice.conj[sub[None, :], G.inv[rep][:, None]]
        joined = lattice.join[sub[:, None], k_conj]
        table = cosets[joined, G.mul[rep[:, None], rep[None, :]]]
        self.idempotent_of = {h: int(self.coset_of[h][G.identity]) for h in self.subgroup_ids}
        self.subgroup_of_idempotent = {v: k for k, v in self.idempotent_of.items()}
        labels = [self._label(c) for c in elements]
        self.monoid = validate_inverse_monoid(
            table,
            identity=self.idempotent_of[lattice.trivial],
            zero=self.idempotent_of[lattice.top],
            labels=labels,
            name=f"K({G.name})" if subgroup_ids is None else f"K'({G.name})",
        )

    def _label(self, c: CosetElement) -> str:
        return f"H{c.subgroup}*{self.lattice.group.labels[c.representative]}"

    def product(self, h: int, a: int, k: int, b: int) -> int:
        """Index of Ha * Kb using arbitrary representatives a, b."""
        G = self.lattice.group
        lat = self.lattice
        k_conj = lat.conjugate(k, int(G.inv[a]))  # (a^{-1})^{-1} K a^{-1}
        j = int(lat.join[h, k_conj])
        return int(self.coset_of[j][G.mul[a, b]])

    @property
    def group(self):
        return self.lattice.group

    def subgroup_members(self, e: int) -> frozenset:
        return self.lattice.members[self.subgroup_of_idempotent[e]]

    def element_sidecar(self) -> list[dict]:
        return [
            {"index": i, "subgroup": c.subgroup, "representative": c.representative,
             "members": sorted(c.members)}
            for i, c in enumerate(self.elements)
        ]


def build_coset_monoid(lattice: SubgroupLattice) -> CosetMonoid:
    return CosetMonoid(lattice)


def coset_monoid_of(G) -> CosetMonoid:
    return CosetMonoid(enumerate_subgroups(G))


def restricted_coset_monoid(lattice: SubgroupLattice, subgroup_ids: Iterable[int]) -> CosetMonoid:
    """Cosets of a conjugation- and join-closed family of subgroups.

    The family must contain the trivial subgroup and G.  Such monoids are
    factorizable with theta a dual isomorphism onto a proper sublattice
    whenever the family is also closed under intersection.
    """
    ids = set(subgroup_ids) | {lattice.trivial, lattice.top}
    for h in ids:
        for g in lattice.group.elements:
            if lattice.conjugate(h, g) not in ids:
                raise ValueError(f"family not closed under conjugation at subgroup {h}")
        for k in ids:
            if int(lattice.join[h, k]) not in ids:
                raise ValueError(f"family not closed under joins at ({h}, {k})")
    return CosetMonoid(lattice, ids)


def normal_subgroup_monoid(lattice: SubgroupLattice) -> CosetMonoid:
    return restricted_coset_monoid(lattice, [h for h in range(len(lattice)) if lattice.normal[h]])


# ------------------------------------------------------------------ checks

def check_reverse_inclusion_order(K: CosetMonoid) -> tuple[bool, Optional[tuple]]:
    """x <= y in the natural order iff coset(x) contains coset(y)."""
    S = K.monoid
    for i, x in enumerate(K.elements):
        for j, y in enumerate(K.elements):
            if bool(S.leq[i, j]) != (x.members >= y.members):
                return False, (i, j)
    return True, None


def unit_isomorphism(K: CosetMonoid) -> Optional[list[int]]:
    """Isomorphism from the unit group of K(G) onto G."""
    return find_isomorphism(K.monoid.unit_group.mul, K.group.mul)


def check_dictionary(K: CosetMonoid, lattice: Optional[SubgroupLattice] = None) -> dict:
    """Compare every group-side notion with its monoid-side counterpart.

    Returns ``{"ok": bool, "checks": {name: bool}, "witnesses": {name: ...}}``.
    """
    from .series import defect

    lat = lattice or K.lattice
    S = K.monoid
    G = lat.group
    checks: dict[str, bool] = {}
    wit: dict[str, object] = {}

    def record(name: str, ok: bool, witness=None) -> None:
        checks[name] = bool(ok)
        if not ok:
            wit[name] = witness

    expected_size = sum(G.order // len(m) for m in lat.members)
    record("size", S.size == expected_size, (S.size, expected_size))

    idem_subgroups = sorted(K.subgroup_of_idempotent[e] for e in S.E)
    record("idempotents", idem_subgroups == list(range(len(lat))), idem_subgroups)

    central_idem = {K.subgroup_of_idempotent[e] for e in S.E if S.central[e]}
    normal = {h for h in range(len(lat)) if lat.normal[h]}
    record("central_idempotents", central_idem == normal, sorted(central_idem ^ normal))

    dlab = S.green_label["D"]
    bad = None
    for e in S.E:
        for f in S.E:
            he, hf = K.subgroup_of_idempotent[e], K.subgroup_of_idempotent[f]
            conj = hf in set(int(x) for x in lat.conj[he])
            if (dlab[e] == dlab[f]) != conj:
                bad = (he, hf)
                break
        if bad:
            break
    record("d_classes", bad is None, bad)

    ok, w = check_reverse_inclusion_order(K)
    record("reverse_inclusion", ok, w)

    phi = unit_isomorphism(K)
    record("units_iso_G", phi is not None)

    bad = None
    for h in range(len(lat)):
        e = K.idempotent_of[h]
        th = frozenset(S.units[i] for i in S.theta(e))
        as_group = frozenset(next(iter(K.elements[u].members)) for u in th)
        if as_group != lat.members[h]:
            bad = h
            break
    record("theta_is_subgroup", bad is None, bad)

    # filter of H-idempotent vs K(H) built independently
    from .inverse_monoid import monoid_isomorphic
    from .group_core import subgroup_as_group

    bad = None
    for cls in lat.conjugacy_classes:
        h = cls[0]
        sub = subgroup_as_group(G, lat.members[h], name=f"H{h}")
        KH = coset_monoid_of(sub).monoid
        filt = S.filter_up(K.idempotent_of[h]).materialize()
        if filt.size != KH.size or not monoid_isomorphic(filt, KH)[0]:
            bad = h
            break
    record("filter_is_K(H)", bad is None, bad)

    bad = None
    for h in range(len(lat)):
        for k in range(len(lat)):
            e, f = K.idempotent_of[h], K.idempotent_of[k]
            if S.join(e, f) != K.idempotent_of[int(lat.meet[h, k])]:
                bad = ("join", h, k)
            elif int(S.mul[e, f]) != K.idempotent_of[int(lat.join[h, k])]:
                bad = ("product", h, k)
            if bad:
                break
        if bad:
            break
    record("join_meet", bad is None, bad)

    bad = None
    for h in range(len(lat)):
        if defect(S, K.idempotent_of[h]) != lat.subnormal_defect(h):
            bad = h
            break
    record("defect", bad is None, bad)

    return {"ok": all(checks.values()), "checks": checks, "witnesses": wit}


def emit_idempotent_dot(K: CosetMonoid) -> str:
    """Hasse diagram of the natural order on idempotents."""
    S = K.monoid
    E = S.E
    lines = ["digraph idempotents {", "  rankdir=BT;"]
    for e in E:
        h = K.subgroup_of_idempotent[e]
        shape = "doublecircle" if S.central[e] else "ellipse"
        lines.append(f'  e{e} [label="e{e} ~ #{h} |H|={K.lattice.order(h)}", shape={shape}];')
    for e in E:
        for f in E:
            if e == f or not S.leq[e, f]:
                continue
            if not any(x not in (e, f) and S.leq[e, x] and S.leq[x, f] for x in E):
                lines.append(f"  e{e} -> e{f};")
    lines.append("}")
    return "\n".join(lines) + "\n"
