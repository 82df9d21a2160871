"""Finite inverse monoids with zero, held as dense multiplication tables.

Everything is derived from the table: natural order, Green's relations,
the unit group, the natural connection ``theta`` into the unit group's
subgroup lattice, filters, factors ``F_{e,f}`` and their homomorphisms.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from .config import ISOMORPHISM_CAP, MONOID_SIZE_CAP
from .group_core import CapExceeded, FiniteGroup, closure, from_table, is_normal
from .isomorphism import find_isomorphism


class MonoidAxiomError(ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(f"{message} (witness {witness})" if witness else message)
        self.witness = witness


class PreconditionError(ValueError):
    pass


NO_JOIN = -1


class FiniteInverseMonoid:
    """Validated inverse monoid with identity and zero.

    Construct through :func:`validate_inverse_monoid`; the constructor
    itself trusts its arguments.
    """

    def __init__(
        self,
        mul: np.ndarray,
        inv: np.ndarray,
        identity: int,
        zero: int,
        labels: Optional[Sequence[str]] = None,
        name: str = "",
    ):
        self.mul = np.asarray(mul, dtype=np.int64)
        self.inv = np.asarray(inv, dtype=np.int64)
        self.identity = int(identity)
        self.zero = int(zero)
        n = self.mul.shape[0]
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self.name = name

    def __repr__(self) -> str:
        return f"FiniteInverseMonoid({self.name or '?'}, size={self.size})"

    @property
    def size(self) -> int:
        return int(self.mul.shape[0])

    @property
    def trivial(self) -> bool:
        return self.size == 1

    # ---------------------------------------------------------- basic data

    @cached_property
    def rdom(self) -> np.ndarray:
        """a a^{-1} for every a."""
        idx = np.arange(self.size)
        return self.mul[idx, self.inv]

    @cached_property
    def ldom(self) -> np.ndarray:
        """a^{-1} a for every a."""
        idx = np.arange(self.size)
        return self.mul[self.inv, idx]

    @cached_property
    def is_idempotent(self) -> np.ndarray:
        idx = np.arange(self.size)
        return self.mul[idx, idx] == idx

    @cached_property
    def E(self) -> tuple[int, ...]:
        """Idempotents in index order."""
        return tuple(int(x) for x in np.flatnonzero(self.is_idempotent))

    @cached_property
    def epos(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.E)}

    @cached_property
    def leq(self) -> np.ndarray:
        """Natural order: leq[a, b] iff a = (a a^{-1}) b."""
        idx = np.arange(self.size)
        return self.mul[self.rdom] == idx[:, None]

    @cached_property
    def central(self) -> np.ndarray:
        return (self.mul == self.mul.T).all(axis=1)

    @cached_property
    def is_commutative(self) -> bool:
        return bool(self.central.all())

    @cached_property
    def units(self) -> tuple[int, ...]:
        ok = (self.rdom == self.identity) & (self.ldom == self.identity)
        return tuple(int(x) for x in np.flatnonzero(ok))

    @cached_property
    def unit_pos(self) -> dict[int, int]:
        return {u: i for i, u in enumerate(self.units)}

    def products(self, left: Iterable[int], right: Iterable[int]) -> frozenset:
        left, right = list(left), list(right)
        if not left or not right:
            return frozenset()
        return frozenset(int(x) for x in np.unique(self.mul[np.ix_(left, right)]))

    # ---------------------------------------------------------- centrality

    def commutes_with(self, c: int, scope: Iterable[int]) -> bool:
        scope = np.fromiter(scope, dtype=np.int64)
        return bool((self.mul[c, scope] == self.mul[scope, c]).all())

    def centre(self, scope: Optional[Iterable[int]] = None) -> tuple[int, ...]:
        """Elements of ``scope`` commuting with every element of ``scope``."""
        if scope is None:
            return tuple(int(x) for x in np.flatnonzero(self.central))
        sc = np.array(sorted(set(scope)), dtype=np.int64)
        sub = self.mul[np.ix_(sc, sc)]
        ok = (sub == sub.T).all(axis=1)
        return tuple(int(x) for x in sc[ok])

    def is_central_in(self, c: int, view: "SubMonoidView") -> bool:
        return c in view and self.commutes_with(c, view.members)

    # ---------------------------------------------------------- filters

    def filter_members(self, a: int) -> np.ndarray:
        return np.flatnonzero(self.leq[a])

    def filter_up(self, e: int) -> "SubMonoidView":
        """e^ = {s : s >= e} for an idempotent e."""
        if not self.is_idempotent[e]:
            raise PreconditionError(f"filter_up needs an idempotent, got {e}")
        return SubMonoidView(self, tuple(int(x) for x in self.filter_members(e)), self.identity)

    def principal_view(self, e: int) -> "SubMonoidView":
        """eS for a central idempotent e; its identity is e."""
        if not self.is_idempotent[e]:
            raise PreconditionError(f"principal_view needs an idempotent, got {e}")
        return SubMonoidView(self, tuple(sorted(set(int(x) for x in self.mul[e]))), e)

    @cached_property
    def central_in_filter(self) -> np.ndarray:
        """cif[i, j]: E[j] >= E[i] and E[j] is central in the filter of E[i]."""
        ne = len(self.E)
        out = np.zeros((ne, ne), dtype=bool)
        for i, e in enumerate(self.E):
            filt = self.filter_members(e)
            for j, f in enumerate(self.E):
                if self.leq[e, f]:
                    out[i, j] = bool((self.mul[f, filt] == self.mul[filt, f]).all())
        return out

    def is_central_in_filter(self, f: int, e: int) -> bool:
        return bool(self.central_in_filter[self.epos[e], self.epos[f]])

    # ---------------------------------------------------------- semilattice

    @cached_property
    def join_table(self) -> np.ndarray:
        """Least upper bound of idempotent pairs (monoid indices), NO_JOIN if absent."""
        E = np.array(self.E, dtype=np.int64)
        ne = len(E)
        le = self.leq[np.ix_(E, E)]
        out = np.full((ne, ne), NO_JOIN, dtype=np.int64)
        for i in range(ne):
            for j in range(i, ne):
                ub = np.flatnonzero(le[i] & le[j])
                least = [u for u in ub if le[u, ub].all()]
                if least:
                    out[i, j] = out[j, i] = E[least[0]]
        return out

    def join(self, e: int, f: int) -> int:
        return int(self.join_table[self.epos[e], self.epos[f]])

    def interval(self, e: int, f: int) -> tuple[int, ...]:
        """Idempotents x with e <= x <= f."""
        return tuple(x for x in self.E if self.leq[e, x] and self.leq[x, f])

    def covers_zero(self) -> tuple[int, ...]:
        """Primitive idempotents: minimal nonzero idempotents."""
        nz = [e for e in self.E if e != self.zero]
        return tuple(e for e in nz if not any(x != e and self.leq[x, e] for x in nz))

    # ---------------------------------------------------------- Green

    @cached_property
    def green(self) -> dict[str, list[tuple[int, ...]]]:
        return green_classes(self)

    @cached_property
    def green_label(self) -> dict[str, np.ndarray]:
        out = {}
        for key, parts in self.green.items():
            lab = np.empty(self.size, dtype=np.int64)
            for i, cls in enumerate(parts):
                lab[list(cls)] = i
            out[key] = lab
        return out

    def h_class(self, a: int) -> tuple[int, ...]:
        lab = self.green_label["H"]
        return tuple(int(x) for x in np.flatnonzero(lab == lab[a]))

    # ---------------------------------------------------------- units and theta

    @cached_property
    def unit_group(self) -> FiniteGroup:
        u = list(self.units)
        pos = self.unit_pos
        table = [[pos[int(self.mul[a, b])] for b in u] for a in u]
        return from_table(table, [self.labels[a] for a in u], name=f"U({self.name})")

    def theta(self, e: int) -> frozenset:
        """Natural connection: units g with e g = e, as unit-group indices."""
        u = np.array(self.units, dtype=np.int64)
        return frozenset(int(i) for i in np.flatnonzero(self.mul[e, u] == e))

    def theta_units(self, e: int) -> tuple[int, ...]:
        """Same as :meth:`theta` but as monoid indices."""
        return tuple(self.units[i] for i in sorted(self.theta(e)))

    @cached_property
    def theta_map(self) -> dict[int, frozenset]:
        return {e: self.theta(e) for e in self.E}

    @cached_property
    def is_factorizable(self) -> bool:
        return len(self.products(self.E, self.units)) == self.size

    def conjugate(self, x: int, g: int) -> int:
        """g^{-1} x g for a unit g."""
        return int(self.mul[self.mul[self.inv[g], x], g])

    def is_dual_isomorphism(self) -> tuple[bool, Optional[str]]:
        """Is theta a dual isomorphism from E onto a sublattice of L(units)?"""
        if not self.is_factorizable:
            return False, "monoid is not factorizable"
        G = self.unit_group
        th = self.theta_map
        seen: dict[frozenset, int] = {}
        for e in self.E:
            if th[e] in seen:
                return False, f"theta not injective: {seen[th[e]]} and {e}"
            seen[th[e]] = e
        for e, f in itertools.product(self.E, repeat=2):
            if bool(self.leq[e, f]) != (th[e] >= th[f]):
                return False, f"order not reversed at ({e}, {f})"
        for e, f in itertools.combinations(self.E, 2):
            gen = closure(G, th[e] | th[f])
            ef = int(self.mul[e, f])
            if th[ef] != gen:
                return False, f"theta({e}*{f}) is not the generated subgroup"
            meet = th[e] & th[f]
            if meet not in seen:
                return False, f"image not closed under intersection at ({e}, {f})"
            j = self.join(e, f)
            if j == NO_JOIN or th[j] != meet:
                return False, f"theta({e} v {f}) is not the intersection"
        return True, None

    # ---------------------------------------------------------- factors

    def require_central_in_filter(self, e: int, f: int) -> None:
        if not (self.is_idempotent[e] and self.is_idempotent[f]):
            raise PreconditionError("factor needs idempotents")
        if not self.leq[e, f] or not self.is_central_in_filter(f, e):
            raise PreconditionError(f"{f} is not central in the filter of {e}")

    def factor_submonoid(self, e: int, f: int) -> "Factor":
        """F_{e,f} = f e^ with unit group UF_{e,f} = f * theta(e)."""
        self.require_central_in_filter(e, f)
        members = tuple(sorted(set(int(x) for x in self.mul[f, self.filter_members(e)])))
        view = SubMonoidView(self, members, f)
        units = tuple(sorted(set(int(self.mul[f, g]) for g in self.theta_units(e))))
        return Factor(e, f, view, units)

    def interval_product(self, e: int, f: int) -> frozenset:
        """[e, f] . theta(e), computed without reference to filters."""
        return self.products(self.interval(e, f), self.theta_units(e))

    def phi_homomorphism(self, e: int, f: int) -> "PhiMap":
        """a -> f a on the filter of e."""
        self.require_central_in_filter(e, f)
        dom = tuple(int(x) for x in self.filter_members(e))
        images = {a: int(self.mul[f, a]) for a in dom}
        return PhiMap(e, f, dom, images)

    # ---------------------------------------------------------- pre-idempotents

    def is_pre_idempotent(self, a: int) -> bool:
        return bool(self.leq[self.mul[a, a], a])

    def r_class_in(self, e: int, members: Optional[Iterable[int]] = None) -> tuple[int, ...]:
        """R-class of idempotent e inside an inverse submonoid (default S)."""
        if members is None:
            return tuple(int(x) for x in np.flatnonzero(self.rdom == e))
        return tuple(a for a in members if self.rdom[a] == e)

    def is_anti_abnormal(self, e: int, view: Optional["SubMonoidView"] = None) -> bool:
        members = None if view is None else view.members
        if view is not None and e not in view:
            raise PreconditionError(f"{e} is not in the view")
        pre = [a for a in self.r_class_in(e, members) if self.is_pre_idempotent(a)]
        return pre == [e]

    # ---------------------------------------------------------- materialization

    def submonoid(self, members: Iterable[int], identity: Optional[int] = None, name: str = "") -> "FiniteInverseMonoid":
        """Re-index a closed subset as a monoid in its own right."""
        members = sorted(set(int(x) for x in members))
        pos = {x: i for i, x in enumerate(members)}
        sub = self.mul[np.ix_(members, members)]
        try:
            table = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub)
        except KeyError as err:
            raise MonoidAxiomError("subset not closed under multiplication", (int(err.args[0]),)) from None
        inv = []
        for x in members:
            if int(self.inv[x]) not in pos:
                raise MonoidAxiomError("subset not closed under inversion", (x,))
            inv.append(pos[int(self.inv[x])])
        ident = find_identity(table) if identity is None else pos[identity]
        if ident is None:
            raise MonoidAxiomError("subset has no identity")
        z = find_zero(table)
        if z is None:
            raise MonoidAxiomError("subset has no zero")
        return FiniteInverseMonoid(table, np.array(inv), ident, z,
                                   [self.labels[x] for x in members], name=name)

    def quotient(self, members: Sequence[int], key: Callable[[int], Hashable], name: str = "") -> "FiniteInverseMonoid":
        """Quotient of the closed subset ``members`` by the kernel of ``key``.

        Classes are represented by their minimal index; the relation must be
        a congruence on ``members``.
        """
        members = sorted(set(int(x) for x in members))
        classes: dict[Hashable, list[int]] = {}
        for x in members:
            classes.setdefault(key(x), []).append(x)
        reps = sorted(min(c) for c in classes.values())
        pos = {r: i for i, r in enumerate(reps)}
        lab = np.full(self.size, -1, dtype=np.int64)
        for c in classes.values():
            lab[c] = pos[min(c)]
        m = np.array(members, dtype=np.int64)
        prod = lab[self.mul[np.ix_(m, m)]]
        if (prod < 0).any():
            i, j = np.argwhere(prod < 0)[0]
            raise MonoidAxiomError("subset not closed under multiplication", (int(m[i]), int(m[j])))
        k = len(reps)
        table = np.full((k, k), -1, dtype=np.int64)
        rows, cols = lab[m][:, None], lab[m][None, :]
        table[rows, cols] = prod
        bad = table[rows, cols] != prod
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise MonoidAxiomError("relation is not a congruence", (int(m[i]), int(m[j])))
        return validate_inverse_monoid(table, labels=[self.labels[r] for r in reps], name=name)

    # ---------------------------------------------------------- invariants

    @cached_property
    def element_keys(self) -> list[tuple]:
        """Isomorphism-invariant data per element, for search pruning."""
        lab = self.green_label
        sizes = {k: Counter(v.tolist()) for k, v in lab.items()}
        below = self.leq.sum(axis=0)
        above = self.leq.sum(axis=1)
        unitset = set(self.units)
        return [
            (
                bool(self.is_idempotent[a]),
                a in unitset,
                bool(self.central[a]),
                sizes["R"][int(lab["R"][a])],
                sizes["L"][int(lab["L"][a])],
                sizes["D"][int(lab["D"][a])],
                int(below[a]),
                int(above[a]),
            )
            for a in range(self.size)
        ]

    @cached_property
    def fingerprint(self) -> tuple:
        g = self.green
        ug = self.unit_group
        rcount = Counter(self.rdom.tolist())
        lcount = Counter(self.ldom.tolist())
        return (
            self.size,
            len(self.E),
            tuple(sorted(len(c) for c in g["R"])),
            tuple(sorted(len(c) for c in g["L"])),
            tuple(sorted(len(c) for c in g["H"])),
            tuple(sorted(len(c) for c in g["D"])),
            tuple(sorted(ug.element_order(x) for x in ug.elements)),
            tuple(sorted((rcount[e], lcount[e]) for e in self.E)),
        )


@dataclass(frozen=True)
class SubMonoidView:
    parent: FiniteInverseMonoid
    members: tuple[int, ...]
    identity: int

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def is_closed(self) -> bool:
        m = list(self.members)
        s = self._set
        prods = self.parent.products(m, m)
        return prods <= s and all(int(self.parent.inv[x]) in s for x in m)

    def materialize(self, name: str = "") -> FiniteInverseMonoid:
        return self.parent.submonoid(self.members, self.identity, name=name)

    def centre(self) -> tuple[int, ...]:
        return self.parent.centre(self.members)


@dataclass(frozen=True)
class Factor:
    e: int
    f: int
    view: SubMonoidView
    units: tuple[int, ...]

    @cached_property
    def monoid(self) -> FiniteInverseMonoid:
        return self.view.materialize(name=f"F[{self.e},{self.f}]")


@dataclass(frozen=True)
class PhiMap:
    e: int
    f: int
    domain: tuple[int, ...]
    images: dict

    @property
    def image(self) -> frozenset:
        return frozenset(self.images.values())

    def kernel_classes(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for a in self.domain:
            groups.setdefault(self.images[a], []).append(a)
        return [tuple(v) for _, v in sorted(groups.items())]

    def is_homomorphism(self, S: FiniteInverseMonoid) -> bool:
        d = np.array(self.domain, dtype=np.int64)
        img = np.array([self.images[a] for a in self.domain], dtype=np.int64)
        lookup = np.full(S.size, -1, dtype=np.int64)
        lookup[d] = img
        prod = S.mul[np.ix_(d, d)]
        if (lookup[prod] < 0).any():
            return False
        return bool((lookup[prod] == S.mul[np.ix_(img, img)]).all())


# ------------------------------------------------------------------ functions

def find_identity(table: np.ndarray) -> Optional[int]:
    n = table.shape[0]
    idx = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            return e
    return None


def find_zero(table: np.ndarray) -> Optional[int]:
    n = table.shape[0]
    for z in range(n):
        if (table[z] == z).all() and (table[:, z] == z).all():
            return z
    return None


def associativity_witness(mul: np.ndarray, block_elems: int = 4_000_000) -> Optional[tuple[int, int, int]]:
    """First (a, b, c) with (ab)c != a(bc), checking rows a in blocks."""
    n = mul.shape[0]
    step = max(1, block_elems // (n * n))
    for lo in range(0, n, step):
        left = mul[mul[lo:lo + step]]  # (ab)c
        right = mul[np.arange(lo, min(n, lo + step))[:, None, None], mul[None, :, :]]  # a(bc)
        neq = left != right
        if neq.any():
            a, b, c = (int(v) for v in np.argwhere(neq)[0])
            return a + lo, b, c
    return None


def validate_inverse_monoid(
    table,
    inv: Optional[Sequence[int]] = None,
    identity: Optional[int] = None,
    zero: Optional[int] = None,
    labels: Optional[Sequence[str]] = None,
    name: str = "",
) -> FiniteInverseMonoid:
    """Check every inverse-monoid axiom exhaustively.

    The inverse map is derived when not supplied and cross-checked when it is.
    Violations raise :class:`MonoidAxiomError` carrying a witness.
    """
    mul = np.asarray(table, dtype=np.int64)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise MonoidAxiomError("table must be a non-empty square")
    n = mul.shape[0]
    if n > MONOID_SIZE_CAP:
        raise CapExceeded(f"monoid size {n} exceeds cap {MONOID_SIZE_CAP}")
    if mul.min() < 0 or mul.max() >= n:
        raise MonoidAxiomError("table entry out of range")
    witness = associativity_witness(mul)
    if witness is not None:
        raise MonoidAxiomError("associativity fails", witness)
    idx = np.arange(n)
    if identity is None:
        identity = find_identity(mul)
        if identity is None:
            raise MonoidAxiomError("no identity")
    else:
        bad = np.flatnonzero((mul[identity] != idx) | (mul[:, identity] != idx))
        if bad.size:
            raise MonoidAxiomError("identity law fails", (identity, int(bad[0])))
    if zero is None:
        zero = find_zero(mul)
        if zero is None:
            raise MonoidAxiomError("no zero")
    else:
        bad = np.flatnonzero((mul[zero] != zero) | (mul[:, zero] != zero))
        if bad.size:
            raise MonoidAxiomError("zero law fails", (zero, int(bad[0])))
    # b is an inverse of a iff aba = a and bab = b
    derived = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        row = mul[a]  # a*b for all b
        ok = (mul[row, a] == a) & (mul[mul[idx, a], idx] == idx)
        cands = np.flatnonzero(ok)
        if cands.size == 0:
            raise MonoidAxiomError("element has no inverse", (a,))
        if cands.size > 1:
            raise MonoidAxiomError("inverse not unique", (a, int(cands[0]), int(cands[1])))
        derived[a] = cands[0]
    if inv is not None:
        inv = np.asarray(inv, dtype=np.int64)
        bad = np.flatnonzero(inv != derived)
        if bad.size:
            raise MonoidAxiomError("supplied inverse disagrees", (int(bad[0]),))
    E = np.flatnonzero(mul[idx, idx] == idx)
    sub = mul[np.ix_(E, E)]
    bad = np.argwhere(sub != sub.T)
    if bad.size:
        i, j = bad[0]
        raise MonoidAxiomError("idempotents do not commute", (int(E[i]), int(E[j])))
    return FiniteInverseMonoid(mul, derived, identity, zero, labels, name)


def green_classes(S: FiniteInverseMonoid) -> dict[str, list[tuple[int, ...]]]:
    """R, L, H, D partitions from principal one-sided ideals."""
    n = S.size
    right = [frozenset(S.mul[a].tolist()) for a in range(n)]
    left = [frozenset(S.mul[:, a].tolist()) for a in range(n)]

    def partition(keys) -> list[tuple[int, ...]]:
        groups: dict = {}
        for a, k in enumerate(keys):
            groups.setdefault(k, []).append(a)
        return sorted(tuple(v) for v in groups.values())

    R = partition(right)
    L = partition(left)
    H = partition(list(zip(right, left)))
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cls in R + L:
        for x in cls[1:]:
            a, b = find(cls[0]), find(x)
            if a != b:
                parent[max(a, b)] = min(a, b)
    D = partition([find(a) for a in range(n)])
    return {"R": R, "L": L, "H": H, "D": D}


def group_of_units(S: FiniteInverseMonoid) -> tuple[SubMonoidView, FiniteGroup]:
    return SubMonoidView(S, S.units, S.identity), S.unit_group


def monoid_isomorphic(
    S: FiniteInverseMonoid, T: FiniteInverseMonoid, cap: int = ISOMORPHISM_CAP
) -> tuple[bool, Optional[list[int]]]:
    """Fingerprint filter, then backtracking search for an explicit isomorphism."""
    if max(S.size, T.size) > cap:
        raise CapExceeded(f"isomorphism search limited to {cap} elements")
    if S.fingerprint != T.fingerprint:
        return False, None
    phi = find_isomorphism(S.mul, T.mul, S.element_keys, T.element_keys)
    return (phi is not None), phi


# ------------------------------------------------------------------ instances

def group_with_zero(G: FiniteGroup) -> FiniteInverseMonoid:
    n = G.order
    table = np.full((n + 1, n + 1), n, dtype=np.int64)
    table[:n, :n] = G.mul
    return validate_inverse_monoid(table, identity=G.identity, zero=n,
                                   labels=list(G.labels) + ["0"], name=f"{G.name}^0")


def chain_semilattice(k: int) -> FiniteInverseMonoid:
    """k-element chain 0 < 1 < ... < k-1 under min."""
    idx = np.arange(k)
    return validate_inverse_monoid(np.minimum.outer(idx, idx), name=f"chain{k}")


def symmetric_inverse_monoid(n: int) -> FiniteInverseMonoid:
    """Partial bijections of {1..n}, composed left to right."""
    elems = []
    for r in range(n + 1):
        for dom in itertools.combinations(range(n), r):
            for img in itertools.permutations(range(n), r):
                m = [-1] * n
                for d, i in zip(dom, img):
                    m[d] = i
                elems.append(tuple(m))
    elems.sort()
    pos = {p: i for i, p in enumerate(elems)}

    def compose(p, q):
        return tuple(q[p[x]] if p[x] >= 0 else -1 for x in range(n))

    table = [[pos[compose(p, q)] for q in elems] for p in elems]
    labels = ["[" + " ".join("-" if v < 0 else str(v + 1) for v in p) + "]" for p in elems]
    return validate_inverse_monoid(table, labels=labels, name=f"SIM{n}")


# ------------------------------------------------------------------ text format

def format_imonoid(S: FiniteInverseMonoid) -> str:
    width = len(str(S.size - 1))
    lines = [f"imonoid {S.size} identity={S.identity} zero={S.zero}"]
    for row in S.mul:
        lines.append(" ".join(str(int(v)).rjust(width) for v in row))
    return "\n".join(lines) + "\n"


def parse_imonoid(text: str, name: str = "") -> FiniteInverseMonoid:
    from .group_core import ParseError

    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty monoid spec")
    lineno, head = lines[0]
    m = re.fullmatch(r"imonoid\s+(\d+)\s+identity=(\d+)\s+zero=(\d+)", head)
    if not m:
        raise ParseError("expected 'imonoid <n> identity=<i> zero=<z>'", lineno, 1)
    n, ident, zero = (int(g) for g in m.groups())
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}", rows[-1][0] if rows else lineno, 1)
    table = []
    for rl, row in rows:
        cells = row.split()
        if len(cells) != n:
            raise ParseError(f"expected {n} entries, found {len(cells)}", rl, 1)
        try:
            table.append([int(c) for c in cells])
        except ValueError:
            raise ParseError("non-integer entry", rl, 1) from None
    if not (0 <= ident < n and 0 <= zero < n):
        raise ParseError("identity/zero index out of range", lineno, 1)
    return validate_inverse_monoid(table, identity=ident, zero=zero, name=name)


def unit_subgroup_is_normal(S: FiniteInverseMonoid, members: frozenset) -> bool:
    G = S.unit_group
    return is_normal(members, G.all, G)
