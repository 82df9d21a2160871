"""Finite groups as dense Cayley tables, plus the classical series oracles.

Permutations multiply left to right: ``p*q`` applies ``p`` first, then ``q``.
Subgroups are frozensets of element indices.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import hard_order_cap
from .isomorphism import find_isomorphism


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GroupAxiomError(ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(f"{message} (witness {witness})" if witness else message)
        self.witness = witness


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: np.ndarray
    inv: np.ndarray
    identity: int
    labels: tuple[str, ...]
    backend: str = "cayley-table"
    name: str = ""

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @property
    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order}, {self.backend})"

    @cached_property
    def all(self) -> frozenset:
        return frozenset(range(self.order))

    @cached_property
    def trivial(self) -> frozenset:
        return frozenset([self.identity])

    def conj(self, x: int, g: int) -> int:
        """g^{-1} x g."""
        return int(self.mul[self.mul[self.inv[g], x], g])

    def commutator(self, x: int, y: int) -> int:
        """x^{-1} y^{-1} x y."""
        m = self.mul
        return int(m[m[m[self.inv[x], self.inv[y]], x], y])

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = int(self.mul[y, x])
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))


def from_table(
    table: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
    name: str = "",
    backend: str = "cayley-table",
    cap: Optional[int] = None,
) -> FiniteGroup:
    """Validate a Cayley table exhaustively and wrap it."""
    mul = np.asarray(table, dtype=np.int64)
    n = mul.shape[0]
    if mul.ndim != 2 or mul.shape != (n, n) or n == 0:
        raise GroupAxiomError("table must be a non-empty square")
    cap = hard_order_cap() if cap is None else cap
    if n > cap:
        raise CapExceeded(f"group order {n} exceeds cap {cap}")
    if mul.min() < 0 or mul.max() >= n:
        raise GroupAxiomError("table entry out of range")
    lhs = mul[mul, :]  # lhs[a,b,c] = (ab)c
    rhs = mul[:, mul]  # rhs[a,b,c] = a(bc)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise GroupAxiomError("associativity fails", tuple(int(v) for v in bad[0]))
    idx = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(mul[e], idx) and np.array_equal(mul[:, e], idx)]
    if not ids:
        raise GroupAxiomError("no two-sided identity")
    e = ids[0]
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.flatnonzero(mul[a] == e)
        if hits.size != 1 or mul[hits[0], a] != e:
            raise GroupAxiomError("element has no two-sided inverse", (a,))
        inv[a] = hits[0]
    if labels is None:
        labels = [str(i) for i in range(n)]
    return FiniteGroup(mul, inv, e, tuple(labels), backend, name)


# ---------------------------------------------------------------- permutations

Perm = tuple[int, ...]


def perm_compose(p: Perm, q: Perm) -> Perm:
    """Left-to-right product: apply p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def cycle_string(p: Perm) -> str:
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        parts.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) or "()"


def from_permutations(degree: int, gens: Iterable[Perm], name: str = "") -> FiniteGroup:
    """Close the generators under composition and tabulate the result."""
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    queue = deque([ident])
    cap = hard_order_cap()
    while queue:
        p = queue.popleft()
        for g in gens:
            q = perm_compose(p, g)
            if q not in seen:
                seen.add(q)
                if len(seen) > cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                queue.append(q)
    elems = sorted(seen)
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[perm_compose(p, q)] for q in elems] for p in elems]
    return from_table(
        table,
        labels=[cycle_string(p) for p in elems],
        name=name,
        backend=f"permutation-of-degree-{degree}",
    )


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str = "") -> FiniteGroup:
    na, nb = a.order, b.order
    table = np.empty((na * nb, na * nb), dtype=np.int64)
    for i in range(na):
        for j in range(na):
            table[i * nb : (i + 1) * nb, j * nb : (j + 1) * nb] = (
                a.mul[i, j] * nb + b.mul
            )
    labels = [f"({x},{y})" for x in a.labels for y in b.labels]
    return from_table(table, labels, name or f"{a.name}x{b.name}")


# ---------------------------------------------------------------- parsing

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int, line: int = 1, col0: int = 1) -> Perm:
    p = list(range(degree))
    pos = 0
    stripped = text.strip()
    offset = text.find(stripped) if stripped else 0
    if not stripped:
        raise ParseError("empty generator", line, col0)
    while pos < len(stripped):
        m = _CYCLE_RE.match(stripped, pos)
        if not m:
            raise ParseError(f"expected '(' in cycle notation near {stripped[pos:]!r}",
                             line, col0 + offset + pos)
        pts = m.group(1).split()
        try:
            nums = [int(t) for t in pts]
        except ValueError:
            raise ParseError(f"non-integer point in {m.group(0)!r}", line, col0 + offset + pos) from None
        if len(set(nums)) != len(nums):
            raise ParseError(f"repeated point in {m.group(0)!r}", line, col0 + offset + pos)
        for k in nums:
            if not 1 <= k <= degree:
                raise ParseError(f"point {k} outside 1..{degree}", line, col0 + offset + pos)
        # cycles within one generator compose left to right as well
        c = list(range(degree))
        for i, k in enumerate(nums):
            c[k - 1] = nums[(i + 1) % len(nums)] - 1
        p = [c[x] for x in p]
        pos = m.end()
        while pos < len(stripped) and stripped[pos] == " ":
            pos += 1
    return tuple(p)


def _cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return from_permutations(1, [], name="C1")
    return from_permutations(n, [tuple((i + 1) % n for i in range(n))], name=f"C{n}")


_PERM_PRESETS = {
    "S3": (3, "(1 2);(1 2 3)"),
    "S4": (4, "(1 2);(1 2 3 4)"),
    "A4": (4, "(1 2 3);(2 3 4)"),
    "A5": (5, "(1 2 3);(1 2 3 4 5)"),
    "D4": (4, "(1 2 3 4);(1 3)"),
    "D5": (5, "(1 2 3 4 5);(2 5)(3 4)"),
    "D6": (6, "(1 2 3 4 5 6);(2 6)(3 5)"),
    "V4": (4, "(1 2)(3 4);(1 3)(2 4)"),
    "Q8": (8, "(1 2 3 4)(5 6 7 8);(1 5 3 7)(2 8 4 6)"),
}

PRESET_NAMES = tuple([f"C{n}" for n in range(1, 25)] + list(_PERM_PRESETS))


def preset(name: str) -> FiniteGroup:
    """Named small group; ``AxB`` builds direct products."""
    name = name.strip()
    if "x" in name:
        parts = name.split("x")
        g = preset(parts[0])
        for part in parts[1:]:
            g = direct_product(g, preset(part))
        return FiniteGroup(g.mul, g.inv, g.identity, g.labels, g.backend, name)
    m = re.fullmatch(r"C(\d+)", name)
    if m and 1 <= int(m.group(1)) <= 24:
        return _cyclic(int(m.group(1)))
    if name in _PERM_PRESETS:
        degree, gens = _PERM_PRESETS[name]
        return from_permutations(
            degree, [parse_cycles(g, degree) for g in gens.split(";")], name=name
        )
    raise ParseError(f"unknown preset {name!r}")


def parse_group(text: str, name: str = "") -> FiniteGroup:
    """Parse one group declaration (``perm``, ``table`` or ``preset``)."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln.split("#", 1)[0].rstrip()) for i, ln in lines]
    lines = [(i, ln) for i, ln in lines if ln.strip()]
    if not lines:
        raise ParseError("empty group spec")
    lineno, head = lines[0]
    indent = len(head) - len(head.lstrip())
    words = head.split(None, 1)
    kind = words[0]
    rest = words[1] if len(words) > 1 else ""
    col_rest = indent + len(kind) + 2
    if kind == "preset":
        if len(lines) > 1:
            raise ParseError("unexpected trailing content", lines[1][0], 1)
        if not rest.strip():
            raise ParseError("missing preset name", lineno, col_rest)
        try:
            return preset(rest.strip())
        except ParseError as err:
            raise ParseError(str(err).split(": ", 1)[-1], lineno, col_rest) from None
    if kind == "perm":
        m = re.fullmatch(r"\s*degree=(\d+)\s+gens=(.*)", rest)
        if not m:
            raise ParseError("expected 'degree=<n> gens=<cycles>(;<cycles>)*'", lineno, col_rest)
        degree = int(m.group(1))
        if degree < 1:
            raise ParseError("degree must be positive", lineno, col_rest)
        gens_text = m.group(2)
        col = col_rest + m.start(2)
        gens = []
        for chunk in gens_text.split(";"):
            gens.append(parse_cycles(chunk, degree, lineno, col))
            col += len(chunk) + 1
        if len(lines) > 1:
            raise ParseError("unexpected trailing content", lines[1][0], 1)
        return from_permutations(degree, gens, name=name or f"perm[{gens_text.strip()}]")
    if kind == "table":
        try:
            n = int(rest.strip())
        except ValueError:
            raise ParseError("expected 'table <n>'", lineno, col_rest) from None
        if n < 1:
            raise ParseError("table size must be positive", lineno, col_rest)
        if n > hard_order_cap():
            raise CapExceeded(f"group order {n} exceeds cap {hard_order_cap()}")
        rows = lines[1:]
        if len(rows) != n:
            raise ParseError(f"expected {n} rows, found {len(rows)}",
                             rows[-1][0] if rows else lineno, 1)
        table = []
        for rl, row in rows:
            cells = row.split()
            if len(cells) != n:
                raise ParseError(f"expected {n} entries, found {len(cells)}", rl, 1)
            try:
                table.append([int(c) for c in cells])
            except ValueError:
                raise ParseError("non-integer entry", rl, 1) from None
        return from_table(table, name=name or f"table{n}")
    raise ParseError(f"unknown declaration {kind!r}", lineno, indent + 1)


def load_group(arg: str) -> FiniteGroup:
    """Accept a preset name, an inline spec, or a path to a spec file."""
    import os

    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            name = os.path.splitext(os.path.basename(arg))[0]
            return parse_group(fh.read(), name=name)
    if arg.split(None, 1)[0] in ("perm", "table", "preset"):
        return parse_group(arg)
    return preset(arg)


# ---------------------------------------------------------------- subgroups

@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, repr=False)
    members: frozenset

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members


def closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset:
    """Smallest subgroup containing ``gens`` (product-closure fixpoint)."""
    gens = sorted(set(int(g) for g in gens))
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = int(G.mul[x, g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def subgroup_generate(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = list(gens)
    for g in gens:
        if not 0 <= g < G.order:
            raise ValueError(f"{g} is not an element of {G!r}")
    return Subgroup(G, closure(G, gens))


def conjugate_set(G: FiniteGroup, members: Iterable[int], g: int) -> frozenset:
    """g^{-1} H g."""
    gi = G.inv[g]
    return frozenset(int(G.mul[G.mul[gi, h], g]) for h in members)


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    return Subgroup(H.parent, conjugate_set(H.parent, H.members, g))


def is_normal(H: Subgroup | frozenset, K: Subgroup | frozenset, G: Optional[FiniteGroup] = None) -> bool:
    """True iff H is normal in K; H must be contained in K."""
    if isinstance(H, Subgroup):
        G = H.parent
        H = H.members
    if isinstance(K, Subgroup):
        K = K.members
    if not H <= K:
        raise ValueError("is_normal requires H to be a subgroup of K")
    return all(conjugate_set(G, H, k) == H for k in K)


def normalizer(H: Subgroup) -> Subgroup:
    G = H.parent
    return Subgroup(G, frozenset(g for g in G.elements if conjugate_set(G, H.members, g) == H.members))


def quotient_group(G: FiniteGroup, N: Subgroup | frozenset) -> FiniteGroup:
    """G/N on right cosets with minimal-index representatives."""
    members = N.members if isinstance(N, Subgroup) else frozenset(N)
    if not is_normal(members, G.all, G):
        raise ValueError("quotient_group requires a normal subgroup")
    rep_of = {}
    reps = []
    for g in G.elements:
        if g in rep_of:
            continue
        coset = [int(G.mul[n, g]) for n in members]
        r = min(coset)
        reps.append(r)
        for x in coset:
            rep_of[x] = r
    reps.sort()
    pos = {r: i for i, r in enumerate(reps)}
    table = [[pos[rep_of[int(G.mul[a, b])]] for b in reps] for a in reps]
    labels = [f"N{G.labels[r]}" for r in reps]
    return from_table(table, labels, name=f"{G.name}/N")


def subgroup_as_group(G: FiniteGroup, members: Iterable[int], name: str = "") -> FiniteGroup:
    elems = sorted(members)
    pos = {x: i for i, x in enumerate(elems)}
    sub = G.mul[np.ix_(elems, elems)]
    table = np.vectorize(pos.__getitem__)(sub) if elems else sub
    return from_table(table, [G.labels[x] for x in elems], name=name)


def center(G: FiniteGroup) -> Subgroup:
    comm = G.mul == G.mul.T
    return Subgroup(G, frozenset(int(a) for a in np.flatnonzero(comm.all(axis=1))))


def commutator_subgroup(H: Subgroup | frozenset, K: Subgroup | frozenset, G: Optional[FiniteGroup] = None) -> Subgroup:
    """[H, K] generated by all h^{-1}k^{-1}hk."""
    if isinstance(H, Subgroup):
        G = H.parent
        H = H.members
    if isinstance(K, Subgroup):
        K = K.members
    return Subgroup(G, closure(G, {G.commutator(h, k) for h in H for k in K}))


def derived_series(G: FiniteGroup) -> list[Subgroup]:
    series = [Subgroup(G, G.all)]
    while True:
        nxt = commutator_subgroup(series[-1], series[-1])
        if nxt.members == series[-1].members:
            return series
        series.append(nxt)


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    whole = Subgroup(G, G.all)
    series = [whole]
    while True:
        nxt = commutator_subgroup(series[-1], whole)
        if nxt.members == series[-1].members:
            return series
        series.append(nxt)


def nilpotency_class(G: FiniteGroup) -> Optional[int]:
    series = lower_central_series(G)
    return len(series) - 1 if series[-1].order == 1 else None


def derived_length(G: FiniteGroup) -> Optional[int]:
    series = derived_series(G)
    return len(series) - 1 if series[-1].order == 1 else None


def group_isomorphism(A: FiniteGroup, B: FiniteGroup) -> Optional[list[int]]:
    """Explicit isomorphism A -> B, or None."""
    if A.order != B.order:
        return None
    return find_isomorphism(A.mul, B.mul)
