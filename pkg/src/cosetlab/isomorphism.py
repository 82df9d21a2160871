"""Backtracking isomorphism search between finite multiplication tables.

Both groups and inverse monoids route through :func:`find_isomorphism`.
The search picks a small generating set of the first table, assigns
images to generators only, and extends each partial assignment along
words in the generators.  Per-element invariants prune candidates.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Hashable, Optional, Sequence

import numpy as np


def power_profile(mul: np.ndarray, a: int) -> tuple[int, int]:
    """(index, period) of the monogenic subsemigroup generated by ``a``."""
    seen: dict[int, int] = {}
    x, k = a, 1
    while x not in seen:
        seen[x] = k
        x = int(mul[x, a])
        k += 1
    return seen[x], k - seen[x]


def basic_invariants(mul: np.ndarray) -> list[tuple]:
    """Isomorphism-invariant key per element, computed from the table alone."""
    n = mul.shape[0]
    idx = np.arange(n)
    squares = mul[idx, idx]
    sqrt_count = np.bincount(squares, minlength=n)
    commute = (mul == mul.T).sum(axis=1)
    fixed_left = (mul == idx[None, :]).sum(axis=1)  # #x with a*x = x
    fixed_right = (mul == idx[:, None]).sum(axis=0)  # #x with x*a = x
    out = []
    for a in range(n):
        out.append(
            (
                power_profile(mul, a),
                int(sqrt_count[a]),
                int(commute[a]),
                int(fixed_left[a]),
                int(fixed_right[a]),
            )
        )
    return out


def _generating_order(
    mul: np.ndarray, keys: Sequence[Hashable], class_size: Counter
) -> list[int]:
    """Greedy generating set, rarest invariant classes first."""
    n = mul.shape[0]
    order = sorted(range(n), key=lambda a: (class_size[keys[a]], a))
    gens: list[int] = []
    covered = np.zeros(n, dtype=bool)
    for a in order:
        if covered[a]:
            continue
        gens.append(a)
        covered = _closure_mask(mul, gens)
        if covered.all():
            break
    return gens


def _closure_mask(mul: np.ndarray, gens: Sequence[int]) -> np.ndarray:
    n = mul.shape[0]
    mask = np.zeros(n, dtype=bool)
    queue = deque()
    for g in gens:
        if not mask[g]:
            mask[g] = True
            queue.append(g)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = int(mul[x, g])
            if not mask[y]:
                mask[y] = True
                queue.append(y)
    return mask


def find_isomorphism(
    mul_a: np.ndarray,
    mul_b: np.ndarray,
    keys_a: Optional[Sequence[Hashable]] = None,
    keys_b: Optional[Sequence[Hashable]] = None,
) -> Optional[list[int]]:
    """Return ``phi`` with ``phi[a*b] == phi[a]*phi[b]``, or None.

    ``keys_*`` are optional caller-supplied invariants; they are combined
    with :func:`basic_invariants`.
    """
    n = mul_a.shape[0]
    if mul_b.shape[0] != n:
        return None
    if n == 0:
        return []
    inv_a = basic_invariants(mul_a)
    inv_b = basic_invariants(mul_b)
    if keys_a is not None:
        inv_a = [(x, y) for x, y in zip(inv_a, keys_a)]
        inv_b = [(x, y) for x, y in zip(inv_b, keys_b)]
    count_a, count_b = Counter(inv_a), Counter(inv_b)
    if count_a != count_b:
        return None

    by_key: dict[Hashable, list[int]] = {}
    for b, k in enumerate(inv_b):
        by_key.setdefault(k, []).append(b)

    gens = _generating_order(mul_a, inv_a, count_a)
    phi = [-1] * n
    used = [False] * n

    def extend(upto: int) -> Optional[list[int]]:
        # Close the assignment over words in gens[:upto]; None on conflict.
        assigned: list[int] = []
        queue = deque(a for a in range(n) if phi[a] >= 0)
        active = gens[:upto]
        while queue:
            x = queue.popleft()
            for g in active:
                y = int(mul_a[x, g])
                img = int(mul_b[phi[x], phi[g]])
                if phi[y] >= 0:
                    if phi[y] != img:
                        undo(assigned)
                        return None
                    continue
                if used[img] or inv_b[img] != inv_a[y]:
                    undo(assigned)
                    return None
                phi[y] = img
                used[img] = True
                assigned.append(y)
                queue.append(y)
        return assigned

    def undo(assigned: list[int]) -> None:
        for y in assigned:
            used[phi[y]] = False
            phi[y] = -1

    def search(t: int) -> bool:
        if t == len(gens):
            return True
        g = gens[t]
        if phi[g] >= 0:
            # already determined by earlier generators
            assigned = extend(t + 1)
            if assigned is None:
                return False
            if search(t + 1):
                return True
            undo(assigned)
            return False
        for cand in by_key[inv_a[g]]:
            if used[cand]:
                continue
            phi[g] = cand
            used[cand] = True
            assigned = extend(t + 1)
            if assigned is not None:
                if search(t + 1):
                    return True
                undo(assigned)
            phi[g] = -1
            used[cand] = False
        return False

    if not search(0):
        return None
    if min(phi) < 0:
        return None
    if not is_homomorphism(mul_a, mul_b, phi):
        return None
    return phi


def is_homomorphism(mul_a: np.ndarray, mul_b: np.ndarray, phi: Sequence[int]) -> bool:
    p = np.asarray(phi)
    return bool(np.array_equal(mul_b[p[:, None], p[None, :]], p[mul_a]))


def is_isomorphism(mul_a: np.ndarray, mul_b: np.ndarray, phi: Sequence[int]) -> bool:
    p = np.asarray(phi)
    if p.shape[0] != mul_a.shape[0] or mul_a.shape != mul_b.shape:
        return False
    if len(set(p.tolist())) != p.shape[0]:
        return False
    return is_homomorphism(mul_a, mul_b, p)
