"""Independent brute-force oracles.

Nothing here imports cosetlab; these work directly on multiplication
tables (lists of lists) so they can cross-check the library.
"""


def table_of(G):
    return [list(map(int, row)) for row in G.mul]


def identity_of(T):
    n = len(T)
    return next(e for e in range(n) if all(T[e][x] == x == T[x][e] for x in range(n)))


def gen_closure(T, gens):
    e = identity_of(T)
    out = {e}
    frontier = [e]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = T[x][g]
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def all_subgroups(T):
    """Subgroups from all <= 2-element generating sets, then incremental extension."""
    n = len(T)
    found = {gen_closure(T, [a, b]) for a in range(n) for b in range(a, n)}
    found.add(gen_closure(T, []))
    changed = True
    while changed:
        changed = False
        for H in list(found):
            for g in range(n):
                if g not in H:
                    K = gen_closure(T, list(H) + [g])
                    if K not in found:
                        found.add(K)
                        changed = True
    return found


def inverse(T, a):
    e = identity_of(T)
    return next(b for b in range(len(T)) if T[a][b] == e)


def right_coset(T, H, a):
    return frozenset(T[h][a] for h in H)


def all_cosets(T):
    return {(H, right_coset(T, H, a)) for H in all_subgroups(T) for a in range(len(T))}


def coset_product(T, H, a, K, b):
    """Ha * Kb = <H, a K a^-1> ab, by direct closure."""
    ai = inverse(T, a)
    conj = {T[T[a][k]][ai] for k in K}
    J = gen_closure(T, set(H) | conj)
    return J, right_coset(T, J, T[a][b])


def is_normal_in(T, H, K):
    return all(frozenset(T[T[inverse(T, k)][h]][k] for h in H) == H for k in K)


def commutator_group(T, A, B):
    comms = set()
    for a in A:
        for b in B:
            comms.add(T[T[T[inverse(T, a)][inverse(T, b)]][a]][b])
    return gen_closure(T, comms)


def lcs_class(T):
    G = frozenset(range(len(T)))
    cur, c = G, 0
    while len(cur) > 1:
        nxt = commutator_group(T, cur, G)
        if nxt == cur:
            return None
        cur, c = nxt, c + 1
    return c


def derived_len(T):
    cur, d = frozenset(range(len(T))), 0
    while len(cur) > 1:
        nxt = commutator_group(T, cur, cur)
        if nxt == cur:
            return None
        cur, d = nxt, d + 1
    return d


def subnormal_defect(T, H):
    """Shortest chain H = K_m normal in ... normal in K_0 = G, by layered search."""
    subs = [K for K in all_subgroups(T) if H <= K]
    G = frozenset(range(len(T)))
    layer, seen, d = {G}, {G}, 0
    while layer:
        if H in layer:
            return d
        nxt = set()
        for K in layer:
            for L in subs:
                if L < K and L not in seen and is_normal_in(T, L, K):
                    nxt.add(L)
        seen |= nxt
        layer, d = nxt, d + 1
    return None


def unique_inverses(M):
    """For each a, the unique b with aba = a and bab = b (None if not unique)."""
    n = len(M)
    out = []
    for a in range(n):
        bs = [b for b in range(n) if M[M[a][b]][a] == a and M[M[b][a]][b] == b]
        out.append(bs[0] if len(bs) == 1 else None)
    return out


def is_associative(M):
    n = len(M)
    return all(M[M[a][b]][c] == M[a][M[b][c]] for a in range(n) for b in range(n) for c in range(n))


def count_involutions(T):
    e = identity_of(T)
    return sum(1 for x in range(len(T)) if x != e and T[x][x] == e)
