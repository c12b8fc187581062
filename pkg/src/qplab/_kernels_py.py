"""Pure-Python search kernels.

Reference implementation of the hot loops; ``_kernels.pyx`` mirrors every
function here and must return identical results.  Graphs arrive as square
0/1 adjacency matrices (anything indexable as ``adj[i][j]``).
"""
from __future__ import annotations

BACKEND = "python"


def _masks(adj) -> list[int]:
    n = len(adj)
    out = []
    for i in range(n):
        m = 0
        row = adj[i]
        for j in range(n):
            if row[j] and i != j:
                m |= 1 << j
        out.append(m)
    return out


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _color_bound(P: int, nbr: list[int]) -> int:
    colors = 0
    U = P
    while U:
        colors += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            U &= ~low
            Q &= ~low & ~nbr[v]
    return colors


def max_clique(adj) -> tuple[int, ...]:
    """Lexicographically smallest maximum clique (sorted vertex tuple)."""
    nbr = _masks(adj)
    n = len(nbr)
    best: list[int] = []

    def expand(cur: list[int], P: int):
        nonlocal best
        while P:
            if len(cur) + P.bit_count() <= len(best):
                return
            low = P & -P
            v = low.bit_length() - 1
            P ^= low
            if len(cur) + 1 > len(best):
                best = cur + [v]
            newP = P & nbr[v]
            if newP and len(cur) + 1 + _color_bound(newP, nbr) > len(best):
                expand(cur + [v], newP)

    expand([], (1 << n) - 1)
    return tuple(best)


def _has_clique(P: int, size: int, nbr: list[int]) -> bool:
    if size <= 0:
        return True
    if P.bit_count() < size:
        return False
    if size == 1:
        return True
    while P:
        low = P & -P
        v = low.bit_length() - 1
        P ^= low
        if (P & nbr[v]).bit_count() >= size - 1 and _has_clique(P & nbr[v], size - 1, nbr):
            return True
        if P.bit_count() < size:
            return False
    return False


def first_template_match(seq, template, l: int, symbols):
    """First ordered l-tuple of distinct symbols whose word embeds in ``seq``.

    The word is ``[tuple[t] for t in template]``.  Tuples are tried in
    lexicographic order of ``symbols`` (given sorted); each partial tuple is
    pruned by embedding the template restricted to the slots chosen so far.
    Returns ``(symbols_tuple, positions)`` with leftmost positions, or None.
    """
    m = len(seq)
    index = {s: i for i, s in enumerate(symbols)}
    A = len(symbols)
    # nxt[i][c]: first position >= i holding symbol c, or m
    nxt = [[m] * A for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        row = nxt[i]
        row[:] = nxt[i + 1]
        c = index.get(seq[i])
        if c is not None:
            row[c] = i
    sub = [[t for t in template if t < j] for j in range(l + 1)]
    chosen: list[int] = []
    used = [False] * A

    def embed(word_slots):
        pos = []
        i = 0
        for t in word_slots:
            p = nxt[i][chosen[t]]
            if p >= m:
                return None
            pos.append(p)
            i = p + 1
        return pos

    def dfs(j):
        for c in range(A):
            if used[c]:
                continue
            chosen.append(c)
            used[c] = True
            pos = embed(sub[j + 1])
            if pos is not None:
                if j + 1 == l:
                    return tuple(symbols[x] for x in chosen), tuple(pos)
                r = dfs(j + 1)
                if r is not None:
                    return r
            used[c] = False
            chosen.pop()
        return None

    if l <= 0 or l > A:
        return None
    return dfs(0)


def min_bisection(n: int, edges, lo: int, hi: int) -> tuple[int, int]:
    """Minimum cut over vertex masks with lo <= popcount <= hi.

    Ties go to the numerically smallest mask.  Returns (cut, mask), or
    (-1, -1) when no mask is admissible.
    """
    nbr = [0] * n
    for u, v in edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    best_cut, best_mask = -1, -1
    for mask in range(1 << n):
        c = mask.bit_count()
        if c < lo or c > hi:
            continue
        comp = ~mask
        cut = 0
        for u in _bits(mask):
            cut += (nbr[u] & comp).bit_count()
        if best_cut < 0 or cut < best_cut:
            best_cut, best_mask = cut, mask
            if cut == 0:
                break
    return best_cut, best_mask


def _partition_bound(R: list[int], nbr: list[int], cap: int) -> int:
    cliques: list[int] = []
    sizes: list[int] = []
    for e in R:
        for i, Q in enumerate(cliques):
            if Q & ~nbr[e] == 0:
                cliques[i] = Q | (1 << e)
                sizes[i] += 1
                break
        else:
            cliques.append(1 << e)
            sizes.append(1)
    return sum(min(s, cap) for s in sizes)


def max_k_free_subset(adj, k: int) -> tuple[int, ...]:
    """Largest vertex set inducing no k-clique; lexicographically smallest one.

    Phase one finds the optimum size branching on high-degree vertices first;
    phase two walks vertices in index order, include-first, and stops at the
    first set reaching that size.
    """
    nbr = _masks(adj)
    n = len(nbr)
    if k < 2:
        return ()
    free = [v for v in range(n) if nbr[v] == 0]
    others = [v for v in range(n) if nbr[v]]
    cap = k - 1

    def allowed(R, C):
        return [e for e in R if not _has_clique(C & nbr[e], k - 1, nbr)]

    best = -1

    def search(R, C, count):
        nonlocal best
        R = allowed(R, C)
        if count + _partition_bound(R, nbr, cap) <= best:
            return
        if not R:
            best = count
            return
        e = R[0]
        search(R[1:], C | (1 << e), count + 1)
        search(R[1:], C, count)

    order = sorted(others, key=lambda v: (-nbr[v].bit_count(), v))
    search(order, 0, 0)
    target = best
    found = None

    def search_lex(R, C, count):
        nonlocal found
        R = allowed(R, C)
        if count + _partition_bound(R, nbr, cap) < target:
            return False
        if count >= target:
            found = C
            return True
        e = R[0]
        return search_lex(R[1:], C | (1 << e), count + 1) or search_lex(R[1:], C, count)

    search_lex(others, 0, 0)
    return tuple(sorted(free + list(_bits(found))))
