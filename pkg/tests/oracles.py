"""Brute-force reference implementations used as test oracles.

Each one is deliberately naive: it enumerates everything the fast code
prunes, and shares no code with the package beyond basic value types.
"""
from fractions import Fraction
from itertools import combinations


# -- sequences ------------------------------------------------------------

def pattern_brute(seq, template, l):
    """Smallest (symbols, positions) over all index subsets matching ``template``."""
    best = None
    for pos in combinations(range(len(seq)), len(template)):
        slot = {}
        ok = True
        for p, t in zip(pos, template):
            s = seq[p]
            if slot.setdefault(t, s) != s:
                ok = False
                break
        if not ok or len(set(slot.values())) != l:
            continue
        cand = (tuple(slot[i] for i in range(l)), pos)
        if best is None or cand < best:
            best = cand
    return best


def up_word(l, t):
    return [i for _ in range(t) for i in range(l)]


def udu_word(l):
    return list(range(l)) + list(range(l - 2, -1, -1)) + list(range(1, l))


def regular_brute(seq, l):
    """Longest l-regular subsequence length by trying subsets, largest first."""
    for size in range(len(seq), 0, -1):
        for idx in combinations(range(len(seq)), size):
            sub = [seq[i] for i in idx]
            if all(len(set(sub[i:i + l])) == len(sub[i:i + l]) for i in range(len(sub))):
                return size
    return 0


def ackermann(m, n):
    """Direct recurrence, iterative on m to spare the Python stack."""
    stack = [m]
    while stack:
        m = stack.pop()
        if m == 0:
            n += 1
        elif n == 0:
            stack.append(m - 1)
            n = 1
        else:
            stack.append(m - 1)
            stack.append(m)
            n -= 1
    return n


# -- geometry / drawings ------------------------------------------------------

def _orient(p, q, r):
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _xy(p):
    if hasattr(p, "x"):
        return Fraction(p.x), Fraction(p.y)
    return Fraction(p[0]), Fraction(p[1])


def segments_properly_cross(a, b, c, d):
    a, b, c, d = (_xy(p) for p in (a, b, c, d))
    return (_orient(a, b, c) * _orient(a, b, d) < 0) and (_orient(c, d, a) * _orient(c, d, b) < 0)


def _on(p, q, r):
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segments_intersect(a, b, c, d):
    """Closed segments ab and cd share at least one point."""
    a, b, c, d = (_xy(p) for p in (a, b, c, d))
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and _on(a, b, c)) or (o2 == 0 and _on(a, b, d))
            or (o3 == 0 and _on(c, d, a)) or (o4 == 0 and _on(c, d, b)))


def straight_crossing_pairs(points, edges):
    """Index pairs of straight edges that cross properly (shared endpoints excluded)."""
    out = set()
    for i, j in combinations(range(len(edges)), 2):
        (u1, v1), (u2, v2) = edges[i], edges[j]
        if len({u1, v1, u2, v2}) < 4:
            continue
        if segments_properly_cross(points[u1], points[v1], points[u2], points[v2]):
            out.add((i, j))
    return out


def max_clique_brute(m, pairs, max_size=None):
    """Largest pairwise-adjacent subset, lexicographically smallest among ties."""
    adj = set(pairs) | {(j, i) for i, j in pairs}
    top = m if max_size is None else min(m, max_size)
    for size in range(top, 0, -1):
        for sub in combinations(range(m), size):
            if all((a, b) in adj for a, b in combinations(sub, 2)):
                return size, sub
    return 0, ()


def bisection_brute(n, edges):
    lo, hi = -(-n // 3), (2 * n) // 3
    best = None
    for size in range(lo, hi + 1):
        for side in combinations(range(n), size):
            s = set(side)
            cut = sum(1 for u, v in edges if (u in s) != (v in s))
            if best is None or cut < best:
                best = cut
    return best


def extremal_brute(m, pairs, k):
    """Largest subset of range(m) with no k pairwise adjacent members."""
    adj = set(pairs) | {(j, i) for i, j in pairs}
    for size in range(m, -1, -1):
        for sub in combinations(range(m), size):
            if not any(all((a, b) in adj for a, b in combinations(c, 2))
                       for c in combinations(sub, k)):
                return size, sub
    return 0, ()
