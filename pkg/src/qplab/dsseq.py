"""Generalized Davenport-Schinzel sequence tools.

Sequences are plain lists/tuples of ints; positions are 0-based.  Two
pattern families are supported:

* ``up(l, t)``: a block of l distinct symbols repeated t times,
* ``up-down-up(l)``: a_1..a_l, a_{l-1}..a_1, a_2..a_l (length 3l-2).

Exact detection enumerates ordered l-tuples of distinct symbols and embeds
the fixed word by leftmost matching, which is optimal for a fixed word; the
enumeration itself lives in :mod:`qplab.kernels`.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .errors import BudgetExhausted, SizeLimit

UP = "up"
UP_DOWN_UP = "up-down-up"

DEFAULT_MAX_ALPHABET = 8
DEFAULT_MAX_L = 4
DEFAULT_MAX_LENGTH = 40


@dataclass(frozen=True)
class PatternOccurrence:
    kind: str
    l: int
    t: int | None
    symbols: tuple[int, ...]
    positions: tuple[int, ...]

    @property
    def label(self) -> str:
        if self.kind == UP:
            return f"up({self.l},{self.t})"
        return f"up-down-up({self.l})"

    def to_json(self) -> dict:
        return {"kind": self.label, "symbols": list(self.symbols),
                "positions": list(self.positions)}


def up_template(l: int, t: int) -> list[int]:
    return [i for _ in range(t) for i in range(l)]


def udu_template(l: int) -> list[int]:
    return list(range(l)) + list(range(l - 2, -1, -1)) + list(range(1, l))


def is_l_regular(seq: Sequence[int], l: int) -> bool:
    """Any l consecutive terms (or all terms, if fewer) are pairwise distinct."""
    for i in range(len(seq)):
        for j in range(i + 1, min(i + l, len(seq))):
            if seq[i] == seq[j]:
                return False
    return True


def longest_l_regular_subsequence(seq: Sequence[int], l: int, mode: str = "exact",
                                  max_length: int | None = DEFAULT_MAX_LENGTH,
                                  max_l: int | None = DEFAULT_MAX_L):
    """Longest l-regular subsequence as ``(length, indices)``.

    ``mode="greedy"`` keeps a term iff it differs from the last l-1 kept
    terms, giving a maximal (not always maximum) answer.  ``mode="exact"``
    runs a dynamic program over the last l-1 kept symbols; ties resolve to
    the lexicographically smallest index tuple.
    """
    if l <= 1:
        return len(seq), tuple(range(len(seq)))
    if mode == "greedy":
        kept: list[int] = []
        for i, s in enumerate(seq):
            if all(seq[j] != s for j in kept[-(l - 1):]):
                kept.append(i)
        return len(kept), tuple(kept)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if (max_length is not None and len(seq) > max_length) or (max_l is not None and l > max_l):
        raise SizeLimit(f"exact l-regular search limited to length <= {max_length}, l <= {max_l}")

    # state: last (l-1) kept symbols -> best index tuple reaching it
    states: dict[tuple, tuple[int, ...]] = {(): ()}
    for i, s in enumerate(seq):
        updates = {}
        for key, idx in states.items():
            if s in key:
                continue
            nkey = (key + (s,))[-(l - 1):]
            cand = idx + (i,)
            old = updates.get(nkey, states.get(nkey))
            if old is None or len(cand) > len(old) or (len(cand) == len(old) and cand < old):
                updates[nkey] = cand
        states.update(updates)
    best = min(states.values(), key=lambda idx: (-len(idx), idx))
    return len(best), best


def _detect(seq, template, l, kind, t, mode, max_alphabet, max_l):
    seq = list(seq)
    symbols = sorted(set(seq))
    if len(template) > len(seq) or l > len(symbols):
        return None
    if mode == "exact":
        if (max_alphabet is not None and len(symbols) > max_alphabet) or (max_l is not None and l > max_l):
            raise SizeLimit(f"exact detection limited to alphabet <= {max_alphabet}, l <= {max_l}")
        hit = kernels.first_template_match(seq, template, l, symbols)
        if hit is None:
            return None
        return PatternOccurrence(kind, l, t, hit[0], hit[1])
    if mode != "greedy":
        raise ValueError(f"unknown mode {mode!r}")
    # only tuples made of the first l distinct symbols after each start
    candidates = set()
    for start in range(len(seq)):
        block = []
        for s in seq[start:]:
            if s not in block:
                block.append(s)
                if len(block) == l:
                    candidates.add(tuple(block))
                    break
    for cand in sorted(candidates):
        pos = _leftmost([cand[x] for x in template], seq)
        if pos is not None:
            return PatternOccurrence(kind, l, t, cand, pos)
    return None


def _leftmost(word, seq):
    pos = []
    i = 0
    for w in word:
        while i < len(seq) and seq[i] != w:
            i += 1
        if i == len(seq):
            return None
        pos.append(i)
        i += 1
    return tuple(pos)


def contains_up(seq: Sequence[int], l: int, t: int, mode: str = "exact",
                max_alphabet: int | None = DEFAULT_MAX_ALPHABET,
                max_l: int | None = DEFAULT_MAX_L) -> PatternOccurrence | None:
    """First occurrence of an up(l, t) subsequence, or None.

    Returns immediately when the pattern is longer than ``seq`` or needs more
    distinct symbols than it has, whatever the limits.
    """
    if l < 2 or t < 2:
        raise ValueError("up(l, t) needs l >= 2 and t >= 2")
    return _detect(seq, up_template(l, t), l, UP, t, mode, max_alphabet, max_l)


def contains_up_down_up(seq: Sequence[int], l: int, mode: str = "exact",
                        max_alphabet: int | None = DEFAULT_MAX_ALPHABET,
                        max_l: int | None = DEFAULT_MAX_L) -> PatternOccurrence | None:
    if l < 2:
        raise ValueError("up-down-up(l) needs l >= 2")
    return _detect(seq, udu_template(l), l, UP_DOWN_UP, None, mode, max_alphabet, max_l)


# -- Ackermann ---------------------------------------------------------------

def ackermann_capped(m: int, n: int, cap: int) -> int:
    """``min(A(m, n), cap + 1)`` for the two-argument Ackermann function."""
    if m == 0:
        v = n + 1
    elif m == 1:
        v = n + 2
    elif m == 2:
        v = 2 * n + 3
    elif m == 3:
        if n + 3 > cap.bit_length() + 1:
            return cap + 1
        v = (1 << (n + 3)) - 3
    else:
        v = ackermann_capped(m - 1, 1, cap)
        for _ in range(n):
            if v > cap:
                return cap + 1
            v = ackermann_capped(m - 1, v, cap)
    return min(v, cap + 1)


@dataclass(frozen=True)
class AckermannScale:
    """Which inverse Ackermann function the bounds use.

    alpha(n) = min{m : A(m, m) >= n} with A(0, n) = n + 1,
    A(m, 0) = A(m - 1, 1), A(m, n) = A(m - 1, A(m, n - 1)).
    ``exponent_mode`` decides how alpha^c(n) is read: ``"power"`` gives
    alpha(n) ** c, ``"iterate"`` applies alpha c times.
    """

    exponent_mode: str = "power"
    limit: int = 10 ** 6

    def alpha(self, n: int) -> int:
        if n < 0:
            raise ValueError("alpha is defined for n >= 0")
        m = 0
        while ackermann_capped(m, m, n) < n:
            m += 1
        return m

    def alpha_pow(self, n: int, c: int) -> int:
        if self.exponent_mode == "power":
            return self.alpha(n) ** c
        if self.exponent_mode == "iterate":
            v = n
            for _ in range(c):
                nv = self.alpha(v)
                if nv == v:
                    break
                v = nv
            return v
        raise ValueError(f"unknown exponent mode {self.exponent_mode!r}")


DEFAULT_SCALE = AckermannScale()


def inverse_ackermann(n: int, scale: AckermannScale = DEFAULT_SCALE) -> int:
    return scale.alpha(n)


def klazar_bound(n: int, l: int, t: int, scale: AckermannScale = DEFAULT_SCALE):
    """n * l * 2^(lt-3) * (10 l)^(10 alpha^(lt)(n)), exactly.

    Returns ``math.inf`` when the exponent 10 * alpha^(lt)(n) exceeds
    ``scale.limit``; the integer would not fit in memory.
    """
    if n < 1 or l < 2 or t < 3:
        raise ValueError("klazar_bound needs n >= 1, l >= 2, t >= 3")
    e = 10 * scale.alpha_pow(n, l * t)
    if e > scale.limit:
        return math.inf
    return n * l * 2 ** (l * t - 3) * (10 * l) ** e


def udu_free_bound(n: int, l: int, c1: int = 1, c2: int = 10) -> int:
    """Length cap for l-regular sequences on n symbols avoiding up-down-up(l).

    The known bound is 2^O(l) n; this is its configured form c1 * 2^(c2 l) * n.
    """
    return c1 * 2 ** (c2 * l) * n


def random_avoiding_sequence(n: int, l: int, t: int, seed: int, max_length: int | None = None,
                             budget: int = 1000) -> list[int]:
    """Random l-regular sequence over 1..n that avoids up(l, t).

    Rejection sampling: draw a target length, extend by symbols that differ
    from the previous l-1 terms, keep the first draw free of the pattern.
    """
    rng = random.Random(seed)
    cap = max_length if max_length is not None else 4 * n * l
    for _ in range(budget):
        target = rng.randint(1, max(1, cap))
        seq: list[int] = []
        while len(seq) < target:
            recent = set(seq[-(l - 1):]) if l > 1 else set()
            choices = [s for s in range(1, n + 1) if s not in recent]
            if not choices:
                break
            seq.append(rng.choice(choices))
        if contains_up(seq, l, t, max_alphabet=None, max_l=None) is None:
            if t >= 3 and len(seq) > klazar_bound(n, l, t):
                raise AssertionError("sequence longer than the Klazar bound")
            return seq
    raise BudgetExhausted(f"no up({l},{t})-free sequence within {budget} draws")
