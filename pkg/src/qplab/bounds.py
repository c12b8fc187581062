"""Edge-count bounds for k-quasi-planar graphs, evaluated in log2 space.

Several of these bounds are towers (2 to the power alpha(n)^c_k with c_k
around 10^15), so every formula returns :class:`BoundValue`, which stores
log2 of the value as an mpmath float.  All logarithms are base 2.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable

import mpmath
from mpmath import mpf

from .dsseq import DEFAULT_SCALE, AckermannScale
from .errors import MissingConstant

PREC_DPS = 40
C_K = "c_k"


def c_k(k: int) -> int:
    """10^5 * 2^(k^2 + 2k)."""
    return 10 ** 5 * 2 ** (k * k + 2 * k)


@dataclass(frozen=True)
class ConstantsLedger:
    """Constants the formulas need.

    ``"c_k"`` stands for 10^5 * 2^(k^2+2k); ``None`` means unset.
    """

    xmono_cubic_c: object = 1
    fox_pach_c: object = 1
    valtr_c: object = 1
    pss_c: object = C_K
    prt_c: object = C_K
    udu_bound_c1: int = 1
    udu_bound_c2: int = 10
    scale: AckermannScale = DEFAULT_SCALE

    def get(self, name: str, k: int):
        value = getattr(self, name)
        if value is None:
            raise MissingConstant(f"constant {name} is unset")
        return c_k(k) if value == C_K else value

    def to_json(self) -> dict:
        return {
            "xmono_cubic_c": self.xmono_cubic_c, "fox_pach_c": self.fox_pach_c, "valtr_c": self.valtr_c,
            "pss_c": self.pss_c, "prt_c": self.prt_c,
            "udu_bound_c1": self.udu_bound_c1, "udu_bound_c2": self.udu_bound_c2,
            "alpha": {"variant": "min{m : A(m,m) >= n}", "exponent_mode": self.scale.exponent_mode},
            "log_base": 2,
        }


DEFAULT_CONSTANTS = ConstantsLedger()


def _log2(x) -> mpf:
    return mpmath.log(mpf(x), 2)


def format_log2(log2_value: mpf) -> str:
    """Scientific notation with 15 significant digits.

    Values whose decimal exponent itself exceeds 10^15 print as
    ``10^(<exponent in the same notation>)``.
    """
    with mpmath.workdps(PREC_DPS):
        l10 = log2_value * mpmath.log10(2)
        if l10 < 300:
            return f"{float(mpmath.power(10, l10)):.14e}"
        if l10 < mpf(10) ** 15:
            e = int(mpmath.floor(l10))
            mant = float(mpmath.power(10, l10 - e))
            text = f"{mant:.14f}"
            if text.startswith("10."):
                mant, e = mant / 10, e + 1
                text = f"{mant:.14f}"
            return f"{text}e{e:+d}"
        return f"10^({format_log2(_log2(l10))})"


@dataclass(frozen=True, order=True)
class BoundValue:
    log2: mpf

    def __str__(self):
        return format_log2(self.log2)

    def to_json(self) -> str:
        return str(self)


def _alpha_power(scale: AckermannScale, n: int, c: int) -> mpf:
    if scale.exponent_mode == "power":
        return mpf(scale.alpha(n)) ** c
    return mpf(scale.alpha_pow(n, c))


@dataclass(frozen=True)
class BoundFormula:
    identifier: str
    expression: str
    k_min: int
    source: str
    log2_fn: Callable = field(repr=False, compare=False)

    def evaluate(self, n: int, k: int, constants: ConstantsLedger = DEFAULT_CONSTANTS) -> BoundValue:
        return evaluate_bound(self, n, k, constants)


def _alpha_tower(n, k, c):
    L = _log2(n)
    return L + 2 * _log2(L) + _alpha_power(c.scale, n, c_k(k))


def _xmono_cubic(n, k, c):
    L = _log2(n)
    return c.get("xmono_cubic_c", k) * mpf(k) ** 3 + L + _log2(L)


def _polylog(exp_fn, const):
    def fn(n, k, c):
        L = _log2(n)
        return _log2(c.get(const, k)) + L + exp_fn(k) * _log2(L)
    return fn


def _fox_pach(n, k, c):
    cc = mpf(c.get("fox_pach_c", k))
    L, Lk = _log2(n), _log2(k)
    return L + cc * Lk * _log2(cc * L / Lk)


def _valtr(n, k, c):
    L = _log2(n)
    return mpf(2) ** (c.get("valtr_c", k) * k) + L + _log2(L)


FORMULAS: dict[str, BoundFormula] = {f.identifier: f for f in [
    BoundFormula("alpha_tower", "(n log^2 n) 2^(alpha(n)^c_k), c_k = 10^5 2^(k^2+2k)", 5,
                 "simple k-quasi-planar graphs", _alpha_tower),
    BoundFormula("xmono_cubic", "2^(c k^3) n log n", 2,
                 "k-quasi-planar graphs with x-monotone edges", _xmono_cubic),
    BoundFormula("pss", "c n (log n)^(2k-4)", 5, "Pach-Shahrokhi-Szegedy, simple",
                 _polylog(lambda k: 2 * k - 4, "pss_c")),
    BoundFormula("pss_ackerman", "c n (log n)^(2k-8)", 5, "Pach-Shahrokhi-Szegedy with Ackerman's k=4 result",
                 _polylog(lambda k: 2 * k - 8, "pss_c")),
    BoundFormula("prt", "c n (log n)^(4k-12)", 5, "Pach-Radoicic-Toth, not necessarily simple",
                 _polylog(lambda k: 4 * k - 12, "prt_c")),
    BoundFormula("prt_ackerman", "c n (log n)^(4k-16)", 5, "Pach-Radoicic-Toth with Ackerman's k=4 result",
                 _polylog(lambda k: 4 * k - 16, "prt_c")),
    BoundFormula("fox_pach", "n (c log n / log k)^(c log k)", 2, "Fox-Pach, simple", _fox_pach),
    BoundFormula("valtr_xmono", "2^(2^(c k)) n log n", 2, "Valtr, simple x-monotone", _valtr),
]}


def evaluate_bound(f: BoundFormula | str, n: int, k: int,
                   constants: ConstantsLedger = DEFAULT_CONSTANTS) -> BoundValue:
    if isinstance(f, str):
        f = FORMULAS[f]
    if n < 2 or k < 2:
        raise ValueError("bounds are evaluated for n >= 2 and k >= 2")
    with mpmath.workdps(PREC_DPS):
        return BoundValue(+f.log2_fn(n, k, constants))


@dataclass(frozen=True)
class TableRow:
    formula: str
    k: int
    n: int
    value: BoundValue
    smallest: bool
    crossover: bool = False


def bounds_table(formulas, ks, ns, constants: ConstantsLedger = DEFAULT_CONSTANTS) -> list[TableRow]:
    """One row per (k, n, formula).

    ``smallest`` flags the least bound at each (k, n) (ties flag all);
    ``crossover`` flags a formula that is smallest at this n but was not at
    the previous n of the sweep.
    """
    unknown = [f for f in formulas if f not in FORMULAS]
    if unknown:
        raise MissingConstant(f"unknown formula(s) {unknown}; known: {sorted(FORMULAS)}")
    rows = []
    for k in ks:
        prev: set[str] | None = None
        for n in ns:
            vals = [(name, evaluate_bound(name, n, k, constants)) for name in formulas]
            least = min(v.log2 for _, v in vals)
            now = {name for name, v in vals if v.log2 == least}
            rows.extend(TableRow(name, k, n, v, name in now,
                                 prev is not None and name in now and name not in prev)
                        for name, v in vals)
            prev = now
    return rows


def table_csv(rows, constants: ConstantsLedger = DEFAULT_CONSTANTS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["formula", "k", "n", "value", "constants_json", "smallest", "crossover"])
    cj = json.dumps(constants.to_json(), sort_keys=True)
    for r in rows:
        w.writerow([r.formula, r.k, r.n, str(r.value), cj, str(r.smallest).lower(),
                    str(r.crossover).lower()])
    return buf.getvalue()


@dataclass(frozen=True)
class RecursionAudit:
    n: int
    k: int
    ratio: float
    ratio_ok: bool
    margin: float
    threshold_constant: float
    claimed_constant: int
    threshold_implies_claimed_constant: bool
    sqrt_threshold_constant: float
    threshold_below_main_bound: bool


def recursion_audit(n: int, k: int, constants: ConstantsLedger = DEFAULT_CONSTANTS) -> RecursionAudit:
    """Arithmetic of the balanced-cut case of the main induction.

    ``ratio`` is (1 - 2 log(3/2)/log n + log^2(3/2)/log^2 n) / (1 - 1/(7 log n))
    and must not exceed 1.  The threshold 7m/(100 log n) = 3 sqrt(mn) solves
    to m = (300/7)^2 n log^2 n; the audit reports whether that implies the
    claimed m <= 43 n log^2 n and whether it sits below the alpha-tower bound.
    """
    with mpmath.workdps(PREC_DPS):
        L = _log2(n)
        q = _log2(mpf(3) / 2)
        ratio = (1 - 2 * q / L + q * q / (L * L)) / (1 - 1 / (7 * L))
        thr = (mpf(300) / 7) ** 2
        below = _log2(thr) <= _alpha_power(constants.scale, n, c_k(k))
        return RecursionAudit(n, k, float(ratio), bool(ratio <= 1), float(1 - ratio), float(thr), 43,
                              bool(thr <= 43), float(mpf(300) / 7), bool(below))


@dataclass(frozen=True)
class CrossingHeavyAudit:
    n: int
    k: int
    case_log2: str
    main_bound_log2: str
    holds: bool


def crossing_heavy_audit(n: int, k: int, constants: ConstantsLedger = DEFAULT_CONSTANTS) -> CrossingHeavyAudit:
    """Compare the crossing-heavy case's final bound with the alpha-tower value.

    m <= 4 10^4 2^(2k^2+2k) 2^(2^(k^2+2k)-3) n (10 2^(k^2+k))^(10 alpha^(2^(k^2+2k))(n)) log^2 n
    """
    with mpmath.workdps(PREC_DPS):
        L = _log2(n)
        big = 2 ** (k * k + 2 * k)
        lhs = (_log2(4 * 10 ** 4) + 2 * k * k + 2 * k + (big - 3) + L
               + 10 * _alpha_power(constants.scale, n, big) * _log2(10 * 2 ** (k * k + k))
               + 2 * _log2(L))
        rhs = evaluate_bound("alpha_tower", n, k, constants).log2
        return CrossingHeavyAudit(n, k, mpmath.nstr(lhs, 15), mpmath.nstr(rhs, 15), bool(lhs <= rhs))
