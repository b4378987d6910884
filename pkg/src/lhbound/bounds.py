"""Existence conditions and lower/upper bounds on the number of uncorrectable
errors of weight ``ceil(d/2)`` (and on ``|LH_i(T)|`` for larger ``i``),
with report assembly against exhaustive ground truth.

All arithmetic is on Python integers and ``fractions.Fraction``; floats
appear only in the informational random-code predictions.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, log2
from typing import NamedTuple, Optional

from .codefactory import binary_entropy, binomial_weight_model, gv_relative_distance, rm_min_weight_count_bound
from .config import DEFAULT_LIMITS, Limits
from .errors import ConditionNotMet, OutOfRange, ParityMismatch, TooLarge
from .errorstructure import classify_weight, leader_oracle
from .gf2core import LinearCode
from .largerhalf import Provenance, TrialSet

REPORT_SCHEMA = "lhbound.bound_report/1"


def binom(n: int, r: int) -> int:
    """Binomial coefficient, zero outside ``0 <= r <= n``."""
    if n < 0 or r < 0 or r > n:
        return 0
    return comb(n, r)


class Condition(NamedTuple):
    lhs: int
    rhs: int
    holds: bool


def odd_condition(d: int, Ad: int, Ad1: int) -> Condition:
    """``C(d, (d+1)/2) > Ad + Ad1 - 1`` for odd ``d``."""
    if d < 1 or d % 2 == 0:
        raise ParityMismatch(f"d={d} is not odd")
    lhs, rhs = comb(d, (d + 1) // 2), Ad + Ad1 - 1
    return Condition(lhs, rhs, lhs > rhs)


def even_condition(d: int, Ad: int) -> Condition:
    """``C(d, d/2) / 2 > Ad - 1`` for even ``d``."""
    if d < 2 or d % 2:
        raise ParityMismatch(f"d={d} is not even")
    lhs, rhs = comb(d, d // 2) // 2, Ad - 1
    return Condition(lhs, rhs, lhs > rhs)


def theorem1_bounds(d: int, Ad: int, Ad1: int) -> tuple[int, int]:
    """Odd ``d``: ``(lower, upper)``; the lower value is only a bound when
    ``odd_condition`` holds, the upper one always."""
    if d < 1 or d % 2 == 0:
        raise ParityMismatch(f"d={d} is not odd")
    B = comb(d, (d + 1) // 2)
    return B * (Ad + Ad1) - (2 * Ad + Ad1 - 1) * Ad1, B * (Ad + Ad1)


def theorem2_bounds(d: int, Ad: int) -> tuple[int, int]:
    if d < 2 or d % 2:
        raise ParityMismatch(f"d={d} is not even")
    half = comb(d, d // 2) // 2
    return half * Ad - (Ad - 1) * Ad, half * Ad


def theorem3_condition(d: int, Ad: int) -> Condition:
    if d < 2 or d % 2:
        raise ParityMismatch(f"d={d} is not even")
    lhs, rhs = comb(d, d // 2) // 2, -(-(Ad - 1) // 2)
    return Condition(lhs, rhs, lhs > rhs)


def theorem3_lower(d: int, Ad: int) -> int:
    """Improved even-``d`` lower bound, valid for the trial set of all nonzero codewords."""
    cond = theorem3_condition(d, Ad)
    if not cond.holds:
        raise ConditionNotMet(f"{cond.lhs} > {cond.rhs} is false")
    return cond.lhs * Ad - cond.rhs * Ad


@dataclass(frozen=True)
class GeneralizedBoundReport:
    i: int
    B_i: int
    condition: Condition
    lower: int
    upper_as_stated: int
    upper_as_proved: int
    lh_count: Optional[int] = None
    e1_count: Optional[int] = None

    @property
    def lower_claimed(self) -> bool:
        return self.condition.holds

    def verdict(self) -> Optional[bool]:
        if self.lh_count is None:
            return None
        ok = self.lh_count <= self.upper_as_proved <= self.upper_as_stated
        if self.condition.holds:
            ok = ok and self.lower <= self.lh_count
        return ok


def theorem4_bounds(
    i: int, d: int, A2im2: int, A2im1: int, A2i: int, n: Optional[int] = None
) -> GeneralizedBoundReport:
    """Bounds on ``|LH_i(T)|`` from the weight-``2i-2, 2i-1, 2i`` members of ``T``.

    ``upper_as_stated`` carries a factor 2 on the ``C(2i-1, i)`` terms;
    ``upper_as_proved`` is the term-by-term sum of the sizes of
    ``LH+``, ``LH`` and ``LH-`` for those weights.
    """
    h = ceil(d / 2)
    if i < h or (n is not None and i > n // 2):
        raise OutOfRange(f"i={i} outside {h}..{'n/2' if n is None else n // 2}")
    B = A2im2 + A2im1 + A2i
    base = binom(2 * i - 3, i)
    overlap = binom(2 * i - h, i)
    cond = Condition(base, 3 * overlap * B, base > 3 * overlap * B)
    lower = (base - 3 * overlap * B) * B
    stated = base * A2im2 + 2 * binom(2 * i - 1, i) * (A2im1 + A2i)
    proved = base * A2im2 + binom(2 * i - 1, i) * (A2im1 + A2i)
    return GeneralizedBoundReport(i, B, cond, lower, stated, proved)


# --------------------------------------------------------------------------
# gap diagnostics


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class GapDiagnostics:
    parity: str
    gap: int
    gap_cap: Optional[int]
    ratio: Fraction
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "parity": self.parity,
            "gap": str(self.gap),
            "gap_cap": None if self.gap_cap is None else str(self.gap_cap),
            "ratio": _fraction_str(self.ratio),
            "ratio_decimal": f"{float(self.ratio):.12g}",
        }
        for key, value in self.extra.items():
            if isinstance(value, Fraction):
                out[key] = _fraction_str(value)
                out[key + "_decimal"] = f"{float(value):.12g}"
            elif isinstance(value, bool) or value is None:
                out[key] = value
            elif isinstance(value, int):
                out[key] = str(value)
            elif isinstance(value, float):
                out[key] = f"{value:.12g}"
            else:
                out[key] = value
        return out


def gap_diagnostics(code: LinearCode, limits: Limits = DEFAULT_LIMITS) -> GapDiagnostics:
    """Upper-minus-lower gap and the ratio whose vanishing makes the bounds meet.

    Reed-Muller codes additionally get the chain
    ``Ad / C(d, d/2) <= (2^(m+1) - 2)^r / 2^(2^(m-r)) <= 2^((m+1) r - 2^(m-r))``
    evaluated exactly; whether each link holds is reported, not assumed.
    Random codes get Gilbert-Varshamov and binomial-model predictions.
    """
    wd = code.weight_distribution(limits)
    d = code.min_distance(limits)
    Ad = wd[d]
    Ad1 = wd[d + 1] if d + 1 <= code.n else 0
    extra: dict = {}
    if d % 2:
        parity = "odd"
        gap = (2 * Ad + Ad1 - 1) * Ad1
        gap_cap = None
        ratio = Fraction(Ad1, comb(d, (d + 1) // 2))
    else:
        parity = "even"
        gap = (Ad - 1) * Ad
        gap_cap = Ad * Ad
        ratio = Fraction(Ad, comb(d, d // 2))
    meta = code.meta
    if meta.get("family") == "rm" and meta.get("r", 0) >= 1:
        r, m = meta["r"], meta["m"]
        middle = Fraction(rm_min_weight_count_bound(r, m), 2 ** (2 ** (m - r)))
        exponent = (m + 1) * r - 2 ** (m - r)
        last = Fraction(2) ** exponent
        extra.update(
            rm_ratio=Fraction(Ad, comb(d, d // 2)),
            rm_chain_middle=middle,
            rm_chain_exponent=exponent,
            rm_chain_last=last,
            rm_ratio_le_middle=Fraction(Ad, comb(d, d // 2)) <= middle,
            rm_middle_le_last=middle <= last,
        )
    if meta.get("family") == "random":
        n, k = code.n, code.k
        delta = gv_relative_distance(k / n) if k < n else 0.0
        pred_ad = binomial_weight_model(n, k, d)
        pred_ad1 = binomial_weight_model(n, k, d + 1) if d + 1 <= n else 0.0
        denom = comb(d, (d + 1) // 2) if d % 2 else comb(d, d // 2)
        extra.update(
            delta_gv=delta,
            predicted_d=n * delta,
            predicted_Ad=pred_ad,
            predicted_Ad1=pred_ad1,
            predicted_ratio=(pred_ad1 if d % 2 else pred_ad) / denom,
            entropy_exponent=n * (binary_entropy(delta) + k / n - 1),
            log2_central_binomial=log2(denom),
        )
    return GapDiagnostics(parity, gap, gap_cap, ratio, extra)


# --------------------------------------------------------------------------
# reports


@dataclass
class BoundReport:
    code_name: str
    n: int
    k: int
    d: int
    trial_set: str
    parity: str
    Ad_T: int
    Ad1_T: Optional[int]
    condition: Condition
    lower: int
    upper: int
    improved_condition: Optional[Condition] = None
    improved_lower: Optional[int] = None
    count: Optional[int] = None
    count_oracle: Optional[str] = None
    gap: Optional[GapDiagnostics] = None
    generalized: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def half_weight(self) -> int:
        return ceil(self.d / 2)

    @property
    def verdict_mode(self) -> str:
        return "sandwich" if self.condition.holds else "upper-only"

    def verdict(self) -> Optional[str]:
        """``PASS``/``FAIL`` when a ground-truth count is attached."""
        if self.count is None:
            return None
        ok = self.count <= self.upper
        if self.condition.holds:
            ok = ok and self.lower <= self.count
        if self.improved_condition is not None and self.improved_condition.holds:
            ok = ok and self.improved_lower <= self.count
        return "PASS" if ok else "FAIL"

    def to_dict(self) -> dict:
        s = lambda x: None if x is None else str(x)  # noqa: E731
        cond = lambda c: None if c is None else {"lhs": str(c.lhs), "rhs": str(c.rhs), "holds": c.holds}  # noqa: E731
        return {
            "schema": REPORT_SCHEMA,
            "code": {"name": self.code_name, "n": s(self.n), "k": s(self.k), "d": s(self.d), "meta": self.meta},
            "trial_set": self.trial_set,
            "parity": self.parity,
            "half_weight": s(self.half_weight),
            "Ad_T": s(self.Ad_T),
            "Ad1_T": s(self.Ad1_T),
            "condition": cond(self.condition),
            "lower": s(self.lower),
            "lower_claimed": self.condition.holds,
            "upper": s(self.upper),
            "improved_condition": cond(self.improved_condition),
            "improved_lower": s(self.improved_lower),
            "count": s(self.count),
            "count_oracle": self.count_oracle,
            "verdict_mode": self.verdict_mode,
            "verdict": self.verdict(),
            "gap": None if self.gap is None else self.gap.to_dict(),
            "generalized": [generalized_to_dict(g) for g in self.generalized],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


CSV_COLUMNS = [
    "code", "n", "k", "d", "trial_set", "parity", "Ad_T", "Ad1_T", "cond_lhs", "cond_rhs", "cond_holds",
    "lower", "upper", "improved_lower", "count", "verdict_mode", "verdict",
]


def report_csv_row(r: BoundReport) -> list[str]:
    s = lambda x: "" if x is None else str(x)  # noqa: E731
    return [
        r.code_name, s(r.n), s(r.k), s(r.d), r.trial_set, r.parity, s(r.Ad_T), s(r.Ad1_T),
        s(r.condition.lhs), s(r.condition.rhs), s(r.condition.holds), s(r.lower), s(r.upper),
        s(r.improved_lower), s(r.count), r.verdict_mode, s(r.verdict()),
    ]


def reports_to_csv(reports: list[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(report_csv_row(r))
    return buf.getvalue()


def generalized_to_dict(g: GeneralizedBoundReport) -> dict:
    s = lambda x: None if x is None else str(x)  # noqa: E731
    return {
        "i": s(g.i),
        "B_i": s(g.B_i),
        "condition": {"lhs": s(g.condition.lhs), "rhs": s(g.condition.rhs), "holds": g.condition.holds},
        "lower": s(g.lower),
        "lower_claimed": g.lower_claimed,
        "upper_as_stated": s(g.upper_as_stated),
        "upper_as_proved": s(g.upper_as_proved),
        "lh_count": s(g.lh_count),
        "e1_count": s(g.e1_count),
        "verdict": g.verdict(),
    }


def generalized_report(
    code: LinearCode,
    i: int,
    trial_set: Optional[TrialSet] = None,
    with_ground_truth: bool = False,
    oracle=None,
    limits: Limits = DEFAULT_LIMITS,
) -> GeneralizedBoundReport:
    T = trial_set or TrialSet.all_nonzero(code)
    d = code.min_distance(limits)
    counts = [T.count_of_weight(w, limits) if 1 <= w <= code.n else 0 for w in (2 * i - 2, 2 * i - 1, 2 * i)]
    g = theorem4_bounds(i, d, *counts, n=code.n)
    if not with_ground_truth:
        return g
    lh = len(T.lh_slice(i, limits))
    e1 = None
    try:
        if oracle is None:
            oracle = leader_oracle(code, limits)
        e1 = classify_weight(code, i, "E1", oracle, limits).count
    except TooLarge:
        pass
    return GeneralizedBoundReport(g.i, g.B_i, g.condition, g.lower, g.upper_as_stated, g.upper_as_proved, lh, e1)


def bound_report(
    code: LinearCode,
    trial_set: Optional[TrialSet] = None,
    with_ground_truth: bool = False,
    generalized_weights=(),
    oracle=None,
    limits: Limits = DEFAULT_LIMITS,
) -> BoundReport:
    """Conditions, bounds and (optionally) the exhaustive ``|E1_ceil(d/2)|``.

    Ground truth uses the coset table when ``n - k <= r_max``, else the
    codeword scan when ``k <= k_enum_max``; otherwise ``TooLarge`` is
    raised.
    """
    T = trial_set or TrialSet.all_nonzero(code)
    d = code.min_distance(limits)
    Ad = T.count_of_weight(d, limits)
    if d % 2:
        Ad1 = T.count_of_weight(d + 1, limits) if d + 1 <= code.n else 0
        cond = odd_condition(d, Ad, Ad1)
        lower, upper = theorem1_bounds(d, Ad, Ad1)
        improved_cond = improved = None
    else:
        Ad1 = None
        cond = even_condition(d, Ad)
        lower, upper = theorem2_bounds(d, Ad)
        improved_cond = improved = None
        if T.provenance == Provenance.ALL_NONZERO:
            improved_cond = theorem3_condition(d, Ad)
            if improved_cond.holds:
                improved = theorem3_lower(d, Ad)
    report = BoundReport(
        code_name=code.name,
        n=code.n,
        k=code.k,
        d=d,
        trial_set=T.provenance.value,
        parity="odd" if d % 2 else "even",
        Ad_T=Ad,
        Ad1_T=Ad1,
        condition=cond,
        lower=lower,
        upper=upper,
        improved_condition=improved_cond,
        improved_lower=improved,
        gap=gap_diagnostics(code, limits),
        meta=dict(code.meta),
    )
    if with_ground_truth:
        if oracle is None:
            oracle = leader_oracle(code, limits)
        report.count = classify_weight(code, report.half_weight, "E1", oracle, limits).count
        report.count_oracle = oracle.kind
    for i in generalized_weights:
        report.generalized.append(generalized_report(code, i, T, with_ground_truth, oracle, limits))
    return report
