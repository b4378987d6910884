"""Invariant checks run by ``lhbound verify`` and the acceptance tests.

Each check returns a ``Check``; a failing check carries a printable
witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Callable

import numpy as np

from .bounds import even_condition, odd_condition
from .config import DEFAULT_LIMITS, Limits
from .errorstructure import (
    ScanOracle,
    classify_weight,
    leader_oracle,
    minimal_uncorrectable,
    verify_monotone,
)
from .gf2core import BitVector, LinearCode
from .largerhalf import (
    TrialSet,
    code_lh_slice,
    is_trial_set,
    larger_halves,
    larger_halves_oracle,
    pairwise_lh_intersection_check,
    verify_trial_set_necessity,
)

SUITES = ("monotone", "oracles", "lh-oracle", "chain", "half-distance", "intersections", "trial-set", "necessity")


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    skipped: bool = False

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.ok else "FAIL")
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def check_monotone(code: LinearCode, oracle, limits: Limits) -> Check:
    mode = "exhaustive" if code.n <= 24 else "sampled"
    res = verify_monotone(code, mode=mode, oracle=oracle, limits=limits)
    if res.ok:
        return Check("monotone", True, f"{mode}, {res.checked_pairs} covering pairs")
    x, y = res.witness
    return Check("monotone", False, f"{x} is uncorrectable but {y} is correctable")


def check_oracles(code: LinearCode, oracle, limits: Limits, max_n: int = 16) -> Check:
    """Coset table against the per-vector codeword scan on every vector."""
    if code.n > max_n or code.k > limits.k_enum_max or oracle.kind != "table":
        return Check("oracles", True, "not applicable", skipped=True)
    allv = np.arange(1 << code.n, dtype=np.uint64)
    a = oracle.is_leader_values(allv)
    b = ScanOracle(code, limits).is_leader_values(allv)
    bad = np.flatnonzero(a != b)
    if len(bad):
        v = BitVector(code.n, int(allv[bad[0]]))
        return Check("oracles", False, f"table and scan disagree on {v}")
    return Check("oracles", True, f"{len(allv)} vectors agree")


def check_lh_oracle(code: LinearCode, limits: Limits, max_weight: int = 16) -> Check:
    checked = 0
    for w in range(1, min(code.n, max_weight) + 1):
        for c in code.codewords_of_weight(w, limits):
            if larger_halves(c) != larger_halves_oracle(c):
                return Check("lh-oracle", False, f"closed form and definition differ for {c}")
            checked += 1
    return Check("lh-oracle", True, f"{checked} codewords")


def check_chain(code: LinearCode, oracle, limits: Limits) -> Check:
    """``M1_i <= LH_i(C \\ {0}) <= E1_i`` for every weight."""
    for i in range(code.n + 1):
        e1 = classify_weight(code, i, "E1", oracle, limits).as_set()
        m1 = minimal_uncorrectable(code, i, oracle, limits).as_set()
        lh = {v.value for v in code_lh_slice(code, i, limits).members} if i else set()
        if not m1 <= lh:
            v = BitVector(code.n, min(m1 - lh))
            return Check("chain", False, f"minimal uncorrectable {v} is no larger half")
        if not lh <= e1:
            v = BitVector(code.n, min(lh - e1))
            return Check("chain", False, f"larger half {v} is correctable")
    return Check("chain", True, f"weights 0..{code.n}")


def half_distance_sets(code: LinearCode, oracle, limits: Limits) -> tuple[frozenset, frozenset, frozenset]:
    h = ceil(code.min_distance(limits) / 2)
    m1 = minimal_uncorrectable(code, h, oracle, limits).as_set()
    lh = frozenset(v.value for v in code_lh_slice(code, h, limits).members)
    e1 = classify_weight(code, h, "E1", oracle, limits).as_set()
    return m1, lh, e1


def check_half_distance(code: LinearCode, oracle, limits: Limits) -> Check:
    m1, lh, e1 = half_distance_sets(code, oracle, limits)
    if m1 == lh == e1:
        return Check("half-distance", True, f"|M1| = |LH| = |E1| = {len(e1)}")
    return Check("half-distance", False, f"|M1|={len(m1)}, |LH|={len(lh)}, |E1|={len(e1)}")


def check_intersections(code: LinearCode, limits: Limits) -> Check:
    rep = pairwise_lh_intersection_check(code, limits)
    detail = ", ".join(f"{k}={v} (cap {rep.caps[k]})" for k, v in rep.maxima.items())
    return Check("intersections", rep.ok, detail)


def check_trial_sets(code: LinearCode, oracle, limits: Limits) -> Check:
    parts = []
    for label, T in (("all-nonzero", TrialSet.all_nonzero(code)), ("minimal", TrialSet.minimal(code, limits))):
        res = is_trial_set(code, T, oracle=oracle, limits=limits)
        if not res.ok:
            return Check("trial-set", False, f"{label}: {res.missing[0]} uncovered")
        parts.append(label)
    return Check("trial-set", True, " and ".join(parts) + " are trial sets")


def check_necessity(code: LinearCode, oracle, limits: Limits) -> Check:
    wd = code.weight_distribution(limits)
    d = code.min_distance(limits)
    ad1 = wd[d + 1] if d + 1 <= code.n else 0
    cond = odd_condition(d, wd[d], ad1) if d % 2 else even_condition(d, wd[d])
    if not cond.holds:
        return Check("necessity", True, "condition does not hold", skipped=True)
    try:
        rep = verify_trial_set_necessity(code, oracle, limits)
    except AssertionError as exc:
        return Check("necessity", False, str(exc))
    return Check("necessity", True, f"{len(rep.forced)} forced codewords, min private {rep.min_private}")


def run_suites(code: LinearCode, suites=SUITES, limits: Limits = DEFAULT_LIMITS, oracle=None) -> list[Check]:
    if oracle is None:
        oracle = leader_oracle(code, limits)
    table: dict[str, Callable[[], Check]] = {
        "monotone": lambda: check_monotone(code, oracle, limits),
        "oracles": lambda: check_oracles(code, oracle, limits),
        "lh-oracle": lambda: check_lh_oracle(code, limits),
        "chain": lambda: check_chain(code, oracle, limits),
        "half-distance": lambda: check_half_distance(code, oracle, limits),
        "intersections": lambda: check_intersections(code, limits),
        "trial-set": lambda: check_trial_sets(code, oracle, limits),
        "necessity": lambda: check_necessity(code, oracle, limits),
    }
    return [table[name]() for name in suites]
