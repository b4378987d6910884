"""Larger halves of codewords, trial sets and minimal codewords.

A larger half of a nonzero codeword ``c`` is a covering-minimal ``v`` with
``v + c`` strictly before ``v`` in the weight-then-numeric order.  Closed
form: ``v`` is covered by ``c``, ``w(c) <= 2 w(v) <= w(c) + 2``, and for
even ``w(c)`` the leftmost position of ``v`` equals that of ``c`` when
``2 w(v) = w(c)`` and lies strictly to its right when
``2 w(v) = w(c) + 2``.

Restricting the search to vectors covered by ``c``: take any ``v`` with
``v + c`` before ``v`` and let ``B`` be its positions outside the support
of ``c``.  Removing ``B`` subtracts ``|B|`` from both weights, and ``B``
occupies the same positions in ``v`` and in ``v + c``, so the numeric
comparison is unchanged too.  Hence ``v`` minus ``B`` still satisfies the
predicate, and ``v`` can only be minimal when ``B`` is empty.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import ceil
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import ConditionNotMet, OddWeight, TooLarge, ZeroVector
from .gf2core import BitVector, LinearCode, leftmost, popcount, support
from .errorstructure import leader_oracle, minimal_uncorrectable

ORACLE_MAX_WEIGHT = 24


def larger_halves(c: BitVector) -> frozenset[BitVector]:
    """All larger halves of ``c`` from the closed-form conditions."""
    if not c.value:
        raise ZeroVector("the zero vector has no larger halves")
    return _lh_minus(c) | _lh_plus(c) if c.weight % 2 == 0 else _lh_odd(c)


def _subsets(n: int, positions: Sequence[int], size: int) -> frozenset[BitVector]:
    return frozenset(BitVector.from_support(n, s) for s in combinations(positions, size))


def _lh_odd(c: BitVector) -> frozenset[BitVector]:
    return _subsets(c.n, support(c), (c.weight + 1) // 2)


def _lh_minus(c: BitVector) -> frozenset[BitVector]:
    pos = support(c)
    first = BitVector.unit(c.n, pos[0])
    return frozenset(v ^ first for v in _subsets(c.n, pos[1:], c.weight // 2 - 1))


def _lh_plus(c: BitVector) -> frozenset[BitVector]:
    pos = support(c)
    return _subsets(c.n, pos[1:], c.weight // 2 + 1)


def lh_minus(c: BitVector) -> frozenset[BitVector]:
    """Weight-``w(c)/2`` larger halves of an even-weight ``c``."""
    if not c.value:
        raise ZeroVector("the zero vector has no larger halves")
    if c.weight % 2:
        raise OddWeight(f"weight {c.weight} is odd")
    return _lh_minus(c)


def lh_plus(c: BitVector) -> frozenset[BitVector]:
    """Weight-``(w(c)/2 + 1)`` larger halves of an even-weight ``c``."""
    if not c.value:
        raise ZeroVector("the zero vector has no larger halves")
    if c.weight % 2:
        raise OddWeight(f"weight {c.weight} is odd")
    return _lh_plus(c)


def larger_halves_oracle(c: BitVector, max_weight: int = ORACLE_MAX_WEIGHT) -> frozenset[BitVector]:
    """Larger halves straight from the definition, by subset enumeration.

    Every subset ``v`` of the support is tested for ``v + c`` strictly
    before ``v``; minimality is then decided with a subset-closure sweep
    (a mask is minimal iff it qualifies and no one-bit deletion has a
    qualifying subset).  Local mask bit ``j`` stands for the ``j``-th
    support position counted from the right, which keeps the numeric order
    of subsets of ``c`` intact.
    """
    if not c.value:
        raise ZeroVector("the zero vector has no larger halves")
    w = c.weight
    if w > max_weight:
        raise TooLarge("w(c)", w, max_weight)
    full = (1 << w) - 1
    masks = np.arange(1 << w, dtype=np.uint64)
    comp = np.uint64(full) ^ masks
    wv, wc = popcount(masks), popcount(comp)
    good = (wc < wv) | ((wc == wv) & (comp < masks))
    # below[m]: some subset of m (m included) qualifies
    below = good.copy()
    for b in range(w):
        step = 1 << b
        view = below.reshape(-1, 2, step)
        view[:, 1, :] |= view[:, 0, :]
    minimal = good.copy()
    for b in range(w):
        bit = np.uint64(1 << b)
        has = (masks & bit) != 0
        idx = np.flatnonzero(has)
        minimal[idx[below[(masks[has] ^ bit).astype(np.intp)]]] = False
    pos = support(c)[::-1]  # local bit j -> position pos[j]
    out = []
    for m in np.flatnonzero(minimal).tolist():
        out.append(BitVector.from_support(c.n, (pos[j] for j in range(w) if (m >> j) & 1)))
    return frozenset(out)


def is_larger_half(v: BitVector, c: BitVector) -> bool:
    """Check the closed-form conditions for one pair."""
    if not c.value:
        raise ZeroVector("the zero vector has no larger halves")
    if v.value & c.value != v.value or not v.value:
        return False
    wv, wc = v.weight, c.weight
    if not wc <= 2 * wv <= wc + 2:
        return False
    if wc % 2:
        return True
    if 2 * wv == wc:
        return leftmost(v) == leftmost(c)
    return leftmost(v) > leftmost(c)


# --------------------------------------------------------------------------
# weight slices of LH(U)


@dataclass(frozen=True)
class LHSlice:
    """``LH_i(U)`` with the number of sources producing each member."""

    weight: int
    multiplicity: dict[BitVector, int]
    source_count: int

    @property
    def members(self) -> frozenset[BitVector]:
        return frozenset(self.multiplicity)

    def __len__(self) -> int:
        return len(self.multiplicity)

    def private(self) -> frozenset[BitVector]:
        return frozenset(v for v, m in self.multiplicity.items() if m == 1)

    def to_csv(self) -> str:
        """Columns ``vector_bits, weight, multiplicity, source_count``; rows by numeric value."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["vector_bits", "weight", "multiplicity", "source_count"])
        for v in sorted(self.multiplicity, key=lambda x: x.value):
            w.writerow([v.bits(), self.weight, self.multiplicity[v], self.source_count])
        return buf.getvalue()


def lh_weight_slice(U: Iterable[BitVector], i: int) -> LHSlice:
    """Weight-``i`` larger halves of the codewords in ``U``.

    Only weights ``2i - 2`` (through LH+), ``2i - 1`` (all of LH) and ``2i``
    (through LH-) contribute.
    """
    mult: Counter = Counter()
    sources = 0
    for c in U:
        w = c.weight
        if w == 2 * i - 2 and w > 0:
            part = _lh_plus(c)
        elif w == 2 * i - 1:
            part = _lh_odd(c)
        elif w == 2 * i:
            part = _lh_minus(c)
        else:
            continue
        sources += 1
        mult.update(part)
    return LHSlice(i, dict(mult), sources)


def code_lh_slice(code: LinearCode, i: int, limits: Limits = DEFAULT_LIMITS) -> LHSlice:
    """``LH_i(C \\ {0})``, reading only the three relevant weight classes."""
    U = []
    for w in (2 * i - 2, 2 * i - 1, 2 * i):
        if 1 <= w <= code.n:
            U.extend(code.codewords_of_weight(w, limits))
    return lh_weight_slice(U, i)


# --------------------------------------------------------------------------
# trial sets


class Provenance(str, Enum):
    ALL_NONZERO = "ALL_NONZERO"
    MINIMAL_CODEWORDS = "MINIMAL_CODEWORDS"
    EXPLICIT = "EXPLICIT"


@dataclass(frozen=True)
class TrialSet:
    """Candidate trial set: nonzero codewords of ``code``.

    For ``ALL_NONZERO`` the members are materialised lazily by weight
    (``of_weight``) so that large codes can still report ``|A_i(T)|``.
    """

    code: LinearCode
    provenance: Provenance
    _members: Optional[frozenset[BitVector]] = field(default=None, repr=False)

    @classmethod
    def all_nonzero(cls, code: LinearCode) -> "TrialSet":
        return cls(code, Provenance.ALL_NONZERO)

    @classmethod
    def minimal(cls, code: LinearCode, limits: Limits = DEFAULT_LIMITS) -> "TrialSet":
        return cls(code, Provenance.MINIMAL_CODEWORDS, frozenset(minimal_codewords(code, limits)))

    @classmethod
    def explicit(cls, code: LinearCode, words: Iterable[BitVector]) -> "TrialSet":
        words = frozenset(words)
        for c in words:
            if c.n != code.n or not code.is_codeword(c):
                raise ValueError(f"{c} is not a codeword")
            if not c.value:
                raise ValueError("a trial set may not contain the zero codeword")
        return cls(code, Provenance.EXPLICIT, words)

    def members(self, limits: Limits = DEFAULT_LIMITS) -> frozenset[BitVector]:
        if self._members is not None:
            return self._members
        out = set()
        for w in range(1, self.code.n + 1):
            out.update(self.code.codewords_of_weight(w, limits))
        return frozenset(out)

    def of_weight(self, w: int, limits: Limits = DEFAULT_LIMITS) -> list[BitVector]:
        if self._members is None:
            return self.code.codewords_of_weight(w, limits) if w >= 1 else []
        return sorted((c for c in self._members if c.weight == w), key=lambda c: c.value)

    def count_of_weight(self, w: int, limits: Limits = DEFAULT_LIMITS) -> int:
        if self._members is None:
            return self.code.weight_distribution(limits)[w] if 1 <= w <= self.code.n else 0
        return sum(1 for c in self._members if c.weight == w)

    def lh_slice(self, i: int, limits: Limits = DEFAULT_LIMITS) -> LHSlice:
        U = []
        for w in (2 * i - 2, 2 * i - 1, 2 * i):
            if 1 <= w <= self.code.n:
                U.extend(self.of_weight(w, limits))
        return lh_weight_slice(U, i)


@dataclass(frozen=True)
class TrialSetCheck:
    ok: bool
    weights: tuple[int, ...]
    missing: tuple[BitVector, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_trial_set(
    code: LinearCode,
    T: TrialSet,
    weights: Optional[Iterable[int]] = None,
    oracle=None,
    limits: Limits = DEFAULT_LIMITS,
) -> TrialSetCheck:
    """Check ``M1_w(C) <= LH_w(T)`` for each requested weight (default: all)."""
    weights = tuple(range(code.n + 1)) if weights is None else tuple(weights)
    if oracle is None:
        oracle = leader_oracle(code, limits)
    missing = []
    for w in weights:
        m1 = minimal_uncorrectable(code, w, oracle, limits).vectors()
        if not m1:
            continue
        lh = T.lh_slice(w, limits).multiplicity if w >= 1 else {}
        missing.extend(v for v in m1 if v not in lh)
    return TrialSetCheck(not missing, weights, tuple(missing))


def minimal_codewords(code: LinearCode, limits: Limits = DEFAULT_LIMITS) -> list[BitVector]:
    """Nonzero codewords covering no other nonzero codeword, by numeric value."""
    if code.k > limits.minimal_k_max:
        raise TooLarge("k", code.k, limits.minimal_k_max)
    words = code.codeword_values(limits)
    words = np.sort(words[words != 0])
    out = []
    for c in words:
        inside = (words & c) == words
        if int(inside.sum()) == 1:
            out.append(BitVector(code.n, int(c)))
    return out


# --------------------------------------------------------------------------
# pairwise intersection caps and forced trial-set members


@dataclass(frozen=True)
class IntersectionReport:
    d: int
    parity: str
    maxima: dict[str, int]
    caps: dict[str, int]

    @property
    def ok(self) -> bool:
        return all(self.maxima[k] <= self.caps[k] for k in self.caps)


def _max_pairwise(sets_a: Sequence[frozenset], sets_b: Sequence[frozenset], same: bool) -> int:
    best = 0
    for i, a in enumerate(sets_a):
        for j, b in enumerate(sets_b):
            if same and j <= i:
                continue
            best = max(best, len(a & b))
    return best


def pairwise_lh_intersection_check(code: LinearCode, limits: Limits = DEFAULT_LIMITS) -> IntersectionReport:
    """Largest pairwise overlaps of the weight-``ceil(d/2)`` larger-half sets.

    Odd ``d``: ``LH`` of weight-``d`` words among themselves (cap 0),
    against ``LH-`` of weight-``(d+1)`` words (cap 1), and ``LH-`` of
    weight-``(d+1)`` words among themselves (cap 1).  Even ``d``: ``LH-`` of
    weight-``d`` words among themselves (cap 1).
    """
    d = code.min_distance(limits)
    ad = [larger_halves(c) for c in code.codewords_of_weight(d, limits)]
    if d % 2:
        ad1 = [_lh_minus(c) for c in code.codewords_of_weight(d + 1, limits)] if d + 1 <= code.n else []
        maxima = {
            "LH(d)&LH(d)": _max_pairwise(ad, ad, True),
            "LH(d)&LH-(d+1)": _max_pairwise(ad, ad1, False),
            "LH-(d+1)&LH-(d+1)": _max_pairwise(ad1, ad1, True),
        }
        caps = {"LH(d)&LH(d)": 0, "LH(d)&LH-(d+1)": 1, "LH-(d+1)&LH-(d+1)": 1}
        return IntersectionReport(d, "odd", maxima, caps)
    minus = [frozenset(v for v in s if 2 * v.weight == d) for s in ad]
    return IntersectionReport(d, "even", {"LH-(d)&LH-(d)": _max_pairwise(minus, minus, True)}, {"LH-(d)&LH-(d)": 1})


@dataclass(frozen=True)
class NecessityReport:
    """Per forced codeword: its private larger halves and one witness."""

    d: int
    private_counts: dict[BitVector, int]
    witnesses: dict[BitVector, BitVector]

    @property
    def forced(self) -> frozenset[BitVector]:
        return frozenset(self.witnesses)

    @property
    def min_private(self) -> int:
        return min(self.private_counts.values(), default=0)


def verify_trial_set_necessity(
    code: LinearCode, oracle=None, limits: Limits = DEFAULT_LIMITS
) -> NecessityReport:
    """Show that every weight-``d`` (and, for odd ``d``, weight-``(d+1)``)
    codeword owns a weight-``ceil(d/2)`` larger half shared with no other
    codeword, and that this vector is a minimal uncorrectable error.  Any
    trial set must then contain the codeword.
    """
    from .bounds import even_condition, odd_condition

    wd = code.weight_distribution(limits)
    d = code.min_distance(limits)
    ad1 = wd[d + 1] if d + 1 <= code.n else 0
    cond = odd_condition(d, wd[d], ad1) if d % 2 else even_condition(d, wd[d])
    if not cond.holds:
        raise ConditionNotMet(f"condition fails: {cond.lhs} > {cond.rhs} is false")
    h = ceil(d / 2)
    sl = code_lh_slice(code, h, limits)
    forced = code.codewords_of_weight(d, limits)
    if d % 2 and d + 1 <= code.n:
        forced += code.codewords_of_weight(d + 1, limits)
    m1 = None
    try:
        if oracle is None:
            oracle = leader_oracle(code, limits)
        m1 = minimal_uncorrectable(code, h, oracle, limits).as_set()
    except TooLarge:
        pass
    counts, witnesses = {}, {}
    for c in forced:
        part = _lh_odd(c) if c.weight % 2 else _lh_minus(c)
        own = sorted((v for v in part if sl.multiplicity[v] == 1), key=lambda v: v.value)
        counts[c] = len(own)
        if not own:
            raise AssertionError(f"codeword {c} has no private larger half")
        if m1 is not None and own[0].value not in m1:
            raise AssertionError(f"private larger half {own[0]} is not minimal uncorrectable")
        witnesses[c] = own[0]
    return NecessityReport(d, counts, witnesses)
