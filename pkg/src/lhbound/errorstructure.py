"""Syndrome decoding with weight-then-numeric minimal coset leaders, and the
resulting split of the ambient space into correctable (E0) and
uncorrectable (E1) errors.

Two leader oracles are available and meant to be cross-checked:

* a dense coset-leader table indexed by syndrome (``CosetLeaderTable``),
  usable while ``n - k <= Limits.r_max``;
* a per-vector scan over all ``2^k`` codewords (``is_coset_leader`` and
  ``ScanOracle``), usable while ``k <= Limits.k_enum_max``.

Minimal uncorrectable errors are found by testing one-bit deletions only.
That suffices because E1 is closed upwards under covering: if some
uncorrectable ``x`` is strictly covered by ``v``, adding back to ``x`` all
but one of the missing positions gives an uncorrectable vector of weight
``w(v) - 1`` still covered by ``v``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import BinaryIO, Literal, Optional, Union

import numpy as np

from .config import DEFAULT_LIMITS, N_WORD, Limits, parallel_map
from .errors import LengthMismatch, TooLarge
from .gf2core import (
    BitVector,
    LinearCode,
    enumerate_codewords,
    iter_fixed_weight,
    popcount,
    values_to_vectors,
)

Kind = Literal["E0", "E1", "M1", "LH"]

TABLE_MAGIC = b"LHCL"
TABLE_VERSION = 1


def _require_word(code: LinearCode) -> None:
    if code.n > N_WORD:
        raise TooLarge("n", code.n, N_WORD)


def column_syndromes(code: LinearCode) -> np.ndarray:
    """Syndrome (as integer) of the unit vector at each bit index.

    Entry ``b`` belongs to bit index ``b`` of the vector layout, i.e.
    position ``n - b``.
    """
    H = code.parity_check
    r, n = H.nrows, H.ncols
    cols = np.zeros(n, dtype=np.uint64)
    for j, h in enumerate(H.rows):
        for b in range(n):
            if (h >> b) & 1:
                cols[b] |= np.uint64(1 << (r - 1 - j))
    return cols


def syndrome_values(code: LinearCode, values: np.ndarray, cols: Optional[np.ndarray] = None) -> np.ndarray:
    """Vectorised syndromes of a ``uint64`` array of vectors."""
    if cols is None:
        cols = column_syndromes(code)
    out = np.zeros(values.shape, dtype=np.uint64)
    one = np.uint64(1)
    for b in range(code.n):
        if cols[b]:
            out ^= ((values >> np.uint64(b)) & one) * cols[b]
    return out


# --------------------------------------------------------------------------
# coset leader table


@dataclass(frozen=True)
class CosetLeaderTable:
    """Dense map syndrome value -> minimal vector of that coset."""

    code: LinearCode
    leaders: np.ndarray
    cols: np.ndarray

    def leader(self, s: BitVector) -> BitVector:
        if s.n != self.code.redundancy:
            raise LengthMismatch(f"syndrome length {s.n} vs n-k={self.code.redundancy}")
        return BitVector(self.code.n, int(self.leaders[s.value]))

    def leader_of(self, y: BitVector) -> BitVector:
        return self.leader(self.code.syndrome(y))

    def is_leader_values(self, values: np.ndarray) -> np.ndarray:
        syn = syndrome_values(self.code, values, self.cols)
        return self.leaders[syn.astype(np.intp)] == values

    def __len__(self) -> int:
        return len(self.leaders)


def _check_table_size(code: LinearCode, limits: Limits) -> None:
    _require_word(code)
    if code.redundancy > limits.r_max:
        raise TooLarge("n-k", code.redundancy, limits.r_max)


def build_coset_leader_table(
    code: LinearCode,
    limits: Limits = DEFAULT_LIMITS,
    method: Literal["weight-scan", "min-merge"] = "weight-scan",
) -> CosetLeaderTable:
    """Coset leader of every syndrome.

    ``weight-scan`` walks vectors by increasing weight and, within a weight,
    increasing numeric value; the first vector reaching a syndrome wins and
    the walk stops once every coset has a leader.  ``min-merge`` streams
    all ``2^n`` vectors in chunks and merges per-syndrome minima of the key
    ``(weight, value)``; merging is associative and commutative, so chunk
    order and worker count do not matter.
    """
    _check_table_size(code, limits)
    cols = column_syndromes(code)
    size = 1 << code.redundancy
    if method == "weight-scan":
        leaders = _weight_scan(code, cols, size)
    elif method == "min-merge":
        leaders = _min_merge(code, cols, size, limits)
    else:
        raise ValueError(f"unknown method {method!r}")
    return CosetLeaderTable(code, leaders, cols)


def _weight_scan(code: LinearCode, cols: np.ndarray, size: int) -> np.ndarray:
    leaders = np.zeros(size, dtype=np.uint64)
    filled = np.zeros(size, dtype=bool)
    remaining = size
    for w in range(code.n + 1):
        for block in iter_fixed_weight(code.n, w):
            syn = syndrome_values(code, block, cols).astype(np.intp)
            # np.unique returns the first index of each syndrome in the
            # ascending block
            uniq, first = np.unique(syn, return_index=True)
            new = ~filled[uniq]
            leaders[uniq[new]] = block[first[new]]
            filled[uniq[new]] = True
            remaining -= int(new.sum())
            if not remaining:
                return leaders
    raise AssertionError("some coset received no leader")


def _min_merge(code: LinearCode, cols: np.ndarray, size: int, limits: Limits) -> np.ndarray:
    n = code.n
    if n > 57:
        raise TooLarge("n", n, 57)
    if 2**n > limits.combo_max * 16:
        raise TooLarge("2^n", 2**n, limits.combo_max * 16)
    sentinel = np.uint64(np.iinfo(np.uint64).max)
    chunk = 1 << 20
    starts = range(0, 1 << n, chunk)

    def job(start):
        vals = np.arange(start, min(start + chunk, 1 << n), dtype=np.uint64)
        keys = (popcount(vals).astype(np.uint64) << np.uint64(n)) | vals
        syn = syndrome_values(code, vals, cols).astype(np.intp)
        best = np.full(size, sentinel, dtype=np.uint64)
        np.minimum.at(best, syn, keys)
        return best

    merged = np.full(size, sentinel, dtype=np.uint64)
    for part in parallel_map(job, starts):
        np.minimum(merged, part, out=merged)
    if np.any(merged == sentinel):
        raise AssertionError("some coset received no leader")
    return merged & np.uint64((1 << n) - 1)


def save_table(table: CosetLeaderTable, target: Union[str, Path, BinaryIO]) -> None:
    """Binary dump.

    Layout: ``b"LHCL"``, then little-endian ``uint16`` format version, n, k,
    n-k and name length, the UTF-8 name, then ``2^(n-k)`` leaders in
    ascending syndrome order, each the leader's numeric value as a
    ``ceil(n/8)``-byte little-endian integer.
    """
    code = table.code
    name = code.name.encode()
    width = -(-code.n // 8)
    header = TABLE_MAGIC + struct.pack("<5H", TABLE_VERSION, code.n, code.k, code.redundancy, len(name))
    body = b"".join(int(v).to_bytes(width, "little") for v in table.leaders.tolist())
    data = header + name + body
    if isinstance(target, (str, Path)):
        Path(target).write_bytes(data)
    else:
        target.write(data)


def load_table(source: Union[str, Path, BinaryIO], code: LinearCode) -> CosetLeaderTable:
    """Read a dump written by ``save_table``; ``code`` must match its header."""
    data = Path(source).read_bytes() if isinstance(source, (str, Path)) else source.read()
    if data[:4] != TABLE_MAGIC:
        raise ValueError("not a coset-leader table dump")
    version, n, k, r, name_len = struct.unpack_from("<5H", data, 4)
    if version != TABLE_VERSION:
        raise ValueError(f"unsupported table format version {version}")
    if (n, k) != (code.n, code.k):
        raise LengthMismatch(f"dump is for an [{n},{k}] code, got [{code.n},{code.k}]")
    offset = 4 + 10 + name_len
    width = -(-n // 8)
    count = 1 << r
    if len(data) != offset + count * width:
        raise ValueError("truncated table dump")
    leaders = np.array(
        [int.from_bytes(data[offset + i * width: offset + (i + 1) * width], "little") for i in range(count)],
        dtype=np.uint64,
    )
    return CosetLeaderTable(code, leaders, column_syndromes(code))


# --------------------------------------------------------------------------
# per-vector oracle


def _leader_mask_scan(values: np.ndarray, codewords: np.ndarray) -> np.ndarray:
    """``v`` is a leader iff ``(w(v), v) <= (w(v+c), v+c)`` for every codeword."""
    out = np.empty(len(values), dtype=bool)
    nonzero = codewords[codewords != 0]
    if not len(nonzero):
        out[:] = True
        return out
    step = max(1, (1 << 21) // len(nonzero))
    for i in range(0, len(values), step):
        v = values[i:i + step]
        x = v[:, None] ^ nonzero[None, :]
        wv = popcount(v)[:, None]
        wx = popcount(x)
        ok = (wv < wx) | ((wv == wx) & (v[:, None] <= x))
        out[i:i + step] = ok.all(axis=1)
    return out


class ScanOracle:
    """Leader test by comparing each vector with all its coset mates."""

    kind = "scan"

    def __init__(self, code: LinearCode, limits: Limits = DEFAULT_LIMITS):
        _require_word(code)
        self.code = code
        self.codewords = code.codeword_values(limits)

    def is_leader_values(self, values: np.ndarray) -> np.ndarray:
        return _leader_mask_scan(values, self.codewords)


class TableOracle:
    kind = "table"

    def __init__(self, table: CosetLeaderTable):
        self.code = table.code
        self.table = table

    def is_leader_values(self, values: np.ndarray) -> np.ndarray:
        return self.table.is_leader_values(values)


def leader_oracle(code: LinearCode, limits: Limits = DEFAULT_LIMITS):
    """Coset table when ``n - k`` allows, else codeword scan when ``k`` allows."""
    _require_word(code)
    if code.redundancy <= limits.r_max:
        return TableOracle(build_coset_leader_table(code, limits))
    if code.k <= limits.k_enum_max:
        return ScanOracle(code, limits)
    raise TooLarge("min(n-k, k)", min(code.redundancy, code.k), min(limits.r_max, limits.k_enum_max))


def is_coset_leader(v: BitVector, code: LinearCode, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Per-vector definition: ``v`` precedes ``v + c`` for every nonzero codeword."""
    if v.n != code.n:
        raise LengthMismatch(f"vector length {v.n} vs code length {code.n}")
    code._check_k(limits)
    if code.n <= N_WORD:
        return bool(_leader_mask_scan(np.array([v.value], dtype=np.uint64), code.codeword_values(limits))[0])
    key = v.order_key()
    return all(((v.value ^ c.value).bit_count(), v.value ^ c.value) >= key
               for c in enumerate_codewords(code, limits))


def decode(y: BitVector, table: CosetLeaderTable) -> BitVector:
    """Subtract the coset leader of ``y``'s coset."""
    if y.n != table.code.n:
        raise LengthMismatch(f"vector length {y.n} vs code length {table.code.n}")
    return y ^ table.leader_of(y)


# --------------------------------------------------------------------------
# weight slices


@dataclass(frozen=True)
class WeightSlice:
    """The weight-``w`` members of one error class.

    ``values`` holds the members ascending when the slice is small enough
    to keep (``count <= Limits.slice_cap``); otherwise it is ``None`` and
    only ``count`` is meaningful.
    """

    code: LinearCode
    weight: int
    kind: Kind
    count: int
    values: Optional[np.ndarray] = None

    @property
    def count_only(self) -> bool:
        return self.values is None

    def vectors(self) -> list[BitVector]:
        if self.values is None:
            raise TooLarge("slice", self.count, "explicit-set cap")
        return values_to_vectors(self.code.n, self.values)

    def as_set(self) -> frozenset[int]:
        return frozenset(int(x) for x in self.vectors_values())

    def vectors_values(self) -> np.ndarray:
        if self.values is None:
            raise TooLarge("slice", self.count, "explicit-set cap")
        return self.values

    def __len__(self) -> int:
        return self.count


def _check_combo(code: LinearCode, w: int, limits: Limits) -> None:
    _require_word(code)
    size = comb(code.n, w) if 0 <= w <= code.n else 0
    if size > limits.combo_max:
        raise TooLarge("C(n,w)", size, limits.combo_max)


def classify_weight(
    code: LinearCode,
    w: int,
    kind: Literal["E0", "E1"],
    oracle=None,
    limits: Limits = DEFAULT_LIMITS,
) -> WeightSlice:
    """Correctable or uncorrectable vectors of weight ``w``."""
    if kind not in ("E0", "E1"):
        raise ValueError(f"kind must be E0 or E1, got {kind!r}")
    _check_combo(code, w, limits)
    if oracle is None:
        oracle = leader_oracle(code, limits)
    want_leader = kind == "E0"
    blocks = list(iter_fixed_weight(code.n, w)) if 0 <= w <= code.n else []

    def job(block):
        mask = oracle.is_leader_values(block)
        return block[mask == want_leader]

    parts = parallel_map(job, blocks)
    count = sum(len(p) for p in parts)
    values = None
    if count <= limits.slice_cap:
        values = np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint64)
    return WeightSlice(code, w, kind, count, values)


def minimal_uncorrectable(code: LinearCode, w: int, oracle=None, limits: Limits = DEFAULT_LIMITS) -> WeightSlice:
    """Uncorrectable weight-``w`` vectors none of whose one-bit deletions is uncorrectable."""
    if oracle is None:
        oracle = leader_oracle(code, limits)
    e1 = classify_weight(code, w, "E1", oracle, limits)
    if e1.values is None:
        raise TooLarge("|E1_w|", e1.count, limits.slice_cap)
    vals = e1.values
    minimal = np.ones(len(vals), dtype=bool)
    one = np.uint64(1)
    for b in range(code.n):
        bit = one << np.uint64(b)
        has = (vals & bit) != 0
        if not has.any():
            continue
        sub = vals[has] ^ bit
        unc = ~oracle.is_leader_values(sub)
        idx = np.flatnonzero(has)
        minimal[idx[unc]] = False
    kept = vals[minimal]
    return WeightSlice(code, w, "M1", len(kept), kept)


@dataclass(frozen=True)
class MonotoneResult:
    ok: bool
    checked_pairs: int
    witness: Optional[tuple[BitVector, BitVector]] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_monotone(
    code: LinearCode,
    mode: Literal["exhaustive", "sampled"] = "exhaustive",
    samples: int = 100_000,
    seed: int = 0,
    oracle=None,
    limits: Limits = DEFAULT_LIMITS,
    max_exhaustive_n: int = 24,
) -> MonotoneResult:
    """Check that covering never leads from E1 into E0.

    Exhaustive mode visits every covering pair ``(x, x + e_b)``; along
    chains of such pairs this covers all ``x`` covered by ``y``.  Sampled
    mode tests random pairs ``x`` covered by ``y`` drawn from Philox.
    Returns the first violating pair found as a witness.
    """
    _require_word(code)
    if oracle is None:
        oracle = leader_oracle(code, limits)
    n = code.n
    one = np.uint64(1)
    if mode == "exhaustive":
        if n > max_exhaustive_n:
            raise TooLarge("n", n, max_exhaustive_n)
        allv = np.arange(1 << n, dtype=np.uint64)
        leader = oracle.is_leader_values(allv)
        pairs = 0
        for b in range(n):
            bit = one << np.uint64(b)
            lower = allv[(allv & bit) == 0]
            upper = lower | bit
            bad = ~leader[lower.astype(np.intp)] & leader[upper.astype(np.intp)]
            pairs += len(lower)
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                return MonotoneResult(False, pairs, (BitVector(n, int(lower[i])), BitVector(n, int(upper[i]))))
        return MonotoneResult(True, pairs)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.Generator(np.random.Philox(seed))
    mask = np.uint64((1 << n) - 1)
    y = rng.integers(0, np.iinfo(np.uint64).max, size=samples, dtype=np.uint64, endpoint=True) & mask
    sub = rng.integers(0, np.iinfo(np.uint64).max, size=samples, dtype=np.uint64, endpoint=True)
    x = y & sub
    lx = oracle.is_leader_values(x)
    ly = oracle.is_leader_values(y)
    bad = ~lx & ly
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        return MonotoneResult(False, samples, (BitVector(n, int(x[i])), BitVector(n, int(y[i]))))
    return MonotoneResult(True, samples)
