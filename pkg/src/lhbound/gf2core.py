"""Binary vectors and matrices, the weight/numeric orderings, and exhaustive
code-level computations.

Vectors are stored as Python integers whose bit layout equals the numeric
value ``v(x) = sum x_i 2^(n-i)``: position 1 is the most significant bit,
position ``n`` the least significant.  Comparing two equal-length vectors
by numeric value is therefore plain integer comparison.

Vectorised kernels (``numpy``) reuse the same layout in ``uint64`` words; a
length-``n`` vector with ``n > 64`` spans ``ceil(n / 64)`` words, word 0
holding the 64 least significant bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .config import DEFAULT_LIMITS, N_MAX, N_WORD, Limits, parallel_map
from .errors import DegenerateCode, LengthMismatch, RankDeficient, TooLarge, ZeroVector


# --------------------------------------------------------------------------
# vectors


@dataclass(frozen=True)
class BitVector:
    """Fixed-length binary word, positions ``1..n``.

    ``n = 0`` is accepted only because the syndrome of a vector under a
    full-space code (``k = n``) is the empty word.
    """

    n: int
    value: int = 0

    def __post_init__(self):
        if not 0 <= self.n <= N_MAX:
            raise ValueError(f"length {self.n} outside 0..{N_MAX}")
        if self.value < 0 or self.value >> self.n:
            raise ValueError(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def from_bits(cls, bits: str) -> "BitVector":
        bits = bits.strip()
        if bits and set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(len(bits), int(bits, 2) if bits else 0)

    @classmethod
    def from_support(cls, n: int, positions: Iterable[int]) -> "BitVector":
        value = 0
        for p in positions:
            if not 1 <= p <= n:
                raise ValueError(f"position {p} outside 1..{n}")
            value |= 1 << (n - p)
        return cls(n, value)

    @classmethod
    def zero(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int, position: int) -> "BitVector":
        return cls.from_support(n, (position,))

    def bits(self) -> str:
        return format(self.value, f"0{self.n}b") if self.n else ""

    def __str__(self) -> str:
        return self.bits()

    def __repr__(self) -> str:
        return f"BitVector('{self.bits()}')"

    def _check(self, other: "BitVector") -> None:
        if self.n != other.n:
            raise LengthMismatch(f"lengths {self.n} and {other.n} differ")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.n, self.value ^ other.value)

    __add__ = __xor__

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.n, self.value & other.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __getitem__(self, position: int) -> int:
        if not 1 <= position <= self.n:
            raise IndexError(position)
        return (self.value >> (self.n - position)) & 1

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def order_key(self) -> tuple[int, int]:
        """Sort key realising the weight-then-numeric total order."""
        return (self.value.bit_count(), self.value)


def weight(v: BitVector) -> int:
    return v.value.bit_count()


def support(v: BitVector) -> list[int]:
    """1-based positions of the nonzero coordinates, ascending."""
    n, x = v.n, v.value
    return [i for i in range(1, n + 1) if (x >> (n - i)) & 1]


def numeric_value(v: BitVector) -> int:
    return v.value


def leftmost(v: BitVector) -> int:
    """Leftmost nonzero coordinate (the minimum of the support)."""
    if not v.value:
        raise ZeroVector("leftmost coordinate of the zero vector is undefined")
    return v.n - v.value.bit_length() + 1


def covers(x: BitVector, y: BitVector) -> bool:
    """True iff the support of ``x`` is contained in the support of ``y``."""
    x._check(y)
    return x.value & y.value == x.value


def precedes(x: BitVector, y: BitVector) -> bool:
    x._check(y)
    return x.order_key() <= y.order_key()


def precedes_strict(x: BitVector, y: BitVector) -> bool:
    x._check(y)
    return x.order_key() < y.order_key()


def intersect(x: BitVector, y: BitVector) -> BitVector:
    return x & y


# --------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class GF2Matrix:
    """Row-major GF(2) matrix; each row is an integer in the vector layout."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if self.ncols < 0:
            raise ValueError("negative column count")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError(f"row {r} does not fit in {self.ncols} columns")

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: Optional[int] = None) -> "GF2Matrix":
        rows = [r.strip() for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("column count needed for an empty matrix")
            ncols = len(rows[0])
        vecs = [BitVector.from_bits(r) for r in rows]
        for v in vecs:
            if v.n != ncols:
                raise LengthMismatch(f"row of length {v.n} in a {ncols}-column matrix")
        return cls(tuple(v.value for v in vecs), ncols)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(tuple(1 << (n - 1 - i) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "GF2Matrix":
        return cls((0,) * nrows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def to_strings(self) -> list[str]:
        return [BitVector(self.ncols, r).bits() for r in self.rows]

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                out[i, j] = (r >> (self.ncols - 1 - j)) & 1
        return out

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        return rref(self)[1]

    def mul_transpose(self, other: "GF2Matrix") -> "GF2Matrix":
        """``self @ other.T`` over GF(2)."""
        if self.ncols != other.ncols:
            raise LengthMismatch(f"{self.ncols} vs {other.ncols} columns")
        r = len(other.rows)
        out = []
        for a in self.rows:
            v = 0
            for j, b in enumerate(other.rows):
                if (a & b).bit_count() & 1:
                    v |= 1 << (r - 1 - j)
            out.append(v)
        return GF2Matrix(tuple(out), r)


def rref(M: GF2Matrix) -> tuple[GF2Matrix, int, list[int]]:
    """Reduced row echelon form, rank, and 1-based pivot columns.

    Pivots are searched left to right (position 1 first); zero rows end up
    at the bottom so the shape is preserved.
    """
    rows = list(M.rows)
    n = M.ncols
    rank = 0
    pivots = []
    for p in range(1, n + 1):
        if rank == len(rows):
            break
        bit = 1 << (n - p)
        piv = next((i for i in range(rank, len(rows)) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & bit:
                rows[i] ^= rows[rank]
        pivots.append(p)
        rank += 1
    return GF2Matrix(tuple(rows), n), rank, pivots


def parity_check_from_generator(G: GF2Matrix) -> GF2Matrix:
    """Full-rank matrix whose row space is the dual of the row space of ``G``.

    Works on the reduced echelon form directly: every non-pivot column ``q``
    yields the dual row with a 1 at ``q`` and, at each pivot column, the
    reduced generator's entry in column ``q``.  This is the systematic
    ``[I|A] -> [A^T|I]`` construction with the column permutation already
    undone, so ``H`` is in the original coordinate order.
    """
    R, rank, pivots = rref(G)
    if rank < G.nrows:
        raise RankDeficient(f"generator has rank {rank} < {G.nrows} rows")
    n = G.ncols
    pivot_set = set(pivots)
    out = []
    for q in range(1, n + 1):
        if q in pivot_set:
            continue
        qbit = 1 << (n - q)
        h = qbit
        for j, p in enumerate(pivots):
            if R.rows[j] & qbit:
                h |= 1 << (n - p)
        out.append(h)
    return GF2Matrix(tuple(out), n)


def syndrome(v: BitVector, H: GF2Matrix) -> BitVector:
    """``v H^T`` as a vector of length ``rows(H)``, row 1 most significant."""
    if v.n != H.ncols:
        raise LengthMismatch(f"vector length {v.n} vs {H.ncols} columns")
    r = H.nrows
    s = 0
    for j, h in enumerate(H.rows):
        if (v.value & h).bit_count() & 1:
            s |= 1 << (r - 1 - j)
    return BitVector(r, s)


# --------------------------------------------------------------------------
# numpy kernels


def popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


def _split_words(x: int, nw: int) -> list[int]:
    mask = (1 << 64) - 1
    return [(x >> (64 * j)) & mask for j in range(nw)]


def _join_words(words: Sequence[int]) -> int:
    return sum(int(w) << (64 * j) for j, w in enumerate(words))


def span(rows: Sequence[int], nw: int = 1) -> np.ndarray:
    """All ``2^len(rows)`` XOR combinations, message-counter order.

    Entry ``m`` is the XOR of ``rows[j]`` over the set bits ``j`` of ``m``.
    Shape ``(2^t,)`` for ``nw == 1``, else ``(2^t, nw)``.
    """
    out = np.zeros((1, nw), dtype=np.uint64)
    for r in rows:
        w = np.array(_split_words(r, nw), dtype=np.uint64)
        out = np.concatenate([out, out ^ w])
    return out[:, 0] if nw == 1 else out


def fixed_weight_values(n: int, w: int) -> np.ndarray:
    """All length-``n`` vectors of weight ``w`` (``n <= 64``), ascending."""
    if n > N_WORD:
        raise TooLarge("n", n, N_WORD)
    if w < 0 or w > n:
        return np.zeros(0, dtype=np.uint64)
    # layers[j]: weight-j vectors over the bits processed so far; the newly
    # added bit is always the most significant, so concatenation stays sorted
    layers = [np.zeros(1, dtype=np.uint64)] + [np.zeros(0, dtype=np.uint64)] * w
    for b in range(n):
        remaining = n - b - 1
        top = np.uint64(1 << b)
        new = []
        for j in range(w + 1):
            if j + remaining + 1 < w:
                new.append(np.zeros(0, dtype=np.uint64))
                continue
            parts = [layers[j]]
            if j:
                parts.append(layers[j - 1] | top)
            new.append(np.concatenate(parts))
        layers = new
    return layers[w]


def iter_fixed_weight(n: int, w: int, chunk: int = 1 << 20) -> Iterator[np.ndarray]:
    """Stream the weight-``w`` vectors of length ``n`` in ascending order."""
    from math import comb

    if w < 0 or w > n:
        return
    if comb(n, w) <= chunk or w == 0 or w == n:
        yield fixed_weight_values(n, w)
        return
    yield from iter_fixed_weight(n - 1, w, chunk)
    top = np.uint64(1 << (n - 1))
    for block in iter_fixed_weight(n - 1, w - 1, chunk):
        yield block | top


def values_to_vectors(n: int, values: Iterable) -> list[BitVector]:
    return [BitVector(n, int(x)) for x in values]


# --------------------------------------------------------------------------
# codes


class LinearCode:
    """Binary linear ``[n, k]`` code given by a full-rank generator matrix.

    The parity-check matrix is derived when not supplied.  Minimum distance
    and weight distribution are computed on first request by exhaustive
    enumeration and cached.
    """

    def __init__(
        self,
        generator: GF2Matrix,
        parity_check: Optional[GF2Matrix] = None,
        name: str = "",
        meta: Optional[dict] = None,
    ):
        if not 1 <= generator.ncols <= N_MAX:
            raise ValueError(f"code length {generator.ncols} outside 1..{N_MAX}")
        if generator.rank() != generator.nrows:
            raise RankDeficient("generator rows are dependent")
        if parity_check is None:
            parity_check = parity_check_from_generator(generator)
        elif parity_check.ncols != generator.ncols:
            raise LengthMismatch("generator and parity-check widths differ")
        if parity_check.rank() != parity_check.nrows or (
            parity_check.nrows != generator.ncols - generator.nrows
        ):
            raise RankDeficient("parity-check matrix has the wrong rank")
        if not generator.mul_transpose(parity_check).is_zero():
            raise ValueError("G H^T != 0")
        self.generator = generator
        self.parity_check = parity_check
        self.name = name
        self.meta = dict(meta or {})
        self._wd: Optional[list[int]] = None

    @classmethod
    def from_generator_strings(cls, rows: Sequence[str], name: str = "", n: Optional[int] = None):
        return cls(GF2Matrix.from_strings(rows, n), name=name)

    @classmethod
    def from_parity_check(cls, H: GF2Matrix, name: str = "", meta=None) -> "LinearCode":
        return cls(parity_check_from_generator(H), H, name=name, meta=meta)

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def k(self) -> int:
        return self.generator.nrows

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    def __repr__(self) -> str:
        return f"LinearCode({self.name or '?'}, n={self.n}, k={self.k})"

    def syndrome(self, v: BitVector) -> BitVector:
        return syndrome(v, self.parity_check)

    def is_codeword(self, v: BitVector) -> bool:
        return self.syndrome(v).value == 0

    def encode(self, message: int) -> BitVector:
        c = 0
        for j, row in enumerate(self.generator.rows):
            if (message >> j) & 1:
                c ^= row
        return BitVector(self.n, c)

    # -- enumeration ------------------------------------------------------

    def _check_k(self, limits: Limits) -> None:
        if self.k > limits.k_enum_max:
            raise TooLarge("k", self.k, limits.k_enum_max)

    def _blocks(self, limits: Limits) -> tuple[np.ndarray, np.ndarray, list[slice], int]:
        """Meet-in-the-middle split of the span for chunked enumeration."""
        self._check_k(limits)
        nw = -(-self.n // 64)
        rows = self.generator.rows
        k1 = min(self.k, 18)
        low = span(rows[:k1], nw).reshape(-1, nw)
        high = span(rows[k1:], nw).reshape(-1, nw)
        per = max(1, (1 << 22) // len(low))
        slices = [slice(i, i + per) for i in range(0, len(high), per)]
        return low, high, slices, nw

    def weight_distribution(self, limits: Limits = DEFAULT_LIMITS) -> list[int]:
        if self._wd is None:
            self._wd = _weight_distribution(self, limits)
        return list(self._wd)

    def min_distance(self, limits: Limits = DEFAULT_LIMITS) -> int:
        if self.k == 0:
            raise DegenerateCode("the zero code has no minimum distance")
        wd = self.weight_distribution(limits)
        return next(i for i in range(1, self.n + 1) if wd[i])

    def codeword_values(self, limits: Limits = DEFAULT_LIMITS) -> np.ndarray:
        """All codewords as a ``uint64`` array (``n <= 64``), message order."""
        self._check_k(limits)
        if self.n > N_WORD:
            raise TooLarge("n", self.n, N_WORD)
        return span(self.generator.rows)

    def codewords_of_weight(self, w: int, limits: Limits = DEFAULT_LIMITS) -> list[BitVector]:
        """Codewords of weight exactly ``w``, sorted by numeric value."""
        low, high, slices, nw = self._blocks(limits)

        def job(sl):
            x = low[None, :, :] ^ high[sl][:, None, :]
            x = x.reshape(-1, nw)
            sel = x[popcount(x).sum(axis=1) == w]
            return [_join_words(r) for r in sel.tolist()]

        found = sorted(v for part in parallel_map(job, slices) for v in part)
        return [BitVector(self.n, v) for v in found]


def _weight_distribution(code: LinearCode, limits: Limits) -> list[int]:
    low, high, slices, nw = code._blocks(limits)
    n = code.n

    def job(sl):
        x = low[None, :, :] ^ high[sl][:, None, :]
        wts = popcount(x).sum(axis=-1, dtype=np.intp).ravel()
        return np.bincount(wts, minlength=n + 1)

    total = np.zeros(n + 1, dtype=np.int64)
    for part in parallel_map(job, slices):
        total += part
    return [int(a) for a in total]


def enumerate_codewords(code: LinearCode, limits: Limits = DEFAULT_LIMITS) -> Iterator[BitVector]:
    """Yield every codeword once, in Gray-code order of the message."""
    code._check_k(limits)
    rows = code.generator.rows
    c = 0
    yield BitVector(code.n, 0)
    for i in range(1, 1 << code.k):
        c ^= rows[(i & -i).bit_length() - 1]
        yield BitVector(code.n, c)


def weight_distribution(code: LinearCode, limits: Limits = DEFAULT_LIMITS) -> list[int]:
    return code.weight_distribution(limits)


def min_distance(code: LinearCode, limits: Limits = DEFAULT_LIMITS) -> int:
    return code.min_distance(limits)
