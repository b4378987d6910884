"""Code families: Hamming, Reed-Muller, narrow-sense primitive BCH and their
extensions, seeded random codes, plus the Gilbert-Varshamov diagnostics."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, log2
from pathlib import Path
from typing import Any, Mapping, Optional, Union

import numpy as np
from scipy.optimize import brentq

from .errors import InvalidParameters, OutOfRange
from .gf2core import GF2Matrix, LinearCode

# One primitive polynomial per degree, bit i = coefficient of X^i.  Taken
# from the standard table in Lin & Costello, "Error Control Coding",
# Table 2.7; primitivity is re-checked when a field is built.
PRIMITIVE_POLYS = {
    2: 0b111,  # X^2 + X + 1
    3: 0b1011,  # X^3 + X + 1
    4: 0b10011,  # X^4 + X + 1
    5: 0b100101,  # X^5 + X^2 + 1
    6: 0b1000011,  # X^6 + X + 1
    7: 0b10001001,  # X^7 + X^3 + 1
    8: 0b100011101,  # X^8 + X^4 + X^3 + X^2 + 1
    9: 0b1000010001,  # X^9 + X^4 + 1
    10: 0b10000001001,  # X^10 + X^3 + 1
    11: 0b100000000101,  # X^11 + X^2 + 1
    12: 0b1000001010011,  # X^12 + X^6 + X^4 + X + 1
    13: 0b10000000011011,  # X^13 + X^4 + X^3 + X + 1
    14: 0b100010001000011,  # X^14 + X^10 + X^6 + X + 1
    15: 0b1000000000000011,  # X^15 + X + 1
    16: 0b10001000000001011,  # X^16 + X^12 + X^3 + X + 1
}

FAMILIES = ("hamming", "rm", "bch", "ebch", "random", "explicit")


class GF2mField:
    """GF(2^m) with log/antilog tables over a primitive polynomial."""

    def __init__(self, m: int, poly: Optional[int] = None):
        if not 2 <= m <= 16:
            raise InvalidParameters(f"extension degree {m} outside 2..16")
        self.m = m
        self.poly = PRIMITIVE_POLYS[m] if poly is None else poly
        if self.poly.bit_length() != m + 1:
            raise InvalidParameters(f"polynomial {self.poly:#x} is not of degree {m}")
        self.order = (1 << m) - 1
        self.antilog = [0] * self.order
        self.log = [-1] * (1 << m)
        x = 1
        for i in range(self.order):
            if self.log[x] != -1:
                raise InvalidParameters(f"polynomial {self.poly:#x} is not primitive")
            self.antilog[i] = x
            self.log[x] = i
            x <<= 1
            if x >> m:
                x ^= self.poly
        if x != 1:
            raise InvalidParameters(f"polynomial {self.poly:#x} is not primitive")

    def power(self, e: int) -> int:
        """alpha^e."""
        return self.antilog[e % self.order]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog[(self.log[a] + self.log[b]) % self.order]

    def cyclotomic_coset(self, i: int) -> list[int]:
        coset, j = [], i % self.order
        while j not in coset:
            coset.append(j)
            j = (2 * j) % self.order
        return sorted(coset)

    def minimal_polynomial(self, i: int) -> int:
        """Minimal polynomial of alpha^i as a GF(2) bitmask (bit j = X^j)."""
        poly = [1]  # coefficients in GF(2^m), low degree first
        for j in self.cyclotomic_coset(i):
            root = self.power(j)
            nxt = [0] * (len(poly) + 1)
            for d, a in enumerate(poly):
                nxt[d + 1] ^= a
                nxt[d] ^= self.mul(a, root)
            poly = nxt
        if any(a not in (0, 1) for a in poly):
            raise AssertionError("minimal polynomial left GF(2)")
        return sum(a << d for d, a in enumerate(poly))


@lru_cache(maxsize=None)
def field(m: int) -> GF2mField:
    return GF2mField(m)


def _gf2_polymul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


# --------------------------------------------------------------------------
# families


def repetition(n: int) -> LinearCode:
    return LinearCode(GF2Matrix(((1 << n) - 1,), n), name=f"repetition({n})")


def hamming(m: int) -> LinearCode:
    """Binary Hamming code; column ``j`` of H is the number ``j`` in binary."""
    if m < 2:
        raise InvalidParameters("Hamming codes need m >= 2")
    n = (1 << m) - 1
    rows = []
    for bit in range(m - 1, -1, -1):
        row = 0
        for j in range(1, n + 1):
            if (j >> bit) & 1:
                row |= 1 << (n - j)
        rows.append(row)
    H = GF2Matrix(tuple(rows), n)
    return LinearCode.from_parity_check(H, name=f"hamming({m})", meta={"family": "hamming", "m": m})


def rm_monomials(r: int, m: int) -> list[tuple[int, ...]]:
    """Monomials of degree <= r in degree-lexicographic order (0-based variables)."""
    return [mono for deg in range(r + 1) for mono in combinations(range(m), deg)]


def reed_muller(r: int, m: int) -> LinearCode:
    """RM(r, m) by monomial evaluation.

    Position ``j + 1`` evaluates at the point whose coordinate ``x_t`` is bit
    ``t - 1`` of ``j``, so ``x_1`` is the fastest-alternating variable.
    """
    return LinearCode(reed_muller_rows(r, m), name=f"rm({r},{m})", meta={"family": "rm", "r": r, "m": m})


def reed_muller_rows(r: int, m: int) -> GF2Matrix:
    """Monomial evaluation matrix of RM(r, m); not limited to ``n <= 128``."""
    if not 0 <= r <= m or m < 1:
        raise InvalidParameters(f"need 0 <= r <= m, got r={r}, m={m}")
    n = 1 << m
    rows = []
    for mono in rm_monomials(r, m):
        row = 0
        for j in range(n):
            if all((j >> t) & 1 for t in mono):
                row |= 1 << (n - 1 - j)
        rows.append(row)
    return GF2Matrix(tuple(rows), n)


def bch_generator_polynomial(m: int, designed_distance: int) -> int:
    gf = field(m)
    seen: set[int] = set()
    g = 1
    for i in range(1, designed_distance):
        rep = gf.cyclotomic_coset(i)[0]
        if rep in seen:
            continue
        seen.add(rep)
        g = _gf2_polymul(g, gf.minimal_polynomial(i))
    return g


def bch(m: int, designed_distance: int) -> LinearCode:
    """Narrow-sense primitive BCH code of length ``2^m - 1``.

    Codeword polynomial ``c(X) = sum c_j X^j`` is laid out with the
    coefficient of ``X^j`` at position ``j + 1``; the generator matrix rows
    are the ``k`` shifts ``X^s g(X)``.
    """
    n = (1 << m) - 1
    if designed_distance % 2 == 0 or not 3 <= designed_distance <= n:
        raise InvalidParameters(f"designed distance must be odd in 3..{n}, got {designed_distance}")
    g = bch_generator_polynomial(m, designed_distance)
    deg = g.bit_length() - 1
    k = n - deg
    if k < 1:
        raise InvalidParameters(f"BCH(m={m}, delta={designed_distance}) has dimension 0")
    # coefficient of X^j lives at bit n-1-j
    g_row = sum(1 << (n - 1 - j) for j in range(deg + 1) if (g >> j) & 1)
    rows = tuple(g_row >> s for s in range(k))
    return LinearCode(
        GF2Matrix(rows, n),
        name=f"bch({n},{k})",
        meta={
            "family": "bch",
            "m": m,
            "designed_distance": designed_distance,
            "primitive_polynomial": f"{field(m).poly:#x}",
            "generator_polynomial": f"{g:#x}",
        },
    )


def bch_dimension(m: int, designed_distance: int) -> int:
    n = (1 << m) - 1
    return n - (bch_generator_polynomial(m, designed_distance).bit_length() - 1)


def bch_designed_distance_for_k(m: int, k: int) -> int:
    """Smallest odd designed distance whose narrow-sense BCH code has dimension ``k``."""
    n = (1 << m) - 1
    for delta in range(3, n + 1, 2):
        dim = bch_dimension(m, delta)
        if dim == k:
            return delta
        if dim < k:
            break
    raise InvalidParameters(f"no narrow-sense primitive BCH code of length {n} has k={k}")


def extend(code: LinearCode) -> LinearCode:
    """Append an overall parity bit as position ``n + 1``."""
    rows = tuple((r << 1) | (r.bit_count() & 1) for r in code.generator.rows)
    meta = dict(code.meta)
    family = meta.get("family")
    meta["family"] = "ebch" if family == "bch" else f"extended-{family or 'explicit'}"
    return LinearCode(GF2Matrix(rows, code.n + 1), name=f"ext-{code.name}", meta=meta)


# --------------------------------------------------------------------------
# random codes


@dataclass(frozen=True)
class RandomCodeSpec:
    n: int
    k: int
    seed: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise InvalidParameters(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if not 0 <= self.seed < 1 << 64:
            raise InvalidParameters("seed must be a 64-bit unsigned integer")


def random_code(spec: RandomCodeSpec) -> LinearCode:
    """Random generator matrix with equiprobable entries.

    Bits come from numpy's Philox4x64 counter-based generator keyed by the
    seed, read through ``random_raw`` (the raw 64-bit stream, stable across
    numpy releases).  Row ``i`` consumes ``ceil(n/64)`` consecutive draws
    and keeps the low ``n`` bits.  A row that falls in the span of the
    earlier rows is redrawn from the continuing stream; the number of
    redraws is recorded in ``meta["resamples"]``.
    """
    n, k = spec.n, spec.k
    bitgen = np.random.Philox(spec.seed)
    nw = -(-n // 64)
    mask = (1 << n) - 1

    def draw() -> int:
        words = bitgen.random_raw(nw).tolist()
        return sum(int(w) << (64 * j) for j, w in enumerate(words)) & mask

    rows: list[int] = []
    echelon: dict[int, int] = {}  # leading bit -> reduced row
    resamples = 0
    while len(rows) < k:
        row = draw()
        x = row
        while x:
            top = x.bit_length() - 1
            if top not in echelon:
                break
            x ^= echelon[top]
        if not x:
            resamples += 1
            continue
        echelon[x.bit_length() - 1] = x
        rows.append(row)
    return LinearCode(
        GF2Matrix(tuple(rows), n),
        name=f"random({n},{k},seed={spec.seed})",
        meta={"family": "random", "prng": "numpy.Philox4x64/random_raw", "seed": spec.seed,
              "resamples": resamples},
    )


# --------------------------------------------------------------------------
# diagnostics


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * log2(x) - (1 - x) * log2(1 - x)


def gv_relative_distance(rate: float) -> float:
    """The ``delta`` in (0, 1/2) with ``1 - H(delta) = rate``."""
    if not 0.0 < rate < 1.0:
        raise OutOfRange(f"rate {rate} outside (0, 1)")
    f = lambda d: 1.0 - binary_entropy(d) - rate  # noqa: E731
    delta = brentq(f, 1e-300, 0.5, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    if abs(f(delta)) > 1e-12:
        raise AssertionError(f"root finder stalled at residual {f(delta)}")
    return delta


def binomial_weight_model(n: int, k: int, i: int) -> float:
    """Expected number of weight-``i`` codewords of a random ``[n, k]`` code."""
    return (2**k - 1) * comb(n, i) / 2**n


def rm_min_weight_count_bound(r: int, m: int) -> int:
    """The bound ``(2^(m+1) - 2)^r`` on minimum-weight RM codewords (exact integer)."""
    if not 1 <= r <= m:
        raise InvalidParameters(f"need 1 <= r <= m, got r={r}, m={m}")
    return (2 ** (m + 1) - 2) ** r


def rm_min_weight_count(r: int, m: int) -> int:
    """Closed-form number of minimum-weight codewords of RM(r, m)."""
    num, den = 1, 1
    for i in range(m - r):
        num *= 2 ** (m - i) - 1
        den *= 2 ** (m - r - i) - 1
    return 2**r * num // den


# --------------------------------------------------------------------------
# code-spec JSON


def _int(spec: Mapping[str, Any], key: str) -> int:
    if key not in spec:
        raise InvalidParameters(f"code spec is missing field '{key}'")
    value = spec[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidParameters(f"code spec field '{key}' must be an integer")
    return value


def code_from_spec(spec: Mapping[str, Any]) -> LinearCode:
    """Build a code from a code-spec mapping.

    ``{"family": "hamming", "m"}``, ``{"family": "rm", "r", "m"}``,
    ``{"family": "bch"|"ebch", "m", "designed_distance" | "k"}``,
    ``{"family": "random", "n", "k", "seed"}``,
    ``{"family": "explicit", "generator_rows": [...], "name"?}``.
    """
    if not isinstance(spec, Mapping):
        raise InvalidParameters("code spec must be a JSON object")
    family = spec.get("family")
    if family not in FAMILIES:
        raise InvalidParameters(f"code spec field 'family' must be one of {FAMILIES}, got {family!r}")
    if family == "hamming":
        return hamming(_int(spec, "m"))
    if family == "rm":
        return reed_muller(_int(spec, "r"), _int(spec, "m"))
    if family in ("bch", "ebch"):
        m = _int(spec, "m")
        if "designed_distance" in spec:
            delta = _int(spec, "designed_distance")
        elif "k" in spec:
            delta = bch_designed_distance_for_k(m, _int(spec, "k"))
        else:
            raise InvalidParameters("code spec is missing field 'designed_distance'")
        code = bch(m, delta)
        return extend(code) if family == "ebch" else code
    if family == "random":
        return random_code(RandomCodeSpec(_int(spec, "n"), _int(spec, "k"), _int(spec, "seed")))
    rows = spec.get("generator_rows")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, str) for r in rows):
        raise InvalidParameters("code spec field 'generator_rows' must be a non-empty list of bit strings")
    try:
        G = GF2Matrix.from_strings(rows)
    except ValueError as exc:
        raise InvalidParameters(f"code spec field 'generator_rows': {exc}") from exc
    try:
        return LinearCode(G, name=str(spec.get("name", "explicit")))
    except ValueError as exc:
        raise InvalidParameters(f"code spec field 'generator_rows': {exc}") from exc


def load_code_spec(path: Union[str, Path]) -> LinearCode:
    try:
        spec = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidParameters(f"code spec {path} is not valid JSON: {exc}") from exc
    return code_from_spec(spec)


def code_to_spec(code: LinearCode) -> dict:
    return {"family": "explicit", "name": code.name, "generator_rows": code.generator.to_strings()}
