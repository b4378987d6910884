from math import comb

import numpy as np
import pytest

from lhbound.codefactory import (
    PRIMITIVE_POLYS,
    GF2mField,
    RandomCodeSpec,
    bch,
    bch_designed_distance_for_k,
    binary_entropy,
    binomial_weight_model,
    code_from_spec,
    extend,
    field,
    gv_relative_distance,
    hamming,
    load_code_spec,
    random_code,
    reed_muller,
    reed_muller_rows,
    repetition,
    rm_min_weight_count,
    rm_min_weight_count_bound,
)
from lhbound.errors import InvalidParameters, OutOfRange
from lhbound.gf2core import BitVector


@pytest.mark.parametrize("m", sorted(PRIMITIVE_POLYS))
def test_field_tables(m):
    gf = GF2mField(m)
    assert all(gf.antilog[gf.log[x]] == x for x in range(1, 2**m))
    assert len(set(gf.antilog)) == 2**m - 1


def test_non_primitive_polynomial_rejected():
    # X^4 + X^3 + X^2 + X + 1 is irreducible but alpha has order 5
    with pytest.raises(InvalidParameters):
        GF2mField(4, 0b11111)


def test_minimal_polynomials_vanish_on_their_cosets():
    gf = field(6)
    for i in range(1, 63):
        p = gf.minimal_polynomial(i)
        for j in gf.cyclotomic_coset(i):
            root, acc, power = gf.power(j), 0, 1
            for deg in range(p.bit_length()):
                if (p >> deg) & 1:
                    acc ^= power
                power = gf.mul(power, root)
            assert acc == 0


def test_hamming():
    h3 = hamming(3)
    assert (h3.n, h3.k, h3.min_distance()) == (7, 4, 3)
    h2 = hamming(2)
    assert (h2.n, h2.k, h2.min_distance()) == (3, 1, 3)
    h4 = hamming(4)
    assert (h4.n, h4.k) == (15, 11) and h4.weight_distribution()[3] == 35


def test_reed_muller_examples():
    rm13 = reed_muller(1, 3)
    assert (rm13.n, rm13.k, rm13.min_distance()) == (8, 4, 4)
    assert rm13.weight_distribution() == extend(hamming(3)).weight_distribution()
    rm14 = reed_muller(1, 4)
    assert (rm14.n, rm14.k, rm14.min_distance()) == (16, 5, 8)
    assert rm14.weight_distribution()[8] == 30
    full = reed_muller(3, 3)
    assert full.k == 8 and full.min_distance() == 1


@pytest.mark.parametrize("m", range(1, 9))
def test_reed_muller_dimension(m):
    for r in range(m + 1):
        assert reed_muller_rows(r, m).rank() == sum(comb(m, i) for i in range(r + 1))


def _rm_dim(r, m):
    return sum(comb(m, i) for i in range(r + 1))


@pytest.mark.parametrize("r,m", [(r, m) for m in range(2, 7) for r in range(0, m + 1) if _rm_dim(r, m) <= 22])
def test_reed_muller_distance(r, m):
    assert reed_muller(r, m).min_distance() == 2 ** (m - r)


def test_rm_count_bound():
    assert rm_min_weight_count_bound(1, 4) == 30
    assert rm_min_weight_count_bound(2, 6) == 126**2 == 15876
    for m in range(1, 7):
        for r in range(1, min(2, m) + 1):
            code = reed_muller(r, m)
            Ad = code.weight_distribution()[2 ** (m - r)]
            assert Ad <= rm_min_weight_count_bound(r, m)
            assert Ad == rm_min_weight_count(r, m)
    with pytest.raises(InvalidParameters):
        rm_min_weight_count_bound(0, 3)


def test_bch_examples():
    c = bch(4, 5)
    assert (c.n, c.k, c.min_distance()) == (15, 7, 5)
    c = bch(6, 15)
    assert (c.n, c.k) == (63, 24)
    assert "primitive_polynomial" in c.meta
    h = bch(4, 3)
    assert (h.n, h.k) == (15, 11)
    assert h.weight_distribution() == hamming(4).weight_distribution()


@pytest.mark.parametrize("m", [3, 4, 5])
def test_bch_bound(m):
    n = 2**m - 1
    for delta in range(3, n + 1, 2):
        code = bch(m, delta)
        assert code.min_distance() >= delta


def test_bch_codewords_are_cyclic():
    code = bch(4, 5)
    n = code.n
    for row in code.generator.rows:
        rot = ((row >> 1) | ((row & 1) << (n - 1)))
        assert code.is_codeword(BitVector(n, rot))


def test_bch_invalid():
    with pytest.raises(InvalidParameters):
        bch(4, 4)
    with pytest.raises(InvalidParameters):
        bch(4, 17)


def test_bch_by_dimension():
    assert bch(6, bch_designed_distance_for_k(6, 24)).k == 24
    assert bch_designed_distance_for_k(4, 7) == 5
    with pytest.raises(InvalidParameters):
        bch_designed_distance_for_k(4, 8)


def test_extend():
    e = extend(hamming(3))
    assert (e.n, e.k, e.min_distance()) == (8, 4, 4)
    assert e.weight_distribution()[4] == 14
    r = extend(repetition(5))
    assert (r.n, r.k, r.min_distance()) == (6, 1, 6)
    big = extend(bch(6, 15))
    assert (big.n, big.k) == (64, 24)
    assert big.meta["family"] == "ebch"
    for code in (e, r, extend(bch(4, 5)), extend(reed_muller(1, 3))):
        assert not any(code.weight_distribution()[1::2])


def test_random_code_determinism():
    a = random_code(RandomCodeSpec(12, 4, 1))
    b = random_code(RandomCodeSpec(12, 4, 1))
    c = random_code(RandomCodeSpec(12, 4, 2))
    assert a.generator == b.generator
    assert a.generator != c.generator
    assert a.generator.rank() == 4


def test_random_code_full_rank_with_resampling():
    # n = k forces frequent redraws
    total = 0
    for seed in range(30):
        code = random_code(RandomCodeSpec(6, 6, seed))
        assert code.generator.rank() == 6
        total += code.meta["resamples"]
    assert total > 0


def test_random_code_spec_validation():
    with pytest.raises(InvalidParameters):
        RandomCodeSpec(4, 5, 0)
    with pytest.raises(InvalidParameters):
        RandomCodeSpec(4, 0, 0)


def test_random_weight_distribution_matches_binomial_model():
    # For uniform G, codewords of distinct nonzero messages are pairwise
    # independent and uniform, so A_i has mean (2^k - 1) p and variance
    # (2^k - 1) p (1 - p) with p = C(n, i) / 2^n.
    n, k, runs = 24, 12, 200
    A = np.array([random_code(RandomCodeSpec(n, k, s)).weight_distribution() for s in range(runs)])
    for i in range(1, n + 1):
        p = comb(n, i) / 2**n
        mean = binomial_weight_model(n, k, i)
        sigma = np.sqrt((2**k - 1) * p * (1 - p) / runs)
        assert abs(A[:, i].mean() - mean) <= 5 * sigma + 1e-9, i


def test_gv_relative_distance():
    assert gv_relative_distance(0.999) < 0.01
    rate = 1 - binary_entropy(0.11)
    assert abs(gv_relative_distance(rate) - 0.11) < 1e-9
    d = gv_relative_distance(0.5)
    assert abs(binary_entropy(d) - 0.5) <= 1e-12
    assert 0.10 < d < 0.12
    for bad in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(OutOfRange):
            gv_relative_distance(bad)


def test_code_from_spec():
    assert code_from_spec({"family": "hamming", "m": 3}).k == 4
    assert code_from_spec({"family": "rm", "r": 1, "m": 4}).k == 5
    assert code_from_spec({"family": "bch", "m": 4, "designed_distance": 5}).k == 7
    assert code_from_spec({"family": "bch", "m": 6, "k": 24}).k == 24
    assert code_from_spec({"family": "ebch", "m": 4, "designed_distance": 5}).n == 16
    r = code_from_spec({"family": "random", "n": 12, "k": 4, "seed": 1})
    assert r.generator == random_code(RandomCodeSpec(12, 4, 1)).generator
    ex = code_from_spec({"family": "explicit", "generator_rows": ["11111"]})
    assert ex.weight_distribution() == [1, 0, 0, 0, 0, 1]


@pytest.mark.parametrize(
    "spec,field_name",
    [
        ({"family": "rm", "r": 1}, "m"),
        ({"family": "nope"}, "family"),
        ({"family": "random", "n": 5, "k": "x", "seed": 1}, "k"),
        ({"family": "explicit", "generator_rows": ["101", "10"]}, "generator_rows"),
        ({"family": "explicit", "generator_rows": ["11", "11"]}, "generator_rows"),
    ],
)
def test_code_from_spec_errors_name_field(spec, field_name):
    with pytest.raises(InvalidParameters, match=field_name):
        code_from_spec(spec)


def test_load_code_spec(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"family": "hamming", "m": 3}')
    assert load_code_spec(p).n == 7
    p.write_text("{not json")
    with pytest.raises(InvalidParameters):
        load_code_spec(p)
