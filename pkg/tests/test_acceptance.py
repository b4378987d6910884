"""Acceptance criteria, one test each.

Every criterion is a function returning a JSON-serialisable record of its
results; the test asserts on that record and its runtime, and criterion 10
recomputes all records under different worker counts and compares bytes.
"""

import json
import subprocess
import sys
import time
from math import ceil

import pytest

from lhbound import config
from lhbound.bounds import (
    bound_report,
    even_condition,
    generalized_report,
    odd_condition,
    theorem1_bounds,
    theorem2_bounds,
    theorem3_lower,
)
from lhbound.cli import rm_table_rows
from lhbound.codefactory import bch, extend, hamming, reed_muller, repetition, rm_min_weight_count
from lhbound.config import DEFAULT_LIMITS
from lhbound.errorstructure import classify_weight, minimal_uncorrectable, verify_monotone
from lhbound.largerhalf import (
    code_lh_slice,
    larger_halves,
    larger_halves_oracle,
    pairwise_lh_intersection_check,
)

from fleet import named_fleet, random_fleet, small_fleet

RECORDS = {}


def timed(name, fn, limit_s=None):
    t0 = time.perf_counter()
    rec = fn()
    dt = time.perf_counter() - t0
    RECORDS[name] = rec
    if limit_s is not None:
        assert dt < limit_s, f"{name} took {dt:.1f}s, limit {limit_s}s"
    return rec


def report(name, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")


def lh_fleet():
    return named_fleet() + random_fleet(50)


# --------------------------------------------------------------------------


def c1():
    out = []
    for code in lh_fleet():
        agree = checked = 0
        for w in range(1, min(code.n, 16) + 1):
            for c in code.codewords_of_weight(w):
                checked += 1
                agree += larger_halves(c) == larger_halves_oracle(c)
        out.append([code.name, checked, agree])
    return out


def c2():
    out = []
    for code in lh_fleet():
        h = ceil(code.min_distance() / 2)
        m1 = sorted(minimal_uncorrectable(code, h).as_set())
        lh = sorted(v.value for v in code_lh_slice(code, h).members)
        e1 = sorted(classify_weight(code, h, "E1").as_set())
        out.append([code.name, h, len(m1), m1 == lh == e1])
    return out


def c3():
    r5, r6 = repetition(5), repetition(6)
    lo5, hi5 = theorem1_bounds(5, 1, 0)
    lo6, hi6 = theorem2_bounds(6, 1)
    return {
        "rep5": [lo5, classify_weight(r5, 3, "E1").count, hi5],
        "rep6": [lo6, classify_weight(r6, 3, "E1").count, hi6],
        "rep5_report": bound_report(r5, with_ground_truth=True).to_dict(),
        "rep6_report": bound_report(r6, with_ground_truth=True).to_dict(),
    }


def c4():
    code = reed_muller(1, 4)
    A8 = code.weight_distribution()[8]
    cond = even_condition(8, A8)
    return {
        "A8": A8,
        "condition": list(cond),
        "theorem2": list(theorem2_bounds(8, A8)),
        "theorem3": theorem3_lower(8, A8),
        "count": classify_weight(code, 4, "E1").count,
    }


def c5():
    rows = rm_table_rows([1], [3, 4, 5, 6], DEFAULT_LIMITS) + rm_table_rows([2], [5, 6], DEFAULT_LIMITS)
    return {
        "rows": [[str(x) for x in r] for r in rows],
        "A16_rm26": reed_muller(2, 6).weight_distribution()[16],
        "A16_formula": rm_min_weight_count(2, 6),
    }


def c6():
    code = bch(6, 15)
    wd = code.weight_distribution()
    return {"n": code.n, "k": code.k, "d": code.min_distance(), "A15": wd[15], "A16": wd[16],
            "condition": list(odd_condition(15, wd[15], wd[16]))}


def c7():
    codes = [hamming(3), bch(4, 5), reed_muller(1, 4), extend(hamming(3))]
    out = []
    for code in codes:
        rep = pairwise_lh_intersection_check(code)
        out.append([code.name, rep.parity, rep.maxima, rep.caps, rep.ok])
    return out


def c8():
    codes = [c for c in small_fleet() if c.n <= 14] + random_fleet(100)
    out = []
    for code in codes:
        res = verify_monotone(code, mode="exhaustive")
        out.append([code.name, code.n, res.checked_pairs, res.ok])
    return out


def c9():
    out = []
    for code in (hamming(3), bch(4, 5)):
        h = ceil(code.min_distance() / 2)
        for i in range(h, code.n // 2 + 1):
            g = generalized_report(code, i, with_ground_truth=True)
            out.append([code.name, i, g.lh_count, g.upper_as_proved, g.upper_as_stated,
                        g.condition.holds, g.lower])
    return out


CRITERIA = {"c1": c1, "c2": c2, "c3": c3, "c4": c4, "c5": c5, "c6": c6, "c7": c7, "c8": c8, "c9": c9}


# --------------------------------------------------------------------------


def test_criterion_01_lh_equivalence():
    rec = timed("c1", c1, 60)
    bad = [r for r in rec if r[1] != r[2]]
    report("criterion 1", not bad, f"{sum(r[1] for r in rec)} codewords over {len(rec)} codes")
    assert len(rec) == 60
    assert not bad


def test_criterion_02_half_distance_identity():
    rec = timed("c2", c2, 300)
    bad = [r for r in rec if not r[3]]
    report("criterion 2", not bad, f"{len(rec)} codes")
    assert not bad


def test_criterion_03_exact_sandwich():
    rec = timed("c3", c3)
    ok = rec["rep5"] == [10, 10, 10] and rec["rep6"] == [10, 10, 10]
    ok = ok and rec["rep5_report"]["verdict"] == rec["rep6_report"]["verdict"] == "PASS"
    report("criterion 3", ok, f"rep5 {rec['rep5']}, rep6 {rec['rep6']}")
    assert ok


def test_criterion_04_rm14_pipeline():
    rec = timed("c4", c4, 60)
    ok = (
        rec["A8"] == 30
        and rec["condition"] == [35, 29, True]
        and rec["theorem2"] == [180, 1050]
        and rec["theorem3"] == 600
        and 600 <= rec["count"] <= 1050
    )
    report("criterion 4", ok, f"|E1_4| = {rec['count']}")
    assert ok


def test_criterion_05_rm_table():
    rec = timed("c5", c5, 600)
    flags = [r[-1] for r in rec["rows"]]
    ok = flags == ["False", "True", "True", "True", "False", "True"]
    ok = ok and rec["A16_rm26"] == 2604 == rec["A16_formula"]
    report("criterion 5", ok, f"flags {flags}, A16 = {rec['A16_rm26']}")
    assert ok


def test_criterion_06_bch63():
    rec = timed("c6", c6, 1800)
    ok = (rec["n"], rec["k"]) == (63, 24) and rec["d"] == 15 and rec["condition"][2] is True
    report("criterion 6", ok, f"A15={rec['A15']} A16={rec['A16']} condition {rec['condition']}")
    assert ok


def test_criterion_07_intersection_caps():
    rec = timed("c7", c7, 120)
    ok = all(r[4] for r in rec)
    assert [r[1] for r in rec] == ["odd", "odd", "even", "even"]
    report("criterion 7", ok, "; ".join(f"{r[0]} {r[2]}" for r in rec))
    assert ok


def test_criterion_08_monotone():
    rec = timed("c8", c8, 600)
    bad = [r for r in rec if not r[3]]
    report("criterion 8", not bad, f"{len(rec)} codes")
    assert len(rec) >= 100 + len([c for c in small_fleet() if c.n <= 14])
    assert not bad


def test_criterion_09_generalized_bound():
    rec = timed("c9", c9, 300)
    bad = []
    for name, i, lh, proved, stated, holds, lower in rec:
        if not lh <= proved <= stated or (holds and not lower <= lh):
            bad.append((name, i))
    report("criterion 9", not bad, f"{len(rec)} (code, i) pairs")
    assert len(rec) == 2 + 5
    assert not bad


def _serialise(rec):
    return json.dumps(rec, sort_keys=True, default=str)


def test_criterion_10_determinism():
    # library outputs of criteria 1-9 under two worker counts, twice each
    ok = True
    for name, fn in CRITERIA.items():
        seen = {_serialise(RECORDS[name])} if name in RECORDS else set()
        for threads in (1, 4, 1, 4):
            config.set_threads(threads)
            try:
                seen.add(_serialise(fn()))
            finally:
                config.set_threads(None)
        if len(seen) != 1:
            ok = False
            print(f"criterion 10: {name} differs across runs")
    # the CLI, through a fresh interpreter
    commands = [
        ["bounds", "--family", "rm", "--r", "1", "--rm-m", "4", "--ground-truth", "--format", "json"],
        ["bounds", "--family", "explicit", "--generator-rows", "11111", "--ground-truth", "--format", "json"],
        ["analyze", "--family", "random", "--n", "12", "--k", "4", "--seed", "1", "--format", "csv"],
        ["verify", "--family", "hamming", "--m", "3", "--suite", "all"],
        ["table", "--r", "1..2", "--rm-m", "3..6", "--format", "csv"],
        ["bounds", "--family", "bch", "--bch-m", "4", "--design-distance", "5", "--ground-truth",
         "--i", "3..7", "--format", "json"],
    ]
    for argv in commands:
        outs = set()
        for threads in ("1", "4", "1", "4"):
            res = subprocess.run([sys.executable, "-m", "lhbound.cli", *argv, "--threads", threads],
                                 capture_output=True, check=False)
            if res.returncode != 0 or not res.stdout:
                pytest.fail(f"{argv} exited {res.returncode}: {res.stderr.decode()}")
            outs.add(res.stdout)
        if len(outs) != 1:
            ok = False
            print(f"criterion 10: {' '.join(argv)} differs across runs")
    report("criterion 10", ok, f"{len(CRITERIA)} library records, {len(commands)} CLI commands")
    assert ok
