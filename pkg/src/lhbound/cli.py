"""Command-line front end: ``lhbound {analyze,bounds,verify,table}``.

Exit codes: 0 success, 1 violated invariant, 2 configuration error,
3 resource ceiling refused the run.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Optional, Sequence

from . import config
from .bounds import bound_report, even_condition, reports_to_csv
from .codefactory import FAMILIES, code_from_spec, load_code_spec, reed_muller
from .config import Limits
from .errors import InvalidParameters, OutOfRange, TooLarge
from .errorstructure import classify_weight, leader_oracle, minimal_uncorrectable
from .gf2core import BitVector, LinearCode
from .largerhalf import TrialSet
from .suites import SUITES, run_suites

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    code: Optional[LinearCode]
    trial_set: str
    trial_set_file: Optional[str]
    weights: Optional[list[int]]
    ground_truth: bool
    limits: Limits
    fmt: str
    out: Optional[str]
    seed: Optional[int]


def parse_range(text: str) -> list[int]:
    """``"4"``, ``"0..7"`` (inclusive) or ``"2,3,5"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"bad range {text!r}; use N, A..B or A,B,C") from None


def _add_code_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("code")
    g.add_argument("--spec", help="code-spec JSON file")
    g.add_argument("--family", choices=FAMILIES)
    g.add_argument("--m", type=int, help="Hamming parameter m")
    g.add_argument("--r", help="Reed-Muller order r (a range for 'table')")
    g.add_argument("--rm-m", help="Reed-Muller m (a range for 'table')")
    g.add_argument("--bch-m", type=int, help="BCH field degree m")
    g.add_argument("--design-distance", type=int, help="BCH designed distance")
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int, help="dimension (random codes, or BCH by dimension)")
    g.add_argument("--seed", type=int)
    g.add_argument("--generator-rows", help="comma-separated bit strings for --family explicit")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trial-set", choices=("all-nonzero", "minimal", "file"), default="all-nonzero")
    p.add_argument("--trial-set-file", help="one codeword bit string per line")
    p.add_argument("--weights", help="weight or weight range, e.g. 0..7")
    p.add_argument("--ground-truth", action="store_true")
    p.add_argument("--k-enum-max", type=int, default=Limits.k_enum_max)
    p.add_argument("--r-max", type=int, default=Limits.r_max)
    p.add_argument("--slice-cap", type=int, default=Limits.slice_cap)
    p.add_argument("--combo-max", type=int, default=Limits.combo_max)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--threads", type=int, help="worker count (default: $LHBOUND_THREADS or all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lhbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("analyze", "weight-stratified E0/E1/M1/LH counts"),
        ("bounds", "conditions and bounds, optionally against ground truth"),
        ("verify", "run the invariant suites"),
        ("table", "Reed-Muller condition grid"),
    ):
        p = sub.add_parser(name, help=help_)
        _add_code_args(p)
        _add_common(p)
        if name == "bounds":
            p.add_argument("--i", help="weights for the generalised bound, e.g. 3..7")
        if name == "verify":
            p.add_argument("--suite", default="all", help=f"'all' or comma list of {','.join(SUITES)}")
    return parser


def _code_from_args(a: argparse.Namespace) -> LinearCode:
    if a.spec and a.family:
        raise ConfigError("give either --spec or --family, not both")
    if a.spec:
        if not Path(a.spec).is_file():
            raise ConfigError(f"spec file {a.spec} not found")
        return load_code_spec(a.spec)
    if not a.family:
        raise ConfigError("a code is required: --spec FILE or --family NAME")

    def need(flag: str, value):
        if value is None:
            raise ConfigError(f"--family {a.family} requires --{flag}")
        return value

    def as_int(flag: str, value):
        try:
            return int(need(flag, value))
        except ValueError:
            raise ConfigError(f"--{flag} must be an integer") from None

    spec: dict = {"family": a.family}
    if a.family == "hamming":
        spec["m"] = need("m", a.m)
    elif a.family == "rm":
        spec["r"] = as_int("r", a.r)
        spec["m"] = as_int("rm-m", a.rm_m)
    elif a.family in ("bch", "ebch"):
        spec["m"] = need("bch-m", a.bch_m)
        if a.design_distance is not None:
            spec["designed_distance"] = a.design_distance
        else:
            spec["k"] = need("design-distance or --k", a.k)
    elif a.family == "random":
        spec.update(n=need("n", a.n), k=need("k", a.k), seed=need("seed", a.seed))
    else:
        spec["generator_rows"] = need("generator-rows", a.generator_rows).split(",")
    return code_from_spec(spec)


def _trial_set(cfg: RunConfig) -> TrialSet:
    code = cfg.code
    if cfg.trial_set == "all-nonzero":
        return TrialSet.all_nonzero(code)
    if cfg.trial_set == "minimal":
        return TrialSet.minimal(code, cfg.limits)
    if not cfg.trial_set_file:
        raise ConfigError("--trial-set file requires --trial-set-file")
    try:
        lines = [ln.strip() for ln in Path(cfg.trial_set_file).read_text().splitlines() if ln.strip()]
        return TrialSet.explicit(code, [BitVector.from_bits(ln) for ln in lines])
    except (OSError, ValueError) as exc:
        raise ConfigError(f"trial-set file: {exc}") from None


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _table_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def _format_rows(cfg: RunConfig, header: Sequence[str], rows: Sequence[Sequence], preamble: str = "") -> str:
    if cfg.fmt == "json":
        return json.dumps([dict(zip(header, map(str, r))) for r in rows], indent=2)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    return (preamble + "\n" if preamble else "") + _table_text(header, rows)


# --------------------------------------------------------------------------
# commands


def cmd_analyze(cfg: RunConfig) -> int:
    code = cfg.code
    oracle = leader_oracle(code, cfg.limits)
    T = _trial_set(cfg)
    weights = cfg.weights if cfg.weights is not None else list(range(code.n + 1))
    rows = []
    for w in weights:
        if not 0 <= w <= code.n:
            raise ConfigError(f"weight {w} outside 0..{code.n}")
        e1 = classify_weight(code, w, "E1", oracle, cfg.limits).count
        m1 = minimal_uncorrectable(code, w, oracle, cfg.limits).count
        lh = len(T.lh_slice(w, cfg.limits)) if w else 0
        rows.append((w, comb(code.n, w), comb(code.n, w) - e1, e1, m1, lh))
    pre = f"# {code.name} n={code.n} k={code.k} d={code.min_distance(cfg.limits)} trial-set={T.provenance.value}"
    _emit(cfg, _format_rows(cfg, ("weight", "total", "E0", "E1", "M1", "LH"), rows, pre))
    return EXIT_OK


def cmd_bounds(cfg: RunConfig, i_values: Sequence[int]) -> int:
    T = _trial_set(cfg)
    rep = bound_report(cfg.code, T, cfg.ground_truth, tuple(i_values), limits=cfg.limits)
    if cfg.fmt == "json":
        text = rep.to_json()
    elif cfg.fmt == "csv":
        text = reports_to_csv([rep])
    else:
        c = rep.condition
        lines = [
            f"code        {rep.code_name} n={rep.n} k={rep.k} d={rep.d} ({rep.parity})",
            f"trial set   {rep.trial_set}  |A_d(T)|={rep.Ad_T}" + (f" |A_d+1(T)|={rep.Ad1_T}" if rep.Ad1_T is not None else ""),
            f"condition   {c.lhs} > {c.rhs}: {c.holds}",
            f"lower       {rep.lower}" + ("" if c.holds else " (not claimed)"),
            f"upper       {rep.upper}",
        ]
        if rep.improved_condition is not None:
            ic = rep.improved_condition
            lines.append(f"improved    {ic.lhs} > {ic.rhs}: {ic.holds}; lower {rep.improved_lower}")
        if rep.count is not None:
            lines.append(f"|E1_{rep.half_weight}|      {rep.count} ({rep.count_oracle})")
            lines.append(f"verdict     {rep.verdict()} ({rep.verdict_mode})")
        for g in rep.generalized:
            lines.append(
                f"i={g.i}: B_i={g.B_i} cond {g.condition.lhs} > {g.condition.rhs}: {g.condition.holds}; "
                f"lower {g.lower}; upper as stated {g.upper_as_stated}, as proved {g.upper_as_proved}"
                + ("" if g.lh_count is None else f"; |LH_i|={g.lh_count} verdict {g.verdict()}")
            )
        text = "\n".join(lines)
    _emit(cfg, text)
    verdicts = [rep.verdict()] + [g.verdict() for g in rep.generalized]
    return EXIT_VIOLATION if "FAIL" in verdicts or False in verdicts else EXIT_OK


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    names = SUITES if suite == "all" else tuple(s.strip() for s in suite.split(","))
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suite(s) {unknown}; choose from {SUITES}")
    checks = run_suites(cfg.code, names, cfg.limits)
    if cfg.fmt == "text":
        text = f"# {cfg.code.name}\n" + "\n".join(c.line() for c in checks)
    else:
        rows = [(c.name, "SKIP" if c.skipped else ("PASS" if c.ok else "FAIL"), c.detail) for c in checks]
        text = _format_rows(cfg, ("suite", "status", "detail"), rows)
    _emit(cfg, text)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_VIOLATION


def rm_table_rows(r_values: Sequence[int], m_values: Sequence[int], limits: Limits) -> list[tuple]:
    rows = []
    for r in r_values:
        for m in m_values:
            if not 0 <= r < m:
                continue
            k = sum(comb(m, i) for i in range(r + 1))
            d = 2 ** (m - r)
            if k > limits.k_enum_max:
                rows.append((r, m, 2**m, k, d, "UNKNOWN", comb(d, d // 2) // 2, "UNKNOWN", "UNKNOWN"))
                continue
            Ad = reed_muller(r, m).weight_distribution(limits)[d]
            c = even_condition(d, Ad)
            rows.append((r, m, 2**m, k, d, Ad, c.lhs, c.rhs, c.holds))
    return rows


def cmd_table(cfg: RunConfig, r_text: Optional[str], m_text: Optional[str]) -> int:
    if r_text is None or m_text is None:
        raise ConfigError("table requires --r and --rm-m ranges")
    rows = rm_table_rows(parse_range(r_text), parse_range(m_text), cfg.limits)
    _emit(cfg, _format_rows(cfg, ("r", "m", "n", "k", "d", "Ad", "lhs", "rhs", "flag"), rows))
    return EXIT_OK


# --------------------------------------------------------------------------


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        if a.threads is not None:
            if a.threads < 1:
                raise ConfigError("--threads must be >= 1")
        config.set_threads(a.threads)
        try:
            limits = Limits(a.k_enum_max, a.r_max, a.slice_cap, a.combo_max)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        code = None if a.command == "table" else _code_from_args(a)
        cfg = RunConfig(
            a.command, code, a.trial_set, a.trial_set_file,
            parse_range(a.weights) if a.weights else None,
            a.ground_truth, limits, a.format, a.out, a.seed,
        )
        if a.command == "analyze":
            return cmd_analyze(cfg)
        if a.command == "bounds":
            return cmd_bounds(cfg, parse_range(a.i) if a.i else ())
        if a.command == "verify":
            return cmd_verify(cfg, a.suite)
        return cmd_table(cfg, a.r, a.rm_m)
    except (ConfigError, InvalidParameters, OutOfRange) as exc:
        print(f"lhbound: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TooLarge as exc:
        print(f"lhbound: refused, {exc.dimension}={exc.value} exceeds ceiling {exc.limit}", file=sys.stderr)
        return EXIT_RESOURCE
    finally:
        config.set_threads(None)


if __name__ == "__main__":
    sys.exit(main())
