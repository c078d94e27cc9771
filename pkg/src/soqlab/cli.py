"""Command-line surface: configuration, verification suites and report emission.

Every check in a report carries an ``anchor`` naming the claim it tests, so a
failing run says which statement it contradicts.  Reports are deterministic:
no timestamps, sorted keys, and all randomness drawn from ``--seed``.

Exit codes: 0 if every check passes, 1 if some check fails, 2 if the
configuration is invalid.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .branching import BranchQuery, dominant_weights, multiplicity, multiplicity_bruteforce, trivial_multiplicity
from .ktheory import boundary_witness, build_uk, winding
from .qlimit import CATALOG, PRINTED_VARIANTS, build_limit_pair, continuity_sweep, run_catalog, verify_identity
from .quea import HighestWeight, PolyEvaluator, build_hw_vectors, linear_independence, verify_hw
from .repbuilder import (build_elementary, build_pi, build_rmatrix, check_frt, k_range, pi_omega,
                         quotient_t_degrees, vanishing_pattern)
from .scalars import QParams
from .weyl import WeylWord, omega_k

SCHEMA = "soq-lab/1"
ENV_OUTPUT_DIR = "SOQ_LAB_OUTPUT_DIR"
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

DESK_N = (4, 5, 6, 7)
# the vanishing patterns also cover B_1 = SO(3)
IRREPS_N = (3, 4, 5, 6, 7)
DESK_Q = (0.3, 0.5, 0.7)

ANCHORS = {
    "frt": "FRT relations of the fundamental matrix",
    "unitarity": "unitarity of the fundamental matrix",
    "involution": "involution on the generators",
    "vanishing": "vanishing pattern of the last row under the irreducible quotient representations",
    "branch": "two-step branching multiplicity by interleaving patterns",
    "branch_trivial": "closed form for the multiplicity of the trivial SO(N-2) component",
    "hw": "highest weight vectors of the quotient space",
    "hw_count": "number of highest weight vectors equals the branching multiplicity",
    "winding": "u_k generates K_1 of the Toeplitz tensor algebra",
    "ktheory_A": "index map, case k <= n",
    "ktheory_B": "index map, odd case k = n + 1 (torsion generator)",
    "ktheory_D": "index map, even case k = n + 1",
    "continuity": "generators depend continuously on q",
}
EXPECTED_DEFECT = {"A": 1, "B": 2, "D": 1}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    N: list[int] | None = None
    type: str | None = None
    n: int | None = None
    k: int | None = None
    q: list[float] = field(default_factory=lambda: list(DESK_Q))
    d: int = 16
    margin: int = 6
    tol: float | None = None
    samples: int = 64
    format: str = "json"
    output: str | None = None
    seed: int = 0
    word: str | None = None
    max_length: int = 4
    alpha: list[int] | None = None
    beta: list[int] | None = None
    classical: bool = False
    random_queries: int = 200
    max_a1: int = 6
    lam_max: int = 3
    case: str | None = None
    family: str | None = None
    L: int = 12

    def validate(self) -> None:
        if self.format not in ("json", "csv", "md"):
            raise ConfigError(f"unknown format {self.format!r}")
        if not self.q or any(not 0 < q < 1 for q in self.q):
            raise ConfigError("every q must lie in (0, 1)")
        if self.d < 4 or not 0 <= self.margin < self.d:
            raise ConfigError("need d >= 4 and 0 <= margin < d")
        if self.type is not None:
            if self.type not in ("B", "D") or self.n is None:
                raise ConfigError("--type needs B or D together with --n")
            self.N = [2 * self.n + 1 if self.type == "B" else 2 * self.n]
        min_N = 3 if self.command in ("irreps", "check-frt") else 4
        if self.N is not None and any(N < min_N for N in self.N):
            raise ConfigError(f"N must be >= {min_N} for {self.command}")
        if self.samples < 4 or self.seed < 0 or self.L < 1 or self.lam_max < 0 or self.max_a1 < 0:
            raise ConfigError("samples >= 4, seed >= 0, L >= 1 and nonnegative bounds are required")
        if self.case is not None and self.case not in EXPECTED_DEFECT:
            raise ConfigError(f"unknown K-theory case {self.case!r}")
        if self.family is not None and self.family not in ("D4", "B"):
            raise ConfigError(f"unknown q-limit family {self.family!r}")
        for q in self.q:
            self.params(q)

    def params(self, q: float, d: int | None = None, margin: int | None = None) -> QParams:
        try:
            return QParams(q, d or self.d, self.margin if margin is None else margin, self.tol)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass
class Check:
    name: str
    anchor: str
    passed: bool
    data: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _ns(cfg: RunConfig, default: tuple[int, ...]) -> list[int]:
    return list(cfg.N) if cfg.N is not None else list(default)


def _type_n(N: int) -> tuple[str, int]:
    return ("B" if N % 2 else "D"), N // 2


def _parse_word(text: str, N: int) -> WeylWord:
    type_, n = _type_n(N)
    letters = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        if not tok.startswith("s") or not tok[1:].isdigit():
            raise ConfigError(f"bad letter {tok!r} in word; use s1,s2,...")
        letters.append(int(tok[1:]))
    try:
        return WeylWord(type_, n, tuple(letters))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _clean(x):
    """JSON-safe copy with numpy scalars unwrapped and non-finite floats as strings."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    return x


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def _frt_checks(rep, q: float, params: QParams, label: str) -> list[Check]:
    rep_report = check_frt(rep, build_rmatrix(rep.N, q), params)
    base = {"rep": label, "N": rep.N, "q": q, "d": params.d, "tol": params.tol}
    return [
        Check(f"frt {label} N={rep.N} q={q}", ANCHORS["frt"], rep_report.frt_max <= params.tol,
              {**base, "residual": rep_report.frt_max, "argmax": rep_report.frt_argmax}),
        Check(f"unitarity {label} N={rep.N} q={q}", ANCHORS["unitarity"], rep_report.unitarity_max <= params.tol,
              {**base, "residual": rep_report.unitarity_max}),
        Check(f"involution {label} N={rep.N} q={q}", ANCHORS["involution"], rep_report.involution_max <= params.tol,
              {**base, "residual": rep_report.involution_max, "argmax": rep_report.involution_argmax}),
    ]


def suite_frt(cfg: RunConfig) -> list[Check]:
    checks = []
    for q in cfg.q:
        params = cfg.params(q)
        for N in _ns(cfg, DESK_N):
            type_, n = _type_n(N)
            if cfg.word is not None:
                if cfg.N is None or len(cfg.N) != 1:
                    raise ConfigError("--word needs a single --N")
                w = _parse_word(cfg.word, N)
                try:
                    rep = build_pi(type_, n, w, quotient_t_degrees(n), params)
                except ValueError as exc:
                    raise ConfigError(str(exc)) from exc
                checks += _frt_checks(rep, q, params, f"pi[{w}]")
                continue
            for i in range(1, n + 1):
                checks += _frt_checks(build_elementary(type_, n, i, params), q, params, f"pi_s{i}")
            for k in k_range(type_, n):
                w = omega_k(type_, n, k)
                if 0 < len(w) <= cfg.max_length:
                    checks += _frt_checks(pi_omega(type_, n, k, params), q, params, f"pi[omega_{k}={w}]")
    return checks


def suite_irreps(cfg: RunConfig) -> list[Check]:
    """Zeros are exact and the eigenrelation uses only the vacuum column, so a small cut-off suffices."""
    checks = []
    for q in cfg.q:
        params = cfg.params(q, min(cfg.d, 8), 2)
        for N in _ns(cfg, IRREPS_N):
            type_, n = _type_n(N)
            ks = [cfg.k] if cfg.k is not None else list(k_range(type_, n))
            for k in ks:
                try:
                    rep = vanishing_pattern(type_, n, k, params, samples=min(cfg.samples, 16))
                except ValueError as exc:
                    raise ConfigError(str(exc)) from exc
                data = {**rep.as_dict(), "N": N, "q": q, "length": len(omega_k(type_, n, k))}
                checks.append(Check(f"vanishing N={N} k={k} q={q}", ANCHORS["vanishing"], rep.passed, data))
    return checks


def _branch_check(qy: BranchQuery, classical: bool, label: str) -> Check:
    m = multiplicity(qy, classical)
    m2 = multiplicity_bruteforce(qy, classical)
    data = {"N": qy.N, "alpha": list(qy.alpha), "beta": list(qy.beta), "multiplicity": m, "bruteforce": m2,
            "classical": classical}
    return Check(label, ANCHORS["branch"], m == m2, data)


def _random_dominant(rng: np.random.Generator, N: int, max_a1: int) -> tuple[int, ...]:
    n = N // 2
    vals = sorted(rng.integers(0, max_a1 + 1, size=n).tolist(), reverse=True)
    if N % 2 == 0 and vals[-1] and rng.random() < 0.5:
        vals[-1] = -vals[-1]
    return tuple(vals)


def suite_branch(cfg: RunConfig, exhaustive: bool | None = None) -> list[Check]:
    checks = []
    if cfg.alpha is not None:
        if not cfg.N or len(cfg.N) != 1:
            raise ConfigError("--alpha needs a single --N")
        N = cfg.N[0]
        beta = cfg.beta if cfg.beta is not None else [0] * (N // 2 - 1)
        try:
            qy = BranchQuery(N, tuple(cfg.alpha), tuple(beta))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        checks.append(_branch_check(qy, cfg.classical, f"branch N={N} alpha={qy.alpha} beta={qy.beta}"))
        if not any(qy.beta):
            m = trivial_multiplicity(qy.alpha, N)
            checks.append(Check(f"trivial N={N} alpha={qy.alpha}", ANCHORS["branch_trivial"],
                                m == checks[0].data["multiplicity"], {"N": N, "alpha": list(qy.alpha),
                                                                      "closed_form": m}))
        if not exhaustive:
            return checks
    Ns = cfg.N if cfg.N is not None else range(4, 10)
    for N in Ns:
        bad, count = [], 0
        for alpha in dominant_weights(N, cfg.max_a1):
            qy = BranchQuery(N, alpha, (0,) * (N // 2 - 1))
            count += 1
            if multiplicity(qy, cfg.classical) != trivial_multiplicity(alpha, N):
                bad.append(list(alpha))
        checks.append(Check(f"trivial exhaustive N={N} max_a1={cfg.max_a1}", ANCHORS["branch_trivial"], not bad,
                            {"N": N, "weights": count, "mismatches": bad[:10]}))
    rng = np.random.default_rng(cfg.seed)
    bad, done = [], 0
    while done < cfg.random_queries:
        N = int(rng.choice(list(Ns)))
        alpha = _random_dominant(rng, N, cfg.max_a1)
        beta = _random_dominant(rng, N - 2, cfg.max_a1)
        if not any(beta):
            continue
        qy = BranchQuery(N, alpha, beta)
        done += 1
        if multiplicity(qy, cfg.classical) != multiplicity_bruteforce(qy, cfg.classical):
            bad.append({"N": N, "alpha": list(alpha), "beta": list(beta)})
    checks.append(Check(f"random nontrivial beta x{cfg.random_queries} seed={cfg.seed}", ANCHORS["branch"], not bad,
                        {"queries": cfg.random_queries, "seed": cfg.seed, "mismatches": bad[:10]}))
    return checks


def _hw_weights(N: int, lam_max: int) -> list[tuple[int, int]]:
    out = []
    for l1 in range(lam_max + 1):
        lo = -l1 if N == 4 else 0
        out += [(l1, l2) for l2 in range(lo, l1 + 1)]
    return out


def _ladder_length(N: int, l1: int, l2: int) -> int:
    if N == 4:
        return l1 + abs(l2)
    return l1 + 3 * l2 if N == 5 else l1 + l2


def suite_hw(cfg: RunConfig) -> list[Check]:
    checks = []
    for q in cfg.q:
        tol = cfg.params(q).tol
        for N in _ns(cfg, DESK_N):
            weights = _hw_weights(N, cfg.lam_max)
            ev = PolyEvaluator(N, q, max_len=max(_ladder_length(N, *w) for w in weights), interior=3)
            for l1, l2 in weights:
                hw = HighestWeight(N, (l1, l2))
                xs = build_hw_vectors(l1, l2, N, q)
                reps = [verify_hw(x, hw, ev, tol) for x in xs]
                resid = max(max(r.e_residuals + r.k_residuals) for r in reps)
                rank = linear_independence(xs, ev)
                alpha = (l1, l2) + (0,) * (N // 2 - 2)
                data = {"N": N, "q": q, "lambda": [l1, l2], "vectors": len(xs), "rank": rank,
                        "expected_rank": hw.count, "residual": resid, "tol": tol}
                checks.append(Check(f"hw N={N} lambda=({l1},{l2}) q={q}", ANCHORS["hw"],
                                    all(r.passed for r in reps) and rank == hw.count, data))
                m = trivial_multiplicity(alpha, N)
                checks.append(Check(f"hw count N={N} lambda=({l1},{l2}) q={q}", ANCHORS["hw_count"],
                                    rank == m, {"N": N, "q": q, "rank": rank, "multiplicity": m}))
    return checks


def _witness_check(case: str, n: int, k: int | None, params: QParams) -> Check:
    rep = boundary_witness(case, n, k, params)
    tol = params.tol
    expected = EXPECTED_DEFECT[case]
    ok = (rep.winding == 1 and abs(rep.defect_difference - expected) < 1e-9
          and max(rep.expected_projection_residual, rep.projection_residual, rep.rho_residual) <= tol)
    if case == "D":
        ok = ok and bool(rep.ideal_membership)
    data = {**rep.as_dict(), "expected_defect_difference": expected, "q": params.q, "tol": tol}
    return Check(f"ktheory case={case} n={n} k={rep.k} d={params.d} q={params.q}", ANCHORS[f"ktheory_{case}"],
                 ok, data)


def suite_ktheory(cfg: RunConfig) -> list[Check]:
    checks = []
    q = cfg.q[0]
    if cfg.case is not None:
        n = cfg.n if cfg.n is not None else 2
        if cfg.case == "A" and cfg.k is None:
            raise ConfigError("case A needs --k")
        try:
            return [_witness_check(cfg.case, n, cfg.k, cfg.params(q))]
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    for d in (8, cfg.d):
        params = cfg.params(q, d, min(cfg.margin, d // 2))
        for k in range(1, 6):
            w = winding(build_uk(k, params.with_dims(min(d, 8), 0)), samples=cfg.samples)
            checks.append(Check(f"winding u_{k} d={d}", ANCHORS["winding"], w == 1, {"k": k, "winding": w, "d": d}))
        for n in (2, 3):
            for k in range(2, n + 1):
                checks.append(_witness_check("A", n, k, params))
        checks.append(_witness_check("B", 2, None, params))
        checks.append(_witness_check("D", 2, None, params))
    return checks


def suite_qlimit(cfg: RunConfig) -> tuple[list[Check], dict]:
    checks, extra = [], {"printed_variants": []}
    families = [cfg.family] if cfg.family else ["D4", "B"]
    names = [name for name, ident in CATALOG.items() if ident.family in families]
    for q in cfg.q:
        params = cfg.params(q)
        for res in run_catalog(q, params, cfg.L, names):
            data = {**res.as_dict(), "tol": params.tol}
            ok = res.residual <= params.tol
            if res.decay_slope is not None:
                rel = abs(res.decay_slope - res.predicted_slope) / abs(res.predicted_slope)
                data["slope_relative_error"] = rel
                ok = ok and rel <= 0.2
            checks.append(Check(f"qlimit {res.identity} q={q}", res.anchor, ok, data))
        if "D4" in families:
            pair = build_limit_pair("D4", 3, q, params)
            for name, ident in PRINTED_VARIANTS.items():
                extra["printed_variants"].append({"identity": name, "q": q, "anchor": ident.anchor,
                                                  "residual": verify_identity(name, pair, cfg.L, params)})
    grid = [round(0.3 + 0.05 * i, 2) for i in range(9)]
    for fam in families:
        index = 3 if fam == "D4" else 2
        table = continuity_sweep(fam, index, grid, cfg.params(0.5))
        ok = math.isfinite(table.lipschitz_ratio) and table.max_jump_ratio <= 5.0
        checks.append(Check(f"continuity {fam}", ANCHORS["continuity"], ok, table.as_dict()))
    return checks, extra


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _config_dict(cfg: RunConfig) -> dict:
    out = asdict(cfg)
    out.pop("output")
    return out


def build_report(cfg: RunConfig, checks: list[Check], extra: dict | None = None) -> dict:
    failed = [c for c in checks if not c.passed]
    residuals = [c.data["residual"] for c in checks if isinstance(c.data.get("residual"), float)]
    report = {
        "schema": SCHEMA,
        "command": cfg.command,
        "config": _config_dict(cfg),
        "passed": not failed,
        "summary": {"checks": len(checks), "failed": len(failed),
                    "max_residual": max(residuals) if residuals else None},
        "checks": [{"name": c.name, "anchor": c.anchor, "passed": c.passed, **c.data} for c in checks],
        "failures": [{"name": c.name, "anchor": c.anchor} for c in failed],
    }
    if extra:
        report.update(extra)
    return _clean(report)


def _flat(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows = report["checks"]
    keys = ["name", "anchor", "passed"] + sorted({k for r in rows for k in r} - {"name", "anchor", "passed"})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([_flat(r.get(k, "")) for k in keys])
        return buf.getvalue()
    lines = [f"# soq-lab report: {report['command']}", "",
             f"schema `{report['schema']}`, {report['summary']['checks']} checks, "
             f"{report['summary']['failed']} failed", "",
             "| check | anchor | passed | residual |", "|---|---|---|---|"]
    for r in rows:
        lines.append(f"| {r['name']} | {r['anchor']} | {'yes' if r['passed'] else 'NO'} | {r.get('residual', '')} |")
    return "\n".join(lines) + "\n"


def _destination(cfg: RunConfig) -> Path | None:
    if cfg.output:
        return Path(cfg.output)
    root = os.environ.get(ENV_OUTPUT_DIR)
    if root:
        return Path(root) / f"{cfg.command}.{cfg.format}"
    return None


def emit(cfg: RunConfig, report: dict, stream=None) -> None:
    text = render(report, cfg.format)
    dest = _destination(cfg)
    if dest is None:
        (stream or sys.stdout).write(text)
        return
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text(text)
    print(f"{cfg.command}: {'pass' if report['passed'] else 'FAIL'} -> {dest}", file=sys.stderr)


def _run(cfg: RunConfig, suite: Callable[[RunConfig], object]) -> int:
    result = suite(cfg)
    checks, extra = result if isinstance(result, tuple) else (result, None)
    report = build_report(cfg, checks, extra)
    emit(cfg, report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_check_frt(cfg: RunConfig) -> int:
    return _run(cfg, suite_frt)


def cmd_irreps(cfg: RunConfig) -> int:
    return _run(cfg, suite_irreps)


def cmd_branch(cfg: RunConfig) -> int:
    return _run(cfg, lambda c: suite_branch(c, exhaustive=c.alpha is None))


def cmd_hw(cfg: RunConfig) -> int:
    return _run(cfg, suite_hw)


def cmd_ktheory(cfg: RunConfig) -> int:
    return _run(cfg, suite_ktheory)


def cmd_qlimit(cfg: RunConfig) -> int:
    return _run(cfg, suite_qlimit)


def suite_all(cfg: RunConfig) -> tuple[list[Check], dict]:
    checks = suite_frt(cfg) + suite_irreps(cfg) + suite_branch(cfg, exhaustive=True) + suite_hw(cfg)
    checks += suite_ktheory(cfg)
    q_checks, extra = suite_qlimit(cfg)
    return checks + q_checks, extra


def cmd_all(cfg: RunConfig) -> int:
    return _run(cfg, suite_all)


COMMANDS = {
    "check-frt": cmd_check_frt, "irreps": cmd_irreps, "branch": cmd_branch, "hw": cmd_hw,
    "ktheory": cmd_ktheory, "qlimit": cmd_qlimit, "all": cmd_all,
}
DEFAULT_FORMAT = {"branch": "csv"}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    g.add_argument("--N", type=_int_list, help="N or comma-separated list (default 4,5,6,7)")
    g.add_argument("--type", choices=["B", "D"], help="Lie type, used with --n instead of --N")
    g.add_argument("--n", type=int, help="rank")
    g.add_argument("--k", type=int, help="index of omega_k")
    g.add_argument("--q", type=_float_list, help="q or comma-separated list (default 0.3,0.5,0.7)")
    g.add_argument("--dim", "--d", dest="d", type=int, help="cut-off dimension per Toeplitz factor")
    g.add_argument("--margin", type=int, help="excluded top basis vectors per factor")
    g.add_argument("--tol", type=float, help="tolerance override (not below the truncation floor)")
    g.add_argument("--samples", type=int, help="circle samples for t-dependent checks")
    g.add_argument("--format", choices=["json", "csv", "md"])
    g.add_argument("--output", "-o", help=f"report path (default: ${ENV_OUTPUT_DIR}/<command>.<format> or stdout)")
    g.add_argument("--seed", type=int, help="seed for randomized checks")

    p = argparse.ArgumentParser(prog="soq-lab", description="Numerical checks for SO_q(N) and its quotient spaces.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("check-frt", parents=[common], help="FRT, unitarity and involution residuals")
    s.add_argument("--word", help="reduced word such as s1,s2,s1 (default: elementary reps and omega_k)")
    s.add_argument("--max-length", type=int, dest="max_length")
    s = sub.add_parser("irreps", parents=[common], help="vanishing patterns of the quotient representations")
    s = sub.add_parser("branch", parents=[common], help="branching multiplicities")
    s.add_argument("--alpha", type=_int_list)
    s.add_argument("--beta", type=_int_list)
    s.add_argument("--classical", action="store_true", default=None)
    s.add_argument("--random-queries", type=int, dest="random_queries")
    s.add_argument("--max-a1", type=int, dest="max_a1")
    s = sub.add_parser("hw", parents=[common], help="highest weight vector suite")
    s.add_argument("--lam-max", type=int, dest="lam_max")
    s = sub.add_parser("ktheory", parents=[common], help="winding numbers and index-map defects")
    s.add_argument("--case", choices=sorted(EXPECTED_DEFECT))
    s = sub.add_parser("qlimit", parents=[common], help="q-limit identity catalog and continuity")
    s.add_argument("--family", choices=["D4", "B"])
    s.add_argument("--L", type=int, dest="L")
    s = sub.add_parser("all", parents=[common], help="every suite at desk scale")
    s.add_argument("--max-a1", type=int, dest="max_a1")
    s.add_argument("--lam-max", type=int, dest="lam_max")
    s.add_argument("--L", type=int, dest="L")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if args.config:
        try:
            values.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
    for key, val in vars(args).items():
        if key not in ("config", "command") and val is not None:
            values[key] = val
    values.setdefault("format", DEFAULT_FORMAT.get(args.command, "json"))
    for key in ("N", "q"):
        if key in values and not isinstance(values[key], list):
            values[key] = [values[key]]
    try:
        cfg = RunConfig(command=args.command, **values)
    except TypeError as exc:
        raise ConfigError(f"unknown configuration field: {exc}") from exc
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_CONFIG
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"soq-lab: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
