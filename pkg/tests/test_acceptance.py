"""Acceptance criteria 1-7 at desk scale.

The desk-scale ``all`` command is run twice with the same seed.  Criteria 1-6
are read off the first report by check family; criterion 7 compares the two
reports byte for byte and checks that every check names its anchor.  One
PASS/FAIL line per criterion is printed.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest.
"""
from __future__ import annotations

import json
import tempfile
from functools import lru_cache
from pathlib import Path

import pytest

from soqlab import cli

DESK_ARGS = ["all", "--seed", "2024", "--format", "json"]


@lru_cache(maxsize=None)
def _reports() -> tuple[bytes, bytes, int, int]:
    tmp = Path(tempfile.mkdtemp(prefix="soqlab-acceptance-"))
    codes, blobs = [], []
    for i in range(2):
        path = tmp / f"all-{i}.json"
        codes.append(cli.main(DESK_ARGS + ["-o", str(path)]))
        blobs.append(path.read_bytes())
    return blobs[0], blobs[1], codes[0], codes[1]


def _checks(prefixes: tuple[str, ...]) -> list[dict]:
    report = json.loads(_reports()[0])
    return [c for c in report["checks"] if c["name"].startswith(prefixes)]


def _summary(checks: list[dict], extra: str = "") -> tuple[bool, str]:
    failed = [c["name"] for c in checks if not c["passed"]]
    ok = bool(checks) and not failed
    msg = f"{len(checks)} checks, {len(failed)} failed"
    if failed:
        msg += f" (first: {failed[0]})"
    return ok, msg + (f"; {extra}" if extra else "")


def criterion_1():
    checks = _checks(("frt ", "unitarity ", "involution "))
    worst = max(c["residual"] for c in checks)
    qs = sorted({c["q"] for c in checks})
    return _summary(checks, f"max residual {worst:.1e} over q={qs}")


def criterion_2():
    checks = _checks(("vanishing ",))
    exact = all(c["zeros_exact"] and c["eigen_residual"] == 0.0 for c in checks)
    ns = sorted({c["n"] for c in checks})
    ok, msg = _summary(checks, f"n in {ns}")
    return ok and exact and ns == [1, 2, 3], msg


def criterion_3():
    checks = _checks(("trivial exhaustive", "random nontrivial"))
    Ns = sorted(c["N"] for c in checks if "N" in c)
    random = [c for c in checks if c["name"].startswith("random")]
    ok, msg = _summary(checks, f"N={Ns}, random queries={random[0]['queries'] if random else 0}")
    return ok and Ns == list(range(4, 10)) and random and random[0]["queries"] >= 200, msg


def criterion_4():
    checks = _checks(("hw ",))
    lam = max(c["lambda"][0] for c in checks if "lambda" in c)
    worst = max(c["residual"] for c in checks if "residual" in c)
    ok, msg = _summary(checks, f"lambda_1 <= {lam}, max relative residual {worst:.1e}")
    return ok and lam >= 3, msg


def criterion_5():
    checks = _checks(("winding ", "ktheory "))
    windings = {c["k"] for c in checks if c["name"].startswith("winding") and c["winding"] == 1}
    by_case: dict = {}
    for c in checks:
        if c["name"].startswith("ktheory"):
            by_case.setdefault((c["case"], c["n"], c["k"]), []).append(
                (c["d"], c["defect_difference"], c["expected_projection_residual"], c["ideal_membership"]))
    stable = all(len(v) == 2 and len({x[1:] for x in v}) == 1 for v in by_case.values())
    ds = sorted({x[0] for v in by_case.values() for x in v})
    ok, msg = _summary(checks, f"windings 1 for k={sorted(windings)}, d={ds}, stable={stable}")
    return ok and windings == {1, 2, 3, 4, 5} and stable and ds == [8, 16], msg


def criterion_6():
    checks = _checks(("qlimit ", "continuity "))
    series = [c for c in checks if c.get("slope_relative_error") is not None]
    worst_slope = max(c["slope_relative_error"] for c in series)
    cont = [c for c in checks if c["name"].startswith("continuity")]
    jumps = max(c["max_jump_ratio"] for c in cont)
    ok, msg = _summary(checks, f"worst slope error {worst_slope:.1%}, worst jump/median {jumps:.2f}")
    return ok and len(cont) == 2, msg


def criterion_7():
    a, b, code_a, code_b = _reports()
    report = json.loads(a)
    anchors = all(c["anchor"] for c in report["checks"])
    failure_anchors = {f["name"]: f["anchor"] for f in report["failures"]}
    named = all(failure_anchors.get(c["name"]) == c["anchor"] for c in report["checks"] if not c["passed"])
    ok = a == b and code_a == code_b and report["schema"] == "soq-lab/1" and anchors and named
    return ok, f"identical={a == b}, {len(a)} bytes, exit codes {code_a}/{code_b}, every check anchored={anchors}"


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
            7: criterion_7}


def _line(num: int) -> tuple[bool, str]:
    ok, msg = CRITERIA[num]()
    return ok, f"criterion {num}: {'PASS' if ok else 'FAIL'}  {msg}"


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num, capsys):
    ok, line = _line(num)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    for num in sorted(CRITERIA):
        print(_line(num)[1])
