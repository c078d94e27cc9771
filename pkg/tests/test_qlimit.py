import numpy as np
import pytest
from hypothesis import given, strategies as st

from soqlab.opcalc import LaurentOp, TruncOp, norm, qn_op, shift_op
from soqlab.qlimit import (CATALOG, PRINTED_VARIANTS, build_limit_pair, continuity_sweep, fit_decay_slope,
                           predicted_slope, run_catalog, verify_identity)
from soqlab.scalars import QParams

P = QParams(0.5, 16, 6)
P10 = QParams(0.5, 10, 3)


@pytest.fixture(scope="module")
def d4():
    return build_limit_pair("D4", 3, 0.5, P)


@pytest.fixture(scope="module")
def bpair():
    return build_limit_pair("B", 2, 0.5, P10)


def test_x2_generator_form(d4):
    d, q = P.d, 0.5
    n = np.arange(d)
    # sqrt(1 - q^(2N+2)) S* sends e_n to sqrt(1 - q^(2n+4)) e_(n+1)
    slot = np.diag(np.sqrt(1 - q ** (2 * n[:-1] + 4)), -1)
    dense = np.kron(slot, slot)
    X2 = d4.get("X2")
    assert X2.degrees == [1]
    assert np.allclose(X2.coeffs[1].matrix, dense)


def test_limits_are_entrywise():
    gaps = []
    for q in (1e-2, 1e-4, 1e-6):
        pair = build_limit_pair("D4", 3, q, QParams(q, 8, 2))
        gaps.append(max(norm(a - b) for a, b in zip(pair.gens_q, pair.gens_0)))
    assert gaps[0] > gaps[1] > gaps[2] and gaps[2] < 1e-5
    for q in (1e-2, 1e-4):
        pair = build_limit_pair("B", 2, q, QParams(q, 6, 2))
        assert max(norm(a - b) for a, b in zip(pair.gens_q, pair.gens_0)) < 10 * np.sqrt(q)


def test_y2_star_exact(d4):
    assert verify_identity("Y2-star", d4, 12, P) <= 1e-13


def test_x2_series_within_tol(d4):
    assert verify_identity("X2q-series", d4, 12, P) <= P.tol


@given(st.integers(1, 10))
def test_series_residual_monotone(L):
    pair = build_limit_pair("D4", 3, 0.5, P10)
    for name in ("X2q-series", "X1q-series"):
        assert verify_identity(name, pair, L + 2, P10) <= verify_identity(name, pair, L, P10) + 1e-15


@given(st.integers(1, 10))
def test_b_series_residual_monotone(L):
    pair = build_limit_pair("B", 2, 0.5, P10)
    assert verify_identity("B-x1-series", pair, L + 2, P10) <= verify_identity("B-x1-series", pair, L, P10) + 1e-15


@pytest.mark.parametrize("name", [n for n, i in CATALOG.items() if i.series])
def test_decay_slopes(name):
    ident = CATALOG[name]
    pair = build_limit_pair(ident.family, ident.index, 0.5, P)
    slope, _ = fit_decay_slope(name, pair, P)
    pred = predicted_slope(name, 0.5)
    assert abs(slope - pred) <= 0.2 * abs(pred)


def test_printed_variants_fail(d4):
    for name in PRINTED_VARIANTS:
        assert verify_identity(name, d4, 12, P) > 0.1


def test_catalog_passes_small_cut_off():
    for res in run_catalog(0.5, P10, L=12):
        assert res.residual <= P10.tol, res.identity


def test_catalog_rejects_wrong_family(bpair):
    with pytest.raises(ValueError):
        verify_identity("Y2-star", bpair, 12, P10)
    with pytest.raises(KeyError):
        verify_identity("nope", bpair, 12, P10)


def test_continuity_constant_generator():
    d = 6
    S = LaurentOp.from_trunc(shift_op(d).adj(), 1)

    def build(q):
        return {"S": S}
    table = continuity_sweep(build, 1, [0.3, 0.4, 0.5], QParams(0.5, d, 2))
    assert table.diffs["S"] == [0.0, 0.0]


@given(st.integers(2, 3))
def test_continuity_matches_analytic_difference(k):
    d, m = 6, 2
    params = QParams(0.5, d, m)

    def xk(q):
        op = TruncOp.identity(())
        for _ in range(k - 1):
            op = op.kron(qn_op(1.0, q, d))
        return {"x": LaurentOp.from_trunc(op, 1)}
    grid = [0.3, 0.4, 0.55, 0.7]
    table = continuity_sweep(xk, k, grid, params)
    s = np.arange((k - 1) * (d - m - 1) + 1)
    for (a, b), got in zip(zip(grid, grid[1:]), table.diffs["x"]):
        exact = np.max(np.abs(a ** s - b ** s))
        assert got == pytest.approx(exact, abs=1e-14)
        # mean value bound with sup derivative of q^s on [a, b]
        assert got <= np.max(s * b ** np.maximum(s - 1, 0)) * (b - a) + 1e-14


def test_continuity_sweep_b():
    grid = [round(0.3 + 0.05 * i, 2) for i in range(9)]
    table = continuity_sweep("B", 2, grid, P10)
    assert np.isfinite(table.lipschitz_ratio) and table.max_jump_ratio <= 5


def test_sweep_validates_grid():
    with pytest.raises(ValueError):
        continuity_sweep("B", 2, [0.5, 0.3], P10)
    with pytest.raises(ValueError):
        build_limit_pair("D4", 4, 0.5, P10)
