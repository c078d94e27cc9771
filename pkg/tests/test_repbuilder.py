import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from soqlab.opcalc import LaurentOp, TruncOp, norm, qn_op, sqrt_shift_op
from soqlab.repbuilder import (build_elementary, build_pi, build_rmatrix, build_tau, check_frt, convolve, eta_N,
                               k_range, quotient_generators, quotient_t_degrees, rho_k, trivial_rep,
                               vanishing_bound, vanishing_pattern)
from soqlab.scalars import QParams
from soqlab.weyl import WeylWord, omega_k

P = QParams(0.5, 10, 4)
GROUPS = [("D", 2), ("B", 2), ("D", 3), ("B", 3)]


def _max(rep):
    return max(rep.frt_max, rep.unitarity_max, rep.involution_max)


def _qn_tensor(k, d, q=0.5):
    out = TruncOp.identity(())
    for _ in range(k):
        out = out.kron(qn_op(1, q, d))
    return out


@pytest.mark.parametrize("N", [4, 5, 6, 7, 8, 9])
def test_rho(N):
    R = build_rmatrix(N, 0.5)
    assert R.rho[1] == N / 2 - 1


@pytest.mark.parametrize("N", [4, 5, 7])
def test_trivial_rep_exact(N):
    assert _max(check_frt(trivial_rep(N), build_rmatrix(N, 0.5), P)) == 0.0


def test_pi_s1_gate_n5():
    params = QParams(0.5, 16, 6)
    rep = check_frt(build_elementary("B", 2, 1, params), build_rmatrix(5, 0.5), params)
    assert rep.passed and _max(rep) <= params.tol


@pytest.mark.parametrize("type_,n", GROUPS + [("D", 4), ("B", 4)])
def test_every_elementary_passes(type_, n):
    N = 2 * n + (type_ == "B")
    R = build_rmatrix(N, 0.5)
    for i in range(1, n + 1):
        assert check_frt(build_elementary(type_, n, i, P), R, P).passed


entries = st.tuples(st.integers(1, 5), st.integers(1, 5))


@given(entries, st.sampled_from([1, 2]))
def test_corrupted_rep_detected(ij, node):
    rep = build_elementary("B", 2, node, P)
    i, j = ij
    e = rep.entry(i, j)
    if e.is_zero():
        return
    bad = rep.with_entry(i, j, e * 1.01)
    assert not check_frt(bad, build_rmatrix(5, 0.5), P).passed


def test_tau_examples():
    eps = build_tau(5, (0, 0))
    for i, j in itertools.product(range(1, 6), repeat=2):
        e = eps.entry(i, j)
        assert (e.degrees == [0] and e.coeffs[0].symbol() == 1) if i == j else e.is_zero()
    tau = build_tau(3, (1,))
    assert tau.entry(1, 1).degrees == [-1]
    assert tau.entry(3, 3).degrees == [1]
    assert tau.entry(2, 2).degrees == [0]
    assert _max(check_frt(build_tau(7, (1, 2, 0)), build_rmatrix(7, 0.5), P)) == 0.0


def test_elementary_entries_b2():
    d, q = P.d, 0.5
    rep = build_elementary("B", 2, 1, P)
    target = LaurentOp.from_trunc(sqrt_shift_op(q, 2, 1, d))
    assert norm(rep.entry(1, 1) - target) == 0.0
    assert norm(rep.entry(3, 3) - LaurentOp.identity((d,))) == 0.0
    # the middle block of s_n carries an (S*)^2 component
    mid = build_elementary("B", 2, 2, P)
    found = False
    for i, j in itertools.product(range(2, 5), repeat=2):
        e = mid.entry(i, j)
        if 0 in e.coeffs:
            m = e.coeffs[0].matrix
            found |= bool(np.any(np.abs(np.diag(m, -2)) > 1e-12))
    assert found


@pytest.mark.parametrize("N", [4, 5, 6, 7])
def test_convolution_residual_bound(N):
    type_, n = ("B" if N % 2 else "D"), N // 2
    R = build_rmatrix(N, 0.5)
    reps = {i: build_elementary(type_, n, i, P) for i in range(1, n + 1)}
    res = {i: _max(check_frt(r, R, P)) for i, r in reps.items()}
    for i, j in itertools.product(reps, repeat=2):
        assert _max(check_frt(convolve(reps[i], reps[j]), R, P)) <= 3 * (res[i] + res[j])


def test_convolution_associative():
    params = QParams(0.5, 6, 2)
    a, b = build_elementary("B", 2, 1, params), build_elementary("B", 2, 2, params)
    lhs, rhs = convolve(convolve(a, b), a), convolve(a, convolve(b, a))
    for i, j in itertools.product(range(1, 6), repeat=2):
        assert norm(lhs.entry(i, j) - rhs.entry(i, j)) <= 1e-13


def test_build_pi_empty_word_is_tau():
    rep = build_pi("B", 2, WeylWord("B", 2), (1, 0), P)
    tau = build_tau(5, (1, 0))
    for i, j in itertools.product(range(1, 6), repeat=2):
        assert norm(rep.entry(i, j) - tau.entry(i, j)) == 0.0


def test_build_pi_rejects_nonreduced():
    with pytest.raises(ValueError):
        build_pi("B", 2, WeylWord("B", 2, (1, 1)), (1, 0), P)


@pytest.mark.parametrize("type_,n", GROUPS)
def test_pi_omega_passes(type_, n):
    params = QParams(0.5, 8, 3)
    R = build_rmatrix(2 * n + (type_ == "B"), 0.5)
    for k in k_range(type_, n):
        if len(omega_k(type_, n, k)) <= 3:
            assert check_frt(build_pi(type_, n, omega_k(type_, n, k), quotient_t_degrees(n), params), R,
                             params).passed


def test_b3_vanishing_structure():
    params = QParams(0.5, 6, 2)
    g = quotient_generators("B", 3, 5, params)
    bound = vanishing_bound("B", 3, 5)
    assert all(g.v_last(j).is_zero() for j in range(1, bound + 1))
    assert not g.v_last(bound + 1).is_zero()


@pytest.mark.parametrize("type_,n", GROUPS)
def test_vanishing_patterns(type_, n):
    params = QParams(0.5, 6, 2)
    for k in k_range(type_, n):
        rep = vanishing_pattern(type_, n, k, params)
        assert rep.passed and rep.eigen_sign in (1, -1)


@pytest.mark.parametrize("type_,n", [("B", 3), ("D", 3)])
def test_xk_is_t_times_qn(type_, n):
    d = 8
    params = QParams(0.5, d, 2)
    for k in range(2, n + 1):
        x = quotient_generators(type_, n, k, params).x(k)
        target = LaurentOp.from_trunc(_qn_tensor(k - 1, d), 1)
        assert min(norm(x - target, 2), norm(x + target, 2)) <= params.tol
        # the symbol map kills x_k
        assert all(norm(y) == 0 for y in rho_k([x], k))


def test_d_case_y_generator():
    d, n = 6, 2
    params = QParams(0.5, d, 2)
    y = quotient_generators("D", n, n + 1, params).x(n + 2)
    target = LaurentOp.from_trunc(_qn_tensor(n, d), 1)
    assert min(norm(y - target, 2), norm(y + target, 2)) <= params.tol


@pytest.mark.parametrize("type_,n", [("B", 3), ("D", 3)])
def test_rho_restricts_to_previous_generators(type_, n):
    params = QParams(0.5, 6, 2)
    for k in range(2, n + 1):
        big = quotient_generators(type_, n, k, params)
        small = quotient_generators(type_, n, k - 1, params)
        for j in range(1, k):
            (r,) = rho_k([big.x(j)], k)
            assert norm(r - small.x(j)) == 0.0


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))
def test_rho_multiplicative(i, j, a, b):
    params = QParams(0.5, 5, 1)
    g = quotient_generators("B", 2, 3, params)
    x, y = g.v_last(i) + g.v_first(a), g.v_last(j).adj() + g.v_first(b)
    (lhs,) = rho_k([x @ y])
    rx, ry = rho_k([x, y])
    assert norm(lhs - rx @ ry) <= 1e-12


@given(st.sampled_from([("B", 1, 1), ("D", 2, 1), ("D", 2, 2), ("B", 2, 1), ("B", 2, 2)]),
       st.sampled_from([0.3, 0.5, 0.7]))
def test_eta_N_preserves_frt(node, q):
    type_, n, i = node
    params = QParams(q, 8, 3)
    rep = eta_N(build_elementary(type_, n, i, params))
    assert check_frt(rep, build_rmatrix(rep.N, q), params).passed
