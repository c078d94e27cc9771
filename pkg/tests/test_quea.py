import numpy as np
import pytest
from hypothesis import given, strategies as st

from soqlab.branching import trivial_multiplicity
from soqlab.quea import (FreePoly, HighestWeight, PolyEvaluator, QGen, act, build_hw_vectors, build_u_lambda,
                         letters_abcd, linear_independence, u_coefficients, verify_hw)


@pytest.mark.parametrize("N", [5, 6, 7, 8, 9])
def test_letter_actions(N):
    q = 0.5
    type_, n = ("B" if N % 2 else "D"), N // 2
    L = letters_abcd(N)
    a, b, c, d = (FreePoly.letter(*L[x]) for x in "abcd")
    assert act(QGen("E", 1), a, type_, n, q).close_to(c * -1.0)
    assert act(QGen("K", 1), c, type_, n, q).close_to(c * q)
    for i in range(3, n + 1):
        for x in (a, b):
            # for D_3 node 3 is the second spin node, so K_3 scales a and b by q
            expected = q if (N == 6 and i == 3) else 1.0
            assert act(QGen("K", i), x, type_, n, q).close_to(x * expected)


def test_u_lambda_small():
    assert build_u_lambda(0, 0.5, 7).close_to(FreePoly.unit())
    # frozen from the n = 1 ladder coefficients: A_1 = -q^-2
    assert u_coefficients(1, 0.5)[1] == pytest.approx(-4.0)
    L = letters_abcd(7)
    a, b, c, d = (FreePoly.letter(*L[x]) for x in "abcd")
    assert build_u_lambda(1, 0.5, 7).close_to(b * c + a * d * -4.0)


@pytest.mark.parametrize("N", [6, 7])
@pytest.mark.parametrize("lam", [1, 2, 3])
def test_u_lambda_annihilated(N, lam):
    q = 0.5
    ev = PolyEvaluator(N, q, max_len=2 * lam, interior=3)
    u = build_u_lambda(lam, q, N)
    Eu = act(QGen("E", 1), u, "B" if N % 2 else "D", N // 2, q)
    assert ev.norm(Eu) <= 1e-10 * ev.norm(u)


def test_hw_vector_examples():
    L = letters_abcd(7)
    c, d = FreePoly.letter(*L["c"]), FreePoly.letter(*L["d"])
    xs = build_hw_vectors(1, 0, 7, 0.5)
    assert len(xs) == 2 and xs[0].close_to(d) and xs[1].close_to(c)
    xs = build_hw_vectors(2, -1, 4, 0.5)
    assert len(xs) == 2
    ev = PolyEvaluator(4, 0.5, max_len=3, interior=3)
    assert linear_independence(xs, ev) == 2
    assert linear_independence(xs + [xs[0]], ev) == 2


def test_d_is_lowest_case():
    hw = HighestWeight(7, (1, 0))
    ev = PolyEvaluator(7, 0.5, max_len=1, interior=3)
    L = letters_abcd(7)
    rep = verify_hw(FreePoly.letter(*L["d"]), hw, ev, 1e-10)
    assert hw.r()[0] == 1 and rep.passed
    unit = verify_hw(FreePoly.unit(), HighestWeight(7, (0, 0)), ev, 1e-10)
    assert max(unit.e_residuals + unit.k_residuals) == 0.0


@pytest.mark.parametrize("N", [4, 5, 6, 7])
def test_hw_families_and_counts(N):
    q = 0.5
    ws = [(l1, l2) for l1 in range(4) for l2 in (range(-l1, l1 + 1) if N == 4 else range(l1 + 1))]
    need = max((l1 + abs(l2) if N == 4 else (l1 + 3 * l2 if N == 5 else l1 + l2)) for l1, l2 in ws)
    ev = PolyEvaluator(N, q, max_len=need, interior=3)
    for l1, l2 in ws:
        hw = HighestWeight(N, (l1, l2))
        xs = build_hw_vectors(l1, l2, N, q)
        assert len(xs) == hw.count
        assert all(verify_hw(x, hw, ev, 1e-10).passed for x in xs)
        rank = linear_independence(xs, ev)
        assert rank == hw.count == trivial_multiplicity((l1, l2) + (0,) * (N // 2 - 2), N)


def test_wrong_weight_fails():
    ev = PolyEvaluator(7, 0.5, max_len=2, interior=3)
    xs = build_hw_vectors(2, 0, 7, 0.5)
    assert not verify_hw(xs[0], HighestWeight(7, (1, 0)), ev, 1e-10).passed


def test_invalid_weights():
    with pytest.raises(ValueError):
        HighestWeight(7, (1, 2))
    with pytest.raises(ValueError):
        HighestWeight(4, (1, -2))
    with pytest.raises(ValueError):
        QGen("X", 1)


polys = st.lists(st.tuples(st.integers(1, 5), st.integers(1, 5)), min_size=1, max_size=3)


@given(polys, polys, st.sampled_from(["E", "F", "K"]), st.integers(1, 2))
def test_action_is_linear(w1, w2, kind, i):
    q = 0.5
    x, y = FreePoly.word(w1), FreePoly.word(w2, 2.5)
    g = QGen(kind, i)
    lhs = act(g, x + y, "B", 2, q)
    rhs = act(g, x, "B", 2, q) + act(g, y, "B", 2, q)
    assert lhs.close_to(rhs, 1e-9)


@given(polys, st.integers(1, 2))
def test_k_is_multiplicative(w, i):
    # K_i is a character on words: K(xy) = K(x) K(y)
    q = 0.5
    x = FreePoly.word(w)
    kx = act(QGen("K", i), x, "B", 2, q)
    (coef,) = kx.terms.values() if kx.terms else (0.0,)
    prod = 1.0
    for letter in w:
        (c,) = act(QGen("K", i), FreePoly.letter(*letter), "B", 2, q).terms.values()
        prod *= c
    assert np.isclose(coef, prod)
