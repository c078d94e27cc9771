import itertools

import pytest
from hypothesis import given, strategies as st

from soqlab.branching import (BranchQuery, dominant_weights, gamma_bounds, multiplicity, multiplicity_bruteforce,
                              trivial_multiplicity)


def test_examples():
    assert multiplicity(BranchQuery(5, (1, 0), (0,))) == 2
    assert multiplicity(BranchQuery(7, (1, 1, 1), (0, 0))) == 0
    assert multiplicity(BranchQuery(7, (2, 1, 0), (0, 0))) == 2


def test_second_oracle_frozen():
    # value from the independent enumeration with reversed loop nesting
    qy = BranchQuery(7, (2, 1, 0), (1, 0))
    assert multiplicity_bruteforce(qy) == 4
    assert multiplicity(qy) == 4


def test_trivial_closed_form():
    assert trivial_multiplicity((3, 1, 0, 0), 9) == 3
    for N in range(4, 10):
        assert trivial_multiplicity((0,) * (N // 2), N) == 1
    # alpha_1 - |alpha_2| + 1 for N = 4
    assert trivial_multiplicity((2, -1), 4) == 2


@pytest.mark.parametrize("N", range(4, 10))
def test_exhaustive_trivial(N):
    for alpha in dominant_weights(N, 6):
        qy = BranchQuery(N, alpha, (0,) * (N // 2 - 1))
        assert multiplicity(qy) == trivial_multiplicity(alpha, N) == multiplicity_bruteforce(qy)


def test_classical_option_differs_only_for_odd():
    qy = BranchQuery(5, (2, 1), (1,))
    assert multiplicity(qy, classical=True) == multiplicity_bruteforce(qy, classical=True)
    assert multiplicity(qy, classical=True) > multiplicity(qy)
    qy = BranchQuery(6, (2, 1, 1), (1, 1))
    assert multiplicity(qy, classical=True) == multiplicity(qy)


def test_invalid_queries():
    for bad in [(5, (0, 1), (0,)), (6, (1, 2, 0), (0, 0)), (7, (1, 0), (0, 0)), (3, (1,), ())]:
        with pytest.raises(ValueError):
            BranchQuery(*bad)


@st.composite
def dominant(draw, N, top=6):
    n = N // 2
    vals = sorted(draw(st.lists(st.integers(0, top), min_size=n, max_size=n)), reverse=True)
    if N % 2 == 0 and vals[-1] and draw(st.booleans()):
        vals[-1] = -vals[-1]
    return tuple(vals)


@st.composite
def queries(draw):
    N = draw(st.integers(4, 9))
    return BranchQuery(N, draw(dominant(N)), draw(dominant(N - 2)))


@given(queries(), st.booleans())
def test_oracles_agree(qy, classical):
    assert multiplicity(qy, classical) == multiplicity_bruteforce(qy, classical)


@given(queries())
def test_box_bounds_consistent(qy):
    for lo, hi in gamma_bounds(qy):
        assert lo <= hi or multiplicity(qy) == 0


def test_dominant_weights_complete():
    for N in (5, 6):
        got = set(dominant_weights(N, 3))
        n = N // 2
        brute = set()
        for w in itertools.product(range(-3, 4), repeat=n):
            try:
                BranchQuery(N, w, (0,) * (n - 1))
            except ValueError:
                continue
            if w[0] <= 3:
                brute.add(w)
        assert got == brute
