import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.stats import unitary_group

from soqlab.ktheory import K_CLASS_NOTICE, boundary_witness, build_uk, lift_isometry, winding
from soqlab.opcalc import LaurentOp, TruncOp, matrix_unit, norm, shift_op
from soqlab.scalars import QParams

P8 = QParams(0.5, 8, 3)


def test_u1_is_t():
    u = build_uk(1, P8)
    assert u.factor_dims == () and u.degrees == [1]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_winding_uk(k):
    assert winding(build_uk(k, QParams(0.5, 6, 0))) == 1


@given(st.integers(-3, 3))
def test_winding_of_powers(m):
    assert winding(LaurentOp.scalar(1.0, m)) == m


@given(st.integers(0, 10_000), st.integers(2, 6))
def test_constant_unitary_has_winding_zero(seed, dim):
    U = unitary_group.rvs(dim, random_state=seed)
    assert winding(lambda t: U) == 0


@given(st.integers(0, 10_000), st.integers(1, 3))
def test_winding_conjugation_invariant(seed, k):
    u = build_uk(k, QParams(0.5, 4, 0))
    U = unitary_group.rvs(max(u.dim, 2), random_state=seed) if u.dim > 1 else np.eye(1)

    def conj(t):
        return U @ u.sparse_at(t).toarray() @ U.conj().T
    assert winding(conj) == 1


def test_winding_rejects_singular():
    p = LaurentOp.from_trunc(matrix_unit(0, 0, 4), 1)
    with pytest.raises(ValueError):
        winding(p)


def test_lift_of_isometry_is_unchanged():
    d = 8
    Y = LaurentOp.from_trunc(shift_op(d).adj(), 1)
    assert norm(lift_isometry(Y) - Y, 2) == 0.0


def test_case_a_defects():
    rep = boundary_witness("A", 3, 3, P8)
    assert rep.defect_minus == 0 and rep.defect_plus == 1
    assert rep.defect_difference == 1
    assert rep.expected_projection_residual == 0 and rep.projection_residual == 0 and rep.rho_residual == 0


def test_case_b_defect_entrywise():
    rep = boundary_witness("B", 2, None, P8)
    assert rep.defect_difference == 2
    d = P8.d
    expected = matrix_unit(0, 0, d).kron(matrix_unit(0, 0, d) + matrix_unit(1, 1, d))
    idx = np.arange(d * d).reshape(d, d)[: d - P8.margin, : d - P8.margin].ravel()
    got = rep.defect_projection.matrix[np.ix_(idx, idx)]
    assert np.array_equal(got, expected.matrix[np.ix_(idx, idx)])
    assert rep.notices


@pytest.mark.parametrize("n", [2, 3])
def test_case_d(n):
    rep = boundary_witness("D", n, None, QParams(0.5, 6, 2))
    assert rep.defect_difference == 1
    assert rep.ideal_membership is True
    assert K_CLASS_NOTICE in rep.notices


@pytest.mark.parametrize("case,n,k", [("A", 2, 2), ("A", 3, 2), ("B", 2, None), ("D", 2, None)])
def test_stable_under_truncation(case, n, k):
    small = boundary_witness(case, n, k, QParams(0.5, 8, 3)).as_dict()
    big = boundary_witness(case, n, k, QParams(0.5, 12, 4)).as_dict()
    for key in ("winding", "defect_minus", "defect_plus", "defect_difference", "ideal_membership"):
        assert small[key] == big[key]


@given(st.sampled_from([0.3, 0.5, 0.7]))
def test_defects_independent_of_q(q):
    assert boundary_witness("B", 2, None, QParams(q, 8, 3)).defect_difference == 2


def test_invalid_cases():
    with pytest.raises(ValueError):
        boundary_witness("A", 2, None, P8)
    with pytest.raises(ValueError):
        boundary_witness("A", 2, 3, P8)
    with pytest.raises(ValueError):
        boundary_witness("C", 2, None, P8)
    with pytest.raises(ValueError):
        build_uk(0, P8)
