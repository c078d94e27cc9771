"""Integer witnesses for the K-theory generators of the quotient spaces.

Unitaries over C(T) are detected by the winding number of their determinant.
Index-map computations lift a unitary to an isometry

    Y = 1_{1}(Yt* Yt) Yt + 1 - 1_{1}(Yt* Yt)

and read off the traces of the defect projections ``1 - Y*Y`` and
``1 - YY*`` on the interior of the truncated space.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .opcalc import LaurentOp, TruncOp, interior_indices, matrix_unit, norm, qn_op, shift_op
from .repbuilder import quotient_generators, rho_k
from .scalars import QParams

K_CLASS_NOTICE = (
    "the K0 class of the defect projection is reported as integer data only; "
    "its triviality in K0 is not decided numerically"
)


def _p(d: int) -> TruncOp:
    return matrix_unit(0, 0, d)


def _tensor(ops: list[TruncOp]) -> TruncOp:
    out = TruncOp.identity(())
    for op in ops:
        out = out.kron(op)
    return out


def build_uk(k: int, params: QParams) -> LaurentOp:
    """``t (x) p^(k-1) + 1 - 1 (x) p^(k-1)`` on ``k - 1`` Toeplitz factors."""
    if k < 1:
        raise ValueError("k must be >= 1")
    d = params.d
    dims = (d,) * (k - 1)
    P = LaurentOp.from_trunc(_tensor([_p(d)] * (k - 1)))
    return P.shift_degree(1) + LaurentOp.identity(dims) - P


# ---------------------------------------------------------------------------
# winding numbers
# ---------------------------------------------------------------------------

def _det_phase(m) -> tuple[float, float]:
    """``(log|det|, arg det)`` via sparse LU."""
    if sp.issparse(m):
        m = sp.csc_matrix(m, dtype=complex)
        if m.shape[0] == 0:
            return 0.0, 0.0
        try:
            lu = spla.splu(m, permc_spec="NATURAL", diag_pivot_thresh=0.0)
        except RuntimeError:  # exactly singular
            return -np.inf, 0.0
        diag = lu.U.diagonal()
        sign = _perm_sign(lu.perm_r) * _perm_sign(lu.perm_c)
    else:
        m = np.asarray(m, dtype=complex)
        sign_c, logabs = np.linalg.slogdet(m)
        return float(logabs), float(np.angle(sign_c))
    if np.any(diag == 0):
        return -np.inf, 0.0
    return float(np.sum(np.log(np.abs(diag)))), float(np.angle(sign * np.prod(diag / np.abs(diag))))


def _perm_sign(perm: np.ndarray) -> int:
    perm = np.asarray(perm)
    seen = np.zeros(len(perm), dtype=bool)
    sign = 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def winding(op: LaurentOp | Callable[[complex], object], samples: int = 64, min_abs_det: float = 1e-8,
            max_samples: int = 4096) -> int:
    """Winding number of ``t -> det op(t)`` around the unit circle.

    Samples are doubled until the rounded value agrees on two consecutive
    refinements.
    """
    f = op.sparse_at if isinstance(op, LaurentOp) else op

    def count(M: int) -> int:
        ts = np.exp(2j * np.pi * np.arange(M + 1) / M)
        phases = []
        for t in ts:
            logabs, ph = _det_phase(f(t))
            if logabs < np.log(min_abs_det):
                raise ValueError(f"determinant nearly vanishes at t={t:.4f}; operand is not unitary")
            phases.append(ph)
        inc = np.angle(np.exp(1j * np.diff(phases)))
        return int(round(inc.sum() / (2 * np.pi)))

    M = samples
    history = [count(M)]
    while M < max_samples:
        M *= 2
        history.append(count(M))
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            break
    return history[-1]


# ---------------------------------------------------------------------------
# isometry lifts
# ---------------------------------------------------------------------------

def _diag_indicator(op: LaurentOp, tol: float, edge: int = 2) -> TruncOp:
    """``1_{1}`` of a diagonal degree-zero operator, as a sum of Kronecker terms.

    The last ``edge`` levels of every factor are truncation artifacts, so the
    mask there copies the last reliable level; that tail value is also the
    symbol of the factor.
    """
    if set(op.coeffs) - {0}:
        raise ValueError("operand of the spectral indicator must have Laurent degree 0 only")
    dims = op.factor_dims
    if 0 not in op.coeffs:
        return TruncOp(dims)
    m = op.coeffs[0].sparse
    off = m - sp.diags(m.diagonal())
    if off.nnz and abs(off).max() > tol:
        raise ValueError("spectral indicator needs an operator diagonal in the standard basis")
    mask = np.abs(m.diagonal() - 1.0) <= tol
    if not dims:
        return TruncOp.scalar(float(mask[0]), ())
    shaped = mask.reshape(dims)
    for axis, d in enumerate(dims):
        idx = np.minimum(np.arange(d), max(d - edge - 1, 0))
        shaped = np.take(shaped, idx, axis=axis)
    mask = shaped.ravel()
    # factor the mask as a Kronecker product of 1-d masks when possible
    marginals = [shaped.any(axis=tuple(j for j in range(len(dims)) if j != i)) for i in range(len(dims))]
    prod = marginals[0]
    for mk in marginals[1:]:
        prod = np.kron(prod, mk).astype(bool)
    if np.array_equal(prod, mask):
        ops = [TruncOp.from_factor(np.diag(mk.astype(float)), float(mk[-1])) for mk in marginals]
        return _tensor(ops)
    terms = TruncOp(dims)
    for flat in np.flatnonzero(mask):
        idx = np.unravel_index(flat, dims)
        terms = terms + _tensor([matrix_unit(int(i), int(i), d) for i, d in zip(idx, dims)])
    return terms


def lift_isometry(Yt: LaurentOp, tol: float = 1e-12) -> LaurentOp:
    """``1_{1}(Yt* Yt) Yt + 1 - 1_{1}(Yt* Yt)``."""
    P = LaurentOp.from_trunc(_diag_indicator(Yt.adj() @ Yt, tol))
    one = LaurentOp.identity(Yt.factor_dims)
    return P @ Yt + one - P


@dataclass
class KWitnessReport:
    case: str
    n: int
    k: int
    d: int
    winding: int
    defect_minus: float
    defect_plus: float
    defect_projection: TruncOp | None = field(repr=False, default=None)
    expected_projection_residual: float = 0.0
    projection_residual: float = 0.0
    rho_residual: float = 0.0
    ideal_membership: bool | None = None
    notices: list[str] = field(default_factory=list)

    @property
    def defect_difference(self) -> float:
        """``tr(1 - YY*) - tr(1 - Y*Y)``, the size of the boundary class."""
        return self.defect_plus - self.defect_minus

    def as_dict(self) -> dict:
        return {
            "case": self.case, "n": self.n, "k": self.k, "d": self.d,
            "winding": self.winding,
            "defect_minus": round(self.defect_minus, 12), "defect_plus": round(self.defect_plus, 12),
            "defect_difference": round(self.defect_difference, 12),
            "expected_projection_residual": self.expected_projection_residual,
            "projection_residual": self.projection_residual,
            "rho_residual": self.rho_residual,
            "ideal_membership": self.ideal_membership,
            "notices": list(self.notices),
        }


def _interior_trace(op: LaurentOp, margin: int) -> float:
    if set(op.coeffs) - {0}:
        raise ValueError("defect operator has nonzero Laurent degree")
    if not op.coeffs:
        return 0.0
    m = op.coeffs[0].sparse
    if op.factor_dims:
        idx = interior_indices(op.factor_dims, margin)
        m = m[idx][:, idx]
    return float(np.real(m.diagonal().sum()))


def _projection_residual(P: LaurentOp, margin: int) -> float:
    return max(norm(P @ P - P, margin), norm(P - P.adj(), margin))


def _qN(d: int, q: float) -> TruncOp:
    return qn_op(1.0, q, d)


def _witness_operator(case: str, n: int, k: int, params: QParams) -> tuple[LaurentOp, TruncOp, int]:
    """The operator to lift, the expected ``1 - YY*`` and the rank of the unitary it lifts."""
    d, q = params.d, params.q
    S_star = shift_op(d).adj()
    if case == "A":
        if not 1 < k <= n:
            raise ValueError("case A needs 1 < k <= n")
        ops = [_qN(d, q)] * (k - 2) + [S_star]
        expected = _tensor([_p(d)] * (k - 1))
        rank = k - 1
    elif case == "B":
        k = n + 1
        ops = [_qN(d, q)] * (n - 1) + [S_star @ S_star]
        expected = _tensor([_p(d)] * (n - 1) + [_p(d) + matrix_unit(1, 1, d)])
        rank = n
    elif case == "D":
        k = n + 1
        ops = [_qN(d, q)] * (n - 1) + [S_star]
        expected = _tensor([_p(d)] * n)
        rank = n
    else:
        raise ValueError(f"unknown case {case!r}")
    return LaurentOp.from_trunc(_tensor(ops), 1), expected, rank


def boundary_witness(case: str, n: int, k: int | None, params: QParams) -> KWitnessReport:
    """Lift, defects and (case D) ideal membership for one boundary computation."""
    if case == "A" and k is None:
        raise ValueError("case A needs k")
    k_eff = k if case == "A" else n + 1
    Yt, expected, rank = _witness_operator(case, n, k_eff, params)
    Y = lift_isometry(Yt)
    m = params.margin
    dims = Y.factor_dims
    one = LaurentOp.identity(dims)
    minus = one - Y.adj() @ Y
    plus = one - Y @ Y.adj()
    rep = KWitnessReport(case, n, k_eff, params.d, winding(build_uk(rank, params.with_dims(min(params.d, 8), 0))),
                         _interior_trace(minus, m), _interior_trace(plus, m))
    rep.defect_projection = plus.coeffs.get(0, TruncOp(dims))
    rep.expected_projection_residual = norm(plus - LaurentOp.from_trunc(expected), m)
    rep.projection_residual = max(_projection_residual(plus, m), _projection_residual(minus, m))
    (rho_Y,) = rho_k([Y])
    rep.rho_residual = norm(rho_Y - build_uk(rank, params), m)
    if case == "B":
        rep.notices.append("defect = 2 x minimal projection: the computable shadow of the Z/2 torsion generator")
    if case == "D":
        rep.ideal_membership = _ideal_membership(n, params)
        rep.notices.append(K_CLASS_NOTICE)
    return rep


def _ideal_membership(n: int, params: QParams) -> bool:
    """``y_{n+2} 1_{1}(y*_{n+2} y_{n+2}) = t (x) p^n`` and its square gives the defect."""
    gens = quotient_generators("D", n, n + 1, params)
    y = gens.x(n + 2)
    if y.is_zero():
        return False
    d = params.d
    target = LaurentOp.from_trunc(_tensor([_p(d)] * n), 1)
    # y is t (x) (q^N)^n up to a sign fixed by the representation
    X = y @ LaurentOp.from_trunc(_diag_indicator(y.adj() @ y, params.tol))
    sign = np.sign(np.real(X.coeffs[1].sparse[0, 0])) if 1 in X.coeffs else 1.0
    r1 = norm(X * sign - target, params.margin)
    r2 = norm(X.adj() @ X - LaurentOp.from_trunc(_tensor([_p(d)] * n)), params.margin)
    return max(r1, r2) <= params.tol
