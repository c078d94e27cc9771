"""Representations of C(SO_q(N)) on truncated Toeplitz tensor products.

Conventions
-----------
Indices run from 1 to N with ``i' = N + 1 - i``.  A ``RepMatrix`` stores the
images of the generators ``v^i_j`` as ``LaurentOp`` values; the circle factor
is the Laurent variable, and each Toeplitz tensor factor is one slot of the
underlying ``TruncOp`` terms.

Elementary representations are obtained from the SU_q(2) representation

    u11 -> sqrt(1 - q^(2N+2)) S,   u12 -> -q^(N+1),
    u21 -> q^N,                    u22 -> S* sqrt(1 - q^(2N+2))

by reading off the U_{q_i}(sl2) blocks of the vector representation.  A
spin-1/2 block on coordinates ``(a, b)`` with ``E_i e_a = sigma e_b`` receives
``[[u11, sigma u12], [sigma u21, u22]]``.  The spin-1 block of the short root
of type B is the symmetric square of the SU_{q^(1/2)}(2) matrix, cut out of
``C^2 (x) C^2`` by a column-normalized intertwiner.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .opcalc import (LaurentOp, TruncOp, block_norm, interior_indices, qn_op, schur_bound,
                     sqrt_shift_op)
from .scalars import QParams
from .weyl import WeylWord, is_reduced, omega_k


# ---------------------------------------------------------------------------
# R-matrix
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RMatrixData:
    N: int
    q: float
    iprime: np.ndarray  # iprime[i] = N + 1 - i, 1-based (slot 0 unused)
    rho: np.ndarray
    C: np.ndarray  # C[i, j] = C^i_j
    R: np.ndarray  # R[i, j, m, n] = R^{ij}_{mn}

    @property
    def n(self) -> int:
        return self.N // 2

    def nonzero(self) -> dict[tuple[int, int], list[tuple[int, int, float]]]:
        """Map ``(i, j) -> [(m, n, R^{ij}_{mn}), ...]`` over nonzero entries."""
        out: dict[tuple[int, int], list] = {}
        for i, j, m, n in zip(*np.nonzero(self.R)):
            out.setdefault((int(i), int(j)), []).append((int(m), int(n), float(self.R[i, j, m, n])))
        return out


def rho_vector(N: int) -> np.ndarray:
    rho = np.zeros(N + 1)
    for i in range(1, N + 1):
        ip = N + 1 - i
        if i < ip:
            rho[i] = N / 2 - i
            rho[ip] = -rho[i]
    return rho


def build_rmatrix(N: int, q: float) -> RMatrixData:
    if N < 3:
        raise ValueError("N must be >= 3")
    ip = np.array([0] + [N + 1 - i for i in range(1, N + 1)])
    rho = rho_vector(N)
    C = np.zeros((N + 1, N + 1))
    for i in range(1, N + 1):
        C[i, ip[i]] = q ** (-rho[i])
    R = np.zeros((N + 1,) * 4)
    dl = lambda a, b: 1.0 if a == b else 0.0
    for i, j, m, n in itertools.product(range(1, N + 1), repeat=4):
        if i > m:
            R[i, j, m, n] = (q - 1 / q) * (dl(j, m) * dl(i, n) - C[j, i] * C[m, n])
        else:
            R[i, j, m, n] = q ** (dl(i, j) - dl(i, ip[j])) * dl(i, m) * dl(j, n)
    return RMatrixData(N, q, ip, rho, C, R)


# ---------------------------------------------------------------------------
# RepMatrix
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RepMatrix:
    """Image of the fundamental matrix; ``entry(i, j)`` uses 1-based indices."""

    N: int
    entries: tuple[tuple[LaurentOp, ...], ...]
    label: str = ""

    def __post_init__(self):
        if len(self.entries) != self.N or any(len(r) != self.N for r in self.entries):
            raise ValueError("entries must form an N x N array")
        dims = {e.factor_dims for r in self.entries for e in r}
        if len(dims) != 1:
            raise ValueError(f"entries have inconsistent factor dims {dims}")

    @property
    def factor_dims(self) -> tuple[int, ...]:
        return self.entries[0][0].factor_dims

    def entry(self, i: int, j: int) -> LaurentOp:
        return self.entries[i - 1][j - 1]

    def map(self, f) -> "RepMatrix":
        return RepMatrix(self.N, tuple(tuple(f(e) for e in r) for r in self.entries), self.label)

    def with_entry(self, i: int, j: int, value: LaurentOp) -> "RepMatrix":
        rows = [list(r) for r in self.entries]
        rows[i - 1][j - 1] = value
        return RepMatrix(self.N, tuple(tuple(r) for r in rows), self.label + "*")


def _rep_from_dict(N: int, dims: tuple[int, ...], data: dict[tuple[int, int], LaurentOp], label: str) -> RepMatrix:
    zero = LaurentOp.zero(dims)
    rows = tuple(tuple(data.get((i, j), zero) for j in range(1, N + 1)) for i in range(1, N + 1))
    return RepMatrix(N, rows, label)


def trivial_rep(N: int) -> RepMatrix:
    """The counit: ``v^i_j -> delta_ij``."""
    return _rep_from_dict(N, (), {(i, i): LaurentOp.identity(()) for i in range(1, N + 1)}, "eps")


# ---------------------------------------------------------------------------
# FRT / unitarity / involution oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FRTReport:
    label: str
    N: int
    tol: float
    frt_max: float
    frt_argmax: tuple[int, int, int, int] | None
    unitarity_max: float
    involution_max: float
    involution_argmax: tuple[int, int] | None

    @property
    def passed(self) -> bool:
        return max(self.frt_max, self.unitarity_max, self.involution_max) <= self.tol

    def as_dict(self) -> dict:
        return {
            "label": self.label, "N": self.N, "tol": self.tol,
            "frt_max": self.frt_max, "frt_argmax": self.frt_argmax,
            "unitarity_max": self.unitarity_max, "involution_max": self.involution_max,
            "involution_argmax": self.involution_argmax, "passed": self.passed,
        }


class _Restricted:
    """Interior-restricted sparse blocks of a RepMatrix, per Laurent degree."""

    def __init__(self, rep: RepMatrix, margin: int):
        self.rep = rep
        idx = interior_indices(rep.factor_dims, margin) if rep.factor_dims else np.array([0])
        self.idx = idx
        self.left: dict = {}
        self.right: dict = {}
        self.prods: dict = {}

    def _blocks(self, op: LaurentOp, side: str) -> dict[int, sp.csr_matrix]:
        out = {}
        for deg, m in op.sparse_coeffs.items():
            out[deg] = (m[self.idx, :] if side == "L" else m[:, self.idx]).tocsr()
        return out

    def L(self, i, j, star=False):
        key = (i, j, star)
        if key not in self.left:
            e = self.rep.entry(i, j)
            self.left[key] = self._blocks(e.adj() if star else e, "L")
        return self.left[key]

    def Rt(self, i, j, star=False):
        key = (i, j, star)
        if key not in self.right:
            e = self.rep.entry(i, j)
            self.right[key] = self._blocks(e.adj() if star else e, "R")
        return self.right[key]

    def prod(self, a, b, c, e, star_left=False, star_right=False):
        """Interior block of ``V_ab V_ce`` (with optional adjoints), by degree."""
        key = (a, b, c, e, star_left, star_right)
        if key not in self.prods:
            out: dict[int, sp.csr_matrix] = {}
            for d1, A in self.L(a, b, star_left).items():
                for d2, B in self.Rt(c, e, star_right).items():
                    P = A @ B
                    out[d1 + d2] = out[d1 + d2] + P if d1 + d2 in out else P
            self.prods[key] = out
        return self.prods[key]

    def direct(self, i, j, star=False) -> dict[int, sp.csr_matrix]:
        return {d: m[:, self.idx] for d, m in self.L(i, j, star).items()}


def _accumulate(acc: dict, blocks: dict, c: float):
    for d, m in blocks.items():
        acc[d] = acc[d] + c * m if d in acc else c * m


def _defect_norm(acc: dict, tol: float) -> float:
    """Certified bound if below tol, otherwise an accurate sampled norm."""
    acc = {d: m for d, m in acc.items() if m.nnz and abs(m).max() > 0}
    if not acc:
        return 0.0
    bound = sum(schur_bound(m) for m in acc.values())
    if bound <= tol:
        return bound
    return block_norm(acc)


def check_frt(rep: RepMatrix, R: RMatrixData, params: QParams) -> FRTReport:
    """Interior-compressed norms of the FRT, unitarity and involution defects."""
    if rep.N != R.N:
        raise ValueError("representation and R-matrix have different N")
    N, tol = rep.N, params.tol
    margin = params.margin if rep.factor_dims else 0
    box = _Restricted(rep, margin)
    nz = R.nonzero()
    zero = {(i, j): rep.entry(i, j).is_zero() for i in range(1, N + 1) for j in range(1, N + 1)}

    frt_max, frt_arg = 0.0, None
    for i, j, s, t in itertools.product(range(1, N + 1), repeat=4):
        acc: dict = {}
        for k, l, c in nz.get((j, i), []):
            if not (zero[k, s] or zero[l, t]):
                _accumulate(acc, box.prod(k, s, l, t), c)
        for k, l in _rhs_pairs(R, s, t):
            c = R.R[l, k, s, t]
            if not (zero[i, k] or zero[j, l]):
                _accumulate(acc, box.prod(i, k, j, l), -c)
        r = _defect_norm(acc, tol)
        if r > frt_max:
            frt_max, frt_arg = r, (i, j, s, t)

    unit_max = 0.0
    for i, j in itertools.product(range(1, N + 1), repeat=2):
        for which in (0, 1):
            acc = {}
            for k in range(1, N + 1):
                if which == 0 and not (zero[i, k] or zero[j, k]):
                    _accumulate(acc, box.prod(i, k, j, k, star_right=True), 1.0)
                if which == 1 and not (zero[k, i] or zero[k, j]):
                    _accumulate(acc, box.prod(k, i, k, j, star_left=True), 1.0)
            if i == j:
                n_int = len(box.idx)
                _accumulate(acc, {0: sp.identity(n_int, format="csr")}, -1.0)
            unit_max = max(unit_max, _defect_norm(acc, tol))

    inv_max, inv_arg = 0.0, None
    for i, j in itertools.product(range(1, N + 1), repeat=2):
        ip, jp = N + 1 - i, N + 1 - j
        acc = {}
        if not zero[i, j]:
            _accumulate(acc, box.direct(i, j, star=True), 1.0)
        if not zero[ip, jp]:
            _accumulate(acc, box.direct(ip, jp), -R.q ** (R.rho[i] - R.rho[j]))
        r = _defect_norm(acc, tol)
        if r > inv_max:
            inv_max, inv_arg = r, (i, j)
    return FRTReport(rep.label, N, tol, frt_max, frt_arg, unit_max, inv_max, inv_arg)


@lru_cache(maxsize=None)
def _rhs_table(N: int, q: float) -> dict:
    R = build_rmatrix(N, q).R
    out: dict = {}
    for l, k, s, t in zip(*np.nonzero(R)):
        out.setdefault((int(s), int(t)), []).append((int(k), int(l)))
    return out


def _rhs_pairs(R: RMatrixData, s: int, t: int) -> list[tuple[int, int]]:
    return _rhs_table(R.N, R.q).get((s, t), [])


# ---------------------------------------------------------------------------
# Vector representation T_1
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VectorRep:
    """Matrices of E_i, F_i, K_i in the N-dimensional representation (1-based keys)."""

    type: str
    n: int
    q: float
    E: dict[int, np.ndarray]
    F: dict[int, np.ndarray]
    K: dict[int, np.ndarray]

    @property
    def N(self) -> int:
        return 2 * self.n + 1 if self.type == "B" else 2 * self.n

    def node_q(self, i: int) -> float:
        """Deformation parameter of the sl2 attached to node i."""
        return self.q ** 0.5 if (self.type == "B" and i == self.n) else self.q


def vector_rep(type_: str, n: int, q: float) -> VectorRep:
    """T_1 for U_{q^(1/2)}(so_{2n+1}) (type B) and U_q(so_{2n}) (type D).

    For type D the Cartan element K_i (i < n) is
    ``D_i^-1 D_{i+1} D_{2n-i}^-1 D_{2n-i+1}`` so that it matches the weights of
    E_i; here ``D_j`` multiplies coordinate j by q.
    """
    N = 2 * n + 1 if type_ == "B" else 2 * n

    def I(i, j):
        m = np.zeros((N, N))
        m[i - 1, j - 1] = 1.0
        return m

    def D(j, p=1.0):
        v = np.ones(N)
        v[j - 1] = q ** p
        return np.diag(v)

    inv = np.linalg.inv
    E, F, K = {}, {}, {}
    for i in range(1, n):
        if type_ == "B":
            K[i] = inv(D(i)) @ D(i + 1) @ inv(D(2 * n - i + 1)) @ D(2 * n - i + 2)
            E[i] = I(i + 1, i) - I(2 * n - i + 2, 2 * n - i + 1)
            F[i] = I(i, i + 1) - I(2 * n - i + 1, 2 * n - i + 2)
        else:
            K[i] = inv(D(i)) @ D(i + 1) @ inv(D(2 * n - i)) @ D(2 * n - i + 1)
            E[i] = I(i + 1, i) - I(2 * n - i + 1, 2 * n - i)
            F[i] = I(i, i + 1) - I(2 * n - i, 2 * n - i + 1)
    if type_ == "B":
        c = (q ** 0.5 + q ** -0.5) ** 0.5
        K[n] = inv(D(n)) @ D(n + 2)
        E[n] = c * (I(n + 1, n) - q ** 0.5 * I(n + 2, n + 1))
        F[n] = c * (I(n, n + 1) - q ** -0.5 * I(n + 1, n + 2))
    else:
        K[n] = inv(D(n - 1) @ D(n)) @ D(n + 1) @ D(n + 2)
        E[n] = -I(n + 2, n) + I(n + 1, n - 1)
        F[n] = -I(n, n + 2) + I(n - 1, n + 1)
    return VectorRep(type_, n, q, E, F, K)


# ---------------------------------------------------------------------------
# elementary representations
# ---------------------------------------------------------------------------

def su2_ops(q: float, d: int) -> dict[tuple[int, int], TruncOp]:
    """The SU_q(2) representation on one Toeplitz factor."""
    a = sqrt_shift_op(q, 2, 1, d)
    g = qn_op(1.0, q, d)
    return {(1, 1): a, (1, 2): g * (-q), (2, 1): g, (2, 2): a.adj()}


def _intertwiner(qq: float) -> np.ndarray:
    """Column-normalized U_qq(sl2) intertwiner from spin 1 into spin 1/2 (x) spin 1/2.

    Built by lowering the highest weight vector ``e_1 (x) e_1`` with the
    coproduct ``Delta(E) = E (x) K + 1 (x) E``; the F and K relations are
    asserted afterwards.
    """
    E = np.array([[0.0, 0.0], [1.0, 0.0]])
    F = E.T
    K = np.diag([1 / qq, qq])
    I2 = np.eye(2)
    dE = np.kron(E, K) + np.kron(I2, E)
    dF = np.kron(F, I2) + np.kron(np.linalg.inv(K), F)
    dK = np.kron(K, K)
    c = (qq + 1 / qq) ** 0.5
    E3 = c * np.array([[0, 0, 0], [1, 0, 0], [0, -qq, 0]])
    F3 = c * np.array([[0, 1, 0], [0, 0, -1 / qq], [0, 0, 0]])
    K3 = np.diag([qq ** -2, 1.0, qq ** 2])
    p0 = np.array([1.0, 0, 0, 0])
    p1 = dE @ p0 / E3[1, 0]
    p2 = dE @ p1 / E3[2, 1]
    P = np.column_stack([p0, p1, p2])
    for A, B in ((dE, E3), (dF, F3), (dK, K3)):
        if not np.allclose(A @ P, P @ B, atol=1e-12):
            raise RuntimeError("spin-1 intertwiner relations fail")
    return P / np.linalg.norm(P, axis=0)


def spin1_block(q: float, d: int) -> dict[tuple[int, int], TruncOp]:
    """3x3 block (0-based keys) for the short root of type B; ``q`` is the base parameter."""
    qq = q ** 0.5
    u = su2_ops(qq, d)
    P = _intertwiner(qq)
    pairs = [(1, 1), (1, 2), (2, 1), (2, 2)]
    M = {(x, y): u[pairs[x][0], pairs[y][0]] @ u[pairs[x][1], pairs[y][1]]
         for x in range(4) for y in range(4)}
    out = {}
    for a, b in itertools.product(range(3), repeat=2):
        acc = TruncOp((d,))
        for x, y in itertools.product(range(4), repeat=2):
            c = P[x, a] * P[y, b]
            if abs(c) > 1e-15:
                acc = acc + M[x, y] * c
        out[a, b] = acc
    return out


def _elementary_uncached(type_: str, n: int, i: int, q: float, d: int) -> RepMatrix:
    T = vector_rep(type_, n, q)
    N = T.N
    data: dict[tuple[int, int], TruncOp] = {}
    if type_ == "B" and i == n:
        for (a, b), op in spin1_block(q, d).items():
            data[n + a, n + b] = op
        used = {n, n + 1, n + 2}
    else:
        u = su2_ops(q, d)
        used = set()
        Ei = T.E[i]
        for col in range(1, N + 1):
            rows = np.flatnonzero(Ei[:, col - 1])
            if len(rows):
                r = int(rows[0]) + 1
                s = float(Ei[r - 1, col - 1])
                data[col, col] = u[1, 1]
                data[r, r] = u[2, 2]
                data[col, r] = u[1, 2] * s
                data[r, col] = u[2, 1] * s
                used |= {col, r}
    for a in range(1, N + 1):
        if a not in used:
            data[a, a] = TruncOp.identity((d,))
    lifted = {k: LaurentOp.from_trunc(v) for k, v in data.items() if not v.is_zero()}
    return _rep_from_dict(N, (d,), lifted, f"pi_s{i}")


@lru_cache(maxsize=None)
def _verified(type_: str, n: int, i: int, q: float) -> FRTReport:
    params = QParams(q, 10, 4)
    rep = _elementary_uncached(type_, n, i, q, params.d)
    R = build_rmatrix(rep.N, q)
    # defects are sums with R coefficients up to q^-(N-2); roundoff scales with them
    scale = max(1.0, float(np.abs(R.R).max()))
    return check_frt(rep, R, QParams(q, params.d, params.margin, params.tol * scale))


def _verify_node(type_: str, n: int, i: int, q: float) -> None:
    if type_ not in ("B", "D") or n < 1 or (type_ == "D" and n < 2):
        raise ValueError(f"unsupported group {type_}_{n}")
    if not 1 <= i <= n:
        raise ValueError(f"node {i} outside 1..{n}")
    report = _verified(type_, n, i, q)
    if not report.passed:
        raise RuntimeError(f"elementary representation {type_}{n} s{i} fails the FRT oracle: {report}")


@lru_cache(maxsize=256)
def _elementary_cached(type_: str, n: int, i: int, q: float, d: int) -> RepMatrix:
    _verify_node(type_, n, i, q)
    return _elementary_uncached(type_, n, i, q, d)


def build_elementary(type_: str, n: int, i: int, params: QParams) -> RepMatrix:
    """``pi_{s_i}``; construction is gated by the FRT oracle at a small cut-off."""
    return _elementary_cached(type_, n, i, params.q, params.d)


def index_raise(type_: str, n: int, i: int) -> int:
    """Largest amount by which one entry of ``pi_{s_i}`` raises a basis index."""
    return 2 if (type_ == "B" and i == n) else 1


# ---------------------------------------------------------------------------
# one-dimensional representations, convolution, pi_{t,w}
# ---------------------------------------------------------------------------

def build_tau(N: int, t_degrees: Sequence[int]) -> RepMatrix:
    """Diagonal character; all circle variables share one Laurent variable.

    ``t_degrees[i-1]`` is the power of the single circle variable standing in
    for ``t_i``.  Entry (i, i) has degree ``-m_i`` for ``i <= n`` and
    ``+m_{i'}`` for ``i > n`` (degree 0 at the middle for odd N).
    """
    n = N // 2
    if len(t_degrees) != n:
        raise ValueError(f"expected {n} degrees, got {len(t_degrees)}")
    data = {}
    for i in range(1, N + 1):
        ip = N + 1 - i
        if i <= n:
            deg = -int(t_degrees[i - 1])
        elif ip <= n:
            deg = int(t_degrees[ip - 1])
        else:
            deg = 0
        data[i, i] = LaurentOp.scalar(1.0, deg)
    return _rep_from_dict(N, (), data, "tau")


def convolve(rep1: RepMatrix, rep2: RepMatrix) -> RepMatrix:
    """``(rep1 (x) rep2) o Delta``."""
    if rep1.N != rep2.N:
        raise ValueError("cannot convolve representations of different N")
    N = rep1.N
    dims = rep1.factor_dims + rep2.factor_dims
    data = {}
    for i, j in itertools.product(range(1, N + 1), repeat=2):
        acc = LaurentOp.zero(dims)
        for k in range(1, N + 1):
            a, b = rep1.entry(i, k), rep2.entry(k, j)
            if not (a.is_zero() or b.is_zero()):
                acc = acc + a.kron(b)
        data[i, j] = acc
    label = "*".join(x for x in (rep1.label, rep2.label) if x)
    return _rep_from_dict(N, dims, data, label)


def build_pi(type_: str, n: int, word: WeylWord, t_degrees: Sequence[int], params: QParams,
             dims: Sequence[int] | None = None) -> RepMatrix:
    """``tau_t * pi_{s_{i_1}} * ... * pi_{s_{i_l}}``.

    ``dims`` optionally gives one cut-off dimension per letter; by default
    every factor uses ``params.d``.
    """
    if (word.type, word.n) != (type_, n):
        raise ValueError("word belongs to a different Weyl group")
    if not is_reduced(word):
        raise ValueError(f"word {word} is not reduced")
    if dims is None:
        dims = [params.d] * len(word)
    if len(dims) != len(word):
        raise ValueError("need one cut-off dimension per letter")
    N = word.N
    rep = build_tau(N, t_degrees)
    for a, d in zip(word.letters, dims):
        _verify_node(type_, n, a, params.q)
        rep = convolve(rep, _elementary_cached(type_, n, a, params.q, int(d)))
    return RepMatrix(N, rep.entries, f"pi[{word}]")


def quotient_t_degrees(n: int) -> tuple[int, ...]:
    """Only t_1 reaches the last row, so the circle variable is attached there."""
    return (1,) + (0,) * (n - 1)


def pi_omega(type_: str, n: int, k: int, params: QParams, dims: Sequence[int] | None = None) -> RepMatrix:
    """``pi_{t, omega_k}`` with the single circle variable attached to t_1."""
    return build_pi(type_, n, omega_k(type_, n, k), quotient_t_degrees(n), params, dims)


# ---------------------------------------------------------------------------
# restriction and quotient maps
# ---------------------------------------------------------------------------

def eta_N(rep: RepMatrix) -> RepMatrix:
    """Compose a representation of SO_q(N-2) with the restriction map to SO_q(N)."""
    M = rep.N + 2
    dims = rep.factor_dims
    data = {(1, 1): LaurentOp.identity(dims), (M, M): LaurentOp.identity(dims)}
    for i, j in itertools.product(range(2, M), repeat=2):
        data[i, j] = rep.entry(i - 1, j - 1)
    return _rep_from_dict(M, dims, data, f"eta({rep.label})")


def rho_k(gens: Sequence[LaurentOp], k: int | None = None) -> list[LaurentOp]:
    """Apply the symbol map to the last Toeplitz factor of every generator."""
    out = []
    for g in gens:
        if not g.factor_dims:
            raise ValueError("generator has no Toeplitz factor to apply the symbol map to")
        if k is not None and len(g.factor_dims) != k - 1:
            raise ValueError(f"expected {k - 1} Toeplitz factors, found {len(g.factor_dims)}")
        out.append(g.sigma_last())
    return out


@dataclass(frozen=True, eq=False)
class QuotientGenerators:
    """First and last row of ``pi_{omega_k}``; ``x(j)`` is the image of ``v^N_{N+1-j}``."""

    type: str
    n: int
    k: int
    word: WeylWord
    last_row: tuple[LaurentOp, ...]
    first_row: tuple[LaurentOp, ...]
    q: float

    @property
    def N(self) -> int:
        return len(self.last_row)

    def x(self, j: int) -> LaurentOp:
        return self.last_row[self.N - j]

    def v_last(self, m: int) -> LaurentOp:
        return self.last_row[m - 1]

    def v_first(self, m: int) -> LaurentOp:
        return self.first_row[m - 1]

    @property
    def generators(self) -> list[LaurentOp]:
        """``x_1, ..., x_N`` in order."""
        return [self.x(j) for j in range(1, self.N + 1)]

    def nonzero_indices(self) -> list[int]:
        return [j for j in range(1, self.N + 1) if not self.x(j).is_zero()]


def generators_from_rep(rep: RepMatrix, type_: str, n: int, k: int, word: WeylWord, q: float) -> QuotientGenerators:
    N = rep.N
    rho = rho_vector(N)
    last = tuple(rep.entry(N, m) for m in range(1, N + 1))
    # v^1_i = q^(rho_1 - rho_i) (v^N_{N+1-i})^*
    first = tuple(last[N - i].adj() * q ** (rho[1] - rho[i]) for i in range(1, N + 1))
    return QuotientGenerators(type_, n, k, word, last, first, q)


def quotient_generators(type_: str, n: int, k: int, params: QParams,
                        dims: Sequence[int] | None = None) -> QuotientGenerators:
    rep = pi_omega(type_, n, k, params, dims)
    return generators_from_rep(rep, type_, n, k, omega_k(type_, n, k), params.q)


# ---------------------------------------------------------------------------
# vanishing patterns of the irreducible quotient representations
# ---------------------------------------------------------------------------

def k_range(type_: str, n: int) -> range:
    """Admissible ``k`` for ``omega_k``: ``1..2n`` (B) or ``1..2n-1`` (D)."""
    return range(1, 2 * n + 1) if type_ == "B" else range(1, 2 * n)


def vanishing_bound(type_: str, n: int, k: int) -> int:
    """Largest ``j`` with ``v^N_j`` killed by the ``k``-th representation."""
    N = 2 * n + 1 if type_ == "B" else 2 * n
    if k == 1:
        return N - 1
    return N - k if k <= n else N - k - 1


@dataclass
class VanishingReport:
    type: str
    n: int
    k: int
    word: str
    zero_bound: int
    zeros_exact: bool
    eigen_index: int
    eigen_sign: int
    eigen_residual: float

    @property
    def passed(self) -> bool:
        return self.zeros_exact and self.eigen_residual == 0.0

    def as_dict(self) -> dict:
        return {"type": self.type, "n": self.n, "k": self.k, "word": self.word, "zero_bound": self.zero_bound,
                "zeros_exact": self.zeros_exact, "eigen_index": self.eigen_index, "eigen_sign": self.eigen_sign,
                "eigen_residual": self.eigen_residual, "passed": self.passed}


def vanishing_pattern(type_: str, n: int, k: int, params: QParams, samples: int = 8) -> VanishingReport:
    """Exact zeros ``v^N_j = 0`` for ``j <= bound`` and ``v^N_(bound+1) e_0 = sign t e_0`` on the circle.

    The sign is reported rather than fixed: the family over ``t`` is invariant
    under ``t -> -t``.
    """
    if k not in k_range(type_, n):
        raise ValueError(f"k={k} outside the range for {type_}{n}")
    gens = quotient_generators(type_, n, k, params)
    bound = vanishing_bound(type_, n, k)
    zeros = all(gens.v_last(j).is_zero() for j in range(1, bound + 1))
    v = gens.v_last(bound + 1)
    ts = np.exp(2j * np.pi * (np.arange(samples) + 0.5) / samples)
    col0 = v.sparse_at(ts[0])[:, 0].toarray().ravel()
    sign = int(np.sign(np.real(col0[0] / ts[0]))) or 1
    resid = 0.0
    for t in ts:
        col = v.sparse_at(t)[:, 0].toarray().ravel()
        target = np.zeros_like(col)
        target[0] = sign * t
        resid = max(resid, float(np.max(np.abs(col - target))))
    return VanishingReport(type_, n, k, str(gens.word), bound, zeros, bound + 1, sign, resid)
