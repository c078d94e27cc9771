"""Truncated operator calculus for C(T) (x) T^{(x)m}.

A ``TruncOp`` is a finite sum of Kronecker products of ``d x d`` factor
matrices acting on ``l2(N0)`` cut off at dimension ``d``.  Each factor also
carries its *symbol*, the image under the character of the Toeplitz algebra
sending the shift to 1 and compact operators to 0.  Symbols cannot be read off
a truncated matrix, so they are propagated exactly through products, sums and
adjoints alongside the numerical data.

A ``LaurentOp`` is a finite Laurent polynomial in the circle variable ``t``
with ``TruncOp`` coefficients.  The variable is never sampled during algebra;
sampling happens only in :func:`norm`.

Truncation convention: every primitive is truncated first and then composed.
Words of length ``L`` in primitives that move basis indices by at most ``r``
per factor are exact on basis vectors with indices below ``d - r*L``; checks
are therefore stated on interior compressions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

DENSE_LIMIT = 1500


@dataclass(frozen=True, eq=False)
class Factor:
    """One tensor slot: a truncated matrix plus its symbol."""

    mat: np.ndarray
    symbol: complex = 0.0

    @property
    def d(self) -> int:
        return self.mat.shape[0]

    def __matmul__(self, other: "Factor") -> "Factor":
        return Factor(self.mat @ other.mat, self.symbol * other.symbol)

    def adj(self) -> "Factor":
        return Factor(self.mat.conj().T, np.conj(self.symbol))

    @cached_property
    def key(self) -> tuple:
        return (self.mat.tobytes(), complex(self.symbol))

    @cached_property
    def sparse(self) -> sp.csr_matrix:
        return sp.csr_matrix(self.mat)

    def is_zero(self) -> bool:
        return not np.any(self.mat) and self.symbol == 0


Term = tuple[complex, tuple[Factor, ...]]


def _as_complex_matrix(m) -> np.ndarray:
    m = np.asarray(m)
    return m.astype(complex) if np.iscomplexobj(m) else m.astype(float)


class TruncOp:
    """Sum of Kronecker products of truncated factors."""

    __slots__ = ("factor_dims", "terms", "__dict__")

    def __init__(self, factor_dims: Sequence[int], terms: Iterable[Term] = ()):
        self.factor_dims = tuple(int(d) for d in factor_dims)
        self.terms = _canonical(self.factor_dims, terms)

    # constructors --------------------------------------------------------
    @classmethod
    def scalar(cls, c: complex, factor_dims: Sequence[int] = ()) -> "TruncOp":
        if c == 0:
            return cls(factor_dims)
        return cls(factor_dims, [(c, tuple(Factor(np.eye(d), 1.0) for d in factor_dims))])

    @classmethod
    def identity(cls, factor_dims: Sequence[int]) -> "TruncOp":
        return cls.scalar(1.0, factor_dims)

    @classmethod
    def from_factor(cls, mat, symbol: complex) -> "TruncOp":
        mat = _as_complex_matrix(mat)
        return cls((mat.shape[0],), [(1.0, (Factor(mat, symbol),))])

    # structure -----------------------------------------------------------
    @property
    def dim(self) -> int:
        return int(np.prod(self.factor_dims, dtype=np.int64))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "TruncOp"):
        if self.factor_dims != other.factor_dims:
            raise ValueError(f"factor dims differ: {self.factor_dims} vs {other.factor_dims}")

    # algebra -------------------------------------------------------------
    def __add__(self, other: "TruncOp") -> "TruncOp":
        self._check(other)
        return TruncOp(self.factor_dims, self.terms + other.terms)

    def __sub__(self, other: "TruncOp") -> "TruncOp":
        return self + other * -1.0

    def __neg__(self) -> "TruncOp":
        return self * -1.0

    def __mul__(self, c: complex) -> "TruncOp":
        if c == 0:
            return TruncOp(self.factor_dims)
        return TruncOp(self.factor_dims, [(a * c, f) for a, f in self.terms])

    __rmul__ = __mul__

    def __matmul__(self, other: "TruncOp") -> "TruncOp":
        self._check(other)
        terms = []
        for a, fa in self.terms:
            for b, fb in other.terms:
                terms.append((a * b, tuple(x @ y for x, y in zip(fa, fb))))
        return TruncOp(self.factor_dims, terms)

    def adj(self) -> "TruncOp":
        return TruncOp(self.factor_dims, [(np.conj(a), tuple(f.adj() for f in fs)) for a, fs in self.terms])

    def kron(self, other: "TruncOp") -> "TruncOp":
        terms = [(a * b, fa + fb) for a, fa in self.terms for b, fb in other.terms]
        return TruncOp(self.factor_dims + other.factor_dims, terms)

    def compress(self, margin: int) -> "TruncOp":
        """Conjugate by the projection onto basis vectors with every index < d - margin."""
        def cut(f: Factor) -> Factor:
            m = np.zeros_like(f.mat)
            k = f.d - margin
            m[:k, :k] = f.mat[:k, :k]
            return Factor(m, f.symbol)
        return TruncOp(self.factor_dims, [(a, tuple(cut(f) for f in fs)) for a, fs in self.terms])

    def sigma_last(self) -> "TruncOp":
        """Apply the symbol map to the last tensor factor, removing it."""
        if not self.factor_dims:
            raise ValueError("no tensor factor left to apply the symbol map to")
        return TruncOp(self.factor_dims[:-1], [(a * fs[-1].symbol, fs[:-1]) for a, fs in self.terms])

    def symbol(self) -> complex:
        """Full symbol: the scalar obtained by applying the symbol map to every factor."""
        return sum(a * np.prod([f.symbol for f in fs]) for a, fs in self.terms)

    # numerics ------------------------------------------------------------
    @cached_property
    def sparse(self) -> sp.csr_matrix:
        out = sp.csr_matrix((self.dim, self.dim), dtype=complex)
        for a, fs in self.terms:
            out = out + a * reduce(lambda x, y: sp.kron(x, y, format="csr"), [f.sparse for f in fs],
                                   sp.csr_matrix(np.ones((1, 1))))
        return out.tocsr()

    @property
    def matrix(self) -> np.ndarray:
        if self.dim > 4 * DENSE_LIMIT:
            raise MemoryError(f"refusing to densify an operator of dimension {self.dim}")
        return self.sparse.toarray()

    def __repr__(self):
        return f"TruncOp(dims={self.factor_dims}, terms={len(self.terms)})"


def _canonical(factor_dims: tuple[int, ...], terms: Iterable[Term]) -> list[Term]:
    merged: dict[tuple, list] = {}
    for c, fs in terms:
        fs = tuple(fs)
        if len(fs) != len(factor_dims):
            raise ValueError("term has the wrong number of factors")
        if c == 0 or any(f.is_zero() for f in fs):
            continue
        if len(fs) == 1:
            # single slot: sums of factors are again factors (the symbol is linear)
            key = ()
        else:
            key = tuple(f.key for f in fs)
        if key in merged:
            slot = merged[key]
            if len(fs) == 1:
                f0 = slot[1][0]
                slot[1] = (Factor(f0.mat * slot[0] + fs[0].mat * c, f0.symbol * slot[0] + fs[0].symbol * c),)
                slot[0] = 1.0
            else:
                slot[0] += c
        else:
            merged[key] = [c, fs]
    out = []
    for c, fs in merged.values():
        if c == 0 or any(f.is_zero() for f in fs):
            continue
        out.append((complex(c) if np.iscomplexobj(c) and np.imag(c) else float(np.real(c)), fs))
    return out


class LaurentOp:
    """Laurent polynomial in the circle variable with ``TruncOp`` coefficients."""

    __slots__ = ("factor_dims", "coeffs", "__dict__")

    def __init__(self, factor_dims: Sequence[int], coeffs: dict[int, TruncOp] | None = None):
        self.factor_dims = tuple(int(d) for d in factor_dims)
        clean = {}
        for deg, op in (coeffs or {}).items():
            if op.factor_dims != self.factor_dims:
                raise ValueError("coefficient factor dims do not match")
            if not op.is_zero():
                clean[int(deg)] = op
        self.coeffs = dict(sorted(clean.items()))

    @classmethod
    def scalar(cls, c: complex, degree: int = 0, factor_dims: Sequence[int] = ()) -> "LaurentOp":
        return cls(factor_dims, {degree: TruncOp.scalar(c, factor_dims)})

    @classmethod
    def identity(cls, factor_dims: Sequence[int]) -> "LaurentOp":
        return cls.scalar(1.0, 0, factor_dims)

    @classmethod
    def zero(cls, factor_dims: Sequence[int] = ()) -> "LaurentOp":
        return cls(factor_dims)

    @classmethod
    def from_trunc(cls, op: TruncOp, degree: int = 0) -> "LaurentOp":
        return cls(op.factor_dims, {degree: op})

    @property
    def degrees(self) -> list[int]:
        return list(self.coeffs)

    @property
    def dim(self) -> int:
        return int(np.prod(self.factor_dims, dtype=np.int64))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "LaurentOp"):
        if self.factor_dims != other.factor_dims:
            raise ValueError(f"factor dims differ: {self.factor_dims} vs {other.factor_dims}")

    def __add__(self, other: "LaurentOp") -> "LaurentOp":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return LaurentOp(self.factor_dims, out)

    def __sub__(self, other: "LaurentOp") -> "LaurentOp":
        return self + other * -1.0

    def __neg__(self) -> "LaurentOp":
        return self * -1.0

    def __mul__(self, c: complex) -> "LaurentOp":
        return LaurentOp(self.factor_dims, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "LaurentOp") -> "LaurentOp":
        self._check(other)
        out: dict[int, TruncOp] = {}
        for k, a in self.coeffs.items():
            for l, b in other.coeffs.items():
                ab = a @ b
                out[k + l] = out[k + l] + ab if k + l in out else ab
        return LaurentOp(self.factor_dims, out)

    def __pow__(self, p: int) -> "LaurentOp":
        if p < 0:
            raise ValueError("negative powers are not defined")
        out = LaurentOp.identity(self.factor_dims)
        for _ in range(p):
            out = out @ self
        return out

    def adj(self) -> "LaurentOp":
        return LaurentOp(self.factor_dims, {-k: v.adj() for k, v in self.coeffs.items()})

    def kron(self, other: "LaurentOp") -> "LaurentOp":
        out: dict[int, TruncOp] = {}
        dims = self.factor_dims + other.factor_dims
        for k, a in self.coeffs.items():
            for l, b in other.coeffs.items():
                ab = a.kron(b)
                out[k + l] = out[k + l] + ab if k + l in out else ab
        return LaurentOp(dims, out)

    def compress(self, margin: int) -> "LaurentOp":
        return LaurentOp(self.factor_dims, {k: v.compress(margin) for k, v in self.coeffs.items()})

    def sigma_last(self) -> "LaurentOp":
        return LaurentOp(self.factor_dims[:-1], {k: v.sigma_last() for k, v in self.coeffs.items()})

    def shift_degree(self, s: int) -> "LaurentOp":
        return LaurentOp(self.factor_dims, {k + s: v for k, v in self.coeffs.items()})

    def evaluate(self, t: complex) -> TruncOp:
        out = TruncOp(self.factor_dims)
        for k, v in self.coeffs.items():
            out = out + v * (t ** k)
        return out

    @cached_property
    def sparse_coeffs(self) -> dict[int, sp.csr_matrix]:
        return {k: v.sparse for k, v in self.coeffs.items()}

    def sparse_at(self, t: complex) -> sp.csr_matrix:
        out = sp.csr_matrix((self.dim, self.dim), dtype=complex)
        for k, m in self.sparse_coeffs.items():
            out = out + (t ** k) * m
        return out

    def __repr__(self):
        return f"LaurentOp(dims={self.factor_dims}, degrees={self.degrees})"


# primitives ----------------------------------------------------------------

def shift_op(d: int) -> TruncOp:
    """Left shift ``e_n -> e_{n-1}``, ``e_0 -> 0``."""
    if d < 2:
        raise ValueError("shift needs d >= 2")
    return TruncOp.from_factor(np.eye(d, k=1), 1.0)


def qn_op(c: float, q: float, d: int) -> TruncOp:
    """``q**(c N)`` for the number operator ``N``."""
    if c <= 0:
        raise ValueError("exponent scale must be positive")
    return TruncOp.from_factor(np.diag(q ** (c * np.arange(d))), 0.0)


def number_function_op(values: np.ndarray, symbol: complex) -> TruncOp:
    """Diagonal ``f(N)`` given the values ``f(0..d-1)`` and ``f(infinity)``."""
    return TruncOp.from_factor(np.diag(np.asarray(values)), symbol)


def matrix_unit(i: int, j: int, d: int) -> TruncOp:
    """``p_ij = |e_i><e_j|``; ``p = p_00``."""
    m = np.zeros((d, d))
    m[i, j] = 1.0
    return TruncOp.from_factor(m, 0.0)


def identity_op(d: int) -> TruncOp:
    return TruncOp.identity((d,))


def sqrt_shift_op(q: float, exponent_offset: int, power: int, d: int) -> TruncOp:
    """``sqrt(1 - q**(2N + offset)) S**power``, the function applied after the shift.

    On basis vectors, ``e_n -> sqrt(1 - q**(2(n - power) + offset)) e_{n - power}``;
    for ``offset=2, power=1`` that is ``sqrt(1 - q**(2n)) e_{n-1}``.  The
    adjoint of the ``offset=2, power=1`` operator equals
    ``sqrt(1 - q**(2N)) S*``, the form in which the same operator is written
    for the quotient generators.
    """
    if exponent_offset not in (0, 2) or power not in (1, 2):
        raise ValueError("offset must be 0 or 2 and power 1 or 2")
    n = np.arange(d)
    weights = np.sqrt(1.0 - q ** (2 * n + exponent_offset))
    return TruncOp.from_factor(np.diag(weights) @ np.eye(d, k=power), 1.0)


# module-level operations -----------------------------------------------------

def kron(a, b):
    return a.kron(b)


def mul(a, b):
    return a @ b


def add(a, b):
    return a + b


def adj(a):
    return a.adj()


def interior_compress(a, margin: int):
    return a.compress(margin)


def interior_indices(factor_dims: Sequence[int], margin: int) -> np.ndarray:
    """Flat indices of basis vectors whose factor indices are all < d - margin."""
    mask = np.ones(1, dtype=bool)
    for d in factor_dims:
        m1 = np.zeros(d, dtype=bool)
        m1[: d - margin] = True
        mask = np.kron(mask, m1).astype(bool)
    return np.flatnonzero(mask)


def schur_bound(m: sp.spmatrix) -> float:
    """Upper bound ``sqrt(||M||_1 ||M||_inf)`` for the spectral norm."""
    if m.nnz == 0:
        return 0.0
    a = abs(m)
    return float(np.sqrt(a.sum(axis=0).max() * a.sum(axis=1).max()))


def _power_norm(m: sp.csr_matrix, rtol: float = 1e-13, maxiter: int = 5000) -> float:
    """Power iteration on ``M* M`` from a fixed pseudo-random start.

    ARPACK struggles with the degenerate top singular values typical of
    Kronecker products; the Rayleigh quotient of plain power iteration
    converges in value even when the top singular space is degenerate.
    """
    rng = np.random.default_rng(0)
    mh = m.conj().T.tocsr()
    x = rng.standard_normal(m.shape[1]) + 1j * rng.standard_normal(m.shape[1])
    x /= np.linalg.norm(x)
    prev = 0.0
    for _ in range(maxiter):
        y = mh @ (m @ x)
        lam = float(np.sqrt(abs(np.vdot(x, y))))
        ny = np.linalg.norm(y)
        if ny == 0:
            return 0.0
        x = y / ny
        if abs(lam - prev) <= rtol * lam:
            break
        prev = lam
    return float(np.sqrt(ny))


def spectral_norm(m) -> float:
    """2-norm of a (sparse or dense) matrix."""
    if sp.issparse(m):
        if m.nnz == 0:
            return 0.0
        if max(m.shape) <= DENSE_LIMIT:
            return float(np.linalg.norm(m.toarray(), 2))
        if min(m.shape) <= DENSE_LIMIT:
            # Gram matrix on the short side
            g = (m.conj().T @ m) if m.shape[1] <= m.shape[0] else (m @ m.conj().T)
            return float(np.sqrt(max(np.linalg.eigvalsh(g.toarray()).max(), 0.0)))
        return _power_norm(m.tocsr())
    m = np.asarray(m)
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def _restrict(m: sp.csr_matrix, idx: np.ndarray | None) -> sp.csr_matrix:
    if idx is None:
        return m
    return m[idx][:, idx]


def _single_term_norm(a, margin: int | None) -> float | None:
    """Exact shortcut for ``c A_1 (x) ... (x) A_m``: the norm factorizes."""
    if isinstance(a, LaurentOp):
        if a.is_zero():
            return 0.0
        if len(a.coeffs) != 1:
            return None
        (a,) = a.coeffs.values()
    if a.is_zero():
        return 0.0
    if len(a.terms) != 1:
        return None
    c, fs = a.terms[0]
    out = abs(c)
    for f in fs:
        k = f.d - margin if margin else f.d
        out *= spectral_norm(f.mat[:k, :k])
    return float(out)


def norm(a, margin: int | None = None, samples: int = 64, rtol: float = 1e-10) -> float:
    """Operator 2-norm, optionally of the interior compression.

    Laurent operators are evaluated on equally spaced points of the circle and
    the maximum is taken; the number of points is doubled until the maximum
    changes by less than ``rtol`` relative to its size.
    """
    single = _single_term_norm(a, margin)
    if single is not None:
        return single
    idx = interior_indices(a.factor_dims, margin) if margin else None
    if isinstance(a, TruncOp):
        return spectral_norm(_restrict(a.sparse, idx))
    return block_norm({k: _restrict(m, idx) for k, m in a.sparse_coeffs.items()}, samples, rtol)


def block_norm(blocks: dict[int, sp.spmatrix], samples: int = 64, rtol: float = 1e-10) -> float:
    """``sup_t ||sum_k t**k B_k||`` over the circle, by adaptive sampling."""
    blocks = {k: m for k, m in blocks.items() if m.nnz}
    if not blocks:
        return 0.0
    if len(blocks) == 1:
        return spectral_norm(next(iter(blocks.values())))

    def sup(M):
        ts = np.exp(2j * np.pi * np.arange(M) / M)
        return max(spectral_norm(sum(t ** k * m for k, m in blocks.items())) for t in ts)

    M = samples
    prev = sup(M)
    while M < 4096:
        M *= 2
        cur = sup(M)
        if abs(cur - prev) <= rtol * max(1.0, cur):
            return max(cur, prev)
        prev = cur
    return prev


def norm_bound(a, margin: int | None = None) -> float:
    """Cheap certified upper bound on :func:`norm` (sum over degrees of Schur bounds)."""
    idx = interior_indices(a.factor_dims, margin) if margin else None
    if isinstance(a, TruncOp):
        return schur_bound(_restrict(a.sparse, idx))
    return sum(schur_bound(_restrict(m, idx)) for m in a.sparse_coeffs.values())
