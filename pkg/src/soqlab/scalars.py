"""q-arithmetic, binomial series coefficients and the tolerance policy.

Every numerical check in the package compares an operator norm against
``QParams.tol``.  The tolerance floor scales like ``q**(2*(d - m))`` because
operators of the form ``q**N`` have entries of that size just past the
interior of a truncated basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def default_tol(q: float, d: int, margin: int) -> float:
    return max(1e-10, 10.0 * q ** (2 * (d - margin)))


@dataclass(frozen=True)
class QParams:
    """Deformation parameter plus truncation scheme.

    ``d`` is the cut-off dimension of every Toeplitz factor and ``margin``
    the number of basis vectors at the top of each factor that are excluded
    from interior compressions.
    """

    q: float
    d: int = 16
    margin: int = 6
    tol: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise ValueError(f"q must lie in (0, 1), got {self.q}")
        if self.d < 4:
            raise ValueError(f"cut-off dimension must be >= 4, got {self.d}")
        if not 0 <= self.margin < self.d:
            raise ValueError(f"margin must satisfy 0 <= m < d, got {self.margin}")
        floor = default_tol(self.q, self.d, self.margin)
        if self.tol is None:
            object.__setattr__(self, "tol", floor)
        elif self.tol < floor:
            raise ValueError(f"tol={self.tol:g} is below the truncation floor {floor:g}")

    @property
    def interior(self) -> int:
        return self.d - self.margin

    def with_dims(self, d: int, margin: int) -> "QParams":
        """Same q, new truncation; the tolerance is recomputed from the policy."""
        return QParams(self.q, d, margin)


def q_int(a: int, q: float) -> float:
    """The q-integer ``(q**a - q**-a) / (q - q**-1)``."""
    return (q ** a - q ** (-a)) / (q - 1.0 / q)


def sqrt_series_coeff(l: int, q: float) -> float:
    """``q**(2l) (2l)! / (4**l (l!)**2 (2l - 1))``.

    With these coefficients ``sqrt(1 - x) = -sum_l c_l(1) x**l``, so
    ``sqrt(1 - q**2 y) = -sum_l c_l(q) y**l``.  The central binomial ratio
    ``(2l)! / (4**l (l!)**2)`` is accumulated as a running product to stay
    finite for large ``l``.
    """
    if l < 0:
        raise ValueError("series index must be nonnegative")
    ratio = 1.0
    for j in range(1, l + 1):
        ratio *= (2 * j - 1) / (2 * j)
    return q ** (2 * l) * ratio / (2 * l - 1)


def sqrt_series_partial(x, L: int):
    """Partial sum ``-sum_{l<=L} c_l(1) x**l`` approximating ``sqrt(1 - x)``."""
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for l in range(L + 1):
        total = total - sqrt_series_coeff(l, 1.0) * x ** l
    return total


def hw_coefficients(n: int, q: float) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of the ``E_1`` ladder on the monomials ``a^i b^(n-i) c^(n-i) d^i``.

    Returns ``(A1, A2)`` with ``A1[i]`` for ``0 <= i <= n`` and ``A2[i]`` for
    ``1 <= i <= n - 1`` (``A2[0]`` and ``A2[n]`` are left as ``nan``).
    """
    if n < 1:
        raise ValueError("ladder exponent must be >= 1")
    A1 = np.empty(n + 1)
    A2 = np.full(n + 1, np.nan)
    A1[0] = -q ** (-2 * n + 1) * q_int(n, q)
    A1[n] = -q * q_int(n, q)
    for i in range(1, n):
        A1[i] = -q ** (n - i + 1) * q_int(i, q)
        A2[i] = -q ** (3 * i - 2 * n + 1) * q_int(n - i, q)
    return A1, A2
