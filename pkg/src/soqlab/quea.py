"""The quantized enveloping algebra acting on the first and last rows.

Polynomials in the letters ``v^1_m`` and ``v^N_m`` are kept as formal
noncommutative words (``FreePoly``).  The generators act on single letters
through the vector representation, ``f . v^i_j = sum_k T_1(f)_{kj} v^i_k``, and
on words through the coproduct

    Delta(E) = E (x) K + 1 (x) E,   Delta(F) = F (x) 1 + K^-1 (x) F,   Delta(K) = K (x) K.

Equality in the algebra is never decided by rewriting; polynomials are
compared after evaluation in a faithful representation (``PolyEvaluator``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .opcalc import block_norm, interior_indices
from .repbuilder import (QuotientGenerators, build_pi, generators_from_rep, index_raise,
                         quotient_t_degrees, vector_rep)
from .scalars import QParams, q_int
from .weyl import WeylWord, omega_N_words

Letter = tuple[int, int]  # (row, column) of v^row_column
Word = tuple[Letter, ...]


@dataclass(frozen=True, eq=False)
class FreePoly:
    """Finite linear combination of words; zero coefficients are dropped."""

    terms: Mapping[Word, complex] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(w): c for w, c in self.terms.items() if c != 0}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def unit(cls) -> "FreePoly":
        return cls({(): 1.0})

    @classmethod
    def letter(cls, row: int, col: int) -> "FreePoly":
        return cls({((row, col),): 1.0})

    @classmethod
    def word(cls, letters: Iterable[Letter], coeff: complex = 1.0) -> "FreePoly":
        return cls({tuple(letters): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "FreePoly") -> "FreePoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0.0) + c
        return FreePoly(out)

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        return self + other * -1.0

    def __mul__(self, other) -> "FreePoly":
        if isinstance(other, FreePoly):
            out: dict[Word, complex] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out[w1 + w2] = out.get(w1 + w2, 0.0) + c1 * c2
            return FreePoly(out)
        return FreePoly({w: c * other for w, c in self.terms.items()})

    def __rmul__(self, c) -> "FreePoly":
        return FreePoly({w: c * v for w, v in self.terms.items()})

    def __pow__(self, k: int) -> "FreePoly":
        out = FreePoly.unit()
        for _ in range(k):
            out = out * self
        return out

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def close_to(self, other: "FreePoly", atol: float = 1e-12) -> bool:
        diff = self - other
        return all(abs(c) <= atol for c in diff.terms.values())

    def __repr__(self):
        if not self.terms:
            return "FreePoly(0)"
        parts = []
        for w, c in self.terms.items():
            name = "".join(f"v{r}_{m}" for r, m in w) or "1"
            parts.append(f"{c:+.6g}*{name}")
        return "FreePoly(" + " ".join(parts) + ")"


@dataclass(frozen=True)
class QGen:
    """A generator ``E_i``, ``F_i``, ``K_i`` or ``K_i^-1``."""

    kind: str
    i: int

    def __post_init__(self):
        if self.kind not in ("E", "F", "K", "Kinv"):
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def __str__(self):
        return f"{self.kind}{self.i}"


@lru_cache(maxsize=None)
def _letter_tables(type_: str, n: int, q: float):
    T = vector_rep(type_, n, q)
    return T


def _act_letter(g: QGen, letter: Letter, T) -> FreePoly:
    row, col = letter
    if g.kind == "K":
        return FreePoly.word([letter], T.K[g.i][col - 1, col - 1])
    if g.kind == "Kinv":
        return FreePoly.word([letter], 1.0 / T.K[g.i][col - 1, col - 1])
    M = T.E[g.i] if g.kind == "E" else T.F[g.i]
    out = {}
    for k in np.flatnonzero(M[:, col - 1]):
        out[((row, int(k) + 1),)] = M[k, col - 1]
    return FreePoly(out)


def _act_word(g: QGen, w: Word, T) -> FreePoly:
    if not w:
        return FreePoly.unit() if g.kind in ("K", "Kinv") else FreePoly()
    if g.kind in ("K", "Kinv"):
        c = 1.0
        for letter in w:
            (coef,) = _act_letter(g, letter, T).terms.values()
            c *= coef
        return FreePoly.word(w, c)
    out = FreePoly()
    kdiag = np.diag(T.K[g.i])
    for p, letter in enumerate(w):
        head, tail = w[:p], w[p + 1:]
        if g.kind == "E":
            # E acts at p, K on everything to the right
            scale = np.prod([kdiag[c - 1] for _, c in tail]) if tail else 1.0
        else:
            # K^-1 on everything to the left, F acts at p
            scale = np.prod([1.0 / kdiag[c - 1] for _, c in head]) if head else 1.0
        for lw, c in _act_letter(g, letter, T).terms.items():
            out = out + FreePoly.word(head + lw + tail, c * scale)
    return out


def act(gen: QGen, p: FreePoly, type_: str, n: int, q: float) -> FreePoly:
    """Action of a generator on a polynomial in the first and last rows."""
    T = _letter_tables(type_, n, q)
    if not 1 <= gen.i <= n:
        raise ValueError(f"generator index {gen.i} outside 1..{n}")
    out = FreePoly()
    for w, c in p.terms.items():
        out = out + _act_word(gen, w, T) * c
    return out


# ---------------------------------------------------------------------------
# highest weight vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HighestWeight:
    N: int
    lam: tuple[int, int]

    def __post_init__(self):
        l1, l2 = self.lam
        if self.N < 4:
            raise ValueError("weights are supported for N >= 4")
        if self.N == 4:
            if l1 < abs(l2):
                raise ValueError(f"N=4 needs lambda_1 >= |lambda_2|, got {self.lam}")
        elif not l1 >= l2 >= 0:
            raise ValueError(f"need lambda_1 >= lambda_2 >= 0, got {self.lam}")

    @property
    def type(self) -> str:
        return "B" if self.N % 2 else "D"

    @property
    def n(self) -> int:
        return self.N // 2

    def r(self) -> list[int]:
        """Exponents r_i with ``K_i(u) = q^{r_i} u``."""
        l1, l2 = self.lam
        n = self.n
        if self.N == 4:
            return [l1 - l2, l1 + l2]
        if self.N == 5:
            return [l1 - l2, 2 * l2]
        if self.N == 6:
            return [l1 - l2, l2, l2]
        return [l1 - l2, l2] + [0] * (n - 2)

    @property
    def count(self) -> int:
        l1, l2 = self.lam
        return l1 - abs(l2) + 1


def letters_abcd(N: int, negative: bool = False) -> dict[str, Letter]:
    if negative:
        if N != 4:
            raise ValueError("the relabelled generators exist only for N = 4")
        return {"a": (1, 2), "b": (4, 2), "c": (1, 4), "d": (4, 4)}
    return {"a": (1, N - 1), "b": (N, N - 1), "c": (1, N), "d": (N, N)}


def u_coefficients(lam: int, q: float) -> np.ndarray:
    """``A_0..A_lam`` from the ladder cancellation, with ``A_0 = 1``."""
    if lam < 0:
        raise ValueError("ladder exponent must be nonnegative")
    A = np.ones(lam + 1)
    if lam == 0:
        return A
    from .scalars import hw_coefficients
    A1, A2 = hw_coefficients(lam, q)
    A2 = A2.copy()
    A2[0] = A1[0]
    for k in range(lam):
        A[k + 1] = -A[k] * A2[k] / A1[k + 1]
    return A


def u_monomial(k: int, lam: int, L: dict[str, Letter]) -> FreePoly:
    a, b, c, d = (FreePoly.letter(*L[x]) for x in "abcd")
    return a ** k * b ** (lam - k) * c ** (lam - k) * d ** k


def build_u_lambda(lam: int, q: float, N: int, negative: bool = False,
                   coeffs: Sequence[float] | None = None) -> FreePoly:
    L = letters_abcd(N, negative)
    A = u_coefficients(lam, q) if coeffs is None else np.asarray(coeffs)
    out = FreePoly()
    for k in range(lam + 1):
        out = out + u_monomial(k, lam, L) * A[k]
    return out


def ladder_exponent(hw: HighestWeight) -> int:
    l2 = hw.lam[1]
    return 2 * l2 if hw.N == 5 else abs(l2)


def build_hw_vectors(l1: int, l2: int, N: int, q: float,
                     u_coeffs: Sequence[float] | None = None) -> list[FreePoly]:
    """``c^i d^(r-i) u`` for ``i = 0..r``."""
    hw = HighestWeight(N, (l1, l2))
    negative = l2 < 0
    L = letters_abcd(N, negative)
    r = l1 + l2 if negative else l1 - l2
    u = build_u_lambda(ladder_exponent(hw), q, N, negative, u_coeffs)
    c, d = FreePoly.letter(*L["c"]), FreePoly.letter(*L["d"])
    return [c ** i * d ** (r - i) * u for i in range(r + 1)]


# ---------------------------------------------------------------------------
# evaluation in a faithful representation
# ---------------------------------------------------------------------------

def faithful_word(N: int) -> WeylWord:
    """``omega_N``, whose representation separates the highest weight vectors."""
    return omega_N_words(N)[0]


class PolyEvaluator:
    """Evaluate ``FreePoly`` values on interior basis vectors, exactly.

    Every factor gets cut-off ``interior + raise * max_len`` so that words of
    up to ``max_len`` letters act on the ``interior**m`` interior basis vectors
    without touching the truncation boundary.
    """

    def __init__(self, N: int, q: float, max_len: int, interior: int = 4,
                 word: WeylWord | None = None, t_degrees: Sequence[int] | None = None):
        self.N, self.q, self.max_len, self.interior = N, q, max_len, interior
        type_, n = ("B" if N % 2 else "D"), N // 2
        self.word = word if word is not None else faithful_word(N)
        dims = [interior + index_raise(type_, n, a) * max(max_len, 1) for a in self.word.letters]
        self.dims = tuple(dims)
        params = QParams(q, max(dims) if dims else 4, 0)
        degs = quotient_t_degrees(n) if t_degrees is None else tuple(t_degrees)
        rep = build_pi(type_, n, self.word, degs, params, dims)
        self.gens: QuotientGenerators = generators_from_rep(rep, type_, n, 0, self.word, q)
        self.cols = self._interior_cols()
        self._letter_cache: dict = {}
        self._suffix: dict = {}

    def _interior_cols(self) -> np.ndarray:
        mask = np.ones(1, dtype=bool)
        for d in self.dims:
            m1 = np.zeros(d, dtype=bool)
            m1[: self.interior] = True
            mask = np.kron(mask, m1).astype(bool)
        return np.flatnonzero(mask)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64)) if self.dims else 1

    def letter_op(self, letter: Letter) -> dict[int, sp.csr_matrix]:
        if letter not in self._letter_cache:
            row, col = letter
            if row == self.N:
                op = self.gens.v_last(col)
            elif row == 1:
                op = self.gens.v_first(col)
            else:
                raise ValueError("only first- and last-row letters are supported")
            self._letter_cache[letter] = op.sparse_coeffs
        return self._letter_cache[letter]

    def word_block(self, w: Word) -> dict[int, sp.csr_matrix]:
        """``pi(w)`` restricted to interior columns, by Laurent degree."""
        if len(w) > self.max_len:
            raise ValueError(f"word of length {len(w)} exceeds the exactness budget {self.max_len}")
        if w in self._suffix:
            return self._suffix[w]
        if not w:
            eye = sp.identity(self.dim, format="csr", dtype=complex)[:, self.cols]
            out = {0: eye.tocsr()}
        else:
            rest = self.word_block(w[1:])
            out = {}
            for d1, A in self.letter_op(w[0]).items():
                for d2, B in rest.items():
                    P = A @ B
                    out[d1 + d2] = out[d1 + d2] + P if d1 + d2 in out else P
        self._suffix[w] = out
        return out

    def evaluate(self, p: FreePoly) -> dict[int, sp.csr_matrix]:
        acc: dict[int, sp.csr_matrix] = {}
        for w, c in p.terms.items():
            for d, m in self.word_block(w).items():
                acc[d] = acc[d] + c * m if d in acc else c * m
        return acc

    def norm(self, p: FreePoly) -> float:
        return block_norm(self.evaluate(p))

    def vacuum_image(self, p: FreePoly) -> np.ndarray:
        """Coefficient vector of ``pi(p) e_0`` stacked over Laurent degrees."""
        blocks = self.evaluate(p)
        # the vacuum is the first interior column
        parts = []
        for d in sorted(blocks):
            parts.append((d, np.asarray(blocks[d][:, 0].todense()).ravel()))
        return parts


@dataclass(frozen=True)
class HWReport:
    N: int
    lam: tuple[int, int]
    index: int
    e_residuals: tuple[float, ...]
    k_residuals: tuple[float, ...]
    scale: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.scale > 0 and max(self.e_residuals + self.k_residuals) <= self.tol


def verify_hw(x: FreePoly, hw: HighestWeight, ev: PolyEvaluator, tol: float) -> HWReport:
    """Relative interior residuals of ``E_i x`` and ``K_i x - q^{r_i} x``.

    Both are divided by the interior norm of ``pi(x)``, since the ladder
    coefficients can be very large.
    """
    q = ev.q
    scale = ev.norm(x)
    if scale == 0:
        return HWReport(hw.N, hw.lam, -1, (np.inf,), (np.inf,), 0.0, tol)
    e_res, k_res = [], []
    for i, ri in enumerate(hw.r(), start=1):
        e_res.append(ev.norm(act(QGen("E", i), x, hw.type, hw.n, q)) / scale)
        k_res.append(ev.norm(act(QGen("K", i), x, hw.type, hw.n, q) - x * q ** ri) / scale)
    return HWReport(hw.N, hw.lam, -1, tuple(e_res), tuple(k_res), scale, tol)


def linear_independence(xs: Sequence[FreePoly], ev: PolyEvaluator, rtol: float = 1e-10) -> int:
    """Numerical rank of ``{pi(x) e_0}``, each vector normalized first."""
    if not xs:
        raise ValueError("need at least one polynomial")
    cols = []
    for x in xs:
        parts = ev.vacuum_image(x)
        degs = sorted({d for d, _ in parts})
        cols.append(dict(parts))
    all_degs = sorted({d for c in cols for d in c})
    n = ev.dim
    M = np.zeros((n * len(all_degs), len(cols)), dtype=complex)
    for j, c in enumerate(cols):
        for k, d in enumerate(all_degs):
            if d in c:
                M[k * n:(k + 1) * n, j] = c[d]
    norms = np.linalg.norm(M, axis=0)
    if np.any(norms == 0):
        M = M[:, norms > 0]
        norms = norms[norms > 0]
        if M.shape[1] == 0:
            return 0
    s = np.linalg.svd(M / norms, compute_uv=False)
    return int(np.sum(s > rtol * s[0]))
