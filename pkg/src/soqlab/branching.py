"""Two-step branching multiplicities SO(N) -> SO(N-2).

``multiplicity`` counts integer tuples ``gamma`` of length ``n = N // 2``
interleaving both ``alpha`` and ``beta``:

odd N:   alpha_1 >= gamma_1 >= alpha_2 >= ... >= alpha_n >= gamma_n >= 0
         gamma_1 >= beta_1 >= gamma_2 >= ... >= beta_{n-1} >= gamma_n >= 0

even N:  alpha_1 >= gamma_1 >= alpha_2 >= ... >= |alpha_n| >= gamma_n
         gamma_1 >= beta_1 >= gamma_2 >= ... >= |beta_{n-1}| >= gamma_n

For even N nothing bounds ``gamma_n`` from below as printed; we take
``gamma_n >= -min(|alpha_n|, |beta_{n-1}|)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

EVEN_LOWER_BOUND_NOTICE = (
    "even N: gamma_n is bounded below by -min(|alpha_n|, |beta_{n-1}|) "
    "(no lower bound is printed in the interleaving chain)"
)


def _check_dominant(w: tuple[int, ...], N: int, name: str) -> None:
    if N % 2:
        ok = all(w[i] >= w[i + 1] for i in range(len(w) - 1)) and (not w or w[-1] >= 0)
    else:
        ok = all(w[i] >= w[i + 1] for i in range(len(w) - 2))
        if len(w) >= 2:
            ok = ok and w[-2] >= abs(w[-1])
    if not ok:
        raise ValueError(f"{name}={w} is not dominant for SO({N})")


@dataclass(frozen=True)
class BranchQuery:
    N: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        if self.N < 4:
            raise ValueError("branching needs N >= 4")
        n = self.N // 2
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        if len(self.alpha) != n or len(self.beta) != n - 1:
            raise ValueError(f"SO({self.N}) needs alpha of length {n} and beta of length {n - 1}")
        _check_dominant(self.alpha, self.N, "alpha")
        _check_dominant(self.beta, self.N - 2, "beta")

    @property
    def n(self) -> int:
        return self.N // 2


def _tilde(w: tuple[int, ...], N: int) -> list[int]:
    """Weight with the absolute value taken on the last entry for even N."""
    out = list(w)
    if N % 2 == 0 and out:
        out[-1] = abs(out[-1])
    return out


def gamma_bounds(qy: BranchQuery, classical: bool = False) -> list[tuple[int, int]]:
    """Inclusive ``(lo, hi)`` for every gamma_i.

    The two chains only couple each gamma_i to fixed alpha and beta entries,
    so the admissible set is a box.
    """
    a, b, n = _tilde(qy.alpha, qy.N), _tilde(qy.beta, qy.N), qy.n
    out = []
    for i in range(n):
        hi = a[i] if i == 0 else min(a[i], b[i - 1])
        if i < n - 1:
            lo = max(a[i + 1], b[i])
        elif qy.N % 2 and not classical:
            lo = 0
        else:
            lo = -min(a[i], b[i - 1])
        out.append((lo, hi))
    return out


def multiplicity(qy: BranchQuery, classical: bool = False) -> int:
    """Number of interleaving gamma tuples.

    ``classical=True`` lets ``gamma_n`` take negative values in the odd case
    too, as in the classical two-step rule through SO(2n).
    """
    total = 1
    for lo, hi in gamma_bounds(qy, classical):
        total *= max(hi - lo + 1, 0)
    return total


def multiplicity_bruteforce(qy: BranchQuery, classical: bool = False) -> int:
    """Independent oracle: test every tuple in ``[-alpha_1, alpha_1]^n`` against both chains."""
    a, b, n = qy.alpha, qy.beta, qy.n
    odd = qy.N % 2 == 1
    bound = max([abs(x) for x in a] + [0])
    count = 0
    # innermost loop runs over gamma_1, the reverse of the recursive version
    for rev in itertools.product(range(-bound, bound + 1), repeat=n):
        g = rev[::-1]
        chain1 = []
        for i in range(n):
            chain1 += [a[i] if (odd or i < n - 1) else abs(a[i]), g[i]]
        chain2 = []
        for i in range(n):
            chain2.append(g[i])
            if i < n - 1:
                chain2.append(b[i] if (odd or i < n - 2) else abs(b[i]))
        if any(x < y for x, y in zip(chain1, chain1[1:])):
            continue
        if any(x < y for x, y in zip(chain2, chain2[1:])):
            continue
        if odd:
            lo = -min(a[-1], b[-1] if b else a[-1]) if classical else 0
        else:
            lo = -min(abs(a[-1]), abs(b[-1]) if b else abs(a[-1]))
        if g[-1] < lo:
            continue
        count += 1
    return count


def trivial_multiplicity(alpha: tuple[int, ...], N: int) -> int:
    """Closed form for the multiplicity of the trivial SO(N-2) representation."""
    alpha = tuple(alpha)
    _check_dominant(alpha, N, "alpha")
    if any(a != 0 for a in alpha[2:]):
        return 0
    a1 = alpha[0] if alpha else 0
    a2 = alpha[1] if len(alpha) > 1 else 0
    return a1 - (abs(a2) if N == 4 else a2) + 1


def dominant_weights(N: int, max_a1: int):
    """All dominant SO(N) weights with ``alpha_1 <= max_a1``."""
    n = N // 2

    def rec(prefix: list[int]):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        top = prefix[-1] if prefix else max_a1
        lo = -top if (N % 2 == 0 and len(prefix) == n - 1) else 0
        for v in range(top, lo - 1, -1):
            yield from rec(prefix + [v])

    yield from rec([])
