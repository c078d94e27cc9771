"""Weyl groups of types B_n and D_n realised as signed permutations.

Simple reflections are labelled ``1..n``.  For ``i < n``, ``s_i`` swaps the
coordinates ``i`` and ``i+1``.  For type B, ``s_n`` negates coordinate ``n``;
for type D, ``s_n`` sends ``e_{n-1} -> -e_n`` and ``e_n -> -e_{n-1}``.

A signed permutation is stored as a tuple ``w`` with ``w[i-1] = +-j`` meaning
``w(e_i) = +-e_j``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

SignedPerm = tuple[int, ...]


@dataclass(frozen=True)
class WeylWord:
    type: str
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.type not in ("B", "D"):
            raise ValueError(f"unknown Lie type {self.type!r}")
        if self.n < 1 or (self.type == "D" and self.n < 2):
            raise ValueError(f"rank {self.n} is not valid for type {self.type}")
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        for a in self.letters:
            if not 1 <= a <= self.n:
                raise ValueError(f"letter s_{a} is not a simple reflection of {self.type}_{self.n}")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "WeylWord") -> "WeylWord":
        if (self.type, self.n) != (other.type, other.n):
            raise ValueError("cannot concatenate words from different Weyl groups")
        return WeylWord(self.type, self.n, self.letters + other.letters)

    def __str__(self):
        return "".join(f"s{a}" for a in self.letters) or "e"

    @property
    def N(self) -> int:
        return 2 * self.n + 1 if self.type == "B" else 2 * self.n


def _simple(type_: str, n: int, i: int) -> SignedPerm:
    w = list(range(1, n + 1))
    if i < n:
        w[i - 1], w[i] = i + 1, i
    elif type_ == "B":
        w[n - 1] = -n
    else:
        w[n - 2], w[n - 1] = -n, -(n - 1)
    return tuple(w)


def compose(u: SignedPerm, v: SignedPerm) -> SignedPerm:
    """``(u o v)(e_i) = u(v(e_i))``."""
    out = []
    for x in v:
        y = u[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


def signed_perm(w: WeylWord) -> SignedPerm:
    """Product ``s_{i_1} s_{i_2} ... s_{i_l}`` as a signed permutation."""
    g = tuple(range(1, w.n + 1))
    for a in w.letters:
        g = compose(g, _simple(w.type, w.n, a))
    return g


def positive_roots(type_: str, n: int) -> list[tuple[int, ...]]:
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            for sj in (-1, 1):
                r = [0] * n
                r[i], r[j] = 1, sj
                roots.append(tuple(r))
        if type_ == "B":
            r = [0] * n
            r[i] = 1
            roots.append(tuple(r))
    return roots


def _act(g: SignedPerm, vec: tuple[int, ...]) -> list[int]:
    out = [0] * len(g)
    for i, c in enumerate(vec):
        if c:
            j = g[i]
            out[abs(j) - 1] += c if j > 0 else -c
    return out


def _is_positive(vec) -> bool:
    for c in vec:
        if c:
            return c > 0
    return False


def length(g: SignedPerm, type_: str) -> int:
    """Coxeter length: the number of positive roots sent to negative roots."""
    return sum(not _is_positive(_act(g, r)) for r in positive_roots(type_, len(g)))


def is_reduced(w: WeylWord) -> bool:
    return length(signed_perm(w), w.type) == len(w)


@lru_cache(maxsize=None)
def enumerate_group(type_: str, n: int) -> dict[SignedPerm, int]:
    """Breadth-first search of the Cayley graph; maps each element to its length."""
    gens = [_simple(type_, n, i) for i in range(1, n + 1)]
    start = tuple(range(1, n + 1))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = compose(g, s)
            if h not in dist:
                dist[h] = dist[g] + 1
                queue.append(h)
    return dist


def longest_element(type_: str, n: int) -> WeylWord:
    """Reduced word for w0 as a power of the Coxeter element ``s_1 ... s_n``.

    The Coxeter number is ``2n`` for B_n and ``2n - 2`` for D_n, and w0 is the
    ``h/2``-th power of the Coxeter element, of length ``n**2`` or ``n**2 - n``.
    """
    reps = n if type_ == "B" else n - 1
    return WeylWord(type_, n, tuple(range(1, n + 1)) * reps)


def omega_k(type_: str, n: int, k: int) -> WeylWord:
    """The words indexing the irreducible representations of the quotient space."""
    kmax = 2 * n if type_ == "B" else 2 * n - 1
    if not 1 <= k <= kmax:
        raise ValueError(f"k={k} outside 1..{kmax} for type {type_}_{n}")
    if k <= n + 1:
        letters = tuple(range(1, k))
    elif type_ == "B":
        letters = tuple(range(1, n + 1)) + tuple(range(n - 1, 2 * n - k, -1))
    else:
        letters = tuple(range(1, n + 1)) + tuple(range(n - 2, 2 * n - k - 1, -1))
    return WeylWord(type_, n, letters)


def omega_N_words(N: int) -> tuple[WeylWord, WeylWord]:
    """``(omega_N, omega'_N)`` used to separate highest weight vectors.

    ``omega'_N`` drops the trailing ``s_1`` of the descending tail of
    ``omega_N`` when that tail is nonempty.
    """
    if N < 4:
        raise ValueError("N must be >= 4")
    n = N // 2
    type_ = "B" if N % 2 else "D"
    top = n - 1 if type_ == "B" else n - 2
    up = tuple(range(1, n + 1))
    tail = tuple(range(top, 0, -1))
    full = WeylWord(type_, n, up + tail)
    prime = WeylWord(type_, n, up + tail[:-1]) if tail else full
    return full, prime


def is_subword(u: WeylWord, w: WeylWord) -> bool:
    """True if the letters of ``u`` occur in order (not necessarily adjacent) in ``w``."""
    it = iter(w.letters)
    return all(a in it for a in u.letters)
