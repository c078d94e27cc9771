import pytest
from hypothesis import given, strategies as st

from soqlab.weyl import (WeylWord, compose, enumerate_group, is_reduced, is_subword, length, longest_element,
                         omega_k, omega_N_words, signed_perm)


def test_identity_and_simple():
    assert signed_perm(WeylWord("B", 2)) == (1, 2)
    assert signed_perm(WeylWord("B", 2, (1,))) == (2, 1)


def test_braid_relation_b2():
    # frozen from brute-force enumeration: both words give the longest element -1
    a = signed_perm(WeylWord("B", 2, (1, 2, 1, 2)))
    b = signed_perm(WeylWord("B", 2, (2, 1, 2, 1)))
    assert a == b == (-1, -2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_longest_b(n):
    w = longest_element("B", n)
    assert len(w) == n * n and is_reduced(w)
    assert length(signed_perm(w), "B") == max(enumerate_group("B", n).values())


def test_longest_d3_matches_enumeration():
    w = longest_element("D", 3)
    group = enumerate_group("D", 3)
    assert len(w) == 6 == max(group.values())
    assert len(group) == 24
    assert is_reduced(w)


@pytest.mark.parametrize("type_,n", [("B", 2), ("B", 3), ("D", 3), ("D", 4)])
def test_enumeration_lengths_agree(type_, n):
    for g, l in enumerate_group(type_, n).items():
        assert length(g, type_) == l


def test_omega_examples():
    assert len(omega_k("B", 3, 1)) == 0
    assert omega_k("B", 3, 5).letters == (1, 2, 3, 2)
    assert omega_k("D", 4, 6).letters == (1, 2, 3, 4, 2)
    assert omega_N_words(5) == (WeylWord("B", 2, (1, 2, 1)), WeylWord("B", 2, (1, 2)))
    assert omega_N_words(6) == (WeylWord("D", 3, (1, 2, 3, 1)), WeylWord("D", 3, (1, 2, 3)))


@pytest.mark.parametrize("type_,n", [("B", 2), ("B", 3), ("D", 3), ("D", 4)])
def test_omega_words_reduced(type_, n):
    kmax = 2 * n if type_ == "B" else 2 * n - 1
    for k in range(1, kmax + 1):
        assert is_reduced(omega_k(type_, n, k))
    full, prime = omega_N_words(2 * n + (type_ == "B"))
    assert is_reduced(full) and is_subword(prime, full)


def test_invalid_words():
    with pytest.raises(ValueError):
        WeylWord("C", 2)
    with pytest.raises(ValueError):
        WeylWord("D", 1)
    with pytest.raises(ValueError):
        WeylWord("B", 2, (3,))
    with pytest.raises(ValueError):
        omega_k("D", 3, 6)


groups = st.sampled_from([("B", 2), ("B", 3), ("D", 3), ("D", 4)])


@st.composite
def word_pairs(draw):
    type_, n = draw(groups)
    letters = st.lists(st.integers(1, n), max_size=8)
    return WeylWord(type_, n, tuple(draw(letters))), WeylWord(type_, n, tuple(draw(letters)))


@given(word_pairs())
def test_signed_perm_homomorphism(pair):
    u, v = pair
    assert signed_perm(u + v) == compose(signed_perm(u), signed_perm(v))


@given(word_pairs())
def test_length_subadditive_and_inverse(pair):
    u, v = pair
    gu = signed_perm(u)
    assert length(gu, u.type) <= len(u)
    inv = signed_perm(WeylWord(u.type, u.n, u.letters[::-1]))
    assert compose(gu, inv) == tuple(range(1, u.n + 1))
