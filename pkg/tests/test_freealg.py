"""Tests for the free algebra layer: words, arithmetic, maps, tensors."""

import random

import pytest

from hopfcheck.errors import AlphabetMismatch, BadFactorIndex, MissingImage
from hopfcheck.freealg import (Alphabet, FreeElement, apply_gen_map,
                               commutator, coproduct_extend, counit_extend,
                               format_element, tensor_embed, word_compare,
                               word_key)
from hopfcheck.scalars import ONE, ZERO, Scalar

AB = Alphabet.base(["a", "b", "c", "d"])
A, B, C, D = (FreeElement.letter(AB, n) for n in "abcd")


def W(text):
    """Word from a string of single letters, e.g. W('ab')."""
    return tuple(AB.index(ch) for ch in text)


# -- word order ------------------------------------------------------------

def test_word_compare_examples():
    assert word_compare(W("ab"), W("ba")) < 0  # first letters a < b
    assert word_compare(W("cd"), W("dc")) < 0
    assert word_compare(W("bb"), W("abc")) < 0  # degree 2 < 3
    assert word_compare(W("ab"), W("ab")) == 0


def test_word_order_total_and_multiplicative():
    rng = random.Random(3)
    words = [tuple(rng.randrange(4) for _ in range(rng.randint(0, 4)))
             for _ in range(200)]
    for _ in range(300):
        u, v, w = rng.choice(words), rng.choice(words), rng.choice(words)
        ku, kv = word_key(u), word_key(v)
        # totality / antisymmetry
        assert (ku < kv) + (kv < ku) + (ku == kv) == 1
        if ku < kv:
            assert word_key(w + u) < word_key(w + v)
            assert word_key(u + w) < word_key(v + w)


# -- element arithmetic ----------------------------------------------------

def test_noncommutativity():
    assert A * B != B * A
    assert (A * B).support() == [W("ab")]


def test_sub_to_zero():
    assert (A * B - A * B).is_zero()


def test_right_distributivity():
    assert (A * B - B * A) * C == A * B * C - B * A * C


def test_alphabet_mismatch():
    other = Alphabet.base(["x", "y"])
    x = FreeElement.letter(other, "x")
    with pytest.raises(AlphabetMismatch):
        A + x


def test_commutator_examples():
    assert commutator(A, B) == A * B - B * A
    assert commutator(A, A).is_zero()
    # the [a,c] = 0 relation of the no-parameter presentation
    assert commutator(A, C) == A * C - C * A


# -- generator maps --------------------------------------------------------

def exchange_images():
    # a <-> d, b <-> c
    return {AB.index("a"): D, AB.index("b"): C,
            AB.index("c"): B, AB.index("d"): A}


def test_exchange_on_bracket_relations():
    sigma = exchange_images()
    # [b,c] - ac  maps to  [c,b] - db
    x = commutator(B, C) - A * C
    assert apply_gen_map(sigma, {}, x, AB) == commutator(C, B) - D * B
    # [a,d] + ac  maps to  [d,a] + db
    y = commutator(A, D) + A * C
    assert apply_gen_map(sigma, {}, y, AB) == commutator(D, A) + D * B


def test_identity_map():
    ident = {i: FreeElement(AB, {(i,): ONE}) for i in range(4)}
    x = A * B - 3 * C * D * A
    assert apply_gen_map(ident, {}, x, AB) == x


def test_exchange_is_involution():
    sigma = exchange_images()
    rng = random.Random(11)
    for _ in range(40):
        x = _random_element(rng)
        y = apply_gen_map(sigma, {}, x, AB)
        assert apply_gen_map(sigma, {}, y, AB) == x


def test_gen_map_is_homomorphism():
    sigma = exchange_images()
    rng = random.Random(12)
    for _ in range(40):
        x, y = _random_element(rng), _random_element(rng)
        fx = apply_gen_map(sigma, {}, x, AB)
        fy = apply_gen_map(sigma, {}, y, AB)
        assert apply_gen_map(sigma, {}, x * y, AB) == fx * fy
        assert apply_gen_map(sigma, {}, x + y, AB) == fx + fy


def test_gen_map_missing_image():
    with pytest.raises(MissingImage):
        apply_gen_map({0: D}, {}, A * B, AB)


# -- tensor embeddings -----------------------------------------------------

def test_tensor_embed_examples():
    T = AB.tensor_power(2)
    a1 = FreeElement.letter(T, "a", 1)
    assert tensor_embed(A, 1, 2) == a1
    a2b2 = FreeElement.letter(T, "a", 2) * FreeElement.letter(T, "b", 2)
    assert tensor_embed(A * B, 2, 2) == a2b2
    T3 = AB.tensor_power(3)
    lhs = tensor_embed(A * B - B * A, 1, 3)
    a1_, b1_ = FreeElement.letter(T3, "a", 1), FreeElement.letter(T3, "b", 1)
    assert lhs == a1_ * b1_ - b1_ * a1_


def test_tensor_embed_bad_factor():
    with pytest.raises(BadFactorIndex):
        tensor_embed(A, 3, 2)


def test_tensor_alphabet_order():
    T = AB.tensor_power(2)
    # factor-1 letters precede factor-2
    assert T.index("d", 1) < T.index("a", 2)


# -- coproduct -------------------------------------------------------------

def matrix_coproduct():
    """The standard coproduct on a, b, c, d (matrix comultiplication)."""
    T = AB.tensor_power(2)

    def t(n1, n2):
        return FreeElement.letter(T, n1, 1) * FreeElement.letter(T, n2, 2)

    images = {
        AB.index("a"): t("a", "a") + t("b", "c"),
        AB.index("b"): t("a", "b") + t("b", "d"),
        AB.index("c"): t("c", "a") + t("d", "c"),
        AB.index("d"): t("c", "b") + t("d", "d"),
    }
    return T, images


def test_coproduct_on_generators():
    T, images = matrix_coproduct()
    got = coproduct_extend(images, A, T)
    t = lambda n1, n2: (FreeElement.letter(T, n1, 1)
                        * FreeElement.letter(T, n2, 2))
    assert got == t("a", "a") + t("b", "c")


def test_coproduct_of_unit():
    T, images = matrix_coproduct()
    assert coproduct_extend(images, FreeElement.unit(AB), T) == FreeElement.unit(T)


def test_coproduct_of_bd_expands_to_four_terms():
    # oracle: multiply the generator images by hand and expand
    T, images = matrix_coproduct()
    lt = lambda n, k: FreeElement.letter(T, n, k)
    expected = (lt("a", 1) * lt("b", 2) * lt("c", 1) * lt("b", 2)
                + lt("a", 1) * lt("b", 2) * lt("d", 1) * lt("d", 2)
                + lt("b", 1) * lt("d", 2) * lt("c", 1) * lt("b", 2)
                + lt("b", 1) * lt("d", 2) * lt("d", 1) * lt("d", 2))
    got = coproduct_extend(images, B * D, T)
    assert got == expected
    assert len(got.terms) == 4


def test_coproduct_is_algebra_map():
    T, images = matrix_coproduct()
    rng = random.Random(13)
    for _ in range(25):
        x, y = _random_element(rng), _random_element(rng)
        dx = coproduct_extend(images, x, T)
        dy = coproduct_extend(images, y, T)
        assert coproduct_extend(images, x * y, T) == dx * dy


def test_coproduct_invariant_under_exchange():
    # (sigma x sigma) Delta(x) == Delta(sigma(x)) after cross-factor sorting
    T, images = matrix_coproduct()
    sigma = exchange_images()
    swap = {"a": "d", "b": "c", "c": "b", "d": "a"}
    tensor_sigma = {T.index(n, k): FreeElement.letter(T, swap[n], k)
                    for n in "abcd" for k in (1, 2)}
    for name in "abcd":
        x = FreeElement.letter(AB, name)
        lhs = apply_gen_map(tensor_sigma, {}, coproduct_extend(images, x, T), T)
        sx = apply_gen_map(sigma, {}, x, AB)
        rhs = coproduct_extend(images, sx, T)
        assert lhs.tensor_sorted() == rhs.tensor_sorted()


def test_counit_extension():
    eps = {AB.index("a"): ONE, AB.index("b"): ZERO,
           AB.index("c"): ZERO, AB.index("d"): ONE}
    rel = A * B - B * A - B * B  # [a,b] - b^2
    assert counit_extend(eps, rel).is_zero()
    assert counit_extend(eps, A * D) == ONE


# -- printing --------------------------------------------------------------

def test_format_element_examples():
    # terms print in descending word order (leading term first)
    assert format_element(D * C + C * C) == "dc + c^2"
    assert format_element(A * B - B * B) == "-b^2 + ab"
    assert format_element(FreeElement.zero(AB)) == "0"
    assert format_element(FreeElement.unit(AB)) == "1"
    assert format_element(2 * A) == "2*a"
    g = Scalar.var("g")
    assert format_element(A.scale(g) - FreeElement.unit(AB)) == "g*a - 1"


def test_format_tensor_element():
    T, images = matrix_coproduct()
    d_a = coproduct_extend(images, A, T)
    assert format_element(d_a) == "b (x) c + a (x) a"
    interleaved = FreeElement(T, {(T.index("b", 2), T.index("a", 1)): ONE})
    assert format_element(interleaved) == "b(2)a(1)"


def _random_element(rng, maxterms=4, maxdeg=3):
    terms = {}
    for _ in range(rng.randint(0, maxterms)):
        w = tuple(rng.randrange(4) for _ in range(rng.randint(0, maxdeg)))
        terms[w] = Scalar.const(rng.randint(-5, 5))
    return FreeElement(AB, terms)
