import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from embedlab.ground import FinSuppEndo
from embedlab.tensor import D, RatOperator, TensorElem, in_En0, letter_operator, parse_tensor, tensor_normalize
from embedlab.words import (
    CopWord,
    cop_inverse,
    cop_multiply,
    cyclic_group,
    format_word,
    parse_word,
    random_word,
    reduce,
    symmetric_group,
)

S3Z4 = {"A": symmetric_group(3), "B": cyclic_group(4)}
S3S3 = {"A": symmetric_group(3), "B": symmetric_group(3)}

s01 = FinSuppEndo.from_cycles([(0, 1)])
c012 = FinSuppEndo.from_cycles([(0, 1, 2)])
c021 = FinSuppEndo.from_cycles([(0, 2, 1)])


def test_reduce_examples():
    assert reduce([("A", s01), ("A", s01)], S3S3) == CopWord()
    assert reduce([("A", s01), ("B", s01)], S3S3) == CopWord((("A", s01), ("B", s01)))
    assert reduce([("A", s01), ("B", c012), ("B", c021), ("A", s01)], S3S3) == CopWord()


def test_multiply_examples():
    u = CopWord((("A", s01), ("B", c012)))
    assert cop_multiply(u, CopWord(), S3S3) == u
    assert cop_multiply(u, cop_inverse(u, S3S3), S3S3) == CopWord()
    lhs = cop_multiply(cop_multiply(CopWord((("A", s01),)), CopWord((("B", c012),)), S3S3), CopWord((("B", c012),)), S3S3)
    assert lhs == CopWord((("A", s01), ("B", c021)))


def raw_words():
    els = {t: list(f.elements) for t, f in S3Z4.items()}
    letter = st.sampled_from("AB").flatmap(lambda t: st.sampled_from(els[t]).map(lambda e: (t, e)))
    return st.lists(letter, max_size=6)


@given(raw_words())
def test_reduce_idempotent_and_reduced(raw):
    w = reduce(raw, S3Z4)
    assert w.is_reduced(S3Z4)
    assert reduce(w.letters, S3Z4) == w


@given(raw_words(), raw_words(), raw_words())
def test_multiply_associative(a, b, c):
    u, v, w = (reduce(x, S3Z4) for x in (a, b, c))
    assert cop_multiply(cop_multiply(u, v, S3Z4), w, S3Z4) == cop_multiply(u, cop_multiply(v, w, S3Z4), S3Z4)


@given(raw_words())
def test_group_words_invertible(a):
    u = reduce(a, S3Z4)
    inv = cop_inverse(u, S3Z4)
    assert cop_multiply(u, inv, S3Z4) == CopWord() == cop_multiply(inv, u, S3Z4)


@given(raw_words())
def test_reduce_agrees_with_evaluation_in_a_product(raw):
    """Reduction respects a homomorphism to S3 x Z4 (each letter mapped into its own factor)."""

    def evaluate(letters):
        g, z = FinSuppEndo(), 0
        for tag, e in letters:
            if tag == "A":
                g = g * e
            else:
                z = (z + e) % 4
        return g, z

    assert evaluate(raw) == evaluate(reduce(raw, S3Z4).letters)


def test_text_round_trip():
    rng = random.Random(0)
    for _ in range(50):
        w = random_word(S3S3, rng.randint(0, 5), rng)
        assert parse_word(format_word(w, S3S3), S3S3) == w


def test_parse_rejects_unknown_tag():
    with pytest.raises(ValueError):
        parse_word("C:(0 1)", S3S3)


# --- tensor words -----------------------------------------------------------------


E10 = RatOperator.unit(1, 0)
E01 = RatOperator.unit(0, 1)


def test_tensor_single_letter():
    x = tensor_normalize([(1, [("A", E10)])])
    assert x.terms == {(("A", (1, 0)),): Fraction(1)}


def test_tensor_same_tag_product_resplits():
    # E(1,0) E(0,1) = E(1,1), which has no component at (0,0)
    x = tensor_normalize([(1, [("A", E10), ("A", E01)])])
    assert x.terms == {(("A", (1, 1)),): Fraction(1)}
    # E(0,1) E(1,0) = E(0,0) = 1 - D
    y = tensor_normalize([(1, [("A", E01), ("A", E10)])])
    assert y.terms == {(): Fraction(1), (("A", D),): Fraction(-1)}


def test_tensor_cancellation():
    x = tensor_normalize([(2, [("A", E10)]), (-2, [("A", E10)])])
    assert x.is_zero()


def test_in_En0_examples():
    assert in_En0(E10)
    assert not in_En0(RatOperator.identity())
    assert not in_En0(RatOperator.unit(0, 0))
    # 1 - E(0,0) sends 0 to zero, so it belongs even with a scalar part
    assert in_En0(RatOperator.identity() - RatOperator.unit(0, 0))


def operators():
    entry = st.tuples(st.integers(0, 2), st.integers(0, 2))
    return st.builds(
        RatOperator,
        st.integers(-2, 2),
        st.dictionaries(entry, st.integers(-2, 2).filter(bool), max_size=3),
    )


def raw_sums():
    letters = st.lists(st.tuples(st.sampled_from("AB"), operators()), max_size=3)
    return st.lists(st.tuples(st.integers(-3, 3), letters), max_size=3)


def _value(x: TensorElem) -> RatOperator:
    """Collapse both tags onto one copy of End(V) and multiply out."""
    total = RatOperator()
    for w, c in x.terms.items():
        op = RatOperator.identity()
        for _, key in w:
            op = op * letter_operator(key)
        total = total + op.scale(c)
    return total


@given(raw_sums(), raw_sums())
def test_tensor_normalize_linear(a, b):
    assert tensor_normalize(a + b) == tensor_normalize(a) + tensor_normalize(b)


@given(raw_sums())
def test_canonical_words_alternate_and_avoid_scalars(raw):
    x = tensor_normalize(raw)
    for w in x.terms:
        assert all(s != t for (s, _), (t, _) in zip(w, w[1:]))
        for _, key in w:
            assert key == D or key != (0, 0)


@given(raw_sums())
def test_normal_form_evaluates_like_the_raw_product(raw):
    """Oracle: multiply the matrices directly and compare with the canonical form's value."""
    direct = RatOperator()
    for coef, letters in raw:
        op = RatOperator.identity()
        for _, f in letters:
            op = op * f
        direct = direct + op.scale(coef)
    assert _value(tensor_normalize(raw)) == direct


def test_parse_tensor():
    x = parse_tensor("2*A:E(1,0)*B:E(0,1) - A:D + 3")
    assert x.terms[(("A", (1, 0)), ("B", (0, 1)))] == 2
    assert x.terms[(("A", D),)] == -1
    assert x.scalar_part() == 3
