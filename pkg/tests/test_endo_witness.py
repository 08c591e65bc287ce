import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from embedlab.endo_witness import (
    LevelVec,
    apply_word,
    build_t_endo,
    compression_ranks,
    endo_witness,
    evaluate_hx,
    orthogonal_idempotent_check,
    rebase,
    select_word,
    sigma_select,
    t_pairs,
    vandermonde_embed,
)
from embedlab.ground import LevelPoint
from embedlab.linalg import rank
from embedlab.suites import random_tensor
from embedlab.tensor import RatOperator, TensorElem, parse_tensor


def lv(*pk):
    return LevelVec.basis(*pk)


def test_single_letter_witness():
    wit = endo_witness(parse_tensor("A:E(1,0)"))
    assert wit.word == (("A", (1, 0)),)
    assert wit.top == lv(1, 2)
    assert endo_witness(parse_tensor("3*A:E(1,0)")).top == lv(1, 2).scale(3)


def test_word_selection_examples():
    wit = endo_witness(parse_tensor("A:E(1,1) + A:E(2,1)*B:E(1,0)"))
    assert [k for _, k in wit.word] == [(2, 1), (1, 0)]
    assert [k for _, k in endo_witness(parse_tensor("A:E(1,1) + A:E(2,1)")).word] == [(2, 1)]
    assert [k for _, k in endo_witness(parse_tensor("A:D")).word] == [(1, 1)]


def test_scalar_witness():
    wit = endo_witness(TensorElem.scalar(2))
    assert wit.n == 0 and wit.word == ()
    assert wit.top == lv(0, 0).scale(2)


def test_zero_rejected():
    with pytest.raises(ValueError):
        endo_witness(TensorElem())


def test_sigma_contains_indices_and_preserves_rank():
    rng = random.Random(2)
    for _ in range(50):
        x = random_tensor(rng)
        if x.is_zero():
            continue
        sigma = sigma_select(x)
        assert 0 in sigma and x.indices() <= sigma
        full, compressed = compression_ranks(x, sigma)
        assert full == compressed


def test_select_word_prefers_off_diagonal_and_max_length():
    rebased = {
        (("A", (1, 1)),): Fraction(1),
        (("A", (2, 1)),): Fraction(1),
        (("B", (1, 0)),): Fraction(5),
    }
    assert select_word(rebased) == (("B", (1, 0)),)
    longer = {**rebased, (("A", (1, 1)), ("B", (2, 2))): Fraction(1)}
    assert select_word(longer) == (("A", (1, 1)), ("B", (2, 2)))
    with pytest.raises(ValueError):
        select_word({})


def test_rebase_expands_D():
    x = parse_tensor("A:D")
    out = rebase(x, {0, 1, 2})
    assert out[(("A", (1, 1)),)] == 1 and out[(("A", (2, 2)),)] == 1
    assert (("A", (0, 0)),) not in out


def words_strategy():
    keys = [(q, p) for q in range(4) for p in range(4) if (q, p) != (0, 0)]
    return st.tuples(st.sampled_from("AB"), st.lists(st.sampled_from(keys), min_size=1, max_size=4)).map(
        lambda tk: tuple(("AB"[("AB".index(tk[0]) + i) % 2], k) for i, k in enumerate(tk[1]))
    )


@given(words_strategy())
def test_t_is_integral_involution(word):
    t = build_t_endo(word)
    assert t.is_involution() and t.integral()
    assert len(t_pairs(word)) == len(word) + 1
    # far away points are fixed
    assert t(lv(9, 0)) == lv(9, 0)


def test_t_for_diagonal_letter():
    t = build_t_endo((("A", (1, 1)),))
    assert t.is_involution() and t.integral()
    assert t(lv(1, 0)) == lv(1, 1) + lv(0, 1)
    with pytest.raises(ValueError):
        build_t_endo((("A", (0, 0)),))


@given(words_strategy())
def test_selected_word_alone_is_certified(word):
    x = TensorElem({word: Fraction(1)})
    wit = endo_witness(x)
    assert wit.word == word
    assert wit.top.max_level() == len(word) + 1


def test_random_tensors_are_certified():
    rng = random.Random(11)
    seen = 0
    for _ in range(150):
        x = random_tensor(rng)
        if x.is_zero():
            continue
        seen += 1
        wit = endo_witness(x)
        assert wit.certified
        assert wit.result == evaluate_hx(x, wit.t, wit.word)
        assert all(pt.k == wit.n + 1 for pt in wit.top.entries) or wit.n == 0
    assert seen > 100


def _alternating(rng, length):
    keys = [(q, p) for q in range(3) for p in range(3) if (q, p) != (0, 0)]
    tag = rng.choice("AB")
    out = []
    for _ in range(length):
        out.append((tag, rng.choice(keys)))
        tag = "B" if tag == "A" else "A"
    return tuple(out)


@pytest.mark.parametrize("seed", range(3))
def test_sampled_words_independent_under_their_witness_maps(seed):
    """Distinct basis words act independently on the sum of the witness representations.

    For any nonzero combination the construction certifies it with the map
    built from its selected word, which is one of the sampled words; so the
    maps built from the sampled words already give full row rank.
    """
    rng = random.Random(seed)
    words = set()
    while len(words) < 12:
        words.add(_alternating(rng, rng.randint(1, 3)))
    words = sorted(words)
    maps = [build_t_endo(w) for w in words]
    pts = [LevelPoint(p, k) for p in range(3) for k in range(5)]
    rows = []
    for w in words:
        row = []
        for t, x in itertools.product(maps, pts):
            v = apply_word(w, t, lv(*x))
            row.extend(v.entries.get(y, 0) for y in pts)
        rows.append(row)
    assert rank(rows) == len(words)


def test_vandermonde_examples():
    rows = vandermonde_embed([0, 1, 2], 3)
    assert rows == [[1, 0, 0], [1, 1, 1], [1, 2, 4]]
    assert rank(rows) == 3
    with pytest.raises(ValueError):
        vandermonde_embed([1, 1], 2)
    with pytest.raises(ValueError):
        vandermonde_embed([1, 2, 3], 2)


@given(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=1, max_size=6, unique=True))
def test_vandermonde_full_rank(vals):
    assert rank(vandermonde_embed(vals, len(vals))) == len(vals)


@given(st.fractions(-5, 5, max_denominator=4), st.fractions(-5, 5, max_denominator=4), st.integers(1, 8))
def test_vandermonde_rows_multiplicative(a, b, m):
    (ra,), (rb,), (rab,) = (vandermonde_embed([v], m) for v in (a, b, a * b))
    assert [x * y for x, y in zip(ra, rb)] == rab


def test_orthogonal_idempotents():
    e00, e11, e10 = RatOperator.unit(0, 0), RatOperator.unit(1, 1), RatOperator.unit(1, 0)
    assert orthogonal_idempotent_check([e00, e11])
    assert not orthogonal_idempotent_check([e00, e00])
    assert not orthogonal_idempotent_check([e10])
    assert not orthogonal_idempotent_check([RatOperator()])
