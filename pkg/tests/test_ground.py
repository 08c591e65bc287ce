import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import endos, perms
from embedlab.ground import (
    FinSuppEndo,
    LevelInvolution,
    LevelPoint,
    apply_involution,
    block_product_embed,
    compose,
    eval_endo,
    is_permutation,
)


def test_eval_examples():
    assert eval_endo(FinSuppEndo(), 7) == 7
    assert eval_endo(FinSuppEndo({0: 1, 1: 0}), 0) == 1
    assert eval_endo(FinSuppEndo({0: 1, 1: 2}), 1) == 2


def test_table_is_minimal():
    f = FinSuppEndo({0: 0, 1: 2, 3: 3})
    assert f.table == {1: 2}
    assert f == FinSuppEndo({1: 2})


def test_compose_examples():
    g = FinSuppEndo({3: 1, 1: 4})
    assert compose(FinSuppEndo(), g) == g
    swap = FinSuppEndo({0: 1, 1: 0})
    assert compose(swap, swap).is_identity()
    assert compose(FinSuppEndo({1: 2}), FinSuppEndo({0: 1})) == FinSuppEndo({0: 2, 1: 2})


def test_is_permutation_examples():
    assert is_permutation(FinSuppEndo({0: 1, 1: 0}))
    assert not is_permutation(FinSuppEndo({0: 1}))
    assert is_permutation(FinSuppEndo())


def test_negative_points_rejected():
    with pytest.raises(ValueError):
        FinSuppEndo({-1: 0})


@given(endos(), endos(), st.integers(0, 10))
def test_compose_is_pointwise(f, g, p):
    assert compose(f, g)(p) == f(g(p))


def test_associativity_exhaustive_on_pool():
    rng = random.Random(3)
    pool = [FinSuppEndo.from_images([rng.randrange(4) for _ in range(4)]) for _ in range(20)]
    for f, g, h in itertools.product(pool, repeat=3):
        assert (f * g) * h == f * (g * h)


@given(perms(), perms())
def test_permutations_closed_and_invertible(f, g):
    fg = compose(f, g)
    assert is_permutation(fg)
    assert (fg * fg.inverse()).is_identity()
    assert (fg.inverse() * fg).is_identity()


def test_inverse_of_non_permutation_rejected():
    with pytest.raises(ValueError):
        FinSuppEndo({0: 1}).inverse()


def test_block_embed_examples():
    blocks = [{0, 1}, {2, 3}]
    swap01 = FinSuppEndo({0: 1, 1: 0})
    swap23 = FinSuppEndo({2: 3, 3: 2})
    assert block_product_embed(blocks, [swap01, FinSuppEndo()]) == swap01
    assert block_product_embed(blocks, [FinSuppEndo(), FinSuppEndo()]).is_identity()
    assert block_product_embed(blocks, [swap01, swap23]) == FinSuppEndo({0: 1, 1: 0, 2: 3, 3: 2})


def test_block_embed_rejects_escaping_map():
    with pytest.raises(ValueError):
        block_product_embed([{0, 1}, {2, 3}], [FinSuppEndo({0: 2}), FinSuppEndo()])


def test_block_embed_injective_and_multiplicative_exhaustive():
    blocks = [(0, 1), (2, 3)]
    left = [FinSuppEndo.from_images(im) for im in itertools.product(range(2), repeat=2)]
    right = [FinSuppEndo({2 + k: 2 + v for k, v in f.table.items()}) for f in left]
    pairs = list(itertools.product(left, right))
    images = {block_product_embed(blocks, [a, b]) for a, b in pairs}
    assert len(images) == len(pairs)
    for (a, b), (c, d) in itertools.product(pairs, repeat=2):
        lhs = block_product_embed(blocks, [a, b]) * block_product_embed(blocks, [c, d])
        assert lhs == block_product_embed(blocks, [a * c, b * d])


def test_involution_examples():
    t = LevelInvolution((((0, 0), (0, 1)),))
    assert apply_involution(t, LevelPoint(0, 0)) == LevelPoint(0, 1)
    assert apply_involution(t, LevelPoint(5, 3)) == LevelPoint(5, 3)


def test_involution_rejects_overlapping_pairs():
    with pytest.raises(ValueError):
        LevelInvolution((((0, 0), (0, 1)), ((0, 1), (1, 1))))


@given(st.integers(0, 4), st.integers(0, 4))
def test_involution_squares_to_identity(p, k):
    t = LevelInvolution((((0, 0), (0, 1)), ((1, 1), (1, 2)), ((2, 2), (3, 3))))
    x = LevelPoint(p, k)
    assert t(t(x)) == x


def test_endo_json_round_trip():
    f = FinSuppEndo({4: 0, 1: 3})
    assert f.to_pairs() == [[1, 3], [4, 0]]
    assert FinSuppEndo.from_pairs(f.to_pairs()) == f
