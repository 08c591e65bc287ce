import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from embedlab.ground import FinSuppEndo
from embedlab.path_product import (
    CASE_DELETE,
    CASE_EXTEND,
    CASE_FIXED,
    CASE_REPLACE,
    PathFactors,
    all_paths,
    faithful_all_pairs,
    faithful_witness,
    in_adapted,
    is_path,
    natural_mset,
    noncancellative_control,
    partial_products,
    path_act,
    path_act_case,
    phi_j,
    phi_j_inverse,
    separating_point,
    strong_closure,
    transported_act,
    word_act,
)
from embedlab.words import CopWord, all_words, full_transformation_monoid, reduce, symmetric_group

swap = FinSuppEndo.from_cycles([(0, 1)])
TWO = [natural_mset(2), natural_mset(2)]
S3 = symmetric_group(3)


def test_swap_example():
    x = ((0, 0),)
    gx, case = path_act_case(0, swap, x, TWO)
    assert gx == ((0, 0), (1, 0)) and case == CASE_EXTEND
    ggx, case = path_act_case(0, swap, gx, TWO)
    assert ggx == x and case == CASE_DELETE
    assert path_act_case(0, FinSuppEndo(), x, TWO) == (x, CASE_FIXED)


def test_replace_case_needs_three_values():
    m3 = [natural_mset(3), natural_mset(3)]
    x = ((0, 0), (1, 0))
    gx, case = path_act_case(0, FinSuppEndo({1: 2}), x, m3)
    assert (gx, case) == (((0, 0), (2, 0)), CASE_REPLACE)


def test_is_path():
    assert is_path(((0, 0), (1, 0), (1, 1)))
    assert not is_path(((0, 0), (1, 0), (0, 0)))  # same coordinate twice
    assert not is_path(((0, 0), (1, 1)))
    assert not is_path(())


def test_phi_examples():
    x = ((0, 0), (1, 0))
    assert phi_j(x, 0) == x
    assert phi_j(x, 1) == ((0, 0), (1, 0), (1, 0))


PATHS2 = list(all_paths([(0, 1), (0, 1)], 3))
T2 = list(full_transformation_monoid(2).elements)


def test_all_paths_valid_and_distinct():
    assert all(is_path(x) for x in PATHS2)
    assert len(set(PATHS2)) == len(PATHS2)
    # 4 starts, then 2 choices of coordinate, then 1 each step
    assert len(PATHS2) == 4 + 8 + 8


def test_phi_round_trip_exhaustive():
    for x, j in itertools.product(PATHS2, range(2)):
        y = phi_j(x, j)
        assert in_adapted(y, j)
        assert phi_j_inverse(y, j) == x


def test_action_laws_exhaustive():
    cases = set()
    for x, j in itertools.product(PATHS2, range(2)):
        assert path_act(j, FinSuppEndo(), x, TWO) == x
        for g, h in itertools.product(T2, repeat=2):
            assert path_act(j, g * h, x, TWO) == path_act(j, g, path_act(j, h, x, TWO), TWO)
        for g in T2:
            gx, case = path_act_case(j, g, x, TWO)
            cases.add(case)
            assert is_path(gx)
            assert transported_act(j, g, x, TWO) == gx
    assert cases == {CASE_FIXED, CASE_EXTEND, CASE_DELETE}


def test_action_laws_on_three_point_carriers_hit_every_case():
    m3 = [natural_mset(3), natural_mset(3)]
    t3 = list(full_transformation_monoid(3).elements)
    paths = list(all_paths([(0, 1, 2), (0, 1, 2)], 2))
    cases = set()
    for x, j in itertools.product(paths, range(2)):
        for g in t3:
            gx, case = path_act_case(j, g, x, m3)
            cases.add(case)
            assert transported_act(j, g, x, m3) == gx
        for g, h in itertools.product(t3[::3], repeat=2):
            assert path_act(j, g * h, x, m3) == path_act(j, g, path_act(j, h, x, m3), m3)
    assert cases == {CASE_FIXED, CASE_EXTEND, CASE_REPLACE, CASE_DELETE}


def test_closure_depth_two_separates_small_lists():
    closed = strong_closure(natural_mset(3), 2)
    els = list(S3.elements)
    for k in range(1, 4):
        for fam in itertools.combinations(els, k):
            y = separating_point(closed, fam)
            assert y is not None
            assert len({closed.act(g, y) for g in fam}) == k


def test_closure_depth_zero_separates_nothing():
    closed = strong_closure(natural_mset(3), 0)
    assert closed.points == ((0, ()),)
    assert separating_point(closed, [FinSuppEndo(), swap]) is None
    assert separating_point(closed, [FinSuppEndo()]) == (0, ())
    with pytest.raises(ValueError):
        strong_closure(natural_mset(3), -1)


@pytest.fixture(scope="module")
def pf():
    fac = {"A": S3, "B": S3}
    return PathFactors(fac, {"A": natural_mset(3), "B": natural_mset(3)}, 2)


def test_witness_examples(pf):
    w = faithful_witness(CopWord((("A", swap),)), CopWord(), pf)
    assert len(w.x) == 1 and len(w.gx) == 2 and len(w.hx) == 1
    c = FinSuppEndo.from_cycles([(0, 1, 2)])
    w = faithful_witness(CopWord((("A", swap), ("B", c))), CopWord((("B", c), ("A", swap))), pf)
    assert w.separates
    w = faithful_witness(CopWord((("A", swap),)), CopWord((("A", c),)), pf)
    y = w.x[0][pf.index["A"]]
    assert pf.closures[pf.index["A"]].act(swap, y) != pf.closures[pf.index["A"]].act(c, y)
    with pytest.raises(ValueError):
        faithful_witness(CopWord(), CopWord(), pf)


def test_witness_raises_when_depth_too_small():
    shallow = PathFactors({"A": S3, "B": S3}, {"A": natural_mset(3), "B": natural_mset(3)}, 0)
    with pytest.raises(LookupError):
        faithful_witness(CopWord((("A", swap),)), CopWord(), shallow)


def test_partial_products():
    c = FinSuppEndo.from_cycles([(0, 1, 2)])
    w = CopWord((("A", swap), ("B", c), ("A", c)))
    assert partial_products(w, "A", S3) == [FinSuppEndo(), c, swap * c]
    assert partial_products(w, "B", S3) == [FinSuppEndo(), c]


def test_unreduced_words_act_like_their_reduction(pf):
    rng = random.Random(4)
    els = list(S3.elements)
    pts = pf.closures[0].points
    for _ in range(100):
        raw = [(rng.choice("AB"), rng.choice(els)) for _ in range(rng.randint(0, 6))]
        x = ((rng.choice(pts), rng.choice(pts)),)
        reduced = reduce(raw, {"A": S3, "B": S3})
        assert word_act(raw, x, pf.index, pf.msets) == pf.evaluate(reduced, x)


def test_all_pairs_separated_short_words(pf):
    words = all_words({"A": S3, "B": S3}, 2)
    sweep = faithful_all_pairs(words, pf)
    assert sweep.failures == 0
    assert sweep.pairs == len(words) * (len(words) - 1) // 2


def test_sweep_agrees_with_single_pair_witness(pf):
    words = all_words({"A": S3, "B": S3}, 2)
    for a, b in itertools.islice(itertools.combinations(words, 2), 0, None, 17):
        assert faithful_witness(a, b, pf).separates


def test_noncancellative_control():
    a = FinSuppEndo.from_images([0, 0, 1])
    b = FinSuppEndo.from_images([0, 2, 2])
    c = FinSuppEndo.from_images([0, 0, 0])
    assert a != b and a * c == b * c
    same, count = noncancellative_control(a, b, c, swap, [natural_mset(3), natural_mset(2)], 4)
    assert same and count > 50


def test_control_detects_genuinely_different_words():
    # a and b differ after c = identity, so some path must tell them apart
    a = FinSuppEndo.from_images([0, 0, 1])
    b = FinSuppEndo.from_images([0, 2, 2])
    same, _ = noncancellative_control(a, b, FinSuppEndo(), swap, [natural_mset(3), natural_mset(2)], 3)
    assert not same


@given(st.lists(st.tuples(st.sampled_from([0, 1]), st.sampled_from(range(len(T2)))), max_size=6))
def test_actions_stay_paths(steps):
    x = ((0, 0),)
    for j, gi in steps:
        x = path_act(j, T2[gi], x, TWO)
        assert is_path(x)
