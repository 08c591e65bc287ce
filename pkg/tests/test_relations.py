import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from embedlab import relations as rel
from embedlab.ground import FinSuppEndo, LevelPoint
from embedlab.partitions import partition_from_pairs
from embedlab.relations import RelMat
from embedlab.suites import offdiag_pool
from embedlab.sym_witness import pad_with_t
from embedlab.words import CopWord

R2 = list(rel.all_relations(2))


def relmats(n=3):
    return st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n).map(lambda rows: RelMat(n, tuple(rows)))


def brute_compose(x, y):
    return {(q, p) for q, r in x.pairs() for r2, p in y.pairs() if r == r2}


def test_compose_examples():
    x = RelMat.from_pairs(3, [(0, 1)])
    y = RelMat.from_pairs(3, [(1, 2)])
    assert (x * y).pairs() == [(0, 2)]
    assert (y * x).pairs() == []
    one = RelMat.identity(3)
    assert one * x == x == x * one
    assert RelMat.empty(3) * x == RelMat.empty(3)


def test_maps_compose_as_left_actions():
    f, g = FinSuppEndo({0: 1}), FinSuppEndo({1: 2})
    assert RelMat.from_endo(f * g, 3) == RelMat.from_endo(f, 3) * RelMat.from_endo(g, 3)


@given(relmats(), relmats())
def test_compose_matches_brute_force(x, y):
    assert set((x * y).pairs()) == brute_compose(x, y)


def test_associative_exhaustive_rel2():
    for a, b, c in itertools.product(R2, repeat=3):
        assert (a * b) * c == a * (b * c)


@given(relmats(), relmats(), relmats())
def test_associative_sampled_rel3(a, b, c):
    assert (a * b) * c == a * (b * c)


def test_transpose_reverses_products():
    for a, b in itertools.product(R2, repeat=2):
        assert (a * b).transpose() == b.transpose() * a.transpose()


def test_rows_must_fit():
    with pytest.raises(ValueError):
        RelMat(2, (4, 0))


@pytest.mark.parametrize("n,parts", [(3, 3), (4, 7), (5, 15)])
def test_two_class_identity(n, parts):
    r = rel.two_class_identity_check(n)
    assert r.ok
    assert r.partitions == parts and r.ordered_pairs == parts * (parts - 1)


def test_two_class_cube_is_not_full():
    y = RelMat.from_partition(partition_from_pairs(4, [(0, 1), (2, 3)]))
    assert y * y * y == y != RelMat.full(4)


def test_relvsse_chain_strictly_increases():
    chain = rel.relvsse_chain(3)
    assert len(chain) == 3
    assert all(a < b for a, b in zip(chain, chain[1:]))


def test_idempotent_box():
    assert rel.idempotent_box({0}, {0}, 2).pairs() == [(0, 0)]
    g = rel.idempotent_box({0, 1}, {1, 2}, 3)
    assert g * g == g and (1, 1) in g
    with pytest.raises(ValueError):
        rel.idempotent_box({0}, {1}, 2)


def test_theta_examples():
    th = rel.theta_pfim(RelMat.empty(2))
    assert th.pairs() == [(0, s) for s in range(4)]
    subset = rel.theta_pfim(RelMat.identity(2))
    assert set(subset.pairs()) == {(t, s) for t in range(4) for s in range(4) if t & ~s == 0}


def test_theta_homomorphism_exhaustive_rel2():
    th = {g: rel.theta_pfim(g) for g in R2}
    for a, b in itertools.product(R2, repeat=2):
        assert th[a * b] == th[a] * th[b]


def test_theta_counterexample_and_declawed_cure():
    g, h = rel.theta_counterexample(2)
    diff = rel.differing_pairs(rel.theta_pfim(g), rel.theta_pfim(h))
    assert diff and all(q == p for q, p in diff)
    for n in (1, 2):
        imgs = [rel.theta_pfim(rel.declaw(x)).off_diagonal() for x in rel.all_relations(n)]
        assert len(set(imgs)) == len(imgs)


def test_square_embed():
    z = RelMat.from_pairs(2, [(1, 1)])  # point 1 plays the adjoined point
    assert set(rel.square_embed(z).pairs()) == {(2 + i, 2 + j) for i in range(2) for j in range(2)}
    dz = [rel.declaw(g) for g in R2]
    for a, b in itertools.combinations(dz, 2):
        assert rel.square_embed(a).differs_off_diagonal(rel.square_embed(b))
    rng = random.Random(0)
    for _ in range(100):
        a, b = rng.choice(dz), rng.choice(dz)
        assert rel.square_embed(a * b) == rel.square_embed(a) * rel.square_embed(b)


def test_offdiag_phi():
    assert rel.offdiag_phi(RelMat.identity(3)) == RelMat.identity(9)
    for a, b in itertools.combinations(R2, 2):
        if a.off_diagonal().pairs() or b.off_diagonal().pairs():
            assert rel.offdiag_phi(a).differs_off_diagonal(rel.offdiag_phi(b))


@given(relmats(), relmats())
def test_offdiag_phi_homomorphism(a, b):
    assert rel.offdiag_phi(a * b) == rel.offdiag_phi(a) * rel.offdiag_phi(b)


def test_relfin_action():
    assert rel.relfin_action(RelMat.identity(2)).is_identity()
    g = RelMat.from_pairs(2, [(1, 0)])
    f = rel.relfin_action(g)
    assert f(0b01) == 0b10 and f(0b10) == 0
    for a, b in itertools.product(R2, repeat=2):
        assert rel.relfin_action(a * b) == rel.relfin_action(a) * rel.relfin_action(b)


def test_eq_meet_to_se():
    assert rel.eq_meet_to_se({0, 1, 2}, 3).is_identity()
    assert rel.eq_meet_to_se(set(), 1) == FinSuppEndo({1: 0})
    subsets = [frozenset(c) for k in range(4) for c in itertools.combinations(range(3), k)]
    for s, t in itertools.product(subsets, repeat=2):
        assert rel.eq_meet_to_se(s, 3) * rel.eq_meet_to_se(t, 3) == rel.eq_meet_to_se(s & t, 3)
    with pytest.raises(ValueError):
        rel.eq_meet_to_se({5}, 3)


@pytest.mark.parametrize("n", [2, 3])
def test_factorization_exhaustive(n):
    for r in rel.all_relations(n):
        if not r.pairs():
            assert rel.factor_empty(max(n, 2)).pairs() == []
            continue
        fac = rel.factor_relation(r)
        assert set(fac.composite().pairs()) == set(r.pairs())


def test_kse_examples():
    all4 = [FinSuppEndo.from_images(im) for im in itertools.product(range(2), repeat=2)]
    wit = rel.kse_independence(all4)
    assert len(wit.points) <= 2 and len(set(wit.monomials)) == 4
    assert rel.kse_independence([FinSuppEndo()]).points == (0,)
    wit = rel.kse_independence([FinSuppEndo(), FinSuppEndo({1: 0})])
    assert wit.points == (1,) and wit.monomials == ((1,), (0,))
    with pytest.raises(ValueError):
        rel.kse_independence([FinSuppEndo(), FinSuppEndo()])


def test_gzz():
    mon = rel.gzz_build(1)
    assert len(mon) == 4
    assert mon.mul(("g", 1), ("z", 0)) == ("z'", 0)
    assert mon.mul(("z", 0), ("g", 1)) == ("z", 0)
    for m in (1, 2):
        mon = rel.gzz_build(m)
        assert len(mon) == 2**m + 2 * m
        assert mon.is_associative() and mon.has_identity()
        assert rel.cayley_is_faithful_hom(mon)
    with pytest.raises(ValueError):
        rel.gzz_build(0)


# --- doubling witness -----------------------------------------------------------------


def w(*letters):
    return CopWord(tuple(letters))


def test_double_witness_single_letter():
    g = RelMat.from_pairs(3, [(1, 0)])
    wit = rel.rel_double_witness(w(("A", g)), CopWord())
    assert wit.start == LevelPoint(0, 0) and wit.target == LevelPoint(1, 2)
    assert wit.certified


def test_double_witness_one_letter_change():
    a, b = RelMat.from_pairs(3, [(1, 0)]), RelMat.from_pairs(3, [(2, 0)])
    c = RelMat.from_pairs(3, [(0, 2)])
    assert rel.rel_double_witness(w(("A", a), ("B", c)), w(("A", b), ("B", c))).certified


def test_double_witness_random_pairs_against_full_composites():
    """The certified pair is checked again on the whole composite relations."""
    pool = offdiag_pool(3)
    rng = random.Random(7)
    for _ in range(60):
        a, b = (
            w(*((("AB"[(i + s) % 2], rng.choice(pool)) for i in range(rng.randint(0, 3)))))
            for s in (rng.randrange(2), rng.randrange(2))
        )
        if a == b:
            continue
        wit = rel.rel_double_witness(a, b)
        g, h = (b, a) if wit.swapped else (a, b)
        levels = wit.n + 2
        full_g = rel.composite_relation(pad_with_t(g), wit.t, 3, levels)
        full_h = rel.composite_relation(pad_with_t(h, first=g), wit.t, 3, levels)
        assert (wit.target, wit.start) in full_g
        assert (wit.target, wit.start) not in full_h


def test_reflexive_letters_give_reflexive_images():
    pool = offdiag_pool(3, reflexive=True)
    rng = random.Random(1)
    for _ in range(30):
        a = w(*((("AB"[i % 2], rng.choice(pool)) for i in range(rng.randint(1, 3)))))
        wit = rel.rel_double_witness(a, CopWord())
        img = rel.embedded_image(a, wit.t, 3, wit.n + 2)
        assert all((x, x) in img for x, _ in img)


def test_pool_checks():
    with pytest.raises(ValueError):
        rel.check_offdiag_pool([RelMat.identity(2)])
    a = RelMat.from_pairs(2, [(0, 1)])
    with pytest.raises(ValueError):
        rel.check_offdiag_pool([a, a.union(RelMat.identity(2))])
    rel.check_offdiag_pool(offdiag_pool(3))
