"""Binary relations on a finite set under relational composition.

A pair ``(q, p)`` in a relation is read "p goes to q", so a map ``f`` is the
relation ``{(f(p), p)}`` and composition matches left actions:
``x y = {(q, p) : (q, r) in x and (r, p) in y for some r}``.
Relations are stored as row bitmasks: bit ``p`` of ``rows[q]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .ground import FinSuppEndo, LevelInvolution, LevelPoint
from .partitions import Partition, all_partitions
from .sym_witness import pad_with_t
from .words import CopWord, Factor


@dataclass(frozen=True, order=True)
class RelMat:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n or any(r >> self.n for r in self.rows):
            raise ValueError("rows do not fit the ground set")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "RelMat":
        rows = [0] * n
        for q, p in pairs:
            rows[q] |= 1 << p
        return cls(n, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "RelMat":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def empty(cls, n: int) -> "RelMat":
        return cls(n, (0,) * n)

    @classmethod
    def full(cls, n: int) -> "RelMat":
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def from_endo(cls, f: FinSuppEndo, n: int) -> "RelMat":
        return cls.from_pairs(n, ((f(p), p) for p in range(n)))

    @classmethod
    def from_partition(cls, part: Partition) -> "RelMat":
        return cls.from_pairs(part.n, part.pairs())

    def pairs(self) -> list[tuple[int, int]]:
        return [(q, p) for q, row in enumerate(self.rows) for p in range(self.n) if row >> p & 1]

    def __contains__(self, pair) -> bool:
        q, p = pair
        return bool(self.rows[q] >> p & 1)

    def __mul__(self, other: "RelMat") -> "RelMat":
        return rel_compose(self, other)

    def transpose(self) -> "RelMat":
        return RelMat.from_pairs(self.n, ((p, q) for q, p in self.pairs()))

    def union(self, other: "RelMat") -> "RelMat":
        return RelMat(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def off_diagonal(self) -> "RelMat":
        return RelMat(self.n, tuple(r & ~(1 << q) for q, r in enumerate(self.rows)))

    def differs_off_diagonal(self, other: "RelMat") -> bool:
        return self.off_diagonal() != other.off_diagonal()

    def is_reflexive(self) -> bool:
        return all(r >> q & 1 for q, r in enumerate(self.rows))

    def is_idempotent(self) -> bool:
        return self * self == self

    def image(self, mask: int) -> int:
        """``g X`` for the subset with bitmask ``mask``: everything some member goes to."""
        out = 0
        for q, row in enumerate(self.rows):
            if row & mask:
                out |= 1 << q
        return out

    def __str__(self) -> str:
        return "{" + ", ".join(f"({q},{p})" for q, p in self.pairs()) + "}"


def rel_compose(x: RelMat, y: RelMat) -> RelMat:
    if x.n != y.n:
        raise ValueError("relations live on different sets")
    rows = []
    for row in x.rows:
        acc = 0
        r = 0
        while row:
            if row & 1:
                acc |= y.rows[r]
            row >>= 1
            r += 1
        rows.append(acc)
    return RelMat(x.n, tuple(rows))


def all_relations(n: int) -> Iterator[RelMat]:
    for rows in itertools.product(range(1 << n), repeat=n):
        yield RelMat(n, rows)


def rel_monoid(n: int, name: str = "Rel") -> Factor:
    return Factor(name=name, multiply=rel_compose, identity=RelMat.identity(n))


# --- two-class equivalence relations ------------------------------------------------


def two_class_partitions(n: int) -> list[Partition]:
    return [p for p in all_partitions(n) if p.num_blocks() == 2]


@dataclass(frozen=True)
class TwoClassReport:
    n: int
    partitions: int
    ordered_pairs: int
    idempotent_ok: int
    cube_not_full_ok: int
    triple_full_ok: int

    @property
    def ok(self) -> bool:
        return (
            self.idempotent_ok == self.partitions
            and self.cube_not_full_ok == self.partitions
            and self.triple_full_ok == self.ordered_pairs
        )


def two_class_identity_check(n: int) -> TwoClassReport:
    """``y y = y`` (so ``y y y != w``) and ``y_i y_j y_i = w`` for all two-class ``y``."""
    if n < 3:
        raise ValueError("need n >= 3")
    ys = [RelMat.from_partition(p) for p in two_class_partitions(n)]
    w = RelMat.full(n)
    idem = sum(y * y == y for y in ys)
    cube = sum(y * y * y != w for y in ys)
    pairs = [(a, b) for a in ys for b in ys if a != b]
    triple = sum(a * b * a == w for a, b in pairs)
    return TwoClassReport(n, len(ys), len(pairs), idem, cube, triple)


def relvsse_chain(n: int) -> list[frozenset[RelMat]]:
    """Solution sets ``S_a = {x : y_b x y_b = w for every b > a}`` over all of Rel(n).

    The two-class relations are listed in a fixed order; ``S_a`` contains
    ``y_c`` exactly for ``c <= a``, so the chain strictly increases.
    """
    ys = [RelMat.from_partition(p) for p in two_class_partitions(n)]
    w = RelMat.full(n)
    rels = list(all_relations(n))
    hits = [frozenset(x for x in rels if y * x * y == w) for y in ys]
    out = []
    for a in range(len(ys)):
        s = frozenset(rels)
        for b in range(a + 1, len(ys)):
            s &= hits[b]
        out.append(s)
    return out


def idempotent_box(xs: Iterable[int], ys: Iterable[int], n: int) -> RelMat:
    xs, ys = set(xs), set(ys)
    if not xs & ys:
        raise ValueError("X and Y must meet")
    g = RelMat.from_pairs(n, ((q, p) for q in xs for p in ys))
    assert g.is_idempotent()
    return g


# --- maps into relations on bigger sets -------------------------------------------------


def theta_pfim(g: RelMat) -> RelMat:
    """Relation on the subsets (as bitmasks): ``(t, s)`` iff ``t`` is inside ``g s``."""
    size = 1 << g.n
    rows = []
    for t in range(size):
        row = 0
        for s in range(size):
            if t & ~g.image(s) == 0:
                row |= 1 << s
        rows.append(row)
    return RelMat(size, tuple(rows))


def declaw(g: RelMat) -> RelMat:
    """Adjoin a new point ``z = n`` related only to itself."""
    return RelMat(g.n + 1, (*g.rows, 1 << g.n))


def theta_counterexample(n: int, p: int = 0) -> tuple[RelMat, RelMat]:
    """``{p} x all`` and ``{p} x (all - {p})``: their images differ only at a diagonal pair."""
    everything = (1 << n) - 1
    g = RelMat(n, tuple(everything if q == p else 0 for q in range(n)))
    h = RelMat(n, tuple(everything & ~(1 << p) if q == p else 0 for q in range(n)))
    return g, h


def differing_pairs(a: RelMat, b: RelMat) -> list[tuple[int, int]]:
    return sorted(set(a.pairs()) ^ set(b.pairs()))


def square_embed(g: RelMat) -> RelMat:
    """Relation on ``points x 2`` (``(x, i)`` is ``2x + i``) relating every copy of each pair."""
    return RelMat.from_pairs(
        2 * g.n, ((2 * q + i, 2 * p + j) for q, p in g.pairs() for i in range(2) for j in range(2))
    )


def offdiag_phi(g: RelMat) -> RelMat:
    """Relation on ordered pairs (``(p, p')`` is ``p n + p'``) from pairs of pairs of ``g``."""
    n = g.n
    prs = g.pairs()
    return RelMat.from_pairs(
        n * n, ((p * n + p2, q * n + q2) for p, q in prs for p2, q2 in prs)
    )


def relfin_action(g: RelMat) -> FinSuppEndo:
    """The induced map ``X -> g X`` on subsets, as an endomap of bitmasks."""
    return FinSuppEndo.from_images([g.image(x) for x in range(1 << g.n)])


def eq_meet_to_se(s: Iterable[int], n: int) -> FinSuppEndo:
    """Endomap of ``{0..n-1} x 2`` (``(p, i)`` is ``2p + i``) recording the subset ``s``.

    Fixes every ``(p, 0)`` and every ``(p, 1)`` with ``p`` in ``s``; other
    ``(p, 1)`` drop to ``(p, 0)``.  Composition corresponds to intersection.
    """
    s = set(s)
    if any(not 0 <= p < n for p in s):
        raise ValueError("subset outside the ground set")
    return FinSuppEndo({2 * p + 1: 2 * p for p in range(n) if p not in s})


@dataclass(frozen=True)
class Factorization:
    f: FinSuppEndo
    g: FinSuppEndo
    size: int  # padded ground set

    def composite(self) -> RelMat:
        f = RelMat.from_endo(self.f, self.size)
        gbar = RelMat.from_endo(self.g, self.size).transpose()
        return f * gbar


def factor_relation(r: RelMat) -> Factorization:
    """Maps ``f, g`` on a padded ground set with ``r = f gbar``, ``gbar = {(p, g(p))}``.

    Point ``i`` of the padded set carries the ``i``-th pair of ``r`` (the last
    pair repeats).  The empty relation uses two maps with disjoint ranges in
    the other order, ``fbar g``; that case is reported with ``f`` and ``g`` swapped roles
    by :func:`factor_empty`.
    """
    prs = r.pairs()
    if not prs:
        raise ValueError("use factor_empty for the empty relation")
    size = max(r.n, len(prs))
    pick = [prs[min(i, len(prs) - 1)] for i in range(size)]
    fac = Factorization(
        FinSuppEndo.from_images([q for q, _ in pick]),
        FinSuppEndo.from_images([p for _, p in pick]),
        size,
    )
    padded = RelMat.from_pairs(size, prs)
    if fac.composite() != padded:
        raise AssertionError("factorization failed")
    return fac


def factor_empty(n: int) -> RelMat:
    """``fbar g`` for two maps with disjoint ranges; it is empty."""
    if n < 2:
        raise ValueError("need two points")
    f = RelMat.from_endo(FinSuppEndo.from_images([0] * n), n)
    g = RelMat.from_endo(FinSuppEndo.from_images([1] * n), n)
    return f.transpose() * g


# --- monomial separation for monoid algebras ----------------------------------------


@dataclass(frozen=True)
class MonomialWitness:
    points: tuple[int, ...]
    monomials: tuple[tuple[int, ...], ...]


def kse_independence(gs: Sequence[FinSuppEndo]) -> MonomialWitness:
    """Points ``p_1..p_m`` whose monomial has pairwise distinct images under ``gs``.

    Greedy: repeatedly take the point splitting the most classes (least point
    on ties).  At least one point is always used.
    """
    gs = list(gs)
    if len(set(gs)) != len(gs):
        raise ValueError("maps must be distinct")
    dom = sorted(set().union(*(g.support() for g in gs)) | {0})
    points: list[int] = []

    def classes(pts):
        return len({tuple(g(p) for p in pts) for g in gs})

    while not points or classes(points) < len(gs):
        best = max(dom, key=lambda p: (classes(points + [p]), -p))
        if points and classes(points + [best]) == classes(points):
            raise AssertionError("no point splits the remaining classes")
        points.append(best)
    monos = tuple(tuple(g(p) for p in points) for g in gs)
    return MonomialWitness(tuple(points), monos)


# --- finite monoids -------------------------------------------------------------------


class FiniteMonoid:
    """Finite monoid given by its elements and a multiplication function."""

    def __init__(self, elements: Sequence[Hashable], multiply: Callable, identity: Hashable):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.identity = identity
        self.table = [[self.index[multiply(a, b)] for b in self.elements] for a in self.elements]

    def mul(self, a, b):
        return self.elements[self.table[self.index[a]][self.index[b]]]

    def __len__(self) -> int:
        return len(self.elements)

    def is_associative(self) -> bool:
        t = self.table
        r = range(len(self.elements))
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r)

    def has_identity(self) -> bool:
        e = self.index[self.identity]
        return all(self.table[e][a] == a == self.table[a][e] for a in range(len(self.elements)))


def gzz_build(m: int) -> FiniteMonoid:
    """``(Z_2)^m`` (bit vectors) plus left zeros ``z_i, z'_i`` swapped by generator ``i``."""
    if m < 1:
        raise ValueError("m must be positive")
    group = [("g", v) for v in range(1 << m)]
    zeros = [(kind, i) for i in range(m) for kind in ("z", "z'")]

    def mul(a, b):
        if a[0] != "g":
            return a  # left zero
        if b[0] == "g":
            return ("g", a[1] ^ b[1])
        kind, i = b
        if a[1] >> i & 1:
            return ("z'" if kind == "z" else "z", i)
        return b

    mon = FiniteMonoid(group + zeros, mul, ("g", 0))
    if m <= 3 and not mon.is_associative():
        raise AssertionError("multiplication is not associative")
    return mon


def cayley_embed(mon: FiniteMonoid) -> list[FinSuppEndo]:
    """Left regular representation on element indices: ``a -> (x -> a x)``."""
    return [FinSuppEndo.from_images(mon.table[a]) for a in range(len(mon))]


def cayley_is_faithful_hom(mon: FiniteMonoid) -> bool:
    maps = cayley_embed(mon)
    if len(set(maps)) != len(maps):
        return False
    r = range(len(mon))
    return all(maps[a] * maps[b] == maps[mon.table[a][b]] for a in r for b in r)


# --- doubling witness for relations -------------------------------------------------------


def _nondiag(g: RelMat) -> list[tuple[int, int]]:
    return [(q, p) for q, p in g.pairs() if q != p]


def _rightmost_first(w: CopWord):
    return list(reversed(w.letters))


def orient_rel_pair(gw: CopWord, hw: CopWord) -> tuple[CopWord, CopWord, bool]:
    if gw == hw:
        raise ValueError("words must be distinct")
    if len(gw) != len(hw):
        return (gw, hw, False) if len(gw) > len(hw) else (hw, gw, True)
    if gw.tags != hw.tags:
        return gw, hw, False
    for (_, a), (_, b) in zip(_rightmost_first(gw), _rightmost_first(hw)):
        if a != b:
            if not a.differs_off_diagonal(b):
                raise ValueError("letters are not distinguishable off the diagonal")
            if set(_nondiag(a)) - set(b.pairs()):
                return gw, hw, False
            return hw, gw, True
    raise AssertionError("unreachable")


def choose_rel_pairs(gw: CopWord, hw: CopWord) -> list[tuple[int, int]]:
    g = _rightmost_first(gw)
    h = _rightmost_first(hw) if len(gw) == len(hw) and gw.tags == hw.tags else []
    out = []
    for k, (_, gk) in enumerate(g):
        cands = _nondiag(gk)
        if not cands:
            raise ValueError(f"letter {k + 1} has no pair off the diagonal")
        if h:
            fresh = [pr for pr in cands if pr not in h[k][1]]
            if fresh:
                cands = fresh
        out.append(cands[0])
    return out


def rel_involution(pairs: Sequence[tuple[int, int]]) -> LevelInvolution:
    n = len(pairs)
    if n == 0:
        return LevelInvolution(())
    q = [pr[0] for pr in pairs]
    p = [pr[1] for pr in pairs]
    out = [(LevelPoint(p[0], 0), LevelPoint(p[0], 1))]
    for k in range(1, n):
        out.append((LevelPoint(q[k - 1], k), LevelPoint(p[k], k + 1)))
    out.append((LevelPoint(q[-1], n), LevelPoint(q[-1], n + 1)))
    return LevelInvolution(tuple(out))


def rel_image(seq, t: LevelInvolution, start: Iterable[LevelPoint]) -> frozenset[LevelPoint]:
    """Everything the padded product relates to ``start`` (read right to left)."""
    cur = set(start)
    for step in reversed(seq):
        if isinstance(step, str):
            cur = {t(x) for x in cur}
        else:
            cur = {LevelPoint(q, x.k) for x in cur for q in range(step.n) if step.rows[q] >> x.p & 1}
    return frozenset(cur)


@dataclass(frozen=True)
class RelWitness:
    t: LevelInvolution
    start: LevelPoint
    target: LevelPoint
    pairs: tuple
    image_g: frozenset
    image_h: frozenset
    swapped: bool
    n: int

    @property
    def certified(self) -> bool:
        return self.target in self.image_g and self.target not in self.image_h

    def to_json(self) -> dict:
        return {
            "t": self.t.to_json(),
            "start": list(self.start),
            "target": list(self.target),
            "pairs": [list(pr) for pr in self.pairs],
            "swapped": self.swapped,
            "n": self.n,
        }


def rel_double_witness(gw: CopWord, hw: CopWord) -> RelWitness:
    """``((q_n, n+1), (p_1, 0))`` lies in the first composite and not the second."""
    g, h, swapped = orient_rel_pair(gw, hw)
    prs = choose_rel_pairs(g, h)
    t = rel_involution(prs)
    n = len(prs)
    start = LevelPoint(prs[0][1], 0)
    target = LevelPoint(prs[-1][0], n + 1)
    img_g = rel_image(pad_with_t(g), t, [start])
    img_h = rel_image(pad_with_t(h, first=g), t, [start])
    w = RelWitness(t, start, target, tuple(prs), img_g, img_h, swapped, n)
    if not w.certified:
        raise AssertionError(f"relational witness failed for {gw} and {hw}")
    return w


def composite_relation(seq, t: LevelInvolution, size: int, levels: int) -> set[tuple[LevelPoint, LevelPoint]]:
    """The whole padded product as a relation on ``{0..size-1} x {0..levels-1}``."""
    out = set()
    for k in range(levels):
        for p in range(size):
            x = LevelPoint(p, k)
            out.update((y, x) for y in rel_image(seq, t, [x]))
    return out


def check_offdiag_pool(pool: Iterable[RelMat]) -> None:
    """Reject pools where some letter is diagonal or two letters agree off the diagonal."""
    seen: dict[RelMat, RelMat] = {}
    for g in pool:
        od = g.off_diagonal()
        if not od.pairs():
            raise ValueError(f"{g} has no pair off the diagonal")
        if od in seen and seen[od] != g:
            raise ValueError(f"{seen[od]} and {g} agree off the diagonal")
        seen[od] = g


def embedded_image(word: CopWord, t: LevelInvolution, size: int, levels: int) -> set:
    """Image of ``word`` in relations on the level window: first copy as is, second conjugated by ``t``."""
    seq: list = []
    for tag, el in word.letters:
        seq.extend([el] if tag == "A" else ["T", el, "T"])
    return composite_relation(seq, t, size, levels)
