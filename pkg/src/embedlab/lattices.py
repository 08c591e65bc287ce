"""Finite lattices: partition lattices, solution-set lattices, centralizers and jumps.

Everything infinite in the underlying theory is replaced by finite folds: a
complete lattice here is just a finite one, and "arbitrary" meets are
iterated binary meets with the top as the empty meet.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .partitions import Partition, all_partitions
from .relations import FiniteMonoid


class FinLattice:
    """A finite poset checked to be a lattice; meets and joins come from the order alone."""

    def __init__(self, elements: Iterable[Hashable], leq: Callable[[Hashable, Hashable], bool]):
        self.elements = tuple(dict.fromkeys(elements))
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        if n == 0:
            raise ValueError("a lattice needs at least one element")
        le = [[bool(leq(a, b)) for b in self.elements] for a in self.elements]
        for i in range(n):
            if not le[i][i]:
                raise ValueError("order is not reflexive")
            for j in range(n):
                if i != j and le[i][j] and le[j][i]:
                    raise ValueError("order is not antisymmetric")
        for i, j, k in itertools.product(range(n), repeat=3):
            if le[i][j] and le[j][k] and not le[i][k]:
                raise ValueError("order is not transitive")
        self._le = le
        self._down = [sum(1 << j for j in range(n) if le[j][i]) for i in range(n)]
        self._up = [sum(1 << j for j in range(n) if le[i][j]) for i in range(n)]
        by_down = {m: i for i, m in enumerate(self._down)}
        by_up = {m: i for i, m in enumerate(self._up)}
        self._meet = [[0] * n for _ in range(n)]
        self._join = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                lo = by_down.get(self._down[i] & self._down[j])
                hi = by_up.get(self._up[i] & self._up[j])
                if lo is None or hi is None:
                    raise ValueError(f"{self.elements[i]} and {self.elements[j]} lack a meet or join")
                self._meet[i][j] = lo
                self._join[i][j] = hi
        self.bottom = self._extreme(low=True)
        self.top = self._extreme(low=False)

    def _extreme(self, low: bool):
        n = len(self.elements)
        for i in range(n):
            if all(self._le[i][j] if low else self._le[j][i] for j in range(n)):
                return self.elements[i]
        raise ValueError("no extreme element")

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def leq(self, a, b) -> bool:
        return self._le[self.index[a]][self.index[b]]

    def meet(self, a, b):
        return self.elements[self._meet[self.index[a]][self.index[b]]]

    def join(self, a, b):
        return self.elements[self._join[self.index[a]][self.index[b]]]

    def meet_all(self, xs: Iterable):
        out = self.top
        for x in xs:
            out = self.meet(out, x)
        return out

    def join_all(self, xs: Iterable):
        out = self.bottom
        for x in xs:
            out = self.join(out, x)
        return out

    def covers(self, a, b) -> bool:
        """``a < b`` with nothing strictly between."""
        i, j = self.index[a], self.index[b]
        if i == j or not self._le[i][j]:
            return False
        between = self._up[i] & self._down[j] & ~(1 << i) & ~(1 << j)
        return between == 0

    def covering_pairs(self) -> list[tuple]:
        return [(a, b) for a in self.elements for b in self.elements if self.covers(a, b)]

    def absorption_holds(self) -> bool:
        return all(
            self.meet(a, self.join(a, b)) == a and self.join(a, self.meet(a, b)) == a
            for a in self.elements
            for b in self.elements
        )

    def to_json(self, fmt: Callable = str) -> dict:
        return {
            "elements": [fmt(e) for e in self.elements],
            "covers": [[fmt(a), fmt(b)] for a, b in self.covering_pairs()],
        }


class ProductLattice:
    """Direct product of finite lattices, ordered coordinatewise; no tables are built."""

    def __init__(self, factors: Sequence[FinLattice]):
        self.factors = tuple(factors)

    def __contains__(self, x) -> bool:
        return len(x) == len(self.factors) and all(c in f for c, f in zip(x, self.factors))

    def leq(self, a, b) -> bool:
        return all(f.leq(x, y) for f, x, y in zip(self.factors, a, b))

    def covers(self, a, b) -> bool:
        diff = [k for k, (x, y) in enumerate(zip(a, b)) if x != y]
        return len(diff) == 1 and self.factors[diff[0]].covers(a[diff[0]], b[diff[0]])


def jumps_in_chain(lat: FinLattice | ProductLattice, chain: Sequence) -> int:
    """Adjacent pairs of an ascending chain that are covering pairs of ``lat``."""
    for x in chain:
        if x not in lat:
            raise ValueError(f"{x} is not in the lattice")
    for a, b in zip(chain, chain[1:]):
        if a == b or not lat.leq(a, b):
            raise ValueError("not a strictly ascending chain")
    return sum(lat.covers(a, b) for a, b in zip(chain, chain[1:]))


# --- partition lattices -------------------------------------------------------------


def _same_n(a: Partition, b: Partition) -> None:
    if a.n != b.n:
        raise ValueError("partitions of different sets")


def eq_meet(a: Partition, b: Partition) -> Partition:
    _same_n(a, b)
    return a.meet(b)


def eq_join(a: Partition, b: Partition) -> Partition:
    _same_n(a, b)
    return a.join(b)


def eq_lattice(n: int) -> FinLattice:
    return FinLattice(all_partitions(n), Partition.leq)


def eq_maximal_chain(n: int) -> list[Partition]:
    """Discrete up to indiscrete, merging the next point into block 0 each step."""
    chain = [Partition.discrete(n)]
    for k in range(1, n):
        chain.append(Partition(tuple(0 if i <= k else i for i in range(n))))
    return chain


@dataclass(frozen=True)
class MtVsJnReport:
    n: int
    meet_family: int
    meet_pairs_ok: int
    join_family: int
    join_pairs_ok: int

    @property
    def ok(self) -> bool:
        m, j = self.meet_family, self.join_family
        return self.meet_pairs_ok == m * (m - 1) and self.join_pairs_ok == j * (j - 1)


def mtvsjn_check(n: int) -> MtVsJnReport:
    """Atoms through ``0`` meet to the discrete relation; two-class relations join to the indiscrete one."""
    if n < 3:
        raise ValueError("need n >= 3")
    z, w = Partition.discrete(n), Partition.indiscrete(n)
    xs = [Partition.from_blocks(n, [(0, i)]) for i in range(1, n)]
    ys = [p for p in all_partitions(n) if p.num_blocks() == 2]
    meet_ok = sum(eq_meet(a, b) == z for a, b in itertools.permutations(xs, 2))
    join_ok = sum(eq_join(a, b) == w for a, b in itertools.permutations(ys, 2))
    return MtVsJnReport(n, len(xs), meet_ok, len(ys), join_ok)


# --- terms and solution sets -------------------------------------------------------
# A term is ("v", j), ("c", value) or (op, *subterms).


def var(j: int) -> tuple:
    return ("v", j)


def const(c) -> tuple:
    return ("c", c)


def eval_term(term: tuple, a: Sequence, ops: Mapping[str, Callable]):
    head = term[0]
    if head == "v":
        return a[term[1]]
    if head == "c":
        return term[1]
    args = [eval_term(t, a, ops) for t in term[1:]]
    out = args[0]
    for x in args[1:]:
        out = ops[head](out, x)
    return out


@dataclass(frozen=True)
class SolutionSystem:
    elements: tuple
    ops: Mapping[str, Callable]
    arity: int
    equations: tuple  # pairs (v, w)

    def points(self) -> Iterable[tuple]:
        return itertools.product(self.elements, repeat=self.arity)


def solution_set(sys: SolutionSystem) -> frozenset:
    return frozenset(
        a for a in sys.points() if all(eval_term(v, a, sys.ops) == eval_term(w, a, sys.ops) for v, w in sys.equations)
    )


def _subset_leq(a: frozenset, b: frozenset) -> bool:
    return a <= b


def intersection_closure(sets: Iterable[frozenset], top: frozenset) -> set[frozenset]:
    out = {top}
    frontier = list(out)
    gens = set(sets)
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                m = s & g
                if m not in out:
                    out.add(m)
                    nxt.append(m)
        frontier = nxt
    return out


def lattice_of_solutions(systems: Sequence[SolutionSystem]) -> FinLattice:
    """Intersections of the given solution sets, with the whole power as the empty meet."""
    if not systems:
        raise ValueError("need at least one system to fix the algebra")
    top = frozenset(systems[0].points())
    closed = intersection_closure((solution_set(s) for s in systems), top)
    return FinLattice(sorted(closed, key=lambda s: (len(s), sorted(map(repr, s)))), _subset_leq)


def principal_sets(elements: Sequence, mul: Callable, arity: int, bound: int = 4) -> set[frozenset]:
    """Every ``S_{v=w}`` for product words ``v, w`` of length ``1..bound`` in variables and constants."""
    pts = list(itertools.product(elements, repeat=arity))
    symbols = [("v", j) for j in range(arity)] + [("c", c) for c in elements]

    def value(sym, a):
        return a[sym[1]] if sym[0] == "v" else sym[1]

    vectors = set()
    layer = {tuple(value(s, a) for a in pts) for s in symbols}
    vectors |= layer
    for _ in range(bound - 1):
        layer = {
            tuple(mul(u, value(s, a)) for u, a in zip(vec, pts)) for vec in layer for s in symbols
        } - vectors
        vectors |= layer
    vecs = list(vectors)
    out = set()
    for u, v in itertools.combinations_with_replacement(vecs, 2):
        out.add(frozenset(a for a, x, y in zip(pts, u, v) if x == y))
    return out


def lower_solution_set(lat: FinLattice, v: tuple, c, arity: int) -> frozenset:
    ops = {"meet": lat.meet, "join": lat.join}
    return frozenset(
        a for a in itertools.product(lat.elements, repeat=arity) if lat.leq(eval_term(v, a, ops), c)
    )


def join_of_meets(v: tuple) -> list[list[tuple]] | None:
    """``v`` as a list of meet-lists of atoms, or None if it has a meet of joins."""
    head = v[0]
    if head in ("v", "c"):
        return [[v]]
    parts = [join_of_meets(t) for t in v[1:]]
    if any(p is None for p in parts):
        return None
    if head == "join":
        return [m for p in parts for m in p]
    if head == "meet":
        if any(len(p) > 1 for p in parts):
            return None
        return [[a for p in parts for a in p[0]]]
    raise ValueError(f"unknown operation {head}")


def reduced_lower_set(lat: FinLattice, v: tuple, c, arity: int) -> frozenset | None:
    """The same set via ``c meet M = M`` for each meet ``M`` of the join; None if not reducible."""
    form = join_of_meets(v)
    if form is None:
        return None
    ops = {"meet": lat.meet, "join": lat.join}
    out = frozenset(itertools.product(lat.elements, repeat=arity))
    for atoms in form:
        m = ("meet", *atoms) if len(atoms) > 1 else atoms[0]
        out &= frozenset(
            a
            for a in itertools.product(lat.elements, repeat=arity)
            if lat.meet(c, eval_term(m, a, ops)) == eval_term(m, a, ops)
        )
    return out


# --- centralizers ------------------------------------------------------------------


def centralizer(mon: FiniteMonoid, xs: Iterable) -> frozenset:
    xs = list(xs)
    return frozenset(g for g in mon.elements if all(mon.mul(g, x) == mon.mul(x, g) for x in xs))


def centralizer_lattice(mon: FiniteMonoid) -> FinLattice:
    """All centralizers, as intersections of single-element centralizers; ``C(C(H)) = H`` is checked."""
    top = frozenset(mon.elements)
    closed = intersection_closure((centralizer(mon, [x]) for x in mon.elements), top)
    for h in closed:
        if centralizer(mon, centralizer(mon, h)) != h:
            raise AssertionError("a centralizer failed the double-centralizer test")
    return FinLattice(sorted(closed, key=lambda s: (len(s), sorted(map(repr, s)))), _subset_leq)


def centralizers_by_subsets(mon: FiniteMonoid) -> set[frozenset]:
    """Brute force: ``C(X)`` for every subset ``X``."""
    els = mon.elements
    return {centralizer(mon, xs) for k in range(len(els) + 1) for xs in itertools.combinations(els, k)}


def sym_group(n: int) -> FiniteMonoid:
    perms = sorted(itertools.permutations(range(n)))
    return FiniteMonoid(perms, lambda a, b: tuple(a[b[i]] for i in range(n)), tuple(range(n)))


def direct_product(a: FiniteMonoid, b: FiniteMonoid) -> FiniteMonoid:
    return FiniteMonoid(
        list(itertools.product(a.elements, b.elements)),
        lambda x, y: (a.mul(x[0], y[0]), b.mul(x[1], y[1])),
        (a.identity, b.identity),
    )


@dataclass(frozen=True)
class CentralizerChain:
    n: int
    chain: tuple  # C(X_0) < ... < C(X_n), each as a tuple of coordinate subgroups
    sizes: tuple[int, ...]
    y_pattern_ok: bool
    strictly_ascending: bool
    jumps: int


def cmxcm_chain(n: int) -> CentralizerChain:
    """Centralizers of ``X_a = {x_b : b > a}`` in ``S_3^n`` for ``a = 0..n`` (indices ``1..n``).

    ``x_i`` and ``y_i`` are non-commuting transpositions in coordinate ``i``.
    ``C(X_a)`` must contain exactly the ``y_c`` with ``c <= a``.  Jumps are
    counted in the product of the centralizer lattices of the coordinates,
    which is the centralizer lattice of the power.
    """
    if n < 1:
        raise ValueError("n must be positive")
    s3 = sym_group(3)
    e = s3.identity
    tx, ty = (1, 0, 2), (0, 2, 1)
    assert s3.mul(tx, ty) != s3.mul(ty, tx)

    def unit(i, g):
        return tuple(g if k == i else e for k in range(n))

    xs = [unit(i, tx) for i in range(n)]
    ys = [unit(i, ty) for i in range(n)]

    def commutes(g, x):
        return all(s3.mul(a, b) == s3.mul(b, a) for a, b in zip(g, x))

    group = list(itertools.product(s3.elements, repeat=n))
    cents = []
    for a in range(n + 1):
        xa = xs[a:]
        cents.append(frozenset(g for g in group if all(commutes(g, x) for x in xa)))
    y_ok = all((ys[c] in cents[a]) == (c + 1 <= a) for a in range(n + 1) for c in range(n))
    ascending = all(u < v for u, v in zip(cents, cents[1:]))
    coords = []
    for c in cents:
        proj = tuple(frozenset(g[k] for g in c) for k in range(n))
        if math.prod(len(p) for p in proj) != len(c):
            raise AssertionError("centralizer is not a product of its projections")
        coords.append(proj)
    lat = centralizer_lattice(s3)
    jumps = jumps_in_chain(ProductLattice([lat] * n), coords)
    return CentralizerChain(n, tuple(coords), tuple(len(c) for c in cents), y_ok, ascending, jumps)


def _order(mon: FiniteMonoid, g) -> int:
    k, x = 1, g
    while x != mon.identity:
        x = mon.mul(x, g)
        k += 1
    return k


@dataclass(frozen=True)
class DeBruijnReport:
    n: int
    pair_orders: frozenset
    quad_orders: frozenset
    full_product_is_cycle: bool
    collapse_ok: bool
    inverse_pairs: int

    @property
    def ok(self) -> bool:
        return (
            self.pair_orders == {3}
            and (self.n < 4 or self.quad_orders == {5})
            and self.full_product_is_cycle
            and self.collapse_ok
            and self.inverse_pairs == 0
        )


def _is_full_cycle(p: tuple) -> bool:
    seen, x = 0, 0
    for _ in range(len(p)):
        seen += 1
        x = p[x]
        if x == 0:
            break
    return x == 0 and seen == len(p)


def debruijn_family(n: int, collapse_degree: int = 6) -> DeBruijnReport:
    """Transpositions ``x_i = (0 i)`` in ``S_{n+1}``: orders of products of distinct ones.

    Also checks in ``S_collapse_degree`` that ``g^3 = g^10 = 1`` forces ``g = 1``,
    which is why repeated indices would collapse the relations.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    sn = sym_group(n + 1)

    def transposition(i):
        p = list(range(n + 1))
        p[0], p[i] = i, 0
        return tuple(p)

    xs = [transposition(i) for i in range(1, n + 1)]

    def product(idx):
        out = sn.identity
        for i in idx:
            out = sn.mul(out, xs[i])
        return out

    pair_orders = frozenset(_order(sn, product(ij)) for ij in itertools.permutations(range(n), 2))
    quad_orders = frozenset(_order(sn, product(q)) for q in itertools.permutations(range(n), 4))
    inverse_pairs = sum(sn.mul(a, b) == sn.identity for a, b in itertools.permutations(xs, 2))
    big = sym_group(collapse_degree)

    def power(g, k):
        out = big.identity
        for _ in range(k):
            out = big.mul(out, g)
        return out

    collapse = all(g == big.identity for g in big.elements if power(g, 3) == big.identity == power(g, 10))
    return DeBruijnReport(
        n, pair_orders, quad_orders, _is_full_cycle(product(range(n))), collapse, inverse_pairs
    )


def debruijn_chain(k: int = 2) -> list[frozenset]:
    """Solution sets ``S_a = {(y, z) : (x_{b,0} x_{b,1} y z)^5 = 1 for b > a}`` in ``S_{2k+1}``, ``a = 0..k``."""
    sn = sym_group(2 * k + 1)

    def transposition(i):
        p = list(range(2 * k + 1))
        p[0], p[i] = i, 0
        return tuple(p)

    xs = [(transposition(2 * b + 1), transposition(2 * b + 2)) for b in range(k)]
    e = sn.identity

    def fifth_is_one(g):
        out = e
        for _ in range(5):
            out = sn.mul(out, g)
        return out == e

    pairs = list(itertools.product(sn.elements, repeat=2))
    hits = [
        frozenset((y, z) for y, z in pairs if fifth_is_one(sn.mul(sn.mul(x0, x1), sn.mul(y, z))))
        for x0, x1 in xs
    ]
    chain = []
    for a in range(k + 1):
        s = frozenset(pairs)
        for b in range(a, k):
            s &= hits[b]
        chain.append(s)
    return chain


def eqprod_chain(m: int) -> tuple[list[frozenset], list[tuple]]:
    """Solution sets ``S_a = {x : x x_i = y for i > a}`` in the full transformation monoid on ``m+1`` points.

    ``y`` is constant at ``0``; ``x_i`` sends everything but ``i`` to ``0`` and fixes ``i``.
    Returns the chain for ``a = 0..m`` and the ``x_i``.
    """
    pts = m + 1
    y = (0,) * pts
    xs = [tuple(p if p == i else 0 for p in range(pts)) for i in range(1, pts)]

    def mul(a, b):
        return tuple(a[b[p]] for p in range(pts))

    monoid = list(itertools.product(range(pts), repeat=pts))
    hits = [frozenset(x for x in monoid if mul(x, xi) == y) for xi in xs]
    chain = []
    for a in range(m + 1):
        s = frozenset(monoid)
        for b in range(a, m):
            s &= hits[b]
        chain.append(s)
    return chain, xs


# --- embeddings of finite lattices into powersets ----------------------------------------


def _check_meet_embedding(lat: FinLattice, f: Mapping, universe: frozenset) -> None:
    if len({f[x] for x in lat.elements}) != len(lat):
        raise ValueError("map is not injective")
    if f[lat.top] != universe:
        raise ValueError("top must go to the whole index set")
    for a in lat.elements:
        for b in lat.elements:
            if f[lat.meet(a, b)] != f[a] & f[b]:
                raise ValueError("map does not preserve meets")


def cond_ia_to_ib(lat: FinLattice, f: Mapping, universe: Iterable) -> dict:
    """From a meet embedding ``f`` into subsets of ``universe``, the generators ``g(a)``.

    ``g(a)`` is the meet of all ``x`` with ``a`` in ``f(x)``; every ``x`` is the
    join of ``g(a)`` over ``a`` in ``f(x)``.
    """
    universe = frozenset(universe)
    _check_meet_embedding(lat, f, universe)
    g = {a: lat.meet_all(x for x in lat.elements if a in f[x]) for a in sorted(universe)}
    for x in lat.elements:
        if lat.join_all(g[a] for a in f[x]) != x:
            raise AssertionError(f"{x} is not the join of its generators")
    return g


def cond_ib_to_ia(lat: FinLattice, g: Mapping) -> dict:
    """``x -> {a : g(a) <= x}``; rejects families whose joins miss some element."""
    for x in lat.elements:
        if lat.join_all(v for v in g.values() if lat.leq(v, x)) != x:
            raise ValueError(f"{x} is not a join of generators")
    f = {x: frozenset(a for a, v in g.items() if lat.leq(v, x)) for x in lat.elements}
    _check_meet_embedding(lat, f, frozenset(g))
    return f


def downset_embed(lat: FinLattice) -> dict:
    d = {x: frozenset(y for y in lat.elements if lat.leq(y, x)) for x in lat.elements}
    if len(set(d.values())) != len(d):
        raise AssertionError("downsets are not distinct")
    for a in lat.elements:
        for b in lat.elements:
            if d[lat.meet(a, b)] != d[a] & d[b]:
                raise AssertionError("downsets do not preserve meets")
    return d


def random_closure_lattice(rng: random.Random, universe: int = 4, max_size: int = 8) -> FinLattice:
    """Intersection closure of random subsets of ``range(universe)``, with at most ``max_size`` members."""
    full = frozenset(range(universe))
    while True:
        gens = [
            frozenset(i for i in range(universe) if rng.random() < 0.5) for _ in range(rng.randint(0, 4))
        ]
        closed = intersection_closure(gens, full)
        if len(closed) <= max_size:
            return FinLattice(sorted(closed, key=lambda s: (len(s), sorted(s))), _subset_leq)


def antichain_example(k: int) -> list[frozenset]:
    """``(s x {0}) u (complement x {1})`` for every ``s`` inside ``range(k)``."""
    if k < 1:
        raise ValueError("k must be positive")
    out = []
    for bits in range(1 << k):
        out.append(frozenset((i, 0) if bits >> i & 1 else (i, 1) for i in range(k)))
    for a, b in itertools.combinations(out, 2):
        if a <= b or b <= a:
            raise AssertionError("sets are comparable")
    return out


@dataclass(frozen=True)
class Rx2Chain:
    chain: tuple
    jumps: tuple


def rx2_jump_example(sample: Iterable[Fraction]) -> Rx2Chain:
    """A finite piece of ``R x 2`` in lexicographic order, with the jumps of the ambient order.

    ``(r, 0) < (r, 1)`` has nothing between it; two different ``r`` always
    have a midpoint between them, so no other adjacent pair is a jump.
    """
    rs = sorted(set(Fraction(r) for r in sample))
    chain = tuple((r, i) for r in rs for i in (0, 1))
    jumps = []
    for a, b in zip(chain, chain[1:]):
        if a[0] == b[0]:
            jumps.append((a, b))
        else:
            mid = (a[0] + b[0]) / 2
            assert a < (mid, 0) < b
    return Rx2Chain(chain, tuple(jumps))
