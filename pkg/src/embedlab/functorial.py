"""Index-level maps behind the functorial embedding arguments.

Covers separators of finite subsets and the free tuples they index, the
restriction and enumeration maps, left inverses, the clamping diagonal, the
rational cut maps, the idempotent "min" monoid and its functor, and the
componentwise embedding of a product of partition lattices.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .partitions import Partition
from .words import CopWord, Factor, reduce

FinSubset = frozenset


def _traces_distinct(rs: Sequence[frozenset], s: frozenset) -> bool:
    traces = [r & s for r in rs]
    return len(set(traces)) == len(traces)


def find_separator(rs: Sequence[Iterable[int]]) -> frozenset:
    """Smallest ``s`` with the traces ``r & s`` pairwise distinct.

    >>> sorted(find_separator([{0, 2}, {0, 3}, set()]))
    [2, 3]
    """
    rs = [frozenset(r) for r in rs]
    if len(set(rs)) != len(rs):
        raise ValueError("subsets must be pairwise distinct")
    universe = sorted(frozenset().union(*rs)) if rs else []
    for size in range(len(universe) + 1):
        for cand in itertools.combinations(universe, size):
            s = frozenset(cand)
            if _traces_distinct(rs, s):
                return s
    raise AssertionError("unreachable: the union always separates")


def all_subsets(n: int) -> list[frozenset]:
    return [
        frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)
    ]


def build_Xr(r: Iterable[int], n: int) -> dict[frozenset, tuple[frozenset, frozenset]]:
    """Component at each ``s`` of the n-set is the generator label ``(s, r & s)``."""
    r = frozenset(r)
    return {s: (s, r & s) for s in all_subsets(n)}


@dataclass(frozen=True)
class FreeTupleWitness:
    separator: frozenset
    projected_v: tuple
    projected_w: tuple


def verify_free_tuple(
    rs: Sequence[Iterable[int]], v: Sequence[int], w: Sequence[int]
) -> FreeTupleWitness:
    """Project two free words in letters ``0..len(rs)-1`` onto the separating index.

    Letter ``i`` becomes the label ``(s, rs[i] & s)``.
    """
    v, w = tuple(v), tuple(w)
    if v == w:
        raise ValueError("words must differ")
    rs = [frozenset(r) for r in rs]
    s = find_separator(rs)
    labels = [(s, r & s) for r in rs]
    pv = tuple(labels[i] for i in v)
    pw = tuple(labels[i] for i in w)
    if pv == pw:
        raise AssertionError("projection collapsed distinct words")
    return FreeTupleWitness(s, pv, pw)


def restrict_cs(r: Iterable[int], s: Iterable[int]) -> frozenset:
    return frozenset(r) & frozenset(s)


def enumerate_es(s: Iterable[int]) -> dict[frozenset, int]:
    """Binary code of each subset of ``s`` relative to sorted ``s``.

    >>> enumerate_es({3, 7})[frozenset({7})]
    2
    """
    elems = sorted(s)
    return {
        frozenset(e for i, e in enumerate(elems) if mask >> i & 1): mask
        for mask in range(1 << len(elems))
    }


def left_inverse(a: Sequence[Hashable]) -> Callable[[Hashable], int]:
    """Left inverse of the injective map ``i -> a[i]``; other points go to 0."""
    if not a:
        raise ValueError("domain must be nonempty")
    table = {x: i for i, x in enumerate(a)}
    if len(table) != len(a):
        raise ValueError("map is not injective")
    return lambda x: table.get(x, 0)


def diagonal_fn(n: int, r: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return min(r, n - 1)


def rational_cuts(reals: Sequence) -> list[Fraction]:
    """Cut points ``q_i = r_i`` for ``i = 1..n``; valid since ``r_{i-1} < r_i``."""
    rs = [Fraction(x) for x in reals]
    if any(a >= b for a, b in zip(rs, rs[1:])):
        raise ValueError("reals must be strictly increasing")
    return rs[1:]


def cut_map_as(cuts: Sequence, r) -> int:
    """Greatest ``i`` (1-based) with ``q_i <= r``, else 0."""
    qs = sorted(Fraction(q) for q in cuts)
    return bisect.bisect_right(qs, Fraction(r))


def section_b(reals: Sequence, i: int) -> Fraction:
    if i < 0:
        raise ValueError("level must be nonnegative")
    return Fraction(reals[min(i, len(reals) - 1)])


# --- the min monoid: x_i x_j = x_min(i,j), with an adjoined identity ------

ONE = None  # identity marker


def min_monoid_op(x, y):
    if x is ONE:
        return y
    if y is ONE:
        return x
    return min(x, y)


def check_isotone(a: Mapping[Any, Any] | Callable, domain: Iterable) -> None:
    dom = sorted(domain)
    f = a.__getitem__ if isinstance(a, Mapping) else a
    for i, j in zip(dom, dom[1:]):
        if f(i) > f(j):
            raise ValueError(f"map is not isotone at {i} <= {j}")


def min_monoid_functor(a: Mapping[Any, Any] | Callable, x, domain: Iterable | None = None):
    """Image of ``x`` under the homomorphism induced by the isotone map ``a``."""
    f = a.__getitem__ if isinstance(a, Mapping) else a
    if domain is not None:
        check_isotone(a, domain)
    return ONE if x is ONE else f(x)


def min_monoid_factor(n: int | None = None, name: str = "Min") -> Factor:
    """The min monoid on ``0..n-1`` (or on all naturals when ``n`` is None)."""
    return Factor(
        name=name,
        multiply=min_monoid_op,
        identity=ONE,
        elements=None if n is None else (ONE, *range(n)),
        parse=lambda s: ONE if s.strip() in ("", "1") else int(s),
    )


def diagonal_image(word: CopWord, n: int, factors: Mapping[str, Factor]) -> CopWord:
    """Apply the clamp ``r -> min(r, n-1)`` letterwise and reduce."""
    return reduce(((tag, diagonal_fn(n, x)) for tag, x in word), factors)


# --- products of partition lattices -----------------------------------------


def product_encode(coords: Sequence[int], sizes: Sequence[int]) -> int:
    code = 0
    for x, m in zip(reversed(coords), reversed(sizes)):
        code = code * m + x
    return code


def product_decode(code: int, sizes: Sequence[int]) -> tuple[int, ...]:
    out = []
    for m in sizes:
        code, x = divmod(code, m)
        out.append(x)
    return tuple(out)


def eq_product_embed(alphas: Sequence[Partition]) -> Partition:
    """Partition of the product set: tuples related iff related in every coordinate.

    Tuples are encoded in mixed radix with the first coordinate least significant.
    """
    sizes = [a.n for a in alphas]
    total = 1
    for m in sizes:
        total *= m
    labels = []
    for code in range(total):
        xs = product_decode(code, sizes)
        labels.append(tuple(a.labels[x] for a, x in zip(alphas, xs)))
    ids: dict = {}
    return Partition(tuple(ids.setdefault(lab, len(ids)) for lab in labels))
