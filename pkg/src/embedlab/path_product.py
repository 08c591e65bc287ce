"""Path products of monoid sets and faithful actions of coproducts on them.

A path is a nonempty sequence of tuples (one coordinate per factor) in
which consecutive tuples differ in exactly one coordinate, and two
consecutive steps never change the same coordinate.  A monoid element of
factor ``j`` acts on the last tuple's ``j`` coordinate and then extends,
replaces or shortens the path.  Actions are left actions throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .words import CopWord, Factor

Tup = tuple
Path = tuple  # tuple of Tup

CASE_FIXED, CASE_EXTEND, CASE_REPLACE, CASE_DELETE = "i", "ii.a", "ii.b.1", "ii.b.2"


@dataclass(frozen=True)
class MSet:
    """A finite set of points with a left action ``act(g, y)``."""

    points: tuple
    act: Callable[[Any, Hashable], Hashable]

    def orbit_images(self, g) -> tuple:
        return tuple(self.act(g, y) for y in self.points)


def natural_mset(n: int) -> MSet:
    """Maps on ``{0..n-1}`` acting by evaluation."""
    return MSet(tuple(range(n)), lambda g, y: g(y))


def is_path(x: Path) -> bool:
    if not x:
        return False
    prev = None
    for a, b in zip(x, x[1:]):
        diff = [i for i, (u, v) in enumerate(zip(a, b)) if u != v]
        if len(diff) != 1 or diff[0] == prev:
            return False
        prev = diff[0]
    return True


def _changed(a: Tup, b: Tup) -> int:
    for i, (u, v) in enumerate(zip(a, b)):
        if u != v:
            return i
    return -1


def path_act_case(j: int, g, x: Path, msets: Sequence[MSet]) -> tuple[Path, str]:
    """``g x`` for ``g`` in factor ``j``, with the name of the rule that applied."""
    last = x[-1]
    y = msets[j].act(g, last[j])
    if y == last[j]:
        return x, CASE_FIXED
    new = last[:j] + (y,) + last[j + 1 :]
    if len(x) == 1 or _changed(x[-2], last) != j:
        return x + (new,), CASE_EXTEND
    if new != x[-2]:
        return x[:-1] + (new,), CASE_REPLACE
    return x[:-1], CASE_DELETE


def path_act(j: int, g, x: Path, msets: Sequence[MSet]) -> Path:
    return path_act_case(j, g, x, msets)[0]


# --- the j-adapted picture ------------------------------------------------------


def phi_j(x: Path, j: int) -> Path:
    """Force the last step to be a (possibly trivial) change of coordinate ``j``."""
    if len(x) > 1 and _changed(x[-2], x[-1]) == j:
        return x
    return x + (x[-1],)


def phi_j_inverse(y: Path, j: int) -> Path:
    return y[:-1] if y[-2] == y[-1] else y


def in_adapted(y: Path, j: int) -> bool:
    """Membership in the image of :func:`phi_j`."""
    if len(y) < 2 or not is_path(y[:-1]):
        return False
    c = _changed(y[-2], y[-1])
    if c not in (-1, j):
        return False
    return not (len(y) > 2 and _changed(y[-3], y[-2]) == j)


def adapted_act(j: int, g, y: Path, msets: Sequence[MSet]) -> Path:
    """The plain action on the adapted picture: move the last tuple's ``j`` coordinate."""
    last = y[-1]
    return y[:-1] + (last[:j] + (msets[j].act(g, last[j]),) + last[j + 1 :],)


def transported_act(j: int, g, x: Path, msets: Sequence[MSet]) -> Path:
    return phi_j_inverse(adapted_act(j, g, phi_j(x, j), msets), j)


def all_paths(carriers: Sequence[Sequence[Hashable]], max_len: int) -> Iterator[Path]:
    """Every path of length ``1..max_len`` over the product of ``carriers``."""
    starts = list(itertools.product(*carriers))

    def grow(x: Path, last_coord: int):
        yield x
        if len(x) == max_len:
            return
        for i, carrier in enumerate(carriers):
            if i == last_coord:
                continue
            for y in carrier:
                if y != x[-1][i]:
                    yield from grow(x + (x[-1][:i] + (y,) + x[-1][i + 1 :],), i)

    for s in starts:
        yield from grow((s,), -1)


def word_act(letters: Iterable[tuple[str, Any]], x: Path, index: Mapping[str, int], msets: Sequence[MSet]) -> Path:
    """Apply a (not necessarily reduced) word, rightmost letter first."""
    for tag, g in reversed(list(letters)):
        x = path_act(index[tag], g, x, msets)
    return x


# --- strong faithfulness ----------------------------------------------------------


@dataclass(frozen=True)
class ClosedMSet:
    """Disjoint union of the powers ``base^0 .. base^depth`` with the diagonal action."""

    base: MSet
    depth: int

    @property
    def points(self) -> tuple:
        return tuple(
            (k, tup) for k in range(self.depth + 1) for tup in itertools.product(self.base.points, repeat=k)
        )

    def act(self, g, y):
        k, tup = y
        return k, tuple(self.base.act(g, z) for z in tup)

    def as_mset(self) -> MSet:
        return MSet(self.points, self.act)


def strong_closure(carrier: MSet, d: int = 2) -> ClosedMSet:
    if d < 0:
        raise ValueError("depth must be nonnegative")
    return ClosedMSet(carrier, d)


def separating_point(mset: MSet | ClosedMSet, elements: Iterable) -> Hashable | None:
    """First point whose images under the distinct ``elements`` are distinct."""
    els = list(dict.fromkeys(elements))
    for y in mset.points:
        if len({mset.act(g, y) for g in els}) == len(els):
            return y
    return None


def is_strongly_faithful_for(mset: MSet | ClosedMSet, families: Iterable[Iterable]) -> bool:
    return all(separating_point(mset, fam) is not None for fam in families)


# --- faithfulness witness -----------------------------------------------------------


def partial_products(word: CopWord, tag: str, factor: Factor) -> list:
    """``1, g_r1, g_r2 g_r1, ...`` over the letters of ``word`` with the given tag."""
    out = [factor.identity]
    for t, g in reversed(word.letters):
        if t == tag:
            out.append(factor.multiply(g, out[-1]))
    return out


@dataclass(frozen=True)
class PathWitness:
    x: Path
    gx: Path
    hx: Path
    depth: int

    @property
    def separates(self) -> bool:
        return self.gx != self.hx

    def to_json(self) -> dict:
        return {"x": _jsonable(self.x), "gx": _jsonable(self.gx), "hx": _jsonable(self.hx), "depth": self.depth}


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(u) for u in v]
    return v


class PathFactors:
    """Coproduct factors, each acting on a strongly faithful closure of its carrier."""

    def __init__(self, factors: Mapping[str, Factor], carriers: Mapping[str, MSet], depth: int = 2):
        self.tags = sorted(factors)
        self.factors = dict(factors)
        self.index = {t: i for i, t in enumerate(self.tags)}
        self.depth = depth
        self.closures = [strong_closure(carriers[t], depth) for t in self.tags]
        self.msets = [c.as_mset() for c in self.closures]
        self._sep: dict = {}
        self._eval: dict = {}

    def separating(self, tag: str, elements: frozenset):
        key = (tag, elements)
        if key not in self._sep:
            self._sep[key] = separating_point(self.closures[self.index[tag]], elements)
        return self._sep[key]

    def evaluate(self, word: CopWord, x: Path) -> Path:
        key = (word, x)
        out = self._eval.get(key)
        if out is None:
            out = self._eval[key] = word_act(word.letters, x, self.index, self.msets)
        return out


def faithful_witness(gw: CopWord, hw: CopWord, pf: PathFactors) -> PathWitness:
    """A one-tuple path that ``gw`` and ``hw`` send to different paths.

    Each coordinate separates the distinct partial products of both words in
    that factor.  Raises ``LookupError`` when the closure depth is too small.
    """
    if gw == hw:
        raise ValueError("words must be distinct")
    coords = []
    for tag in pf.tags:
        fac = pf.factors[tag]
        fam = frozenset(partial_products(gw, tag, fac)) | frozenset(partial_products(hw, tag, fac))
        y = pf.separating(tag, fam)
        if y is None:
            raise LookupError(f"depth {pf.depth} closure cannot separate factor {tag}; raise the depth")
        coords.append(y)
    x = (tuple(coords),)
    w = PathWitness(x, pf.evaluate(gw, x), pf.evaluate(hw, x), pf.depth)
    if not w.separates:
        raise AssertionError(f"witness failed for {gw} and {hw}")
    return w


def noncancellative_control(
    a, b, c, d, msets: Sequence[MSet], max_len: int = 5
) -> tuple[bool, int]:
    """Compare ``a d c`` and ``b d c`` (``a, b, c`` in factor 0, ``d`` in factor 1) on all paths.

    Returns (identical on every path, number of paths checked).
    """
    carriers = [m.points for m in msets]
    index = {"A": 0, "B": 1}
    u = [("A", a), ("B", d), ("A", c)]
    v = [("A", b), ("B", d), ("A", c)]
    count = 0
    for x in all_paths(carriers, max_len):
        count += 1
        if word_act(u, x, index, msets) != word_act(v, x, index, msets):
            return False, count
    return True, count


@dataclass(frozen=True)
class PairSweep:
    words: int
    pairs: int
    failures: int
    first_failure: tuple | None


def faithful_all_pairs(words: Sequence[CopWord], pf: PathFactors) -> PairSweep:
    """Run the :func:`faithful_witness` construction on every pair of ``words``.

    Same choices as the single-pair function, with the per-factor element
    families kept as bitmasks so separating points and evaluations are
    computed once per distinct input.
    """
    bit = {}
    for tag in pf.tags:
        els = pf.factors[tag].elements
        if els is None:
            raise ValueError(f"factor {tag} needs a finite element list")
        bit[tag] = {e: 1 << i for i, e in enumerate(els)}
    masks = []
    for w in words:
        row = []
        for tag in pf.tags:
            m = 0
            for e in partial_products(w, tag, pf.factors[tag]):
                m |= bit[tag][e]
            row.append(m)
        masks.append(tuple(row))
    decode = {tag: {v: e for e, v in bit[tag].items()} for tag in pf.tags}

    point_of: list[dict] = [{} for _ in pf.tags]

    def coord(k: int, tag: str, mask: int):
        cache = point_of[k]
        if mask not in cache:
            fam = frozenset(decode[tag][1 << i] for i in range(mask.bit_length()) if mask >> i & 1)
            y = pf.separating(tag, fam)
            if y is None:
                raise LookupError(f"depth {pf.depth} closure cannot separate factor {tag}; raise the depth")
            cache[mask] = y
        return cache[mask]

    evals: dict = {}

    def ev(i: int, x: Path) -> Path:
        key = (i, x)
        out = evals.get(key)
        if out is None:
            out = evals[key] = word_act(words[i].letters, x, pf.index, pf.msets)
        return out

    pairs = failures = 0
    first = None
    x_of: dict = {}
    W = len(words)
    for i in range(W):
        mi = masks[i]
        for j in range(i + 1, W):
            mj = masks[j]
            key = tuple(a | b for a, b in zip(mi, mj))
            x = x_of.get(key)
            if x is None:
                x = x_of[key] = (tuple(coord(k, t, m) for k, (t, m) in enumerate(zip(pf.tags, key))),)
            pairs += 1
            if ev(i, x) == ev(j, x):
                failures += 1
                if first is None:
                    first = (words[i], words[j], x)
    return PairSweep(W, pairs, failures, first)
