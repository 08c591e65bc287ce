"""Finitely supported maps of the naturals and the leveled set N x omega.

Maps act on the left and compose accordingly: ``compose(f, g)(p) == f(g(p))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence


class FinSuppEndo:
    """Endomap of N equal to the identity off a finite exception table.

    The table is kept minimal (no ``p -> p`` entries), so two maps are equal
    exactly when their tables are.

    >>> f = FinSuppEndo({0: 1, 1: 0})
    >>> f(0), f(7)
    (1, 7)
    >>> (f * f).is_identity()
    True
    """

    __slots__ = ("_table", "_hash")

    def __init__(self, table: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = table.items() if isinstance(table, Mapping) else table
        clean: dict[int, int] = {}
        for k, v in items:
            k, v = int(k), int(v)
            if k < 0 or v < 0:
                raise ValueError("FinSuppEndo is defined on the naturals")
            if k != v:
                clean[k] = v
        self._table = dict(sorted(clean.items()))
        self._hash = hash(tuple(self._table.items()))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "FinSuppEndo":
        """Build from the image list ``[f(0), ..., f(n-1)]``; identity beyond."""
        return cls(enumerate(images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]]) -> "FinSuppEndo":
        """Compose disjoint cycles ``(a b c)`` meaning a -> b -> c -> a."""
        table: dict[int, int] = {}
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for i, a in enumerate(cyc):
                if a in table:
                    raise ValueError(f"point {a} appears in two cycles")
                table[a] = cyc[(i + 1) % len(cyc)]
        return cls(table)

    @property
    def table(self) -> dict[int, int]:
        return dict(self._table)

    def support(self) -> frozenset[int]:
        return frozenset(self._table)

    def __call__(self, p: int) -> int:
        return self._table.get(p, p)

    def __mul__(self, other: "FinSuppEndo") -> "FinSuppEndo":
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinSuppEndo) and self._table == other._table

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "FinSuppEndo") -> bool:
        return tuple(self._table.items()) < tuple(other._table.items())

    def __repr__(self) -> str:
        return f"FinSuppEndo({self._table})"

    def is_identity(self) -> bool:
        return not self._table

    def is_permutation(self) -> bool:
        return is_permutation(self)

    def inverse(self) -> "FinSuppEndo":
        if not is_permutation(self):
            raise ValueError(f"{self!r} is not invertible")
        return FinSuppEndo({v: k for k, v in self._table.items()})

    def restrict_images(self, n: int) -> tuple[int, ...]:
        return tuple(self(p) for p in range(n))

    def to_pairs(self) -> list[list[int]]:
        """Sorted ``[key, value]`` list used in JSON reports."""
        return [[k, v] for k, v in self._table.items()]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "FinSuppEndo":
        return cls((k, v) for k, v in pairs)

    def cycle_string(self) -> str:
        """Cycle notation; only meaningful for permutations."""
        if not is_permutation(self):
            raise ValueError("cycle notation needs a permutation")
        seen: set[int] = set()
        parts = []
        for start in self._table:
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"


def eval_endo(f: FinSuppEndo, p: int) -> int:
    return f(p)


def compose(f: FinSuppEndo, g: FinSuppEndo) -> FinSuppEndo:
    """Pointwise ``f o g`` evaluated on the union of the supports."""
    pts = f.support() | g.support()
    return FinSuppEndo({p: f(g(p)) for p in pts})


def is_permutation(f: FinSuppEndo) -> bool:
    keys = f.support()
    values = [f(p) for p in keys]
    return len(set(values)) == len(values) and set(values) == keys


def identity() -> FinSuppEndo:
    return FinSuppEndo()


def block_product_embed(
    blocks: Sequence[Iterable[int]], maps: Sequence[FinSuppEndo]
) -> FinSuppEndo:
    """Glue per-block maps into one map of the union of the blocks.

    Each ``maps[i]`` must carry ``blocks[i]`` into itself and move nothing
    outside it.
    """
    if len(blocks) != len(maps):
        raise ValueError("need one map per block")
    block_sets = [frozenset(b) for b in blocks]
    seen: set[int] = set()
    for b in block_sets:
        if seen & b:
            raise ValueError("blocks must be disjoint")
        seen |= b
    table: dict[int, int] = {}
    for i, (b, f) in enumerate(zip(block_sets, maps)):
        if not f.support() <= b:
            raise ValueError(f"map {i} moves points outside its block")
        for p in b:
            if f(p) not in b:
                raise ValueError(f"map {i} sends {p} out of its block")
        table.update(f.table)
    return FinSuppEndo(table)


class LevelPoint(NamedTuple):
    """A point (p, k) of N x omega: coordinate p on level k."""

    p: int
    k: int

    def __str__(self) -> str:
        return f"({self.p},{self.k})"


@dataclass(frozen=True)
class LevelInvolution:
    """Product of disjoint transpositions of N x omega."""

    pairs: tuple[tuple[LevelPoint, LevelPoint], ...]
    _partner: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        partner: dict[LevelPoint, LevelPoint] = {}
        norm = []
        for a, b in self.pairs:
            a, b = LevelPoint(*a), LevelPoint(*b)
            if a == b:
                raise ValueError(f"degenerate pair {a}")
            if a in partner or b in partner:
                raise ValueError(f"pairs are not disjoint at {a} / {b}")
            partner[a] = b
            partner[b] = a
            norm.append((a, b))
        object.__setattr__(self, "pairs", tuple(norm))
        object.__setattr__(self, "_partner", partner)

    def __call__(self, x: LevelPoint) -> LevelPoint:
        return self._partner.get(x, x)

    def support(self) -> frozenset[LevelPoint]:
        return frozenset(self._partner)

    def __iter__(self) -> Iterator[tuple[LevelPoint, LevelPoint]]:
        return iter(self.pairs)

    def to_json(self) -> list:
        return [[list(a), list(b)] for a, b in self.pairs]


def apply_involution(t: LevelInvolution, x: LevelPoint) -> LevelPoint:
    return t(x)
