"""Set partitions of {0, ..., n-1}, stored as restricted growth strings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def _canonical(labels: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


@dataclass(frozen=True, order=True)
class Partition:
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", _canonical(self.labels))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        labels = list(range(n, 2 * n))  # singletons unless listed
        for i, b in enumerate(blocks):
            for x in b:
                if labels[x] < n:
                    raise ValueError(f"{x} appears in two blocks")
                labels[x] = i
        return cls(tuple(labels))

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def indiscrete(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.labels)

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: dict[int, list[int]] = {}
        for x, lab in enumerate(self.labels):
            out.setdefault(lab, []).append(x)
        return tuple(tuple(b) for b in out.values())

    def related(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (a, b) for a in range(self.n) for b in range(self.n) if self.labels[a] == self.labels[b]
        )

    def leq(self, other: "Partition") -> bool:
        """Refinement order: every block of self lies in a block of other."""
        img: dict[int, int] = {}
        for a, b in zip(self.labels, other.labels):
            if img.setdefault(a, b) != b:
                return False
        return True

    def meet(self, other: "Partition") -> "Partition":
        return Partition(_pair_labels(self, other))

    def join(self, other: "Partition") -> "Partition":
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for part in (self, other):
            first: dict[int, int] = {}
            for x, lab in enumerate(part.labels):
                if lab in first:
                    ra, rb = find(first[lab]), find(x)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
                else:
                    first[lab] = x
        return Partition(tuple(find(x) for x in range(self.n)))

    def num_blocks(self) -> int:
        return max(self.labels, default=-1) + 1

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks())


def _pair_labels(a: Partition, b: Partition) -> tuple[int, ...]:
    ids: dict[tuple[int, int], int] = {}
    return tuple(ids.setdefault(pair, len(ids)) for pair in zip(a.labels, b.labels))


def all_partitions(n: int) -> Iterator[Partition]:
    """All partitions of an n-set, in lexicographic order of growth strings."""

    def rec(prefix: list[int], mx: int):
        if len(prefix) == n:
            yield Partition(tuple(prefix))
            return
        for v in range(mx + 2):
            prefix.append(v)
            yield from rec(prefix, max(mx, v))
            prefix.pop()

    if n == 0:
        yield Partition(())
        return
    yield from rec([0], 0)


def partition_from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> Partition:
    """Equivalence relation generated by ``pairs`` (transitive closure oracle)."""
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        rel[a][b] = rel[b][a] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    return Partition(tuple(min(j for j in range(n) if rel[i][j]) for i in range(n)))
