"""Reduced words in a coproduct (free product) of monoids.

A factor is described abstractly by its multiplication, identity and, for
groups, inversion, so the same reduction engine handles permutation groups,
finite monoids given by tables, and monoids of finitely supported maps.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .ground import FinSuppEndo, compose

Letter = tuple[str, Any]


@dataclass(frozen=True)
class Factor:
    name: str
    multiply: Callable[[Any, Any], Any]
    identity: Any
    inverse: Callable[[Any], Any] | None = None
    elements: tuple | None = None
    parse: Callable[[str], Any] = field(default=lambda s: s, repr=False)
    format: Callable[[Any], str] = field(default=str, repr=False)

    @property
    def is_group(self) -> bool:
        return self.inverse is not None

    def non_identity(self) -> list:
        if self.elements is None:
            raise ValueError(f"factor {self.name} has no finite element list")
        return [e for e in self.elements if e != self.identity]


@dataclass(frozen=True, order=True)
class CopWord:
    """Reduced alternating word; the empty word is the identity."""

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(t for t, _ in self.letters)

    def is_reduced(self, factors: Mapping[str, Factor]) -> bool:
        for i, (tag, el) in enumerate(self.letters):
            if el == factors[tag].identity:
                return False
            if i and self.letters[i - 1][0] == tag:
                return False
        return True


def reduce(raw: Iterable[Letter], factors: Mapping[str, Factor]) -> CopWord:
    """Stack reduction: merge equal-tag neighbours, drop identities, cascade.

    >>> S = {"A": symmetric_group(3), "B": symmetric_group(3)}
    >>> s = FinSuppEndo.from_cycles([(0, 1)])
    >>> reduce([("A", s), ("A", s)], S)
    CopWord(letters=())
    """
    stack: list[Letter] = []
    for tag, el in raw:
        fac = factors[tag]
        if el == fac.identity:
            continue
        if stack and stack[-1][0] == tag:
            prod = fac.multiply(stack[-1][1], el)
            stack.pop()
            if prod != fac.identity:
                stack.append((tag, prod))
        else:
            stack.append((tag, el))
    return CopWord(tuple(stack))


def cop_multiply(u: CopWord, v: CopWord, factors: Mapping[str, Factor]) -> CopWord:
    # u is already reduced, so only the seam can collapse
    return reduce(itertools.chain(u.letters, v.letters), factors)


def cop_inverse(u: CopWord, factors: Mapping[str, Factor]) -> CopWord:
    out = []
    for tag, el in reversed(u.letters):
        inv = factors[tag].inverse
        if inv is None:
            raise ValueError(f"factor {tag} has no inverse")
        out.append((tag, inv(el)))
    return CopWord(tuple(out))


def all_words(factors: Mapping[str, Factor], max_len: int) -> list[CopWord]:
    """Every reduced word of length at most ``max_len`` over finite factors."""
    words = [CopWord()]
    frontier = [CopWord()]
    tags = sorted(factors)
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            last = w.letters[-1][0] if w.letters else None
            for tag in tags:
                if tag == last:
                    continue
                for el in factors[tag].non_identity():
                    nxt.append(CopWord(w.letters + ((tag, el),)))
        words.extend(nxt)
        frontier = nxt
    return words


def random_word(factors: Mapping[str, Factor], length: int, rng) -> CopWord:
    tags = sorted(factors)
    letters: list[Letter] = []
    for _ in range(length):
        choices = [t for t in tags if not letters or letters[-1][0] != t]
        tag = rng.choice(choices)
        letters.append((tag, rng.choice(factors[tag].non_identity())))
    return CopWord(tuple(letters))


# --- text format -----------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_endo(text: str) -> FinSuppEndo:
    """Parse cycle notation ``(0 1)(2 3)``, images ``[1,0,2]`` or ``{0:1}``.

    >>> parse_endo("(0 1 2)")(2)
    0
    >>> parse_endo("[1,1,2]").table
    {0: 1}
    """
    s = text.strip()
    if s in ("", "()", "1", "id"):
        return FinSuppEndo()
    if s.startswith("["):
        body = s.strip("[]").strip()
        return FinSuppEndo.from_images([int(x) for x in re.split(r"[,\s]+", body) if x])
    if s.startswith("{"):
        body = s.strip("{}").strip()
        pairs = []
        for item in filter(None, (x.strip() for x in body.split(","))):
            k, v = re.split(r"\s*(?::|->|>)\s*", item)
            pairs.append((int(k), int(v)))
        return FinSuppEndo(pairs)
    if s.startswith("("):
        cycles = [
            [int(x) for x in re.split(r"[,\s]+", m.strip()) if x]
            for m in _CYCLE_RE.findall(s)
        ]
        if _CYCLE_RE.sub("", s).strip():
            raise ValueError(f"cannot parse cycles in {text!r}")
        return FinSuppEndo.from_cycles(c for c in cycles if len(c) > 1)
    raise ValueError(f"cannot parse map {text!r}")


def format_endo(f: FinSuppEndo) -> str:
    if f.is_permutation():
        return f.cycle_string()
    return "{" + ",".join(f"{k}:{v}" for k, v in f.table.items()) + "}"


def parse_word(text: str, factors: Mapping[str, Factor]) -> CopWord:
    """Parse ``A:<elem>|B:<elem>|...`` and reduce. Empty text is the identity."""
    s = text.strip()
    if not s:
        return CopWord()
    raw = []
    for part in s.split("|"):
        tag, sep, body = part.partition(":")
        tag = tag.strip()
        if not sep or tag not in factors:
            raise ValueError(f"bad letter {part!r}; expected TAG:<elem> with TAG in {sorted(factors)}")
        raw.append((tag, factors[tag].parse(body)))
    return reduce(raw, factors)


def format_word(w: CopWord, factors: Mapping[str, Factor]) -> str:
    return "|".join(f"{tag}:{factors[tag].format(el)}" for tag, el in w.letters)


# --- stock factors ---------------------------------------------------------


def symmetric_group(n: int, name: str | None = None) -> Factor:
    elements = tuple(
        sorted(FinSuppEndo.from_images(p) for p in itertools.permutations(range(n)))
    )
    return Factor(
        name=name or f"S{n}",
        multiply=compose,
        identity=FinSuppEndo(),
        inverse=FinSuppEndo.inverse,
        elements=elements,
        parse=parse_endo,
        format=format_endo,
    )


def full_transformation_monoid(n: int, name: str | None = None) -> Factor:
    elements = tuple(
        sorted(FinSuppEndo.from_images(p) for p in itertools.product(range(n), repeat=n))
    )
    return Factor(
        name=name or f"T{n}",
        multiply=compose,
        identity=FinSuppEndo(),
        elements=elements,
        parse=parse_endo,
        format=format_endo,
    )


def endo_monoid(elements: Iterable[FinSuppEndo], name: str = "M") -> Factor:
    """Monoid of finitely supported maps; ``elements`` is advisory (used for sampling)."""
    els = tuple(sorted(set(elements) | {FinSuppEndo()}))
    return Factor(
        name=name,
        multiply=compose,
        identity=FinSuppEndo(),
        inverse=None,
        elements=els,
        parse=parse_endo,
        format=format_endo,
    )


def cyclic_group(n: int, name: str | None = None) -> Factor:
    return Factor(
        name=name or f"Z{n}",
        multiply=lambda a, b: (a + b) % n,
        identity=0,
        inverse=lambda a: (-a) % n,
        elements=tuple(range(n)),
        parse=lambda s: int(s.strip()) % n,
        format=str,
    )


def table_monoid(
    name: str, elements: Sequence[Hashable], table: Mapping[tuple, Hashable], identity: Hashable
) -> Factor:
    """Finite monoid given by a full multiplication table."""
    for a in elements:
        if table[(identity, a)] != a or table[(a, identity)] != a:
            raise ValueError(f"{identity!r} is not an identity for {a!r}")
    return Factor(
        name=name,
        multiply=lambda a, b: table[(a, b)],
        identity=identity,
        elements=tuple(elements),
        parse=lambda s: type(identity)(s.strip()),
    )
