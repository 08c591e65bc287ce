"""Coproducts of endomorphism algebras as sums of alternating tensor words.

Operators act on V with basis N.  Fixing r = 0, every operator splits as
``c * 1 + f0`` with ``f0(0)`` having no component along ``0``.  The complement
``En0`` of scalars gets the basis

* ``E(q, p)`` for ``(q, p) != (0, 0)``  (matrix units), and
* ``D = 1 - E(0, 0)``,

so a finite-rank-plus-scalar operator has a unique finite expansion.  Words in
a ``TensorElem`` alternate tags and use only these basis letters.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

R = 0
# letter key for D; matrix units use (q, p) with q, p >= 0
D = (-1, -1)

Key = tuple[int, int]
Word = tuple[tuple[str, Key], ...]


def _frac_dict(items) -> dict:
    out = {}
    for k, v in items:
        v = Fraction(v)
        if v:
            out[k] = v
    return out


@dataclass(frozen=True)
class RatOperator:
    """``scalar * 1 + sum matrix[(q, p)] * E(q, p)`` on V."""

    scalar: Fraction = Fraction(0)
    matrix: Mapping[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        object.__setattr__(self, "matrix", _frac_dict(sorted(dict(self.matrix).items())))

    @classmethod
    def unit(cls, q: int, p: int) -> "RatOperator":
        return cls(0, {(q, p): 1})

    @classmethod
    def identity(cls) -> "RatOperator":
        return cls(1)

    def __hash__(self):
        return hash((self.scalar, tuple(self.matrix.items())))

    def __eq__(self, other):
        return (
            isinstance(other, RatOperator)
            and self.scalar == other.scalar
            and self.matrix == other.matrix
        )

    def __add__(self, other: "RatOperator") -> "RatOperator":
        m = defaultdict(Fraction, self.matrix)
        for k, v in other.matrix.items():
            m[k] += v
        return RatOperator(self.scalar + other.scalar, m)

    def __sub__(self, other: "RatOperator") -> "RatOperator":
        return self + other.scale(-1)

    def scale(self, c) -> "RatOperator":
        c = Fraction(c)
        return RatOperator(self.scalar * c, {k: v * c for k, v in self.matrix.items()})

    def __mul__(self, other: "RatOperator") -> "RatOperator":
        m: dict[Key, Fraction] = defaultdict(Fraction)
        for (q, p), v in self.matrix.items():
            m[(q, p)] += v * other.scalar
        for (q, p), v in other.matrix.items():
            m[(q, p)] += v * self.scalar
        by_row = defaultdict(list)
        for (q, p), v in other.matrix.items():
            by_row[q].append((p, v))
        for (a, b), v in self.matrix.items():
            for p, w in by_row.get(b, ()):
                m[(a, p)] += v * w
        return RatOperator(self.scalar * other.scalar, m)

    def is_zero(self) -> bool:
        return not self.scalar and not self.matrix

    def entry(self, q: int, p: int) -> Fraction:
        return self.matrix.get((q, p), Fraction(0)) + (self.scalar if q == p else 0)

    def indices(self) -> set[int]:
        out = set()
        for q, p in self.matrix:
            out.update((q, p))
        return out

    def apply(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = defaultdict(Fraction)
        for p, c in vec.items():
            if self.scalar:
                out[p] += self.scalar * c
        cols = defaultdict(list)
        for (q, p), v in self.matrix.items():
            cols[p].append((q, v))
        for p, c in vec.items():
            for q, v in cols.get(p, ()):
                out[q] += v * c
        return {k: v for k, v in out.items() if v}

    def window(self, pts: Sequence[int]) -> list[list[Fraction]]:
        """Dense matrix of the operator restricted and compressed to ``pts``."""
        return [[self.entry(q, p) for p in pts] for q in pts]

    def __repr__(self):
        parts = []
        if self.scalar:
            parts.append(f"{self.scalar}*I")
        parts += [f"{v}*E({q},{p})" for (q, p), v in self.matrix.items()]
        return "RatOperator(" + (" + ".join(parts) or "0") + ")"


def in_En0(op: RatOperator, r: int = R) -> bool:
    """True iff ``op(r)`` has zero component along ``r``."""
    return op.entry(r, r) == 0


def letter_operator(key: Key) -> RatOperator:
    if key == D:
        return RatOperator(1, {(R, R): -1})
    return RatOperator.unit(*key)


def split_operator(op: RatOperator) -> tuple[Fraction, dict[Key, Fraction]]:
    """Return ``(c, expansion)`` with ``op = c*1 + sum expansion[k]*letter(k)``."""
    c = op.entry(R, R)
    rest = op.scalar - c  # coefficient of 1 in op - c*1; rewritten as D + E(0,0)
    exp = {k: v for k, v in op.matrix.items() if k != (R, R)}
    if rest:
        exp[D] = rest
    # the E(0,0) coefficient is rest + M00 = 0 by the choice of c
    return c, dict(sorted(exp.items()))


class TensorElem:
    """Exact element of a coproduct of copies of End(V), in canonical form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = defaultdict(Fraction)
        for w, c in items:
            acc[tuple(w)] += Fraction(c)
        self.terms = {w: c for w, c in sorted(acc.items()) if c}

    @classmethod
    def scalar(cls, c) -> "TensorElem":
        return cls({(): c})

    @classmethod
    def letter(cls, tag: str, op: RatOperator) -> "TensorElem":
        c, exp = split_operator(op)
        terms = {((tag, k),): v for k, v in exp.items()}
        terms[()] = c
        return cls(terms)

    def __eq__(self, other):
        return isinstance(other, TensorElem) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "TensorElem") -> "TensorElem":
        return TensorElem(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "TensorElem") -> "TensorElem":
        return self + other.scale(-1)

    def scale(self, c) -> "TensorElem":
        c = Fraction(c)
        return TensorElem({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other: "TensorElem") -> "TensorElem":
        acc: list = []
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                acc.extend((w, a * b * c) for w, c in _word_mul(u, v).items())
        return TensorElem(acc)

    def is_zero(self) -> bool:
        return not self.terms

    def scalar_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def letter_keys(self) -> set[Key]:
        return {k for w in self.terms for _, k in w}

    def indices(self) -> set[int]:
        out = set()
        for k in self.letter_keys():
            if k != D:
                out.update(k)
        return out

    def __repr__(self):
        return f"TensorElem({format_tensor(self)})"


def _word_mul(u: Word, v: Word) -> dict[Word, Fraction]:
    if not u or not v or u[-1][0] != v[0][0]:
        return {u + v: Fraction(1)}
    tag = u[-1][0]
    op = letter_operator(u[-1][1]) * letter_operator(v[0][1])
    c, exp = split_operator(op)
    out: dict[Word, Fraction] = defaultdict(Fraction)
    for k, coef in exp.items():
        out[u[:-1] + ((tag, k),) + v[1:]] += coef
    if c:
        for w, coef in _word_mul(u[:-1], v[1:]).items():
            out[w] += c * coef
    return out


def tensor_normalize(raw: Iterable[tuple[object, Sequence[tuple[str, RatOperator]]]]) -> TensorElem:
    """Canonical form of ``sum coef * prod letters`` (letters are tagged operators).

    >>> x = tensor_normalize([(1, [("A", RatOperator.unit(1, 0))])])
    >>> x.terms
    {(('A', (1, 0)),): Fraction(1, 1)}
    """
    total = TensorElem()
    for coef, letters in raw:
        term = TensorElem.scalar(coef)
        for tag, op in letters:
            term = term * TensorElem.letter(tag, op)
        total = total + term
    return total


def word_operator_product(word: Word) -> list[RatOperator]:
    return [letter_operator(k) for _, k in word]


# --- text format -----------------------------------------------------------

_LETTER_RE = re.compile(r"^([A-Za-z_]\w*):(E\(\s*(\d+)\s*,\s*(\d+)\s*\)|D|I)$")


def parse_tensor(text: str) -> TensorElem:
    """Parse e.g. ``"2*A:E(1,0)*B:E(0,1) + -1*A:D + 3"``.

    Each summand is ``*``-separated factors: rationals and letters
    ``TAG:E(q,p)``, ``TAG:D`` or ``TAG:I``.
    """
    s = text.replace(" ", "")
    if not s:
        return TensorElem()
    summands = re.split(r"(?<=[\w)])(?=[+-])", s)
    raw = []
    for summand in summands:
        summand = summand.lstrip("+")
        coef = Fraction(1)
        if summand.startswith("-") and not re.match(r"^-\d", summand):
            coef, summand = Fraction(-1), summand[1:]
        letters = []
        for factor in summand.split("*"):
            m = _LETTER_RE.match(factor)
            if m:
                tag, body = m.group(1), m.group(2)
                if body == "D":
                    op = letter_operator(D)
                elif body == "I":
                    op = RatOperator.identity()
                else:
                    op = RatOperator.unit(int(m.group(3)), int(m.group(4)))
                letters.append((tag, op))
            else:
                try:
                    coef *= Fraction(factor)
                except (ValueError, ZeroDivisionError) as exc:
                    raise ValueError(f"bad factor {factor!r} in {text!r}") from exc
        raw.append((coef, letters))
    return tensor_normalize(raw)


def format_key(key: Key) -> str:
    return "D" if key == D else f"E({key[0]},{key[1]})"


def format_word(word: Word) -> str:
    return "*".join(f"{tag}:{format_key(k)}" for tag, k in word)


def format_tensor(x: TensorElem) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for w, c in x.terms.items():
        parts.append(str(c) if not w else f"{c}*{format_word(w)}")
    return " + ".join(parts)
