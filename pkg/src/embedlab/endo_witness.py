"""Faithfulness witnesses for the doubled representation of End(V) coproducts.

For a nonzero ``x`` in a coproduct of two copies of End(V) we build an
order-2 map ``t`` of the levelled space (basis ``N x omega``) such that the
representation sending ``A`` letters to their natural action and ``B``
letters to ``t f t`` does not kill ``x``.  The certificate is a nonzero
coefficient at the top level ``n + 1`` of ``h(x)'`` applied to ``(p_1, 0)``.

Pipeline: :func:`sigma_select` finds a finite window on which compression
is injective, :func:`rebase` rewrites ``x`` over the window basis,
:func:`select_word` picks the distinguished top-degree word and
:func:`build_t_endo` builds ``t``; :func:`evaluate_hx` does the check.

Letters are finite-rank-plus-scalar (see :mod:`embedlab.tensor`), which keeps
every operator finitely described; ``D = 1 - E(0, 0)`` is the only letter with
infinite rank.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .ground import LevelPoint
from .linalg import rank
from .tensor import D, R, RatOperator, TensorElem, Word, format_key, letter_operator

# letter key of 1 - P_sigma, the part of D that annihilates the window
Z = (-2, -2)


class LevelVec:
    """Finite vector over the basis ``N x omega`` with exact coefficients."""

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[LevelPoint, Fraction] | Iterable = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[LevelPoint, Fraction] = defaultdict(Fraction)
        for x, c in items:
            acc[LevelPoint(*x)] += Fraction(c)
        self.entries = {x: c for x, c in sorted(acc.items()) if c}

    @classmethod
    def basis(cls, p: int, k: int) -> "LevelVec":
        return cls({LevelPoint(p, k): 1})

    def __add__(self, other: "LevelVec") -> "LevelVec":
        return LevelVec([*self.entries.items(), *other.entries.items()])

    def __sub__(self, other: "LevelVec") -> "LevelVec":
        return self + other.scale(-1)

    def scale(self, c) -> "LevelVec":
        c = Fraction(c)
        return LevelVec({x: v * c for x, v in self.entries.items()})

    def __eq__(self, other):
        return isinstance(other, LevelVec) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(self.entries.items()))

    def is_zero(self) -> bool:
        return not self.entries

    def level(self, k: int) -> "LevelVec":
        return LevelVec({x: c for x, c in self.entries.items() if x.k == k})

    def max_level(self) -> int:
        return max((x.k for x in self.entries), default=-1)

    def to_json(self) -> list:
        return [[x.p, x.k, str(c)] for x, c in self.entries.items()]

    def __repr__(self):
        inner = " + ".join(f"{c}*({x.p},{x.k})" for x, c in self.entries.items())
        return f"LevelVec({inner or '0'})"


class LevelMap:
    """Linear map fixing every basis point not listed in ``images``."""

    __slots__ = ("images",)

    def __init__(self, images: Mapping[LevelPoint, LevelVec]):
        self.images = {
            LevelPoint(*x): v for x, v in sorted(images.items()) if v != LevelVec.basis(*x)
        }

    def __call__(self, vec: LevelVec) -> LevelVec:
        acc: list = []
        for x, c in vec.entries.items():
            img = self.images.get(x)
            if img is None:
                acc.append((x, c))
            else:
                acc.extend((y, c * d) for y, d in img.entries.items())
        return LevelVec(acc)

    def support(self) -> set[LevelPoint]:
        pts = set(self.images)
        for v in self.images.values():
            pts.update(v.entries)
        return pts

    def is_involution(self) -> bool:
        """Exact check of ``t o t = 1`` on every basis point the map touches."""
        return all(self(self(LevelVec.basis(*x))) == LevelVec.basis(*x) for x in self.support())

    def integral(self) -> bool:
        return all(c.denominator == 1 for v in self.images.values() for c in v.entries.values())

    def to_json(self) -> list:
        return [[x.p, x.k, v.to_json()] for x, v in self.images.items()]


IDENTITY_MAP = LevelMap({})


# --- natural action of window operators -------------------------------------


def _natural(op_apply, vec: LevelVec) -> LevelVec:
    by_level: dict[int, dict[int, Fraction]] = defaultdict(dict)
    for x, c in vec.entries.items():
        by_level[x.k][x.p] = c
    acc: list = []
    for k, v in by_level.items():
        acc.extend((LevelPoint(p, k), c) for p, c in op_apply(v).items())
    return LevelVec(acc)


def natural_action(op: RatOperator, vec: LevelVec) -> LevelVec:
    """``op`` acting on every level at once."""
    return _natural(op.apply, vec)


def _key_apply(key, sigma: frozenset):
    if key == Z:
        return lambda v: {p: c for p, c in v.items() if p not in sigma}
    return letter_operator(key).apply


def apply_word(word: Word, t: LevelMap, vec: LevelVec, sigma: frozenset = frozenset()) -> LevelVec:
    """``h(word)`` on ``vec``: ``A`` letters act naturally, ``B`` letters as ``t f t``."""
    for tag, key in reversed(word):
        f = _key_apply(key, sigma)
        if tag == "A":
            vec = _natural(f, vec)
        else:
            vec = t(_natural(f, t(vec)))
    return vec


# --- window selection and rebasing -------------------------------------------


def _letter_ops(x: TensorElem) -> list[RatOperator]:
    return [RatOperator.identity()] + [letter_operator(k) for k in sorted(x.letter_keys())]


def _span_rank(ops: Sequence[RatOperator], pts: Sequence[int]) -> int:
    return rank([[v for row in op.window(pts) for v in row] for op in ops])


def sigma_select(x: TensorElem, r: int = R) -> frozenset[int]:
    """Finite window containing ``r`` on which compression is injective on the letter span.

    Letters are scalar plus a matrix supported on the occurring indices, so
    their span is detected exactly on those indices plus one fresh point.
    Starting from the occurring indices, fresh points are added until the
    compressed rank matches.
    """
    if x.is_zero():
        raise ValueError("x must be nonzero")
    ops = _letter_ops(x)
    base = x.indices() | {r}
    fresh = max(base) + 1
    true_rank = _span_rank(ops, sorted(base | {fresh}))
    sigma = set(base)
    while _span_rank(ops, sorted(sigma)) < true_rank:
        sigma.add(fresh)
        fresh += 1
    return frozenset(sigma)


def compression_ranks(x: TensorElem, sigma: Iterable[int]) -> tuple[int, int]:
    """(rank of the letter span, rank after compression to ``sigma``)."""
    ops = _letter_ops(x)
    sigma = sorted(sigma)
    fresh = max([*sigma, *x.indices()]) + 1
    return _span_rank(ops, sorted(set(sigma) | x.indices() | {fresh})), _span_rank(ops, sigma)


def _rebase_key(key, sigma: frozenset) -> dict:
    if key == D:
        out = {(p, p): Fraction(1) for p in sorted(sigma) if p != R}
        out[Z] = Fraction(1)
        return out
    q, p = key
    if p not in sigma:
        raise ValueError(f"letter E({q},{p}) reaches outside the window")
    return {key: Fraction(1)}


def rebase(x: TensorElem, sigma: Iterable[int]) -> dict[Word, Fraction]:
    """Coefficients of ``x`` over words in the window basis.

    Matrix units ``E(q, p)`` with ``p`` in the window stay as they are;
    ``D`` becomes the window diagonal (without ``E(r, r)``) plus ``Z = 1 - P``.
    """
    sigma = frozenset(sigma)
    out: dict[Word, Fraction] = defaultdict(Fraction)
    for word, coef in x.terms.items():
        partial = {(): coef}
        for tag, key in word:
            nxt: dict = defaultdict(Fraction)
            for w, c in partial.items():
                for k, d in _rebase_key(key, sigma).items():
                    nxt[w + ((tag, k),)] += c * d
            partial = nxt
        for w, c in partial.items():
            out[w] += c
    return {w: c for w, c in sorted(out.items()) if c}


def _choice_order(letter):
    tag, (q, p) = letter
    return (q == p, (q, p), tag)


def select_word(rebased: Mapping[Word, Fraction], sigma: Iterable[int] | None = None) -> Word:
    """Distinguished top-degree word, chosen greedily from the right.

    Candidates are the maximal-length words with nonzero coefficient whose
    letters are all window matrix units.  At each position a letter with
    ``q != p`` is preferred when some candidate extends the choices so far;
    ties go to the least ``(q, p)``, then tag.
    """
    words = [w for w, c in rebased.items() if c]
    if not words:
        raise ValueError("x must be nonzero")
    n = max(len(w) for w in words)
    if n == 0:
        return ()
    sig = None if sigma is None else frozenset(sigma)

    def usable(w):
        return all(k != Z and (sig is None or (k[0] in sig and k[1] in sig)) for _, k in w)

    cands = [w for w in words if len(w) == n and usable(w)]
    if not cands:
        raise AssertionError("no top-degree word survives compression")
    suffix: Word = ()
    for j in range(1, n + 1):
        letter = min((w[n - j] for w in cands), key=_choice_order)
        suffix = (letter,) + suffix
        cands = [w for w in cands if w[n - j] == letter]
    return suffix


# --- the involution -----------------------------------------------------------


def p_prime(q: int, p: int, k: int, r: int = R) -> LevelVec:
    """``(p', k)``: ``p`` itself, or ``p + r`` when the letter is diagonal."""
    if q != p:
        return LevelVec.basis(p, k)
    if p == r:
        raise ValueError("E(r, r) is not a basis letter")
    return LevelVec.basis(p, k) + LevelVec.basis(r, k)


def t_pairs(word: Word, r: int = R) -> list[tuple[LevelVec, LevelVec]]:
    """The ``2(n+1)`` transposed vectors, as vectors over ``N x omega``."""
    letters = [k for _, k in reversed(word)]  # (q_1, p_1) first
    n = len(letters)
    if n == 0:
        return []
    q1, p1 = letters[0]
    pairs = [(LevelVec.basis(p1, 0), p_prime(q1, p1, 1, r))]
    for k in range(2, n + 1):
        qk, pk = letters[k - 1]
        pairs.append((LevelVec.basis(letters[k - 2][0], k - 1), p_prime(qk, pk, k, r)))
    qn = letters[-1][0]
    pairs.append((LevelVec.basis(qn, n), LevelVec.basis(qn, n + 1)))
    return pairs


def build_t_endo(word: Word, r: int = R) -> LevelMap:
    """The order-2 map swapping the :func:`t_pairs` and fixing the rest of the adapted basis.

    On a level whose letter is diagonal the adapted basis trades ``(r, k)``
    for ``(p_k + r, k)``; the image of the old ``(r, k)`` is then
    ``t(p_k + r) - t(p_k)``.
    """
    letters = [k for _, k in reversed(word)]
    for q, p in letters:
        if (q, p) == (r, r) or q < 0 or p < 0:
            raise ValueError(f"bad letter E({q},{p})")
    pairs = t_pairs(word, r)
    swap: dict[LevelVec, LevelVec] = {}
    for a, b in pairs:
        for u, v in ((a, b), (b, a)):
            if u in swap and swap[u] != v:
                raise ValueError("inconsistent transpositions")
            swap[u] = v

    def t_new(vec: LevelVec) -> LevelVec:
        return swap.get(vec, vec)

    adapted = {k for k, (q, p) in enumerate(letters, start=1) if q == p}
    images: dict[LevelPoint, LevelVec] = {}
    for vec in swap:
        for x in vec.entries:
            if x in images:
                continue
            if x.k in adapted and x.p == r:
                pk = letters[x.k - 1][1]
                prime = p_prime(pk, pk, x.k, r)
                images[x] = t_new(prime) - t_new(LevelVec.basis(pk, x.k))
            else:
                images[x] = t_new(LevelVec.basis(*x))
    # the old (r, k) on adapted levels is touched even when no pair lists it alone
    for k in adapted:
        x = LevelPoint(r, k)
        if x not in images:
            pk = letters[k - 1][1]
            images[x] = t_new(p_prime(pk, pk, k, r)) - t_new(LevelVec.basis(pk, k))
    t = LevelMap(images)
    if not t.is_involution():
        raise AssertionError("t is not an involution")
    return t


# --- evaluation ---------------------------------------------------------------


def evaluate_hx(x: TensorElem, t: LevelMap, word: Word) -> LevelVec:
    """``h(x)'`` applied to ``(p_1, 0)``.

    ``h(x)'`` is ``h(x)`` with ``t`` multiplied on the right when the rightmost
    letter of ``word`` is an ``A`` letter, and on the left when its leftmost is.
    """
    if not word:
        start = LevelVec.basis(R, 0)
        return sum((apply_word(w, t, start).scale(c) for w, c in x.terms.items()), LevelVec())
    p1 = word[-1][1][1]
    start = LevelVec.basis(p1, 0)
    if word[-1][0] == "A":
        start = t(start)
    acc = LevelVec()
    for w, coef in x.terms.items():
        acc = acc + apply_word(w, t, start).scale(coef)
    if word[0][0] == "A":
        acc = t(acc)
    return acc


@dataclass(frozen=True)
class EndoWitness:
    sigma: frozenset
    word: Word
    n: int
    t: LevelMap
    pairs: tuple
    result: LevelVec

    @property
    def top(self) -> LevelVec:
        return self.result.level(self.n + 1 if self.n else 0)

    @property
    def certified(self) -> bool:
        return not self.top.is_zero()

    def to_json(self) -> dict:
        return {
            "sigma": sorted(self.sigma),
            "word": [[tag, format_key(k)] for tag, k in self.word],
            "n": self.n,
            "tPairs": [[a.to_json(), b.to_json()] for a, b in self.pairs],
            "result": self.result.to_json(),
            "top": self.top.to_json(),
        }


def endo_witness(x: TensorElem) -> EndoWitness:
    """Run the whole construction; raises if the top-level component vanishes."""
    if x.is_zero():
        raise ValueError("x must be nonzero")
    if x.degree() == 0:
        res = evaluate_hx(x, IDENTITY_MAP, ())
        w = EndoWitness(frozenset({R}), (), 0, IDENTITY_MAP, (), res)
    else:
        sigma = sigma_select(x)
        word = select_word(rebase(x, sigma), sigma)
        t = build_t_endo(word)
        res = evaluate_hx(x, t, word)
        w = EndoWitness(sigma, word, len(word), t, tuple(t_pairs(word)), res)
    if not w.certified:
        raise AssertionError(f"top-level component vanished for {x!r}")
    return w


# --- companions ---------------------------------------------------------------


def vandermonde_embed(values: Sequence, m: int) -> list[list[Fraction]]:
    """Rows ``(1, a, ..., a^(m-1))`` for pairwise distinct rationals ``a``."""
    vals = [Fraction(a) for a in values]
    if len(set(vals)) != len(vals):
        raise ValueError("values must be pairwise distinct")
    if m < len(vals):
        raise ValueError("need at least as many columns as values")
    return [[a**i for i in range(m)] for a in vals]


def orthogonal_idempotent_check(ops: Sequence[RatOperator]) -> bool:
    """Nonzero, idempotent and pairwise orthogonal; ranks then fit the window."""
    zero = RatOperator()
    for i, e in enumerate(ops):
        if e.is_zero() or e * e != e:
            return False
        for j, f in enumerate(ops):
            if i != j and e * f != zero:
                return False
    pts = sorted(set().union(*(e.indices() for e in ops)) | {0})
    pts.append(pts[-1] + 1)
    total = sum(rank(e.window(pts)) for e in ops)
    assert total <= len(pts), "orthogonal idempotents exceed the window dimension"
    return True
