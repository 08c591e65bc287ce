"""Pairwise faithfulness witnesses for the doubled action of Se(N) on N x omega.

Given two distinct reduced words over two copies of the monoid of finitely
supported maps, we build an involution ``t`` of N x omega and a start point
such that the two words, with the first copy acting naturally on every level
and the second acting through ``t``-conjugation, send the start point to
different places.  Letters are indexed from the right: ``g_1`` is the
rightmost letter of the first word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .ground import FinSuppEndo, LevelInvolution, LevelPoint
from .words import CopWord

ALPHA = "A"
T = "T"

Step = Union[str, FinSuppEndo]


def _rightmost_first(w: CopWord) -> list[tuple[str, FinSuppEndo]]:
    return list(reversed(w.letters))


def _aligned(gw: CopWord, hw: CopWord) -> bool:
    return len(gw) == len(hw) and gw.tags == hw.tags


def _first_difference(gw: CopWord, hw: CopWord) -> int:
    """Least k (1-based, from the right) with ``g_k != h_k``."""
    g, h = _rightmost_first(gw), _rightmost_first(hw)
    for k, (a, b) in enumerate(zip(g, h), start=1):
        if a[1] != b[1]:
            return k
    raise ValueError("aligned words are equal")


def _disagreements(g: FinSuppEndo, h: FinSuppEndo) -> list[int]:
    return sorted(p for p in g.support() | h.support() if g(p) != h(p))


def orient_pair(gw: CopWord, hw: CopWord) -> tuple[CopWord, CopWord, bool]:
    """Order the pair so the first word is the one to trace; report whether swapped."""
    if gw == hw:
        raise ValueError("words must be distinct")
    if len(gw) != len(hw):
        return (gw, hw, False) if len(gw) > len(hw) else (hw, gw, True)
    if not _aligned(gw, hw):
        return gw, hw, False
    k = _first_difference(gw, hw)
    g = _rightmost_first(gw)[k - 1][1]
    h = _rightmost_first(hw)[k - 1][1]
    dis = _disagreements(g, h)
    if any(p in g.support() for p in dis):
        return gw, hw, False
    # a disagreement point fixed by g is moved by h
    assert any(p in h.support() for p in dis)
    return hw, gw, True


def choose_points(gw: CopWord, hw: CopWord) -> list[int]:
    """``p_1..p_n``: least point moved by ``g_k``, preferring disagreement with ``h_k``."""
    g = _rightmost_first(gw)
    h = _rightmost_first(hw) if _aligned(gw, hw) else []
    points = []
    for k, (_, gk) in enumerate(g):
        moved = sorted(gk.support())
        if not moved:
            raise ValueError(f"letter {k + 1} is the identity")
        choice = moved[0]
        if h:
            hk = h[k][1]
            differing = [p for p in moved if gk(p) != hk(p)]
            if differing:
                choice = differing[0]
        points.append(choice)
    return points


def build_involution(points: Sequence[int], gw: CopWord) -> LevelInvolution:
    g = [el for _, el in _rightmost_first(gw)]
    n = len(g)
    if len(points) != n:
        raise ValueError("need one point per letter")
    for k, (gk, pk) in enumerate(zip(g, points), start=1):
        if gk(pk) == pk:
            raise ValueError(f"g_{k} fixes p_{k}={pk}")
    if n == 0:
        return LevelInvolution(())
    pairs = [(LevelPoint(points[0], 0), LevelPoint(points[0], 1))]
    for k in range(1, n):
        pairs.append((LevelPoint(g[k - 1](points[k - 1]), k), LevelPoint(points[k], k + 1)))
    last = g[n - 1](points[n - 1])
    pairs.append((LevelPoint(last, n), LevelPoint(last, n + 1)))
    return LevelInvolution(tuple(pairs))


def pad_with_t(word: CopWord, first: CopWord | None = None) -> list[Step]:
    """Left-to-right factor list with T markers; end padding follows ``first``.

    Second-copy letters become ``T g T``.  A T is added at an end when the
    first word's letter at that end comes from the first copy.  Adjacent T's
    are kept, so evaluation stays a faithful record of the factors.
    """
    first = word if first is None else first
    seq: list[Step] = []
    if first.letters and first.letters[0][0] == ALPHA:
        seq.append(T)
    for tag, el in word.letters:
        if tag == ALPHA:
            seq.append(el)
        else:
            seq.extend((T, el, T))
    if first.letters and first.letters[-1][0] == ALPHA:
        seq.append(T)
    return seq


def evaluate_trace(seq: Sequence[Step], t: LevelInvolution, start: LevelPoint) -> list[LevelPoint]:
    trace = [LevelPoint(*start)]
    x = trace[0]
    for step in reversed(seq):
        x = t(x) if isinstance(step, str) else LevelPoint(step(x.p), x.k)
        trace.append(x)
    return trace


@dataclass(frozen=True)
class SymWitness:
    t: LevelInvolution
    start: LevelPoint
    trace_g: tuple[LevelPoint, ...]
    trace_h: tuple[LevelPoint, ...]
    adjusted_g: tuple[Step, ...]
    adjusted_h: tuple[Step, ...]
    swapped: bool
    n: int

    @property
    def distinguishes(self) -> bool:
        return self.trace_g[-1] != self.trace_h[-1]

    def to_json(self) -> dict:
        return {
            "t": self.t.to_json(),
            "start": list(self.start),
            "traceG": [list(x) for x in self.trace_g],
            "traceH": [list(x) for x in self.trace_h],
            "swapped": self.swapped,
            "n": self.n,
        }


def distinguish(gw: CopWord, hw: CopWord) -> SymWitness:
    """Witness that ``gw`` and ``hw`` act differently; the check is performed, not assumed."""
    g, h, swapped = orient_pair(gw, hw)
    points = choose_points(g, h)
    t = build_involution(points, g)
    start = LevelPoint(points[0], 0)
    seq_g = pad_with_t(g)
    seq_h = pad_with_t(h, first=g)
    tg = evaluate_trace(seq_g, t, start)
    th = evaluate_trace(seq_h, t, start)
    w = SymWitness(t, start, tuple(tg), tuple(th), tuple(seq_g), tuple(seq_h), swapped, len(g))
    if tg[-1].k != len(g) + 1:
        raise AssertionError(f"first trace ended at {tg[-1]}, expected level {len(g) + 1}")
    if not w.distinguishes:
        raise AssertionError(f"witness failed to separate {gw} and {hw}")
    return w


def touched_window(w: SymWitness) -> set[LevelPoint]:
    pts = set(w.t.support()) | set(w.trace_g) | set(w.trace_h)
    return pts


def group_case_check(w: SymWitness) -> bool:
    """Every factor of both padded sequences permutes a finite window of N x omega.

    Requires all letters to be permutations; the window is closed under the
    letters (their supports on each level) and under ``t``.
    """
    letters = [s for s in (*w.adjusted_g, *w.adjusted_h) if not isinstance(s, str)]
    if not all(f.is_permutation() for f in letters):
        return False
    coords: set[int] = set()
    levels: set[int] = set()
    for x in touched_window(w):
        coords.add(x.p)
        levels.add(x.k)
    for f in letters:
        coords |= f.support()
    window = {LevelPoint(p, k) for p in coords for k in levels}
    window |= w.t.support()
    for f in letters:
        img = {LevelPoint(f(x.p), x.k) for x in window}
        if img != window:
            return False
    return {w.t(x) for x in window} == window
