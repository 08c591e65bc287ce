"""Compiled exhaustive search for the Se(N) doubling witness.

Re-implements the witness construction of :mod:`embedlab.sym_witness` on
integer arrays so that every pair of short words over a small letter pool
can be checked.  The Python implementation stays the reference; tests compare
the two endpoint for endpoint.

The involution built from point data ``p_k`` and ``q_k = g_k(p_k)`` is held as
two arrays: at level ``l`` the point ``U[l]`` goes up to ``(D[l+1], l+1)`` and
``D[l]`` goes down to ``(U[l-1], l-1)``, where ``U = (p_1, q_1, ..., q_n)`` and
``D[1..n+1] = (p_1, ..., p_n, q_n)``.  These are exactly the pairs listed by
:func:`embedlab.sym_witness.build_involution`.

Every ordered input ``(x, y)`` of distinct words is reduced by the
orientation rule to an oriented pair ``(first, second)``; the kernel verifies
every oriented pair that the rule can produce, so all ordered inputs (and in
particular all unordered pairs) are covered:

* unaligned pairs (different lengths, or equal lengths with different tag
  patterns): the involution depends on the first word only, so each first
  word sweeps every admissible second word, reusing the states of the
  second word's rightmost-first prefixes;
* aligned pairs (same length and tags): the points depend on both words.
  The pairs are walked depth first over positions ``1..n`` (right to left),
  so the shared part of both traces is computed once per prefix.  For aligned
  words the padded factor sequence is always ``T w_1 T w_2 ... T w_n T``
  whatever the tags are, which is what the walk evaluates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .ground import FinSuppEndo
from .words import CopWord

ALPHA, BETA = 0, 1


@dataclass(frozen=True)
class KernelTables:
    dom: int
    imgs: np.ndarray  # (L, dom) images
    least: np.ndarray  # (L,) least moved point
    pt: np.ndarray  # (L, L) point preferred for a against aligned letter b
    keep: np.ndarray  # (L, L) some disagreement point of a, b is moved by a


def letter_tables(pool: Sequence[FinSuppEndo], dom: int) -> KernelTables:
    L = len(pool)
    for f in pool:
        if f.is_identity():
            raise ValueError("pool contains the identity")
        if any(p >= dom or f(p) >= dom for p in f.support()):
            raise ValueError("pool maps must preserve {0..dom-1}")
    imgs = np.array([[f(p) for p in range(dom)] for f in pool], dtype=np.int64)
    least = np.array([min(f.support()) for f in pool], dtype=np.int64)
    pt = np.empty((L, L), dtype=np.int64)
    keep = np.zeros((L, L), dtype=np.bool_)
    for a, f in enumerate(pool):
        moved = sorted(f.support())
        for b, g in enumerate(pool):
            differing = [p for p in moved if f(p) != g(p)]
            pt[a, b] = differing[0] if differing else moved[0]
            keep[a, b] = bool(differing)
    for a in range(L):
        for b in range(L):
            if a != b and not (keep[a, b] or keep[b, a]):
                raise AssertionError("two distinct maps with no moved disagreement point")
    return KernelTables(dom, imgs, least, pt, keep)


@dataclass(frozen=True)
class EncodedWords:
    letters: np.ndarray  # (W, maxlen) rightmost-first letter ids
    tags: np.ndarray  # (W, maxlen)
    lens: np.ndarray  # (W,)
    parent: np.ndarray  # (W,) index of the word minus its leftmost letter
    pattern: np.ndarray  # (W,) tag-pattern id
    pat_len: np.ndarray  # (P,) length of each pattern
    pat_start: np.ndarray  # (P+1,) offsets into pat_members
    pat_members: np.ndarray  # word indices grouped by pattern


def encode_words(words: Sequence[CopWord], pool: Sequence[FinSuppEndo]) -> EncodedWords:
    """Encode words, which must be listed shorter first and suffix-closed."""
    index = {f: i for i, f in enumerate(pool)}
    maxlen = max(1, max((len(w) for w in words), default=0))
    W = len(words)
    letters = np.zeros((W, maxlen), dtype=np.int64)
    tags = np.zeros_like(letters)
    lens = np.zeros(W, dtype=np.int64)
    parent = np.full(W, -1, dtype=np.int64)
    pattern = np.zeros(W, dtype=np.int64)
    position = {w: i for i, w in enumerate(words)}
    if len(position) != W:
        raise ValueError("words must be distinct")
    patterns: dict[tuple, int] = {}
    for i, w in enumerate(words):
        lens[i] = len(w)
        if i and lens[i] < lens[i - 1]:
            raise ValueError("words must be listed shorter first")
        for j, (tag, el) in enumerate(reversed(w.letters)):
            letters[i, j] = index[el]
            tags[i, j] = ALPHA if tag == "A" else BETA
        pattern[i] = patterns.setdefault(w.tags, len(patterns))
        if len(w):
            par = position.get(CopWord(w.letters[1:]), -1)
            if par < 0:
                raise ValueError("word list must be closed under deleting the leftmost letter")
            parent[i] = par
    P = len(patterns)
    pat_len = np.zeros(P, dtype=np.int64)
    for tg, pid in patterns.items():
        pat_len[pid] = len(tg)
    order = np.argsort(pattern, kind="stable").astype(np.int64)
    counts = np.bincount(pattern, minlength=P)
    pat_start = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    return EncodedWords(letters, tags, lens, parent, pattern, pat_len, pat_start, order)


@njit(cache=True)
def _t_row(U, D, n, dom):
    """The involution as a table on states ``level * dom + coord``."""
    ns = dom * (n + 2)
    row = np.empty(ns, dtype=np.int64)
    for s in range(ns):
        c, l = s % dom, s // dom
        if l <= n and c == U[l]:
            row[s] = (l + 1) * dom + D[l + 1]
        elif 1 <= l and c == D[l]:
            row[s] = (l - 1) * dom + U[l - 1]
        else:
            row[s] = s
    return row


@njit(cache=True)
def _run(w, letters, tags, lens, imgs, row, s, pad_r, pad_l, dom):
    """Evaluate the padded factor sequence of word ``w`` right to left from ``s``."""
    if pad_r:
        s = row[s]
    for j in range(lens[w]):
        a = letters[w, j]
        if tags[w, j] == BETA:
            s = row[s]
            s = (s // dom) * dom + imgs[a, s % dom]
            s = row[s]
        else:
            s = (s // dom) * dom + imgs[a, s % dom]
    if pad_l:
        s = row[s]
    return s


@njit(cache=True)
def _orient(i, j, letters, tags, lens, keep):
    """(first, second, aligned) as the reference orientation rule decides."""
    li, lj = lens[i], lens[j]
    if li > lj:
        return i, j, False
    if lj > li:
        return j, i, False
    for k in range(li):
        if tags[i, k] != tags[j, k]:
            return i, j, False
    for k in range(li):
        a, b = letters[i, k], letters[j, k]
        if a != b:
            if keep[a, b]:
                return i, j, True
            return j, i, True
    return -1, -1, True


@njit(cache=True)
def _pair_endpoints(i, j, letters, tags, lens, imgs, least, pt, keep, dom):
    """Straight per-pair evaluation, used to cross-check the fast passes."""
    f, s, aligned = _orient(i, j, letters, tags, lens, keep)
    n = lens[f]
    U = np.full(n + 2, -1, dtype=np.int64)
    D = np.full(n + 2, -1, dtype=np.int64)
    for k in range(n):
        a = letters[f, k]
        p = pt[a, letters[s, k]] if aligned else least[a]
        D[k + 1] = p
        U[k + 1] = imgs[a, p]
    U[0] = D[1]
    D[n + 1] = U[n]
    row = _t_row(U, D, n, dom)
    pad_r = tags[f, 0] == ALPHA
    pad_l = tags[f, n - 1] == ALPHA
    ef = _run(f, letters, tags, lens, imgs, row, D[1], pad_r, pad_l, dom)
    es = _run(s, letters, tags, lens, imgs, row, D[1], pad_r, pad_l, dom)
    return f, s, n, ef, es


@njit(cache=True)
def _unaligned_pass(letters, tags, lens, parent, pattern, pat_len, pat_start, pat_members, imgs, least, dom):
    W = lens.shape[0]
    maxlen = letters.shape[1]
    U = np.full(maxlen + 2, -1, dtype=np.int64)
    D = np.full(maxlen + 2, -1, dtype=np.int64)
    st = np.empty(W, dtype=np.int64)
    pairs = 0
    bad_level = 0
    bad_end = 0
    fi = -1
    fj = -1
    for f in range(W):
        n = lens[f]
        if n == 0:
            continue
        for k in range(n):
            a = letters[f, k]
            D[k + 1] = least[a]
            U[k + 1] = imgs[a, least[a]]
        U[0] = D[1]
        D[n + 1] = U[n]
        row = _t_row(U, D, n, dom)
        pad_r = tags[f, 0] == ALPHA
        pad_l = tags[f, n - 1] == ALPHA
        target = (n + 1) * dom + U[n]
        ef = _run(f, letters, tags, lens, imgs, row, D[1], pad_r, pad_l, dom)
        level_ok = ef == target
        # states (before left padding) of all shorter words, built from prefixes
        st[0] = row[D[1]] if pad_r else D[1]
        h = 1
        while h < W and lens[h] < n:
            k = lens[h] - 1
            s = st[parent[h]]
            a = letters[h, k]
            if tags[h, k] == BETA:
                s = row[s]
                s = (s // dom) * dom + imgs[a, s % dom]
                s = row[s]
            else:
                s = (s // dom) * dom + imgs[a, s % dom]
            st[h] = s
            h += 1
        shorter = h
        for h in range(shorter):
            eh = row[st[h]] if pad_l else st[h]
            pairs += 1
            if not level_ok:
                bad_level += 1
            if eh == ef:
                bad_end += 1
            if (eh == ef or not level_ok) and fi < 0:
                fi, fj = f, h
        # same length, other tag pattern; both argument orders get visited
        for pid in range(pat_len.shape[0]):
            if pat_len[pid] != n or pid == pattern[f]:
                continue
            for idx in range(pat_start[pid], pat_start[pid + 1]):
                h = pat_members[idx]
                k = n - 1
                s = st[parent[h]]
                a = letters[h, k]
                if tags[h, k] == BETA:
                    s = row[s]
                    s = (s // dom) * dom + imgs[a, s % dom]
                    s = row[s]
                else:
                    s = (s // dom) * dom + imgs[a, s % dom]
                eh = row[s] if pad_l else s
                pairs += 1
                if not level_ok:
                    bad_level += 1
                if eh == ef:
                    bad_end += 1
                if (eh == ef or not level_ok) and fi < 0:
                    fi, fj = f, h
    return pairs, bad_level, bad_end, fi, fj


@njit(cache=True, inline="always")
def _tstep(c, l, U, D):
    """Apply the involution to ``(c, l)``; here ``U[l+1]``, ``D[l+1]`` hold level ``l``.

    Branch free: the traces are data dependent and mispredicts dominate otherwise.
    """
    up = np.int64(c == U[l + 1])
    dn = np.int64(c == D[l + 1]) & (1 - up)
    return up * D[l + 2] + dn * U[l] + (1 - up - dn) * c, l + up - dn


@njit(cache=True)
def _leaf(n, L, imgs, pt, keep, U, D, eqp, cf, lf, cs, ls, res):
    """All letter pairs at position ``n`` below one prefix; ``res`` accumulates counts."""
    bad_level = 0
    bad_end = 0
    count = 0
    for a in range(L):
        for b in range(L):
            if eqp and (a == b or not keep[a, b]):
                continue
            p = pt[a, b]
            q = imgs[a, p]
            U[n + 1] = q
            D[n + 1] = p
            if n == 1:
                U[1] = p
                c1, l1, c2, l2 = p, 1, p, 1
            else:
                c1, l1 = _tstep(cf, lf, U, D)
                c2, l2 = _tstep(cs, ls, U, D)
            c1 = imgs[a, c1]
            c2 = imgs[b, c2]
            D[n + 2] = q
            c1, l1 = _tstep(c1, l1, U, D)
            c2, l2 = _tstep(c2, l2, U, D)
            lvl_bad = 1 - (np.int64(l1 == n + 1) & np.int64(c1 == q))
            end_bad = np.int64(c1 == c2) & np.int64(l1 == l2)
            count += 1
            bad_level += lvl_bad
            bad_end += end_bad
            if (lvl_bad | end_bad) and res[3] < 0:
                res[3] = a
                res[4] = b
    D[n + 2] = -1
    res[0] += count
    res[1] += bad_level
    res[2] += bad_end


@njit(cache=True)
def _aligned_pass(n, L, imgs, pt, keep):
    """Walk all oriented aligned pairs of length ``n`` over letters ``0..L-1``.

    Positions ``1..n-1`` are a depth-first walk over letter pairs; the last
    position is swept by :func:`_leaf`.  Returns (pairs, level failures,
    separation failures, and the first failing pair as rightmost-first letter
    ids of the first and second word).
    """
    # level l lives at index l + 1; the sentinels -1 never match a point
    U = np.full(n + 4, -1, dtype=np.int64)
    D = np.full(n + 4, -1, dtype=np.int64)
    fa = np.zeros(n + 1, dtype=np.int64)
    sb = np.zeros(n + 1, dtype=np.int64)
    eq = np.zeros(n + 1, dtype=np.bool_)  # positions 1..j equal so far
    eq[0] = True
    # trace states after letter j, before the following T
    cf = np.zeros(n + 1, dtype=np.int64)
    lf = np.zeros(n + 1, dtype=np.int64)
    cs = np.zeros(n + 1, dtype=np.int64)
    ls = np.zeros(n + 1, dtype=np.int64)
    cursor = np.full(n + 1, -1, dtype=np.int64)  # letter pair a*L+b at depth j
    res = np.zeros(5, dtype=np.int64)
    res[3] = -1
    bad_f = np.full(n, -1, dtype=np.int64)
    bad_s = np.full(n, -1, dtype=np.int64)
    if n == 1:
        _leaf(1, L, imgs, pt, keep, U, D, True, 0, 0, 0, 0, res)
        if res[3] >= 0:
            bad_f[0], bad_s[0] = res[3], res[4]
        return res[0], res[1], res[2], bad_f, bad_s
    j = 1
    while j >= 1:
        cursor[j] += 1
        if cursor[j] >= L * L:
            cursor[j] = -1
            j -= 1
            continue
        a, b = cursor[j] // L, cursor[j] % L
        if eq[j - 1]:
            if a == b:
                eq[j] = True
            elif keep[a, b]:
                eq[j] = False
            else:
                continue  # the rule orients this pair the other way
        else:
            eq[j] = False
        p = pt[a, b]
        q = imgs[a, p]
        D[j + 1] = p
        U[j + 1] = q
        fa[j] = a
        sb[j] = b
        if j == 1:
            U[1] = p
            c1, l1, c2, l2 = p, 1, p, 1  # T takes (p_1, 0) to (p_1, 1)
        else:
            c1, l1 = _tstep(cf[j - 1], lf[j - 1], U, D)
            c2, l2 = _tstep(cs[j - 1], ls[j - 1], U, D)
        cf[j], lf[j] = imgs[a, c1], l1
        cs[j], ls[j] = imgs[b, c2], l2
        if j < n - 1:
            j += 1
            continue
        had = res[3] >= 0
        _leaf(n, L, imgs, pt, keep, U, D, eq[j], cf[j], lf[j], cs[j], ls[j], res)
        if res[3] >= 0 and not had:
            for k in range(n - 1):
                bad_f[k] = fa[k + 1]
                bad_s[k] = sb[k + 1]
            bad_f[n - 1], bad_s[n - 1] = res[3], res[4]
        U[n + 1] = -1
        D[n + 1] = -1
    return res[0], res[1], res[2], bad_f, bad_s


@dataclass(frozen=True)
class ExhaustiveReport:
    words: int
    unordered_pairs: int
    oriented_pairs: int
    level_failures: int
    separation_failures: int
    first_failure: tuple | None

    @property
    def ok(self) -> bool:
        return not (self.level_failures or self.separation_failures)


def expected_oriented_pairs(enc: EncodedWords, keep: np.ndarray) -> int:
    """Oriented pairs the two passes must visit, counted combinatorially."""
    L = keep.shape[0]
    by_len = np.bincount(enc.lens)
    total = 0
    for pid, n in enumerate(enc.pat_len):
        n = int(n)
        if n == 0:
            continue
        size = int(enc.pat_start[pid + 1] - enc.pat_start[pid])
        total += size * (int(by_len[:n].sum()) + int(by_len[n]) - size)
        # aligned: equal prefix, a kept ordered pair at the first difference, anything after
        offdiag = int(keep.sum())
        total += sum(L ** (k - 1) * offdiag * (L * L) ** (n - k) for k in range(1, n + 1))
    return total


def exhaustive_check(words: Sequence[CopWord], pool: Sequence[FinSuppEndo], dom: int) -> ExhaustiveReport:
    """Verify the witness for every ordered pair of distinct words in ``words``.

    ``words`` must be all reduced words over ``pool`` up to some length,
    shorter first and closed under deleting the leftmost letter, as
    :func:`embedlab.words.all_words` lists them.
    """
    tb = letter_tables(pool, dom)
    enc = encode_words(words, pool)
    L = len(pool)
    up = _unaligned_pass(
        enc.letters, enc.tags, enc.lens, enc.parent, enc.pattern,
        enc.pat_len, enc.pat_start, enc.pat_members, tb.imgs, tb.least, dom,
    )
    pairs, bl, be = int(up[0]), int(up[1]), int(up[2])
    first = None if up[3] < 0 else ("unaligned", int(up[3]), int(up[4]))
    for pid, n in enumerate(enc.pat_len):
        n = int(n)
        if n == 0:
            continue
        if enc.pat_start[pid + 1] - enc.pat_start[pid] != L ** n:
            raise ValueError("every word of each tag pattern must be listed")
        res = _aligned_pass(n, L, tb.imgs, tb.pt, tb.keep)
        pairs += int(res[0])
        bl += int(res[1])
        be += int(res[2])
        if first is None and res[3][0] >= 0:
            first = ("aligned", pid, tuple(int(x) for x in res[3]), tuple(int(x) for x in res[4]))
    expected = expected_oriented_pairs(enc, tb.keep)
    if pairs != expected:
        raise AssertionError(f"visited {pairs} oriented pairs, expected {expected}")
    W = len(words)
    return ExhaustiveReport(W, W * (W - 1) // 2, pairs, bl, be, first)


def kernel_endpoints(gw: CopWord, hw: CopWord, pool: Sequence[FinSuppEndo], dom: int):
    """Per-pair kernel endpoints for ``distinguish(gw, hw)``: ``((p, k), (p, k), swapped)``."""
    tb = letter_tables(pool, dom)
    index = {f: i for i, f in enumerate(pool)}
    maxlen = max(1, len(gw), len(hw))
    letters = np.zeros((2, maxlen), dtype=np.int64)
    tags = np.zeros_like(letters)
    lens = np.array([len(gw), len(hw)], dtype=np.int64)
    for i, w in enumerate((gw, hw)):
        for j, (tag, el) in enumerate(reversed(w.letters)):
            letters[i, j] = index[el]
            tags[i, j] = ALPHA if tag == "A" else BETA
    f, s, n, ef, es = _pair_endpoints(0, 1, letters, tags, lens, tb.imgs, tb.least, tb.pt, tb.keep, dom)
    return (int(ef % dom), int(ef // dom)), (int(es % dom), int(es // dom)), bool(f == 1)


def warm_up() -> None:
    """Compile the kernels on a tiny input (compilation is cached on disk)."""
    pool = [FinSuppEndo({0: 1}), FinSuppEndo({1: 0})]
    from .words import all_words, endo_monoid

    factors = {"A": endo_monoid(pool, "A"), "B": endo_monoid(pool, "B")}
    words = all_words(factors, 2)
    exhaustive_check(words, pool, 2)
    kernel_endpoints(words[1], words[2], pool, 2)
