"""Acceptance gate: ten criteria, each with a wall-clock limit.

Every criterion prints one ``PASS``/``FAIL`` line to the terminal.  Run
directly with ``python3 tests/test_acceptance.py`` for just the summary.
"""

import time

import pytest

from embedlab import lattices as lt
from embedlab import relations as rel
from embedlab.suites import run_suite


def _suites(*names, **params):
    def run():
        details = {}
        ok = True
        for name in names:
            rep = run_suite(name, params.get(name, {}))
            ok &= rep.passed
            details[name] = [c.name for c in rep.checks if not c.passed]
        return ok, {k: v for k, v in details.items() if v}

    return run


def _two_class():
    ok, info = _suites("rel.two-class")()
    r4 = rel.two_class_identity_check(4)
    ok &= r4.partitions == 7 and r4.ordered_pairs == 42 and r4.ok
    return ok, {**info, "n=4": (r4.partitions, r4.ordered_pairs)}


def _lattices():
    ok, info = _suites("lattice.eq-size", "lattice.chains", "lattice.centralizers", "lattice.families",
                       **{"lattice.eq-size": {"n": 4}, "lattice.chains": {"n": 5}, "lattice.families": {"n": 4}})()
    ch = lt.cmxcm_chain(5)
    ok &= ch.jumps == 5 and ch.strictly_ascending
    return ok, {**info, "cmxcm5-jumps": ch.jumps}


def _warm_sym():
    from embedlab.sym_kernel import warm_up

    warm_up()


CRITERIA = [
    (1, "coproduct normal form", 1.0, _suites("words.normal-form"), None),
    (2, "sym witness", 10.0, _suites("sym.exhaustive", "sym.random"), _warm_sym),
    (3, "endo witness", 30.0, _suites("endo.random"), None),
    (4, "vandermonde", 1.0, _suites("endo.vandermonde"), None),
    (5, "path product", 30.0, _suites("path.cases", "path.faithful", "path.control"), None),
    (6, "relation identities", 5.0, _two_class, None),
    (7, "subset-image map", 10.0, _suites("rel.theta"), None),
    (8, "lattice counts and chains", 60.0, _lattices, None),
    (9, "constructive lattice maps", 10.0, _suites("lattice.embeddings"), None),
    (10, "cross-module oracle", 5.0, _suites("rel.monoids"), None),
]


def evaluate(criterion):
    num, title, limit, run, prepare = criterion
    if prepare is not None:
        prepare()  # one-off compilation is not part of the timed work
    start = time.perf_counter()
    ok, info = run()
    elapsed = time.perf_counter() - start
    passed = ok and elapsed < limit
    line = f"{'PASS' if passed else 'FAIL'}  criterion {num:2d}  {title:28s} {elapsed:7.2f}s / {limit:g}s"
    if info:
        line += f"  {info}"
    return passed, ok, elapsed, line


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(criterion, capsys):
    passed, ok, elapsed, line = evaluate(criterion)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line
    assert elapsed < criterion[2], line


if __name__ == "__main__":
    results = [evaluate(c) for c in CRITERIA]
    for *_, line in results:
        print(line)
    raise SystemExit(0 if all(r[0] for r in results) else 1)
