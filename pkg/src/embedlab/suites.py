"""Named verification suites shared by the command line and the acceptance tests.

A suite takes a parameter dict (``n``, ``depth``, ``bound``, ``seed`` plus
suite-specific keys) and returns a list of :class:`Check` results.  Reports
are deterministic for a fixed seed; wall time is kept out of the JSON form.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import lattices as lat
from . import relations as rel
from .endo_witness import endo_witness, vandermonde_embed
from .functorial import (
    eq_product_embed,
    find_separator,
    min_monoid_functor,
    min_monoid_op,
    verify_free_tuple,
)
from .ground import FinSuppEndo, block_product_embed
from .linalg import rank
from .partitions import Partition, all_partitions, partition_from_pairs
from .path_product import (
    CASE_DELETE,
    CASE_EXTEND,
    CASE_FIXED,
    CASE_REPLACE,
    PathFactors,
    all_paths,
    faithful_all_pairs,
    faithful_witness,
    in_adapted,
    is_path,
    natural_mset,
    noncancellative_control,
    path_act,
    path_act_case,
    phi_j,
    phi_j_inverse,
    transported_act,
)
from .sym_witness import distinguish
from .tensor import RatOperator, tensor_normalize
from .words import (
    CopWord,
    all_words,
    cop_inverse,
    cop_multiply,
    cyclic_group,
    endo_monoid,
    format_word,
    full_transformation_monoid,
    random_word,
    reduce,
    symmetric_group,
)


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    counterexample: Any = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": bool(self.passed), "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class RunReport:
    suite: str
    params: dict
    checks: list[Check]
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, include_time: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }
        if include_time:
            out["wallTime"] = round(self.wall_time, 3)
        return out


@dataclass(frozen=True)
class Suite:
    name: str
    module: str
    run: Callable[[dict], list[Check]]
    defaults: dict
    summary: str


SUITES: dict[str, Suite] = {}

MODULES = (
    "ground-model",
    "coproduct-words",
    "functorial-embeddings",
    "sym-witness",
    "endo-witness",
    "path-product",
    "rel-lab",
    "lattice-lab",
)


def suite(name: str, module: str, summary: str, **defaults):
    def deco(fn):
        SUITES[name] = Suite(name, module, fn, {"seed": 0, **defaults}, summary)
        return fn

    return deco


def run_suite(name: str, params: dict | None = None) -> RunReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    s = SUITES[name]
    merged = dict(s.defaults)
    merged.update({k: v for k, v in (params or {}).items() if v is not None})
    t0 = time.perf_counter()
    checks = s.run(merged)
    return RunReport(name, merged, checks, time.perf_counter() - t0)


# --- ground model ---------------------------------------------------------------


def random_endo(rng: random.Random, n: int) -> FinSuppEndo:
    return FinSuppEndo.from_images([rng.randrange(n) for _ in range(n)])


@suite("ground.maps", "ground-model", "composition laws of finitely supported maps and block gluing", n=5, count=300)
def _ground_maps(p):
    rng = random.Random(p["seed"])
    n, cnt = p["n"], p["count"]
    bad_assoc = bad_unit = bad_block = 0
    one = FinSuppEndo()
    for _ in range(cnt):
        f, g, h = (random_endo(rng, n) for _ in range(3))
        bad_assoc += (f * g) * h != f * (g * h)
        bad_unit += not (one * f == f == f * one)
        f2, g2 = (FinSuppEndo({n + k: n + v for k, v in random_endo(rng, n).table.items()}) for _ in range(2))
        blocks = [range(n), range(n, 2 * n)]
        lhs = block_product_embed(blocks, [f, f2]) * block_product_embed(blocks, [g, g2])
        bad_block += lhs != block_product_embed(blocks, [f * g, f2 * g2])
    return [
        Check("associativity", bad_assoc == 0, {"triples": cnt, "failures": bad_assoc}),
        Check("identity", bad_unit == 0, {"maps": cnt, "failures": bad_unit}),
        Check("block-gluing-homomorphism", bad_block == 0, {"pairs": cnt, "failures": bad_block}),
    ]


# --- coproduct words -------------------------------------------------------------


@suite("words.normal-form", "coproduct-words", "reduction, associativity and inverses in S3 * Z4", bound=4, count=1000)
def _words_normal_form(p):
    rng = random.Random(p["seed"])
    fac = {"A": symmetric_group(3), "B": cyclic_group(4)}
    els = {t: list(f.elements) for t, f in fac.items()}

    def raw_word():
        return [(t, rng.choice(els[t])) for t in (rng.choice("AB") for _ in range(rng.randint(0, p["bound"])))]

    def word():
        return random_word(fac, rng.randint(0, p["bound"]), rng)

    idem_bad = assoc_bad = inv_bad = 0
    first = None
    for _ in range(p["count"]):
        r = reduce(raw_word(), fac)
        idem_bad += reduce(r.letters, fac) != r or not r.is_reduced(fac)
        u, v, w = word(), word(), word()
        lhs = cop_multiply(cop_multiply(u, v, fac), w, fac)
        rhs = cop_multiply(u, cop_multiply(v, w, fac), fac)
        if lhs != rhs:
            assoc_bad += 1
            first = first or [format_word(x, fac) for x in (u, v, w)]
        inv = cop_inverse(u, fac)
        inv_bad += not (cop_multiply(u, inv, fac) == CopWord() == cop_multiply(inv, u, fac))
    return [
        Check("reduce-idempotent", idem_bad == 0, {"words": p["count"], "failures": idem_bad}),
        Check("associative", assoc_bad == 0, {"triples": p["count"], "failures": assoc_bad}, first),
        Check("group-inverses", inv_bad == 0, {"words": p["count"], "failures": inv_bad}),
    ]


# --- functorial embeddings ------------------------------------------------------


@suite("functorial.index-maps", "functorial-embeddings", "separators, free tuples, min functor, product of partitions", n=5, count=200)
def _functorial(p):
    rng = random.Random(p["seed"])
    n = p["n"]
    sep_bad = free_bad = min_bad = prod_bad = 0
    subsets = [frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)]
    for _ in range(p["count"]):
        rs = rng.sample(subsets, rng.randint(1, 5))
        s = find_separator(rs)
        traces = [r & s for r in rs]
        smaller = any(
            len({r & frozenset(c) for r in rs}) == len(rs) for c in itertools.combinations(sorted(s), len(s) - 1)
        ) if s else False
        sep_bad += len(set(traces)) != len(rs) or smaller
        v = [rng.randrange(len(rs)) for _ in range(rng.randint(0, 4))]
        w = [rng.randrange(len(rs)) for _ in range(rng.randint(0, 4))]
        if v != w:
            try:
                verify_free_tuple(rs, v, w)
            except AssertionError:
                free_bad += 1
        table = sorted(rng.randrange(n) for _ in range(n))
        a = dict(enumerate(table))
        x, y = rng.choice([None, *range(n)]), rng.choice([None, *range(n)])
        min_bad += min_monoid_functor(a, min_monoid_op(x, y)) != min_monoid_op(
            min_monoid_functor(a, x), min_monoid_functor(a, y)
        )
        parts = [list(all_partitions(k)) for k in (2, 3)]
        al = [rng.choice(ps) for ps in parts]
        be = [rng.choice(ps) for ps in parts]
        meet = eq_product_embed([a1.meet(b1) for a1, b1 in zip(al, be)])
        prod_bad += meet != eq_product_embed(al).meet(eq_product_embed(be))
        prod_bad += (all(a1.leq(b1) for a1, b1 in zip(al, be))) != eq_product_embed(al).leq(eq_product_embed(be))
    return [
        Check("least-separator", sep_bad == 0, {"families": p["count"], "failures": sep_bad}),
        Check("free-tuple-projection", free_bad == 0, {"failures": free_bad}),
        Check("min-functor-homomorphism", min_bad == 0, {"failures": min_bad}),
        Check("product-partition-embedding", prod_bad == 0, {"failures": prod_bad}),
    ]


# --- sym witness -------------------------------------------------------------------


def sym_pool(seed: int = 0, size: int = 20, dom: int = 5) -> list[FinSuppEndo]:
    rng = random.Random(seed)
    pool: set[FinSuppEndo] = set()
    while len(pool) < size:
        f = random_endo(rng, dom)
        if not f.is_identity():
            pool.add(f)
    return sorted(pool)


def sym_factors(pool):
    return {"A": endo_monoid(pool, "A"), "B": endo_monoid(pool, "B")}


@suite("sym.exhaustive", "sym-witness", "every ordered pair of words up to length 3 over a 20-map pool (compiled kernel)", n=5, bound=3, pool=20)
def _sym_exhaustive(p):
    from .sym_kernel import exhaustive_check, kernel_endpoints, warm_up

    warm_up()
    pool = sym_pool(p["seed"], p["pool"], p["n"])
    fac = sym_factors(pool)
    words = all_words(fac, p["bound"])
    rep = exhaustive_check(words, pool, p["n"])
    rng = random.Random(p["seed"])
    agree = 0
    sample = 200
    for _ in range(sample):
        a, b = rng.sample(words, 2)
        w = distinguish(a, b)
        agree += (tuple(w.trace_g[-1]), tuple(w.trace_h[-1]), w.swapped) == kernel_endpoints(a, b, pool, p["n"])
    payload = None
    if rep.first_failure is not None:
        payload = [format_word(x, fac) for x in rep.first_failure[:2]]
    return [
        Check(
            "all-pairs-separated",
            rep.ok,
            {
                "words": len(words),
                "unorderedPairs": rep.unordered_pairs,
                "orientedPairs": rep.oriented_pairs,
                "levelFailures": rep.level_failures,
                "separationFailures": rep.separation_failures,
            },
            payload,
        ),
        Check("kernel-matches-reference", agree == sample, {"sampled": sample, "agree": agree}),
    ]


@suite("sym.random", "sym-witness", "random pairs of longer words through the reference construction", n=5, bound=6, count=500, pool=20)
def _sym_random(p):
    pool = sym_pool(p["seed"], p["pool"], p["n"])
    fac = sym_factors(pool)
    rng = random.Random(p["seed"] + 1)
    bad = 0
    first = None
    done = 0
    while done < p["count"]:
        a = random_word(fac, rng.randint(0, p["bound"]), rng)
        b = random_word(fac, rng.randint(0, p["bound"]), rng)
        if a == b:
            continue
        done += 1
        try:
            w = distinguish(a, b)
            ok = w.distinguishes and w.trace_g[-1].k == w.n + 1
        except AssertionError:
            ok = False
        if not ok:
            bad += 1
            first = first or [format_word(a, fac), format_word(b, fac)]
    return [Check("random-pairs-separated", bad == 0, {"pairs": done, "failures": bad}, first)]


# --- endo witness -------------------------------------------------------------------


def random_tensor(rng: random.Random, words: int = 3, length: int = 3, top: int = 3):
    raw = []
    for _ in range(rng.randint(1, words)):
        tag = rng.choice("AB")
        letters = []
        for _ in range(rng.randint(1, length)):
            letters.append((tag, RatOperator.unit(rng.randint(0, top), rng.randint(0, top))))
            tag = "B" if tag == "A" else "A"
        raw.append((rng.choice([-2, -1, 1, 2]), letters))
    return tensor_normalize(raw)


@suite("endo.random", "endo-witness", "witness for random nonzero tensor elements", count=200)
def _endo_random(p):
    rng = random.Random(p["seed"])
    cert_bad = inv_bad = 0
    done = 0
    first = None
    while done < p["count"]:
        x = random_tensor(rng)
        if x.is_zero():
            continue
        done += 1
        try:
            w = endo_witness(x)
            ok = w.certified
        except AssertionError:
            ok, w = False, None
        if not ok:
            cert_bad += 1
            first = first or repr(x)
        if w is not None and not w.t.is_involution():
            inv_bad += 1
    return [
        Check("top-level-nonzero", cert_bad == 0, {"elements": done, "failures": cert_bad}, first),
        Check("t-is-involution", inv_bad == 0, {"failures": inv_bad}),
    ]


@suite("endo.vandermonde", "endo-witness", "Vandermonde rows: full rank and multiplicative", bound=8, count=20)
def _endo_vandermonde(p):
    rng = random.Random(p["seed"])
    rank_bad = mult_bad = 0
    tested = 0
    for k in range(1, p["bound"] + 1):
        for _ in range(p["count"]):
            vals: set[Fraction] = set()
            while len(vals) < k:
                vals.add(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
            vals = sorted(vals)
            rows = vandermonde_embed(vals, k)
            tested += 1
            rank_bad += rank(rows) != k
            a, b = rng.choice(vals), rng.choice(vals)
            ra, rb, rab = (vandermonde_embed([v], k)[0] for v in (a, b, a * b))
            mult_bad += [x * y for x, y in zip(ra, rb)] != rab
    return [
        Check("full-rank", rank_bad == 0, {"tuples": tested, "failures": rank_bad}),
        Check("row-multiplicative", mult_bad == 0, {"failures": mult_bad}),
    ]


# --- path products -------------------------------------------------------------------


@suite("path.cases", "path-product", "action laws on 2-point carriers, all four cases on 3-point carriers", bound=3)
def _path_cases(p):
    msets = [natural_mset(2), natural_mset(2)]
    t2 = list(full_transformation_monoid(2).elements)
    one = FinSuppEndo()
    paths = list(all_paths([(0, 1), (0, 1)], p["bound"]))
    cases: set[str] = set()
    law_bad = unit_bad = shape_bad = phi_bad = 0
    for x in paths:
        for j in range(2):
            unit_bad += path_act(j, one, x, msets) != x
            y = phi_j(x, j)
            phi_bad += phi_j_inverse(y, j) != x or not in_adapted(y, j)
            for g in t2:
                gx, case = path_act_case(j, g, x, msets)
                cases.add(case)
                shape_bad += not is_path(gx)
                phi_bad += transported_act(j, g, x, msets) != gx
                for h in t2:
                    law_bad += path_act(j, g * h, x, msets) != path_act(j, g, path_act(j, h, x, msets), msets)
    # two values per coordinate leave no room for the replacing case; use three
    m3 = [natural_mset(3), natural_mset(3)]
    t3 = list(full_transformation_monoid(3).elements)
    for x in all_paths([(0, 1, 2), (0, 1, 2)], p["bound"]):
        for j in range(2):
            for g in t3:
                gx, case = path_act_case(j, g, x, m3)
                cases.add(case)
                shape_bad += not is_path(gx)
    want = {CASE_FIXED, CASE_EXTEND, CASE_REPLACE, CASE_DELETE}
    return [
        Check("all-cases-exercised", cases == want, {"cases": sorted(cases)}),
        Check("action-law", law_bad == 0, {"paths": len(paths), "failures": law_bad}),
        Check("identity-acts-trivially", unit_bad == 0, {"failures": unit_bad}),
        Check("results-are-paths", shape_bad == 0, {"failures": shape_bad}),
        Check("adapted-round-trip", phi_bad == 0, {"failures": phi_bad}),
    ]


@suite("path.faithful", "path-product", "one-tuple witnesses for all pairs of words over S3 * S3", n=3, bound=4, depth=2)
def _path_faithful(p):
    fac = {"A": symmetric_group(p["n"]), "B": symmetric_group(p["n"])}
    carriers = {"A": natural_mset(p["n"]), "B": natural_mset(p["n"])}
    pf = PathFactors(fac, carriers, p["depth"])
    words = all_words(fac, p["bound"])
    try:
        sweep = faithful_all_pairs(words, pf)
    except LookupError as exc:
        return [Check("all-pairs-separated", False, {"error": str(exc)})]
    payload = None
    if sweep.first_failure is not None:
        payload = [format_word(sweep.first_failure[0], fac), format_word(sweep.first_failure[1], fac)]
    rng = random.Random(p["seed"])
    spot_bad = 0
    for _ in range(100):
        a, b = rng.sample(words, 2)
        spot_bad += not faithful_witness(a, b, pf).separates
    return [
        Check("all-pairs-separated", sweep.failures == 0, {"words": sweep.words, "pairs": sweep.pairs, "failures": sweep.failures}, payload),
        Check("single-pair-witness", spot_bad == 0, {"sampled": 100, "failures": spot_bad}),
    ]


@suite("path.control", "path-product", "non-cancellative factor: a d c and b d c act identically", bound=5)
def _path_control(p):
    a = FinSuppEndo.from_images([0, 0, 1])
    b = FinSuppEndo.from_images([0, 2, 2])
    c = FinSuppEndo.from_images([0, 0, 0])
    d = FinSuppEndo.from_cycles([(0, 1)])
    same, count = noncancellative_control(a, b, c, d, [natural_mset(3), natural_mset(2)], p["bound"])
    return [
        Check("a-and-b-differ", a != b and a * c == b * c, {"a": str(a), "b": str(b), "c": str(c)}),
        Check("words-collide-on-all-paths", same, {"paths": count}),
    ]


# --- relations --------------------------------------------------------------------------


def _random_rel(rng: random.Random, n: int) -> rel.RelMat:
    return rel.RelMat(n, tuple(rng.randrange(1 << n) for _ in range(n)))


@suite("rel.two-class", "rel-lab", "y y = y and y_i y_j y_i = w for two-class equivalences", n=None)
def _rel_two_class(p):
    sizes = [3, 4, 5] if p["n"] is None else [p["n"]]
    out = []
    for n in sizes:
        r = rel.two_class_identity_check(n)
        expect = 2 ** (n - 1) - 1
        out.append(
            Check(
                f"n={n}",
                r.ok and r.partitions == expect and r.ordered_pairs == expect * (expect - 1),
                {"partitions": r.partitions, "identities": r.ordered_pairs, "tripleFull": r.triple_full_ok},
            )
        )
    return out


@suite("rel.theta", "rel-lab", "subset-image map: homomorphism, diagonal counterexample, declawed cure", count=200)
def _rel_theta(p):
    rng = random.Random(p["seed"])
    r2 = list(rel.all_relations(2))
    th = {g: rel.theta_pfim(g) for g in r2}
    exh_bad = sum(th[a] * th[b] != th[a * b] for a in r2 for b in r2)
    rnd_bad = 0
    for _ in range(p["count"]):
        a, b = _random_rel(rng, 3), _random_rel(rng, 3)
        rnd_bad += rel.theta_pfim(a) * rel.theta_pfim(b) != rel.theta_pfim(a * b)
    g, h = rel.theta_counterexample(2)
    diff = rel.differing_pairs(rel.theta_pfim(g), rel.theta_pfim(h))
    ddiff = rel.differing_pairs(rel.theta_pfim(rel.declaw(g)), rel.theta_pfim(rel.declaw(h)))
    cure = True
    for n in (1, 2, 3):
        imgs = [rel.theta_pfim(rel.declaw(x)).off_diagonal() for x in rel.all_relations(n)]
        cure &= len(set(imgs)) == len(imgs)
    return [
        Check("homomorphism-rel2", exh_bad == 0, {"pairs": len(r2) ** 2, "failures": exh_bad}),
        Check("homomorphism-rel3-sample", rnd_bad == 0, {"pairs": p["count"], "failures": rnd_bad}),
        Check("counterexample-diagonal-only", bool(diff) and all(q == r for q, r in diff), {"differing": diff}),
        Check("declawed-differ-off-diagonal", any(q != r for q, r in ddiff), {"differing": ddiff}),
        Check("declawed-injective-off-diagonal", cure, {"sizes": [1, 2, 3]}),
    ]


@suite("rel.embeddings", "rel-lab", "doubling, pair and subset-image embeddings of relations", count=200)
def _rel_embeddings(p):
    rng = random.Random(p["seed"])
    r2 = list(rel.all_relations(2))
    dz = [rel.declaw(g) for g in r2]
    sq = {g: rel.square_embed(g) for g in dz}
    two_id = rel.square_embed(rel.RelMat.identity(3)).off_diagonal()
    sq_bad = sum(
        not sq[a].differs_off_diagonal(sq[b]) for a, b in itertools.combinations(dz, 2)
    ) + sum(sq[a].off_diagonal() == two_id for a in dz if a != rel.RelMat.identity(3))
    sq_hom = 0
    for _ in range(100):
        a, b = rng.choice(dz), rng.choice(dz)
        sq_hom += rel.square_embed(a * b) != sq[a] * sq[b]
    off_bad = 0
    diag = rel.RelMat.identity(2)
    for a, b in itertools.combinations(r2, 2):
        if a.off_diagonal().pairs() or b.off_diagonal().pairs():
            off_bad += not rel.offdiag_phi(a).differs_off_diagonal(rel.offdiag_phi(b))
    off_hom = 0
    for _ in range(p["count"]):
        a, b = _random_rel(rng, 3), _random_rel(rng, 3)
        off_hom += rel.offdiag_phi(a * b) != rel.offdiag_phi(a) * rel.offdiag_phi(b)
    fin_bad = sum(
        rel.relfin_action(a * b) != rel.relfin_action(a) * rel.relfin_action(b) for a in r2 for b in r2
    )
    return [
        Check("square-separates-declawed", sq_bad == 0, {"pairs": len(dz) * (len(dz) - 1) // 2, "failures": sq_bad}),
        Check("square-homomorphism", sq_hom == 0, {"pairs": 100, "failures": sq_hom}),
        Check("offdiag-identity", rel.offdiag_phi(diag) == rel.RelMat.identity(4), {}),
        Check("offdiag-separates", off_bad == 0, {"failures": off_bad}),
        Check("offdiag-homomorphism", off_hom == 0, {"pairs": p["count"], "failures": off_hom}),
        Check("subset-action-homomorphism", fin_bad == 0, {"pairs": len(r2) ** 2, "failures": fin_bad}),
    ]


def offdiag_pool(n: int, reflexive: bool = False) -> list[rel.RelMat]:
    seen, pool = set(), []
    for r in rel.all_relations(n):
        if reflexive and not r.is_reflexive():
            continue
        od = r.off_diagonal()
        if od.pairs() and od not in seen:
            seen.add(od)
            pool.append(r)
    return pool


def _random_rel_word(rng, pool, length):
    tag = rng.choice("AB")
    out = []
    for _ in range(length):
        out.append((tag, rng.choice(pool)))
        tag = "B" if tag == "A" else "A"
    return CopWord(tuple(out))


@suite("rel.double", "rel-lab", "relational doubling witness on random word pairs", n=3, bound=4, count=1000)
def _rel_double(p):
    rng = random.Random(p["seed"])
    out = []
    for reflexive in (False, True):
        pool = offdiag_pool(p["n"], reflexive)
        rel.check_offdiag_pool(pool)
        bad = refl_bad = 0
        done = 0
        while done < p["count"]:
            a = _random_rel_word(rng, pool, rng.randint(0, p["bound"]))
            if rng.random() < 0.5 and len(a):
                lst = list(a.letters)
                k = rng.randrange(len(lst))
                lst[k] = (lst[k][0], rng.choice(pool))
                b = CopWord(tuple(lst))
            else:
                b = _random_rel_word(rng, pool, rng.randint(0, p["bound"]))
            if a == b:
                continue
            done += 1
            try:
                w = rel.rel_double_witness(a, b)
            except AssertionError:
                bad += 1
                continue
            if reflexive and done <= 100:
                window = rel.embedded_image(a, w.t, p["n"], w.n + 2)
                pts = {(x, x) for x, _ in window} | {(y, y) for _, y in window}
                refl_bad += not pts <= window
        label = "reflexive" if reflexive else "general"
        out.append(Check(f"certified-{label}", bad == 0, {"pool": len(pool), "pairs": done, "failures": bad}))
        if reflexive:
            out.append(Check("images-stay-reflexive", refl_bad == 0, {"checked": min(done, 100), "failures": refl_bad}))
    return out


@suite("rel.monoids", "rel-lab", "left-zero monoid, regular representation, subset and monomial embeddings", n=3, bound=3)
def _rel_monoids(p):
    out = []
    for m in range(1, p["bound"] + 1):
        mon = rel.gzz_build(m)
        left_zero = all(mon.mul(z, x) == z for z in mon.elements if z[0] != "g" for x in mon.elements)
        swap = all(mon.mul(("g", 1 << i), ("z", i)) == ("z'", i) for i in range(m))
        fixes = all(
            mon.mul(("g", 1 << i), (k, j)) == (k, j) for i in range(m) for j in range(m) if i != j for k in ("z", "z'")
        )
        out.append(
            Check(
                f"gzz-m={m}",
                mon.is_associative() and mon.has_identity() and left_zero and swap and fixes,
                {"elements": len(mon), "triples": len(mon) ** 3},
            )
        )
        out.append(Check(f"cayley-m={m}", rel.cayley_is_faithful_hom(mon), {"elements": len(mon)}))
    n = p["n"]
    subsets = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)]
    fs = {s: rel.eq_meet_to_se(s, n) for s in subsets}
    meet_bad = sum(fs[s] * fs[t] != fs[s & t] for s in subsets for t in subsets)
    out.append(
        Check(
            "subset-meets-to-maps",
            meet_bad == 0 and len(set(fs.values())) == len(fs),
            {"pairs": len(subsets) ** 2, "failures": meet_bad},
        )
    )
    endos = [FinSuppEndo.from_images(im) for im in itertools.product(range(2), repeat=2)]
    w = rel.kse_independence(endos)
    out.append(
        Check("monomials-distinct", len(set(w.monomials)) == len(endos) and len(w.points) <= 2, {"points": list(w.points)})
    )
    return out


@suite("rel.structure", "rel-lab", "associativity, transpose, factorization and the two-class chain", n=3)
def _rel_structure(p):
    r2 = list(rel.all_relations(2))
    assoc = sum((a * b) * c != a * (b * c) for a in r2 for b in r2 for c in r2)
    trans = sum((a * b).transpose() != b.transpose() * a.transpose() for a in r2 for b in r2)
    fac_bad = 0
    for n in (2, 3):
        for r in rel.all_relations(n):
            if r.pairs():
                f = rel.factor_relation(r)
                fac_bad += f.composite() != rel.RelMat.from_pairs(f.size, r.pairs())
    empty_ok = not rel.factor_empty(3).pairs()
    chain = rel.relvsse_chain(p["n"])
    ys = [rel.RelMat.from_partition(q) for q in rel.two_class_partitions(p["n"])]
    strict = all(a < b for a, b in zip(chain, chain[1:]))
    pattern = all((ys[c] in chain[a]) == (c <= a) for a in range(len(ys)) for c in range(len(ys)))
    return [
        Check("associative-rel2", assoc == 0, {"triples": len(r2) ** 3, "failures": assoc}),
        Check("transpose-anti-homomorphism", trans == 0, {"failures": trans}),
        Check("factorization", fac_bad == 0 and empty_ok, {"failures": fac_bad}),
        Check("two-class-chain", strict and pattern, {"sizes": [len(s) for s in chain]}),
    ]


# --- lattices -------------------------------------------------------------------------


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@suite("lattice.eq-size", "lattice-lab", "partition lattice size against Bell numbers", n=4)
def _lattice_eq_size(p):
    L = lat.eq_lattice(p["n"])
    return [Check("size", len(L) == bell(p["n"]), {"elements": len(L), "bell": bell(p["n"])})]


@suite("lattice.eq-ops", "lattice-lab", "partition meet and join against closure oracles", n=4)
def _lattice_eq_ops(p):
    bad = 0
    for n in range(1, p["n"] + 1):
        L = lat.eq_lattice(n)
        for a in L.elements:
            for b in L.elements:
                join = partition_from_pairs(n, a.pairs() | b.pairs())
                meet_pairs = a.pairs() & b.pairs()
                bad += lat.eq_join(a, b) != join or L.join(a, b) != join
                bad += lat.eq_meet(a, b).pairs() != meet_pairs or L.meet(a, b) != lat.eq_meet(a, b)
    return [Check("oracle-agreement", bad == 0, {"maxN": p["n"], "failures": bad})]


@suite("lattice.chains", "lattice-lab", "jump counts of maximal partition chains and the centralizer chain", n=5)
def _lattice_chains(p):
    out = []
    for n in range(1, p["n"] + 1):
        j = lat.jumps_in_chain(lat.eq_lattice(n), lat.eq_maximal_chain(n))
        out.append(Check(f"eq-maximal-chain-n={n}", j == n - 1, {"jumps": j}))
    c = lat.cmxcm_chain(p["n"])
    out.append(
        Check(
            "centralizer-chain",
            c.strictly_ascending and c.y_pattern_ok and c.jumps == p["n"],
            {"sizes": list(c.sizes), "jumps": c.jumps},
        )
    )
    return out


@suite("lattice.centralizers", "lattice-lab", "centralizer lattices of S3 and Z2 x S3", count=200)
def _lattice_centralizers(p):
    s3 = lat.sym_group(3)
    cl = lat.centralizer_lattice(s3)
    sizes = sorted(len(c) for c in cl.elements)
    g = lat.direct_product(lat.sym_group(2), s3)
    cz = lat.centralizer_lattice(g)
    brute = lat.centralizers_by_subsets(g)
    rng = random.Random(p["seed"])
    anti_bad = triple_bad = 0
    for _ in range(p["count"]):
        x = frozenset(rng.sample(g.elements, rng.randint(0, 4)))
        y = x | frozenset(rng.sample(g.elements, rng.randint(0, 3)))
        cx, cy = lat.centralizer(g, x), lat.centralizer(g, y)
        anti_bad += not cy <= cx
        triple_bad += lat.centralizer(g, lat.centralizer(g, cx)) != cx
    return [
        Check("s3-six-centralizers", sizes == [1, 2, 2, 2, 3, 6], {"sizes": sizes}),
        Check("z2xs3-matches-brute-force", set(cz.elements) == brute, {"elements": len(cz)}),
        Check("antitone", anti_bad == 0, {"failures": anti_bad}),
        Check("triple-centralizer", triple_bad == 0, {"failures": triple_bad}),
    ]


@suite("lattice.families", "lattice-lab", "transposition family orders, meet/join families, product equations", n=4, bound=3)
def _lattice_families(p):
    d = lat.debruijn_family(p["n"])
    chain = lat.debruijn_chain(2)
    chain_ok = all(a < b for a, b in zip(chain, chain[1:]))
    m = lat.mtvsjn_check(p["n"])
    eq, elems = lat.eqprod_chain(p["bound"])
    eq_ok = all(a < b for a, b in zip(eq, eq[1:])) and all(
        (x in s) == (i < a) for a, s in enumerate(eq) for i, x in enumerate(elems)
    )
    return [
        Check(
            "transposition-orders",
            d.ok,
            {
                "pairOrders": sorted(d.pair_orders),
                "quadOrders": sorted(d.quad_orders),
                "fullCycle": d.full_product_is_cycle,
                "collapse": d.collapse_ok,
            },
        ),
        Check("transposition-solution-chain", chain_ok, {"sizes": [len(s) for s in chain]}),
        Check("meet-and-join-families", m.ok, {"meetPairs": m.meet_pairs_ok, "joinPairs": m.join_pairs_ok}),
        Check("product-equation-chain", eq_ok, {"sizes": [len(s) for s in eq]}),
    ]


@suite("lattice.solutions", "lattice-lab", "solution sets, lower solution sets and the join-of-meets reduction", bound=4)
def _lattice_solutions(p):
    s3 = lat.sym_group(3)
    c = (1, 0, 2)
    eqn = (("mul", lat.var(0), lat.const(c)), ("mul", lat.const(c), lat.var(0)))
    sysm = lat.SolutionSystem(s3.elements, {"mul": s3.mul}, 1, (eqn,))
    cent = lat.solution_set(sysm)
    same = lat.SolutionSystem(s3.elements, {"mul": s3.mul}, 1, ((lat.var(0), lat.var(0)),))
    principal = lat.principal_sets(s3.elements, s3.mul, 1, p["bound"])
    top = frozenset(itertools.product(s3.elements, repeat=1))
    closed = lat.intersection_closure(principal, top)
    cl = lat.centralizer_lattice(s3)
    cents_in = all(frozenset((g,) for g in h) in closed for h in cl.elements)
    e3 = lat.eq_lattice(3)
    chain = lat.eq_maximal_chain(3)
    lower = [lat.lower_solution_set(e3, ("meet", lat.var(0), lat.const(chain[1])), cc, 1) for cc in chain]
    nested = all(a <= b for a, b in zip(lower, lower[1:]))
    v = ("join", ("meet", lat.var(0), lat.var(1)), ("meet", lat.var(0), lat.const(chain[1])))
    red_ok = all(
        lat.reduced_lower_set(e3, v, cc, 2) == lat.lower_solution_set(e3, v, cc, 2) for cc in e3.elements
    )
    mj = ("meet", ("join", lat.var(0), lat.var(1)), lat.var(0))
    return [
        Check("centralizer-as-solution-set", len(cent) == 2, {"size": len(cent)}),
        Check("trivial-equation-full", lat.solution_set(same) == top, {}),
        Check("centralizers-are-solution-sets", cents_in, {"principal": len(principal), "lattice": len(closed)}),
        Check("lower-sets-nested", nested, {"sizes": [len(s) for s in lower]}),
        Check("join-of-meets-reduction", red_ok and lat.join_of_meets(mj) is None, {}),
    ]


@suite("lattice.embeddings", "lattice-lab", "generators vs meet embeddings, downsets, antichains, jumps of R x 2", count=50, bound=4)
def _lattice_embeddings(p):
    rng = random.Random(p["seed"])
    rt_bad = down_bad = 0
    for _ in range(p["count"]):
        L = lat.random_closure_lattice(rng)
        f = {x: x for x in L.elements}
        try:
            g = lat.cond_ia_to_ib(L, f, L.top)
            f2 = lat.cond_ib_to_ia(L, g)
            g2 = lat.cond_ia_to_ib(L, f2, frozenset(g))
            order_ok = all(L.leq(a, b) == (f2[a] <= f2[b]) for a in L.elements for b in L.elements)
            rt_bad += g2 != g or not order_ok
        except (ValueError, AssertionError):
            rt_bad += 1
        try:
            lat.downset_embed(L)
        except AssertionError:
            down_bad += 1
    anti_ok = all(len(lat.antichain_example(k)) == 2**k for k in range(1, p["bound"] + 1))
    sample = [Fraction(i, 11) for i in range(10)]
    rx = lat.rx2_jump_example(sample)
    located = all(a[0] == b[0] and a[1] == 0 and b[1] == 1 for a, b in rx.jumps)
    return [
        Check("generator-round-trip", rt_bad == 0, {"lattices": p["count"], "failures": rt_bad}),
        Check("downset-embedding", down_bad == 0, {"failures": down_bad}),
        Check("antichains", anti_ok, {"maxK": p["bound"]}),
        Check("rx2-jumps", len(rx.jumps) == len(sample) and located, {"jumps": len(rx.jumps)}),
    ]
