"""Acceptance criteria on the default grid: n in {2,3,4}, b in {1,2,3}, 2b < a <= 9.

Each test records a one-line verdict, printed in the terminal summary.
"""

import time
from itertools import combinations

import pytest

from conftest import ACCEPTANCE, GRID
from rees_uniform.groebner import (
    buchberger, ideal_equal, is_groebner_basis, minimal_generators, rees_oracle,
)
from rees_uniform.monomial_ideal import MonomialIdeal, predicted_initial_ideal
from rees_uniform.poly import VarSet
from rees_uniform.uniform import (
    CASE_J, expected_generator_count, external_degree, koszul_K, ladder_prefix, reduction_data,
    rees_generators, sequential_tuples, sylvester_closed, sylvester_iterative, taylor_L,
)
from rees_uniform.verifier import (
    PASS, basic_form_violation, certify_acm, verify_colon_ladder, verify_generation,
)

PARAMS = [reduction_data(*pt) for pt in GRID]


def record(num, title, bad, total, t0, note=""):
    verdict = "PASS" if not bad else "FAIL"
    line = f"criterion {num} [{verdict}] {title}: {total - len(bad)}/{total} ok ({time.perf_counter() - t0:.1f}s)"
    if bad:
        line += f"; failing: {', '.join(map(str, bad[:6]))}{' ...' if len(bad) > 6 else ''}"
    if note:
        line += f"; {note}"
    ACCEPTANCE[num] = line
    print(line)
    return bad


@pytest.fixture(scope="module")
def oracles():
    return {(p.n, p.a, p.b): rees_oracle(p) for p in PARAMS}


@pytest.fixture(scope="module")
def minimal(oracles):
    return {k: minimal_generators(list(o.gens)) for k, o in oracles.items()}


@pytest.fixture(scope="module")
def colon_reports():
    return {(p.n, p.a, p.b): verify_colon_ladder(p) for p in PARAMS}


@pytest.mark.xfail(strict=True, reason="for n = 2, P(1,2) = 1 and K1,2 = x2^(a-b) L1 - x1^(a-b) L2 is "
                                      "redundant, so the minimal count is one below the formula")
def test_criterion_1_generator_census(minimal):
    t0 = time.perf_counter()
    bad = [k for k, p in zip(minimal, PARAMS) if len(minimal[k]) != expected_generator_count(p)]
    record(1, "minimal generator census = C(n,2) + sum C(n,d) + 1", bad, len(PARAMS), t0,
           "all failures are n = 2 (Koszul form redundant)" if bad and all(k[0] == 2 for k in bad) else "")
    assert not bad


def test_criterion_1_failure_is_exactly_the_n2_koszul_redundancy(minimal):
    for k, p in zip(minimal, PARAMS):
        count = len(minimal[k])
        if p.n >= 3:
            assert count == expected_generator_count(p)
            continue
        assert count == expected_generator_count(p) - 1
        vs, ring = p.varset, p.ring
        e = p.a - p.b
        combo = ring.mono(vs.monomial(x={2: e})) * taylor_L(p, 1) - ring.mono(vs.monomial(x={1: e})) * taylor_L(p, 2)
        assert combo == koszul_K(p, 1, 2)


def test_criterion_2_oracle_equality(oracles):
    t0 = time.perf_counter()
    bad = [k for k, p in zip(oracles, PARAMS) if not ideal_equal(rees_generators(p), list(oracles[k].gens))]
    record(2, "ideal_equal(rees_generators, oracle)", bad, len(PARAMS), t0)
    assert not bad


def test_criterion_3_groebner_ladder():
    t0 = time.perf_counter()
    bad, total = [], 0
    for p in PARAMS:
        for k in range(1, len(sequential_tuples(p)) + 1):
            total += 1
            polys = [g for _, g in ladder_prefix(p, k)]
            init = MonomialIdeal(p.ring, [g.lm for g in polys])
            if not is_groebner_basis(polys).is_groebner or init != predicted_initial_ideal(p, k):
                bad.append((p.n, p.a, p.b, k))
    p = reduction_data(3, 7, 3)
    vs = VarSet(3)
    pinned = MonomialIdeal(p.ring, [
        vs.monomial(x={2: 7}, y=[1]), vs.monomial(x={3: 7}, y=[1]), vs.monomial(x={3: 7}, y=[2]),
        vs.monomial(x={1: 4}, w=1), vs.monomial(x={2: 4}, w=1), vs.monomial(x={3: 4}, w=1),
        vs.monomial(x=[1, 2], w=2)])
    got = buchberger([g for _, g in ladder_prefix(p, 1)]).initial_ideal()
    if got != pinned or len(got) != 7:
        bad.append("pinned (3,7,3) H(1,2)")
    record(3, "Sigma is a GB with the predicted initial ideal, every prefix", bad, total + 1, t0)
    assert not bad


def test_criterion_4_colon_three_way(colon_reports):
    t0 = time.perf_counter()
    bad, total = [], 0
    for k, rep in colon_reports.items():
        for c in rep.claims:
            total += 1
            if c.status != PASS:
                bad.append((k, c.id))
    rep = colon_reports[(3, 7, 3)]
    vs = VarSet(3)
    want = MonomialIdeal(reduction_data(3, 7, 3).ring,
                         [vs.monomial(x={1: 3}), vs.monomial(x=[2]), vs.monomial(x={3: 3})])
    (cur, nxt, colon), = [c for c in rep.info["colons"] if c[:2] == ((1, 2), (1, 3))]
    if colon != want:
        bad.append("pinned (3,7,3) H(1,2):H2^1,3")
    record(4, "predicted colon = in(H):in(H_next) = H:H_next", bad, total + 1, t0)
    assert not bad


def test_criterion_5_acm(colon_reports):
    t0 = time.perf_counter()
    bad = []
    for p in PARAMS:
        rep = certify_acm(p, colon_report=colon_reports[(p.n, p.a, p.b)])
        d = rep.claim("acm.depth")
        if not rep.ok or d.status != PASS or d.detail["depth_bound"] != p.n:
            bad.append((p.n, p.a, p.b))
    record(5, "every ladder colon x-only and m-primary; depth >= n certified", bad, len(PARAMS), t0)
    assert not bad


def test_criterion_6_relation_type(minimal):
    t0 = time.perf_counter()
    bad = []
    for k, p in zip(minimal, PARAMS):
        top = max(external_degree(p, m) for g in minimal[k] for m in g.monomials())
        if top != p.r + 1:
            bad.append(k)
    record(6, "max external degree of minimal generators = r+1", bad, len(PARAMS), t0)
    assert not bad


def test_criterion_7_sylvester_equivalence():
    t0 = time.perf_counter()
    bad, total = [], 0
    for p in PARAMS:
        for j in range(2, p.r + 2):
            tuples = list(combinations(range(1, p.n + 1), j))
            if j == p.r + 1 and p.case != CASE_J:
                tuples = [tuple(range(1, p.n + 1))]
            for t in tuples:
                total += 1
                if sylvester_iterative(p, t).poly.terms != sylvester_closed(p, t).poly.terms:
                    bad.append((p.n, p.a, p.b, t))
    record(7, "iterative content-matrix forms = closed forms, all tuples", bad, total, t0)
    assert not bad


def test_criterion_8_property_suites(minimal, colon_reports):
    t0 = time.perf_counter()
    bad, total = [], 0
    for k, p in zip(minimal, PARAMS):
        total += 1
        gens = rees_generators(p)
        if not all(g.is_homogeneous() for g in gens):
            bad.append((k, "homogeneity"))
        if any(basic_form_violation(p, g) for g in gens + minimal[k]):
            bad.append((k, "basic form"))
        # both colon containments are checked inside each colon step
        if not colon_reports[k].ok:
            bad.append((k, "colon lemma"))
        tr = verify_generation(p).claim("gen.transposition")
        if p.case == CASE_J and p.p < p.n:
            if tr.status != PASS:
                bad.append((k, "transposition"))
        elif tr.status == "fail":
            bad.append((k, "transposition"))
    record(8, "homogeneity, colon lemma (i)/(ii), basic form, transposition", bad, total, t0)
    assert not bad
