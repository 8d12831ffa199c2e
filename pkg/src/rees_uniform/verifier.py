"""Claim-by-claim certification of the structure of the Rees ideal on parameter grids.

Each verifier returns a :class:`CertReport` listing claims with status
``pass``, ``fail`` or ``skipped``.  A failing claim always carries a
witness (offending polynomial, monomial, tuple or count) that can be
reproduced from the parameters alone.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from . import groebner as gb_mod
from .groebner import Caps, DEFAULT_CAPS, ResourceCapExceeded, buchberger
from .monomial_ideal import (
    MonomialIdeal, NotXIdeal, check_x_ideal, colon_mono, intersect, ladder_steps, predicted_colon,
    predicted_initial_ideal,
)
from .poly import Polynomial
from .uniform import (
    CASE_J, InvalidParams, UniformParams, expected_generator_count, external_degree,
    labeled_rees_generators, ladder_prefix, reduction_data, rees_map_image, sylvester_closed,
    sylvester_iterative, transposition_identity,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
SUITES = ("gen", "gb", "colon", "acm")

# S-pair cases by the kinds of the two generators (K: Koszul, L: Taylor, H: Sylvester).
PAIR_CASES = {
    frozenset("K"): 1,
    frozenset("L"): 2,
    frozenset("KL"): 3,
    frozenset("KH"): 4,
    frozenset("LH"): 5,
    frozenset("H"): 6,
}


def pair_case(label1: str, label2: str) -> int:
    return PAIR_CASES[frozenset((label1[0], label2[0]))]


@dataclass
class Claim:
    id: str
    status: str
    witness: object = None
    detail: object = None
    ms: float | None = None

    def to_json(self, timing: bool = False) -> dict:
        out = {"id": self.id, "status": self.status}
        if self.detail is not None:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        if timing and self.ms is not None:
            out["ms"] = round(self.ms, 3)
        return out


@dataclass
class CertReport:
    params: dict
    claims: list[Claim] = field(default_factory=list)
    error: str | None = None
    info: dict = field(default_factory=dict)

    @property
    def failed(self) -> list[Claim]:
        return [c for c in self.claims if c.status == FAIL]

    @property
    def capped(self) -> bool:
        return any(c.status == SKIPPED and isinstance(c.witness, dict) and "cap" in c.witness
                   for c in self.claims)

    @property
    def ok(self) -> bool:
        return self.error is None and not self.failed

    def claim(self, claim_id: str) -> Claim:
        for c in self.claims:
            if c.id == claim_id:
                return c
        raise KeyError(claim_id)

    def extend(self, other: "CertReport") -> "CertReport":
        self.claims.extend(other.claims)
        for k, v in other.info.items():
            self.info[k] = v
        return self

    def to_json(self, timing: bool = False) -> dict:
        out = {"params": self.params, "claims": [c.to_json(timing) for c in self.claims]}
        if self.error is not None:
            out["error"] = self.error
        return out


class _Recorder:
    """Collects claims, timing each and turning resource aborts into skips."""

    def __init__(self, params: UniformParams):
        self.report = CertReport(params.as_dict())

    def run(self, claim_id: str, fn: Callable[[], tuple]):
        t0 = time.perf_counter()
        try:
            status, witness, detail = fn()
        except ResourceCapExceeded as exc:
            status, witness, detail = SKIPPED, {"cap": str(exc), **exc.info}, None
        ms = (time.perf_counter() - t0) * 1000
        self.report.claims.append(Claim(claim_id, status, witness, detail, ms))
        return status


def _ok(detail=None):
    return PASS, None, detail


def _bad(witness):
    return FAIL, witness, None


def _text(p: Polynomial) -> str:
    return p.to_text()


def _mtext(params: UniformParams, m) -> str:
    return params.ring.render_monomial(m)


def step_name(cur, nxt) -> str:
    left = "L" if cur is None else "H(" + ",".join(map(str, cur)) + ")"
    return left + ":" + ",".join(map(str, nxt))


# ----------------------------------------------------------------------------
# generator shape


def basic_form_violation(params: UniformParams, f: Polynomial) -> str | None:
    """Why ``f`` fails the binomial shape, or None.

    Shape: u - v with coprime x-parts, no term divisible by both w and a y.
    When w occurs, one term is m(x) w^d and the other n(x) times y's.
    Binomials free of w (the Koszul forms) only need the first two conditions.
    """
    n = params.n
    if len(f.terms) != 2:
        return "not a binomial"
    (m1, c1), (m2, c2) = f.terms
    if c1 + c2 != 0 or abs(c1) != 1:
        return "coefficients are not +1, -1"
    x1, x2 = m1[:n], m2[:n]
    if any(a and b for a, b in zip(x1, x2)):
        return "x-parts share a variable"
    for m in (m1, m2):
        if m[2 * n] and any(m[n:2 * n]):
            return "a term involves both w and some y"
    w1, w2 = m1[2 * n], m2[2 * n]
    if w1 or w2:
        wterm, other = (m1, m2) if w1 else (m2, m1)
        if other[2 * n]:
            return "both terms involve w"
        if not any(other[n:2 * n]):
            return "w-free term has no y"
    else:
        if not any(m1[n:2 * n]) or not any(m2[n:2 * n]):
            return "a term is a pure x-monomial"
    return None


# ----------------------------------------------------------------------------
# generation


def verify_generation(params: UniformParams, caps: Caps = DEFAULT_CAPS) -> CertReport:
    rec = _Recorder(params)
    labeled = labeled_rees_generators(params)
    gens = [g for _, g in labeled]
    expected = expected_generator_count(params)
    state: dict = {}

    def count():
        if len(gens) == expected:
            return _ok({"generators": len(gens)})
        return _bad({"listed": len(gens), "expected": expected})

    def homogeneous():
        bad = [lab for lab, g in labeled if not g.is_homogeneous()]
        return _bad({"not_homogeneous": bad}) if bad else _ok()

    def in_kernel():
        bad = [lab for lab, g in labeled if rees_map_image(params, g)]
        return _bad({"nonzero_image": bad}) if bad else _ok()

    def shape():
        bad = {lab: why for lab, g in labeled if (why := basic_form_violation(params, g))}
        return _bad(bad) if bad else _ok()

    def sylvester():
        checked = 0
        for j in range(2, params.r + 2):
            tuples = combinations(range(1, params.n + 1), j)
            if j == params.r + 1 and params.case != CASE_J:
                tuples = [tuple(range(1, params.n + 1))]
            for t in tuples:
                it, cl = sylvester_iterative(params, t), sylvester_closed(params, t)
                checked += 1
                if it.poly != cl.poly:
                    return _bad({"tuple": list(t), "iterative": _text(it.poly), "closed": _text(cl.poly)})
        return _ok({"tuples": checked})

    def oracle():
        state["oracle"] = gb_mod.rees_oracle(params, caps=caps)
        return _ok({"oracle_basis": len(state["oracle"].gens)})

    def oracle_equal():
        o = state["oracle"]
        missing = [lab for lab, g in labeled if not o.contains(g)]
        if missing:
            return _bad({"not_in_oracle": missing})
        ours = buchberger(gens, caps=caps)
        extra = [_text(g) for g in o.gens if not ours.contains(g)]
        return _bad({"oracle_not_generated": extra}) if extra else _ok()

    def census():
        mins = gb_mod.minimal_generators(list(state["oracle"].gens), caps=caps)
        state["minimal"] = mins
        if len(mins) == expected:
            return _ok({"minimal_generators": len(mins)})
        return _bad({"minimal_generators": len(mins), "expected": expected,
                     "generators": [_text(g) for g in mins]})

    def minimal():
        redundant = [lab for k, (lab, _) in enumerate(labeled)
                     if not gb_mod.is_minimal_generator(gens, k, caps=caps)]
        return _bad({"redundant": redundant}) if redundant else _ok()

    def relation_type():
        top = max(external_degree(params, m) for g in state["minimal"] for m in g.monomials())
        if top == params.r + 1:
            return _ok({"relation_type": top})
        return _bad({"relation_type": top, "expected": params.r + 1})

    def oracle_shape():
        bad = {_text(g): why for g in state["minimal"] if (why := basic_form_violation(params, g))}
        return _bad(bad) if bad else _ok()

    def transposition():
        rep = transposition_identity(params)
        if rep.skipped:
            return SKIPPED, None, {"reason": rep.reason}
        bad = [{"fixed": list(c.fixed), "other": list(c.other), "residue": _text(c.residue)}
               for c in rep.checks if not c.ok]
        return _bad(bad) if bad else _ok({"pairs": len(rep.checks)})

    rec.run("gen.count", count)
    rec.run("gen.homogeneous", homogeneous)
    rec.run("gen.in_kernel", in_kernel)
    rec.run("gen.shape", shape)
    rec.run("gen.sylvester", sylvester)
    rec.run("gen.transposition", transposition)
    if rec.run("gen.oracle", oracle) == PASS:
        rec.run("gen.oracle_equal", oracle_equal)
        rec.run("gen.census", census)
        rec.run("gen.minimal", minimal)
        if "minimal" in state:
            rec.run("gen.relation_type", relation_type)
            rec.run("gen.oracle_shape", oracle_shape)
    else:
        cap = rec.report.claims[-1].witness
        for cid in ("gen.oracle_equal", "gen.census", "gen.minimal", "gen.relation_type", "gen.oracle_shape"):
            rec.report.claims.append(Claim(cid, SKIPPED, cap))
    return rec.report


# ----------------------------------------------------------------------------
# Groebner ladder


def prefix_name(params: UniformParams, k: int) -> str:
    if k == 0:
        return "L"
    from .uniform import sequential_tuples

    return "H(" + ",".join(map(str, sequential_tuples(params)[k - 1])) + ")"


def verify_gb_ladder(params: UniformParams, caps: Caps = DEFAULT_CAPS) -> CertReport:
    """GB property and predicted initial ideal for the syzygies and every ladder prefix."""
    rec = _Recorder(params)
    steps = len(ladder_steps(params))
    rec.report.info["pair_cases"] = set()
    rec.report.info["sigma_reduced"] = {}

    for k in range(steps + 1):
        def check(k=k):
            labeled = ladder_prefix(params, k)
            labels = [lab for lab, _ in labeled]
            polys = [g for _, g in labeled]
            cert = gb_mod.is_groebner_basis(polys, labels)
            for rec_ in cert.pairs:
                rec.report.info["pair_cases"].add(pair_case(*rec_.labels))
            name = prefix_name(params, k)
            rec.report.info["sigma_reduced"][name] = _is_reduced(polys)
            if not cert.is_groebner:
                f = cert.failures()[0]
                return _bad({"pair": list(f.labels), "remainder": _text(f.remainder)})
            got = MonomialIdeal(params.ring, [g.lm for g in polys])
            want = predicted_initial_ideal(params, k)
            if got != want:
                return _bad({"initial": got.to_text(), "predicted": want.to_text()})
            return _ok({"generators": len(polys), "pairs": len(cert.pairs)})

        cid = "gb.final" if k == steps else f"gb.{prefix_name(params, k)}"
        rec.run(cid, check)
    return rec.report


def _is_reduced(polys: Sequence[Polynomial]) -> bool:
    leads = [g.lm for g in polys]
    for g in polys:
        for m in g.monomials()[1:]:
            if any(all(a <= b for a, b in zip(l, m)) for l in leads):
                return False
    return True


# ----------------------------------------------------------------------------
# colon ladder


def verify_colon_ladder(params: UniformParams, caps: Caps = DEFAULT_CAPS) -> CertReport:
    """Predicted colon = colon of initial ideals = true colon, for each ladder step."""
    rec = _Recorder(params)
    colons: list = []
    rec.report.info["colons"] = colons

    for k, (cur, nxt) in enumerate(ladder_steps(params)):
        name = step_name(cur, nxt)

        def three_way(k=k, cur=cur, nxt=nxt):
            polys = [g for _, g in ladder_prefix(params, k)]
            f = sylvester_closed(params, nxt).poly
            hgb = buchberger(polys, caps=caps)
            init = hgb.initial_ideal()
            pred = predicted_colon(params, cur, nxt)
            of_init = colon_mono(init, f.lm)
            quotients = gb_mod.colon_by_poly(polys, f, caps=caps)
            cgb = buchberger(quotients, caps=caps)
            if not all(g.is_monomial() for g in cgb):
                g = next(g for g in cgb if not g.is_monomial())
                colons.append((cur, nxt, None))
                return _bad({"non_monomial_colon_generator": _text(g)})
            true = MonomialIdeal(params.ring, [g.lm for g in cgb])
            colons.append((cur, nxt, true))
            if not (pred == of_init == true):
                return _bad({"predicted": pred.to_text(), "initial_colon": of_init.to_text(),
                             "colon": true.to_text()})
            # in(J:f) is always inside in(J):in(f)
            if not of_init.contains_ideal(true):
                return _bad({"lemma_ii": true.to_text()})
            # each predicted generator g satisfies g*f in J
            for m in pred.gens:
                if not hgb.contains(f.mul_term(m)):
                    return _bad({"not_in_colon": _mtext(params, m)})
            # (J:f) f = J ∩ (f), and the monomial analogue
            jf = [q * f for q in quotients]
            inter = gb_mod.intersect_principal(polys, f, caps=caps)
            if not gb_mod.ideal_equal(jf, inter, caps=caps):
                return _bad({"lemma_i": "(J:f)f differs from J ∩ (f)"})
            if not all(hgb.contains(p) for p in jf):
                return _bad({"lemma_i": "(J:f)f not inside J"})
            mono_side = of_init.times(f.lm)
            if mono_side != intersect(init, MonomialIdeal(params.ring, [f.lm])):
                return _bad({"lemma_i_monomial": mono_side.to_text()})
            return _ok({"colon": true.to_text()})

        rec.run(f"colon.{name}", three_way)
    return rec.report


# ----------------------------------------------------------------------------
# almost Cohen-Macaulay certificate


def certify_colons(params: UniformParams, colons: Iterable[tuple]) -> CertReport:
    """Check each colon ideal is generated in x only and contains a power of every x_i."""
    rec = _Recorder(params)
    colons = list(colons)
    chain = []
    for cur, nxt, ideal in colons:
        name = step_name(cur, nxt)

        def check(ideal=ideal):
            if ideal is None:
                return _bad({"colon": "not a monomial ideal"})
            try:
                check_x_ideal(ideal, params.n)
            except NotXIdeal as exc:
                return _bad({"not an x-ideal": _mtext(params, exc.witness)})
            missing = ideal.missing_powers(params.n)
            if missing:
                return _bad({"no power of": [f"x{i}" for i in missing]})
            return _ok()

        if rec.run(f"acm.{name}", check) == PASS:
            chain.append(name)

    def depth():
        if not colons or len(chain) != len(colons):
            return _bad({"failed_steps": len(colons) - len(chain)})
        n = params.n
        return _ok({
            "statement": (f"each colon has an R-free resolution of length {n}; iterated mapping cones "
                          f"bound the homological dimension of the Rees algebra by {n + 1}, "
                          f"hence depth >= {n}"),
            "pd_bound": n + 1,
            "depth_bound": n,
            "steps": chain,
        })

    rec.run("acm.depth", depth)
    return rec.report


def certify_acm(params: UniformParams, caps: Caps = DEFAULT_CAPS,
                colon_report: CertReport | None = None) -> CertReport:
    """Certify depth >= n from the colon ladder; never passes if the ladder failed."""
    if colon_report is None:
        colon_report = verify_colon_ladder(params, caps)
    bad = [c.id for c in colon_report.claims if c.status == FAIL]
    capped = [c for c in colon_report.claims if c.status == SKIPPED]
    if bad or capped:
        rep = CertReport(params.as_dict())
        if bad:
            rep.claims.append(Claim("acm.depth", FAIL, {"colon_ladder_not_passed": bad}))
        else:
            rep.claims.append(Claim("acm.depth", SKIPPED, capped[0].witness))
        return rep
    return certify_colons(params, colon_report.info["colons"])


# ----------------------------------------------------------------------------
# grids


def default_grid() -> list[tuple[int, int, int]]:
    return [(n, a, b) for n in (2, 3, 4) for b in (1, 2, 3) for a in range(2 * b + 1, 10)]


def parse_grid(text: str) -> list[tuple[int, int, int]]:
    """Parse lines of ``n a b`` triples; ``#`` starts a comment."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'n a b', got {line!r}")
        try:
            out.append(tuple(int(p) for p in parts))
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer entry in {line!r}") from None
    return out


def verify_point(n: int, a: int, b: int, suites: Sequence[str] = SUITES,
                 caps: Caps = DEFAULT_CAPS) -> CertReport:
    try:
        params = reduction_data(n, a, b)
    except InvalidParams as exc:
        return CertReport({"n": n, "a": a, "b": b}, error=str(exc))
    report = CertReport(params.as_dict())
    colon = None
    for s in suites:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}")
    if "gen" in suites:
        report.extend(verify_generation(params, caps))
    if "gb" in suites:
        report.extend(verify_gb_ladder(params, caps))
    if "colon" in suites or "acm" in suites:
        colon = verify_colon_ladder(params, caps)
        if "colon" in suites:
            report.extend(colon)
    if "acm" in suites:
        report.extend(certify_acm(params, caps, colon))
    report.info.pop("colons", None)
    return report


def _verify_tuple(args):
    (n, a, b), suites, caps = args
    return verify_point(n, a, b, suites, caps)


def run_grid(points: Iterable[tuple[int, int, int]], suites: Sequence[str] = SUITES,
             caps: Caps = DEFAULT_CAPS, jobs: int = 1) -> list[CertReport]:
    """Verify every point; results keep the input order."""
    work = [(tuple(p), tuple(suites), caps) for p in points]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_verify_tuple, work))
    return [_verify_tuple(w) for w in work]
