"""Division, S-polynomials, Buchberger completion and elimination.

The engine works on an internal representation: a polynomial is a list of
``(monomial, coefficient)`` pairs sorted descending, with monomials stored
in the order's *key layout* (variables permuted into precedence order) so
that the lex order is native tuple comparison.  Public functions take and
return :class:`~rees_uniform.poly.Polynomial` objects.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Monomial, Polynomial, Ring, lcm_monomials, normalize_coefficient
from .monomial_ideal import MonomialIdeal

DESK_MAX_N = 4


class ResourceCapExceeded(RuntimeError):
    """A completion exceeded its configured basis-size or exponent cap."""

    def __init__(self, message: str, info: dict | None = None):
        super().__init__(message)
        self.info = info or {}


@dataclass(frozen=True)
class Caps:
    max_basis: int = 5000
    max_exp: int = 256


DEFAULT_CAPS = Caps()


# ----------------------------------------------------------------------------
# internal helpers (key layout)


def _to_internal(p: Polynomial) -> list:
    key = p.ring.order.key
    return [(key(m), c) for m, c in p.terms]


def _from_internal(ring: Ring, terms: Iterable) -> Polynomial:
    unkey = ring.order.unkey
    return Polynomial._from_sorted(ring, tuple((unkey(m), normalize_coefficient(c)) for m, c in terms))


def _monic(terms: list) -> list:
    lc = terms[0][1]
    if lc == 1:
        return terms
    if lc == -1:
        return [(m, -c) for m, c in terms]
    inv = Fraction(1) / lc
    return [(m, normalize_coefficient(c * inv)) for m, c in terms]


def _nonzero(m: Monomial) -> tuple:
    return tuple((i, e) for i, e in enumerate(m) if e)


class _Reducer:
    """A list of monic reducers with fast divisor lookup."""

    def __init__(self):
        self.polys: list[list] = []
        self.leads: list[Monomial] = []
        self.nz: list[tuple] = []

    def append(self, terms: list):
        self.polys.append(terms)
        self.leads.append(terms[0][0])
        self.nz.append(_nonzero(terms[0][0]))

    def find(self, m: Monomial) -> int:
        for idx, nz in enumerate(self.nz):
            for i, e in nz:
                if m[i] < e:
                    break
            else:
                return idx
        return -1

    def reduce(self, p: dict, full: bool = True) -> list:
        """Reduce the term dict ``p`` (consumed); return remainder sorted descending."""
        rem = []
        polys, leads = self.polys, self.leads
        while p:
            m = max(p)
            c = p.pop(m)
            idx = self.find(m)
            if idx < 0:
                rem.append((m, c))
                if not full:
                    rem.extend(sorted(p.items(), reverse=True))
                    return rem
                continue
            lm = leads[idx]
            q = tuple(a - b for a, b in zip(m, lm))
            for mg, cg in polys[idx][1:]:
                mm = tuple(a + b for a, b in zip(mg, q))
                v = p.get(mm, 0) - c * cg
                if v:
                    p[mm] = v
                else:
                    p.pop(mm, None)
        return rem


def _lcm(m1, m2):
    return tuple(a if a > b else b for a, b in zip(m1, m2))


def _divides(m1, m2):
    for a, b in zip(m1, m2):
        if a > b:
            return False
    return True


def _coprime(m1, m2):
    for a, b in zip(m1, m2):
        if a and b:
            return False
    return True


def _spoly_terms(f: list, g: list, L: Monomial) -> dict:
    """S-polynomial of monic f and g with leading-monomial lcm L, as a term dict."""
    qf = tuple(a - b for a, b in zip(L, f[0][0]))
    qg = tuple(a - b for a, b in zip(L, g[0][0]))
    p: dict = {}
    for m, c in f[1:]:
        mm = tuple(a + b for a, b in zip(m, qf))
        p[mm] = p.get(mm, 0) + c
    for m, c in g[1:]:
        mm = tuple(a + b for a, b in zip(m, qg))
        v = p.get(mm, 0) - c
        if v:
            p[mm] = v
        else:
            p.pop(mm, None)
    return p


class _Engine:
    """Buchberger completion with normal pair selection and optional chain criterion."""

    def __init__(self, ring: Ring, caps: Caps = DEFAULT_CAPS, chain: bool = True):
        self.ring = ring
        self.caps = caps
        self.chain = chain
        prec = ring.order.precedence
        w = ring.weights if ring.weights is not None else (1,) * ring.nvars
        self.W = tuple(w[v] for v in prec)
        self.red = _Reducer()
        self.pairs: dict = {}
        self.heap: list = []
        self.stats = {"pairs": 0, "reductions_to_zero": 0, "inserted": 0}

    def degree(self, m: Monomial) -> int:
        return sum(a * b for a, b in zip(self.W, m))

    def add(self, terms: list) -> bool:
        """Reduce ``terms`` against the current basis and insert the remainder."""
        r = self.red.reduce(dict(terms))
        if not r:
            return False
        self.insert(_monic(r))
        return True

    def insert(self, f: list):
        caps = self.caps
        red = self.red
        if len(red.polys) >= caps.max_basis:
            raise ResourceCapExceeded(f"basis size exceeded max_basis={caps.max_basis}",
                                      {"max_basis": caps.max_basis, "basis": len(red.polys)})
        top = max(max(m) for m, _ in f)
        if top > caps.max_exp:
            raise ResourceCapExceeded(f"exponent {top} exceeded max_exp={caps.max_exp}",
                                      {"max_exp": caps.max_exp, "exponent": top})
        lf = f[0][0]
        leads = red.leads
        k = len(leads)
        if self.chain:
            for (i, j), L in list(self.pairs.items()):
                if _divides(lf, L) and _lcm(leads[i], lf) != L and _lcm(leads[j], lf) != L:
                    del self.pairs[(i, j)]
            groups: dict = {}
            for i, li in enumerate(leads):
                groups.setdefault(_lcm(li, lf), []).append(i)
            kept = []
            for L in sorted(groups):
                if any(_divides(L2, L) for L2 in kept):
                    continue
                kept.append(L)
                if any(_coprime(leads[i], lf) for i in groups[L]):
                    continue
                self._push(groups[L][0], k, L)
        else:
            for i, li in enumerate(leads):
                if not _coprime(li, lf):
                    self._push(i, k, _lcm(li, lf))
        red.append(f)
        self.stats["inserted"] += 1

    def _push(self, i: int, j: int, L: Monomial):
        self.pairs[(i, j)] = L
        heapq.heappush(self.heap, (self.degree(L), L, i, j))

    def run(self, bound: int | None = None):
        heap, pairs, polys = self.heap, self.pairs, self.red.polys
        while heap:
            deg, L, i, j = heap[0]
            if bound is not None and deg > bound:
                break
            heapq.heappop(heap)
            if pairs.get((i, j)) is None:
                continue
            del pairs[(i, j)]
            self.stats["pairs"] += 1
            r = self.red.reduce(_spoly_terms(polys[i], polys[j], L))
            if r:
                self.insert(_monic(r))
            else:
                self.stats["reductions_to_zero"] += 1

    def reduced_basis(self) -> list[list]:
        """Minimalize and interreduce the current basis; sorted by leading monomial, descending."""
        polys, leads = self.red.polys, self.red.leads
        order = sorted(range(len(polys)), key=lambda i: leads[i])
        kept: list[int] = []
        for i in order:
            if not any(_divides(leads[k], leads[i]) for k in kept):
                kept.append(i)
        red = _Reducer()
        for i in kept:
            red.append(polys[i])
        out = []
        for i in kept:
            g = polys[i]
            tail = red.reduce(dict(g[1:]))
            out.append([g[0]] + tail)
        out.sort(key=lambda t: t[0][0], reverse=True)
        return out


# ----------------------------------------------------------------------------
# public API


@dataclass(frozen=True)
class GroebnerBasis:
    gens: tuple[Polynomial, ...]
    ring: Ring
    reduced: bool
    degree_bound: int | None = None
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    def _reducer(self) -> _Reducer:
        red = _Reducer()
        for g in self.gens:
            red.append(_monic(_to_internal(g)))
        return red

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        if self.degree_bound is not None and not _within_bound(p, self.degree_bound):
            raise ValueError(f"truncated basis (degree <= {self.degree_bound}) cannot decide this polynomial")
        return _from_internal(self.ring, self._reducer().reduce(dict(_to_internal(p))))

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def leading_monomials(self) -> list[Monomial]:
        return [g.lm for g in self.gens]

    def initial_ideal(self) -> MonomialIdeal:
        return initial_ideal(self)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


def _within_bound(p: Polynomial, bound: int) -> bool:
    return p.is_homogeneous() and all(p.ring.weighted_degree(m) <= bound for m in p.monomials())


def _common_ring(polys: Sequence[Polynomial]) -> Ring:
    if not polys:
        raise ValueError("need at least one polynomial")
    ring = polys[0].ring
    if any(p.ring != ring for p in polys):
        raise ValueError("polynomials from different rings")
    return ring


def normal_form(p: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Fully reduced remainder of ``p`` on division by ``basis`` (in list order)."""
    red = _Reducer()
    for g in basis:
        if g.is_zero():
            raise ValueError("zero polynomial in division basis")
        if g.ring != p.ring:
            raise ValueError("polynomials from different rings")
        red.append(_monic(_to_internal(g)))
    return _from_internal(p.ring, red.reduce(dict(_to_internal(p))))


def division(p: Polynomial, basis: Sequence[Polynomial]) -> tuple[list[Polynomial], Polynomial]:
    """Return quotients q and remainder r with p = sum(q_i * g_i) + r."""
    ring = p.ring
    if any(g.is_zero() for g in basis):
        raise ValueError("zero polynomial in division basis")
    key = ring.order.key
    quot: list[dict] = [{} for _ in basis]
    rem: dict = {}
    cur = dict(p.terms)
    while cur:
        m = max(cur, key=key)
        c = cur.pop(m)
        for idx, g in enumerate(basis):
            lc, lm = g.leading_term()
            if all(a >= b for a, b in zip(m, lm)):
                q = tuple(a - b for a, b in zip(m, lm))
                f = Fraction(c) / lc
                quot[idx][q] = quot[idx].get(q, 0) + f
                for mg, cg in g.terms[1:]:
                    mm = tuple(a + b for a, b in zip(mg, q))
                    v = cur.get(mm, 0) - f * cg
                    if v:
                        cur[mm] = v
                    else:
                        cur.pop(mm, None)
                break
        else:
            rem[m] = c
    return [Polynomial(ring, q) for q in quot], Polynomial(ring, rem)


def exact_divide(p: Polynomial, f: Polynomial) -> Polynomial:
    (q,), r = division(p, [f])
    if not r.is_zero():
        raise ValueError(f"{f} does not divide {p}")
    return q


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """(L/lt(f)) f - (L/lt(g)) g with L the lcm of the leading monomials."""
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise ValueError("polynomials from different rings")
    (cf, mf), (cg, mg) = f.leading_term(), g.leading_term()
    L = lcm_monomials(mf, mg)
    qf = tuple(a - b for a, b in zip(L, mf))
    qg = tuple(a - b for a, b in zip(L, mg))
    return f.mul_term(qf, Fraction(1) / cf) - g.mul_term(qg, Fraction(1) / cg)


def coprime_leads(f: Polynomial, g: Polynomial) -> bool:
    """Buchberger's first criterion: S(f, g) reduces to zero when this holds."""
    return not any(a and b for a, b in zip(f.lm, g.lm))


def buchberger(gens: Sequence[Polynomial], *, reduced: bool = True, chain: bool = True,
               caps: Caps = DEFAULT_CAPS, degree_bound: int | None = None) -> GroebnerBasis:
    """Groebner basis of the ideal generated by ``gens`` in the ring's order.

    With ``degree_bound`` the inputs must be homogeneous for the ring weights
    and the result is a truncated basis: valid for deciding membership of
    homogeneous polynomials of degree at most the bound.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    ring = _common_ring(gens)
    if degree_bound is not None and not all(g.is_homogeneous() for g in gens):
        raise ValueError("degree-truncated completion needs homogeneous generators")
    eng = _Engine(ring, caps, chain)
    for g in sorted(gens, key=lambda g: (eng.degree(ring.order.key(g.lm)),)):
        if degree_bound is not None and ring.weighted_degree(g.lm) > degree_bound:
            continue
        eng.add(_to_internal(g))
    eng.run(degree_bound)
    if reduced:
        basis = eng.reduced_basis()
    else:
        basis = list(eng.red.polys)
    return GroebnerBasis(tuple(_from_internal(ring, t) for t in basis), ring, reduced,
                         degree_bound, dict(eng.stats))


@dataclass(frozen=True)
class PairRecord:
    i: int
    j: int
    labels: tuple[str, str]
    coprime: bool
    remainder: Polynomial | None

    @property
    def reduces_to_zero(self) -> bool:
        return self.coprime or (self.remainder is not None and self.remainder.is_zero())


@dataclass(frozen=True)
class GBCertificate:
    is_groebner: bool
    pairs: tuple[PairRecord, ...]

    def failures(self) -> list[PairRecord]:
        return [p for p in self.pairs if not p.reduces_to_zero]


def is_groebner_basis(gens: Sequence[Polynomial], labels: Sequence[str] | None = None) -> GBCertificate:
    """Check every non-coprime S-pair of ``gens`` reduces to zero by division by ``gens``."""
    gens = list(gens)
    if any(g.is_zero() for g in gens):
        raise ValueError("zero polynomial in candidate basis")
    labels = list(labels) if labels is not None else [str(i) for i in range(len(gens))]
    if gens:
        _common_ring(gens)
    red = _Reducer()
    internal = [_monic(_to_internal(g)) for g in gens]
    for t in internal:
        red.append(t)
    records = []
    ok = True
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            li, lj = internal[i][0][0], internal[j][0][0]
            if _coprime(li, lj):
                records.append(PairRecord(i, j, (labels[i], labels[j]), True, None))
                continue
            r = red.reduce(_spoly_terms(internal[i], internal[j], _lcm(li, lj)))
            rp = _from_internal(gens[0].ring, r)
            ok = ok and not r
            records.append(PairRecord(i, j, (labels[i], labels[j]), False, rp))
    return GBCertificate(ok, tuple(records))


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal(gb.ring, [g.lm for g in gb.gens])


def ideal_member(p: Polynomial, gb: GroebnerBasis) -> bool:
    return gb.contains(p)


def ideal_contains_all(gb: GroebnerBasis, polys: Iterable[Polynomial]) -> list[Polynomial]:
    """Return the polynomials of ``polys`` *not* in the ideal of ``gb``."""
    return [p for p in polys if not gb.contains(p)]


def ideal_equal(gens_a: Sequence[Polynomial], gens_b: Sequence[Polynomial], *,
                caps: Caps = DEFAULT_CAPS) -> bool:
    ga = buchberger(gens_a, caps=caps)
    gb = buchberger(gens_b, caps=caps)
    return not ideal_contains_all(ga, gens_b) and not ideal_contains_all(gb, gens_a)


def minimal_generators(gens: Sequence[Polynomial], *, caps: Caps = DEFAULT_CAPS) -> list[Polynomial]:
    """A minimal generating subset of homogeneous ``gens`` (positive weights required).

    Candidates are scanned by increasing weighted degree and kept when not in
    the ideal of those already kept; membership uses a degree-truncated basis.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = _common_ring(gens)
    if ring.weights is not None and min(ring.weights) <= 0:
        raise ValueError("minimalization needs positive weights")
    if not all(g.is_homogeneous() for g in gens):
        raise ValueError("minimalization needs homogeneous generators")
    key = ring.order.key
    eng = _Engine(ring, caps)
    kept = []
    for g in sorted(gens, key=lambda g: (ring.weighted_degree(g.lm), key(g.lm))):
        eng.run(ring.weighted_degree(g.lm))
        if eng.add(_to_internal(g)):
            kept.append(g)
    return kept


def is_minimal_generator(gens: Sequence[Polynomial], idx: int, *, caps: Caps = DEFAULT_CAPS) -> bool:
    """True iff ``gens[idx]`` is not in the ideal of the other generators."""
    g = gens[idx]
    others = [h for k, h in enumerate(gens) if k != idx and not h.is_zero()]
    if not others:
        return not g.is_zero()
    bound = g.ring.weighted_degree(g.lm) if g.is_homogeneous() and all(h.is_homogeneous() for h in others) \
        else None
    gb = buchberger(others, caps=caps, degree_bound=bound)
    return not gb.contains(g)


# ----------------------------------------------------------------------------
# elimination


def eliminate(gens: Sequence[Polynomial], ext: Ring, base: Ring, *, caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
    """Reduced basis of (gens) intersected with the base ring.

    ``ext`` must extend ``base`` by trailing variables ranked above all base
    variables, which makes lex on ``ext`` an elimination order.
    """
    k = base.nvars
    if ext.names[:k] != base.names or ext.order.precedence[ext.nvars - k:] != base.order.precedence:
        raise ValueError("extension ring must rank the new variables above the base ones")
    gb = buchberger(gens, caps=caps)
    kept = [ext.restrict(g, base) for g in gb.gens if not any(any(m[k:]) for m in g.monomials())]
    return GroebnerBasis(tuple(kept), base, True, None, gb.stats)


def rees_oracle(params, *, caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
    """Kernel of S -> R[It] by eliminating t from y_j - x_j^a t, w - (x1...xn)^b t."""
    n, a, b = params.n, params.a, params.b
    if n > DESK_MAX_N:
        raise ResourceCapExceeded(f"desk-scale guard: n={n} > {DESK_MAX_N}", {"max_n": DESK_MAX_N, "n": n})
    if max(a, n * b) > caps.max_exp:
        raise ResourceCapExceeded(f"input exponent exceeds max_exp={caps.max_exp}",
                                  {"max_exp": caps.max_exp})
    base = params.ring
    ext = base.extend("t", weight=params.weights.wy - a)
    vs = params.varset
    t = ext.var("t")
    gens = []
    for j in range(1, n + 1):
        gens.append(ext.var(vs.y(j)) - ext.mono(vs.monomial(x={j: a}) + (0,)) * t)
    gens.append(ext.var(vs.w) - ext.mono(vs.monomial(x={i: b for i in range(1, n + 1)}) + (0,)) * t)
    return eliminate(gens, ext, base, caps=caps)


def intersect_principal(gens: Sequence[Polynomial], f: Polynomial, *,
                        caps: Caps = DEFAULT_CAPS) -> list[Polynomial]:
    """Generators of (gens) ∩ (f) via u*(gens) + (1-u)*f, eliminating u."""
    if f.is_zero():
        raise ValueError("cannot intersect with the zero ideal")
    base = f.ring
    ext = base.extend("u", weight=0)
    u = ext.var("u")
    big = [u * ext.embed(g) for g in gens] + [(1 - u) * ext.embed(f)]
    return list(eliminate(big, ext, base, caps=caps).gens)


def colon_by_poly(gens: Sequence[Polynomial], f: Polynomial, *, caps: Caps = DEFAULT_CAPS) -> list[Polynomial]:
    """Generators of (gens) : f, from (gens) ∩ (f) divided exactly by f."""
    return [exact_divide(h, f) for h in intersect_principal(gens, f, caps=caps)]
