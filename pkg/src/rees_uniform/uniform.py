"""Generators of the Rees ideal of I = (x1^a, ..., xn^a, (x1...xn)^b).

Everything here is built from the triple (n, a, b): reduction data, the
Koszul and Taylor syzygies K and L, the complement products P, Sylvester
forms (closed form and iterated content-matrix determinants), the
ordered generator list and the sequential ordering of tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Sequence

from .poly import Monomial, Polynomial, Ring, VarSet, WeightVector, divides, div_monomials

CASE_J = "J"  # nb >= a: J = (x1^a, ..., xn^a) is a minimal reduction
CASE_Q = "Q"  # nb < a


class InvalidParams(ValueError):
    """Parameters outside the standing assumptions 0 < b, a > 2b, n >= 2."""


@dataclass(frozen=True)
class UniformParams:
    n: int
    a: int
    b: int
    case: str
    p: int | None
    r: int
    weights: WeightVector

    @cached_property
    def varset(self) -> VarSet:
        return VarSet(self.n)

    @cached_property
    def ring(self) -> Ring:
        return Ring.standard(self.varset, self.weights)

    @property
    def top_degree(self) -> int:
        """External degree of the top Sylvester form, r + 1."""
        return self.r + 1

    def as_dict(self) -> dict:
        return {"n": self.n, "a": self.a, "b": self.b, "case": self.case, "p": self.p, "r": self.r}

    def minimal_reduction(self) -> list[Polynomial]:
        """Generators of the minimal reduction (J or Q), as polynomials in x only."""
        vs, ring = self.varset, self.ring
        n, a, b = self.n, self.a, self.b
        pure = [ring.mono(vs.monomial(x={i: a})) for i in range(1, n + 1)]
        if self.case == CASE_J:
            return pure
        return [f - pure[-1] for f in pure[:-1]] + [ring.mono(vs.monomial(x={i: b for i in range(1, n + 1)}))]

    def __str__(self):
        return f"(n={self.n}, a={self.a}, b={self.b})"


def reduction_data(n: int, a: int, b: int) -> UniformParams:
    """Classify (n, a, b) and derive p, the reduction number r and the weights."""
    for name, v in (("n", n), ("a", a), ("b", b)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidParams(f"{name} must be an integer, got {v!r}")
    if n < 2:
        raise InvalidParams(f"need n >= 2, got n={n}")
    if b <= 0:
        raise InvalidParams(f"need b > 0, got b={b}")
    if a <= 2 * b:
        raise InvalidParams(
            f"standing assumption a > 2b violated: a={a}, b={b} "
            "(for a <= 2b the Rees algebra is Cohen-Macaulay and excluded)")
    weights = WeightVector.for_params(n, a, b)
    if n * b >= a:
        p = -(-a // b)  # smallest p with p*b >= a
        return UniformParams(n, a, b, CASE_J, p, p - 1, weights)
    return UniformParams(n, a, b, CASE_Q, None, n - 1, weights)


# ----------------------------------------------------------------------------
# Index tuples


def check_tuple(params: UniformParams, tup: Sequence[int], min_len: int = 1) -> tuple[int, ...]:
    tup = tuple(tup)
    if len(tup) < min_len:
        raise ValueError(f"tuple {tup} shorter than {min_len}")
    if any(not 1 <= i <= params.n for i in tup):
        raise IndexError(f"tuple {tup} has entries outside 1..{params.n}")
    if any(i >= k for i, k in zip(tup, tup[1:])):
        raise ValueError(f"tuple {tup} is not strictly increasing")
    return tup


def complement_product(params: UniformParams, tup: Sequence[int]) -> Monomial:
    """P(tup): product of the x-variables whose indices are not in ``tup``."""
    s = set(tup)
    if any(not 1 <= i <= params.n for i in s):
        raise IndexError(f"tuple {tuple(tup)} has entries outside 1..{params.n}")
    return params.varset.monomial(x=[i for i in range(1, params.n + 1) if i not in s])


def _xpow(params: UniformParams, idx: Sequence[int], e: int) -> Monomial:
    return params.varset.monomial(x={i: e for i in idx})


def _pow(m: Monomial, e: int) -> Monomial:
    return tuple(k * e for k in m)


def _mul(*ms: Monomial) -> Monomial:
    return tuple(map(sum, zip(*ms)))


# ----------------------------------------------------------------------------
# Syzygies


def koszul_K(params: UniformParams, i: int, k: int) -> Polynomial:
    """K_{i,k} = x_i^a y_k - x_k^a y_i for i < k."""
    if not i < k:
        raise IndexError(f"Koszul form needs i < k, got ({i}, {k})")
    vs, a = params.varset, params.a
    return params.ring.binomial(vs.monomial(x={i: a}, y={k: 1}), vs.monomial(x={k: a}, y={i: 1}))


def taylor_L(params: UniformParams, i: int) -> Polynomial:
    """L_i = x_i^(a-b) w - P(i)^b y_i."""
    vs, a, b = params.varset, params.a, params.b
    m1 = vs.monomial(x={i: a - b}, w=1)
    m2 = _mul(_pow(complement_product(params, (i,)), b), vs.monomial(y={i: 1}))
    return params.ring.binomial(m1, m2)


# ----------------------------------------------------------------------------
# Sylvester forms


@dataclass(frozen=True)
class SylvesterForm:
    tuple: tuple[int, ...]
    degree: int
    poly: Polynomial
    is_top: bool

    @property
    def label(self) -> str:
        return f"H{self.degree}^" + ",".join(map(str, self.tuple))


def _is_top_degree(params: UniformParams, j: int) -> bool:
    return params.case == CASE_J and j == params.p


def _check_degree(params: UniformParams, j: int):
    if not 2 <= j <= params.r + 1:
        raise ValueError(f"Sylvester degree {j} outside 2..{params.r + 1} for {params}")


def sylvester_closed(params: UniformParams, tup: Sequence[int]) -> SylvesterForm:
    """Closed form of H_j over ``tup``, with the w^p convention at the top in case J."""
    tup = check_tuple(params, tup, 2)
    j = len(tup)
    _check_degree(params, j)
    vs, a, b = params.varset, params.a, params.b
    comp = _pow(complement_product(params, tup), j * b)
    ys = vs.monomial(y=tup)
    if _is_top_degree(params, j):
        # a <= pb: the x-part of the w-term moves across with exponent pb - a.
        m1 = vs.monomial(w=j)
        m2 = _mul(comp, _xpow(params, tup, j * b - a), ys)
        top = True
    else:
        m1 = _mul(_xpow(params, tup, a - j * b), vs.monomial(w=j))
        m2 = _mul(comp, ys)
        top = params.case == CASE_Q and j == params.n
    return SylvesterForm(tup, j, params.ring.binomial(m1, m2), top)


def content_matrix(f1: Polynomial, f2: Polynomial, g1: Monomial, g2: Monomial) -> list[list[Polynomial]]:
    """Content matrix M with [f1, f2]^T = M [g1, g2]^T.

    Each term goes to the first of ``g1``, ``g2`` dividing it; a term
    divisible by neither raises ValueError.
    """
    ring = f1.ring
    rows = []
    for f in (f1, f2):
        cols = [{}, {}]
        for m, c in f.terms:
            for col, g in enumerate((g1, g2)):
                if divides(g, m):
                    q = div_monomials(m, g)
                    cols[col][q] = cols[col].get(q, 0) + c
                    break
            else:
                raise ValueError(f"term {ring.render_monomial(m)} not in ({ring.render_monomial(g1)}, "
                                 f"{ring.render_monomial(g2)})")
        rows.append([Polynomial(ring, cols[0]), Polynomial(ring, cols[1])])
    for f, row in zip((f1, f2), rows):
        if row[0].mul_term(g1) + row[1].mul_term(g2) != f:
            raise AssertionError("content matrix does not reproduce its rows")
    return rows


def det2(m: list[list[Polynomial]]) -> Polynomial:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def sylvester_iterative(params: UniformParams, tup: Sequence[int],
                        path: Sequence[int] | None = None) -> SylvesterForm:
    """Build H_j over ``tup`` by iterated content-matrix determinants.

    ``path`` fixes the order in which indices are adjoined (default: the
    increasing order of ``tup``).  The first two indices give the degree-2
    form from L_l, L_i; each further index l adjoins L_l to the current form.
    """
    tup = check_tuple(params, tup, 2)
    j = len(tup)
    _check_degree(params, j)
    path = tuple(tup) if path is None else tuple(path)
    if sorted(path) != list(tup):
        raise ValueError(f"path {path} is not a permutation of {tup}")
    a, b = params.a, params.b
    l, i = path[0], path[1]
    if _is_top_degree(params, 2):
        raise ValueError("degree-2 top forms do not occur under a > 2b")
    m = content_matrix(taylor_L(params, l), taylor_L(params, i),
                       _xpow(params, (l,), b), _xpow(params, (i,), b))
    h = det2(m)
    current = [l, i]
    for l in path[2:]:
        jj = len(current)
        if _is_top_degree(params, jj + 1):
            g1 = _xpow(params, (l,), a - b)
            g2 = _xpow(params, current, a - jj * b)
        else:
            g1 = _xpow(params, (l,), jj * b)
            g2 = _xpow(params, current, b)
        h = det2(content_matrix(taylor_L(params, l), h, g1, g2))
        current.append(l)
    top = _is_top_degree(params, j) or (params.case == CASE_Q and j == params.n)
    return SylvesterForm(tup, j, h, top)


# ----------------------------------------------------------------------------
# Ladder and generators


def sequential_tuples(params: UniformParams) -> list[tuple[int, ...]]:
    """Tuples of degrees 2..r in lexicographic order, then the top tuple (1, ..., r+1)."""
    out = []
    for j in range(2, params.r + 1):
        out.extend(combinations(range(1, params.n + 1), j))
    out.append(tuple(range(1, params.r + 2)))
    return out


def ladder_forms(params: UniformParams) -> list[SylvesterForm]:
    return [sylvester_closed(params, t) for t in sequential_tuples(params)]


def syzygy_generators(params: UniformParams) -> list[tuple[str, Polynomial]]:
    """Labelled generators of the symmetric-algebra ideal: all K then all L."""
    n = params.n
    out = [(f"K{i},{k}", koszul_K(params, i, k)) for i, k in combinations(range(1, n + 1), 2)]
    out += [(f"L{i}", taylor_L(params, i)) for i in range(1, n + 1)]
    return out


def labeled_rees_generators(params: UniformParams) -> list[tuple[str, Polynomial]]:
    return syzygy_generators(params) + [(h.label, h.poly) for h in ladder_forms(params)]


def rees_generators(params: UniformParams) -> list[Polynomial]:
    return [p for _, p in labeled_rees_generators(params)]


def expected_generator_count(params: UniformParams) -> int:
    n = params.n
    return comb(n, 2) + sum(comb(n, d) for d in range(1, params.r + 1)) + 1


def ladder_prefix(params: UniformParams, k: int | None) -> list[tuple[str, Polynomial]]:
    """Labelled Sigma set of the first ``k`` ladder tuples (k = 0 is the syzygy ideal)."""
    forms = ladder_forms(params)
    if k is None:
        k = len(forms)
    if not 0 <= k <= len(forms):
        raise IndexError(f"ladder has {len(forms)} steps, asked for prefix {k}")
    return syzygy_generators(params) + [(h.label, h.poly) for h in forms[:k]]


def external_degree(params: UniformParams, m: Monomial) -> int:
    """Total degree in the presentation variables y1..yn, w."""
    return sum(m[params.n:2 * params.n + 1])


def rees_map_image(params: UniformParams, f: Polynomial) -> dict:
    """Image of ``f`` under y_j -> x_j^a t, w -> (x1...xn)^b t, as {(x-exps, t-exp): coeff}."""
    n, a, b = params.n, params.a, params.b
    out: dict = {}
    for m, c in f.terms:
        x = list(m[:n])
        ys, w = m[n:2 * n], m[2 * n]
        for j, e in enumerate(ys):
            x[j] += a * e
        x = [e + b * w for e in x]
        key = (tuple(x), sum(ys) + w)
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v != 0}


# ----------------------------------------------------------------------------
# Top-degree transposition claim


@dataclass(frozen=True)
class TranspositionCheck:
    fixed: tuple[int, ...]
    other: tuple[int, ...]
    residue: Polynomial

    @property
    def ok(self) -> bool:
        return self.residue.is_zero()


@dataclass(frozen=True)
class TranspositionReport:
    params: UniformParams
    skipped: bool
    reason: str
    checks: tuple[TranspositionCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def transposition_identity(params: UniformParams) -> TranspositionReport:
    """Check that top forms over p-subsets one swap apart agree modulo the syzygies.

    For each pair (T, T') of p-subsets with |T & T'| = p - 1 the difference
    of their top forms is reduced against a Groebner basis of the syzygy
    ideal plus the form over T.
    """
    from .groebner import buchberger  # local import: groebner depends on this module's types

    if params.case != CASE_J:
        return TranspositionReport(params, True, "case Q: unique top form of degree n", ())
    if params.p == params.n:
        return TranspositionReport(params, True, "p = n: unique top form w^n - ...", ())
    subsets = list(combinations(range(1, params.n + 1), params.p))
    tops = {t: sylvester_closed(params, t).poly for t in subsets}
    syz = [g for _, g in syzygy_generators(params)]
    checks = []
    bases = {}
    for i, t in enumerate(subsets):
        for t2 in subsets[i + 1:]:
            if len(set(t) & set(t2)) != params.p - 1:
                continue
            if t not in bases:
                bases[t] = buchberger(syz + [tops[t]])
            checks.append(TranspositionCheck(t, t2, bases[t].normal_form(tops[t2] - tops[t])))
    return TranspositionReport(params, False, "", tuple(checks))
