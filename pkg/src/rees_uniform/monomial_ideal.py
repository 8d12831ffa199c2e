"""Monomial ideals and the predicted generator families for initial and colon ideals.

A :class:`MonomialIdeal` always stores its minimal generators, sorted
descending in the ring order, so equality of ideals is equality of
generator tuples.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .poly import Monomial, Ring, divides, lcm_monomials


class NotXIdeal(ValueError):
    """A generator involves a presentation variable (some y or w)."""

    def __init__(self, witness: Monomial, text: str):
        super().__init__(f"not an x-ideal: generator {text} involves y or w")
        self.witness = witness


def minimal_monomials(monos: Iterable[Monomial]) -> list[Monomial]:
    """Drop every monomial divisible by another one (and duplicates)."""
    # Sorting by total degree puts every proper divisor before its multiples.
    uniq = sorted(set(tuple(m) for m in monos), key=lambda m: (sum(m), m))
    kept: list[Monomial] = []
    for m in uniq:
        if not any(divides(g, m) for g in kept):
            kept.append(m)
    return kept


class MonomialIdeal:
    __slots__ = ("ring", "gens")

    def __init__(self, ring: Ring, monos: Iterable[Monomial] = ()):
        monos = [tuple(m) for m in monos]
        if any(len(m) != ring.nvars for m in monos):
            raise ValueError("monomial length does not match the ring")
        self.ring = ring
        self.gens = tuple(sorted(minimal_monomials(monos), key=ring.order.key, reverse=True))

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.ring == other.ring and set(self.gens) == set(other.gens)

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.gens)))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self):
        return f"MonomialIdeal({self.to_text()})"

    def to_text(self) -> str:
        return "(" + ", ".join(self.ring.render_monomial(m) for m in self.gens) + ")"

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.ring, self.gens + other.gens)

    def times(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(self.ring, [tuple(a + b for a, b in zip(g, m)) for g in self.gens])

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return intersect(self, other)

    def colon(self, m: Monomial) -> "MonomialIdeal":
        return colon_mono(self, m)

    def missing_powers(self, n: int) -> list[int]:
        """Indices i in 1..n such that no generator is a pure power of x_i."""
        have = set()
        for g in self.gens:
            support = [i for i, e in enumerate(g) if e]
            if len(support) == 1 and support[0] < n:
                have.add(support[0] + 1)
        return [i for i in range(1, n + 1) if i not in have]


def minimalize(ring: Ring, monos: Iterable[Monomial]) -> MonomialIdeal:
    return MonomialIdeal(ring, monos)


def intersect(i1: MonomialIdeal, i2: MonomialIdeal) -> MonomialIdeal:
    """Ideal of pairwise lcms of the generators."""
    if i1.ring != i2.ring:
        raise ValueError("ideals from different rings")
    return MonomialIdeal(i1.ring, [lcm_monomials(g, h) for g in i1.gens for h in i2.gens])


def colon_mono(ideal: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """(I : m) generated by lcm(g, m) / m."""
    m = tuple(m)
    if len(m) != ideal.ring.nvars:
        raise ValueError("monomial length does not match the ring")
    return MonomialIdeal(ideal.ring, [tuple(max(a, b) - b for a, b in zip(g, m)) for g in ideal.gens])


def check_x_ideal(ideal: MonomialIdeal, n: int):
    for g in ideal.gens:
        if any(g[n:]):
            raise NotXIdeal(g, ideal.ring.render_monomial(g))


def is_mprimary(ideal: MonomialIdeal, n: int) -> bool:
    """True iff the x-ideal contains a pure power of each of x1..xn.

    Raises NotXIdeal when some generator involves y or w.
    """
    check_x_ideal(ideal, n)
    return not ideal.missing_powers(n)


# ----------------------------------------------------------------------------
# Predicted families for the uniform ideal


def _x(params, exps: dict) -> Monomial:
    return params.varset.monomial(x={i: e for i, e in exps.items() if e})


def _prod(params, idx: Iterable[int], e: int, extra: dict | None = None) -> Monomial:
    exps = {i: e for i in idx}
    for i, k in (extra or {}).items():
        exps[i] = exps.get(i, 0) + k
    return _x(params, exps)


def leading_monomial_of_form(params, tup: Sequence[int]) -> Monomial:
    """Predicted leading monomial of the Sylvester form over ``tup``."""
    from .uniform import CASE_J

    vs, a, b = params.varset, params.a, params.b
    j = len(tup)
    if params.case == CASE_J and j == params.p:
        return vs.monomial(w=j)
    return vs.monomial(x={i: a - j * b for i in tup}, w=j)


def predicted_initial_ideal(params, prefix: int | None = None) -> MonomialIdeal:
    """Initial ideal of the syzygies plus the first ``prefix`` ladder forms.

    Built from the displayed leading terms: x_k^a y_i (i < k), x_i^(a-b) w
    and one leading monomial per ladder tuple.
    """
    from .uniform import sequential_tuples

    vs, n, a, b = params.varset, params.n, params.a, params.b
    tuples = sequential_tuples(params)
    if prefix is None:
        prefix = len(tuples)
    if not 0 <= prefix <= len(tuples):
        raise IndexError(f"ladder has {len(tuples)} steps, asked for prefix {prefix}")
    monos = [vs.monomial(x={k: a}, y={i: 1}) for i, k in combinations(range(1, n + 1), 2)]
    monos += [vs.monomial(x={i: a - b}, w=1) for i in range(1, n + 1)]
    monos += [leading_monomial_of_form(params, t) for t in tuples[:prefix]]
    return MonomialIdeal(params.ring, monos)


class NotSuccessor(ValueError):
    """The tuple pair is not a consecutive step of the ladder."""


def ladder_steps(params) -> list[tuple[tuple[int, ...] | None, tuple[int, ...]]]:
    """Consecutive (current, next) pairs; current None stands for the syzygies alone."""
    from .uniform import sequential_tuples

    tuples = sequential_tuples(params)
    return list(zip([None] + tuples[:-1], tuples))


def _same_degree_family(params, nxt: tuple[int, ...]) -> list[Monomial]:
    n, a, b = params.n, params.a, params.b
    j = len(nxt)
    K = set(nxt)
    kj = nxt[-1]
    tail = range(kj + 1, n + 1)
    out = [_prod(params, [k], (j - 1) * b) for k in nxt]
    out += [_prod(params, [u], a - j * b) for u in range(1, kj) if u not in K]
    out += [_prod(params, [s], a - b) for s in tail]
    for s in range(1, j):
        out += [_prod(params, R, (j - s) * b) for R in combinations(nxt, s)]
        for r in range(0, s):
            for Q in combinations(nxt, r):
                for D in combinations(tail, s - r):
                    out.append(_prod(params, Q, (j - s) * b, {d: a - s * b for d in D}))
    return out


def _jump_family(params, j: int) -> list[Monomial]:
    """Colon for the step from degree j (j = 1: syzygies only) to the tuple (1, ..., j+1)."""
    n, a, b = params.n, params.a, params.b
    K = tuple(range(1, j + 2))
    tail = range(j + 2, n + 1)
    out = [_prod(params, [k], j * b) for k in K]
    out += [_prod(params, [s], a - b) for s in tail]
    for s in range(1, j + 1):
        out += [_prod(params, R, (j + 1 - s) * b) for R in combinations(K, s)]
        for r in range(0, s):
            for Q in combinations(K, r):
                for D in combinations(tail, s - r):
                    out.append(_prod(params, Q, (j + 1 - s) * b, {d: a - s * b for d in D}))
    return out


def _top_w_family(params) -> list[Monomial]:
    """Colon for the last step when the top form has leading monomial w^p."""
    n, a, b, p = params.n, params.a, params.b, params.p
    out = [_prod(params, [d], a - b) for d in range(1, n + 1)]
    for s in range(2, p):
        out += [_prod(params, T, a - s * b) for T in combinations(range(1, n + 1), s)]
    return out


def predicted_colon(params, cur: Sequence[int] | None, nxt: Sequence[int]) -> MonomialIdeal:
    """Predicted (in(H_cur) : in(H_next)) for a consecutive ladder step.

    ``cur`` is None for the first step, whose left side is the syzygy ideal.
    """
    from .uniform import CASE_J

    cur = None if cur is None else tuple(cur)
    nxt = tuple(nxt)
    if (cur, nxt) not in ladder_steps(params):
        raise NotSuccessor(f"{nxt} does not immediately follow {cur} in the ladder of {params}")
    j = 1 if cur is None else len(cur)
    if len(nxt) == j:
        monos = _same_degree_family(params, nxt)
    elif params.case == CASE_J and len(nxt) == params.p:
        monos = _top_w_family(params)
    else:
        monos = _jump_family(params, j)
    return MonomialIdeal(params.ring, monos)
