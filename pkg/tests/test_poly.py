from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rees_uniform.poly import (
    Cmp, DimensionError, MonomialOrder, Polynomial, Ring, VarSet, WeightVector, compare_monomials,
    div_monomials, divides, lcm_monomials, leading_term, weighted_degree,
)
from rees_uniform.uniform import koszul_K, sylvester_closed, taylor_L

VS3 = VarSet(3)
ORDER3 = MonomialOrder(VS3.default_precedence())


def test_varset_layout():
    assert VS3.size == 7
    assert VS3.names == ("x1", "x2", "x3", "y1", "y2", "y3", "w")
    assert (VS3.x(1), VS3.y(1), VS3.w) == (0, 3, 6)
    with pytest.raises(ValueError):
        VarSet(1)
    with pytest.raises(IndexError):
        VS3.x(4)


def test_compare_examples():
    m1 = VS3.monomial(x={2: 7}, y=[1])
    m2 = VS3.monomial(x={1: 7}, y=[2])
    assert compare_monomials(ORDER3, m1, m2) == Cmp.GT
    assert compare_monomials(ORDER3, m2, m1) == Cmp.LT
    assert compare_monomials(ORDER3, m1, m1) == Cmp.EQ
    # w outranks every x, x1 outranks every y
    assert ORDER3.compare(VS3.monomial(w=1), VS3.monomial(x={3: 9})) == Cmp.GT
    assert ORDER3.compare(VS3.monomial(x=[1]), VS3.monomial(y={3: 5})) == Cmp.GT
    assert ORDER3.compare(VS3.monomial(y=[3]), VS3.monomial(y={2: 5})) == Cmp.GT


def test_compare_dimension_mismatch():
    with pytest.raises(DimensionError):
        ORDER3.compare((0,) * 7, (0,) * 5)


def test_leading_terms(p373):
    assert koszul_K(p373, 1, 2).lm == VS3.monomial(x={2: 7}, y=[1])
    assert leading_term(taylor_L(p373, 1)) == (1, VS3.monomial(x={1: 4}, w=1))
    assert leading_term(sylvester_closed(p373, (1, 2)).poly) == (1, VS3.monomial(x=[1, 2], w=2))
    assert leading_term(p373.ring.const(5)) == (5, (0,) * 7)
    with pytest.raises(ValueError):
        p373.ring.zero().leading_term()


def test_weighted_degree_examples(p373, p252):
    w = p373.weights
    assert (w.wy, w.ww) == (1, 3)
    assert weighted_degree(w, VS3.monomial(x={1: 4}, w=1)) == 7
    assert weighted_degree(w, VS3.monomial(x={2: 3, 3: 3}, y=[1])) == 7
    assert weighted_degree(w, (0,) * 7) == 0
    w2 = p252.weights
    assert (w2.wy, w2.ww) == (2, 1)
    vs2 = VarSet(2)
    assert weighted_degree(w2, vs2.monomial(x={1: 5}, y=[2])) == 7 == weighted_degree(w2, vs2.monomial(x={2: 5}, y=[1]))


def test_weights_agree_on_boundary():
    assert WeightVector.for_params(3, 6, 2) == WeightVector(3, 1, 1)


def test_lcm_divides_div():
    m1 = VS3.monomial(x=[1, 3], w=2)
    m2 = VS3.monomial(x={2: 7}, y=[1])
    l = lcm_monomials(m1, m2)
    assert l == VS3.monomial(x={1: 1, 2: 7, 3: 1}, y=[1], w=2)
    assert divides(VS3.monomial(x=[1]), VS3.monomial(x={1: 2}, y=[1]))
    assert div_monomials(l, m1) == m2
    with pytest.raises(ValueError):
        div_monomials(m1, m2)


def test_polynomial_invariants():
    ring = Ring.standard(VS3)
    p = Polynomial(ring, [(VS3.monomial(y=[1]), 1), (VS3.monomial(w=1), 2), (VS3.monomial(y=[1]), -1)])
    assert p.terms == ((VS3.monomial(w=1), 2),)
    assert Polynomial(ring, {VS3.monomial(x=[1]): Fraction(4, 2)}).lc == 2
    assert isinstance(Polynomial(ring, {VS3.monomial(x=[1]): Fraction(4, 2)}).lc, int)
    with pytest.raises(DimensionError):
        Polynomial(ring, {(1, 2): 1})
    with pytest.raises(ValueError):
        Polynomial(ring, {(-1, 0, 0, 0, 0, 0, 0): 1})


def test_text_rendering(p252):
    assert sylvester_closed(p252, (1, 2)).poly.to_text() == "x1*x2*w^2 - y1*y2"
    assert p252.ring.zero().to_text() == "0"
    assert (p252.ring.const(Fraction(-3, 2))).to_text() == "-3/2"


def test_extend_and_restrict():
    ring = Ring.standard(VS3)
    ext = ring.extend("t", weight=-2)
    assert ext.names[-1] == "t" and ext.order.precedence[0] == 7
    t = ext.var("t")
    p = ext.embed(ring.var("w"))
    assert (t * p).lm[-1] == 1
    assert ext.restrict(p, ring) == ring.var("w")
    with pytest.raises(ValueError):
        ext.restrict(t, ring)
    with pytest.raises(ValueError):
        ring.extend("w")


# -- properties ---------------------------------------------------------------

monos = st.tuples(*[st.integers(0, 4)] * 7)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=3)
RING = Ring.standard(VS3, WeightVector(3, 2, 3))
polys = st.dictionaries(monos, coeffs, max_size=4).map(lambda d: Polynomial(RING, d))


@given(monos, monos, monos)
def test_order_total_transitive_multiplicative(a, b, c):
    ab, ba = ORDER3.compare(a, b), ORDER3.compare(b, a)
    assert ab == -ba
    assert (ab == Cmp.EQ) == (a == b)
    if ab == Cmp.LT and ORDER3.compare(b, c) == Cmp.LT:
        assert ORDER3.compare(a, c) == Cmp.LT
    mul = lambda u, v: tuple(x + y for x, y in zip(u, v))
    if ab != Cmp.EQ:
        assert ORDER3.compare(mul(a, c), mul(b, c)) == ab


@given(monos)
def test_one_is_minimum(m):
    assert ORDER3.compare((0,) * 7, m) in (Cmp.LT, Cmp.EQ)


@given(monos, monos)
def test_weighted_degree_additive(a, b):
    w = WeightVector(3, 2, 3)
    prod = tuple(x + y for x, y in zip(a, b))
    assert weighted_degree(w, prod) == weighted_degree(w, a) + weighted_degree(w, b)


@settings(max_examples=60)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0
    assert f * 1 == f


@given(polys, monos)
def test_mul_term_matches_product(f, m):
    assert f.mul_term(m, 3) == f * RING.mono(m, 3)


@given(polys)
def test_terms_sorted_and_nonzero(f):
    keys = [RING.order.key(m) for m, _ in f.terms]
    assert keys == sorted(keys, reverse=True)
    assert len(set(keys)) == len(keys)
    assert all(c != 0 for _, c in f.terms)
