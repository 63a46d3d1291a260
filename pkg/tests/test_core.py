from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from olg.core import (GroupElement, KoszulElement, Polynomial, exterior_product, group_act, order_key,
                      parse_polynomial, quantum_partial, sort_sign, weighted_degree)
from olg.cyclo import Cyclotomic
from olg.errors import InvalidArgument, NonHomogeneous

N = 3


@st.composite
def polys(draw, n=N):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * n), st.integers(-3, 3), max_size=4))
    return Polynomial(n, terms)


phases = st.tuples(*[st.sampled_from([Fraction(k, 6) for k in range(6)])] * N).map(GroupElement)


def test_parse_and_pretty():
    W = parse_polynomial("x1^3*x2 + x2^4")
    assert W.N == 2
    assert W.coefficient((3, 1)) == 1
    assert parse_polynomial("x^2*y - 1/2*y^3").coefficient((0, 3)) == Fraction(-1, 2)
    assert parse_polynomial(W.pretty()) == W
    assert parse_polynomial("x1", N=3).N == 3


@pytest.mark.parametrize("bad", ["x1 x2", "x1^", "x1 +", "", "x0^2", "x1^1/2"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidArgument):
        parse_polynomial(bad)


def test_weighted_degree():
    q = (Fraction(1, 3), Fraction(1, 3))
    assert weighted_degree(parse_polynomial("x1^2*x2 + x2^2*x1"), q) == 1
    with pytest.raises(NonHomogeneous):
        weighted_degree(parse_polynomial("x1^2 + x2"), q)


def test_grevlex_order():
    ms = sorted([(2, 0), (1, 1), (0, 2), (1, 0), (0, 0)], key=lambda m: order_key(m))
    assert ms[0] == (0, 0) and ms[1] == (1, 0)


def test_group_element_basics():
    g = GroupElement.parse("1/3,1/2")
    assert g.order == 6
    assert g ** 6 == GroupElement.identity(2)
    assert g.moving() == (1, 2) and GroupElement.parse("0,1/2").fixed() == (1,)
    assert g.lambdas[0] == Cyclotomic.zeta(3)
    assert g.component(2) == GroupElement.parse("0,1/2")
    assert (g * g.inverse()).is_identity()


def test_sort_sign_and_exterior():
    assert sort_sign([2, 1]) == -1 and sort_sign([1, 1]) == 0 and sort_sign([3, 1, 2]) == 1
    assert exterior_product([2], [1]) == (-1, (1, 2))
    assert exterior_product([1], [1]) == (0, None)


def test_quantum_partial_example():
    g = GroupElement.parse("1/3")
    f = parse_polynomial("x1^3")
    assert quantum_partial(g, 1, f).is_zero()  # [3]_zeta3 = 0
    f2 = parse_polynomial("x1^2")
    assert quantum_partial(g, 1, f2) == Polynomial.monomial((1,), 1 + Cyclotomic.zeta(3))


@given(polys(), phases, st.integers(1, N))
def test_quantum_partial_difference_quotient(f, g, i):
    # (1 - lambda_i) x_i d^g_i f = f - g^(i) f
    xi = Polynomial.variable(i, N)
    lhs = (xi * quantum_partial(g, i, f)).scale(1 - g.lambdas[i - 1])
    assert lhs == f - group_act(g.component(i), f)


@given(polys(), polys(), phases, st.integers(1, N))
def test_twisted_leibniz(a, b, g, i):
    lhs = quantum_partial(g, i, a * b)
    rhs = quantum_partial(g, i, a) * group_act(g.component(i), b) + a * quantum_partial(g, i, b)
    assert lhs == rhs


@given(polys(), polys(), polys())
def test_polynomial_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert (a - a).is_zero()


@given(phases, phases, polys())
def test_action_is_a_group_action(g, h, f):
    assert group_act(g, group_act(h, f)) == group_act(g * h, f)


def test_koszul_product_twists_coefficients():
    g = GroupElement.parse("1/3,0")
    e = GroupElement.identity(2)
    x1 = Polynomial.variable(1, 2)
    a = KoszulElement.term(Polynomial.constant(2), (1,), g)
    b = KoszulElement.term(x1, (2,), e)
    prod = a * b
    assert prod == KoszulElement.term(x1.scale(Cyclotomic.zeta(3)), (1, 2), g)
    assert (b * a) == KoszulElement.term(x1, (2, 1), g)
    assert (a * a).is_zero()


def test_koszul_rejects_bad_word():
    with pytest.raises(InvalidArgument):
        KoszulElement(1, {((2, 1), GroupElement.identity(1)): Polynomial.constant(1)})
