import random
from fractions import Fraction

import pytest

from olg.core import GroupElement, Polynomial, parse_polynomial
from olg.cyclo import Cyclotomic
from olg.errors import IdentityElement, InvalidArgument
from olg.invertible import parse_group_spec, validate_invertible, weights
from olg.milnor import build_jacobian
from olg.orbifold import build_orbifold, kunneth_mismatches, twisted_hessian


def orb(text, spec="full"):
    W = parse_polynomial(text)
    return build_orbifold(W, parse_group_spec(spec, validate_invertible(W)))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_fermat_generator_products(n):
    O = orb(f"x1^{n}")
    e = O.elements[0]
    for g in O.elements[1:]:
        lam = g.lambdas[0]
        expect = O.make(e, Polynomial.monomial((n - 2,), Cyclotomic.from_rational(n) / (1 - lam)))
        assert O.cup_generators(g, g.inverse()) == expect


def test_fermat_cube_value():
    O = orb("x1^3")
    g = GroupElement.parse("1/3")
    c = O.cup_generators(g, g.inverse())
    assert c.cls.coeffs[1] == 3 / (1 - Cyclotomic.zeta(3))
    assert c.cls.coeffs[1].pretty() == "2 + z3"


def test_loop22_value():
    # (1 - n1 n2)/((l1 - 1)(l2 - 1)) x1 x2
    O = orb("x1^2*x2 + x2^2*x1")
    for g in O.elements[1:]:
        l1, l2 = g.lambdas
        val = Cyclotomic.from_rational(1 - 4) / ((l1 - 1) * (l2 - 1))
        assert O.cup_generators(g, g.inverse()) == O.make(O.elements[0], Polynomial.monomial((1, 1), val))


def test_sector_inventory_fermat_and_loop():
    O = orb("x1^4")
    for g in O.elements[1:]:
        assert (O.sectors[g].dim, O.sectors[g].parity) == (1, 1)
    for text, N in [("x1^2*x2+x2^2*x1", 2), ("x1^2*x2+x2^2*x3+x3^2*x1", 3)]:
        O = orb(text)
        for g in O.elements[1:]:
            assert (O.sectors[g].dim, O.sectors[g].parity) == (1, N % 2)


def test_sector_inventory_chain():
    O = orb("x1^2*x2+x2^2*x3+x3^3")
    n = (2, 2, 3)
    seen = set()
    for g in O.elements[1:]:
        l = 0
        while l < 3 and g.phases[l]:
            l += 1
        seen.add(l)
        # Jac of the truncated chain x_{l+1}^{n_{l+1}} x_{l+2} + ... has dimension prod(1/q - 1)
        q = O.q[l:]
        mu = 1
        for w in q:
            mu *= 1 / w - 1
        assert O.sectors[g].dim == mu
        assert O.sectors[g].parity == l % 2
        assert set(O.sectors[g].ring.variables) == set(range(l + 1, 4))
    assert seen == {1, 2, 3}


def test_twisted_hessian_chain_short():
    # l_g = 1: -n_1/(lambda_1 - 1) x1^{n1-2} x2
    W = parse_polynomial("x1^3*x2 + x2^2")
    g = GroupElement.parse("1/3,0")
    lam = g.lambdas[0]
    expect = Polynomial.monomial((1, 1), Cyclotomic.from_rational(-3) / (lam - 1))
    assert twisted_hessian(W, g) == expect
    with pytest.raises(IdentityElement):
        twisted_hessian(W, GroupElement.identity(2))


@pytest.mark.parametrize("text, spec", [
    ("x1^3", "full"),
    ("x1^2*x2+x2^2*x1", "full"),
    ("x1^2*x2+x2^2", "full"),
    ("x1^3+x2^3", "full"),
    ("x1^4", "gens:1/2"),
    ("x1^3+x2^3", "SL"),
])
def test_frobenius_suite(text, spec):
    rep = orb(text, spec).check_g_frobenius()
    assert rep.passed, rep.to_json()
    assert len(rep.results) == 12


def test_kunneth():
    O1, O2 = orb("x1^3"), orb("x1^3")
    O12 = orb("x1^3 + x2^3")
    assert kunneth_mismatches(O12, O1, O2) == []


def test_subgroup_embedding():
    G = orb("x1^4")
    H = orb("x1^4", "gens:1/2")
    for g, i in H.basis():
        for h, j in H.basis():
            a = H.structure_constant(g, i, h, j)
            b = G.structure_constant(g, i, h, j)
            assert a.g == b.g and a.cls.coeffs == b.cls.coeffs


def _ideal_element(O, g, rng):
    ring = O.sectors[g].ring
    fx = ring.variables
    d = Polynomial.zero(O.N)
    for j in fx:
        terms = {}
        for _ in range(3):
            m = [0] * O.N
            for v in fx:
                m[v - 1] = rng.randint(0, 2)
            terms[tuple(m)] = rng.randint(-3, 3)
        d = d + Polynomial(O.N, terms) * ring.W.derivative(j)
    return d


@pytest.mark.parametrize("text", ["x1^3+x2^3", "x1^2*x2+x2^3", "x1^2*x2+x2^2*x1"])
def test_lift_independence(text):
    O = orb(text)
    rng = random.Random(7)
    for g, i in O.basis():
        for h, j in O.basis():
            f = Polynomial.monomial(O.sectors[g].ring.basis[i])
            f2 = Polynomial.monomial(O.sectors[h].ring.basis[j])
            ref = O.cup_lifted(g, f, h, f2)
            c = O.generator_product_lift(g, h)
            cc = None if c is None else c + _ideal_element(O, g * h, rng)
            got = O.cup_lifted(g, f + _ideal_element(O, g, rng), h, f2 + _ideal_element(O, h, rng), cc)
            assert got == ref


def test_invariant_subalgebra_fermat():
    basis, table = orb("x1^3").invariant_subalgebra()
    # x -> zeta x and the twisted generators pick up nontrivial scalars, only 1 survives
    assert [b.pretty() for b in basis] == ["(1)*1_[0]"]
    assert table[(0, 0)][0] == 1


def test_eta_and_make_errors():
    O = orb("x1^3")
    one = O.unit()
    x = O.make(O.elements[0], parse_polynomial("x1"))
    # Res normalised by Res[hess] = mu: hess = 6x, so Res[x] = 2/6
    assert O.eta(one, x) == Fraction(1, 3)
    assert O.eta(one, one) == 0
    with pytest.raises(InvalidArgument):
        O.make(GroupElement.parse("1/2"), parse_polynomial("x1"))


def test_json_inventory():
    js = orb("x1^3").to_json()
    assert js["group_order"] == 3
    assert [s["dim"] for s in js["sectors"]] == [2, 1, 1]
