import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from olg.cyclo import (ONE, ZERO, Cyclotomic, cyc_arith, cyclotomic_poly, quantum_bracket, root_of_unity,
                       totient)
from olg.errors import DivisionByZero, InvalidArgument

from conftest import to_complex

MODULI = [1, 2, 3, 4, 5, 6, 8, 12]


@st.composite
def cyclotomics(draw, m=None):
    m = m or draw(st.sampled_from(MODULI))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6),
                           min_size=totient(m), max_size=totient(m)))
    return Cyclotomic.from_coefficients(m, coeffs)


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert [totient(m) for m in (1, 2, 3, 4, 5, 6, 12)] == [1, 1, 2, 2, 4, 2, 4]


def test_zeta_powers():
    z = Cyclotomic.zeta(3)
    assert z ** 3 == ONE
    assert 1 + z + z * z == ZERO
    assert Cyclotomic.zeta(4) ** 2 == Cyclotomic.from_rational(-1)


def test_mixed_moduli_and_demote():
    # zeta_6 = -zeta_3^2, and zeta_12^4 = zeta_3
    assert Cyclotomic.zeta(6) == -Cyclotomic.zeta(3, 2)
    assert (Cyclotomic.zeta(12) ** 4).demote().m == 3
    assert (Cyclotomic.zeta(4) + Cyclotomic.zeta(3)).m == 12


def test_pretty_and_json_roundtrip():
    c = Cyclotomic.from_rational(Fraction(3)) / (1 - Cyclotomic.zeta(3))
    assert c.pretty() == "2 + z3"
    assert Cyclotomic.from_json(c.to_json()) == c
    assert root_of_unity(Fraction(1, 2)) == Cyclotomic.from_rational(-1)


def test_errors():
    with pytest.raises(DivisionByZero):
        ONE / ZERO
    with pytest.raises(InvalidArgument):
        Cyclotomic.zeta(3).to_fraction()
    with pytest.raises(InvalidArgument):
        cyc_arith(1, 2, "pow")


def test_quantum_bracket():
    z = Cyclotomic.zeta(3)
    assert quantum_bracket(3, z) == ZERO
    assert quantum_bracket(2, z) == 1 + z
    assert quantum_bracket(4, ONE) == Cyclotomic.from_rational(4)


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(cyclotomics(), cyclotomics())
def test_matches_complex_evaluation(a, b):
    assert close(to_complex(a * b), to_complex(a) * to_complex(b))
    assert close(to_complex(a + b), to_complex(a) + to_complex(b))


@given(cyclotomics())
def test_inverse(a):
    if a.is_zero():
        return
    assert a * a.inverse() == ONE


@given(cyclotomics(m=12), cyclotomics(m=12), st.sampled_from([1, 5, 7, 11]))
def test_galois_is_automorphism(a, b, k):
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)


@given(cyclotomics(), st.sampled_from([12, 24]))
def test_promote_preserves_value(a, L):
    if L % a.m:
        return
    assert a.promote(L) == a
    assert close(to_complex(a.promote(L)), to_complex(a))
