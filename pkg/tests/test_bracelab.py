import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from olg.bracelab import (FiniteAlgebra, InvariantCochain, TwistedCochain, ZetaRing, _same, add, brace,
                          cochain_group_action, crossed_product, cup, curving_d, group_algebra_z2,
                          hochschild_cohomology_dims, hochschild_d, identity_suite, invariant_cohomology_dims,
                          is_invariant, pre_jacobi_sides, psi_map, psi_comparison, symmetrize,
                          truncated_polynomial_algebra)
from olg.cyclo import Cyclotomic
from olg.errors import InvalidArgument, MissingCurving, NotInvariant


def vec(R, coeffs):
    return R.from_cyclotomic(Cyclotomic.from_coefficients(R.m, coeffs))


@given(st.sampled_from([3, 4, 5]), st.data())
def test_zeta_ring_matches_cyclotomic(m, data):
    R = ZetaRing(m)
    a = data.draw(st.lists(st.integers(-4, 4), min_size=R.F, max_size=R.F))
    b = data.draw(st.lists(st.integers(-4, 4), min_size=R.F, max_size=R.F))
    prod = R.einsum(["", ""], "", np.array(a), np.array(b))
    expect = Cyclotomic.from_coefficients(m, a) * Cyclotomic.from_coefficients(m, b)
    assert R.to_cyclotomic(prod) == expect


def test_zeta_ring_basics():
    R = ZetaRing(3)
    z = R.zeta(1)
    assert R.to_cyclotomic(R.einsum(["", "", ""], "", z, z, z)) == 1
    with pytest.raises(InvalidArgument):
        R.from_cyclotomic(Cyclotomic.zeta(4))


def test_algebra_validation():
    A = truncated_polynomial_algebra(3, 3, 1)
    assert A.order == 3 and A.d == 3
    bad_mult = A.mult.copy()
    bad_mult[1, 1, 2, 0] = 2
    bad_mult[1, 1, 0, 0] = 1  # x*x = 1 + 2x^2 breaks associativity with x^3 = 0
    with pytest.raises(InvalidArgument):
        FiniteAlgebra(A.R, bad_mult, A.unit)
    with pytest.raises(InvalidArgument):
        FiniteAlgebra(A.R, A.mult, np.zeros_like(A.unit))
    with pytest.raises(InvalidArgument):
        truncated_polynomial_algebra(1, 2, 1)  # the action on Q is not faithful
    g = np.zeros((3, 3, A.R.F), dtype=np.int64)
    g[0, 0, 0] = 1
    g[1, 1, 0] = 2  # x -> 2x, but x^2 -> x^2: not an automorphism
    g[2, 2, 0] = 1
    with pytest.raises(InvalidArgument):
        FiniteAlgebra(A.R, A.mult, A.unit, None, [g])
    with pytest.raises(InvalidArgument):
        truncated_polynomial_algebra(3, 3, 1, W_power=1)  # x is not fixed by Z/3
    with pytest.raises(MissingCurving):
        A.m0()


def test_json_roundtrip():
    A = truncated_polynomial_algebra(4, 3, 1, W_power=3)
    B = FiniteAlgebra.from_json(json.dumps(A.to_json()))
    assert np.array_equal(A.mult, B.mult) and np.array_equal(A.W, B.W) and B.order == 3


def test_brace_unit_and_associativity():
    A = truncated_polynomial_algebra(3, 3, 1)
    m2 = A.m2()
    assert brace(A, m2, []) == m2
    assert hochschild_d(A, m2).is_zero()
    rng = np.random.default_rng(3)
    phi = A.random_cochain(rng, 1)
    assert brace(A, A.zero(0), [phi]).is_zero()  # no slot to insert into
    assert brace(A, A.zero(0), [A.zero(0)]).arity == -1
    unit = TwistedCochain(0, 0, A.unit.copy())
    assert cup(A, unit, phi) == phi


def test_group_action_composes():
    A = truncated_polynomial_algebra(3, 3, 1)
    rng = np.random.default_rng(5)
    phi = A.random_cochain(rng, 2)
    for a in range(3):
        for b in range(3):
            lhs = cochain_group_action(A, a, cochain_group_action(A, b, phi))
            assert lhs == cochain_group_action(A, A.mul_g(a, b), phi)


def test_twisted_cup_not_commutative():
    A = truncated_polynomial_algebra(3, 3, 1)
    rng = np.random.default_rng(11)
    seen = False
    for _ in range(10):
        p = A.random_cochain(rng, 1, 1)
        q = A.random_cochain(rng, 1, 0)
        if not _same([cup(A, p, q)], [cup(A, q, p)]):
            seen = True
    assert seen


def test_pre_jacobi_negative_control():
    A = truncated_polynomial_algebra(3, 3, 1)
    rng = np.random.default_rng(2)
    phi = A.random_cochain(rng, 2)
    phis = [A.random_cochain(rng, 1)]
    psis = [A.random_cochain(rng, 1)]
    lhs, rhs = pre_jacobi_sides(A, phi, phis, psis)
    assert _same([lhs], rhs)
    k = next(i for i, t in enumerate(rhs) if not t.is_zero())
    broken = list(rhs)
    broken[k] = -broken[k]
    assert not _same([lhs], broken)


def test_curving_differential():
    A = truncated_polynomial_algebra(4, 3, 1, W_power=3)
    rng = np.random.default_rng(0)
    phi = A.random_cochain(rng, 2)
    assert curving_d(A, curving_d(A, phi)).is_zero()


@pytest.mark.parametrize("A", [truncated_polynomial_algebra(3, 3, 1),
                               truncated_polynomial_algebra(4, 3, 1, W_power=3),
                               truncated_polynomial_algebra(3, 2, 1),
                               group_algebra_z2()])
def test_identity_suite_small(A):
    rep = identity_suite(A, samples=4, seed=1)
    assert rep.passed, rep.to_json()
    names = {r.name for r in rep.results}
    assert "pre_jacobi_22" in names and "psi_brace" in names
    assert ("dW_squared" in names) == (A.W is not None)


def test_symmetrize_and_psi():
    A = truncated_polynomial_algebra(2, 2, 1)
    AG = crossed_product(A)
    rng = np.random.default_rng(4)
    phi = A.random_cochain(rng, 1)
    inv = symmetrize(A, phi)
    assert is_invariant(A, inv)
    assert psi_map(A, AG, inv).arity == 1
    shift = np.zeros((2, 2, 1), dtype=np.int64)
    shift[0, 1, 0] = 1  # 1 -> x is not equivariant for x -> -x
    raw = InvariantCochain.from_cochains(1, [TwistedCochain(1, 0, shift)])
    with pytest.raises(NotInvariant):
        psi_map(A, AG, raw)


def test_crossed_product_relations():
    A = truncated_polynomial_algebra(2, 2, 1)
    B = crossed_product(A)
    assert B.d == 4
    # basis g*d + i: g*x = -x*g
    gx = B.multiply(np.eye(4, dtype=np.int64)[2][:, None], np.eye(4, dtype=np.int64)[1][:, None])
    xg = B.multiply(np.eye(4, dtype=np.int64)[1][:, None], np.eye(4, dtype=np.int64)[2][:, None])
    assert np.array_equal(gx, -xg)


# classical values for k[x]/(x^n) in characteristic 0: HH^0 = n, HH^i = n - 1
@pytest.mark.parametrize("n, dims", [(2, [2, 1, 1]), (3, [3, 2, 2])])
def test_hochschild_truncated(n, dims):
    assert hochschild_cohomology_dims(truncated_polynomial_algebra(n), (0, 1, 2)) == dims


def test_semisimple_group_algebra():
    assert hochschild_cohomology_dims(group_algebra_z2(), (0, 1, 2)) == [2, 0, 0]


# frozen from an independent sympy rank computation of the crossed product complex
@pytest.mark.parametrize("n, dims", [(2, [1, 1, 1]), (3, [3, 1, 1])])
def test_psi_comparison_z2(n, dims):
    A = truncated_polynomial_algebra(n, 2, 1)
    res = psi_comparison(A)
    assert res["crossed_product"] == dims
    assert res["invariant"] == dims and res["agree"]


def test_invariant_dims_trivial_group():
    A = truncated_polynomial_algebra(2)
    assert invariant_cohomology_dims(A, (0, 1)) == [2, 1]


def test_add_merges_sectors():
    A = truncated_polynomial_algebra(2, 2, 1)
    a = A.random_cochain(np.random.default_rng(0), 1, 0)
    merged = add(a, -a)
    assert all(not v.any() for v in merged.values())


def test_group_action_on_negative_arity():
    A = truncated_polynomial_algebra(3, 3, 1)
    empty = brace(A, A.zero(0), [A.zero(0, 1)])
    moved = cochain_group_action(A, 2, empty)
    assert moved.arity == -1 and moved.is_zero()
