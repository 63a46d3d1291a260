from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from olg.core import GroupElement, parse_polynomial
from olg.errors import Degenerate, InvalidArgument, NotASymmetry, NotClassifiable, NotSquare
from olg.invertible import (ExponentMatrix, character_chi, decompose_atomic, fixed_locus, is_symmetry,
                            parse_group_spec, smith_normal_form, subgroup_generate, symmetry_group,
                            transpose_mirror, validate_invertible, weights)


def E(rows):
    return ExponentMatrix(tuple(map(tuple, rows)))


def test_classify_atoms():
    dec = decompose_atomic(validate_invertible(parse_polynomial("x1^2*x2 + x2^2*x1 + x3^4")))
    assert [str(a) for a in dec] == ["Loop(2,2)", "Fermat(4)"]
    dec = decompose_atomic(E([[3, 1, 0], [0, 2, 1], [0, 0, 4]]))
    assert [(a.kind, a.exponents, a.block) for a in dec] == [("chain", (3, 2, 4), (1, 2, 3))]


def test_chain_orientation_follows_arrows():
    # x2 is the head: x2^2*x1 + x1^3
    dec = decompose_atomic(validate_invertible(parse_polynomial("x2^2*x1 + x1^3")))
    assert dec.atoms[0].block == (2, 1)


@pytest.mark.parametrize("text, err", [
    ("x1^2 + x1*x2", NotClassifiable),
    ("x1^3 + x2^3 + x1*x2^2", NotSquare),
    ("2*x1^3", NotClassifiable),
    ("x1^2*x2^2 + x2^3", NotClassifiable),
    ("x1^3", None),
])
def test_validation(text, err):
    W = parse_polynomial(text)
    if err is None:
        validate_invertible(W)
    else:
        with pytest.raises(err):
            validate_invertible(W)


def test_degenerate():
    with pytest.raises(NotClassifiable):
        validate_invertible(parse_polynomial("x1^2*x2 + x2"))
    with pytest.raises(Degenerate):
        weights(E([[2, 2], [1, 1]]))


def test_weights():
    assert weights(E([[3]])) == (Fraction(1, 3),)
    assert weights(E([[2, 1], [1, 2]])) == (Fraction(1, 3), Fraction(1, 3))
    assert weights(E([[2, 1], [0, 2]])) == (Fraction(1, 4), Fraction(1, 2))


def test_mirror():
    T, WT = transpose_mirror(E([[2, 1], [0, 2]]))
    assert T.tolist() == [[2, 0], [1, 2]]
    assert WT == parse_polynomial("x1^2 + x1*x2^2")


# orders and invariant factors frozen from an independent Smith form computation (sympy)
@pytest.mark.parametrize("rows, order, factors", [
    ([[3]], 3, (3,)),
    ([[2, 1], [1, 2]], 3, (3,)),
    ([[2, 1], [0, 2]], 4, (4,)),
    ([[2, 1, 0], [0, 2, 1], [1, 0, 2]], 9, (9,)),
    ([[2, 1, 0], [0, 2, 1], [0, 0, 2]], 8, (8,)),
    ([[3, 0], [0, 3]], 9, (3, 3)),
    ([[3, 1], [0, 4]], 12, (12,)),
])
def test_symmetry_group(rows, order, factors):
    G = symmetry_group(E(rows))
    assert G.order == order
    assert tuple(G.orders) == factors
    assert all(is_symmetry(G.E, g) for g in G)
    assert G.identity.is_identity()


def test_smith_normal_form_shape():
    U, D, V = smith_normal_form([[2, 1], [1, 2]])
    assert [abs(D[0][0]), abs(D[1][1])] == [1, 3]


def test_group_specs():
    Ex = validate_invertible(parse_polynomial("x1^4"))
    assert parse_group_spec("full", Ex).order == 4
    assert parse_group_spec("gens:1/2", Ex).order == 2
    assert parse_group_spec("gens:", Ex).order == 1
    assert parse_group_spec("SL", Ex).order == 1
    with pytest.raises(NotASymmetry):
        parse_group_spec("gens:1/3", Ex)
    with pytest.raises(InvalidArgument):
        parse_group_spec("bogus", Ex)


def test_sl_subgroup():
    G = symmetry_group(validate_invertible(parse_polynomial("x1^3 + x2^3")))
    assert G.sl_subgroup().order == 3


def test_chi_is_det():
    g = GroupElement.parse("1/3,1/3")
    assert character_chi(g) == character_chi(GroupElement.parse("2/3,0"))


def test_fixed_locus_chain_lengths():
    W = parse_polynomial("x1^2*x2 + x2^2*x3 + x3^2")
    G = symmetry_group(validate_invertible(W))
    lengths = sorted({fixed_locus(W, g).l_g for g in G})
    assert lengths == [0, 1, 2, 3]
    fl = fixed_locus(W, GroupElement.parse("1/2,0,0"))
    assert fl.W_g == parse_polynomial("x2^2*x3 + x3^2", N=3) and fl.N_g == 2


@given(st.lists(st.sampled_from([2, 3, 4]), min_size=1, max_size=3), st.sampled_from(["loop", "chain"]))
def test_group_order_is_det(ns, kind):
    N = len(ns)
    rows = []
    for i in range(N):
        r = [0] * N
        r[i] = ns[i]
        if kind == "loop" and N > 1:
            r[(i + 1) % N] += 1
        elif kind == "chain" and i + 1 < N:
            r[i + 1] += 1
        rows.append(r)
    M = E(rows)
    G = symmetry_group(M)
    assert G.order == abs(M.det())
    # closure: products of elements stay in the group
    for g in G.elements[:5]:
        for h in G.elements[:5]:
            assert g * h in G
    assert subgroup_generate(G, [G.elements[-1]]).order == G.elements[-1].order
