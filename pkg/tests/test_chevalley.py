"""Structure constants: Jacobi, sign laws, product identity, golden data."""

import itertools
import random
from fractions import Fraction

import pytest

from bdcoideal.chevalley import (basis_for, chevalley_constants, mu_sign_character,
                                 normalize, plain_constant)
from bdcoideal.rootsys import add, build_root_system, negate, sub
from bdcoideal.scalars import GaussRational, ONE
from bdcoideal.tensors import SparseVec

RANK_LE_4 = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4),
             ("C", 3), ("C", 4), ("D", 4), ("G", 2), ("F", 4)]


def jacobi_defect(basis, i, j, k):
    x, y, z = SparseVec.basis(i), SparseVec.basis(j), SparseVec.basis(k)
    return (basis.bracket(x, basis.bracket(y, z))
            + basis.bracket(y, basis.bracket(z, x))
            + basis.bracket(z, basis.bracket(x, y)))


@pytest.mark.parametrize("family,rank", RANK_LE_4)
def test_jacobi_exhaustive_rank_le_4(family, rank):
    basis = basis_for(family, rank)
    for i, j, k in itertools.combinations(range(basis.dim), 3):
        assert jacobi_defect(basis, i, j, k).is_zero()


def test_jacobi_random_higher_rank():
    rng = random.Random(11)
    for family, rank in [("A", 5), ("B", 5), ("D", 5), ("E", 6)]:
        basis = basis_for(family, rank)
        for _ in range(150):
            i, j, k = (rng.randrange(basis.dim) for _ in range(3))
            assert jacobi_defect(basis, i, j, k).is_zero()


def test_a2_integer_constants():
    rs = build_root_system("A", 2)
    table = chevalley_constants(rs)
    a1, a2 = (1, 0), (0, 1)
    m12 = plain_constant(rs, a1, a2)
    assert abs(m12) == 1
    assert plain_constant(rs, a2, a1) == -m12
    assert set(table.values()) <= {1, -1, 2, -2, 3, -3}


def test_g2_max_constant_is_three():
    rs = build_root_system("G", 2)
    assert max(abs(v) for v in chevalley_constants(rs).values()) == 3


@pytest.mark.parametrize("family,rank", RANK_LE_4)
def test_antisymmetry_and_opposite_rule(family, rank):
    rs = build_root_system(family, rank)
    basis = basis_for(family, rank)
    for x, y in rs.bracket_pairs():
        n = basis.structure_constant(x, y)
        assert basis.structure_constant(y, x) == -n
    # opposite positive pairs: negative ratio (sign law behind the parity rule)
    for x, y in rs.bracket_pairs():
        if rs.is_positive(x) and rs.is_positive(y):
            ratio = basis.structure_constant(negate(x), negate(y)) / \
                basis.structure_constant(x, y)
            assert ratio.is_real() and ratio.re < 0


@pytest.mark.parametrize("family,rank", RANK_LE_4)
def test_cyclic_identity(family, rank):
    rs = build_root_system(family, rank)
    basis = basis_for(family, rank)
    for x, y in rs.bracket_pairs():
        z = negate(add(x, y))
        n1 = basis.structure_constant(x, y)
        assert basis.structure_constant(y, z) == n1
        assert basis.structure_constant(z, x) == n1


PRODUCT_SCOPE = ([("A", n) for n in range(1, 7)] + [("B", n) for n in range(2, 7)]
                 + [("C", n) for n in range(2, 7)] + [("D", n) for n in range(3, 7)]
                 + [("G", 2), ("F", 4), ("E", 6)])


@pytest.mark.parametrize("family,rank", PRODUCT_SCOPE)
def test_product_identity_every_qualifying_pair(family, rank):
    """Opposite-pair product equals the Killing pairing of the roots.

    Qualifying pairs: the sum is a root and the difference is not.
    The value B(x, y) is forced by the unit pairing normalization;
    checked exhaustively.
    """
    rs = build_root_system(family, rank)
    basis = basis_for(family, rank)
    checked = 0
    for x, y in rs.bracket_pairs():
        if rs.is_root(sub(x, y)):
            continue
        lhs = basis.structure_constant(x, y) * \
            basis.structure_constant(negate(x), negate(y))
        assert lhs == GaussRational(rs.killing_form(x, y))
        checked += 1
    assert checked > 0 or not rs.bracket_pairs()


def test_bracket_relations():
    basis = basis_for("A", 2)
    rs = basis.rs
    a1 = (1, 0)
    # [h, e] is the Killing pairing action
    h = SparseVec.basis(0)
    e = basis.e_vec(a1)
    assert basis.bracket(h, e) == basis.e_vec(a1, GaussRational(rs.killing_form(a1, a1)))
    # [e, e_opposite] is the dual Cartan element
    assert basis.bracket(basis.e_vec(a1), basis.e_vec(negate(a1))) == basis.h_vec(a1)
    theta = (1, 1)
    got = basis.bracket(basis.e_vec(theta), basis.e_vec(negate(theta)))
    assert got == basis.h_vec(theta)
    # vanishing when the sum is neither zero nor a root
    assert basis.bracket(basis.e_vec(theta), basis.e_vec(a1)).is_zero()


def test_normalized_pairing_is_one():
    for family, rank in [("A", 2), ("B", 2), ("G", 2)]:
        basis = basis_for(family, rank)
        for gamma in basis.rs.positive_roots:
            pair = basis.killing_pair(basis.e_vec(gamma), basis.e_vec(negate(gamma)))
            assert pair == ONE


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 2), ("B", 2)])
def test_killing_form_is_trace_form_of_the_bracket(family, rank):
    """Trace of composed adjoint maps reproduces every basis pairing."""
    basis = basis_for(family, rank)
    dim = basis.dim

    def ad(i):
        cols = []
        for j in range(dim):
            cols.append(basis.bracket_basis(i, j))
        return cols

    mats = [ad(i) for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            tr = GaussRational(0)
            for a in range(dim):
                for b in range(dim):
                    va = mats[i][b].get(a)
                    if va.is_zero():
                        continue
                    vb = mats[j][a].get(b)
                    if not vb.is_zero():
                        tr = tr + va * vb
            assert tr == basis.killing_basis(i, j)


def test_dimension_formula():
    for family, rank in RANK_LE_4:
        basis = basis_for(family, rank)
        assert basis.dim == 2 * len(basis.rs.positive_roots) + rank


@pytest.mark.parametrize("family,rank,mu", [
    ("A", 2, (1, 0)), ("A", 3, (2, 1, 0)), ("A", 4, (3, 2, 1, 0)),
    ("D", 4, (0, 1, 3, 2)), ("E", 6, (5, 1, 4, 3, 2, 0)),
])
def test_adapted_basis_is_equivariant(family, rank, mu):
    basis = basis_for(family, rank, mu)
    rs = basis.rs
    for x, y in rs.bracket_pairs():
        lhs = basis.structure_constant(rs.apply_automorphism(mu, x),
                                       rs.apply_automorphism(mu, y))
        assert lhs == basis.structure_constant(x, y).conjugate()


def test_adaptation_units_are_fourth_roots():
    basis = basis_for("A", 2, (1, 0))
    units = {str(basis.unit(r)) for r in basis.rs.all_roots()}
    assert units <= {"1", "-1", "1i", "-1i"}
    # even-length chain reversal needs a genuinely complex unit
    assert {"1i", "-1i"} & units


def test_mu_character_squares_to_identity():
    rs = build_root_system("A", 3)
    signs = mu_sign_character(rs, (2, 1, 0))
    assert all(v in (1, -1) for v in signs.values())
    assert signs[(1, 1, 1)] == 1  # fixed top root carries no defect here


def test_golden_constants_a2_g2():
    a2 = basis_for("A", 2).constants_json_doc()
    assert a2["pairs"] == [
        {"alpha": [0, 1], "beta": [1, 0], "integer": 1, "normalized": "1"},
    ]
    g2 = basis_for("G", 2).constants_json_doc()
    table = {(tuple(p["alpha"]), tuple(p["beta"])): p["integer"] for p in g2["pairs"]}
    assert table == {
        ((0, 1), (1, 0)): 1,
        ((1, 0), (1, 1)): 2,
        ((1, 0), (2, 1)): 3,
        ((0, 1), (3, 1)): 1,
        ((1, 1), (2, 1)): 3,
    }


def test_basis_cache_and_mu_validation():
    b1 = basis_for("A", 2)
    b2 = normalize(build_root_system("A", 2))
    assert b1 is b2
    with pytest.raises(ValueError):
        basis_for("A", 3, (1, 0, 2))  # not a diagram automorphism


def test_e8_scale_smoke():
    basis = basis_for("E", 8)
    assert basis.dim == 248
    rng = random.Random(5)
    for _ in range(100):
        i, j, k = (rng.randrange(basis.dim) for _ in range(3))
        assert jacobi_defect(basis, i, j, k).is_zero()


def test_ad_tensor_weight_cancellation():
    from bdcoideal.tensors import SparseTensor2, wedge
    basis = basis_for("A", 2)
    alpha = (1, 0)
    t = wedge(basis.e_vec(negate(alpha)), basis.e_vec(alpha))
    for i in range(basis.rank):
        assert basis.ad_tensor(SparseVec.basis(i), t).is_zero()
    assert basis.ad_tensor(basis.e_vec(alpha), SparseTensor2()).is_zero()
