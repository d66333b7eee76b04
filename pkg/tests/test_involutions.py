"""Involutions: construction laws, painted signs, fixed algebras."""

import itertools

import pytest

from bdcoideal.chevalley import basis_for
from bdcoideal.involutions import (InvolutionError, build_chevalley_involution,
                                   build_sigma, build_theta, chi_parity_formula,
                                   chi_tilde, compact_form_check, isotropy_algebra,
                                   omega_spec, theta_eigenspace_dim, varsigma_spec)
from bdcoideal.rootsys import build_root_system, negate
from bdcoideal.scalars import GaussRational, MINUS_ONE, ONE
from bdcoideal.tensors import SparseVec

RANK_LE_3 = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3),
             ("D", 3), ("G", 2)]
RANK_4 = [("A", 4), ("B", 4), ("C", 4), ("D", 4), ("F", 4)]


def all_specs(rs):
    out = []
    for mu in rs.diagram_automorphisms():
        out.append(varsigma_spec(mu))
        fixed = [i for i in range(rs.rank) if mu[i] == i]
        for size in range(len(fixed) + 1):
            for painted in itertools.combinations(fixed, size):
                out.append(omega_spec(mu, painted))
    return out


@pytest.mark.parametrize("family,rank", RANK_LE_3 + RANK_4)
def test_involution_laws_every_spec(family, rank):
    rs = build_root_system(family, rank)
    for spec in all_specs(rs):
        basis = basis_for(family, rank, spec.mu)
        sigma = build_sigma(basis, spec)
        theta = build_theta(basis, spec)
        assert sigma.conjugates_scalars and not theta.conjugates_scalars
        assert sigma.is_involution()
        assert theta.is_involution()
        assert sigma.respects_bracket()
        assert theta.respects_bracket()


@pytest.mark.parametrize("family,rank", RANK_LE_3)
def test_full_morphism_check_small_rank(family, rank):
    rs = build_root_system(family, rank)
    for spec in all_specs(rs):
        basis = basis_for(family, rank, spec.mu)
        assert build_sigma(basis, spec).respects_bracket_full()
        assert build_theta(basis, spec).respects_bracket_full()


def test_varsigma_identity_shape():
    basis = basis_for("A", 2)
    sigma = build_sigma(basis, varsigma_spec((0, 1)))
    for gamma in basis.rs.all_roots():
        assert sigma.apply(basis.e_vec(gamma)) == basis.e_vec(gamma)
    v = basis.e_vec((1, 0), GaussRational(0, 1))
    assert sigma.apply(v) == basis.e_vec((1, 0), GaussRational(0, -1))


def test_compact_conjugation_scalars():
    """All-painted map: sign -1 with the forced inverse-length modulus."""
    basis = basis_for("A", 2)
    omega = build_chevalley_involution(basis)
    for gamma in basis.rs.positive_roots:
        q = basis.q(gamma)
        assert omega.root_scalar[gamma] == GaussRational(-1 / q)
        assert omega.root_scalar[negate(gamma)] == GaussRational(-q)


def test_theta_unit_scalars_for_grading_reversing_shapes():
    for family, rank, mu, painted in [("A", 2, (0, 1), (1,)), ("A", 3, (2, 1, 0), (1,)),
                                      ("B", 2, (0, 1), (0,))]:
        basis = basis_for(family, rank, mu)
        theta = build_theta(basis, omega_spec(mu, painted))
        for gamma in basis.rs.all_roots():
            assert theta.root_scalar[gamma].is_unit_like()


def test_chi_examples():
    basis = basis_for("A", 2)
    spec = omega_spec((0, 1), (0,))
    # painted simple root
    assert chi_tilde(basis, spec, (1, 0)) == 1
    # composite: one painted coefficient, height two
    assert chi_tilde(basis, spec, (1, 1)) == 0
    assert chi_tilde(basis, spec, (0, 1)) == 0


def test_chi_matches_parity_formula_for_identity_mu():
    for family, rank in RANK_LE_3:
        rs = build_root_system(family, rank)
        basis = basis_for(family, rank)
        mu = tuple(range(rank))
        for size in range(rank + 1):
            for painted in itertools.combinations(range(rank), size):
                spec = omega_spec(mu, painted)
                for root in rs.all_roots():
                    assert chi_tilde(basis, spec, root) == \
                        chi_parity_formula(rs, painted, root)


def test_chi_on_a3_subsystem_fixed_root():
    """Middle-painted reversal: the full chain root carries a sign."""
    mu = (2, 1, 0)
    basis = basis_for("A", 3, mu)
    spec = omega_spec(mu, (1,))
    assert chi_tilde(basis, spec, (1, 1, 1)) == 1


def test_chi_on_even_chain_reversal_top_root():
    """For the length-two chain reversal the top root sign is forced +.

    The scalar there is a positive modulus whatever gauge is used, so
    the parity formula (which would give 1) does not apply off the
    identity automorphism.
    """
    mu = (1, 0)
    basis = basis_for("A", 2, mu)
    spec = omega_spec(mu, ())
    assert chi_tilde(basis, spec, (1, 1)) == 0
    assert chi_parity_formula(basis.rs, (), (1, 1)) == 1  # the naive value


@pytest.mark.parametrize("family,rank", RANK_LE_3)
def test_chi_symmetry_laws(family, rank):
    rs = build_root_system(family, rank)
    for spec in all_specs(rs):
        if spec.kind != "omega":
            continue
        basis = basis_for(family, rank, spec.mu)
        for root in rs.positive_roots:
            c = chi_tilde(basis, spec, root)
            assert chi_tilde(basis, spec, negate(root)) == c
            assert chi_tilde(basis, spec,
                             rs.apply_automorphism(spec.mu, root)) == c


@pytest.mark.parametrize("family,rank", RANK_LE_3 + RANK_4)
def test_scaled_opposite_sign_rule(family, rank):
    """Sign form of the morphism law on positive pairs.

    With the length moduli divided out, the painted signs obey the
    parity-corrected conjugation rule on every positive bracket pair.
    """
    rs = build_root_system(family, rank)
    for spec in all_specs(rs):
        if spec.kind != "omega":
            continue
        basis = basis_for(family, rank, spec.mu)
        mu = spec.mu
        for x, y in rs.bracket_pairs():
            if not (rs.is_positive(x) and rs.is_positive(y)):
                continue
            z = tuple(a + b for a, b in zip(x, y))
            cx = chi_tilde(basis, spec, x)
            cy = chi_tilde(basis, spec, y)
            cz = chi_tilde(basis, spec, z)
            mx = rs.apply_automorphism(mu, x)
            my = rs.apply_automorphism(mu, y)
            lhs = GaussRational((-1) ** (cx + cy)) * \
                basis.structure_constant(negate(mx), negate(my))
            q_factor = basis.q(x) * basis.q(y) / basis.q(z)
            rhs = GaussRational((-1) ** cz) * \
                basis.structure_constant(x, y).conjugate() * GaussRational(q_factor)
            assert lhs == rhs


def test_theta_commutes_with_sigma_everywhere():
    for family, rank in RANK_LE_3:
        rs = build_root_system(family, rank)
        for spec in all_specs(rs):
            basis = basis_for(family, rank, spec.mu)
            sigma = build_sigma(basis, spec)
            theta = build_theta(basis, spec)
            for i in range(basis.dim):
                v = SparseVec.basis(i)
                assert sigma.apply(theta.apply(v)) == theta.apply(sigma.apply(v))


def test_isotropy_dimensions():
    basis = basis_for("A", 2)
    assert isotropy_algebra(basis, varsigma_spec((0, 1))).dim == 3
    assert isotropy_algebra(basis, omega_spec((0, 1), (1,))).dim == 4
    flip = basis_for("A", 2, (1, 0))
    assert isotropy_algebra(flip, omega_spec((1, 0), ())).dim == 3
    assert isotropy_algebra(flip, varsigma_spec((1, 0))).dim == 4


@pytest.mark.parametrize("family,rank", RANK_LE_3 + RANK_4)
def test_isotropy_spans_fixed_space_and_closes(family, rank):
    rs = build_root_system(family, rank)
    dim_g = 2 * len(rs.positive_roots) + rank
    for spec in all_specs(rs):
        basis = basis_for(family, rank, spec.mu)
        sub = isotropy_algebra(basis, spec, check_closure=True)
        theta = build_theta(basis, spec)
        for g in sub.generators:
            assert theta.apply(g) == g
        assert sub.dim == theta_eigenspace_dim(basis, spec, +1)
        assert sub.dim + theta_eigenspace_dim(basis, spec, -1) == dim_g
        assert sub.verify_closed()


def test_compact_form_fixed_set():
    for family, rank in [("A", 2), ("B", 2), ("G", 2), ("A", 3)]:
        assert compact_form_check(basis_for(family, rank))


def test_chi_requires_omega_shape():
    basis = basis_for("A", 2)
    with pytest.raises(ValueError):
        chi_tilde(basis, varsigma_spec((0, 1)), (1, 0))


def test_sigma_requires_adapted_basis():
    basis = basis_for("A", 3)  # identity adaptation
    with pytest.raises(InvolutionError):
        build_sigma(basis, varsigma_spec((2, 1, 0)))


def test_spec_validation():
    with pytest.raises(ValueError):
        omega_spec((1, 0), (0,))  # painted root not fixed by mu
    with pytest.raises(ValueError):
        varsigma_spec((1, 2, 0))  # order three


def test_cartan_involution_coincides_with_compact_map_for_plain_split():
    basis = basis_for("A", 3)
    theta = build_theta(basis, varsigma_spec((0, 1, 2)))
    omega = build_chevalley_involution(basis)
    for root in basis.rs.all_roots():
        assert theta.root_image[root] == omega.root_image[root]
        assert theta.root_scalar[root] == omega.root_scalar[root]
    assert theta.cartan_sign == omega.cartan_sign == -1


def test_reversing_shape_with_sign_one_fixes_root_vector():
    basis = basis_for("A", 2)
    spec = omega_spec((0, 1), (0,))
    theta = build_theta(basis, spec)
    for gamma in basis.rs.positive_roots:
        expected = GaussRational(-((-1) ** chi_tilde(basis, spec, gamma)))
        assert theta.root_scalar[gamma] == expected
        if chi_tilde(basis, spec, gamma) == 1:
            assert theta.apply(basis.e_vec(gamma)) == basis.e_vec(gamma)
