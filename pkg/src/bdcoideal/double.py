"""Doubled-algebra models and Lagrangian-subspace oracles.

For a factorizable structure the double is modeled as two copies of
the algebra with the difference form F((x, x'), (y, y')) = B(x, y) -
B(x', y'); in the imaginary-factorizable case the double is the
realification with the form 2 Re B.  Both carry the t-independent
normalization: every check here (isotropy, half dimension, closure)
is invariant under nonzero real rescaling of the form.

The annihilator oracle realizes the dual-space condition: the
functionals vanishing on the isotropy algebra must close under the
dual bracket read off the cobracket.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

from .chevalley import NormalizedBasis
from .involutions import (OMEGA, ConjLinearMap, SigmaSpec, Subalgebra,
                          build_sigma, build_theta)
from .linalg import GaussianEchelon, solve_linear_system
from .scalars import GaussRational, ONE, ZERO
from .tensors import SparseTensor2, SparseVec


@dataclass
class DoubleElement:
    """Element of the doubled algebra (two components)."""

    left: SparseVec
    right: SparseVec

    def bracket(self, basis: NormalizedBasis, other: "DoubleElement") -> "DoubleElement":
        return DoubleElement(basis.bracket(self.left, other.left),
                             basis.bracket(self.right, other.right))


def double_form(basis: NormalizedBasis, x: DoubleElement, y: DoubleElement,
                scale: GaussRational = ONE) -> GaussRational:
    """Difference of Killing pairings on the two components."""
    if scale.is_zero():
        raise ValueError("degenerate ambient form")
    return scale * (basis.killing_pair(x.left, y.left)
                    - basis.killing_pair(x.right, y.right))


def _double_echelon(basis: NormalizedBasis, elems: List[DoubleElement]) -> GaussianEchelon:
    ech = GaussianEchelon()
    n = basis.dim
    for el in elems:
        row: Dict[int, GaussRational] = dict(el.left.entries)
        for k, v in el.right.entries.items():
            row[n + k] = v
        ech.add(row)
    return ech


def is_lagrangian(basis: NormalizedBasis, elems: List[DoubleElement],
                  form_scale: GaussRational = ONE) -> bool:
    """Isotropic under the difference form and of half the dimension."""
    for i, x in enumerate(elems):
        for y in elems[i:]:
            if not double_form(basis, x, y, form_scale).is_zero():
                return False
    return _double_echelon(basis, elems).dim == basis.dim


def graph_subalgebra(basis: NormalizedBasis,
                     rho: Callable[[SparseVec], SparseVec]) -> List[DoubleElement]:
    """Span of the graph of a form-preserving automorphism.

    The map is verified to preserve the Killing form and the bracket on
    basis pairs; the spanned graph is verified bracket closed inside
    the double.
    """
    images = [rho(SparseVec.basis(i)) for i in range(basis.dim)]
    for i in range(basis.dim):
        for j in range(basis.dim):
            want = basis.killing_basis(i, j)
            got = basis.killing_pair(images[i], images[j])
            if not want == got:
                raise ValueError("map does not preserve the Killing form")
            lhs = rho(basis.bracket_basis(i, j))
            rhs = basis.bracket(images[i], images[j])
            if not lhs == rhs:
                raise ValueError("map is not a Lie algebra automorphism")
    elems = [DoubleElement(SparseVec.basis(i), images[i]) for i in range(basis.dim)]
    ech = _double_echelon(basis, elems)
    n = basis.dim
    for i, x in enumerate(elems):
        for y in elems[i:]:
            z = x.bracket(basis, y)
            row: Dict[int, GaussRational] = dict(z.left.entries)
            for k, v in z.right.entries.items():
                row[n + k] = v
            if not ech.contains(row):
                raise AssertionError("graph of an automorphism must be closed")
    return elems


@dataclass
class RealifiedFixedSpace:
    """Real fixed space of the composed involution on the realification."""

    real_dim: int
    vectors: List[SparseVec]
    isotropic: bool
    k0_dim: int
    ip0_dim: int


def _real_coords(basis: NormalizedBasis, v: SparseVec) -> List[Fraction]:
    out = [Fraction(0)] * (2 * basis.dim)
    for k, c in v.entries.items():
        out[k] = c.re
        out[basis.dim + k] = c.im
    return out


def _vec_from_real(basis: NormalizedBasis, coords: List[Fraction]) -> SparseVec:
    v = SparseVec()
    n = basis.dim
    for k in range(n):
        c = GaussRational(coords[k], coords[n + k])
        if not c.is_zero():
            v.add_term(k, c)
    return v


def _fixed_space_real(basis: NormalizedBasis,
                      maps: List[ConjLinearMap]) -> List[SparseVec]:
    """Real basis of the joint fixed space of real-linear involutions."""
    n = basis.dim
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    real_basis_vectors = []
    for k in range(n):
        real_basis_vectors.append(SparseVec.basis(k))
    for k in range(n):
        real_basis_vectors.append(SparseVec.basis(k, GaussRational(0, 1)))
    for m in maps:
        cols = [_real_coords(basis, m.apply(v)) for v in real_basis_vectors]
        for r in range(2 * n):
            row = [cols[c][r] - (1 if c == r else 0) for c in range(2 * n)]
            rows.append(row)
            rhs.append(Fraction(0))
    sol = solve_linear_system(rows, rhs)
    assert not sol.is_empty
    return [_vec_from_real(basis, b) for b in sol.basis]


def realified_fixed_space(basis: NormalizedBasis, spec: SigmaSpec) -> RealifiedFixedSpace:
    """Fixed space of sigma composed with the Cartan involution.

    Only meaningful for the grading-reversing (imaginary-factorizable)
    shapes, whose invariant form is an imaginary multiple of the
    Killing form: twice the real part of the form is the imaginary
    part of the Killing pairing, up to real scale.  Checks isotropy in
    that form and reports the split into the compact isotropy part and
    the rotated odd part.
    """
    if spec.kind != OMEGA:
        raise ValueError("realified double model applies to the omega shapes")
    sigma = build_sigma(basis, spec)
    theta = build_theta(basis, spec)
    phi = theta.compose(sigma)
    m_basis = _fixed_space_real(basis, [phi])
    isotropic = True
    for i, u in enumerate(m_basis):
        for v in m_basis[i:]:
            if basis.killing_pair(u, v).im:
                isotropic = False
                break
        if not isotropic:
            break
    joint = _fixed_space_real(basis, [phi, sigma])
    return RealifiedFixedSpace(
        real_dim=len(m_basis),
        vectors=m_basis,
        isotropic=isotropic,
        k0_dim=len(joint),
        ip0_dim=len(m_basis) - len(joint),
    )


def annihilator_dual_bracket_check(basis: NormalizedBasis, r0: SparseTensor2,
                                   isotropy: Subalgebra) -> bool:
    """Dual-space oracle: the annihilator must close under the dual bracket.

    The dual bracket of two functionals evaluated at x is their pairing
    against the cobracket value at x.
    """
    n = basis.dim
    gen_rows = [g.entries for g in isotropy.generators]

    # annihilator of the isotropy span inside the dual, by real splitting
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for g in gen_rows:
        row_re = [Fraction(0)] * (2 * n)
        row_im = [Fraction(0)] * (2 * n)
        for k, c in g.items():
            # (a+bi)(x+yi) = (ax - by) + (ay + bx)i
            row_re[k] += c.re; row_re[n + k] -= c.im
            row_im[k] += c.im; row_im[n + k] += c.re
        rows.append(row_re); rhs.append(Fraction(0))
        rows.append(row_im); rhs.append(Fraction(0))
    sol = solve_linear_system(rows, rhs)
    ann = []
    for b in sol.basis:
        xi = {k: GaussRational(b[k], b[n + k]) for k in range(n)
              if b[k] or b[n + k]}
        ann.append(xi)

    deltas = [basis.ad_tensor(SparseVec.basis(k), r0) for k in range(n)]

    def dual_bracket(xi: Dict[int, GaussRational],
                     eta: Dict[int, GaussRational]) -> Dict[int, GaussRational]:
        out: Dict[int, GaussRational] = {}
        for k, delta in enumerate(deltas):
            total = ZERO
            for (i, j), c in delta.entries.items():
                a = xi.get(i)
                if a is None:
                    continue
                bb = eta.get(j)
                if bb is None:
                    continue
                total = total + c * a * bb
            if not total.is_zero():
                out[k] = total
        return out

    for i, xi in enumerate(ann):
        for eta in ann:
            zeta = dual_bracket(xi, eta)
            # membership in the annihilator = vanishing on the generators
            for g in gen_rows:
                val = ZERO
                for k, c in g.items():
                    z = zeta.get(k)
                    if z is not None:
                        val = val + c * z
                if not val.is_zero():
                    return False
    return True
