"""Exact Lie-theoretic machinery deciding when a non-compact symmetric
space carries a group-type Poisson homogeneous structure.

Everything is computed over the Gaussian rationals; there is no
floating point and no tolerance anywhere.
"""

__version__ = "0.1.0"

from .scalars import GaussRational, gauss
from .linalg import AffineSolutionSpace, GaussianEchelon, solve_linear_system
from .tensors import SparseTensor2, SparseTensor3, SparseVec, conjugate_tensor, tensor2, wedge
from .rootsys import DynkinType, RootSystem, build_root_system, height
from .chevalley import NormalizedBasis, basis_for, chevalley_constants, normalize
from .involutions import (ConjLinearMap, SigmaSpec, Subalgebra, build_sigma,
                          build_theta, build_chevalley_involution, chi_tilde,
                          compact_form_check, isotropy_algebra, omega_spec,
                          varsigma_spec)
from .bialgebra import (BDTriple, RMatrix, TExtension, build_r, build_r0,
                        casimir, cobracket, continuous_parameter_space,
                        cybe_residual, enumerate_bd_triples, validate_bd_triple)
from .coideal import (Case, CoidealVerdict, RTilde, classify, closed_form_r_tilde,
                      coideal_check, coideal_check_direct, compute_r_tilde,
                      case_r0, make_case, painted_root_criterion, solve_lambda)
from .double import (DoubleElement, annihilator_dual_bracket_check, double_form,
                     graph_subalgebra, is_lagrangian, realified_fixed_space)

__all__ = [name for name in dir() if not name.startswith("_")]
