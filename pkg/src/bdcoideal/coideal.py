"""The coideal criterion and the classification driver.

For a case (root system, involution shape, triple, continuous
parameter, scale) the skew r-matrix is projected to the (-1)-eigenspace
of the Cartan involution on both slots; the isotropy algebra acts on
the projection, and the case is of group type exactly when that action
vanishes.  Three independent routes to the projected tensor and the
verdict are provided: the generic projection, term-by-term closed
formulas, and a quotient-space test on the cobracket itself.

Because the projected tensor is affine in the continuous parameter and
the action is linear, the set of parameters passing the criterion is
an exact affine subspace, computed by instantiating the parameter at
the admissible space's particular point and basis directions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .bialgebra import (BDTriple, InadmissibleCaseError, TExtension, build_r0,
                        check_lambda_constraints, check_t_admissible,
                        check_triple_admissible, continuous_parameter_space,
                        enumerate_bd_triples, lambda_from_coords,
                        wedge_coefficient)
from .chevalley import NormalizedBasis, basis_for
from .involutions import (OMEGA, VARSIGMA, ConjLinearMap, SigmaSpec, Subalgebra,
                          build_theta, isotropy_algebra, omega_spec,
                          varsigma_spec)
from .linalg import AffineSolutionSpace, solve_linear_system
from .rootsys import RootSystem, build_root_system, negate
from .scalars import GaussRational, ZERO
from .tensors import SparseTensor2, SparseVec

T_DEFAULT_REAL = GaussRational(2)
T_DEFAULT_IMAG = GaussRational(0, 2)


@dataclass
class RTilde:
    """Projection of the skew r-matrix to both (-1)-eigenslots."""

    tensor: SparseTensor2
    provenance: str  # "generic" or "closed_form"


@dataclass
class CoidealVerdict:
    is_coideal: bool
    witness_generator: Optional[SparseVec] = None
    witness_tensor: Optional[SparseTensor2] = None


@dataclass
class Case:
    """A fully instantiated classification case."""

    basis: NormalizedBasis
    spec: SigmaSpec
    triple: BDTriple
    lam: List[List[GaussRational]]
    t: GaussRational

    @property
    def rs(self) -> RootSystem:
        return self.basis.rs

    def validate(self) -> None:
        check_t_admissible(self.spec, self.t)
        check_triple_admissible(self.spec, self.triple)
        check_lambda_constraints(self.basis, self.triple, self.lam, self.spec)


def default_t(spec: SigmaSpec) -> GaussRational:
    return T_DEFAULT_REAL if spec.kind == VARSIGMA else T_DEFAULT_IMAG


def make_case(family: str, rank: int, spec: SigmaSpec, triple: BDTriple,
              lam: Optional[List[List[GaussRational]]] = None,
              t: Optional[GaussRational] = None,
              lambda_weights: Sequence[Fraction] = ()) -> Case:
    """Assemble a case, defaulting the parameter to an admissible point."""
    basis = basis_for(family, rank, spec.mu)
    if t is None:
        t = default_t(spec)
    if lam is None:
        space = continuous_parameter_space(basis, triple, spec)
        if space.is_empty:
            raise InadmissibleCaseError("no admissible continuous parameter")
        lam = lambda_from_coords(rank, space.point(lambda_weights))
    case = Case(basis, spec, triple, lam, t)
    case.validate()
    # also fails fast when no symmetry-fixed skew r-matrix exists
    build_r0(basis, spec, triple, lam, t)
    return case


def compute_r_tilde(basis: NormalizedBasis, theta: ConjLinearMap,
                    r0: SparseTensor2) -> RTilde:
    """Generic projection: r0 + (th x th) r0 - (th x 1) r0 - (1 x th) r0."""
    both = theta.apply_tensor(r0)
    left = theta.apply_tensor_slot(r0, 0)
    right = theta.apply_tensor_slot(r0, 1)
    return RTilde(r0 + both - left - right, "generic")


def closed_form_r_tilde(case: Case) -> RTilde:
    """Term-by-term closed expression of the projected tensor.

    Scalars on root vectors are read off the constructed Cartan
    involution, and mixed terms carry the exact modulus factors this
    normalization requires; in the unit gauge these reduce to the
    familiar sign-only expressions.
    """
    basis, spec, t = case.basis, case.spec, case.t
    rs = basis.rs
    theta = build_theta(basis, spec)
    ext = TExtension(basis, case.triple)
    mu = spec.mu
    out = SparseTensor2()

    def hvec(i: int) -> SparseVec:
        return SparseVec.basis(i)

    def acc(x: SparseVec, y: SparseVec, c: GaussRational) -> None:
        if not c.is_zero():
            out.add_product(x, y, c)
            out.add_product(y, x, -c)

    lamw: Dict[Tuple[int, int], GaussRational] = {}
    for i in range(rs.rank):
        for j in range(rs.rank):
            lamw[(i, j)] = wedge_coefficient(case.lam, i, j)

    tau = theta.root_scalar
    mu_root = lambda r: rs.apply_automorphism(mu, r)

    if spec.kind == VARSIGMA:
        # Cartan block: doubled real combinations of the wedge coefficients
        for i in range(rs.rank):
            for j in range(rs.rank):
                coeff = lamw[(i, j)] + lamw[(i, mu[j])]
                c = GaussRational(2 * coeff.re)
                acc(hvec(i), hvec(j), c)
        # the full-root sum projects away; only ordered mixed terms remain
        for alpha, beta in ext.prec:
            d = ext.d_scalar(alpha, beta)
            em_a, e_b = basis.e_vec(negate(alpha)), basis.e_vec(beta)
            e_ma = basis.e_vec(mu_root(alpha))
            em_mb = basis.e_vec(negate(mu_root(beta)))
            acc(em_a, e_b, d)
            acc(em_a, em_mb, -d * tau[beta])
            acc(e_ma, e_b, -d * tau[negate(alpha)])
            acc(e_ma, em_mb, d * tau[negate(alpha)] * tau[beta])
    else:
        for i in range(rs.rank):
            for j in range(rs.rank):
                coeff = lamw[(i, j)] - lamw[(i, mu[j])]
                c = GaussRational(0, 2 * coeff.im)
                acc(hvec(i), hvec(j), c)
        for gamma in rs.positive_roots:
            mg = mu_root(gamma)
            acc(basis.e_vec(negate(gamma)), basis.e_vec(gamma), GaussRational(2))
            acc(basis.e_vec(negate(mg)), basis.e_vec(gamma),
                GaussRational(-2) / tau[gamma])
        for alpha, beta in ext.prec:
            d = ext.d_scalar(alpha, beta)
            em_a, e_b = basis.e_vec(negate(alpha)), basis.e_vec(beta)
            em_ma = basis.e_vec(negate(mu_root(alpha)))
            e_mb = basis.e_vec(mu_root(beta))
            acc(em_a, e_b, d)
            acc(em_a, e_mb, -d * tau[beta])
            acc(em_ma, e_b, -d * tau[negate(alpha)])
            acc(em_ma, e_mb, d * tau[negate(alpha)] * tau[beta])
    return RTilde(out.scale(t / 2), "closed_form")


def case_r0(case: Case) -> SparseTensor2:
    return build_r0(case.basis, case.spec, case.triple, case.lam, case.t)


def coideal_check(case: Case, isotropy: Optional[Subalgebra] = None,
                  r_tilde: Optional[RTilde] = None) -> CoidealVerdict:
    """Group-type test: the isotropy generators must kill the projection.

    Generators suffice: the annihilator of a fixed tensor is a
    subalgebra.  The first failing generator in canonical order is
    returned as the witness.
    """
    basis = case.basis
    if isotropy is None:
        isotropy = isotropy_algebra(basis, case.spec)
    if r_tilde is None:
        r_tilde = compute_r_tilde(basis, build_theta(basis, case.spec), case_r0(case))
    for u in isotropy.generators:
        image = basis.ad_tensor(u, r_tilde.tensor)
        if not image.is_zero():
            return CoidealVerdict(False, u, image)
    return CoidealVerdict(True)


def coideal_check_direct(case: Case) -> bool:
    """Quotient-space oracle on the cobracket itself.

    Projects each cobracket value of an isotropy generator to the
    quotient by the isotropy algebra in both slots; the case passes
    exactly when every projection vanishes.
    """
    basis = case.basis
    isotropy = isotropy_algebra(basis, case.spec)
    r0 = case_r0(case)
    reduced: Dict[int, SparseVec] = {}

    def red(i: int) -> SparseVec:
        v = reduced.get(i)
        if v is None:
            v = isotropy.reduce_mod(SparseVec.basis(i))
            reduced[i] = v
        return v

    for u in isotropy.generators:
        delta_u = basis.ad_tensor(u, r0)
        projected = SparseTensor2()
        for (i, j), c in delta_u.entries.items():
            projected.add_product(red(i), red(j), c)
        if not projected.is_zero():
            return False
    return True


def solve_lambda(basis: NormalizedBasis, spec: SigmaSpec, triple: BDTriple,
                 t: Optional[GaussRational] = None) -> AffineSolutionSpace:
    """Admissible parameters passing the coideal criterion, exactly.

    Returns an affine space in the same real coordinates as the
    admissible parameter space (all real parts then all imaginary
    parts of the Cartan-square matrix); empty when no parameter works.
    """
    rank = basis.rank
    if t is None:
        t = default_t(spec)
    admissible = continuous_parameter_space(basis, triple, spec)
    if admissible.is_empty:
        return admissible
    theta = build_theta(basis, spec)
    iso = isotropy_algebra(basis, spec, check_closure=False)

    base_pt = admissible.point()
    lam0 = lambda_from_coords(rank, base_pt)
    r0 = build_r0(basis, spec, triple, lam0, t)
    t0 = compute_r_tilde(basis, theta, r0).tensor

    # parameter variations only move the Cartan block of the skew
    # r-matrix, so the linear parts are projections of tiny tensors
    directions = []
    for bvec in admissible.basis:
        delta = lambda_from_coords(rank, bvec)
        d_r0 = SparseTensor2()
        for i in range(rank):
            for j in range(rank):
                c = delta[i][j] - delta[j][i]
                if not c.is_zero():
                    d_r0.add_term((i, j), c)
        d_r0 = d_r0.scale(t / 2)
        directions.append(compute_r_tilde(basis, theta, d_r0).tensor)

    if all(d.is_zero() for d in directions):
        # verdict independent of the parameter: scan with early exit
        for u in iso.generators:
            if not basis.ad_tensor(u, t0).is_zero():
                return AffineSolutionSpace(None, [])
        return admissible

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for u in iso.generators:
        const = basis.ad_tensor(u, t0)
        linear = [basis.ad_tensor(u, d) for d in directions]
        keys = set(const.entries)
        for lin in linear:
            keys.update(lin.entries)
        if not keys:
            continue
        for key in sorted(keys):
            c = const.entries.get(key, ZERO)
            coeffs = [lin.entries.get(key, ZERO) for lin in linear]
            rows.append([x.re for x in coeffs]); rhs.append(-c.re)
            rows.append([x.im for x in coeffs]); rhs.append(-c.im)
    if not rows:
        return admissible
    inner = solve_linear_system(rows, rhs)
    if inner.is_empty:
        return AffineSolutionSpace(None, [])
    particular = admissible.point(inner.particular)
    out_basis = []
    for w in inner.basis:
        vec = [Fraction(0)] * len(base_pt)
        for wk, bvec in zip(w, admissible.basis):
            if wk:
                for i, x in enumerate(bvec):
                    vec[i] += wk * x
        out_basis.append(vec)
    return AffineSolutionSpace(particular, out_basis)


def painted_root_criterion(rs: RootSystem, painted: Sequence[int]) -> bool:
    """Single unpainted root whose highest-root coefficient is one."""
    missing = [i for i in range(rs.rank) if i not in set(painted)]
    if len(missing) != 1:
        return False
    return rs.highest_root()[missing[0]] == 1


# -- classification driver ---------------------------------------------------

@dataclass(frozen=True)
class CaseKey:
    """Serializable identifier of a classification case."""

    family: str
    rank: int
    kind: str
    mu: Tuple[int, ...]
    painted: Tuple[int, ...]
    gamma1: Tuple[int, ...]
    gamma2: Tuple[int, ...]
    images: Tuple[int, ...]

    def spec(self) -> SigmaSpec:
        return SigmaSpec(self.kind, self.mu, self.painted)

    def triple(self) -> BDTriple:
        return BDTriple(self.gamma1, self.gamma2, self.images)


def evaluate_case_record(key: CaseKey) -> dict:
    """Worker: verdict record for one case (pure function of the key)."""
    spec = key.spec()
    triple = key.triple()
    basis = basis_for(key.family, key.rank, spec.mu)
    note = None
    try:
        solution = solve_lambda(basis, spec, triple)
    except InadmissibleCaseError as exc:
        # some painted sets admit no symmetry-fixed skew r-matrix over a
        # nontrivial triple; such exploratory cases are reported, not solved
        solution = None
        note = str(exc)
    admissible = continuous_parameter_space(basis, triple, spec)
    exploratory = (spec.kind == OMEGA and not spec.mu_is_identity
                   and not triple.is_trivial)
    record = {
        "schema": 1,
        "type": key.family,
        "rank": key.rank,
        "sigma": spec.describe(),
        "kind": spec.kind,
        "mu": [i + 1 for i in spec.mu],
        "painted": [j + 1 for j in spec.painted],
        "triple": triple.describe(),
        "group_type": solution is not None and not solution.is_empty,
        "lambda_solution_dim": (None if solution is None or solution.is_empty
                                else solution.dim),
        "lambda_admissible_dim": None if admissible.is_empty else admissible.dim,
        "exploratory": exploratory,
        "note": note,
    }
    return record


def classification_cases(families: Sequence[Tuple[str, int]],
                         sigma_filter: str = "all",
                         triple_filter: str = "trivial",
                         exploratory: bool = False) -> List[CaseKey]:
    """Deterministic case list for the classification driver."""
    if sigma_filter not in ("all", "varsigma", "omega-j", "omega-mu-j"):
        raise ValueError(f"unknown sigma filter {sigma_filter!r}")
    if triple_filter not in ("trivial", "all"):
        raise ValueError(f"unknown triple filter {triple_filter!r}")
    keys: List[CaseKey] = []
    for family, rank in families:
        rs = build_root_system(family, rank)
        for mu in rs.diagram_automorphisms():
            mu_id = mu == tuple(range(rank))
            specs: List[SigmaSpec] = []
            if sigma_filter in ("all", "varsigma"):
                specs.append(varsigma_spec(mu))
            want_omega = (
                sigma_filter == "all"
                or (sigma_filter == "omega-j" and mu_id)
                or (sigma_filter == "omega-mu-j" and not mu_id)
            )
            if want_omega:
                fixed = [i for i in range(rank) if mu[i] == i]
                for size in range(len(fixed) + 1):
                    for painted in itertools.combinations(fixed, size):
                        if mu_id and len(painted) == rank:
                            continue  # compact form: out of scope
                        specs.append(omega_spec(mu, painted))
            for spec in specs:
                if triple_filter == "trivial":
                    triples = [BDTriple((), (), ())]
                else:
                    stability = "stable" if spec.kind == VARSIGMA else "antistable"
                    triples = enumerate_bd_triples(rs, stability, mu)
                for triple in triples:
                    if (spec.kind == OMEGA and not mu_id
                            and not triple.is_trivial and not exploratory):
                        continue
                    keys.append(CaseKey(family, rank, spec.kind, mu, spec.painted,
                                        triple.gamma1, triple.gamma2, triple.images))
    return keys


def classify(families: Sequence[Tuple[str, int]], sigma_filter: str = "all",
             triple_filter: str = "trivial", exploratory: bool = False,
             jobs: int = 1) -> List[dict]:
    """Evaluate the full case grid; deterministic record order."""
    keys = classification_cases(families, sigma_filter, triple_filter, exploratory)
    if jobs > 1:
        import concurrent.futures
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(evaluate_case_record, keys, chunksize=4))
    else:
        records = [evaluate_case_record(k) for k in keys]
    return records
