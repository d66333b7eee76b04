"""Combinatorial triples, r-matrices and the classical Yang-Baxter side.

A triple (Gamma1, Gamma2, T) consists of two subsets of the simple
roots and a Killing-isometric bijection T whose iterates eventually
leave Gamma1 (nilpotency).  The bijection extends to the positive
roots supported on Gamma1; propagating it through brackets fixes the
scalars C with C(a) C(-a) = 1 that normalize the root vectors entering
the r-matrix, and iterating it produces the strict partial order used
by the mixed wedge terms.

Continuous parameters live in the tensor square of the Cartan
subalgebra, subject to the symmetrized-part and equivariance
constraints, plus the reality constraints of the real-form shape at
hand.  Everything is exact; admissibility violations raise with the
name of the violated constraint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .chevalley import NormalizedBasis
from .involutions import OMEGA, VARSIGMA, SigmaSpec, build_sigma
from .linalg import AffineSolutionSpace, solve_linear_system
from .rootsys import Perm, Root, RootSystem, negate
from .scalars import GaussRational, ONE, ZERO
from .tensors import SparseTensor2, SparseTensor3, SparseVec


class TripleError(ValueError):
    pass


class NotIsometryError(TripleError):
    pass


class NilpotencyError(TripleError):
    pass


class InadmissibleCaseError(ValueError):
    """Case data violates an admissibility constraint (named in args)."""


@dataclass(frozen=True)
class BDTriple:
    """Subsets of simple-root indices with the connecting bijection."""

    gamma1: Tuple[int, ...]
    gamma2: Tuple[int, ...]
    images: Tuple[int, ...]  # parallel to gamma1

    def __post_init__(self):
        if tuple(sorted(self.gamma1)) != self.gamma1:
            raise TripleError("gamma1 must be sorted")
        if tuple(sorted(self.gamma2)) != self.gamma2:
            raise TripleError("gamma2 must be sorted")
        if sorted(self.images) != list(self.gamma2):
            raise TripleError("T must be a bijection onto gamma2")
        if len(self.gamma1) != len(set(self.gamma1)):
            raise TripleError("gamma1 has repeats")

    @property
    def is_trivial(self) -> bool:
        return not self.gamma1

    def t_of(self, i: int) -> int:
        return self.images[self.gamma1.index(i)]

    @property
    def mapping(self) -> Dict[int, int]:
        return dict(zip(self.gamma1, self.images))

    def describe(self) -> str:
        if self.is_trivial:
            return "trivial"
        pairs = ", ".join(f"{i + 1}->{j + 1}" for i, j in zip(self.gamma1, self.images))
        return f"[{pairs}]"

    def is_mu_stable(self, mu: Perm) -> bool:
        g1, g2 = set(self.gamma1), set(self.gamma2)
        if {mu[i] for i in g1} != g1 or {mu[i] for i in g2} != g2:
            return False
        m = self.mapping
        return all(m[mu[i]] == mu[m[i]] for i in self.gamma1)

    def is_mu_antistable(self, mu: Perm) -> bool:
        g1, g2 = set(self.gamma1), set(self.gamma2)
        if {mu[i] for i in g1} != g2 or {mu[i] for i in g2} != g1:
            return False
        m = self.mapping
        inv = {v: k for k, v in m.items()}
        # T^{-1} mu = mu T on gamma1
        return all(inv[mu[i]] == mu[m[i]] for i in self.gamma1)


def validate_bd_triple(rs: RootSystem, gamma1: Sequence[int],
                       gamma2: Sequence[int], images: Sequence[int]) -> BDTriple:
    """Check the isometry and nilpotency conditions; raise otherwise."""
    pairs = sorted(zip(gamma1, images))
    cand = BDTriple(tuple(i for i, _ in pairs), tuple(sorted(gamma2)),
                    tuple(j for _, j in pairs))
    g = rs.killing_gram
    m = cand.mapping
    for i in cand.gamma1:
        for j in cand.gamma1:
            if g[i][j] != g[m[i]][m[j]]:
                raise NotIsometryError(
                    f"T does not preserve the Killing form on ({i + 1},{j + 1})")
    g1 = set(cand.gamma1)
    for i in cand.gamma1:
        cur = i
        for _ in range(len(cand.gamma1) + 1):
            cur = m[cur]
            if cur not in g1:
                break
        else:
            raise NilpotencyError(f"orbit of root {i + 1} never leaves gamma1")
    return cand


def enumerate_bd_triples(rs: RootSystem, stability: str = "all",
                         mu: Optional[Perm] = None) -> List[BDTriple]:
    """Exhaustive valid triples, optionally filtered by mu-(anti)stability."""
    if stability not in ("all", "stable", "antistable"):
        raise ValueError(f"unknown stability filter {stability!r}")
    if stability != "all" and mu is None:
        raise ValueError("stability filters require mu")
    n = rs.rank
    out: List[BDTriple] = []
    indices = list(range(n))
    for k in range(n + 1):
        for g1 in itertools.combinations(indices, k):
            for g2 in itertools.combinations(indices, k):
                for img in itertools.permutations(g2):
                    try:
                        t = validate_bd_triple(rs, g1, tuple(sorted(g2)), img)
                    except TripleError:
                        continue
                    if stability == "stable" and not t.is_mu_stable(mu):
                        continue
                    if stability == "antistable" and not t.is_mu_antistable(mu):
                        continue
                    out.append(t)
    out.sort(key=lambda t: (len(t.gamma1), t.gamma1, t.gamma2, t.images))
    return out


class TExtension:
    """The bijection extended to supported positive roots, with scalars.

    `c_scalars` normalizes x(a) = C(a) e(a) so the extended map carries
    x(a) to x(T a) along chains; `prec` lists the strict order pairs.
    """

    def __init__(self, basis: NormalizedBasis, triple: BDTriple):
        self.basis = basis
        self.triple = triple
        rs = basis.rs
        g1 = set(triple.gamma1)
        g2 = set(triple.gamma2)
        self.gamma1_hat = [r for r in rs.positive_roots
                           if all(c == 0 or i in g1 for i, c in enumerate(r))]
        self.gamma2_hat = [r for r in rs.positive_roots
                           if all(c == 0 or i in g2 for i, c in enumerate(r))]
        self._g1h = set(self.gamma1_hat)
        self._g2h = set(self.gamma2_hat)
        self._eps: Dict[Root, GaussRational] = {}
        self.c_scalars: Dict[Root, GaussRational] = {}
        self._build_scalars()
        self.prec = self._build_prec()

    def t_root(self, r: Root) -> Root:
        """Linear extension of T to roots supported on gamma1."""
        img = [0] * self.basis.rank
        m = self.triple.mapping
        for i, c in enumerate(r):
            if c:
                img[m[i]] = c
        out = tuple(img)
        assert self.basis.rs.is_root(out), "triple bijection must map roots to roots"
        return out

    def _epsilon(self, gamma: Root) -> GaussRational:
        """Bracket-propagation scalar of the extended map at gamma."""
        eps = self._eps.get(gamma)
        if eps is not None:
            return eps
        b = self.basis
        rs = b.rs
        if sum(gamma) == 1:
            eps = ONE
        else:
            i = next(k for k in range(rs.rank) if gamma[k]
                     and rs.is_positive(tuple(c - (1 if k2 == k else 0)
                                              for k2, c in enumerate(gamma))))
            alpha = tuple(1 if k == i else 0 for k in range(rs.rank))
            delta = tuple(c - (1 if k == i else 0) for k, c in enumerate(gamma))
            eps = (self._epsilon(alpha) * self._epsilon(delta)
                   * b.structure_constant(self.t_root(alpha), self.t_root(delta))
                   / b.structure_constant(alpha, delta))
        self._eps[gamma] = eps
        return eps

    def _build_scalars(self) -> None:
        rs = self.basis.rs
        c = {r: ONE for r in rs.positive_roots}
        starts = [r for r in self.gamma1_hat if r not in self._g2h]
        for start in sorted(starts, key=rs.root_index.get):
            cur = start
            while cur in self._g1h:
                nxt = self.t_root(cur)
                c[nxt] = self._epsilon(cur) * c[cur]
                cur = nxt
        for r in rs.positive_roots:
            self.c_scalars[r] = c[r]
            self.c_scalars[negate(r)] = ONE / c[r]

    def _build_prec(self) -> List[Tuple[Root, Root]]:
        rs = self.basis.rs
        pairs: List[Tuple[Root, Root]] = []
        for alpha in self.gamma1_hat:
            cur = alpha
            while cur in self._g1h:
                cur = self.t_root(cur)
                pairs.append((alpha, cur))
        pairs.sort(key=lambda p: (rs.root_index[p[0]], rs.root_index[p[1]]))
        return pairs

    def d_scalar(self, alpha: Root, beta: Root) -> GaussRational:
        """The mixed-wedge coefficient C(-alpha) C(beta)."""
        return self.c_scalars[negate(alpha)] * self.c_scalars[beta]


def casimir(basis: NormalizedBasis) -> Tuple[SparseTensor2, SparseTensor2]:
    """Invariant element and its Cartan block, from exact dual bases."""
    rs = basis.rs
    ginv = rs.gram_inverse()
    omega0 = SparseTensor2()
    for i in range(rs.rank):
        for j in range(rs.rank):
            if ginv[i][j]:
                omega0.add_term((i, j), GaussRational(ginv[i][j]))
    omega = SparseTensor2(dict(omega0.entries))
    for gamma in rs.all_roots():
        omega.add_term((basis.idx_e(gamma), basis.idx_e(negate(gamma))), ONE)
    return omega, omega0


# -- continuous parameters -------------------------------------------------

LambdaMatrix = List[List[GaussRational]]


def lambda_coord_count(rank: int) -> int:
    return 2 * rank * rank


def lambda_from_coords(rank: int, coords: Sequence[Fraction]) -> LambdaMatrix:
    """Coordinates (all real parts, then all imaginary parts) to a matrix."""
    assert len(coords) == lambda_coord_count(rank)
    off = rank * rank
    return [[GaussRational(coords[i * rank + j], coords[off + i * rank + j])
             for j in range(rank)] for i in range(rank)]


def coords_from_lambda(lam: LambdaMatrix) -> List[Fraction]:
    rank = len(lam)
    re = [lam[i][j].re for i in range(rank) for j in range(rank)]
    im = [lam[i][j].im for i in range(rank) for j in range(rank)]
    return re + im


def wedge_coefficient(lam: LambdaMatrix, i: int, j: int) -> GaussRational:
    """Coefficient of the (i, j) Cartan wedge in the skew part of lambda."""
    return (lam[i][j] - lam[j][i]) / 2


_PARAM_CACHE: Dict[tuple, AffineSolutionSpace] = {}


def continuous_parameter_space(basis: NormalizedBasis, triple: BDTriple,
                               spec: Optional[SigmaSpec] = None) -> AffineSolutionSpace:
    """Exact affine space of admissible continuous parameters.

    Real coordinates: rank^2 real parts then rank^2 imaginary parts of
    the Cartan-square matrix.  Constraints: symmetrized part equals the
    Cartan Casimir block, equivariance under the triple's bijection,
    and (when `spec` is given) the reality constraints of the shape.
    The constraints do not involve the painted set, so results are
    cached per system, triple and shape.
    """
    rs = basis.rs
    cache_key = (rs.type.family, rs.rank, triple,
                 None if spec is None else (spec.kind, spec.mu))
    cached = _PARAM_CACHE.get(cache_key)
    if cached is not None:
        return cached
    r = rs.rank
    ginv = rs.gram_inverse()
    ncoord = lambda_coord_count(r)
    off = r * r
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []

    def unit_row() -> List[Fraction]:
        return [Fraction(0)] * ncoord

    def x(i: int, j: int) -> int:
        return i * r + j

    def y(i: int, j: int) -> int:
        return off + i * r + j

    # symmetrized part pinned to the Cartan Casimir block
    for i in range(r):
        for j in range(i, r):
            row = unit_row(); row[x(i, j)] += 1; row[x(j, i)] += 1
            rows.append(row); rhs.append(ginv[i][j])
            row = unit_row(); row[y(i, j)] += 1; row[y(j, i)] += 1
            rows.append(row); rhs.append(Fraction(0))

    # equivariance along the triple: contraction against T(a) in the first
    # slot plus contraction against a in the second slot vanishes
    m = triple.mapping
    for a in triple.gamma1:
        ta = m[a]
        for k in range(r):
            rowx, rowy = unit_row(), unit_row()
            for i in range(r):
                c1 = rs.killing_gram[ta][i]
                if c1:
                    rowx[x(i, k)] += c1
                    rowy[y(i, k)] += c1
                c2 = rs.killing_gram[a][i]
                if c2:
                    rowx[x(k, i)] += c2
                    rowy[y(k, i)] += c2
            rows.append(rowx); rhs.append(Fraction(0))
            rows.append(rowy); rhs.append(Fraction(0))

    if spec is not None:
        mu = spec.mu
        for i in range(r):
            for j in range(r):
                if spec.kind == VARSIGMA and spec.mu_is_identity:
                    row = unit_row(); row[y(i, j)] += 1; row[y(j, i)] -= 1
                    rows.append(row); rhs.append(Fraction(0))
                elif spec.kind == VARSIGMA:
                    row = unit_row()
                    row[x(i, j)] += 1; row[x(j, i)] -= 1
                    row[x(mu[i], mu[j])] -= 1; row[x(mu[j], mu[i])] += 1
                    rows.append(row); rhs.append(Fraction(0))
                    row = unit_row()
                    row[y(i, j)] += 1; row[y(j, i)] -= 1
                    row[y(mu[i], mu[j])] += 1; row[y(mu[j], mu[i])] -= 1
                    rows.append(row); rhs.append(Fraction(0))
                elif spec.kind == OMEGA and spec.mu_is_identity:
                    row = unit_row(); row[x(i, j)] += 1; row[x(j, i)] -= 1
                    rows.append(row); rhs.append(Fraction(0))
                else:
                    row = unit_row()
                    row[x(i, j)] += 1; row[x(j, i)] -= 1
                    row[x(mu[i], mu[j])] += 1; row[x(mu[j], mu[i])] -= 1
                    rows.append(row); rhs.append(Fraction(0))
                    row = unit_row()
                    row[y(i, j)] += 1; row[y(j, i)] -= 1
                    row[y(mu[i], mu[j])] -= 1; row[y(mu[j], mu[i])] += 1
                    rows.append(row); rhs.append(Fraction(0))

    out = solve_linear_system(rows, rhs)
    _PARAM_CACHE[cache_key] = out
    return out


def check_lambda_constraints(basis: NormalizedBasis, triple: BDTriple,
                             lam: LambdaMatrix,
                             spec: Optional[SigmaSpec] = None) -> None:
    """Raise InadmissibleCaseError naming the first violated constraint."""
    rs = basis.rs
    r = rs.rank
    ginv = rs.gram_inverse()
    for i in range(r):
        for j in range(r):
            if lam[i][j] + lam[j][i] != GaussRational(ginv[i][j]):
                raise InadmissibleCaseError(
                    "symmetrized part of lambda must equal the Cartan Casimir block")
    m = triple.mapping
    for a in triple.gamma1:
        for k in range(r):
            s = ZERO
            for i in range(r):
                s = s + GaussRational(rs.killing_gram[m[a]][i]) * lam[i][k]
                s = s + GaussRational(rs.killing_gram[a][i]) * lam[k][i]
            if not s.is_zero():
                raise InadmissibleCaseError(
                    f"lambda is not equivariant along the triple at root {a + 1}")
    if spec is None:
        return
    mu = spec.mu
    for i in range(r):
        for j in range(r):
            w = wedge_coefficient(lam, i, j)
            wm = wedge_coefficient(lam, mu[i], mu[j])
            if spec.kind == VARSIGMA:
                if not w == wm.conjugate():
                    raise InadmissibleCaseError(
                        "skew lambda coefficients must be conjugate-symmetric under mu")
            else:
                if not w == -(wm.conjugate()):
                    raise InadmissibleCaseError(
                        "skew lambda coefficients must be conjugate-antisymmetric under mu")


def check_t_admissible(spec: SigmaSpec, t: GaussRational) -> None:
    if t.is_zero():
        raise InadmissibleCaseError("t must be nonzero")
    if spec.kind == VARSIGMA and not t.is_real():
        raise InadmissibleCaseError("t must be real for the grading-preserving shape")
    if spec.kind == OMEGA and not t.is_imaginary():
        raise InadmissibleCaseError("t must be imaginary for the grading-reversing shape")


def check_triple_admissible(spec: SigmaSpec, triple: BDTriple) -> None:
    if spec.kind == VARSIGMA:
        if not triple.is_mu_stable(spec.mu):
            raise InadmissibleCaseError("triple must be mu-stable for this shape")
    else:
        if not triple.is_mu_antistable(spec.mu):
            raise InadmissibleCaseError("triple must be mu-antistable for this shape")


@dataclass
class RMatrix:
    tensor: SparseTensor2
    t: GaussRational
    triple: BDTriple


def build_r(basis: NormalizedBasis, triple: BDTriple, lam: LambdaMatrix,
            t: GaussRational) -> RMatrix:
    """The factorizable r-matrix of the triple and continuous parameter."""
    check_lambda_constraints(basis, triple, lam)
    if t.is_zero():
        raise InadmissibleCaseError("t must be nonzero")
    ext = TExtension(basis, triple)
    r = SparseTensor2()
    rank = basis.rank
    for i in range(rank):
        for j in range(rank):
            if not lam[i][j].is_zero():
                r.add_term((i, j), lam[i][j])
    for gamma in basis.rs.positive_roots:
        r.add_term((basis.idx_e(negate(gamma)), basis.idx_e(gamma)), ONE)
    for alpha, beta in ext.prec:
        d = ext.d_scalar(alpha, beta)
        ia, ib = basis.idx_e(negate(alpha)), basis.idx_e(beta)
        r.add_term((ia, ib), d)
        r.add_term((ib, ia), -d)
    return RMatrix(r.scale(t / 2), t, triple)


def build_r0(basis: NormalizedBasis, spec: SigmaSpec, triple: BDTriple,
             lam: LambdaMatrix, t: GaussRational) -> SparseTensor2:
    """Skew generator of the cobracket for an admissible real case.

    Admissibility (shape vs t, lambda and triple) is enforced, and the
    result is verified to be fixed by sigma acting on both slots.
    """
    check_t_admissible(spec, t)
    check_triple_admissible(spec, triple)
    check_lambda_constraints(basis, triple, lam, spec)
    ext = TExtension(basis, triple)
    r0 = SparseTensor2()
    rank = basis.rank
    for i in range(rank):
        for j in range(rank):
            c = lam[i][j] - lam[j][i]
            if not c.is_zero():
                r0.add_term((i, j), c)
    for gamma in basis.rs.positive_roots:
        i, j = basis.idx_e(negate(gamma)), basis.idx_e(gamma)
        r0.add_term((i, j), ONE)
        r0.add_term((j, i), -ONE)
    for alpha, beta in ext.prec:
        d = ext.d_scalar(alpha, beta)
        ia, ib = basis.idx_e(negate(alpha)), basis.idx_e(beta)
        r0.add_term((ia, ib), d)
        r0.add_term((ib, ia), -d)
    r0 = r0.scale(t / 2)
    sigma = build_sigma(basis, spec)
    if not sigma.apply_tensor(r0) == r0:
        raise InadmissibleCaseError(
            "skew r-matrix is not fixed by sigma on both slots")
    return r0


def cobracket(basis: NormalizedBasis, r_tensor: SparseTensor2,
              x: SparseVec) -> SparseTensor2:
    """Coboundary cobracket value at x."""
    return basis.ad_tensor(x, r_tensor)


def cybe_residual(basis: NormalizedBasis, r_tensor: SparseTensor2) -> SparseTensor3:
    """Exact left-hand side of the classical Yang-Baxter equation."""
    out = SparseTensor3()
    entries = list(r_tensor.entries.items())
    for (a, b), c1 in entries:
        for (c, d), c2 in entries:
            coeff = c1 * c2
            br = basis.bracket_basis(a, c)
            for k, v in br.entries.items():
                out.add_term((k, b, d), coeff * v)
            br = basis.bracket_basis(b, c)
            for k, v in br.entries.items():
                out.add_term((a, k, d), coeff * v)
            br = basis.bracket_basis(b, d)
            for k, v in br.entries.items():
                out.add_term((a, c, k), coeff * v)
    return out
