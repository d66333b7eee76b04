"""Conjugate-linear involutions, their Cartan involutions and fixed algebras.

Two shapes of conjugate-linear involution are supported, both acting
by a (possibly sign- and scale-twisted) permutation of the root
vectors:

* the split-like shape fixing the root space grading, sending the
  vector of gamma to the vector of mu(gamma);
* the compact-like shape reversing the grading, sending the vector of
  gamma to a scalar times the vector of -mu(gamma), parameterized by a
  painted subset J of the mu-fixed simple roots.

Over Q(i) the grading-reversing maps necessarily carry rational
modulus factors (the half squared root lengths q); their unit parts
are the classical signs.  Scalars on composite roots are not
prescribed: they are propagated through brackets from the simple
roots and the resulting map is machine-verified to be an involutive
conjugate-linear Lie algebra map.  The composed Cartan involution
always acts on root vectors by plain units.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .chevalley import NormalizedBasis, _simple
from .linalg import GaussianEchelon
from .rootsys import Perm, Root, add, height, negate
from .scalars import GaussRational, MINUS_ONE, ONE
from .tensors import SparseTensor2, SparseVec

VARSIGMA = "varsigma"
OMEGA = "omega"


class InvolutionError(ValueError):
    """A requested involution is inconsistent with the basis data."""


@dataclass(frozen=True)
class SigmaSpec:
    """Descriptor of a real-form involution.

    kind "varsigma" keeps the triangular decomposition; kind "omega"
    flips it and paints the subset J of mu-fixed simple roots.
    """

    kind: str
    mu: Perm
    painted: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in (VARSIGMA, OMEGA):
            raise ValueError(f"unknown involution kind {self.kind!r}")
        n = len(self.mu)
        if sorted(self.mu) != list(range(n)):
            raise ValueError("mu must be a permutation of the simple roots")
        if any(self.mu[self.mu[i]] != i for i in range(n)):
            raise ValueError("mu must have order dividing 2")
        if tuple(sorted(self.painted)) != self.painted:
            raise ValueError("painted set must be sorted")
        if self.kind == VARSIGMA and self.painted:
            raise ValueError("painted set only applies to the omega shape")
        for j in self.painted:
            if self.mu[j] != j:
                raise ValueError("painted roots must be fixed by mu")

    @property
    def mu_is_identity(self) -> bool:
        return all(self.mu[i] == i for i in range(len(self.mu)))

    def describe(self) -> str:
        mu = "id" if self.mu_is_identity else \
            "(" + " ".join(str(i + 1) for i in self.mu) + ")"
        if self.kind == VARSIGMA:
            return f"varsigma[mu={mu}]"
        painted = "{" + ",".join(str(j + 1) for j in self.painted) + "}"
        return f"omega[mu={mu}, J={painted}]"


def varsigma_spec(mu: Perm) -> SigmaSpec:
    return SigmaSpec(VARSIGMA, tuple(mu))

def omega_spec(mu: Perm, painted=()) -> SigmaSpec:
    return SigmaSpec(OMEGA, tuple(mu), tuple(sorted(painted)))

def chevalley_involution_spec(rank: int) -> SigmaSpec:
    return omega_spec(tuple(range(rank)), tuple(range(rank)))


class ConjLinearMap:
    """Basis-indexed semilinear map: root vectors scale-permute.

    `root_scalar[gamma]` multiplies the image vector at
    `root_image[gamma]`; Cartan duals map linearly by `cartan_sign`
    times the mu-permutation.  When `conjugates_scalars` is set the
    map is conjugate-linear.
    """

    def __init__(self, basis: NormalizedBasis, root_image: Dict[Root, Root],
                 root_scalar: Dict[Root, GaussRational], cartan_sign: int,
                 mu: Perm, conjugates_scalars: bool):
        self.basis = basis
        self.root_image = root_image
        self.root_scalar = root_scalar
        self.cartan_sign = cartan_sign
        self.mu = mu
        self.conjugates_scalars = conjugates_scalars

    def image_of_index(self, idx: int) -> SparseVec:
        b = self.basis
        if idx < b.rank:
            return SparseVec.basis(self.mu[idx], self.cartan_sign)
        root = b.root_of_index[idx]
        return b.e_vec(self.root_image[root], self.root_scalar[root])

    def apply(self, v: SparseVec) -> SparseVec:
        out = SparseVec()
        for idx, c in v.entries.items():
            cc = c.conjugate() if self.conjugates_scalars else c
            img = self.image_of_index(idx)
            for k, w in img.entries.items():
                out.add_term(k, cc * w)
        return out

    def apply_tensor(self, t: SparseTensor2) -> SparseTensor2:
        """The map on both tensor slots (scalars conjugated once)."""
        out = SparseTensor2()
        for (i, j), c in t.entries.items():
            cc = c.conjugate() if self.conjugates_scalars else c
            out.add_product(self.image_of_index(i), self.image_of_index(j), cc)
        return out

    def apply_tensor_slot(self, t: SparseTensor2, slot: int) -> SparseTensor2:
        """The map on one slot only (meaningful for linear maps)."""
        assert not self.conjugates_scalars
        out = SparseTensor2()
        for (i, j), c in t.entries.items():
            if slot == 0:
                for k, w in self.image_of_index(i).entries.items():
                    out.add_term((k, j), c * w)
            else:
                for k, w in self.image_of_index(j).entries.items():
                    out.add_term((i, k), c * w)
        return out

    def compose(self, other: "ConjLinearMap") -> "ConjLinearMap":
        """self after other."""
        assert self.basis is other.basis
        image: Dict[Root, Root] = {}
        scalar: Dict[Root, GaussRational] = {}
        for root, mid in other.root_image.items():
            image[root] = self.root_image[mid]
            s = other.root_scalar[root]
            if self.conjugates_scalars:
                s = s.conjugate()
            scalar[root] = s * self.root_scalar[mid]
        mu = tuple(self.mu[other.mu[i]] for i in range(len(self.mu)))
        return ConjLinearMap(self.basis, image, scalar,
                             self.cartan_sign * other.cartan_sign, mu,
                             self.conjugates_scalars != other.conjugates_scalars)

    # -- verification ------------------------------------------------------

    def is_identity(self) -> bool:
        if self.conjugates_scalars or self.cartan_sign != 1:
            return False
        if any(self.mu[i] != i for i in range(len(self.mu))):
            return False
        return all(self.root_image[r] == r and self.root_scalar[r] == ONE
                   for r in self.root_image)

    def is_involution(self) -> bool:
        return self.compose(self).is_identity()

    def respects_bracket(self) -> bool:
        """Scalar-level check that the map is a Lie algebra morphism."""
        b = self.basis
        rs = b.rs
        conj = self.conjugates_scalars
        for x in rs.all_roots():
            # Cartan rows are automatic from B-invariance of mu; the
            # opposite-root rows reduce to the product-one rule.
            if not self.root_scalar[x] * self.root_scalar[negate(x)] == ONE:
                return False
        for x, y in rs.bracket_pairs():
            z = add(x, y)
            n = b.structure_constant(x, y)
            n_img = b.structure_constant(self.root_image[x], self.root_image[y])
            lhs = (n.conjugate() if conj else n) * self.root_scalar[z]
            rhs = self.root_scalar[x] * self.root_scalar[y] * n_img
            if not lhs == rhs:
                return False
        return True

    def respects_bracket_full(self) -> bool:
        """Exhaustive morphism check over all basis pairs (slow path)."""
        b = self.basis
        for i in range(b.dim):
            ei = SparseVec.basis(i)
            for j in range(b.dim):
                ej = SparseVec.basis(j)
                lhs = self.apply(b.bracket(ei, ej))
                rhs = b.bracket(self.apply(ei), self.apply(ej))
                if not lhs == rhs:
                    return False
        return True


def _extend_scalars(basis: NormalizedBasis, spec: SigmaSpec,
                    simple_scalars: Dict[Root, GaussRational],
                    reverses: bool) -> Dict[Root, GaussRational]:
    """Propagate the simple-root scalars through brackets.

    With image root pi(gamma) (= mu(gamma) or -mu(gamma)), morphism
    compatibility forces, for gamma = alpha + delta,
    c(gamma) = c(alpha) c(delta) N(pi alpha, pi delta) / conj(N(alpha, delta)).
    """
    rs = basis.rs
    mu = spec.mu

    def pi(root: Root) -> Root:
        img = rs.apply_automorphism(mu, root)
        return negate(img) if reverses else img

    scal: Dict[Root, GaussRational] = dict(simple_scalars)
    for gamma in rs.positive_roots:
        if height(gamma) == 1:
            continue
        i = next(k for k in range(rs.rank)
                 if gamma[k] and rs.is_positive(
                     tuple(c - (1 if k2 == k else 0) for k2, c in enumerate(gamma))))
        alpha = _simple(rs.rank, i)
        delta = tuple(c - (1 if k2 == i else 0) for k2, c in enumerate(gamma))
        n = basis.structure_constant(alpha, delta)
        n_img = basis.structure_constant(pi(alpha), pi(delta))
        scal[gamma] = scal[alpha] * scal[delta] * n_img / n.conjugate()
    for gamma in rs.positive_roots:
        scal[negate(gamma)] = ONE / scal[gamma]
    return scal


def _map_cache(basis: NormalizedBasis) -> dict:
    cache = getattr(basis, "_involution_cache", None)
    if cache is None:
        cache = {}
        basis._involution_cache = cache  # type: ignore[attr-defined]
    return cache


def build_sigma(basis: NormalizedBasis, spec: SigmaSpec) -> ConjLinearMap:
    """The conjugate-linear involution described by `spec`.

    The returned map is verified to be an involutive conjugate-linear
    Lie algebra morphism; failure signals inconsistent basis data and
    raises InvolutionError.
    """
    cache = _map_cache(basis)
    cached = cache.get(spec)
    if cached is not None:
        return cached
    if tuple(spec.mu) != basis.mu:
        raise InvolutionError(
            "the basis is not adapted to this diagram automorphism; "
            f"build the basis with mu={spec.mu}")
    rs = basis.rs
    mu = spec.mu
    if spec.kind == VARSIGMA:
        image = {r: rs.apply_automorphism(mu, r) for r in rs.all_roots()}
        scal = {r: ONE for r in rs.all_roots()}
        out = ConjLinearMap(basis, image, scal, +1, mu, True)
        if not out.is_involution():
            raise InvolutionError(f"{spec.describe()} failed involutivity")
        if not out.respects_bracket():
            raise InvolutionError(f"{spec.describe()} is not a Lie algebra map")
    elif not spec.painted:
        simple_scalars: Dict[Root, GaussRational] = {}
        for i in range(rs.rank):
            alpha = _simple(rs.rank, i)
            simple_scalars[alpha] = ONE / GaussRational(basis.q(alpha))
        scal = _extend_scalars(basis, spec, simple_scalars, reverses=True)
        image = {r: negate(rs.apply_automorphism(mu, r)) for r in rs.all_roots()}
        out = ConjLinearMap(basis, image, scal, -1, mu, True)
        if not out.is_involution():
            raise InvolutionError(f"{spec.describe()} failed involutivity")
        if not out.respects_bracket():
            raise InvolutionError(f"{spec.describe()} is not a Lie algebra map")
    else:
        # painting twists the unpainted base involution by the sign
        # character of the painted sublattice; being a character, the
        # twist preserves the verified morphism and involution laws
        base = build_sigma(basis, SigmaSpec(OMEGA, mu, ()))
        scal = {}
        for r in rs.all_roots():
            parity = sum(abs(r[j]) for j in spec.painted) % 2
            scal[r] = -base.root_scalar[r] if parity else base.root_scalar[r]
        out = ConjLinearMap(basis, dict(base.root_image), scal, -1, mu, True)
    cache[spec] = out
    return out


def build_chevalley_involution(basis: NormalizedBasis) -> ConjLinearMap:
    """Compact conjugation on this basis (every simple root painted).

    Available on mu-adapted bases too, where it anchors the Cartan
    involution of every shape.
    """
    cache = _map_cache(basis)
    cached = cache.get("__omega__")
    if cached is not None:
        return cached
    rs = basis.rs
    ident = tuple(range(rs.rank))
    simple_scalars = {
        _simple(rs.rank, i): MINUS_ONE / GaussRational(basis.q(_simple(rs.rank, i)))
        for i in range(rs.rank)
    }
    spec = SigmaSpec(OMEGA, ident, tuple(range(rs.rank)))
    scal = _extend_scalars(basis, spec, simple_scalars, reverses=True)
    image = {r: negate(r) for r in rs.all_roots()}
    out = ConjLinearMap(basis, image, scal, -1, ident, True)
    if not (out.is_involution() and out.respects_bracket()):
        raise InvolutionError("compact conjugation failed verification")
    cache["__omega__"] = out
    return out


def build_theta(basis: NormalizedBasis, spec: SigmaSpec) -> ConjLinearMap:
    """The Cartan involution: compact conjugation composed with sigma.

    Linear, involutive, commutes with sigma; on root vectors it acts by
    units when sigma reverses the grading and by q-scaled opposites
    when sigma preserves it.
    """
    cache = _map_cache(basis)
    cached = cache.get(("theta", spec))
    if cached is not None:
        return cached
    sigma = build_sigma(basis, spec)
    omega = build_chevalley_involution(basis)
    theta = omega.compose(sigma)
    if not theta.is_involution():
        raise InvolutionError("Cartan involution failed involutivity")
    lhs = theta.compose(sigma)
    rhs = sigma.compose(theta)
    same = all(lhs.root_scalar[r] == rhs.root_scalar[r]
               and lhs.root_image[r] == rhs.root_image[r]
               for r in basis.rs.all_roots()) and lhs.cartan_sign == rhs.cartan_sign
    if not same:
        raise InvolutionError("Cartan involution does not commute with sigma")
    cache[("theta", spec)] = theta
    return theta


def chi_tilde(basis: NormalizedBasis, spec: SigmaSpec, root: Root) -> int:
    """Painted-set indicator on all roots, read off the built involution.

    Defined by the sign of the involution's scalar on the root vector:
    the scalar is sign * q-modulus with sign +-1.
    """
    if spec.kind != OMEGA:
        raise ValueError("chi is defined for the grading-reversing shape")
    sigma = build_sigma(basis, spec)
    r = root if basis.rs.is_positive(root) else negate(root)
    s = sigma.root_scalar[r] * GaussRational(basis.q(r))
    if s == ONE:
        return 0
    if s == MINUS_ONE:
        return 1
    raise InvolutionError(f"non-real painted sign {s} at {root}")


def chi_parity_formula(rs, painted, root: Root) -> int:
    """Additive parity formula: painted-coefficient sum + height + 1 mod 2."""
    total = sum(abs(c) for c in root) + 1
    for j in painted:
        total += abs(root[j])
    return total % 2


@dataclass
class Subalgebra:
    """Bracket-closed subspace with canonical generators and echelon span."""

    basis: NormalizedBasis
    generators: List[SparseVec]
    echelon: GaussianEchelon = field(default_factory=GaussianEchelon)

    def __post_init__(self):
        for g in self.generators:
            self.echelon.add(dict(g.entries))

    @property
    def dim(self) -> int:
        return self.echelon.dim

    def contains(self, v: SparseVec) -> bool:
        return self.echelon.contains(dict(v.entries))

    def reduce_mod(self, v: SparseVec) -> SparseVec:
        """Canonical representative of v in the quotient by this span."""
        return SparseVec(self.echelon.reduce(dict(v.entries)))

    def verify_closed(self) -> bool:
        for i, x in enumerate(self.generators):
            for y in self.generators[i:]:
                if not self.contains(self.basis.bracket(x, y)):
                    return False
        return True


def isotropy_algebra(basis: NormalizedBasis, spec: SigmaSpec,
                     check_closure: bool = True) -> Subalgebra:
    """Fixed algebra of the Cartan involution, by orbit analysis.

    Generators are exact eigenvectors assembled per theta-orbit of the
    basis lines, listed in canonical basis order; the span is verified
    to be bracket closed and to exhaust the +1 eigenspace.  The closure
    check runs at most once per case (the result is cached).
    """
    cache = _map_cache(basis)
    cached = cache.get(("isotropy", spec))
    if cached is not None:
        sub, closure_done = cached
        if check_closure and not closure_done:
            if not sub.verify_closed():
                raise InvolutionError("fixed space of the Cartan involution not closed")
            cache[("isotropy", spec)] = (sub, True)
        return sub
    theta = build_theta(basis, spec)
    rs = basis.rs
    gens: List[SparseVec] = []
    expected = 0
    # Cartan part
    for i in range(rs.rank):
        j = theta.mu[i]
        if j == i:
            if theta.cartan_sign == 1:
                gens.append(SparseVec.basis(i))
                expected += 1
        elif j > i:
            expected += 1
            gens.append(SparseVec.basis(i) + SparseVec.basis(j).scale(theta.cartan_sign))
    # root part
    seen = set()
    for root in rs.positive_roots + [negate(r) for r in rs.positive_roots]:
        if root in seen:
            continue
        img = theta.root_image[root]
        t = theta.root_scalar[root]
        if img == root:
            seen.add(root)
            if t == ONE:
                gens.append(basis.e_vec(root))
                expected += 1
        else:
            seen.add(root)
            seen.add(img)
            expected += 1
            v = basis.e_vec(root) + basis.e_vec(img, t)
            gens.append(v)
    gens.sort(key=lambda v: min(v.entries))
    sub = Subalgebra(basis, gens)
    if sub.dim != expected:
        raise InvolutionError("fixed-space generators are not independent")
    if check_closure and not sub.verify_closed():
        raise InvolutionError("fixed space of the Cartan involution not closed")
    cache[("isotropy", spec)] = (sub, check_closure)
    return sub


def theta_eigenspace_dim(basis: NormalizedBasis, spec: SigmaSpec, sign: int) -> int:
    """Dimension of the +-1 eigenspace of the Cartan involution."""
    theta = build_theta(basis, spec)
    rs = basis.rs
    dim = 0
    for i in range(rs.rank):
        j = theta.mu[i]
        if j == i:
            dim += 1 if theta.cartan_sign == sign else 0
        elif j > i:
            dim += 1
    seen = set()
    for root in rs.all_roots():
        if root in seen:
            continue
        img = theta.root_image[root]
        if img == root:
            seen.add(root)
            if theta.root_scalar[root] == GaussRational(sign):
                dim += 1
        else:
            seen.add(root)
            seen.add(img)
            dim += 1
    return dim


def compact_form_check(basis: NormalizedBasis) -> bool:
    """The compact conjugation fixes the expected real spanning set.

    The q-scaled combinations i*h, q*e(a) - e(-a), i*(q*e(a) + e(-a))
    are each fixed and together span a real form of full dimension.
    """
    omega = build_chevalley_involution(basis)
    rs = basis.rs
    count = 0
    for i in range(rs.rank):
        v = SparseVec.basis(i, GaussRational(0, 1))
        if not omega.apply(v) == v:
            return False
        count += 1
    for alpha in rs.positive_roots:
        q = GaussRational(basis.q(alpha))
        a = basis.e_vec(alpha, q) - basis.e_vec(negate(alpha))
        bvec = basis.e_vec(alpha, q * GaussRational(0, 1)) \
            + basis.e_vec(negate(alpha), GaussRational(0, 1))
        if not omega.apply(a) == a:
            return False
        if not omega.apply(bvec) == bvec:
            return False
        count += 2
    return count == basis.dim
