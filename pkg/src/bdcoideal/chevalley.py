"""Chevalley structure constants and the Killing-normalized basis.

Signs are fixed by the extraspecial-pair convention: for each
composite positive root, the decomposition whose first summand is
smallest in the height-then-lex root order gets the positive constant
p+1, and every other pair follows from antisymmetry, the rescaling
rule for opposite pairs and the four-root Jacobi relation.  The
result is deterministic, so structure-constant tables serve as golden
regression data.

Normalization: the positive root vectors are the integral ones, the
negative vectors are rescaled so that the Killing pairing of opposite
vectors is exactly one.  Constants on positive pairs stay integers;
on other sign classes they acquire rational factors built from half
squared root lengths.  When a diagram automorphism `mu` must act on
the algebra, the basis is further rescaled by fourth roots of unity
(the only place complex entries appear) so that the automorphism
permutes the root vectors with no sign defect.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple

from .rootsys import (DynkinType, Perm, Root, RootSystem, add, build_root_system,
                      height, negate, sub)
from .scalars import GaussRational, I, MINUS_I, MINUS_ONE, ONE, ZERO
from .tensors import SparseTensor2, SparseVec

PosPair = Tuple[Root, Root]


class _PlainConstants:
    """Structure constants of the normalized basis before mu-adaptation.

    All values are rational; on pairs of positive roots they are the
    Chevalley integers +-(p+1).
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.pos: Dict[PosPair, Fraction] = {}
        self._build()

    def _q(self, r: Root) -> Fraction:
        return self.rs.half_length(r)

    def _pos_lookup(self, a: Root, b: Root) -> Fraction:
        if self.rs.root_index[a] < self.rs.root_index[b]:
            return self.pos[(a, b)]
        return -self.pos[(b, a)]

    def lookup(self, x: Root, y: Root) -> Fraction:
        """Constant for an arbitrary pair; zero when the sum is not a root.

        Mixed-sign pairs rotate through the zero-sum triple
        (x, y, -x-y) until both slots share a sign; all-negative pairs
        reduce to positive ones by the opposite-pair rescaling rule.
        """
        z = add(x, y)
        if not self.rs.is_root(z):
            return Fraction(0)
        xpos, ypos = self.rs.is_positive(x), self.rs.is_positive(y)
        if xpos and ypos:
            return self._pos_lookup(x, y)
        if not xpos and not ypos:
            a, b = negate(x), negate(y)
            return -(self._q(a) * self._q(b) / self._q(add(a, b))) \
                * self._pos_lookup(a, b)
        # mixed signs: one rotation of (x, y, -z) has equal signs
        if self.rs.is_positive(z) == xpos:
            # (-z, x) shares x's sign pattern? rotate to (y, -z) instead
            return self.lookup(y, negate(z))
        return self.lookup(negate(z), x)

    def _build(self) -> None:
        rs = self.rs
        order = rs.root_index
        for gamma in rs.positive_roots:
            if height(gamma) < 2:
                continue
            pairs = []
            for alpha in rs.positive_roots:
                if order[alpha] >= order[gamma]:
                    break
                beta = sub(gamma, alpha)
                if rs.is_positive(beta) and order[alpha] < order[beta]:
                    pairs.append((alpha, beta))
            pairs.sort(key=lambda p: order[p[0]])
            a1, b1 = pairs[0]  # extraspecial pair of gamma
            m_extra = Fraction(rs.root_string_down(b1, a1) + 1)
            self.pos[(a1, b1)] = m_extra
            for alpha, beta in pairs[1:]:
                # four-root Jacobi relation on (-a1, alpha, beta, -b1);
                # the divisor is the opposite-pair constant of (a1, b1)
                num = (self.lookup(negate(a1), alpha) * self.lookup(beta, negate(b1))
                       + self.lookup(beta, negate(a1)) * self.lookup(alpha, negate(b1)))
                val = num * self._q(gamma) / (self._q(a1) * self._q(b1) * m_extra)
                assert val.denominator == 1, "constant on a positive pair must be integral"
                self.pos[(alpha, beta)] = val


_PLAIN_CACHE: Dict[Tuple[str, int], _PlainConstants] = {}


def _plain(rs: RootSystem) -> _PlainConstants:
    key = (rs.type.family, rs.rank)
    t = _PLAIN_CACHE.get(key)
    if t is None:
        t = _PlainConstants(rs)
        _PLAIN_CACHE[key] = t
    return t


def chevalley_constants(rs: RootSystem) -> Dict[PosPair, int]:
    """Integer constants on ordered positive pairs (alpha before beta)."""
    return {k: int(v) for k, v in _plain(rs).pos.items()}


def plain_constant(rs: RootSystem, x: Root, y: Root) -> Fraction:
    """Normalized-basis constant for any root pair, mu = identity."""
    return _plain(rs).lookup(x, y)


def mu_sign_character(rs: RootSystem, mu: Perm) -> Dict[Root, int]:
    """Signs of the lifted diagram automorphism on positive root vectors.

    The linear lift fixing the simple root vectors sends the vector of
    gamma to sign(gamma) times the vector of mu(gamma); the sign is
    this basis's equivariance defect.
    """
    plain = _plain(rs)
    signs: Dict[Root, int] = {}
    for gamma in rs.positive_roots:
        if height(gamma) == 1:
            signs[gamma] = 1
            continue
        i = next(k for k in range(rs.rank)
                 if gamma[k] and rs.is_positive(_minus_simple(gamma, k)))
        alpha = _simple(rs.rank, i)
        delta = sub(gamma, alpha)
        ratio = (plain.lookup(rs.apply_automorphism(mu, alpha),
                              rs.apply_automorphism(mu, delta))
                 / plain.lookup(alpha, delta))
        s = signs[delta] * ratio
        assert s in (1, -1), "equivariance defect must be a sign"
        signs[gamma] = int(s)
    for gamma in rs.positive_roots:
        mg = rs.apply_automorphism(mu, gamma)
        assert signs[mg] == signs[gamma], "lift must square to the identity"
    return signs


def _simple(rank: int, i: int) -> Root:
    return tuple(1 if k == i else 0 for k in range(rank))


def _minus_simple(gamma: Root, i: int) -> Root:
    return tuple(c - 1 if k == i else c for k, c in enumerate(gamma))


def _adaptation_units(rs: RootSystem, mu: Perm) -> Dict[Root, GaussRational]:
    """Fourth-root-of-unity rescale killing the sign defect of `mu`.

    Orbits {gamma, mu(gamma)} of swapped roots absorb the defect into
    one leg; a defect on a mu-fixed root cannot be repaired by real
    signs and takes the unit i instead.
    """
    units: Dict[Root, GaussRational] = {}
    if mu == tuple(range(rs.rank)):
        for gamma in rs.all_roots():
            units[gamma] = ONE
        return units
    signs = mu_sign_character(rs, mu)
    for gamma in rs.positive_roots:
        if gamma in units:
            continue
        mg = rs.apply_automorphism(mu, gamma)
        if mg == gamma:
            if signs[gamma] == 1:
                units[gamma] = ONE
                units[negate(gamma)] = ONE
            else:
                units[gamma] = I
                units[negate(gamma)] = MINUS_I
        else:
            units[gamma] = ONE
            units[negate(gamma)] = ONE
            s = ONE if signs[gamma] == 1 else MINUS_ONE
            units[mg] = s
            units[negate(mg)] = s
    return units


class NormalizedBasis:
    """Root vectors normalized to unit Killing pairing across opposites.

    Basis order: Cartan duals of the simple roots first, then positive
    root vectors in root order, then negative ones.  With a nontrivial
    `mu` the table satisfies N(mu x, mu y) = conj(N(x, y)) for every
    pair, so the diagram automorphism acts by plainly permuting the
    root vectors.
    """

    def __init__(self, rs: RootSystem, mu: Optional[Perm] = None):
        self.rs = rs
        self.rank = rs.rank
        self.mu: Perm = mu if mu is not None else tuple(range(rs.rank))
        if self.mu not in rs.diagram_automorphisms():
            raise ValueError("mu must be a diagram automorphism of order <= 2")
        self._units = _adaptation_units(rs, self.mu)
        self._n_cache: Dict[Tuple[Root, Root], GaussRational] = {}
        self._bracket_cache: Dict[Tuple[int, int], SparseVec] = {}
        roots = rs.positive_roots + [negate(r) for r in rs.positive_roots]
        self.index_of_root = {r: self.rank + k for k, r in enumerate(roots)}
        self.root_of_index = {v: k for k, v in self.index_of_root.items()}
        self.dim = self.rank + len(roots)

    # -- indexing -------------------------------------------------------

    def idx_h(self, i: int) -> int:
        assert 0 <= i < self.rank
        return i

    def idx_e(self, root: Root) -> int:
        return self.index_of_root[root]

    def is_cartan_index(self, idx: int) -> bool:
        return idx < self.rank

    def h_vec(self, coeffs) -> SparseVec:
        """Killing dual of a root-lattice vector over the simple duals."""
        v = SparseVec()
        for i, c in enumerate(coeffs):
            if c:
                v.add_term(i, GaussRational(c))
        return v

    def e_vec(self, root: Root, coeff=1) -> SparseVec:
        return SparseVec.basis(self.idx_e(root), coeff)

    def describe_index(self, idx: int) -> str:
        if idx < self.rank:
            return f"h{idx + 1}"
        root = self.root_of_index[idx]
        return "e" + "".join(str(c) for c in root) if self.rank > 1 \
            else f"e({root[0]})"

    # -- scalars ----------------------------------------------------------

    def q(self, root: Root) -> Fraction:
        """Half squared Killing length of the root."""
        return self.rs.half_length(root)

    def unit(self, root: Root) -> GaussRational:
        return self._units[root]

    def structure_constant(self, x: Root, y: Root) -> GaussRational:
        """N with [vector of x, vector of y] = N * vector of x+y."""
        key = (x, y)
        n = self._n_cache.get(key)
        if n is None:
            z = add(x, y)
            if not self.rs.is_root(z):
                n = ZERO
            else:
                base = plain_constant(self.rs, x, y)
                n = (self._units[x] * self._units[y] / self._units[z]) * base
            self._n_cache[key] = n
        return n

    # -- bracket ----------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> SparseVec:
        key = (i, j)
        out = self._bracket_cache.get(key)
        if out is not None:
            return out
        r = self.rank
        if i < r and j < r:
            out = SparseVec()
        elif i < r:
            gamma = self.root_of_index[j]
            c = self.rs.killing_form(gamma, _simple(r, i))
            out = self.e_vec(gamma, GaussRational(c))
        elif j < r:
            out = -self.bracket_basis(j, i)
        else:
            x = self.root_of_index[i]
            y = self.root_of_index[j]
            z = add(x, y)
            if not any(z):
                out = self.h_vec(x)
            elif self.rs.is_root(z):
                out = self.e_vec(z, self.structure_constant(x, y))
            else:
                out = SparseVec()
        self._bracket_cache[key] = out
        return out

    def bracket(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out = SparseVec()
        for i, a in x.entries.items():
            for j, b in y.entries.items():
                base = self.bracket_basis(i, j)
                if base.is_zero():
                    continue
                c = a * b
                for k, v in base.entries.items():
                    out.add_term(k, c * v)
        return out

    def ad_tensor(self, u: SparseVec, t: SparseTensor2) -> SparseTensor2:
        """(ad u tensor id + id tensor ad u) applied to t."""
        out = SparseTensor2()
        images: Dict[int, SparseVec] = {}

        def act(idx: int) -> SparseVec:
            v = images.get(idx)
            if v is None:
                v = SparseVec()
                for ui, uc in u.entries.items():
                    base = self.bracket_basis(ui, idx)
                    for k, w in base.entries.items():
                        v.add_term(k, uc * w)
                images[idx] = v
            return v

        for (i, j), c in t.entries.items():
            for k, v in act(i).entries.items():
                out.add_term((k, j), c * v)
            for k, v in act(j).entries.items():
                out.add_term((i, k), c * v)
        return out

    # -- Killing pairing on basis vectors ----------------------------------

    def killing_basis(self, i: int, j: int) -> GaussRational:
        r = self.rank
        if i < r and j < r:
            return GaussRational(self.rs.killing_gram[i][j])
        if i < r or j < r:
            return ZERO
        x = self.root_of_index[i]
        y = self.root_of_index[j]
        if not any(add(x, y)):
            return ONE
        return ZERO

    def killing_pair(self, x: SparseVec, y: SparseVec) -> GaussRational:
        total = ZERO
        for i, a in x.entries.items():
            for j, b in y.entries.items():
                k = self.killing_basis(i, j)
                if not k.is_zero():
                    total = total + a * b * k
        return total

    # -- serialization -------------------------------------------------------

    def constants_json_doc(self) -> dict:
        order = self.rs.root_index
        pairs = []
        for (x, y), m in sorted(_plain(self.rs).pos.items(),
                                key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
            pairs.append({"alpha": list(x), "beta": list(y),
                          "integer": int(m),
                          "normalized": str(self.structure_constant(x, y))})
        return {"schema": 1, "type": self.rs.type.family, "rank": self.rank,
                "mu": list(self.mu), "pairs": pairs}

    def __repr__(self) -> str:
        return f"NormalizedBasis({self.rs.type}, mu={self.mu})"


_BASIS_CACHE: Dict[Tuple[str, int, Perm], NormalizedBasis] = {}


def normalize(rs: RootSystem, mu: Optional[Perm] = None) -> NormalizedBasis:
    """The Killing-normalized (and mu-adapted) basis, cached."""
    key = (rs.type.family, rs.rank, mu if mu is not None else tuple(range(rs.rank)))
    b = _BASIS_CACHE.get(key)
    if b is None:
        b = NormalizedBasis(rs, mu)
        _BASIS_CACHE[key] = b
    return b


def basis_for(family: str, rank: int, mu: Optional[Perm] = None) -> NormalizedBasis:
    return normalize(build_root_system(DynkinType(family, rank)), mu)
