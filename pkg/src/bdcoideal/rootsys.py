"""Irreducible finite root systems with exact Killing-form data.

Simple roots follow the Bourbaki labeling (A_n chain left to right,
B_n with the short root last, C_n with the long root last, D_n forked
at the end, E-series with the branch node second).  Positive roots are
stored as integer coefficient vectors over the simple roots, ordered
by height then lexicographically, which fixes every downstream basis
order.

The Killing form is computed from the trace identity: restricted to a
Cartan subalgebra it equals the sum over roots of the squared root
functionals.  Everything is exact rational.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import invert_matrix

Root = Tuple[int, ...]
Perm = Tuple[int, ...]  # images of simple-root indices (0-based)

FAMILIES = "ABCDEFG"

POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        fam, n = self.family, self.rank
        ok = (
            (fam == "A" and n >= 1)
            or (fam == "B" and n >= 2)
            or (fam == "C" and n >= 2)
            or (fam == "D" and n >= 3)
            or (fam == "E" and n in (6, 7, 8))
            or (fam == "F" and n == 4)
            or (fam == "G" and n == 2)
        )
        if not ok:
            raise ValueError(f"no irreducible system of type {fam}{n}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _bonds(t: DynkinType) -> List[Tuple[int, int]]:
    n = t.rank
    if t.family in "ABCFG":
        return [(i, i + 1) for i in range(n - 1)]
    if t.family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    # E-series: chain 1-3-4-5-...-n with the branch node 2 attached to 4
    chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
    return [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)] + [(1, 3)]


def _root_lengths(t: DynkinType) -> List[Fraction]:
    """Half squared lengths (alpha_j, alpha_j)/2 in a basic normalization."""
    n = t.rank
    if t.family in "ADE":
        return [Fraction(1)] * n
    if t.family == "B":
        return [Fraction(1)] * (n - 1) + [Fraction(1, 2)]
    if t.family == "C":
        return [Fraction(1)] * (n - 1) + [Fraction(2)]
    if t.family == "F":
        return [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 2)]
    return [Fraction(1), Fraction(3)]  # G2: alpha_1 short, alpha_2 long


def _cartan_matrix(t: DynkinType) -> List[List[int]]:
    n = t.rank
    d = _root_lengths(t)
    # (alpha_i, alpha_j) = -max(d_i, d_j) on bonds of these diagrams
    s = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        s[i][i] = 2 * d[i]
    for i, j in _bonds(t):
        s[i][j] = s[j][i] = -max(d[i], d[j])
    c = [[int(2 * s[i][j] / (2 * d[j])) for j in range(n)] for i in range(n)]
    return c


class RootSystem:
    """Positive roots, Cartan matrix and exact Killing Gram matrix."""

    def __init__(self, dynkin_type: DynkinType):
        self.type = dynkin_type
        self.rank = dynkin_type.rank
        self.cartan_matrix = _cartan_matrix(dynkin_type)
        self._half_lengths = _root_lengths(dynkin_type)
        self.basic_gram = [
            [self.cartan_matrix[i][j] * self._half_lengths[j]
             for j in range(self.rank)]
            for i in range(self.rank)
        ]
        self.positive_roots = self._enumerate_positive()
        self._pos_set = set(self.positive_roots)
        self.root_index = {r: k for k, r in enumerate(self.positive_roots)}
        expected = POSITIVE_COUNTS[dynkin_type.family](self.rank)
        if len(self.positive_roots) != expected:
            raise AssertionError(
                f"{dynkin_type}: found {len(self.positive_roots)} positive roots,"
                f" expected {expected}"
            )
        self.killing_gram = self._killing_gram()
        self._q_cache: Dict[Root, Fraction] = {}
        self._gram_inverse: Optional[List[List[Fraction]]] = None
        self._bracket_pairs: Optional[List[Tuple[Root, Root]]] = None

    # -- construction ---------------------------------------------------

    def _pairing(self, root: Root, j: int) -> int:
        """Cartan pairing of `root` with the j-th simple coroot."""
        return sum(c * self.cartan_matrix[i][j] for i, c in enumerate(root) if c)

    def _enumerate_positive(self) -> List[Root]:
        n = self.rank
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        known = set(simple)
        level = list(simple)
        ordered = list(simple)
        while level:
            nxt = set()
            for gamma in level:
                for j in range(n):
                    if gamma == simple[j]:
                        continue
                    p = 0
                    down = list(gamma)
                    while True:
                        down[j] -= 1
                        if tuple(down) in known:
                            p += 1
                        else:
                            break
                    if p - self._pairing(gamma, j) > 0:
                        up = list(gamma)
                        up[j] += 1
                        cand = tuple(up)
                        if cand not in known:
                            nxt.add(cand)
            for r in sorted(nxt):
                known.add(r)
                ordered.append(r)
            level = sorted(nxt)
        ordered.sort(key=lambda r: (sum(r), r))
        return ordered

    def _killing_gram(self) -> List[List[Fraction]]:
        n = self.rank
        s = self.basic_gram
        k = [[Fraction(0)] * n for _ in range(n)]
        for gamma in self.positive_roots:
            v = [sum(Fraction(c) * s[i][j] for i, c in enumerate(gamma))
                 for j in range(n)]
            for a in range(n):
                for b in range(n):
                    k[a][b] += 2 * v[a] * v[b]  # both signs of the root
        kinv = invert_matrix(k)
        g = [[Fraction(0)] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                g[a][b] = sum(s[a][i] * kinv[i][j] * s[b][j]
                              for i in range(n) for j in range(n))
        return g

    # -- queries ----------------------------------------------------------

    def is_root(self, v: Root) -> bool:
        if all(c >= 0 for c in v):
            return v in self._pos_set
        if all(c <= 0 for c in v):
            return tuple(-c for c in v) in self._pos_set
        return False

    def is_positive(self, v: Root) -> bool:
        return v in self._pos_set

    def all_roots(self) -> List[Root]:
        return self.positive_roots + [negate(r) for r in self.positive_roots]

    def killing_form(self, lam: Sequence[Fraction | int],
                     mu: Sequence[Fraction | int]) -> Fraction:
        g = self.killing_gram
        total = Fraction(0)
        for i, a in enumerate(lam):
            if not a:
                continue
            for j, b in enumerate(mu):
                if b:
                    total += Fraction(a) * g[i][j] * Fraction(b)
        return total

    def half_length(self, root: Root) -> Fraction:
        """B(root, root)/2, cached."""
        key = root if self.is_positive(root) else negate(root)
        q = self._q_cache.get(key)
        if q is None:
            q = self.killing_form(key, key) / 2
            self._q_cache[key] = q
        return q

    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def gram_inverse(self) -> List[List[Fraction]]:
        if self._gram_inverse is None:
            self._gram_inverse = invert_matrix(self.killing_gram)
        return self._gram_inverse

    def bracket_pairs(self) -> List[Tuple[Root, Root]]:
        """All ordered root pairs whose sum is again a root (cached)."""
        if self._bracket_pairs is None:
            roots = self.all_roots()
            self._bracket_pairs = [
                (x, y) for x in roots for y in roots if self.is_root(add(x, y))
            ]
        return self._bracket_pairs

    def root_string_down(self, beta: Root, alpha: Root) -> int:
        """Largest k with beta - k*alpha a root (alpha != +-beta)."""
        p = 0
        cur = sub(beta, alpha)
        while self.is_root(cur):
            p += 1
            cur = sub(cur, alpha)
        return p

    # -- diagram automorphisms ---------------------------------------------

    def diagram_automorphisms(self) -> List[Perm]:
        """All Cartan-matrix-preserving permutations of order dividing 2."""
        n = self.rank
        c = self.cartan_matrix
        out = []
        for perm in itertools.permutations(range(n)):
            if any(perm[perm[i]] != i for i in range(n)):
                continue
            if all(c[perm[i]][perm[j]] == c[i][j]
                   for i in range(n) for j in range(n)):
                out.append(tuple(perm))
        out.sort()
        return out

    def apply_automorphism(self, perm: Perm, root: Root) -> Root:
        """Linear extension of a diagram automorphism to any root."""
        img = [0] * self.rank
        for i, c in enumerate(root):
            if c:
                img[perm[i]] = c
        out = tuple(img)
        if not self.is_root(out):
            raise AssertionError("diagram automorphism left the root system")
        return out

    # -- serialization ------------------------------------------------------

    def to_json_doc(self) -> dict:
        return {
            "schema": 1,
            "type": self.type.family,
            "rank": self.rank,
            "cartan_matrix": self.cartan_matrix,
            "positive_roots": [list(r) for r in self.positive_roots],
            "killing_gram": [[str(x) for x in row] for row in self.killing_gram],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_doc(), indent=2, sort_keys=True)

    def __repr__(self) -> str:
        return f"RootSystem({self.type})"


def negate(r: Root) -> Root:
    return tuple(-c for c in r)

def add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))

def sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))

def height(r: Root) -> int:
    """Coefficient sum of a positive root."""
    if any(c < 0 for c in r):
        raise ValueError("height is defined for positive roots")
    return sum(r)

def signed_height(r: Root) -> int:
    return sum(r)

def is_negative(r: Root) -> bool:
    return all(c <= 0 for c in r) and any(c < 0 for c in r)


_CACHE: Dict[Tuple[str, int], RootSystem] = {}


def build_root_system(t: DynkinType | str, rank: Optional[int] = None) -> RootSystem:
    """Construct (and cache) the root system of the given type."""
    if isinstance(t, str):
        if rank is None:
            raise ValueError("rank required when passing a family letter")
        t = DynkinType(t, rank)
    key = (t.family, t.rank)
    rs = _CACHE.get(key)
    if rs is None:
        rs = RootSystem(t)
        _CACHE[key] = rs
    return rs
