"""Exact linear algebra over Q and Q(i).

Two layers:

* dense rational systems A x = b solved by fraction-free elimination
  into an :class:`AffineSolutionSpace`;
* an incremental reduced echelon form over Q(i)
  (:class:`GaussianEchelon`) for span, membership and quotient
  projections of sparse vectors.

Pivoting is deterministic: columns are scanned left to right and the
lowest-indexed usable row is taken, so outputs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .scalars import GaussRational

Vec = List[Fraction]
Mat = List[List[Fraction]]


@dataclass
class AffineSolutionSpace:
    """All solutions of a rational linear system, or emptiness.

    The solution set is ``particular + span(basis)``; ``particular`` is
    None exactly when the system is inconsistent.
    """

    particular: Optional[Vec]
    basis: List[Vec] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def dim(self) -> int:
        if self.is_empty:
            raise ValueError("empty solution space has no dimension")
        return len(self.basis)

    def point(self, weights: Sequence[Fraction | int] = ()) -> Vec:
        """A concrete solution: particular + sum w_k * basis_k."""
        if self.particular is None:
            raise ValueError("no solutions")
        p = list(self.particular)
        for w, b in zip(weights, self.basis):
            w = Fraction(w)
            for k, bk in enumerate(b):
                p[k] += w * bk
        return p

    def sample_points(self, count: int) -> List[Vec]:
        """Deterministic sample of `count` solutions."""
        pts = [self.point()]
        k = 0
        step = 1
        while len(pts) < count:
            if self.basis:
                w = [Fraction(0)] * len(self.basis)
                w[k % len(self.basis)] = Fraction(step)
                pts.append(self.point(w))
                k += 1
                if k % len(self.basis) == 0:
                    step += 1
            else:
                pts.append(self.point())
        return pts[:count]


def _clear_denominators(row: Vec) -> List[int]:
    lcm = 1
    for x in row:
        d = x.denominator
        if d != 1:
            g = _gcd(lcm, d)
            lcm = lcm // g * d
    return [int(x * lcm) for x in row]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def solve_linear_system(a: Mat, b: Vec) -> AffineSolutionSpace:
    """Exact affine solution set of A x = b (possibly empty).

    Fraction-free (Bareiss) forward elimination on the integer-cleared
    augmented matrix, then rational back-substitution.
    """
    m = len(a)
    if m != len(b):
        raise ValueError("row count of A does not match b")
    if m == 0:
        # no constraints: everything solves
        return AffineSolutionSpace([], [])
    n = len(a[0])
    for row in a:
        if len(row) != n:
            raise ValueError("ragged matrix")

    aug = [_clear_denominators([Fraction(x) for x in row] + [Fraction(bv)])
           for row, bv in zip(a, b)]

    pivots: List[int] = []  # column index per pivot row
    prev = 1
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if aug[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            aug[r], aug[pr] = aug[pr], aug[r]
        piv = aug[r][c]
        # one-step Bareiss update; the division by the previous pivot is exact
        for i in range(r + 1, m):
            fac = aug[i][c]
            for j in range(c + 1, n + 1):
                aug[i][j] = (piv * aug[i][j] - fac * aug[r][j]) // prev
            aug[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break

    # consistency: any zero row of A with nonzero rhs kills the system
    for i in range(r, m):
        if aug[i][n]:
            return AffineSolutionSpace(None, [])

    free_cols = [c for c in range(n) if c not in pivots]

    def back_solve(rhs_scale: Fraction, free_assign: Dict[int, Fraction]) -> Vec:
        x: Vec = [Fraction(0)] * n
        for c, v in free_assign.items():
            x[c] = v
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            s = Fraction(aug[i][n]) * rhs_scale
            for j in range(c + 1, n):
                if aug[i][j]:
                    s -= Fraction(aug[i][j]) * x[j]
            x[c] = s / aug[i][c]
        return x

    particular = back_solve(Fraction(1), {})
    basis = [back_solve(Fraction(0), {c: Fraction(1)}) for c in free_cols]
    return AffineSolutionSpace(particular, basis)


def matrix_rank(a: Mat) -> int:
    if not a:
        return 0
    ech = GaussianEchelon()
    for row in a:
        ech.add({j: GaussRational(x) for j, x in enumerate(row) if x})
    return ech.dim


def invert_matrix(a: Mat) -> Mat:
    """Exact inverse of a square rational matrix."""
    n = len(a)
    cols: List[Vec] = []
    for k in range(n):
        e = [Fraction(0)] * n
        e[k] = Fraction(1)
        sol = solve_linear_system(a, e)
        if sol.is_empty or sol.basis:
            raise ValueError("matrix is singular")
        cols.append(sol.particular)  # type: ignore[arg-type]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


SparseRow = Dict[int, GaussRational]


class GaussianEchelon:
    """Incremental reduced echelon span over Q(i) for sparse rows.

    Rows are kept fully reduced with leading coefficient one, so
    :meth:`reduce` yields a canonical representative modulo the span.
    """

    def __init__(self):
        self.rows: List[SparseRow] = []
        self.pivots: List[int] = []
        self._by_pivot: Dict[int, SparseRow] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: SparseRow) -> SparseRow:
        """Canonical representative of `vec` modulo the current span.

        Full reduction means eliminating a pivot only introduces
        non-pivot indices, so one pass over the sorted support suffices.
        """
        v = dict(vec)
        by_pivot = self._by_pivot
        for p in sorted(v):
            row = by_pivot.get(p)
            if row is None:
                continue
            c = v.get(p)
            if c is None or c.is_zero():
                continue
            for j, rj in row.items():
                nv = v.get(j)
                nv = (nv - c * rj) if nv is not None else -(c * rj)
                if nv.is_zero():
                    v.pop(j, None)
                else:
                    v[j] = nv
        return {j: c for j, c in v.items() if not c.is_zero()}

    def contains(self, vec: SparseRow) -> bool:
        return not self.reduce(vec)

    def add(self, vec: SparseRow) -> bool:
        """Insert `vec`; returns True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        lead = v[piv]
        v = {j: c / lead for j, c in v.items()}
        # back-reduce existing rows to keep the form fully reduced
        for k, row in enumerate(self.rows):
            c = row.get(piv)
            if c is None or c.is_zero():
                continue
            new = dict(row)
            for j, vj in v.items():
                nv = new.get(j)
                nv = (nv - c * vj) if nv is not None else -(c * vj)
                if nv.is_zero():
                    new.pop(j, None)
                else:
                    new[j] = nv
            self.rows[k] = new
        at = 0
        while at < len(self.pivots) and self.pivots[at] < piv:
            at += 1
        self.rows.insert(at, v)
        self.pivots.insert(at, piv)
        self._by_pivot = dict(zip(self.pivots, self.rows))
        return True

    def copy(self) -> "GaussianEchelon":
        e = GaussianEchelon()
        e.rows = [dict(r) for r in self.rows]
        e.pivots = list(self.pivots)
        e._by_pivot = dict(zip(e.pivots, e.rows))
        return e
