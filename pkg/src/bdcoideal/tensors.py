"""Sparse vectors and tensors over Q(i).

Entries are keyed by integer basis indices; zero values are never
stored, so equality of dicts is equality of tensors.  Iteration order
in reports is sorted, keeping all output deterministic.
"""

from __future__ import annotations

from typing import Dict, Iterator, Tuple

from .scalars import GaussRational, Scalarish, ZERO

Entry = Tuple[int, GaussRational]


class SparseVec:
    """Sparse element of the underlying vector space."""

    __slots__ = ("entries",)

    def __init__(self, entries: Dict[int, GaussRational] | None = None):
        self.entries: Dict[int, GaussRational] = {}
        if entries:
            for k, v in entries.items():
                if not v.is_zero():
                    self.entries[k] = v

    @staticmethod
    def basis(index: int, coeff: Scalarish = 1) -> "SparseVec":
        c = GaussRational.of(coeff)
        return SparseVec({index: c} if not c.is_zero() else {})

    def is_zero(self) -> bool:
        return not self.entries

    def items(self) -> Iterator[Entry]:
        return iter(sorted(self.entries.items()))

    def get(self, index: int) -> GaussRational:
        return self.entries.get(index, ZERO)

    def add_term(self, index: int, coeff: GaussRational) -> None:
        cur = self.entries.get(index)
        new = coeff if cur is None else cur + coeff
        if new.is_zero():
            self.entries.pop(index, None)
        else:
            self.entries[index] = new

    def __add__(self, other: "SparseVec") -> "SparseVec":
        out = SparseVec(dict(self.entries))
        for k, v in other.entries.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        out = SparseVec(dict(self.entries))
        for k, v in other.entries.items():
            out.add_term(k, -v)
        return out

    def __neg__(self) -> "SparseVec":
        return SparseVec({k: -v for k, v in self.entries.items()})

    def scale(self, c: Scalarish) -> "SparseVec":
        cc = GaussRational.of(c)
        if cc.is_zero():
            return SparseVec()
        return SparseVec({k: cc * v for k, v in self.entries.items()})

    def conjugated(self) -> "SparseVec":
        return SparseVec({k: v.conjugate() for k, v in self.entries.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseVec) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(sorted((k, v.re, v.im) for k, v in self.entries.items())))

    def __repr__(self) -> str:
        terms = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"SparseVec({{{terms}}})"


class SparseTensor2:
    """Sparse element of the two-fold tensor square."""

    __slots__ = ("entries",)

    def __init__(self, entries: Dict[Tuple[int, int], GaussRational] | None = None):
        self.entries: Dict[Tuple[int, int], GaussRational] = {}
        if entries:
            for k, v in entries.items():
                if not v.is_zero():
                    self.entries[k] = v

    def is_zero(self) -> bool:
        return not self.entries

    def items(self) -> Iterator[Tuple[Tuple[int, int], GaussRational]]:
        return iter(sorted(self.entries.items()))

    def add_term(self, key: Tuple[int, int], coeff: GaussRational) -> None:
        cur = self.entries.get(key)
        new = coeff if cur is None else cur + coeff
        if new.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = new

    def add_product(self, x: SparseVec, y: SparseVec, c: Scalarish = 1) -> None:
        """In-place accumulate c * (x tensor y)."""
        cc = GaussRational.of(c)
        if cc.is_zero():
            return
        for i, a in x.entries.items():
            for j, b in y.entries.items():
                self.add_term((i, j), cc * a * b)

    def __add__(self, other: "SparseTensor2") -> "SparseTensor2":
        out = SparseTensor2(dict(self.entries))
        for k, v in other.entries.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other: "SparseTensor2") -> "SparseTensor2":
        out = SparseTensor2(dict(self.entries))
        for k, v in other.entries.items():
            out.add_term(k, -v)
        return out

    def __neg__(self) -> "SparseTensor2":
        return SparseTensor2({k: -v for k, v in self.entries.items()})

    def scale(self, c: Scalarish) -> "SparseTensor2":
        cc = GaussRational.of(c)
        if cc.is_zero():
            return SparseTensor2()
        return SparseTensor2({k: cc * v for k, v in self.entries.items()})

    def dagger(self) -> "SparseTensor2":
        """Transposition of the two tensor slots."""
        return SparseTensor2({(j, i): v for (i, j), v in self.entries.items()})

    def conjugated(self) -> "SparseTensor2":
        return SparseTensor2({k: v.conjugate() for k, v in self.entries.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseTensor2) and self.entries == other.entries

    def __repr__(self) -> str:
        terms = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"SparseTensor2({{{terms}}})"


def tensor2(x: SparseVec, y: SparseVec, c: Scalarish = 1) -> SparseTensor2:
    out = SparseTensor2()
    out.add_product(x, y, c)
    return out


def wedge(x: SparseVec, y: SparseVec, c: Scalarish = 1) -> SparseTensor2:
    """c * (x ^ y) with the convention x ^ y = x tensor y - y tensor x."""
    out = SparseTensor2()
    out.add_product(x, y, c)
    out.add_product(y, x, GaussRational.of(c) * -1)
    return out


def conjugate_tensor(t: SparseTensor2) -> SparseTensor2:
    """Entrywise complex conjugation; involutive."""
    return t.conjugated()


class SparseTensor3:
    """Sparse element of the three-fold tensor power (residual checks)."""

    __slots__ = ("entries",)

    def __init__(self):
        self.entries: Dict[Tuple[int, int, int], GaussRational] = {}

    def add_term(self, key: Tuple[int, int, int], coeff: GaussRational) -> None:
        cur = self.entries.get(key)
        new = coeff if cur is None else cur + coeff
        if new.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = new

    def is_zero(self) -> bool:
        return not self.entries

    def items(self) -> Iterator[Tuple[Tuple[int, int, int], GaussRational]]:
        return iter(sorted(self.entries.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseTensor3) and self.entries == other.entries
