"""Exact sparse linear algebra over Q.

Vectors are sparse maps ``column -> coefficient``.  The elimination engine
(:class:`Echelon`) works fraction-free on primitive integer rows: a rational
input is scaled by the lcm of its denominators, every row keeps a positive
leading entry and a content of one, and a row is only divided through to a
unit pivot when a :class:`Subspace` is materialised.  The pivot of a row is
its smallest column, so the caller controls pivot priority by the way it
numbers columns.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

IntVec = dict[int, int]


class DimensionMismatch(ValueError):
    pass


class NestingError(ValueError):
    """A quotient was requested of spaces that are not nested."""


def primitive(vec: Mapping[int, int]) -> IntVec:
    """Divide out the content and make the leading entry positive."""
    if not vec:
        return {}
    g = 0
    for c in vec.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = vec[min(vec)]
    if lead < 0:
        g = -g
    if g == 1:
        return dict(vec)
    return {k: c // g for k, c in vec.items()}


def integralize(vec: Mapping[int, object]) -> IntVec:
    """Scale a rational vector to a primitive integer vector."""
    den = 1
    for c in vec.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    out = {}
    for k, c in vec.items():
        c = Fraction(c) * den
        if c:
            out[k] = c.numerator
    return primitive(out)


def _combine(v: IntVec, a: int, r: IntVec, b: int) -> IntVec:
    """``a*v - b*r`` with zero entries dropped."""
    if a != 1:
        out = {k: a * c for k, c in v.items()}
    else:
        out = dict(v)
    for k, c in r.items():
        s = out.get(k, 0) - b * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally built echelon basis of a subspace.

    Rows are stored by pivot column.  ``add`` inserts a vector and reports
    whether it raised the rank; ``reduce`` returns the fully reduced normal
    form of a vector modulo the span.  When a new vector lands on an existing
    pivot and is sparser than the stored row, the two swap roles so stored
    rows stay as sparse as the input allows.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: dict[int, IntVec] | None = None):
        self.rows: dict[int, IntVec] = rows if rows is not None else {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def copy(self) -> "Echelon":
        # stored rows are never mutated in place, so sharing them is safe
        return Echelon(dict(self.rows))

    def add(self, vec: Mapping[int, int]) -> int | None:
        """Insert an integer vector; return its new pivot or None if dependent."""
        v = dict(vec)
        rows = self.rows
        steps = 0
        while v:
            p = min(v)
            r = rows.get(p)
            if r is None:
                v = primitive(v)
                rows[p] = v
                return p
            if len(v) < len(r):
                v = primitive(v)
                rows[p] = v
                v, r = r, v
            a, b = r[p], v[p]
            g = gcd(a, b)
            v = _combine(v, a // g, r, b // g)
            steps += 1
            if steps & 31 == 0:
                v = primitive(v)
        return None

    def reduce(self, vec: Mapping[int, int]) -> IntVec:
        """Normal form: no surviving entry sits on a pivot column.

        The result is a positive multiple of the true rational remainder,
        which is all that rank and membership questions need.
        """
        v = dict(vec)
        rows = self.rows
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            p = heapq.heappop(heap)
            seen.discard(p)
            b = v.get(p)
            if not b:
                continue
            r = rows[p]
            a = r[p]
            g = gcd(a, b)
            if a < 0:
                g = -g
            v = _combine(v, a // g, r, b // g)
            for k in r:
                if k > p and k in rows and k not in seen and k in v:
                    seen.add(k)
                    heapq.heappush(heap, k)
        return primitive(v) if v else {}

    def contains(self, vec: Mapping[int, int]) -> bool:
        return not self.reduce(vec)

    def reduce_rows(self) -> "Echelon":
        """Back-substitute so every pivot column is zero in all other rows."""
        out: dict[int, IntVec] = {}
        for p in sorted(self.rows, reverse=True):
            red = Echelon(out).reduce(self.rows[p])
            out[p] = red
        return Echelon(out)

    def rational_rows(self) -> list[tuple[int, dict[int, Fraction]]]:
        """Fully reduced rows scaled to unit pivots, in pivot order."""
        reduced = self.reduce_rows()
        out = []
        for p in sorted(reduced.rows):
            r = reduced.rows[p]
            a = r[p]
            out.append((p, {k: Fraction(c, a) for k, c in sorted(r.items())}))
        return out


# --------------------------------------------------------------------------
# public value types


class SparseVec:
    """Rational vector in a coordinate space of fixed dimension."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Mapping[int, object] | None = None):
        ent = {}
        for k, c in (entries or {}).items():
            if not 0 <= k < dim:
                raise DimensionMismatch(f"index {k} outside ambient dimension {dim}")
            c = Fraction(c)
            if c:
                ent[k] = c
        self.dim = dim
        self.entries = ent

    @classmethod
    def basis(cls, dim: int, k: int, c=1) -> "SparseVec":
        return cls(dim, {k: c})

    @classmethod
    def dense(cls, values: Sequence[object]) -> "SparseVec":
        return cls(len(values), dict(enumerate(values)))

    def __add__(self, other: "SparseVec") -> "SparseVec":
        _same_dim(self.dim, other.dim)
        out = dict(self.entries)
        for k, c in other.entries.items():
            out[k] = out.get(k, 0) + c
        return SparseVec(self.dim, out)

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        return self + other * -1

    def __mul__(self, c) -> "SparseVec":
        return SparseVec(self.dim, {k: v * c for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseVec) and self.dim == other.dim and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"SparseVec({self.dim}, {dict(sorted(self.entries.items()))})"

    def as_int(self) -> IntVec:
        return integralize(self.entries)


def _same_dim(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"ambient dimensions differ: {a} vs {b}")


@dataclass(frozen=True)
class Subspace:
    """Subspace given by its reduced row-echelon basis (unique per subspace)."""

    dim: int
    rows: tuple[tuple[tuple[int, Fraction], ...], ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim, (), ())

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls(dim, tuple(((k, Fraction(1)),) for k in range(dim)), tuple(range(dim)))

    @classmethod
    def from_echelon(cls, dim: int, ech: Echelon) -> "Subspace":
        rows = ech.rational_rows()
        return cls(dim, tuple(tuple(r.items()) for _, r in rows), tuple(p for p, _ in rows))

    def basis(self) -> list[SparseVec]:
        return [SparseVec(self.dim, dict(r)) for r in self.rows]

    def echelon(self) -> Echelon:
        return Echelon({p: integralize(dict(r)) for p, r in zip(self.pivots, self.rows)})

    def __len__(self) -> int:
        return self.rank


def span(vectors: Iterable[SparseVec], dim: int | None = None) -> Subspace:
    """Reduced echelon basis of the span; ``dim`` is needed for an empty list."""
    vectors = list(vectors)
    if dim is None:
        if not vectors:
            raise ValueError("ambient dimension required for an empty spanning set")
        dim = vectors[0].dim
    ech = Echelon()
    for v in vectors:
        _same_dim(dim, v.dim)
        ech.add(v.as_int())
    return Subspace.from_echelon(dim, ech)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _same_dim(U.dim, V.dim)
    ech = U.echelon()
    for v in V.basis():
        ech.add(v.as_int())
    return Subspace.from_echelon(U.dim, ech)


def subspace_intersect(U: Subspace, V: Subspace) -> Subspace:
    """Zassenhaus: echelonize ``[u | u]`` and ``[v | 0]`` in the doubled space.

    Rows whose left half vanishes have right halves spanning ``U & V``.
    """
    _same_dim(U.dim, V.dim)
    n = U.dim
    ech = Echelon()
    for u in U.basis():
        iu = u.as_int()
        row = dict(iu)
        row.update({k + n: c for k, c in iu.items()})
        ech.add(row)
    for v in V.basis():
        ech.add(v.as_int())
    inter = Echelon()
    for p, r in ech.rows.items():
        if p >= n:
            inter.add({k - n: c for k, c in r.items()})
    return Subspace.from_echelon(n, inter)


def contains(U: Subspace, v: SparseVec) -> bool:
    _same_dim(U.dim, v.dim)
    return U.echelon().contains(v.as_int())


def quotient_dim(U: Subspace, W: Subspace) -> int:
    """``dim U/W``; ``W`` must be contained in ``U``."""
    _same_dim(U.dim, W.dim)
    ech = U.echelon()
    for w in W.basis():
        if not ech.contains(w.as_int()):
            raise NestingError("quotient requested of non-nested subspaces")
    return U.rank - W.rank


def independent_mod(W: Subspace, cands: Iterable[SparseVec]) -> bool:
    """True iff the candidates are linearly independent modulo ``W``."""
    ech = W.echelon()
    for v in cands:
        _same_dim(W.dim, v.dim)
        if ech.add(v.as_int()) is None:
            return False
    return True
