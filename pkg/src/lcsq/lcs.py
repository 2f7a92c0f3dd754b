"""Lower central series of free algebras and of one-relator quotients.

Everything is computed degree by degree with exact linear algebra.  Words of
degree ``m`` are addressed by their codes (see :mod:`lcsq.ncpoly`), so a
vector of ``A_n[m]`` is a sparse map ``code -> int``.

Two structural facts keep the matrices small:

* ``L_i(A_n)`` is spanned by brackets of words, each of which is homogeneous
  for the letter-content multigrading, so ``L_i(A_n)[m]`` splits into one
  block per content vector.
* The ideal of a relation only mixes contents that differ by the exponent
  differences of the relation's terms.  Contents are grouped into classes
  with a union-find over the ideal generators, and all quotient
  computations run class by class.

For ``i >= 1`` the quotient ``L_i/(L_{i+1} + <P> & L_i)`` has the same
dimension as ``(L_i + I)/(L_{i+1} + I)``, which is computed inside
``A_n[m]/L_{i+1}[m]``: the ideal generators and a complement of
``L_{i+1}`` in ``L_i`` are reduced to normal forms there and the rank jump
contributed by the latter is counted.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, NamedTuple, Sequence

from .exactla import Echelon, IntVec, Subspace, integralize
from .ncpoly import (
    WORD_CAP,
    AlgebraPresentation,
    NCPoly,
    ResourceError,
    code_word,
    enumerate_words,
    word_code,
)

log = logging.getLogger(__name__)

DEFAULT_CAPS = {1: 20, 2: 12, 3: 9, 4: 6}


def default_cap(n: int) -> int:
    return DEFAULT_CAPS.get(n, 5)


def _check_cap(n: int, m: int, cap: int | None) -> None:
    cap = default_cap(n) if cap is None else cap
    if m > cap:
        raise ResourceError(f"degree {m} exceeds the cap {cap} for n={n}")


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _scaled_nf(ech: Echelon, vec: IntVec) -> tuple[IntVec, int]:
    """Remainder of ``vec`` modulo fully reduced rows, as ``(num, den)``.

    One pass suffices because no row has an entry on another row's pivot.
    The true remainder is ``num / den``.
    """
    rows = ech.rows
    hits = [p for p in vec if p in rows]
    if not hits:
        return dict(vec), 1
    den = 1
    for p in hits:
        den = lcm(den, rows[p][p])
    out = {k: c * den for k, c in vec.items() if k not in rows}
    for p in hits:
        r = rows[p]
        f = vec[p] * (den // r[p])
        for k, c in r.items():
            if k != p:
                s = out.get(k, 0) - f * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
    return out, den


class FreeLCS:
    """Cache of ``L_i(A_n)[m]`` for one generator count ``n``.

    ``block(i, m)`` maps each content vector to a fully reduced echelon basis
    of the corresponding multigraded piece of ``L_i(A_n)[m]`` (``i >= 2``).
    """

    def __init__(self, n: int, cap: int | None = None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.cap = default_cap(n) if cap is None else cap
        self._blocks: dict[tuple[int, int], dict[tuple, Echelon]] = {}
        self._contents: dict[int, list[tuple]] = {}
        self._by_content: dict[int, dict[tuple, list[int]]] = {}

    # -- word bookkeeping --------------------------------------------------

    def contents(self, m: int) -> list[tuple]:
        """Content vector of every code of degree ``m``."""
        if m not in self._contents:
            _check_cap(self.n, m, self.cap)
            n = self.n
            if m == 0:
                table = [(0,) * n]
            else:
                prev = self.contents(m - 1)
                units = [tuple(int(j == a) for j in range(n)) for a in range(n)]
                table = [
                    tuple(x + y for x, y in zip(c, units[a])) for c in prev for a in range(n)
                ]
            self._contents[m] = table
        return self._contents[m]

    def words_by_content(self, m: int) -> dict[tuple, list[int]]:
        if m not in self._by_content:
            groups: dict[tuple, list[int]] = {}
            for code, c in enumerate(self.contents(m)):
                groups.setdefault(c, []).append(code)
            self._by_content[m] = groups
        return self._by_content[m]

    def content_of(self, m: int, vec: IntVec) -> dict[tuple, IntVec]:
        table = self.contents(m)
        parts: dict[tuple, IntVec] = {}
        for k, c in vec.items():
            parts.setdefault(table[k], {})[k] = c
        return parts

    # -- lower central series --------------------------------------------

    def block(self, i: int, m: int) -> dict[tuple, Echelon]:
        """Reduced echelon bases of ``L_i(A_n)[m]``, one per content (``i >= 2``)."""
        if i < 2:
            raise ValueError("block() is for i >= 2; L_1 is the whole space")
        key = (i, m)
        if key in self._blocks:
            return self._blocks[key]
        _check_cap(self.n, m, self.cap)
        if m < i:
            blocks: dict[tuple, Echelon] = {}
        elif i == 2:
            blocks = self._commutator_blocks(m)
        else:
            blocks = self._bracket_blocks(i, m)
        self._blocks[key] = blocks
        log.debug("L_%d[%d] of A_%d: rank %d", i, m, self.n, sum(b.rank for b in blocks.values()))
        return blocks

    def _commutator_blocks(self, m: int) -> dict[tuple, Echelon]:
        # [A, A] is spanned by w - rot(w); inside one rotation class this is
        # the sum-zero subspace, whose reduced basis is w - max(class).
        n = self.n
        top = n ** (m - 1)
        table = self.contents(m)
        blocks: dict[tuple, Echelon] = {}
        seen = bytearray(n**m)
        for w in range(n**m):
            if seen[w]:
                continue
            orbit = [w]
            seen[w] = 1
            x = w
            while True:
                first, rest = divmod(x, top)
                x = rest * n + first
                if x == w:
                    break
                if not seen[x]:
                    seen[x] = 1
                    orbit.append(x)
            if len(orbit) == 1:
                continue
            rep = max(orbit)
            ech = blocks.setdefault(table[w], Echelon())
            for x in orbit:
                if x != rep:
                    ech.rows[x] = {x: 1, rep: -1}
        return blocks

    def _bracket_blocks(self, i: int, m: int) -> dict[tuple, Echelon]:
        n = self.n
        table = self.contents(m)
        blocks: dict[tuple, Echelon] = {}
        for k in range(1, m - i + 2):
            lower = self.block(i - 1, m - k)
            shift_left = n ** (m - k)
            shift_right = n**k
            for wc in range(n**k):
                for ech in lower.values():
                    for row in ech.rows.values():
                        vec: IntVec = {}
                        for u, c in row.items():
                            a = wc * shift_left + u
                            b = u * shift_right + wc
                            vec[a] = vec.get(a, 0) + c
                            vec[b] = vec.get(b, 0) - c
                        vec = {x: c for x, c in vec.items() if c}
                        if vec:
                            blocks.setdefault(table[next(iter(vec))], Echelon()).add(vec)
        return {c: ech.reduce_rows() for c, ech in blocks.items() if ech.rank}

    def rank(self, i: int, m: int) -> int:
        if i <= 1:
            return self.n**m
        return sum(e.rank for e in self.block(i, m).values())

    def pivots(self, i: int, m: int, c: tuple) -> set[int]:
        if i <= 1:
            return set(self.words_by_content(m).get(c, ()))
        ech = self.block(i, m).get(c)
        return set(ech.rows) if ech else set()

    def complement_rows(self, i: int, m: int) -> Iterable[tuple[tuple, IntVec]]:
        """Rows of ``L_i[m]`` whose pivots avoid ``L_{i+1}[m]``.

        They form a basis of ``L_i[m]`` modulo ``L_{i+1}[m]`` because the
        pivot set of a subspace contains that of any subspace of it.
        """
        upper = self.block(i + 1, m)
        if i == 1:
            for c, codes in self.words_by_content(m).items():
                ech = upper.get(c)
                for w in codes:
                    if ech is None or w not in ech.rows:
                        yield c, {w: 1}
            return
        for c, ech in self.block(i, m).items():
            up = upper.get(c)
            for p, row in ech.rows.items():
                if up is None or p not in up.rows:
                    yield c, row

    def nf(self, i: int, m: int, vec: IntVec) -> IntVec:
        """Integer multiple of the normal form of ``vec`` modulo ``L_i[m]``."""
        return self.nf_scaled(i, m, vec)[0]

    def nf_scaled(self, i: int, m: int, vec: IntVec) -> tuple[IntVec, int]:
        """Normal form modulo ``L_i[m]`` as ``(num, den)``, true value ``num/den``."""
        if i <= 1:
            return {}, 1
        blocks = self.block(i, m)
        parts = []
        den = 1
        for c, part in self.content_of(m, vec).items():
            ech = blocks.get(c)
            if ech is None:
                parts.append((part, 1))
            else:
                num, d = _scaled_nf(ech, part)
                parts.append((num, d))
                den = lcm(den, d)
        out: IntVec = {}
        for num, d in parts:
            f = den // d
            for k, c in num.items():
                out[k] = c * f
        return out, den

    def subspace(self, i: int, m: int) -> Subspace:
        dim = self.n**m
        if i <= 1:
            return Subspace.full(dim)
        rows: dict[int, IntVec] = {}
        for ech in self.block(i, m).values():
            rows.update(ech.rows)
        return Subspace.from_echelon(dim, Echelon(rows))

    def b_dim(self, i: int, m: int) -> int:
        return self.rank(i, m) - self.rank(i + 1, m)


_FREE: dict[tuple[int, int | None], FreeLCS] = {}


def free_engine(n: int, cap: int | None = None) -> FreeLCS:
    key = (n, cap)
    if key not in _FREE:
        _FREE[key] = FreeLCS(n, cap)
    return _FREE[key]


# --------------------------------------------------------------------------
# coordinates


def poly_vector(p: NCPoly, m: int | None = None) -> IntVec:
    """Integer coordinates of a homogeneous polynomial, scaled to be primitive.

    Scaling is harmless for every use here (spans, ranks, membership).
    """
    if not p:
        return {}
    if not p.is_homogeneous():
        raise ValueError("expected a homogeneous polynomial")
    if m is not None and p.degree != m:
        raise ValueError(f"expected degree {m}, got {p.degree}")
    return integralize({word_code(w, p.n): c for w, c in p.terms.items()})


def vector_poly(n: int, m: int, vec: dict) -> NCPoly:
    return NCPoly(n, {code_word(k, n, m): c for k, c in vec.items()})


def lcs_piece(n: int, i: int, m: int, cap: int | None = None) -> Subspace:
    """``L_i(A_n)[m]`` as a subspace of the ``n**m`` dimensional degree-m space."""
    if i < 1 or m < 0:
        raise ValueError("need i >= 1 and m >= 0")
    return free_engine(n, cap).subspace(i, m)


def b_dim_free(n: int, i: int, m: int, cap: int | None = None) -> int:
    if i < 1:
        raise ValueError("series index starts at 1")
    return free_engine(n, cap).b_dim(i, m)


def _relation_int(P: NCPoly) -> tuple[IntVec, int]:
    return poly_vector(P), P.degree


def ideal_generators(P: NCPoly, m: int) -> Iterable[IntVec]:
    """``u P v`` over all words with ``|u| + |v| = m - deg P``."""
    n = P.n
    pv, d = _relation_int(P)
    rest = m - d
    if rest < 0:
        return
    for left in range(rest + 1):
        right = rest - left
        sl = n ** (d + right)
        sp = n**right
        for u in range(n**left):
            for v in range(n**right):
                yield {(u * sl) + p * sp + v: c for p, c in pv.items()}


def ideal_piece(P: NCPoly, m: int, cap: int | None = None) -> Subspace:
    """Degree-m piece of the two-sided ideal generated by a homogeneous ``P``."""
    if not P.is_homogeneous() or not P:
        raise ValueError("relation must be nonzero and homogeneous")
    _check_cap(P.n, m, cap)
    ech = Echelon()
    for g in ideal_generators(P, m):
        ech.add(g)
    return Subspace.from_echelon(P.n**m, ech)


# --------------------------------------------------------------------------
# graded quotients


@dataclass
class _QuotientData:
    """Image of ``<P>[m]`` inside ``A_n[m] / L_j[m]``, split by class."""

    classes: _UnionFind
    images: dict[tuple, Echelon]


class GradedQuotient:
    """Lower central series data of ``A_n/<P>`` for homogeneous ``P``."""

    def __init__(self, pres: AlgebraPresentation, cap: int | None = None):
        if pres.mode != "graded":
            raise ValueError("GradedQuotient needs a graded presentation")
        self.pres = pres
        self.n = pres.n
        self.d = pres.d
        self.free = free_engine(pres.n, cap)
        self._ideal: dict[tuple[int, int], _QuotientData] = {}
        self._algebra: dict[int, int] = {}

    def _classes(self, m: int) -> _UnionFind:
        uf = _UnionFind()
        table = self.free.contents(m)
        for c in self.free.words_by_content(m):
            uf.find(c)
        if m >= self.d:
            for g in ideal_generators(self.pres.P, m):
                it = iter(g)
                first = table[next(it)]
                for k in it:
                    uf.union(first, table[k])
        return uf

    def ideal_image(self, j: int, m: int) -> _QuotientData:
        """Normal forms of ``<P>[m]`` modulo ``L_j(A_n)[m]`` (``j = 1`` means no quotient)."""
        key = (j, m)
        if key in self._ideal:
            return self._ideal[key]
        _check_cap(self.n, m, self.free.cap)
        uf = self._classes(m)
        table = self.free.contents(m)
        images: dict[tuple, Echelon] = {}
        for g in ideal_generators(self.pres.P, m):
            v = self.free.nf(j, m, g) if j >= 2 else g
            if v:
                root = uf.find(table[next(iter(v))])
                images.setdefault(root, Echelon()).add(v)
        data = _QuotientData(uf, images)
        self._ideal[key] = data
        return data

    def b_dim(self, i: int, m: int) -> int:
        """``dim L_i(A)[m] / L_{i+1}(A)[m]`` for ``A = A_n/<P>``."""
        if i < 1:
            raise ValueError("series index starts at 1")
        data = self.ideal_image(i + 1, m)
        work: dict[tuple, Echelon] = {}
        count = 0
        for c, row in self.free.complement_rows(i, m):
            v = self.free.nf(i + 1, m, row)
            root = data.classes.find(c)
            ech = work.get(root)
            if ech is None:
                base = data.images.get(root)
                ech = work[root] = base.copy() if base is not None else Echelon()
            if ech.add(v) is not None:
                count += 1
        return count

    def algebra_dim(self, m: int) -> int:
        if m not in self._algebra:
            data = self.ideal_image(1, m)
            self._algebra[m] = self.n**m - sum(e.rank for e in data.images.values())
        return self._algebra[m]

    # -- membership helpers ---------------------------------------------

    def _split(self, data: _QuotientData, m: int, v: IntVec) -> dict[tuple, IntVec]:
        table = self.free.contents(m)
        parts: dict[tuple, IntVec] = {}
        for k, c in v.items():
            parts.setdefault(data.classes.find(table[k]), {})[k] = c
        return parts

    def in_lcs_plus_ideal(self, j: int, vec: IntVec, m: int) -> bool:
        """Whether ``vec`` lies in ``L_j(A_n)[m] + <P>[m]``."""
        data = self.ideal_image(j, m)
        v = self.free.nf(j, m, vec) if j >= 2 else vec
        for root, part in self._split(data, m, v).items():
            ech = data.images.get(root)
            if ech is None or not ech.contains(part):
                return False
        return True

    def independent_mod(self, j: int, m: int, vectors: Sequence[IntVec]) -> bool:
        """Independence of ``vectors`` modulo ``L_j[m] + <P>[m]``."""
        data = self.ideal_image(j, m)
        groups = _UnionFind()
        reduced = []
        for vec in vectors:
            v = self.free.nf(j, m, vec)
            if not v:
                return False
            roots = sorted(self._split(data, m, v))
            for r in roots[1:]:
                groups.union(roots[0], r)
            reduced.append((roots[0], v))
        work: dict[tuple, Echelon] = {}
        for root, v in reduced:
            top = groups.find(root)
            if top not in work:
                ech = Echelon()
                for r in list(groups.parent):
                    if groups.find(r) == top and r in data.images:
                        for row in data.images[r].rows.values():
                            ech.add(row)
                work[top] = ech
            if work[top].add(v) is None:
                return False
        return True


_GRADED: dict[tuple, GradedQuotient] = {}


def graded_engine(pres: AlgebraPresentation, cap: int | None = None) -> GradedQuotient:
    key = (pres.n, pres.P, cap)
    if key not in _GRADED:
        _GRADED[key] = GradedQuotient(pres.graded(), cap)
    return _GRADED[key]


def b_dim_quotient(pres: AlgebraPresentation, i: int, m: int, cap: int | None = None) -> int:
    """``dim B_i(A_n/<P>)[m]`` for a graded presentation (``i >= 2``)."""
    if pres.mode != "graded":
        raise ValueError("b_dim_quotient needs a graded presentation")
    if i < 2:
        raise ValueError("series index must be at least 2")
    return graded_engine(pres, cap).b_dim(i, m)


def b_dim_quotient_by_intersection(pres: AlgebraPresentation, i: int, m: int) -> int:
    """Same number computed literally as ``L_i / (L_{i+1} + (<P> & L_i))``.

    Works in the full ``n**m`` dimensional space; meant for small cases and
    as an independent check of :func:`b_dim_quotient`.
    """
    from .exactla import quotient_dim, subspace_intersect, subspace_sum

    Li = lcs_piece(pres.n, i, m)
    Lnext = lcs_piece(pres.n, i + 1, m)
    I = ideal_piece(pres.P, m)
    denom = subspace_sum(Lnext, subspace_intersect(I, Li))
    return quotient_dim(Li, denom)


def algebra_dim(pres: AlgebraPresentation, m: int, cap: int | None = None) -> int:
    if pres.mode != "graded":
        raise ValueError("algebra_dim needs a graded presentation")
    return graded_engine(pres, cap).algebra_dim(m)


# --------------------------------------------------------------------------
# filtered quotients A_n/<P - 1>
#
# Words of degree <= M live in one coordinate space.  A word of degree k
# with code c gets column (M - k) * n**M + c, so higher degrees come first
# and the pivot of a vector is a word of its top degree.  For a subspace S
# the number of pivots of degree <= m is then dim(S & F_m), where F_m is the
# span of words of degree <= m.  That is exactly what the associated graded
# of the induced filtration needs.


@dataclass(frozen=True)
class FilteredPiece:
    """Level-m data of the filtered ``B_i`` (``i = 1``: of the algebra itself).

    ``numerator`` and ``denominator`` are ``dim N & F_m`` and ``dim D & F_m``
    for the numerator space ``N`` (``L_i + I``, or everything when ``i = 1``)
    and the denominator ``D`` (``L_{i+1} + I``, or ``I`` when ``i = 1``).
    """

    index: int
    degree: int
    truncation: int
    numerator: int
    denominator: int
    stabilized: bool

    @property
    def dimension(self) -> int:
        return self.numerator - self.denominator


class GrDim(NamedTuple):
    dim: int
    certified: bool
    truncation: int


class FilteredQuotient:
    """Truncated computations for ``A_n/<P - 1>`` with ``P`` homogeneous."""

    def __init__(self, pres: AlgebraPresentation, m_max: int | None = None):
        self.pres = pres.filtered()
        self.n = pres.n
        self.d = pres.d
        # the truncation level may exceed the graded cap; only the word count matters
        self.m_max = m_max if m_max is not None else default_cap(pres.n) + 2 * pres.d
        self.free = FreeLCS(pres.n, cap=self.m_max)
        P = pres.P
        terms = {(len(w), word_code(w, self.n)): c for w, c in P.terms.items()}
        terms[(0, 0)] = Fraction(-1)
        scaled = integralize({k: c for k, c in enumerate(terms.values())})
        self._relation = [(key, scaled[j]) for j, key in enumerate(terms) if j in scaled]
        self._runs: dict[tuple[int, int], tuple[list[int], list[int]]] = {}

    def _check(self, M: int) -> None:
        if M > self.m_max:
            raise ResourceError(f"truncation {M} exceeds the configured maximum {self.m_max}")
        if self.n**M > WORD_CAP:
            raise ResourceError(f"{self.n}**{M} words exceed the word cap")

    def _generators(self, M: int) -> Iterable[list[tuple[int, int, int]]]:
        """``u (P - 1) v`` for ``|u| + |v| <= M - d`` as ``(degree, code, coeff)`` lists."""
        n = self.n
        for total in range(M - self.d + 1):
            for left in range(total + 1):
                right = total - left
                for u in range(n**left):
                    for v in range(n**right):
                        gen = []
                        for (lt, tc), c in self._relation:
                            code = (u * n**lt + tc) * n**right + v
                            gen.append((left + lt + right, code, c))
                        yield gen

    def pivot_counts(self, i: int, M: int) -> tuple[list[int], list[int]]:
        """Per degree ``k <= M``: pivots of the denominator and of the numerator.

        Both counts include the free ``L_{i+1}[k]`` (which the working space
        quotients out) when ``i >= 2``.
        """
        key = (i, M)
        if key in self._runs:
            return self._runs[key]
        self._check(M)
        n, free = self.n, self.free
        j = i + 1 if i >= 2 else None
        stride = n**M
        uf = _UnionFind()
        images: dict[tuple, Echelon] = {}
        for gen in self._generators(M):
            parts: dict[int, IntVec] = {}
            for k, code, c in gen:
                parts.setdefault(k, {})[code] = c
            vec: IntVec = {}
            if j is None:
                for k, part in parts.items():
                    base = (M - k) * stride
                    vec.update({base + w: c for w, c in part.items()})
            else:
                reduced = {k: free.nf_scaled(j, k, part) for k, part in parts.items()}
                den = 1
                for _, dk in reduced.values():
                    den = lcm(den, dk)
                for k, (num, dk) in reduced.items():
                    base, f = (M - k) * stride, den // dk
                    vec.update({base + w: c * f for w, c in num.items()})
            if not vec:
                continue
            cs = [free.contents(M - col // stride)[col % stride] for col in vec]
            for c in cs[1:]:
                uf.union(cs[0], c)
            images.setdefault(cs[0], []).append(vec)
        # regroup by final class root
        classes: dict[tuple, Echelon] = {}
        for c, vecs in images.items():
            ech = classes.setdefault(uf.find(c), Echelon())
            for v in vecs:
                ech.add(v)
        low = [0] * (M + 1)
        for ech in classes.values():
            for p in ech.rows:
                low[M - p // stride] += 1
        high = list(low)
        if j is not None:
            for k in range(M + 1):
                extra = free.rank(j, k)
                low[k] += extra
                high[k] += extra
            work: dict[tuple, Echelon] = {}
            for k in range(i, M + 1):
                base = (M - k) * stride
                for c, row in free.complement_rows(i, k):
                    v, _ = free.nf_scaled(j, k, row)
                    root = uf.find(c)
                    ech = work.get(root)
                    if ech is None:
                        src = classes.get(root)
                        ech = work[root] = src.copy() if src is not None else Echelon()
                    p = ech.add({base + w: x for w, x in v.items()})
                    if p is not None:
                        high[M - p // stride] += 1
        else:
            high = [n**k for k in range(M + 1)]
        self._runs[key] = (low, high)
        log.debug("filtered run i=%d M=%d done", i, M)
        return low, high

    def reading(self, i: int, m: int, M: int) -> tuple[tuple[int, int], ...]:
        """``(numerator, denominator)`` at every level ``0..m`` for truncation ``M``."""
        low, high = self.pivot_counts(i, M)
        out = []
        num = den = 0
        for k in range(m + 1):
            num += high[k]
            den += low[k]
            out.append((num, den))
        return tuple(out)

    def piece(self, i: int, m: int, truncation: int | None = None, step: int | None = None) -> FilteredPiece:
        """Grow the truncation until two consecutive steps leave the reading unchanged."""
        if i < 1 or m < 0:
            raise ValueError("need i >= 1 and m >= 0")
        step = self.d if step is None else step
        M = m + self.d if truncation is None else truncation
        if M < m:
            raise ValueError("truncation must be at least the degree")
        self._check(M)
        prev = self.reading(i, m, M)
        unchanged = 0
        while unchanged < 2 and M + step <= self.m_max and self.n ** (M + step) <= WORD_CAP:
            M += step
            cur = self.reading(i, m, M)
            unchanged = unchanged + 1 if cur == prev else 0
            prev = cur
        num, den = prev[m]
        return FilteredPiece(i, m, M, num, den, unchanged >= 2)

    def gr_dim(self, i: int, m: int) -> GrDim:
        piece = self.piece(i, m)
        lower = self.reading(i, m - 1, piece.truncation)[-1] if m > 0 else (0, 0)
        return GrDim(piece.dimension - (lower[0] - lower[1]), piece.stabilized, piece.truncation)


_FILTERED: dict[tuple, FilteredQuotient] = {}


def filtered_engine(pres: AlgebraPresentation, m_max: int | None = None) -> FilteredQuotient:
    key = (pres.n, pres.P, m_max)
    if key not in _FILTERED:
        _FILTERED[key] = FilteredQuotient(pres, m_max)
    return _FILTERED[key]


def _require_filtered(pres: AlgebraPresentation) -> None:
    if pres.mode != "filtered":
        raise ValueError("expected a filtered presentation (relation P - 1)")


def filtered_pieces(
    pres: AlgebraPresentation, i: int, m: int, truncation: int | None = None, m_max: int | None = None
) -> FilteredPiece:
    """Filtered ``B_i`` data at level ``m``; ``i = 1`` gives the filtered algebra."""
    _require_filtered(pres)
    return filtered_engine(pres, m_max).piece(i, m, truncation)


def gr_b_dim(pres: AlgebraPresentation, i: int, m: int, m_max: int | None = None) -> GrDim:
    """Degree-m piece of the associated graded of ``B_i(A_n/<P - 1>)``."""
    _require_filtered(pres)
    if i < 2:
        raise ValueError("series index must be at least 2")
    return filtered_engine(pres, m_max).gr_dim(i, m)


def gr_algebra_dim(pres: AlgebraPresentation, m: int, m_max: int | None = None) -> GrDim:
    """Degree-m piece of ``gr(A_n/<P - 1>)``."""
    _require_filtered(pres)
    return filtered_engine(pres, m_max).gr_dim(1, m)


# --------------------------------------------------------------------------
# tables of dimensions


@dataclass
class DimTable:
    """``dim B_i[m]`` for a set of ``(i, m)``, with per-entry certification.

    Graded entries are exact and always certified; filtered entries are
    certified only when the truncation stabilised.
    """

    pres: AlgebraPresentation
    entries: dict[tuple[int, int], tuple[int, bool]] = field(default_factory=dict)
    truncation: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def mode(self) -> str:
        return self.pres.mode

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries[key][0]

    def row(self, i: int) -> list[int]:
        return [d for (j, _), (d, _) in sorted(self.entries.items()) if j == i]

    def records(self) -> list[dict]:
        return [
            {"i": i, "degree": m, "dim": d, "certified": ok}
            for (i, m), (d, ok) in sorted(self.entries.items())
        ]


def dim_table(
    pres: AlgebraPresentation,
    indices: Sequence[int],
    max_degree: int,
    cap: int | None = None,
    m_max: int | None = None,
    min_degree: int = 1,
) -> DimTable:
    """Fill a :class:`DimTable` for degrees ``min_degree..max_degree``.

    In graded mode ``i = 1`` is allowed and gives ``A/[A, A]``.
    """
    table = DimTable(pres)
    for i in indices:
        for m in range(min_degree, max_degree + 1):
            if pres.mode == "graded":
                if i < 1:
                    raise ValueError("series index starts at 1")
                table.entries[(i, m)] = (graded_engine(pres, cap).b_dim(i, m), True)
            else:
                g = gr_b_dim(pres, i, m, m_max)
                table.entries[(i, m)] = (g.dim, g.certified)
                table.truncation[(i, m)] = g.truncation
    return table


# --------------------------------------------------------------------------
# identity checks and basis certification


def check_b2_identity(pres: AlgebraPresentation, lhs: NCPoly, rhs: NCPoly, cap: int | None = None) -> bool:
    """Whether ``lhs = rhs`` holds in ``B_2(A_n/<P>)``.

    That is, whether ``lhs - rhs`` lies in ``L_3(A_n) + <P>`` (both sides are
    assumed to lie in ``L_2``).
    """
    diff = lhs - rhs
    if not diff:
        return True
    if not diff.is_homogeneous():
        raise ValueError("lhs - rhs must be homogeneous")
    m = diff.degree
    return graded_engine(pres, cap).in_lcs_plus_ideal(3, poly_vector(diff), m)


def power(n: int, i: int, k: int) -> NCPoly:
    return NCPoly.word(n, (i,) * k)


@dataclass
class DegreeCertificate:
    degree: int
    candidates: int
    dimension: int
    independent: bool

    @property
    def ok(self) -> bool:
        return self.independent and self.candidates == self.dimension


@dataclass
class BasisReport:
    n: int
    d: int
    degrees: list[DegreeCertificate] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return all(c.ok for c in self.degrees)

    @property
    def total(self) -> int:
        return sum(c.candidates for c in self.degrees)

    def counts(self) -> dict[int, int]:
        return {c.degree: c.candidates for c in self.degrees}


def x_power_y_power_presentation(n: int, d: int) -> AlgebraPresentation:
    P = power(n, 0, d) + power(n, 1, d)
    return AlgebraPresentation(n, P)


def basis_candidates_n2(d: int, m: int) -> list[NCPoly]:
    """``[x^i, y^j]`` with ``i + j = m`` and ``0 < i, j < d``."""
    return [
        _bracket(power(2, 0, i), power(2, 1, m - i))
        for i in range(1, d)
        if 0 < m - i < d
    ]


def basis_candidates_n3(d: int, m: int) -> list[NCPoly]:
    """The five families of brackets for ``A_3/<x^d + y^d>`` in degree ``m``.

    All exponents are positive and the ``y`` exponent stays below ``d``;
    the ``x`` exponent is bounded by ``d`` only in the first and last family.
    """
    n = 3
    out = []
    x = lambda k: power(n, 0, k)
    y = lambda k: power(n, 1, k)
    z = lambda k: power(n, 2, k)
    for i in range(1, m):
        j = m - i
        if i < d and j < d:
            out.append(_bracket(x(i), y(j)))
        out.append(_bracket(x(i), z(j)))
        if i < d:
            out.append(_bracket(y(i), z(j)))
    for i in range(1, m):
        for j in range(1, d):
            k = m - i - j
            if k < 1:
                continue
            out.append(_bracket(x(i) * y(j), z(k)))
            if i < d:
                out.append(_bracket(x(i) * z(k), y(j)))
    return out


def _bracket(p: NCPoly, q: NCPoly) -> NCPoly:
    return p * q - q * p


def _certify(pres: AlgebraPresentation, families, m_max: int, cap: int | None) -> BasisReport:
    eng = graded_engine(pres, cap)
    report = BasisReport(pres.n, pres.d)
    for m in range(2, m_max + 1):
        cands = families(pres.d, m)
        vecs = [poly_vector(c, m) for c in cands]
        indep = eng.independent_mod(3, m, vecs) if vecs else True
        report.degrees.append(DegreeCertificate(m, len(cands), eng.b_dim(2, m), indep))
    return report


def certify_basis_n2(d: int, m_max: int | None = None, cap: int | None = None) -> BasisReport:
    """Check that ``{[x^i, y^j] : 0 < i, j < d}`` is a basis of ``B_2(A_2/<x^d+y^d>)``."""
    if d < 2:
        raise ValueError("d must be at least 2")
    m_max = 2 * d - 1 if m_max is None else m_max
    if m_max < 2 * d - 2:
        raise ValueError("m_max must reach the top degree 2d - 2 of the basis")
    return _certify(x_power_y_power_presentation(2, d), basis_candidates_n2, m_max, cap)


def certify_basis_n3(d: int, m_max: int, cap: int | None = None) -> BasisReport:
    """Check the five-family basis of ``B_2(A_3/<x^d+y^d>)`` degree by degree."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return _certify(x_power_y_power_presentation(3, d), basis_candidates_n3, m_max, cap)


# --------------------------------------------------------------------------
# random relations


def random_relation(n: int, d: int, seed: int, lo: int = -9, hi: int = 9) -> NCPoly:
    """Homogeneous degree-d relation with i.i.d. integer coefficients in ``[lo, hi]``."""
    rng = random.Random(seed)
    while True:
        terms = {w: rng.randint(lo, hi) for w in enumerate_words(n, d)}
        P = NCPoly(n, terms)
        if P and P.degree == d:
            return P
