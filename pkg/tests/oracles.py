"""Slow, independent reference computations used by the tests.

Nothing here touches the block / union-find machinery of ``lcsq.lcs``: the
spaces are spanned straight from their definitions with NCPoly arithmetic,
and ranks come either from the generic subspace calculus or from plain
Gaussian elimination modulo a prime.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from lcsq.exactla import SparseVec, Subspace, quotient_dim, span, subspace_intersect, subspace_sum
from lcsq.ncpoly import NCPoly, bracket, enumerate_words, word_code


def compositions(m: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``m``."""
    if parts == 1:
        if m >= 1:
            yield (m,)
        return
    for first in range(1, m - parts + 2):
        for rest in compositions(m - first, parts - 1):
            yield (first,) + rest


def vec(p: NCPoly, m: int) -> SparseVec:
    n = p.n
    return SparseVec(n**m, {word_code(w, n): c for w, c in p.terms.items()})


@lru_cache(maxsize=None)
def lcs_brute(n: int, i: int, m: int) -> Subspace:
    """``L_i(A_n)[m]`` spanned by ``[w_1, [w_2, ... [w_{i-1}, w_i]]]`` over words."""
    if i == 1:
        return Subspace.full(n**m)
    gens = []
    for shape in compositions(m, i):
        pools = [enumerate_words(n, k) for k in shape]
        for words in itertools.product(*pools):
            p = NCPoly.word(n, words[-1])
            for w in reversed(words[:-1]):
                p = bracket(NCPoly.word(n, w), p)
            if p:
                gens.append(vec(p, m))
    return span(gens, dim=n**m)


def ideal_brute(P: NCPoly, m: int) -> Subspace:
    n, d = P.n, P.degree
    gens = []
    for left in range(m - d + 1):
        for u in enumerate_words(n, left):
            for v in enumerate_words(n, m - d - left):
                gens.append(vec(NCPoly.word(n, u) * P * NCPoly.word(n, v), m))
    return span(gens, dim=n**m)


def b_quotient_brute(P: NCPoly, i: int, m: int) -> int:
    Li, Lnext = lcs_brute(P.n, i, m), lcs_brute(P.n, i + 1, m)
    denom = subspace_sum(Lnext, subspace_intersect(ideal_brute(P, m), Li))
    return quotient_dim(Li, denom)


def rank_mod_p(rows: list[dict[int, int]], p: int) -> int:
    """Rank of an integer matrix over GF(p) by textbook elimination."""
    pivots: dict[int, dict[int, int]] = {}
    for r in rows:
        v = {k: c % p for k, c in r.items() if c % p}
        while v:
            col = min(v)
            piv = pivots.get(col)
            if piv is None:
                inv = pow(v[col], -1, p)
                pivots[col] = {k: c * inv % p for k, c in v.items()}
                break
            f = v[col]
            for k, c in piv.items():
                s = (v.get(k, 0) - f * c) % p
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
    return len(pivots)


def _offsets(n: int, M: int) -> list[int]:
    out, acc = [], 0
    for k in range(M + 1):
        out.append(acc)
        acc += n**k
    return out + [acc]


def filtered_reading_brute(P: NCPoly, i: int, m: int, M: int) -> tuple[int, int]:
    """``dim (N & F_m)`` and ``dim (D & F_m)`` at truncation ``M``, straight from spans.

    ``N = L_i + I`` and ``D = L_{i+1} + I`` (for ``i = 1``: everything and ``I``),
    where ``I`` is spanned by ``u (P - 1) v`` with ``|u| + |v| <= M - deg P``.
    """
    n, d = P.n, P.degree
    off = _offsets(n, M)
    dim = off[-1]

    def flat(p: NCPoly) -> SparseVec:
        return SparseVec(dim, {off[len(w)] + word_code(w, n): c for w, c in p.terms.items()})

    def lcs_all(j: int) -> Subspace:
        gens = []
        for k in range(M + 1):
            for row in lcs_brute(n, j, k).basis():
                gens.append(SparseVec(dim, {off[k] + c: x for c, x in row.entries.items()}))
        return span(gens, dim=dim)

    shifted = P - NCPoly.const(n, 1)
    ideal = []
    for total in range(M - d + 1):
        for left in range(total + 1):
            for u in enumerate_words(n, left):
                for v in enumerate_words(n, total - left):
                    ideal.append(flat(NCPoly.word(n, u) * shifted * NCPoly.word(n, v)))
    I = span(ideal, dim=dim)
    F = span([SparseVec(dim, {c: 1}) for c in range(off[m + 1])], dim=dim)
    if i == 1:
        N = Subspace.full(dim)
        D = I
    else:
        N = subspace_sum(lcs_all(i), I)
        D = subspace_sum(lcs_all(i + 1), I)
    return subspace_intersect(N, F).rank, subspace_intersect(D, F).rank
