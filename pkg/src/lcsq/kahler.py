"""Kahler differentials of the hypersurface ring ``Q[x_1..x_n]/(P)``.

For homogeneous ``P`` of degree ``d`` write ``R = Q[x]/(P)``.  In degree
``m`` (``dx_i`` has degree one):

* ``Omega^0[m] = Q[x][m] / P*Q[x][m-d]``;
* ``Omega^1[m] = (+)_i Q[x][m-1] dx_i`` modulo the span of ``u*dP``
  (``deg u = m - d``) and ``u*P*dx_i`` (``deg u = m - 1 - d``).

The map ``d`` is well defined on these quotients because
``d(P g) = g dP + P dg``.  All dimensions are exact ranks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactla import Echelon, IntVec, integralize
from .hseries import HilbertSeries, monomial, poly_add, poly_pow, trim
from .ncpoly import AlgebraPresentation, CommPoly, abelianize, partial
from .lcs import _check_cap

Exps = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(n: int, m: int) -> tuple[Exps, ...]:
    """Exponent vectors of total degree ``m`` (lexicographically decreasing)."""
    if m < 0:
        return ()
    out = []
    for combo in itertools.combinations_with_replacement(range(n), m):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


@lru_cache(maxsize=None)
def _index(n: int, m: int) -> dict[Exps, int]:
    return {e: k for k, e in enumerate(monomials(n, m))}


def _shift(e: Exps, f: Exps) -> Exps:
    return tuple(a + b for a, b in zip(e, f))


def _times(u: Exps, f: CommPoly) -> dict[Exps, Fraction]:
    return {_shift(u, e): c for e, c in f.terms.items()}


@dataclass(frozen=True)
class OmegaPiece:
    """Degree-m piece of ``Omega^0`` or ``Omega^1`` as ambient modulo relations."""

    degree: int
    ambient: int
    relations: int

    @property
    def dimension(self) -> int:
        return self.ambient - self.relations


def _ab(pres: AlgebraPresentation) -> CommPoly:
    # a relation in [A, A] abelianizes to zero; the ring is then Q[x] itself
    return abelianize(pres.P)


def _omega0_vec(n: int, m: int, f: dict[Exps, Fraction]) -> IntVec:
    idx = _index(n, m)
    return integralize({idx[e]: c for e, c in f.items()})


def _omega1_vec(n: int, m: int, comps: list[dict[Exps, Fraction]]) -> IntVec:
    """Coordinates of ``sum_i comps[i] dx_i``; block ``i`` is offset ``i * #monomials``."""
    idx = _index(n, m - 1)
    size = len(idx)
    out = {}
    for i, f in enumerate(comps):
        for e, c in f.items():
            out[i * size + idx[e]] = c
    return integralize(out)


def omega0_relations(P: CommPoly, m: int) -> Echelon:
    n, d = P.n, P.degree
    ech = Echelon()
    if not P:
        return ech
    for u in monomials(n, m - d):
        ech.add(_omega0_vec(n, m, _times(u, P)))
    return ech


def omega0_piece(pres: AlgebraPresentation, m: int) -> OmegaPiece:
    _check_cap(pres.n, m, None)
    P = _ab(pres)
    return OmegaPiece(m, len(monomials(pres.n, m)), omega0_relations(P, m).rank)


def omega0_dim(pres: AlgebraPresentation, m: int) -> int:
    """``dim (Q[x]/(P_ab))[m]``."""
    return omega0_piece(pres, m).dimension


def d_map(f: CommPoly) -> tuple[CommPoly, ...]:
    """``df`` as its tuple of ``dx_i`` coefficients."""
    return tuple(partial(f, i) for i in range(f.n))


def omega1_relations(P: CommPoly, m: int) -> Echelon:
    n, d = P.n, P.degree
    grads = d_map(P)
    ech = Echelon()
    if m >= 1 and P:
        for u in monomials(n, m - d):
            ech.add(_omega1_vec(n, m, [_times(u, g) for g in grads]))
        for u in monomials(n, m - 1 - d):
            uP = _times(u, P)
            for i in range(n):
                comps = [uP if j == i else {} for j in range(n)]
                ech.add(_omega1_vec(n, m, comps))
    return ech


def omega1_piece(pres: AlgebraPresentation, m: int) -> OmegaPiece:
    _check_cap(pres.n, m, None)
    P = _ab(pres)
    ambient = pres.n * len(monomials(pres.n, m - 1)) if m >= 1 else 0
    return OmegaPiece(m, ambient, omega1_relations(P, m).rank)


def omega1_dim(pres: AlgebraPresentation, m: int) -> int:
    return omega1_piece(pres, m).dimension


def _image_rank(pres: AlgebraPresentation, m: int) -> tuple[int, int, int]:
    """``(ambient of Omega^1[m], rank of relations, rank of relations + d(Omega^0[m]))``."""
    P = _ab(pres)
    n = pres.n
    if m < 1:
        return 0, 0, 0
    rel = omega1_relations(P, m)
    base = rel.rank
    ech = rel.copy()
    for e in monomials(n, m):
        mono = CommPoly(n, {e: 1})
        ech.add(_omega1_vec(n, m, [g.terms for g in d_map(mono)]))
    return n * len(monomials(n, m - 1)), base, ech.rank


def d_image_dim(pres: AlgebraPresentation, m: int) -> int:
    _check_cap(pres.n, m, None)
    _, base, total = _image_rank(pres, m)
    return total - base


def omega_quotient_dim(pres: AlgebraPresentation, m: int) -> int:
    """``dim (Omega^1 / d Omega^0)[m]``."""
    _check_cap(pres.n, m, None)
    ambient, _, total = _image_rank(pres, m)
    return ambient - total


def kernel_of_d_dim(pres: AlgebraPresentation, m: int) -> int:
    """Dimension of the kernel of ``d`` on ``Omega^0[m]``, computed from ranks."""
    return omega0_dim(pres, m) - d_image_dim(pres, m)


# --------------------------------------------------------------------------
# closed forms


def omega_series(n: int, d: int) -> HilbertSeries:
    """``((1-t)^n - 1 + n t - n t^(d+1) + t^(2d)) / (1-t)^n``."""
    den = poly_pow((1, -1), n)
    num = poly_add(den, (-1, n))
    num = poly_add(num, monomial(d + 1, -n))
    num = poly_add(num, monomial(2 * d, 1))
    return HilbertSeries(num, den)


def closed_form_series(n: int, d: int) -> tuple[HilbertSeries, HilbertSeries]:
    """Closed forms ``(h_Omega, h_B2)`` for ``x^d + y^d``-type relations.

    For ``n = 2, 3`` the two coincide.  For ``n = 4`` the second series is
    the conjectured one, ``h_Omega + (t (1 - t^(d-1)) / (1 - t))^4``.
    """
    if n not in (2, 3, 4):
        raise ValueError(f"closed forms are only available for n in (2, 3, 4), got {n}")
    if d < 2:
        raise ValueError("d must be at least 2")
    h = omega_series(n, d)
    if n < 4:
        return h, h
    block = trim([0] + [1] * (d - 1))  # t + t^2 + ... + t^(d-1)
    extra = HilbertSeries(poly_pow(block, 4), (1,))
    return h, h + extra


# --------------------------------------------------------------------------
# squarefree test


def _upoly_gcd_degree(f: list[Fraction]) -> int:
    """Degree of ``gcd(f, f')`` for a univariate polynomial (coefficients low first)."""
    def strip(a):
        a = list(a)
        while a and a[-1] == 0:
            a.pop()
        return a

    a = strip(f)
    b = strip([k * c for k, c in enumerate(a)][1:])
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            q = r[-1] / b[-1]
            s = len(r) - len(b)
            for i, c in enumerate(b):
                r[i + s] -= q * c
            r = strip(r)
        a, b = b, r
    return len(a) - 1


def _binary_verdict(coeffs: list[Fraction], d: int) -> str:
    """Squarefreeness of a binary form ``sum coeffs[k] s^k t^(d-k)``."""
    f = list(coeffs)
    while f and f[-1] == 0:
        f.pop()
    if not f:
        return "undetermined"
    if d - (len(f) - 1) >= 2:  # s-free part: t^2 divides the form
        return "repeated-factor"
    return "squarefree" if _upoly_gcd_degree(f) <= 0 else "repeated-factor"


def squarefree_check(P: CommPoly, trials: int = 5, seed: int = 0) -> str:
    """``"squarefree"``, ``"repeated-factor"`` or ``"undetermined"``.

    Two variables: exact test on the dehomogenised polynomial.  More
    variables: restrict to ``trials`` random planes and test each binary form;
    a squarefree verdict is then probabilistic.
    """
    if not P:
        raise ValueError("zero polynomial")
    if not P.is_homogeneous():
        raise ValueError("expected a homogeneous polynomial")
    d = P.degree
    n = P.n
    if d <= 1:
        return "squarefree"
    if n == 1:
        return "repeated-factor"
    if n == 2:
        coeffs = [Fraction(0)] * (d + 1)
        for (a, b), c in P.terms.items():
            coeffs[a] += c
        return _binary_verdict(coeffs, d)
    rng = random.Random(seed)
    s, t = CommPoly.var(2, 0), CommPoly.var(2, 1)
    verdicts = []
    for _ in range(trials):
        subs = [rng.randint(-50, 50) * s + rng.randint(-50, 50) * t for _ in range(n)]
        Q = P.substitute(subs)
        coeffs = [Fraction(0)] * (d + 1)
        for (a, b), c in Q.terms.items():
            coeffs[a] += c
        verdicts.append(_binary_verdict(coeffs, d) if Q else "undetermined")
    if "repeated-factor" in verdicts:
        return "repeated-factor"
    if "undetermined" in verdicts:
        return "undetermined"
    return "squarefree"
