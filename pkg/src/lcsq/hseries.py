"""Hilbert-Poincare series as exact rational functions in ``t``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

IntPoly = tuple[int, ...]


def trim(coeffs: Sequence[int]) -> IntPoly:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_add(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_neg(a: Sequence[int]) -> IntPoly:
    return tuple(-c for c in a)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def poly_pow(a: Sequence[int], k: int) -> IntPoly:
    out: IntPoly = (1,)
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def monomial(k: int, c: int = 1) -> IntPoly:
    return trim([0] * k + [c])


def _divmod_q(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    """Primitive gcd over Q, normalised to a positive leading coefficient."""
    x = [Fraction(c) for c in trim(a)]
    y = [Fraction(c) for c in trim(b)]
    while y:
        _, r = _divmod_q(x, y)
        x, y = y, r
    if not x:
        return ()
    den = 1
    for c in x:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in x]
    g = _content(ints)
    if ints[-1] < 0:
        g = -g
    return tuple(c // g for c in ints)


def poly_exact_div(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    q, r = _divmod_q([Fraction(c) for c in a], [Fraction(c) for c in b])
    if r:
        raise ArithmeticError("polynomial division is not exact")
    if any(c.denominator != 1 for c in q):
        raise ArithmeticError("quotient has non-integral coefficients")
    return trim([int(c) for c in q])


@dataclass(frozen=True)
class HilbertSeries:
    """``num(t) / den(t)`` with integer coefficient lists (constant term first)."""

    num: IntPoly
    den: IntPoly = (1,)

    def __post_init__(self):
        num, den = trim(self.num), trim(self.den)
        if not den or den[0] == 0:
            raise ZeroDivisionError("denominator must be nonzero at t = 0")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def polynomial(cls, coeffs: Sequence[int]) -> "HilbertSeries":
        return cls(tuple(coeffs), (1,))

    def normalized(self) -> "HilbertSeries":
        if not self.num:
            return HilbertSeries((), (1,))
        g = poly_gcd(self.num, self.den)
        num, den = self.num, self.den
        if len(g) > 1:
            num, den = poly_exact_div(num, g), poly_exact_div(den, g)
        c = gcd(_content(num), _content(den))
        if den[0] < 0:
            c = -c
        return HilbertSeries(tuple(x // c for x in num), tuple(x // c for x in den))

    def expand(self, cap: int) -> list[int]:
        return expand(self, cap)

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        return series_arith(self, other, "add")

    def __sub__(self, other: "HilbertSeries") -> "HilbertSeries":
        return series_arith(self, other, "sub")

    def __mul__(self, other: "HilbertSeries") -> "HilbertSeries":
        return series_arith(self, other, "mul")

    def to_json(self, cap: int) -> dict:
        return {"num": list(self.num), "den": list(self.den), "expansion": self.expand(cap)}


def expand(s: HilbertSeries, cap: int) -> list[int]:
    """First ``cap + 1`` power-series coefficients of ``num/den``."""
    num, den = s.num, s.den
    d0 = den[0]
    out: list[int] = []
    for k in range(cap + 1):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        q, r = divmod(acc, d0)
        if r:
            raise ArithmeticError(f"coefficient of t^{k} is not an integer")
        out.append(q)
    return out


def series_arith(a: HilbertSeries, b: HilbertSeries, op: str) -> HilbertSeries:
    if op == "mul":
        res = HilbertSeries(poly_mul(a.num, b.num), poly_mul(a.den, b.den))
    elif op in ("add", "sub"):
        right = poly_mul(b.num, a.den)
        if op == "sub":
            right = poly_neg(right)
        res = HilbertSeries(poly_add(poly_mul(a.num, b.den), right), poly_mul(a.den, b.den))
    else:
        raise ValueError(f"unknown series operation {op!r}")
    return res.normalized()


def eq_prefix(a: HilbertSeries | Sequence[int], b: HilbertSeries | Sequence[int], cap: int) -> bool:
    """Whether two series agree through degree ``cap``.

    Plain coefficient lists are accepted and padded with zeros.
    """

    def coeffs(s):
        if isinstance(s, HilbertSeries):
            return s.expand(cap)
        s = list(s)[: cap + 1]
        return s + [0] * (cap + 1 - len(s))

    return coeffs(a) == coeffs(b)


# handy constructors --------------------------------------------------------

ONE_MINUS_T: IntPoly = (1, -1)


def geometric_block(lo: int, hi: int) -> IntPoly:
    """``t^lo + ... + t^(hi-1)`` as a polynomial."""
    return trim([0] * lo + [1] * max(hi - lo, 0))
