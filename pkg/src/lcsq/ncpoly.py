"""Words, noncommutative polynomials and commutative polynomials over Q.

A word in ``n`` generators is a tuple of letter indices in ``range(n)``.
Inside one degree ``m`` a word is also identified with its *code*, the
base-``n`` integer spelled by its letters; ordering codes numerically is the
degree-lexicographic order ``x_0 < x_1 < ...`` used for every matrix column
in the package.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Word = tuple[int, ...]

SHORT_NAMES = "xyzw"

#: refuse to enumerate more words than this in one degree
WORD_CAP = 1 << 22


class ResourceError(RuntimeError):
    """A requested computation exceeds a configured size cap."""


class GeneratorMismatch(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def generator_names(n: int) -> list[str]:
    if n <= len(SHORT_NAMES):
        return list(SHORT_NAMES[:n])
    return [f"x{i + 1}" for i in range(n)]


def enumerate_words(n: int, m: int, cap: int = WORD_CAP) -> list[Word]:
    """All ``n**m`` words of degree ``m`` in degree-lexicographic order."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if n**m > cap:
        raise ResourceError(f"{n}^{m} words exceed the cap {cap}")
    return list(itertools.product(range(n), repeat=m))


def word_code(word: Word, n: int) -> int:
    code = 0
    for letter in word:
        code = code * n + letter
    return code


def code_word(code: int, n: int, m: int) -> Word:
    letters = [0] * m
    for pos in range(m - 1, -1, -1):
        code, letters[pos] = divmod(code, n)
    return tuple(letters)


def content(word: Word, n: int) -> tuple[int, ...]:
    counts = [0] * n
    for letter in word:
        counts[letter] += 1
    return tuple(counts)


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class NCPoly:
    """Element of the free algebra Q<x_1..x_n>; immutable once built."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Word, object] | None = None):
        if n < 1:
            raise ValueError("generator count must be positive")
        clean: dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            if any(not 0 <= a < n for a in word):
                raise ValueError(f"letter out of range in {word} for n={n}")
            c = _coerce(coeff)
            if c:
                clean[word] = clean.get(word, Fraction(0)) + c
                if not clean[word]:
                    del clean[word]
        self.n = n
        self._terms = clean
        self._hash = None

    @classmethod
    def gen(cls, n: int, i: int) -> "NCPoly":
        return cls(n, {(i,): 1})

    @classmethod
    def const(cls, n: int, c=1) -> "NCPoly":
        return cls(n, {(): c})

    @classmethod
    def word(cls, n: int, word: Iterable[int], c=1) -> "NCPoly":
        return cls(n, {tuple(word): c})

    @property
    def terms(self) -> dict[Word, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0])))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degrees(self) -> set[int]:
        return {len(w) for w in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Top degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def _check(self, other: "NCPoly") -> None:
        if self.n != other.n:
            raise GeneratorMismatch(f"generator counts differ: {self.n} vs {other.n}")

    def _lift(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return NCPoly.const(self.n, other)

    def __add__(self, other) -> "NCPoly":
        other = self._lift(other)
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, 0) + c
        return NCPoly(self.n, terms)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.n, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> "NCPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "NCPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            c = _coerce(other)
            return NCPoly(self.n, {w: c * v for w, v in self._terms.items()})
        return nc_mul(self, other)

    def __rmul__(self, other) -> "NCPoly":
        c = _coerce(other)
        return NCPoly(self.n, {w: c * v for w, v in self._terms.items()})

    def __pow__(self, k: int) -> "NCPoly":
        if k < 0:
            raise ValueError("negative power")
        out = NCPoly.const(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == NCPoly.const(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"NCPoly({self.n}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def nc_mul(p: NCPoly, q: NCPoly) -> NCPoly:
    """Concatenation product in the free algebra."""
    p._check(q)
    terms: dict[Word, Fraction] = {}
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            w = u + v
            terms[w] = terms.get(w, 0) + a * b
    return NCPoly(p.n, terms)


def bracket(p: NCPoly, q: NCPoly) -> NCPoly:
    """Commutator ``pq - qp``."""
    return nc_mul(p, q) - nc_mul(q, p)


class CommPoly:
    """Element of Q[x_1..x_n], keyed by exponent vectors."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], object] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for n={n}")
            c = clean.get(exps, Fraction(0)) + _coerce(coeff)
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.n = n
        self._terms = clean

    @classmethod
    def var(cls, n: int, i: int) -> "CommPoly":
        return cls(n, {tuple(int(j == i) for j in range(n)): 1})

    @classmethod
    def const(cls, n: int, c=1) -> "CommPoly":
        return cls(n, {(0,) * n: c})

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def _lift(self, other) -> "CommPoly":
        if isinstance(other, CommPoly):
            if other.n != self.n:
                raise GeneratorMismatch("generator counts differ")
            return other
        return CommPoly.const(self.n, other)

    def __add__(self, other) -> "CommPoly":
        other = self._lift(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return CommPoly(self.n, terms)

    __radd__ = __add__

    def __neg__(self) -> "CommPoly":
        return CommPoly(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "CommPoly":
        return self + (-self._lift(other))

    def __mul__(self, other) -> "CommPoly":
        other = self._lift(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e, a in self._terms.items():
            for f, b in other._terms.items():
                g = tuple(x + y for x, y in zip(e, f))
                terms[g] = terms.get(g, 0) + a * b
        return CommPoly(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CommPoly":
        out = CommPoly.const(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, CommPoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == CommPoly.const(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def substitute(self, values: list["CommPoly"]) -> "CommPoly":
        """Replace ``x_i`` by ``values[i]`` (all in a common ring)."""
        target_n = values[0].n
        out = CommPoly(target_n)
        for e, c in self._terms.items():
            term = CommPoly.const(target_n, c)
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            out = out + term
        return out

    def __repr__(self) -> str:
        names = generator_names(self.n)
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0]))):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return f"CommPoly({self.n}, {' + '.join(parts) or '0'})"


def abelianize(p: NCPoly) -> CommPoly:
    """Image of ``p`` in the commutative polynomial ring."""
    terms: dict[tuple[int, ...], Fraction] = {}
    for w, c in p._terms.items():
        e = content(w, p.n)
        terms[e] = terms.get(e, 0) + c
    return CommPoly(p.n, terms)


def partial(f: CommPoly, i: int) -> CommPoly:
    if not 0 <= i < f.n:
        raise ValueError(f"generator index {i} out of range")
    terms = {}
    for e, c in f._terms.items():
        if e[i]:
            g = list(e)
            g[i] -= 1
            terms[tuple(g)] = c * e[i]
    return CommPoly(f.n, terms)


@dataclass(frozen=True)
class AlgebraPresentation:
    """``A_n / <P>`` (graded) or ``A_n / <P - 1>`` (filtered)."""

    n: int
    P: NCPoly
    mode: str = "graded"

    def __post_init__(self):
        if self.P.n != self.n:
            raise GeneratorMismatch("relation lives in a different free algebra")
        if not self.P or not self.P.is_homogeneous():
            raise ValueError("relation must be a nonzero homogeneous polynomial")
        if self.P.degree < 2:
            raise ValueError("relation degree must be at least 2")
        if self.mode not in ("graded", "filtered"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def d(self) -> int:
        return self.P.degree

    @property
    def relation(self) -> NCPoly:
        """The polynomial actually generating the ideal."""
        return self.P if self.mode == "graded" else self.P - 1

    def graded(self) -> "AlgebraPresentation":
        return AlgebraPresentation(self.n, self.P, "graded")

    def filtered(self) -> "AlgebraPresentation":
        return AlgebraPresentation(self.n, self.P, "filtered")


# --------------------------------------------------------------------------
# text form

def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_word(word: Word, names: list[str]) -> str:
    parts = []
    for letter, run in itertools.groupby(word):
        k = len(list(run))
        parts.append(names[letter] if k == 1 else f"{names[letter]}^{k}")
    return "*".join(parts)


def format_poly(p: NCPoly) -> str:
    """Canonical text: deglex-sorted terms, rational coefficients."""
    names = generator_names(p.n)
    out = []
    for i, (w, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = _format_word(w, names)
        if not body:
            body = _format_coeff(mag)
        elif mag != 1:
            body = f"{_format_coeff(mag)}*{body}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out) or "0"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<gen>x\d+|[a-z])|(?P<op>[-+*^/()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos].strip() or text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.n = n
        self.names = {name: k for k, name in enumerate(generator_names(n))}
        self.names.update({f"x{k + 1}": k for k in range(n)})

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, got {val or 'end of input'!r}", pos)

    def expr(self) -> NCPoly:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def _starts_factor(self) -> bool:
        kind, val, _ = self.peek()
        return kind in ("num", "gen") or (kind == "op" and val == "(")

    def term(self) -> NCPoly:
        out = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                out = out * self.factor()
            elif self._starts_factor():
                out = out * self.factor()
            else:
                return out

    def factor(self) -> NCPoly:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a positive integer", pos)
            k = int(val)
            if k < 1:
                raise ParseError("exponent must be at least 1", pos)
            base = base**k
        return base

    def atom(self) -> NCPoly:
        kind, val, pos = self.take()
        if kind == "num":
            c = Fraction(int(val))
            if self.peek()[1] == "/" and self.peek()[0] == "op":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num" or int(v2) == 0:
                    raise ParseError("denominator must be a nonzero integer", p2)
                c /= int(v2)
            return NCPoly.const(self.n, c)
        if kind == "gen":
            if val not in self.names:
                raise ParseError(f"unknown generator {val!r} for n={self.n}", pos)
            return NCPoly.gen(self.n, self.names[val])
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str, n: int) -> NCPoly:
    """Parse an expression such as ``"x^2 + y^2"`` or ``"3/2*x1*x2 - x2*x1"``.

    Juxtaposition and ``*`` both denote the noncommutative product and ``^``
    binds tighter than either.
    """
    parser = _Parser(text, n)
    if parser.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    out = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return out
