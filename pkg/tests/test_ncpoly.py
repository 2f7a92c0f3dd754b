from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lcsq.ncpoly import (
    AlgebraPresentation,
    CommPoly,
    GeneratorMismatch,
    NCPoly,
    ParseError,
    ResourceError,
    abelianize,
    bracket,
    code_word,
    enumerate_words,
    format_poly,
    nc_mul,
    parse,
    partial,
    word_code,
)

x, y, z = (NCPoly.gen(3, i) for i in range(3))
X2, Y2 = NCPoly.gen(2, 0), NCPoly.gen(2, 1)


def test_enumerate_words_deglex():
    assert enumerate_words(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert enumerate_words(2, 0) == [()]
    assert len(enumerate_words(3, 2)) == 9


def test_enumerate_words_cap():
    with pytest.raises(ResourceError):
        enumerate_words(2, 30, cap=1000)


def test_word_codes_roundtrip():
    for w in enumerate_words(3, 4):
        assert code_word(word_code(w, 3), 3, 4) == w
    codes = [word_code(w, 3) for w in enumerate_words(3, 4)]
    assert codes == list(range(81))


def test_products():
    assert nc_mul(X2, Y2) == NCPoly.word(2, (0, 1))
    lhs = (X2 + Y2) * (X2 - Y2)
    assert lhs == parse("xx - xy + yx - yy", 2)
    p = parse("x^2 + 3*y", 2)
    assert p * 1 == p and p * NCPoly.const(2) == p


def test_generator_mismatch():
    with pytest.raises(GeneratorMismatch):
        X2 * x
    with pytest.raises(GeneratorMismatch):
        bracket(X2, x)


def test_bracket_examples():
    assert not bracket(x, x)
    assert bracket(x, y) == x * y - y * x
    assert bracket(x * y, z) == parse("xyz - zxy", 3)


def test_abelianize_examples():
    assert not abelianize(bracket(X2, Y2))
    assert abelianize(parse("xyx", 2)) == CommPoly(2, {(2, 1): 1})
    assert abelianize(parse("x^2+y^2", 2)) == CommPoly(2, {(2, 0): 1, (0, 2): 1})


def test_partial_examples():
    f = abelianize(parse("x^2+y^2", 3))
    assert partial(f, 0) == CommPoly(3, {(1, 0, 0): 2})
    assert not partial(f, 2)
    with pytest.raises(ValueError):
        partial(f, 3)


def test_parse_examples():
    assert parse("x^2+y^2", 2) == NCPoly(2, {(0, 0): 1, (1, 1): 1})
    assert parse("x*y - y*x", 2) == bracket(X2, Y2)
    assert parse("x1 x2 - x2*x1", 2) == bracket(X2, Y2)
    assert parse("3/2*x*(y+x)^2", 2).terms[(0, 1, 1)] == Fraction(3, 2)


@pytest.mark.parametrize("text", ["x^0", "", "x +", "q", "x^-1", "(x", "x/0", "x5"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text, 2)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse("x + y + q", 2)
    assert info.value.position == 8


def test_format_examples():
    assert format_poly(parse("y^2 + x^2", 2)) == "x^2 + y^2"
    assert format_poly(parse("xy - yx", 2)) == "x*y - y*x"
    assert format_poly(parse("-1/2*yx + 2", 2)) == "2 - 1/2*y*x"
    assert format_poly(NCPoly(2)) == "0"


def test_presentation_validation():
    with pytest.raises(ValueError):
        AlgebraPresentation(2, parse("x^2 + y", 2))
    with pytest.raises(ValueError):
        AlgebraPresentation(2, parse("x + y", 2))
    with pytest.raises(GeneratorMismatch):
        AlgebraPresentation(3, parse("x^2", 2))
    pres = AlgebraPresentation(2, parse("x^2+y^2", 2), "filtered")
    assert pres.d == 2
    assert pres.relation == parse("x^2+y^2-1", 2)
    assert pres.graded().relation == parse("x^2+y^2", 2)


# -- properties -------------------------------------------------------------

coeffs = st.integers(-5, 5)


def polys(n=3, max_deg=3, homogeneous_degree=None):
    if homogeneous_degree is not None:
        words = st.lists(st.integers(0, n - 1), min_size=homogeneous_degree, max_size=homogeneous_degree)
    else:
        words = st.lists(st.integers(0, n - 1), max_size=max_deg)
    return st.dictionaries(words.map(tuple), coeffs, max_size=5).map(lambda t: NCPoly(n, t))


@given(polys(), polys())
def test_bracket_antisymmetric(p, q):
    assert bracket(p, q) == -bracket(q, p)


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_bracket_homogeneous_degree(a, b, data):
    p = data.draw(polys(homogeneous_degree=a))
    q = data.draw(polys(homogeneous_degree=b))
    r = bracket(p, q)
    assert not r or (r.is_homogeneous() and r.degree == a + b)


@given(polys(), polys(), polys())
@settings(max_examples=50)
def test_jacobi(p, q, r):
    total = bracket(p, bracket(q, r)) + bracket(q, bracket(r, p)) + bracket(r, bracket(p, q))
    assert not total


@given(polys(), polys())
def test_abelianize_is_multiplicative(p, q):
    assert abelianize(nc_mul(p, q)) == abelianize(p) * abelianize(q)
    assert abelianize(p + q) == abelianize(p) + abelianize(q)


@given(st.integers(1, 4), st.data())
def test_euler_identity(d, data):
    f = abelianize(data.draw(polys(homogeneous_degree=d)))
    euler = sum((CommPoly.var(3, i) * partial(f, i) for i in range(3)), CommPoly(3))
    assert euler == f * d


@given(polys(n=2), polys(n=2))
def test_leibniz_for_partials(p, q):
    f, g = abelianize(p), abelianize(q)
    for i in range(2):
        assert partial(f * g, i) == f * partial(g, i) + g * partial(f, i)


@given(polys(n=4, max_deg=4))
def test_parse_format_roundtrip(p):
    text = format_poly(p)
    assert parse(text, 4) == p
    assert format_poly(parse(text, 4)) == text
