import pytest

from lcsq.lcs import (
    FilteredPiece,
    algebra_dim,
    b_dim_quotient,
    filtered_engine,
    filtered_pieces,
    gr_algebra_dim,
    gr_b_dim,
    random_relation,
)
from lcsq.ncpoly import AlgebraPresentation, ResourceError, parse

from oracles import filtered_reading_brute


def fpres(text, n=2):
    return AlgebraPresentation(n, parse(text, n), mode="filtered")


@pytest.mark.parametrize("text", ["x^2+y^2", "xyx", "x^2*y-3*y*x^2", "x*y+2*y*x"])
@pytest.mark.parametrize("i", [1, 2, 3])
@pytest.mark.parametrize("M", [4, 5])
def test_truncated_reading_matches_brute(text, i, M):
    P = parse(text, 2)
    eng = filtered_engine(AlgebraPresentation(2, P, mode="filtered"))
    assert list(eng.reading(i, M, M)) == [filtered_reading_brute(P, i, m, M) for m in range(M + 1)]


def test_truncated_reading_random_three_generators():
    P = random_relation(3, 2, 4)
    eng = filtered_engine(AlgebraPresentation(3, P, mode="filtered"))
    assert list(eng.reading(2, 3, 3)) == [filtered_reading_brute(P, 2, m, 3) for m in range(4)]


def test_degree_one_is_zero():
    for text in ("x^2+y^2", "xyx"):
        g = gr_b_dim(fpres(text), 2, 1)
        assert g.dim == 0 and g.certified


def test_piece_fields():
    piece = filtered_pieces(fpres("xyx"), 2, 3)
    assert isinstance(piece, FilteredPiece)
    assert piece.index == 2 and piece.degree == 3
    assert piece.truncation >= 3 + 3
    assert piece.dimension == piece.numerator - piece.denominator
    assert piece.stabilized


def test_explicit_truncation_is_respected():
    pres = fpres("x^2+y^2")
    eng = filtered_engine(pres)
    piece = filtered_pieces(pres, 1, 3, truncation=5)
    assert piece.truncation >= 5
    num, den = eng.reading(1, 3, piece.truncation)[-1]
    assert (piece.numerator, piece.denominator) == (num, den)


def test_rejects_graded_presentation():
    graded = AlgebraPresentation(2, parse("xyx", 2))
    with pytest.raises(ValueError):
        gr_b_dim(graded, 2, 2)
    with pytest.raises(ValueError):
        filtered_pieces(graded, 2, 2)
    with pytest.raises(ValueError):
        gr_b_dim(fpres("xyx"), 1, 2)


def test_truncation_limit():
    pres = fpres("x^2+y^2")
    with pytest.raises(ResourceError):
        filtered_pieces(pres, 2, 3, truncation=30)
    with pytest.raises(ValueError):
        filtered_pieces(pres, 2, 5, truncation=3)


def test_gr_algebra_of_conic_matches_graded():
    pres = fpres("x^2+y^2")
    assert [gr_algebra_dim(pres, m).dim for m in range(7)] == [algebra_dim(pres.graded(), m) for m in range(7)]


def test_gr_algebra_can_be_smaller():
    pres = fpres("xyx")
    gr = [gr_algebra_dim(pres, m) for m in range(6)]
    assert [g.dim for g in gr] == [1, 2, 3, 3, 3, 3]
    assert all(g.certified for g in gr)
    graded = [algebra_dim(pres.graded(), m) for m in range(6)]
    assert graded == [1, 2, 4, 7, 12, 21]


def test_commutator_absorbed_in_filtered_conic():
    # [x, y] is a combination of triple brackets and u(P - 1)v for P = x^2 + y^2,
    # so the filtered B_2 loses the degree-2 class the graded one has
    P = parse("x^2+y^2", 2)
    num, den = filtered_reading_brute(P, 2, 2, 4)
    assert num == den
    assert gr_b_dim(fpres("x^2+y^2"), 2, 2).dim == 0
    assert b_dim_quotient(AlgebraPresentation(2, P), 2, 2) == 1


@pytest.mark.parametrize("seed", [0, 1])
def test_gr_at_most_graded_random(seed):
    P = random_relation(2, 2, seed)
    pres = AlgebraPresentation(2, P, mode="filtered")
    for m in range(1, 5):
        g = gr_b_dim(pres, 2, m)
        assert g.certified
        assert g.dim <= b_dim_quotient(pres.graded(), 2, m)


def test_gr_b3_at_most_graded():
    pres = fpres("xyx")
    for m in range(1, 4):
        assert gr_b_dim(pres, 3, m).dim <= b_dim_quotient(pres.graded(), 3, m)
