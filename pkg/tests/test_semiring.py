import pickle
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxplus_transience.errors import InputError, ResourceError
from maxplus_transience.semiring import (
    NEG_INF,
    POS_INF,
    MaxPlusMatrix,
    MaxPlusVector,
    MinPlusMatrix,
    as_entry,
    brute_force_walk_max,
    format_entry,
    format_matrix,
    format_vector,
    mat_mul,
    mat_power,
    mat_vec,
    min_plus_mat_vec,
    normalize,
    parse_entry,
    parse_matrix,
    parse_vector,
)

entries = st.one_of(
    st.just(NEG_INF),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
)


@st.composite
def matrices(draw, n=None):
    n = n or draw(st.integers(1, 4))
    return MaxPlusMatrix([[draw(entries) for _ in range(n)] for _ in range(n)])


def test_sentinel_arithmetic():
    assert NEG_INF + Fraction(3) is NEG_INF
    assert Fraction(3) + NEG_INF is NEG_INF
    assert NEG_INF < Fraction(-10**9) < POS_INF
    assert -NEG_INF is POS_INF
    assert max(NEG_INF, Fraction(1, 2)) == Fraction(1, 2)
    assert pickle.loads(pickle.dumps(NEG_INF)) is NEG_INF


def test_parse_entry_tokens():
    assert parse_entry("7") == 7
    assert parse_entry("-19/3") == Fraction(-19, 3)
    assert parse_entry("-inf") is NEG_INF
    with pytest.raises(InputError):
        parse_entry("1.5")


def test_floats_rejected():
    with pytest.raises(InputError):
        as_entry(0.5)
    with pytest.raises(InputError):
        as_entry(True)
    assert as_entry(float("-inf")) is NEG_INF


def test_matrix_roundtrip():
    text = "3\n0 -inf 1/2\n-inf 2 -3\n4 -inf -inf\n"
    a = parse_matrix(text)
    assert a[0, 2] == Fraction(1, 2)
    assert a[1, 0] is NEG_INF
    assert format_matrix(a) == text
    assert parse_matrix(format_matrix(a)) == a


def test_matrix_parse_errors_have_position():
    with pytest.raises(InputError, match="line 3, column"):
        parse_matrix("2\n0 1\n0 x\n")
    with pytest.raises(InputError, match="expected 2 entries"):
        parse_matrix("2\n0 1 2\n0 1\n")
    with pytest.raises(InputError, match="rows"):
        parse_matrix("2\n0 1\n")
    with pytest.raises(InputError):
        parse_matrix("")
    with pytest.raises(InputError):
        parse_matrix("2\n0 inf\n0 0\n")


def test_vector_roundtrip_and_norm():
    v = parse_vector("3\n0 5 -2/3\n")
    assert format_vector(v) == "3\n0 5 -2/3\n"
    assert v.norm() == Fraction(17, 3)
    assert MaxPlusVector([0, NEG_INF]).norm() is POS_INF
    with pytest.raises(InputError):
        parse_vector("2\n1 2 3\n")


def test_vector_helpers():
    assert MaxPlusVector.unit(3, 1).entries == (NEG_INF, 0, NEG_INF)
    assert MaxPlusVector.truncated_unit(3, 1, 4).entries == (-4, 0, -4)
    assert MaxPlusVector.zeros(2).is_finite()


def test_small_product():
    a = MaxPlusMatrix([[1, NEG_INF], [0, 2]])
    b = MaxPlusMatrix([[0, 3], [NEG_INF, 1]])
    assert mat_mul(a, b).rows == ((1, 4), (0, 3))
    assert mat_vec(a, MaxPlusVector([0, 1])).entries == (1, 3)


def test_dimension_mismatch():
    with pytest.raises(InputError):
        mat_mul(MaxPlusMatrix([[0]]), MaxPlusMatrix.identity(2))
    with pytest.raises(InputError):
        MaxPlusMatrix([[0, 1]])


@given(matrices(n=3), matrices(n=3), matrices(n=3))
def test_product_is_associative(a, b, c):
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


@given(matrices())
def test_identity_is_neutral(a):
    e = MaxPlusMatrix.identity(a.n)
    assert mat_mul(e, a) == a == mat_mul(a, e)


@given(matrices(), st.integers(0, 4))
def test_power_matches_walk_enumeration(a, n):
    p = mat_power(a, n)
    for i in range(a.n):
        for j in range(a.n):
            assert p[i, j] == brute_force_walk_max(a, n, i, j)


@given(matrices(), st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_shift_commutes_with_power(a, mu):
    assert mat_power(a.shift(mu), 3) == mat_power(a, 3).shift(3 * mu)


def test_vector_walks_match_product():
    a = MaxPlusMatrix([[0, 2], [NEG_INF, -1]])
    v = MaxPlusVector([1, 5])
    x = mat_vec(a, mat_vec(a, v))
    assert x.entries == tuple(brute_force_walk_max(a, 2, i, v=v) for i in range(2))


def test_walk_budget():
    a = MaxPlusMatrix([[0] * 4] * 4)
    with pytest.raises(ResourceError):
        brute_force_walk_max(a, 12, 0, 0, budget=1000)


def test_normalize_and_submatrix():
    a = MaxPlusMatrix([[2, 4], [0, NEG_INF]])
    assert normalize(a, 2).rows == ((0, 2), (-2, NEG_INF))
    assert a.submatrix([1]).rows == ((NEG_INF, NEG_INF), (NEG_INF, NEG_INF))
    with pytest.raises(InputError):
        normalize(a, NEG_INF)


def test_min_plus_product():
    a = MinPlusMatrix([[POS_INF, 0], [1, POS_INF]])
    assert min_plus_mat_vec(a, (0, 0)) == (0, 1)
    assert a.negated().rows == ((NEG_INF, 0), (-1, NEG_INF))


def test_format_entry():
    assert format_entry(Fraction(19, 3)) == "19/3"
    assert format_entry(NEG_INF) == "-inf"
    assert format_entry(Fraction(4)) == "4"
