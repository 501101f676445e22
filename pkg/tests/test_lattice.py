import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from toricinterp.errors import (
    DomainError,
    NormalizationIntegralityError,
    PreconditionError,
    ValidationError,
    VerticalEdgeError,
)
from toricinterp.lattice import (
    AffineUnimodularMap,
    SupportSet,
    Triangle,
    apply_map,
    boundary_count,
    count_integers,
    enumerate_points,
    format_triangle,
    gk_normalize,
    gk_setup_check,
    parse_triangle,
    support_from_wpp,
    triangle_data,
)

F = Fraction
QUESTION = Triangle([(0, 0), (10, 40), (36, 27)])
UNIT = Triangle([(0, 0), (1, 0), (0, 1)])


def brute_force_points(t: Triangle, q: int = 1):
    """Lattice points of q*t by a half-plane test over the bounding box."""
    a, b, c = (tuple(q * v for v in p) for p in t.vertices)

    def side(o, p, r):
        return (p[0] - o[0]) * (r[1] - o[1]) - (p[1] - o[1]) * (r[0] - o[0])

    orient = 1 if side(a, b, c) > 0 else -1
    xs, ys = [p[0] for p in (a, b, c)], [p[1] for p in (a, b, c)]
    out = []
    for x in range(math.floor(min(xs)), math.ceil(max(xs)) + 1):
        for y in range(math.floor(min(ys)), math.ceil(max(ys)) + 1):
            p = (x, y)
            if all(orient * side(u, v, p) >= 0 for u, v in ((a, b), (b, c), (c, a))):
                out.append(p)
    return sorted(out)


small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def triangles(draw, coords=small_rationals):
    verts = [(draw(coords), draw(coords)) for _ in range(3)]
    try:
        return Triangle(verts)
    except DomainError:
        assume(False)


@st.composite
def unimodular_maps(draw):
    mats = [((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((1, 0), (1, 1)),
            ((0, -1), (1, 0)), ((2, 1), (1, 1)), ((-1, 0), (0, 1))]
    m = AffineUnimodularMap(draw(st.sampled_from(mats)),
                            (draw(st.integers(-5, 5)), draw(st.integers(-5, 5))))
    for _ in range(draw(st.integers(0, 2))):
        m = m.then(AffineUnimodularMap.shear(draw(st.integers(-3, 3))))
    return m


# ---------------------------------------------------------------------------


def test_triangle_data_examples():
    data = triangle_data(QUESTION)
    assert data.slopes == (F(-1, 2), F(3, 4), F(4))
    assert data.width == 36 and data.doubled_area == 1170
    data = triangle_data(Triangle([(0, 0), (2, 1), (1, 3)]))
    assert data.slopes == (F(-2), F(1, 2), F(3))
    assert data.width == 2 and data.doubled_area == 5


def test_vertical_edge_error():
    with pytest.raises(VerticalEdgeError) as info:
        triangle_data(UNIT)
    assert info.value.name == "vertical-edge"


def test_degenerate_triangle_rejected():
    with pytest.raises(DomainError):
        Triangle([(0, 0), (1, 1), (2, 2)])


def test_parse_and_format_round_trip():
    t = parse_triangle("-3/4,5/8; 0,0; 1/5,11/10")
    assert format_triangle(t) == "-3/4,5/8;0,0;1/5,11/10"
    assert parse_triangle(format_triangle(t)) == t
    with pytest.raises(ValidationError):
        parse_triangle("0,0;1,1")
    with pytest.raises(ValidationError):
        parse_triangle("0,0;1,x;2,3")


@pytest.mark.parametrize("lo,hi,expected", [
    (F(-1, 2), F(3, 4), 1),
    (1, 3, 3),
    (F(1, 3), F(2, 3), 0),
])
def test_count_integers_examples(lo, hi, expected):
    assert count_integers(lo, hi) == expected


@given(small_rationals, small_rationals)
def test_count_integers_brute_force(a, b):
    lo, hi = min(a, b), max(a, b)
    assert count_integers(lo, hi) == sum(1 for k in range(-5, 6) if lo <= k <= hi)


def test_enumerate_examples():
    assert list(enumerate_points(UNIT)) == [(0, 0), (0, 1), (1, 0)]
    assert len(enumerate_points(QUESTION)) == 602
    assert len(enumerate_points(QUESTION, 2)) == 2373
    assert boundary_count(QUESTION) == 32


def test_enumerate_rejects_bad_dilation():
    with pytest.raises(DomainError):
        enumerate_points(UNIT, 0)


@given(triangles(), st.integers(1, 3))
def test_enumerate_matches_brute_force(t, q):
    assert list(enumerate_points(t, q)) == brute_force_points(t, q)


@given(triangles(coords=st.integers(-6, 6)), st.integers(1, 4))
def test_ehrhart_pick(t, q):
    # integral triangle: |qT| = A q^2 + (B/2) q + 1 with A the area and B the boundary count
    area2 = _doubled_area(t)
    b = boundary_count(t)
    assert 2 * len(enumerate_points(t, q)) == area2 * q * q + b * q + 2


def _doubled_area(t):
    (x0, y0), (x1, y1), (x2, y2) = t.vertices
    return abs((x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0))


def test_support_from_wpp_examples():
    assert list(support_from_wpp(1, 1, 1, 2)) == sorted((u, v) for u in range(3) for v in range(3 - u))
    assert list(support_from_wpp(9, 10, 13, 13)) == [(0, 0)]
    assert len(support_from_wpp(9, 10, 13, 1170)) == 602


def test_support_from_wpp_rejects_non_coprime():
    with pytest.raises(DomainError):
        support_from_wpp(2, 4, 5, 10)


@given(st.integers(1, 7), st.integers(1, 7), st.integers(1, 7), st.integers(0, 60))
def test_support_from_wpp_brute_force(a, b, c, d):
    assume(math.gcd(a, b) == math.gcd(a, c) == math.gcd(b, c) == 1)
    expected = [(u, v) for u in range(d + 1) for v in range(d + 1)
                if a * u + b * v <= d and (d - a * u - b * v) % c == 0]
    assert list(support_from_wpp(a, b, c, d)) == expected


def test_apply_map_examples():
    sup = SupportSet([(0, 0), (1, 0), (0, 1)])
    assert apply_map(AffineUnimodularMap(), sup) == sup
    assert list(apply_map(AffineUnimodularMap.shear(2), sup)) == [(0, 0), (0, 1), (1, 2)]
    assert list(apply_map(AffineUnimodularMap.translate(-1, 3), SupportSet([(0, 0)]))) == [(-1, 3)]


def test_non_unimodular_rejected():
    with pytest.raises(DomainError):
        AffineUnimodularMap(((2, 0), (0, 1)))


@given(unimodular_maps(), st.integers(-9, 9), st.integers(-9, 9))
def test_map_inverse(m, x, y):
    assert m.inverse()(m((x, y))) == (x, y)
    assert m.then(m.inverse())((x, y)) == (x, y)


@given(triangles(coords=st.integers(-5, 5)), unimodular_maps())
def test_enumeration_commutes_with_maps(t, m):
    assert apply_map(m, enumerate_points(t)) == enumerate_points(apply_map(m, t))


def test_gk_setup_examples():
    assert gk_setup_check(Triangle([(0, 0), (F(-1, 4), F(11, 8)), (F(1, 2), F(1, 4))]))
    assert not gk_setup_check(QUESTION.scale(F(1, 1170)))
    assert not gk_setup_check(UNIT)


# ---------------------------------------------------------------------------
# normalization


# already normalized: leftmost (-1, beta+n+1), long edge ending at (alpha+n-1, 0)
SYNTHETIC_2_3_4 = Triangle([(-1, 7), (1, 0), (4, 0)])
SYNTHETIC_1_1_2 = Triangle([(-1, 4), (0, 0), (1, 0)])


@given(st.integers(-4, 4), st.integers(-5, 5), st.integers(-5, 5))
def test_round_trip_2_3_4(shear, dx, dy):
    # shears and integral translations are exactly the moves the normalization undoes
    base = SYNTHETIC_2_3_4
    moved = apply_map(AffineUnimodularMap.shear(shear).then(AffineUnimodularMap.translate(dx, dy)), base)
    norm = gk_normalize(moved, 1, check_setup=False)
    assert (norm.n, norm.alpha, norm.beta) == (2, 3, 4)
    assert apply_map(norm.map, moved) == base
    assert norm.leftmost == (-1, 7)


def test_round_trip_1_1_2_has_integral_middle_slope():
    # the long edge from (-1, 4) to (1, 0) has slope -2, so no normalization exists
    with pytest.raises(PreconditionError) as info:
        gk_normalize(SYNTHETIC_1_1_2, 1, check_setup=False)
    assert info.value.name == "s2-integral"


def test_normalization_integrality_error():
    t = parse_triangle("-3/4,5/8;0,0;1/5,11/10")
    with pytest.raises(NormalizationIntegralityError) as info:
        gk_normalize(t, 1)
    assert info.value.name == "normalization-integrality"


def test_normalization_of_search_triangle():
    t = parse_triangle("-3/4,5/8;0,0;1/5,11/10")
    norm = gk_normalize(t, 40)
    assert (norm.n, norm.alpha, norm.beta) == (1, 37, 55)
    assert norm.width == 38
    assert norm.support[0] == norm.leftmost


def test_column_profile_failure_is_reported():
    with pytest.raises(PreconditionError) as info:
        gk_normalize(parse_triangle("-1/3,11/12;0,0;3/5,23/20"), 60)
    assert info.value.name == "column-profile"


def test_setup_required_by_default():
    with pytest.raises(PreconditionError) as info:
        gk_normalize(SYNTHETIC_2_3_4, 1)
    assert info.value.name == "setup"
