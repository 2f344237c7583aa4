from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nvraag.dyadic import (
    ContainmentError,
    DimensionError,
    DyadicInterval,
    DyadicRational,
    Rectangle,
    Relation,
    affine_map_point,
    apply_relative_address,
    complement,
    contains_point,
    grid_partition,
    interval_relation,
    measure,
    point,
    rect_contains,
    rect_from_json,
    rect_intersection,
    rect_to_json,
    relative_address,
    subdivide,
    total_measure,
    transport,
)

from oracles import bounds, inside


def iv(address):
    return DyadicInterval.from_address(address)


def rect(*addresses):
    return Rectangle.from_addresses(*addresses)


addresses = st.text(alphabet="01", max_size=7)
intervals = addresses.map(DyadicInterval.from_address)


@st.composite
def rectangles(draw, n=None):
    if n is None:
        n = draw(st.integers(1, 3))
    return Rectangle(draw(st.lists(intervals, min_size=n, max_size=n)))


@st.composite
def nested_pair(draw):
    parent = draw(rectangles())
    suffix = [draw(st.text(alphabet="01", max_size=5)) for _ in parent]
    return apply_relative_address(parent, tuple(suffix)), parent


@st.composite
def dyadic_points_in(draw, r):
    coords = []
    for a in r:
        extra = draw(st.integers(0, 6))
        k = draw(st.integers(0, 2**extra - 1))
        coords.append(DyadicRational((a.num << extra) + k, a.depth + extra))
    return tuple(coords)


class TestDyadicRational:
    def test_normalizes(self):
        x = DyadicRational(12, 5)
        assert (x.numerator, x.exponent) == (3, 3)
        assert DyadicRational(0, 9).exponent == 0

    def test_arithmetic_is_exact(self):
        a = DyadicRational.parse("3/8")
        b = DyadicRational.parse("1/4")
        assert a + b == Fraction(5, 8)
        assert a - b == Fraction(1, 8)
        assert a * b == Fraction(3, 32)
        assert b < a

    def test_rejects_non_dyadic(self):
        with pytest.raises(ValueError):
            DyadicRational.parse("1/3")

    @pytest.mark.parametrize("text,decimal", [("1/2", "0.5"), ("3/8", "0.375"), ("5", "5"), ("-1/16", "-0.0625"), ("0", "0")])
    def test_to_decimal(self, text, decimal):
        assert DyadicRational.parse(text).to_decimal() == decimal

    @given(st.integers(-10**6, 10**6), st.integers(0, 80))
    def test_decimal_round_trip(self, num, exp):
        x = DyadicRational(num, exp)
        assert Fraction(x.to_decimal()) == x.as_fraction()


class TestIntervals:
    def test_relation_examples(self):
        assert interval_relation(iv(""), iv("")) is Relation.EQUAL
        assert interval_relation(iv("0"), iv("1")) is Relation.DISJOINT
        assert interval_relation(iv("0"), iv("01")) is Relation.A_CONTAINS_B
        assert interval_relation(iv("01"), iv("0")) is Relation.B_CONTAINS_A

    def test_make_validates(self):
        with pytest.raises(ValueError):
            DyadicInterval.make(4, 2)
        assert DyadicInterval.make(3, 2) == iv("11")

    def test_endpoints(self):
        a = iv("011")
        assert a.lo == Fraction(3, 8) and a.hi == Fraction(1, 2)
        assert a.address == "011"

    @given(addresses, addresses)
    def test_laminarity(self, x, y):
        a, b = iv(x), iv(y)
        rel = interval_relation(a, b)
        (alo, ahi), = bounds([a])
        (blo, bhi), = bounds([b])
        overlap = max(alo, blo) < min(ahi, bhi)
        if rel is Relation.DISJOINT:
            assert not overlap
            assert not x.startswith(y) and not y.startswith(x)
        else:
            assert overlap
        if rel is Relation.A_CONTAINS_B:
            assert y.startswith(x) and x != y
        # no partial overlaps: overlapping intervals are nested
        if overlap:
            assert (alo <= blo and bhi <= ahi) or (blo <= alo and ahi <= bhi)

    @given(addresses)
    def test_path_partition_tiles_unit(self, x):
        parts = iv(x).path_partition()
        assert len(parts) == len(x) + 1
        assert sum(Fraction(1, 2**p.depth) for p in parts) == 1
        for i, p in enumerate(parts):
            for q in parts[i + 1:]:
                assert interval_relation(p, q) is Relation.DISJOINT


class TestRectangles:
    def test_intersection_examples(self):
        r1 = rect("0", "")
        r2 = rect("", "1")
        assert rect_intersection(r1, r2) == rect("0", "1")
        assert rect_intersection(rect("0", "0"), rect("1", "")) is None

    @given(rectangles())
    def test_intersection_idempotent(self, r):
        assert rect_intersection(r, r) == r

    def test_intersection_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            rect_intersection(rect("0"), rect("0", "1"))

    @given(st.data())
    def test_intersection_matches_fraction_overlap(self, data):
        n = data.draw(st.integers(1, 3))
        a = data.draw(rectangles(n))
        b = data.draw(rectangles(n))
        x = rect_intersection(a, b)
        ba, bb = bounds(a), bounds(b)
        overlap = [(max(p[0], q[0]), min(p[1], q[1])) for p, q in zip(ba, bb)]
        if x is None:
            assert any(lo >= hi for lo, hi in overlap)
        else:
            assert bounds(x) == overlap

    def test_relative_address_examples(self):
        assert relative_address(rect("01", ""), rect("0", "")) == ("1", "")
        r = rect("10", "0")
        assert relative_address(r, r) == ("", "")
        with pytest.raises(ContainmentError):
            relative_address(rect("1", ""), rect("0", ""))

    def test_apply_relative_address_examples(self):
        assert apply_relative_address(rect("", ""), ("0", "1")) == rect("0", "1")
        assert apply_relative_address(rect("0"), ("1",)) == rect("01")

    @given(nested_pair())
    def test_relative_address_round_trip(self, pair):
        child, parent = pair
        rel = relative_address(child, parent)
        assert apply_relative_address(parent, rel) == child
        for bits, c, p in zip(rel, child, parent):
            assert len(bits) == c.depth - p.depth

    def test_affine_map_examples(self):
        src = rect("0", "0")
        dst = rect("00", "0")
        p = point("1/4", "1/4")
        assert affine_map_point(src, src, p) == p
        assert affine_map_point(src, dst, p) == point("1/8", "1/4")
        with pytest.raises(ContainmentError):
            affine_map_point(src, dst, point("1/2", "0"))

    @given(st.data())
    def test_affine_map_matches_formula(self, data):
        n = data.draw(st.integers(1, 3))
        src = data.draw(rectangles(n))
        dst = data.draw(rectangles(n))
        p = data.draw(dyadic_points_in(src))
        image = affine_map_point(src, dst, p)
        expected = tuple(
            (x.as_fraction() - slo) * (thi - tlo) / (shi - slo) + tlo
            for (slo, shi), (tlo, thi), x in zip(bounds(src), bounds(dst), p)
        )
        assert tuple(y.as_fraction() for y in image) == expected
        assert contains_point(dst, image)
        assert affine_map_point(src, dst, src.lower_corner) == dst.lower_corner

    @given(st.data())
    def test_affine_transport(self, data):
        child, src = data.draw(nested_pair())
        dst = data.draw(rectangles(len(src)))
        image = apply_relative_address(dst, relative_address(child, src))
        assert transport(child, src, dst) == image
        # the affine image of child's corners are image's corners
        assert affine_map_point(src, dst, child.lower_corner) == image.lower_corner

    def test_measure_subdivide_contains(self):
        assert measure(rect("0", "00")) == Fraction(1, 8)
        assert subdivide(rect("", ""), 0) == (rect("0", ""), rect("1", ""))
        assert not contains_point(rect("0"), point("1/2"))
        assert contains_point(rect("0"), point("0"))
        with pytest.raises(IndexError):
            subdivide(rect("0"), 1)

    @given(st.data())
    def test_partition_law(self, data):
        r = data.draw(rectangles())
        axis = data.draw(st.integers(0, len(r) - 1))
        lo, hi = subdivide(r, axis)
        assert rect_intersection(lo, hi) is None
        assert measure(lo) + measure(hi) == measure(r)
        assert rect_contains(r, lo) and rect_contains(r, hi)
        p = data.draw(dyadic_points_in(r))
        assert contains_point(lo, p) != contains_point(hi, p)

    @given(rectangles())
    def test_complement_tiles_rest_of_cube(self, r):
        rest = complement(r)
        assert total_measure(rest) + measure(r) == 1
        assert all(rect_intersection(c, r) is None for c in rest)
        corner = tuple(Fraction(0) for _ in r)
        assert inside(r, corner) or any(inside(c, corner) for c in rest)

    def test_grid_partition_requires_whole_unlisted_axes(self):
        with pytest.raises(ValueError):
            grid_partition(rect("0", "1"), [0])
        assert len(grid_partition(rect("01", ""), [0])) == 3

    @given(rectangles())
    def test_json_round_trip(self, r):
        assert rect_from_json(rect_to_json(r)) == r
