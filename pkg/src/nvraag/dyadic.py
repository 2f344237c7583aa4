"""Exact dyadic geometry on the unit cube [0,1)^n.

Everything here is integer arithmetic.  A dyadic interval is stored as
``(num, depth)`` meaning ``[num / 2**depth, (num + 1) / 2**depth)``, so every
interval is reachable from [0,1) by halving and two intervals are always either
disjoint or nested.  Rectangles are tuples of intervals, one per axis.  Axes are
0-based Python indices throughout this module.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, NamedTuple, Sequence


class DimensionError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


@total_ordering
class DyadicRational:
    """A rational number ``numerator / 2**exponent`` kept in lowest terms."""

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int, exponent: int = 0):
        numerator = int(numerator)
        exponent = int(exponent)
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        if numerator == 0:
            exponent = 0
        elif exponent:
            # strip common factors of two
            tz = (numerator & -numerator).bit_length() - 1
            shift = min(tz, exponent)
            numerator >>= shift
            exponent -= shift
        self.numerator = numerator
        self.exponent = exponent

    @classmethod
    def coerce(cls, value) -> "DyadicRational":
        if isinstance(value, DyadicRational):
            return value
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, Fraction):
            return cls.from_fraction(value)
        raise TypeError(f"cannot interpret {value!r} as a dyadic rational")

    @classmethod
    def from_fraction(cls, q: Fraction) -> "DyadicRational":
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not dyadic")
        return cls(q.numerator, den.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        return cls.from_fraction(Fraction(text))

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def scaled(self, exponent: int) -> int:
        """Numerator of this value over ``2**exponent`` (must be exact)."""
        if exponent < self.exponent:
            raise ValueError("exponent too small for exact scaling")
        return self.numerator << (exponent - self.exponent)

    def _align(self, other: "DyadicRational"):
        e = max(self.exponent, other.exponent)
        return self.numerator << (e - self.exponent), other.numerator << (e - other.exponent), e

    def __add__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, e = self._align(other)
        return DyadicRational(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, e = self._align(other)
        return DyadicRational(a - b, e)

    def __rsub__(self, other):
        return DyadicRational.coerce(other) - self

    def __neg__(self):
        return DyadicRational(-self.numerator, self.exponent)

    def __mul__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except TypeError:
            return NotImplemented
        return DyadicRational(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, DyadicRational):
            return self.numerator == other.numerator and self.exponent == other.exponent
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, _ = self._align(other)
        return a < b

    def __hash__(self):
        return hash(self.as_fraction())

    def __float__(self):
        return self.numerator / (1 << self.exponent)

    def __repr__(self):
        return f"DyadicRational({self.numerator}, {self.exponent})"

    def __str__(self):
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"

    def to_decimal(self) -> str:
        """Exact finite decimal expansion (every dyadic rational has one)."""
        num, e = self.numerator, self.exponent
        sign = "-" if num < 0 else ""
        num = abs(num)
        if e == 0:
            return f"{sign}{num}"
        digits = str(num * 5**e).rjust(e + 1, "0")
        whole, frac = digits[:-e], digits[-e:].rstrip("0")
        return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


Point = tuple  # tuple of DyadicRational, one coordinate per axis


def point(*coords) -> Point:
    """Build a point from ints, Fractions, strings like ``"3/8"`` or DyadicRationals."""
    out = []
    for c in coords:
        out.append(DyadicRational.parse(c) if isinstance(c, str) else DyadicRational.coerce(c))
    return tuple(out)


class Relation(enum.Enum):
    DISJOINT = "disjoint"
    EQUAL = "equal"
    A_CONTAINS_B = "a_contains_b"
    B_CONTAINS_A = "b_contains_a"


class DyadicInterval(NamedTuple):
    """Half-open interval ``[num/2**depth, (num+1)/2**depth)``."""

    num: int
    depth: int

    @classmethod
    def make(cls, num: int, depth: int) -> "DyadicInterval":
        if depth < 0 or not 0 <= num < (1 << depth):
            raise ValueError(f"invalid dyadic interval num={num} depth={depth}")
        return cls(num, depth)

    @classmethod
    def from_address(cls, bits: str) -> "DyadicInterval":
        if bits and set(bits) - {"0", "1"}:
            raise ValueError(f"bad address {bits!r}")
        return cls(int(bits, 2) if bits else 0, len(bits))

    @property
    def address(self) -> str:
        return format(self.num, f"0{self.depth}b") if self.depth else ""

    @property
    def lo(self) -> DyadicRational:
        return DyadicRational(self.num, self.depth)

    @property
    def hi(self) -> DyadicRational:
        return DyadicRational(self.num + 1, self.depth)

    @property
    def length(self) -> DyadicRational:
        return DyadicRational(1, self.depth)

    def contains(self, other: "DyadicInterval") -> bool:
        """Non-strict containment."""
        k = other.depth - self.depth
        return k >= 0 and (other.num >> k) == self.num

    def contains_point(self, x: DyadicRational) -> bool:
        e = max(x.exponent, self.depth)
        v = x.numerator << (e - x.exponent)
        return (self.num << (e - self.depth)) <= v < ((self.num + 1) << (e - self.depth))

    def children(self) -> tuple["DyadicInterval", "DyadicInterval"]:
        n2 = self.num << 1
        d = self.depth + 1
        return DyadicInterval(n2, d), DyadicInterval(n2 + 1, d)

    def parent(self) -> "DyadicInterval":
        if self.depth == 0:
            raise ValueError("[0,1) has no parent")
        return DyadicInterval(self.num >> 1, self.depth - 1)

    def sibling(self) -> "DyadicInterval":
        if self.depth == 0:
            raise ValueError("[0,1) has no sibling")
        return DyadicInterval(self.num ^ 1, self.depth)

    def path_partition(self) -> list["DyadicInterval"]:
        """Partition of [0,1) into this interval and the siblings along its address.

        The result has ``depth + 1`` members, sorted by left endpoint.
        """
        out = [self]
        iv = self
        while iv.depth:
            out.append(iv.sibling())
            iv = iv.parent()
        out.sort(key=lambda i: i.num << (self.depth - i.depth))
        return out

    def __str__(self):
        return f"[{self.lo},{self.hi})"


UNIT = DyadicInterval(0, 0)


def interval_relation(a: DyadicInterval, b: DyadicInterval) -> Relation:
    if a == b:
        return Relation.EQUAL
    if a.contains(b):
        return Relation.A_CONTAINS_B
    if b.contains(a):
        return Relation.B_CONTAINS_A
    return Relation.DISJOINT


def interval_intersection(a: DyadicInterval, b: DyadicInterval) -> DyadicInterval | None:
    if a.depth <= b.depth:
        return b if (b.num >> (b.depth - a.depth)) == a.num else None
    return a if (a.num >> (a.depth - b.depth)) == b.num else None


class Rectangle(tuple):
    """An n-dimensional dyadic rectangle: a tuple of DyadicIntervals."""

    __slots__ = ()

    def __new__(cls, axes: Iterable[DyadicInterval] = ()):
        axes = tuple(a if isinstance(a, DyadicInterval) else DyadicInterval.make(*a) for a in axes)
        if not axes:
            raise DimensionError("a rectangle needs at least one axis")
        return tuple.__new__(cls, axes)

    @classmethod
    def _raw(cls, axes) -> "Rectangle":
        # unchecked constructor for hot paths
        return tuple.__new__(cls, axes)

    @classmethod
    def unit(cls, n: int) -> "Rectangle":
        if n < 1:
            raise DimensionError("dimension must be at least 1")
        return tuple.__new__(cls, (UNIT,) * n)

    @classmethod
    def from_addresses(cls, *addresses: str) -> "Rectangle":
        return cls(DyadicInterval.from_address(a) for a in addresses)

    @property
    def dim(self) -> int:
        return len(self)

    @property
    def lower_corner(self) -> Point:
        return tuple(a.lo for a in self)

    def sort_key(self):
        """Lexicographic order by lower corner (then by size, deeper last)."""
        return tuple(Fraction(a.num, 1 << a.depth) for a in self) + tuple(a.depth for a in self)


def corner_sort(rects: Iterable[Rectangle]) -> list[Rectangle]:
    """Sort rectangles as :meth:`Rectangle.sort_key` does, using integer keys."""
    rects = list(rects)
    if not rects:
        return rects
    top = max(a.depth for r in rects for a in r)

    def key(r):
        return tuple(a.num << (top - a.depth) for a in r) + tuple(a.depth for a in r)

    return sorted(rects, key=key)

    def __repr__(self):
        return "Rectangle(" + "x".join(str(a) for a in self) + ")"

    __str__ = __repr__


def _check_dims(r1: Rectangle, r2: Rectangle):
    if len(r1) != len(r2):
        raise DimensionError(f"dimension mismatch: {len(r1)} vs {len(r2)}")


def rect_contains(outer: Rectangle, inner: Rectangle) -> bool:
    _check_dims(outer, inner)
    for a, b in zip(outer, inner):
        k = b.depth - a.depth
        if k < 0 or (b.num >> k) != a.num:
            return False
    return True


def rect_intersection(r1: Rectangle, r2: Rectangle) -> Rectangle | None:
    """Intersection of two dyadic rectangles, or None when it is empty."""
    _check_dims(r1, r2)
    axes = []
    for a, b in zip(r1, r2):
        if a.depth <= b.depth:
            if (b.num >> (b.depth - a.depth)) != a.num:
                return None
            axes.append(b)
        else:
            if (a.num >> (a.depth - b.depth)) != b.num:
                return None
            axes.append(a)
    return Rectangle._raw(axes)


RelAddress = tuple  # tuple of bit strings, one per axis


def relative_address(child: Rectangle, parent: Rectangle) -> RelAddress:
    """Per-axis halving choices that carry ``parent`` down to ``child``."""
    if not rect_contains(parent, child):
        raise ContainmentError(f"{child} is not contained in {parent}")
    out = []
    for c, p in zip(child, parent):
        k = c.depth - p.depth
        out.append(format(c.num - (p.num << k), f"0{k}b") if k else "")
    return tuple(out)


def apply_relative_address(parent: Rectangle, rel: RelAddress) -> Rectangle:
    if len(rel) != len(parent):
        raise DimensionError("address arity does not match rectangle dimension")
    axes = []
    for p, bits in zip(parent, rel):
        k = len(bits)
        suffix = int(bits, 2) if k else 0
        axes.append(DyadicInterval((p.num << k) + suffix, p.depth + k))
    return Rectangle._raw(axes)


def transport(child: Rectangle, src: Rectangle, dst: Rectangle) -> Rectangle:
    """Image of ``child`` (assumed inside ``src``) under the affine map src -> dst.

    Equivalent to ``apply_relative_address(dst, relative_address(child, src))``
    without building the intermediate bit strings.
    """
    axes = []
    for c, s, t in zip(child, src, dst):
        k = c.depth - s.depth
        axes.append(DyadicInterval((t.num << k) + c.num - (s.num << k), t.depth + k))
    return Rectangle._raw(axes)


def contains_point(r: Rectangle, p: Point) -> bool:
    if len(p) != len(r):
        raise DimensionError("point and rectangle dimensions differ")
    return all(a.contains_point(x) for a, x in zip(r, p))


def affine_map_point(src: Rectangle, dst: Rectangle, p: Point) -> Point:
    """Orientation-preserving affine image of ``p`` under src -> dst."""
    _check_dims(src, dst)
    if not contains_point(src, p):
        raise ContainmentError(f"point {tuple(map(str, p))} is not in {src}")
    out = []
    for s, t, x in zip(src, dst, p):
        e = max(x.exponent, s.depth)
        offset = (x.numerator << (e - x.exponent)) - (s.num << (e - s.depth))
        f = e - s.depth + t.depth
        out.append(DyadicRational(offset + (t.num << (f - t.depth)), f))
    return tuple(out)


def measure(r: Rectangle) -> DyadicRational:
    return DyadicRational(1, sum(a.depth for a in r))


def total_measure(rects: Iterable[Rectangle]) -> DyadicRational:
    total = DyadicRational(0)
    for r in rects:
        total = total + measure(r)
    return total


def subdivide(r: Rectangle, axis: int) -> tuple[Rectangle, Rectangle]:
    """Halve ``r`` along ``axis`` into (lower, upper)."""
    if not 0 <= axis < len(r):
        raise IndexError(f"axis {axis} out of range for dimension {len(r)}")
    lo, hi = r[axis].children()
    axes = list(r)
    axes[axis] = lo
    lower = Rectangle._raw(axes)
    axes[axis] = hi
    return lower, Rectangle._raw(axes)


def sibling(r: Rectangle, axis: int) -> Rectangle:
    axes = list(r)
    axes[axis] = axes[axis].sibling()
    return Rectangle._raw(axes)


def parent(r: Rectangle, axis: int) -> Rectangle:
    axes = list(r)
    axes[axis] = axes[axis].parent()
    return Rectangle._raw(axes)


def grid_partition(r: Rectangle, axes: Sequence[int] | None = None) -> list[Rectangle]:
    """Product tiling of the unit cube that has ``r`` as one cell.

    On each axis in ``axes`` the unit interval is cut into the path partition
    of ``r``'s interval; other axes must already be [0,1) in ``r`` and stay whole.
    Cells come out in lexicographic order of their lower corners.
    """
    if axes is None:
        axes = range(len(r))
    axes = set(axes)
    per_axis = []
    for d, iv in enumerate(r):
        if d in axes:
            per_axis.append(iv.path_partition())
        elif iv.depth:
            raise ValueError(f"axis {d} of {r} is not whole but was not listed")
        else:
            per_axis.append([UNIT])
    cells = [()]
    for options in per_axis:
        cells = [c + (iv,) for c in cells for iv in options]
    return [Rectangle._raw(c) for c in cells]


def complement(r: Rectangle) -> list[Rectangle]:
    """Disjoint dyadic rectangles whose union is the unit cube minus ``r``."""
    return [c for c in grid_partition(r, [d for d, iv in enumerate(r) if iv.depth]) if c != r]


def grid_points(n: int, depth: int):
    """All points of the unit cube with coordinates in ``2**-depth`` Z."""
    import itertools

    coords = [DyadicRational(k, depth) for k in range(1 << depth)]
    return itertools.product(coords, repeat=n)


def rect_to_json(r: Rectangle) -> list[dict]:
    return [{"num": a.num, "depth": a.depth} for a in r]


def rect_from_json(data) -> Rectangle:
    try:
        return Rectangle(DyadicInterval.make(int(a["num"]), int(a["depth"])) for a in data)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed rectangle {data!r}") from exc
