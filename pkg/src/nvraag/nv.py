"""Elements of the higher-dimensional Thompson group nV.

An element is a pair of numbered patterns of the same size: piece ``i`` maps
``domains[i]`` affinely, preserving orientation, onto ``ranges[i]``.  The
representation is not unique (any piece can be refined), so structural ``==``
compares representatives while :func:`equals` compares maps.

Products read left to right: ``compose(f, g)`` is the map ``p -> g(f(p))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dyadic import (
    DimensionError,
    DyadicInterval,
    DyadicRational,
    Point,
    Rectangle,
    affine_map_point,
    contains_point,
    corner_sort,
    parent,
    rect_intersection,
    sibling,
    subdivide,
    total_measure,
    transport,
)


class InvalidElement(ValueError):
    pass


@dataclass(frozen=True)
class PatternReport:
    ok: bool
    message: str = ""
    pair: tuple[int, int] | None = None
    deficit: DyadicRational | None = None

    def __bool__(self):
        return self.ok


def validate_pattern(rects: Sequence[Rectangle]) -> PatternReport:
    """Check that ``rects`` are pairwise disjoint and tile the unit cube."""
    if not rects:
        return PatternReport(False, "empty pattern", deficit=DyadicRational(1))
    n = len(rects[0])
    for i, r in enumerate(rects):
        if len(r) != n:
            return PatternReport(False, f"rectangle {i} has dimension {len(r)}, expected {n}")
    total = total_measure(rects)
    if total != DyadicRational(1):
        # overlap makes the total exceed 1 only in some cases, so look for a pair first
        pair = _first_overlap(rects)
        if pair is not None:
            return PatternReport(False, f"rectangles {pair[0]} and {pair[1]} overlap", pair=pair)
        return PatternReport(False, f"measures sum to {total}, not 1", deficit=DyadicRational(1) - total)
    pair = _first_overlap(rects)
    if pair is not None:
        return PatternReport(False, f"rectangles {pair[0]} and {pair[1]} overlap", pair=pair)
    return PatternReport(True)


def _first_overlap(rects: Sequence[Rectangle]) -> tuple[int, int] | None:
    index = _PieceIndex(rects)
    for i, r in enumerate(rects):
        for j in index.candidates(r):
            if j != i and rect_intersection(r, rects[j]) is not None:
                return (min(i, j), max(i, j))
    return None


class _PieceIndex:
    """Finds the rectangles of a list that may meet a query rectangle.

    A k-d tree over dyadic splits: each node halves its region along one axis,
    chosen to separate as many rectangles as possible.  Rectangles that are
    whole on the split axis (relative to the node) stay at the node.
    """

    __slots__ = ("root",)
    LEAF = 8

    def __init__(self, rects: Sequence[Rectangle]):
        n = len(rects[0])
        # node: [axis, split_depth, here, low_child, high_child]; axis -1 marks a leaf
        root = [-1, 0, [], None, None]
        stack = [(root, list(range(len(rects))), (0,) * n)]
        while stack:
            node, items, depths = stack.pop()
            best_axis, best_count = -1, 0
            if len(items) > self.LEAF:
                for a in range(n):
                    da = depths[a]
                    count = sum(1 for i in items if rects[i][a].depth > da)
                    if count > best_count:
                        best_axis, best_count = a, count
            if best_axis < 0:
                node[2] = items
                continue
            a = best_axis
            d = depths[a]
            here, low, high = [], [], []
            for i in items:
                iv = rects[i][a]
                if iv.depth <= d:
                    here.append(i)
                elif (iv.num >> (iv.depth - d - 1)) & 1:
                    high.append(i)
                else:
                    low.append(i)
            node[0], node[1], node[2] = a, d + 1, here
            child_depths = depths[:a] + (d + 1,) + depths[a + 1:]
            for slot, part in ((3, low), (4, high)):
                if part:
                    child = [-1, 0, [], None, None]
                    node[slot] = child
                    stack.append((child, part, child_depths))
        self.root = root

    def candidates(self, r: Rectangle) -> list[int]:
        out = []
        stack = [self.root]
        while stack:
            axis, d, here, low, high = stack.pop()
            out.extend(here)
            if axis < 0:
                continue
            iv = r[axis]
            if iv.depth >= d:
                child = high if (iv.num >> (iv.depth - d)) & 1 else low
                if child is not None:
                    stack.append(child)
            else:
                if low is not None:
                    stack.append(low)
                if high is not None:
                    stack.append(high)
        return out

    def point_candidates(self, p: Point) -> list[int]:
        """Rectangles that may contain the point ``p``."""
        out = []
        node = self.root
        while node is not None:
            axis, d, here, low, high = node
            out.extend(here)
            if axis < 0:
                break
            x = p[axis]
            a, e = x.numerator, x.exponent
            bit = (a << (d - e) if d >= e else a >> (e - d)) & 1
            node = high if bit else low
        return out


class Element:
    """An element of nV given by matched domain and range patterns."""

    __slots__ = ("dim", "domains", "ranges", "_index")

    def __init__(self, domains: Iterable[Rectangle], ranges: Iterable[Rectangle], dim: int | None = None):
        domains = tuple(domains)
        ranges = tuple(ranges)
        if len(domains) != len(ranges):
            raise InvalidElement(f"{len(domains)} domain pieces but {len(ranges)} range pieces")
        if dim is None:
            if not domains:
                raise InvalidElement("an element needs at least one piece")
            dim = len(domains[0])
        self.dim = dim
        self.domains = domains
        self.ranges = ranges
        self._index = None

    @classmethod
    def from_pieces(cls, pieces: Iterable[tuple[Rectangle, Rectangle]]) -> "Element":
        pieces = list(pieces)
        return cls([p for p, _ in pieces], [q for _, q in pieces])

    @property
    def pieces(self) -> list[tuple[Rectangle, Rectangle]]:
        return list(zip(self.domains, self.ranges))

    def __len__(self):
        return len(self.domains)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.domains == other.domains and self.ranges == other.ranges

    def __hash__(self):
        return hash((self.domains, self.ranges))

    def __repr__(self):
        return f"<Element dim={self.dim} pieces={len(self)}>"

    def domain_index(self) -> _PieceIndex:
        if self._index is None:
            self._index = _PieceIndex(self.domains)
        return self._index

    def validate(self) -> "Element":
        """Raise InvalidElement unless both sides are patterns of dimension ``dim``."""
        for side, rects in (("domain", self.domains), ("range", self.ranges)):
            for r in rects:
                if len(r) != self.dim:
                    raise InvalidElement(f"{side} rectangle {r} has wrong dimension")
            report = validate_pattern(rects)
            if not report:
                raise InvalidElement(f"{side} pattern invalid: {report.message}")
        return self


def identity(n: int) -> Element:
    unit = Rectangle.unit(n)
    return Element([unit], [unit], n)


def _check_same_dim(f: Element, g: Element):
    if f.dim != g.dim:
        raise DimensionError(f"elements of different dimensions: {f.dim} and {g.dim}")


def find_piece(f: Element, p: Point) -> int:
    if len(p) != f.dim:
        raise DimensionError(f"point of dimension {len(p)} for element of dimension {f.dim}")
    doms = f.domains
    for i in f.domain_index().point_candidates(p):
        if contains_point(doms[i], p):
            return i
    raise InvalidElement(f"no domain piece contains {tuple(map(str, p))}")


def apply(f: Element, p: Point) -> Point:
    i = find_piece(f, p)
    return affine_map_point(f.domains[i], f.ranges[i], p)


def inverse(f: Element) -> Element:
    return Element(f.ranges, f.domains, f.dim)


def compose(f: Element, g: Element) -> Element:
    """The element ``p -> g(f(p))``, built on the common refinement of
    f's range pattern and g's domain pattern."""
    _check_same_dim(f, g)
    index = g.domain_index()
    g_dom, g_rng = g.domains, g.ranges
    domains = []
    ranges = []
    raw = Rectangle._raw
    Interval = DyadicInterval
    for P, Q in zip(f.domains, f.ranges):
        for j in index.candidates(Q):
            A = g_dom[j]
            # X = Q n A, pulled back to P and pushed forward to g's range, axis by axis
            pre = []
            post = []
            for p, q, a, b in zip(P, Q, A, g_rng[j]):
                if q.depth >= a.depth:
                    k = q.depth - a.depth
                    if (q.num >> k) != a.num:
                        break
                    pre.append(p)
                    post.append(Interval((b.num << k) + q.num - (a.num << k), b.depth + k))
                else:
                    k = a.depth - q.depth
                    if (a.num >> k) != q.num:
                        break
                    pre.append(Interval((p.num << k) + a.num - (q.num << k), p.depth + k))
                    post.append(b)
            else:
                domains.append(raw(pre))
                ranges.append(raw(post))
    return Element(domains, ranges, f.dim)


def compose_all(elements: Iterable[Element], n: int | None = None) -> Element:
    result = None
    for e in elements:
        result = e if result is None else compose(result, e)
    if result is None:
        if n is None:
            raise ValueError("empty product needs a dimension")
        return identity(n)
    return result


def is_identity(f: Element) -> bool:
    # an orientation-preserving affine piece is the identity iff it maps its rectangle to itself
    return all(p == q for p, q in zip(f.domains, f.ranges))


def _probe_points(*elements: Element, limit: int = 32) -> list[Point]:
    pts = []
    for f in elements:
        step = max(1, len(f) // limit)
        pts.extend(r.lower_corner for r in f.domains[::step])
    return pts


def equals(f: Element, g: Element) -> bool:
    """True iff f and g are the same map of the unit cube.

    A few probe points are tried first, since one disagreement settles it;
    otherwise ``f g^-1`` is built and tested piece by piece.
    """
    _check_same_dim(f, g)
    if f == g:
        return True
    for p in _probe_points(f, g):
        if apply(f, p) != apply(g, p):
            return False
    return is_identity(compose(f, inverse(g)))


def commutes(f: Element, g: Element) -> bool:
    _check_same_dim(f, g)
    for p in _probe_points(f, g):
        if apply(g, apply(f, p)) != apply(f, apply(g, p)):
            return False
    return equals(compose(f, g), compose(g, f))


def refine_piece(f: Element, piece: int, axis: int) -> Element:
    """Split piece ``piece`` in two along ``axis``; the map is unchanged."""
    if not 0 <= piece < len(f):
        raise IndexError(f"piece {piece} out of range for {len(f)} pieces")
    if not 0 <= axis < f.dim:
        raise IndexError(f"axis {axis} out of range for dimension {f.dim}")
    P, Q = f.domains[piece], f.ranges[piece]
    halves = subdivide(P, axis)
    images = [transport(h, P, Q) for h in halves]
    domains = list(f.domains[:piece]) + list(halves) + list(f.domains[piece + 1:])
    ranges = list(f.ranges[:piece]) + images + list(f.ranges[piece + 1:])
    return Element(domains, ranges, f.dim)


def reduce(f: Element) -> Element:
    """Greedily merge pairs of pieces that together form one affine piece.

    The result has no mergeable sibling pair left.  It is a size heuristic: in
    dimension two and higher it need not be the smallest representative.
    """
    table = dict(zip(f.domains, f.ranges))
    if len(table) != len(f):
        raise InvalidElement("repeated domain rectangle")
    work = list(table)
    while work:
        P = work.pop()
        Q = table.get(P)
        if Q is None:
            continue
        for axis, iv in enumerate(P):
            if not iv.depth:
                continue
            P2 = sibling(P, axis)
            Q2 = table.get(P2)
            if Q2 is None or Q[axis].depth == 0:
                continue
            if Q2 != sibling(Q, axis) or (iv.num & 1) != (Q[axis].num & 1):
                continue
            del table[P], table[P2]
            merged = parent(P, axis)
            table[merged] = parent(Q, axis)
            work.append(merged)
            break
    domains = corner_sort(table)
    return Element(domains, [table[p] for p in domains], f.dim)


def power(f: Element, k: int, *, simplify: bool = True) -> Element:
    if k < 0:
        f, k = inverse(f), -k
    result = identity(f.dim)
    for _ in range(k):
        result = compose(result, f)
        if simplify:
            result = reduce(result)
    return result


def support_rects(f: Element) -> list[Rectangle]:
    """Domain pieces that are not mapped identically onto themselves."""
    return [p for p, q in zip(f.domains, f.ranges) if p != q]


def random_pattern(n: int, size: int, rng: random.Random, max_depth: int = 6) -> list[Rectangle]:
    """A random pattern with ``size`` rectangles, made by random halvings."""
    rects = [Rectangle.unit(n)]
    while len(rects) < size:
        i = rng.randrange(len(rects))
        r = rects[i]
        axes = [d for d in range(n) if r[d].depth < max_depth]
        if not axes:
            continue
        lo, hi = subdivide(r, rng.choice(axes))
        rects[i:i + 1] = [lo, hi]
    return rects


def random_element(n: int, rng: random.Random, max_pieces: int = 6, max_depth: int = 5) -> Element:
    size = rng.randint(1, max_pieces)
    domains = random_pattern(n, size, rng, max_depth)
    ranges = random_pattern(n, size, rng, max_depth)
    rng.shuffle(ranges)
    return Element(domains, ranges, n)


__all__ = [
    "Element",
    "InvalidElement",
    "PatternReport",
    "apply",
    "commutes",
    "compose",
    "compose_all",
    "equals",
    "find_piece",
    "identity",
    "inverse",
    "is_identity",
    "power",
    "random_element",
    "random_pattern",
    "reduce",
    "refine_piece",
    "support_rects",
    "validate_pattern",
]
