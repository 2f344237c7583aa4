"""Brute-force reference computations built on fractions.Fraction.

Nothing here goes through the integer (num, depth) code paths of the library,
so these functions can check it independently.
"""

from fractions import Fraction
from itertools import product


def bounds(rect):
    """[(lo, hi), ...] of a rectangle, as Fractions."""
    return [(Fraction(iv.num, 2**iv.depth), Fraction(iv.num + 1, 2**iv.depth)) for iv in rect]


def inside(rect, pt):
    return all(lo <= x < hi for (lo, hi), x in zip(bounds(rect), pt))


def brute_apply(element, pt):
    """Evaluate an element at a point of Fractions by linear search over pieces."""
    hits = [i for i, r in enumerate(element.domains) if inside(r, pt)]
    assert len(hits) == 1, f"point {pt} lies in {len(hits)} domain pieces"
    i = hits[0]
    out = []
    for (slo, shi), (tlo, thi), x in zip(bounds(element.domains[i]), bounds(element.ranges[i]), pt):
        out.append((x - slo) * (thi - tlo) / (shi - slo) + tlo)
    return tuple(out)


def grid(n, depth):
    step = Fraction(1, 2**depth)
    return [tuple(step * k for k in ks) for ks in product(range(2**depth), repeat=n)]


def as_fractions(pt):
    return tuple(x.as_fraction() for x in pt)


def union_contains(rects, pt):
    return any(inside(r, pt) for r in rects)


SCALE_BITS = 40


def grid_array(n, depth):
    """All depth-``depth`` grid points of the n-cube as integers scaled by 2**SCALE_BITS."""
    import numpy as np

    ticks = np.arange(2**depth, dtype=np.int64) << (SCALE_BITS - depth)
    mesh = np.meshgrid(*([ticks] * n), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def eval_on_grid(element, pts):
    """Vectorised evaluation on scaled integer points; raises if a result is not representable."""
    import numpy as np

    out = np.full_like(pts, -1)
    hit = np.zeros(len(pts), dtype=np.int64)
    for dom, rng in zip(element.domains, element.ranges):
        mask = np.ones(len(pts), dtype=bool)
        for axis, iv in enumerate(dom):
            mask &= (pts[:, axis] >> (SCALE_BITS - iv.depth)) == iv.num
        hit += mask
        sel = pts[mask]
        for axis, (a, b) in enumerate(zip(dom, rng)):
            offset = sel[:, axis] - (a.num << (SCALE_BITS - a.depth))
            shift = b.depth - a.depth
            if shift >= 0:
                assert not np.any(offset & ((1 << shift) - 1)), "image below the integer scale"
                offset = offset >> shift
            else:
                offset = offset << -shift
            out[mask, axis] = offset + (b.num << (SCALE_BITS - b.depth))
    assert np.all(hit == 1), "domain pieces do not partition the grid"
    return out


def scaled(pt):
    """Library point -> tuple of scaled integers."""
    out = []
    for x in pt:
        f = x.as_fraction() * 2**SCALE_BITS
        assert f.denominator == 1
        out.append(int(f))
    return tuple(out)
