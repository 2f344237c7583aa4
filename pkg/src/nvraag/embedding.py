"""Embeddings of right-angled Artin groups into nV.

Coordinate labels in a set ``D`` run over ``1..n``; rectangle axes are the
0-based positions ``d - 1``.

Outline of the construction:

* every vertex ``v_i`` gets a nonempty label set ``D_i`` with ``D_i`` and
  ``D_j`` disjoint exactly when ``v_i v_j`` is an edge;
* each ``D_i`` gets a slice ``S_i`` (proper on the axes in ``D_i``, whole on
  the rest) cut into halves ``S_i+`` and ``S_i-``;
* the generator ``h_i`` pushes everything outside ``S_i-`` into ``S_i+`` and
  only moves coordinates in ``D_i``.

The ping-pong hypotheses are then checked exactly on rectangles.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .dyadic import (
    UNIT,
    DimensionError,
    DyadicInterval,
    DyadicRational,
    Point,
    Rectangle,
    complement,
    contains_point,
    corner_sort,
    grid_partition,
    measure,
    rect_contains,
    rect_intersection,
    subdivide,
    total_measure,
    transport,
)
from .nv import Element, apply, commutes, compose, identity, inverse, is_identity, reduce
from .raag import (
    DAssignment,
    Graph,
    Letter,
    Word,
    alphabet,
    canonical_d_assignment,
    complementary_edges,
    format_word,
    is_trivial,
    strip_v0,
    validate_d_assignment,
)

DEFAULT_PIECE_CEILING = 10**6


class EmbeddingError(ValueError):
    pass


class UnsupportedGraph(EmbeddingError):
    pass


class PieceCeilingExceeded(RuntimeError):
    pass


class CertificateUnavailable(EmbeddingError):
    pass


def _axes(D: Iterable[int]) -> list[int]:
    return sorted(d - 1 for d in D)


def is_d_slice(r: Rectangle, D: Iterable[int], *, strict: bool = True) -> bool:
    """Whether ``r`` is whole exactly off ``D``.

    With ``strict=False`` the axes in ``D`` may also be whole, which admits
    the unit cube itself as a degenerate slice.
    """
    D = set(D)
    if not D or min(D) < 1 or max(D) > len(r):
        return False
    for d, iv in enumerate(r, 1):
        if d in D:
            if strict and iv.depth == 0:
                return False
        elif iv.depth:
            return False
    return True


def _require_slice(S: Rectangle, D, strict: bool):
    if not is_d_slice(S, D, strict=strict):
        raise EmbeddingError(f"{S} is not a D-slice for D={sorted(D)}")


def build_slice_pattern(S: Rectangle, D: Iterable[int]) -> list[Rectangle]:
    """A pattern of D-slices that has ``S`` as one of its rectangles.

    On each axis in ``D`` the unit interval is cut into S's interval and the
    siblings along its address; the pattern is the product of these cuts, so it
    has ``prod(depth_d + 1)`` members, listed by lower corner.
    """
    D = set(D)
    _require_slice(S, D, strict=False)
    return grid_partition(S, _axes(D))


def split_slice(S: Rectangle, D: Iterable[int]) -> tuple[Rectangle, Rectangle]:
    """Halve ``S`` along its smallest D-axis; the lower half is the plus part."""
    D = set(D)
    _require_slice(S, D, strict=False)
    return subdivide(S, min(D) - 1)


@dataclass(frozen=True)
class SliceSpec:
    D: frozenset
    S: Rectangle
    S_plus: Rectangle
    S_minus: Rectangle

    @classmethod
    def from_slice(cls, S: Rectangle, D: Iterable[int]) -> "SliceSpec":
        D = frozenset(D)
        plus, minus = split_slice(S, D)
        return cls(D, S, plus, minus)

    @property
    def dim(self) -> int:
        return len(self.S)

    def problems(self) -> list[str]:
        out = []
        for name in ("S", "S_plus", "S_minus"):
            r = getattr(self, name)
            if len(r) != len(self.S):
                out.append(f"{name} has the wrong dimension")
            elif not is_d_slice(r, self.D):
                out.append(f"{name}={r} is not a D-slice for D={sorted(self.D)}")
        if out:
            return out
        if rect_intersection(self.S_plus, self.S_minus) is not None:
            out.append("S_plus and S_minus overlap")
        if not (rect_contains(self.S, self.S_plus) and rect_contains(self.S, self.S_minus)):
            out.append("S_plus or S_minus leaves S")
        if measure(self.S_plus) + measure(self.S_minus) != measure(self.S):
            out.append("S_plus and S_minus do not fill S")
        return out

    def validate(self) -> "SliceSpec":
        problems = self.problems()
        if problems:
            raise EmbeddingError("; ".join(problems))
        return self

    def swapped(self) -> "SliceSpec":
        return dataclasses.replace(self, S_plus=self.S_minus, S_minus=self.S_plus)


def halving_chain(R: Rectangle, axis: int, count: int) -> tuple[list[Rectangle], Rectangle]:
    """Cut ``R`` into ``count`` pieces by repeatedly halving the lower part.

    Returns the ``count - 1`` upper halves and the final lower-corner piece.
    """
    pieces = []
    cur = R
    for _ in range(count - 1):
        cur, upper = subdivide(cur, axis)
        pieces.append(upper)
    return pieces, cur


def lemma_h(spec: SliceSpec) -> Element:
    """The element that sends the complement of S- into S+ (and only moves D-coordinates).

    Pieces, in order:

    * the slices of ``I^n - S`` onto the slices of ``S+ - S++``;
    * ``S+`` onto ``S++``;
    * the slices of ``S- - S--`` onto the slices of ``I^n - S``;
    * ``S--`` onto ``S-``.
    """
    spec.validate()
    D = spec.D
    pattern = build_slice_pattern(spec.S, D)
    outside = [r for r in pattern if r != spec.S]
    axis = min(D) - 1
    plus_rest, plus_core = halving_chain(spec.S_plus, axis, len(pattern))
    minus_rest, minus_core = halving_chain(spec.S_minus, axis, len(pattern))
    plus_rest = corner_sort(plus_rest)
    minus_rest = corner_sort(minus_rest)

    domains = outside + [spec.S_plus] + minus_rest + [minus_core]
    ranges = plus_rest + [plus_core] + outside + [spec.S_minus]
    return Element(domains, ranges, spec.dim)


def division_depth(m: int) -> int:
    """Least K with 2**K >= m + 2."""
    K = 0
    while (1 << K) < m + 2:
        K += 1
    return K


def build_slices(D_list: Sequence[Iterable[int]], n: int) -> list[SliceSpec]:
    """One slice per label set, using equal dyadic parts ``J_k`` of [0,1).

    Slice ``i`` (0-based) uses ``J_i`` on the axes in ``D_i``.  The part
    ``J_m`` and those after it are never used, which leaves room for a base point.
    """
    D_list = [frozenset(D) for D in D_list]
    for i, D in enumerate(D_list):
        if not D:
            raise EmbeddingError(f"label set {i} is empty")
        if min(D) < 1 or max(D) > n:
            raise EmbeddingError(f"label set {i} = {sorted(D)} is not inside 1..{n}")
    K = division_depth(len(D_list))
    specs = []
    for i, D in enumerate(D_list):
        J = DyadicInterval(i, K)
        S = Rectangle._raw([J if d in D else UNIT for d in range(1, n + 1)])
        specs.append(SliceSpec.from_slice(S, D))
    return specs


def base_point(m: int, n: int) -> Point:
    """Point with every coordinate at the left end of the first unused part."""
    return (DyadicRational(m, division_depth(m)),) * n


def slice_family_problems(specs: Sequence[SliceSpec], x0: Point | None = None) -> list[str]:
    """Check the three defining properties of a slice family.

    Each ``S_i`` is a ``D_i``-slice; ``S_i`` and ``S_j`` are disjoint exactly
    when the label sets meet; and the slices miss some point (``x0``).
    """
    out = []
    for i, s in enumerate(specs):
        out.extend(f"slice {i}: {p}" for p in s.problems())
    for i in range(len(specs)):
        for j in range(i + 1, len(specs)):
            disjoint = rect_intersection(specs[i].S, specs[j].S) is None
            meet = bool(specs[i].D & specs[j].D)
            if disjoint != meet:
                out.append(f"slices {i},{j}: disjoint={disjoint} but label sets meet={meet}")
    if specs:
        if x0 is None:
            x0 = base_point(len(specs), specs[0].dim)
        for i, s in enumerate(specs):
            if contains_point(s.S, x0):
                out.append(f"base point lies in slice {i}")
    return out


@dataclass(frozen=True)
class GeneratorMap:
    """Images of the RAAG generators, one per vertex in graph order."""

    graph: Graph
    n: int
    generators: tuple[Element, ...]
    assignment: DAssignment | None = None
    slices: tuple[SliceSpec, ...] | None = None
    v0: tuple[int, ...] = ()
    regions: dict = field(default_factory=dict)

    @property
    def assembled(self) -> bool:
        return self.slices is None

    def letter(self, x: Letter) -> Element:
        if not 0 <= x.gen < len(self.generators):
            raise EmbeddingError(f"unknown generator index {x.gen}")
        h = self.generators[x.gen]
        return h if x.sign > 0 else inverse(h)


def build_embedding_from_assignment(graph: Graph, assignment: DAssignment, *, check: bool = True) -> GeneratorMap:
    report = validate_d_assignment(graph, assignment)
    if not report:
        raise EmbeddingError(f"invalid label assignment: {report.message}")
    specs = build_slices(assignment.subsets, assignment.n)
    gens = tuple(lemma_h(s) for s in specs)
    phi = GeneratorMap(graph, assignment.n, gens, assignment, tuple(specs))
    if check:
        for i, j in graph.sorted_edges():
            if not commutes(gens[i], gens[j]):
                raise EmbeddingError(
                    f"images of {graph.vertices[i]} and {graph.vertices[j]} do not commute"
                )
    return phi


def conjugate_into(f: Element, R: Rectangle) -> Element:
    """Copy of ``f`` acting inside ``R`` (through the affine map I^n -> R), identity outside."""
    if len(R) != f.dim:
        raise DimensionError(f"rectangle of dimension {len(R)} for element of dimension {f.dim}")
    unit = Rectangle.unit(f.dim)
    domains = [transport(p, unit, R) for p in f.domains]
    ranges = [transport(q, unit, R) for q in f.ranges]
    outside = complement(R)
    return Element(domains + outside, ranges + outside, f.dim)


def shift_element(n: int = 1) -> Element:
    """Infinite-order element acting on the first coordinate only.

    [0,1/2) -> [0,1/4), [1/2,3/4) -> [1/4,1/2), [3/4,1) -> [1/2,1).
    """
    rest = (UNIT,) * (n - 1)

    def r(num, depth):
        return Rectangle._raw((DyadicInterval(num, depth),) + rest)

    return Element([r(0, 1), r(2, 2), r(3, 2)], [r(0, 2), r(1, 2), r(1, 1)], n)


def _free_abelian_blocks(R: Rectangle, count: int) -> list[Rectangle]:
    c = 0
    while (1 << c) < count:
        c += 1
    first = R[0]
    blocks = []
    for k in range(count):
        iv = DyadicInterval((first.num << c) + k, first.depth + c)
        blocks.append(Rectangle._raw((iv,) + tuple(R[1:])))
    return blocks


def build_embedding(graph: Graph, *, allow_complete: bool = False, check: bool = True) -> GeneratorMap:
    """Embed the RAAG of ``graph`` into nV with n = number of complementary edges.

    Cone vertices (adjacent to everything) are realised as commuting copies of
    :func:`shift_element` in the right half of the cube, while the rest of the
    graph is embedded by slices and conjugated into the left half.  A complete
    graph has no complementary edges; with ``allow_complete=True`` it is sent
    into 1V by shift copies alone.
    """
    cedges = complementary_edges(graph)
    if not cedges and not allow_complete:
        raise UnsupportedGraph(
            "graph is complete (no complementary edges); its group is free abelian "
            "and needs the explicit allow_complete option"
        )
    reduced, kept, removed = strip_v0(graph)
    if not removed:
        return build_embedding_from_assignment(graph, canonical_d_assignment(graph), check=check)

    n = max(len(cedges), 1)
    gens: list[Element | None] = [None] * graph.m
    regions = {}
    assignment = None
    if kept:
        assignment = canonical_d_assignment(reduced)
        inner = build_embedding_from_assignment(reduced, assignment, check=check)
        R_A, R_Z = subdivide(Rectangle.unit(n), 0)
        for idx, h in zip(kept, inner.generators):
            gens[idx] = conjugate_into(h, R_A)
        regions["A"] = R_A
    else:
        R_Z = Rectangle.unit(n)
    regions["Z"] = R_Z
    t = shift_element(n)
    for idx, block in zip(removed, _free_abelian_blocks(R_Z, len(removed))):
        gens[idx] = conjugate_into(t, block)
    phi = GeneratorMap(graph, n, tuple(gens), assignment, None, tuple(removed), regions)
    if check:
        for i, j in graph.sorted_edges():
            if not commutes(gens[i], gens[j]):
                raise EmbeddingError(
                    f"images of {graph.vertices[i]} and {graph.vertices[j]} do not commute"
                )
    return phi


def evaluate(
    phi: GeneratorMap, w: Word, *, max_pieces: int = DEFAULT_PIECE_CEILING, simplify: bool = True
) -> Element:
    """Image of a word; letters act left to right."""
    result = identity(phi.n)
    for x in w:
        result = compose(result, phi.letter(Letter(*x)))
        if simplify:
            result = reduce(result)
        if len(result) > max_pieces:
            raise PieceCeilingExceeded(f"{len(result)} pieces exceeds the ceiling of {max_pieces}")
    return result


def image_of_rectangle(f: Element, R: Rectangle) -> list[Rectangle]:
    """Exact image of ``R`` as disjoint rectangles (one per domain piece it meets)."""
    if len(R) != f.dim:
        raise DimensionError(f"rectangle of dimension {len(R)} for element of dimension {f.dim}")
    out = []
    doms, rngs = f.domains, f.ranges
    for j in sorted(f.domain_index().candidates(R)):
        X = rect_intersection(R, doms[j])
        if X is not None:
            out.append(transport(X, doms[j], rngs[j]))
    return out


def image_of_region(f: Element, rects: Iterable[Rectangle]) -> list[Rectangle]:
    out = []
    for R in rects:
        out.extend(image_of_rectangle(f, R))
    return out


def first_outside(fragments: Iterable[Rectangle], target: Rectangle) -> Rectangle | None:
    for r in fragments:
        if not rect_contains(target, r):
            return r
    return None


def tiles(fragments: Sequence[Rectangle], target: Rectangle) -> bool:
    """Disjoint ``fragments`` cover exactly ``target``: containment plus equal measure."""
    return first_outside(fragments, target) is None and total_measure(fragments) == measure(target)



@dataclass
class ConditionResult:
    name: str
    description: str
    checked: int = 0
    witnesses: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def fail(self, message: str):
        self.witnesses.append(message)


@dataclass
class PingPongCertificate:
    conditions: dict[str, ConditionResult]
    base_point: Point

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.conditions.items() if not c.passed]

    def to_report(self) -> str:
        lines = [
            f"certificate.valid={'true' if self.valid else 'false'}",
            "certificate.base_point=" + ",".join(str(x) for x in self.base_point),
        ]
        for key, c in self.conditions.items():
            lines.append(f"{key}.description={c.description}")
            lines.append(f"{key}.status={'pass' if c.passed else 'fail'}")
            lines.append(f"{key}.checked={c.checked}")
            for k, wtn in enumerate(c.witnesses):
                lines.append(f"{key}.witness.{k}={wtn}")
        return "\n".join(lines) + "\n"


def verify_pingpong(phi: GeneratorMap) -> PingPongCertificate:
    """Check the ping-pong hypotheses for ``phi`` exactly on rectangles.

    When the certificate is valid the action of the RAAG on the cube is
    faithful, so ``phi`` is injective.
    """
    if phi.slices is None:
        raise CertificateUnavailable("embedding was assembled from a product; no slice data to check")
    graph, specs, gens = phi.graph, phi.slices, phi.generators
    m = graph.m
    x0 = base_point(m, phi.n)
    conds = {
        "condition1": ConditionResult("condition1", "h_i(S_i+) in S_i+ and h_i^-1(S_i-) in S_i-"),
        "condition2": ConditionResult("condition2", "h_i(S_j) = S_j for adjacent i,j"),
        "condition3": ConditionResult("condition3", "h_i(S_j) in S_i+ and h_i^-1(S_j) in S_i- for non-adjacent i,j"),
        "condition4": ConditionResult("condition4", "base point outside all S_i with h_i(x) in S_i+ and h_i^-1(x) in S_i-"),
        "slice_dynamics": ConditionResult("slice_dynamics", "h_i(I^n - S_i-) = S_i+ and h_i^-1(I^n - S_i+) = S_i-"),
        "axis_invariance": ConditionResult("axis_invariance", "h_i changes only coordinates in D_i"),
    }
    name = graph.vertices
    inverses = [inverse(h) for h in gens]

    for i in range(m):
        h, hinv, s = gens[i], inverses[i], specs[i]
        c = conds["condition1"]
        c.checked += 2
        bad = first_outside(image_of_rectangle(h, s.S_plus), s.S_plus)
        if bad is not None:
            c.fail(f"{name[i]}: fragment {bad} of h(S+) leaves S+={s.S_plus}")
        bad = first_outside(image_of_rectangle(hinv, s.S_minus), s.S_minus)
        if bad is not None:
            c.fail(f"{name[i]}: fragment {bad} of h^-1(S-) leaves S-={s.S_minus}")

        for j in range(m):
            if j == i:
                continue
            t = specs[j].S
            if graph.adjacent(i, j):
                c = conds["condition2"]
                for label, g in (("h", h), ("h^-1", hinv)):
                    c.checked += 1
                    frags = image_of_rectangle(g, t)
                    if not tiles(frags, t):
                        bad = first_outside(frags, t)
                        detail = f"fragment {bad} leaves S_j" if bad else "measure differs"
                        c.fail(f"{name[i]} on {name[j]}: {label}(S_j) != S_j ({detail})")
            else:
                c = conds["condition3"]
                c.checked += 2
                bad = first_outside(image_of_rectangle(h, t), s.S_plus)
                if bad is not None:
                    c.fail(f"{name[i]} on {name[j]}: fragment {bad} of h(S_j) leaves S_i+")
                bad = first_outside(image_of_rectangle(hinv, t), s.S_minus)
                if bad is not None:
                    c.fail(f"{name[i]} on {name[j]}: fragment {bad} of h^-1(S_j) leaves S_i-")

        c = conds["condition4"]
        c.checked += 3
        if contains_point(s.S, x0):
            c.fail(f"base point lies in S of {name[i]}")
        if not contains_point(s.S_plus, apply(h, x0)):
            c.fail(f"{name[i]}: h(x0) not in S+")
        if not contains_point(s.S_minus, apply(hinv, x0)):
            c.fail(f"{name[i]}: h^-1(x0) not in S-")

        c = conds["slice_dynamics"]
        c.checked += 2
        if not tiles(image_of_region(h, [s.S_plus] + complement(s.S)), s.S_plus):
            c.fail(f"{name[i]}: h(I^n - S-) != S+")
        if not tiles(image_of_region(hinv, [s.S_minus] + complement(s.S)), s.S_minus):
            c.fail(f"{name[i]}: h^-1(I^n - S+) != S-")

        c = conds["axis_invariance"]
        c.checked += 1
        moved = changed_axes(h)
        allowed = {d - 1 for d in s.D}
        if not moved <= allowed:
            c.fail(f"{name[i]}: moves axes {sorted(a + 1 for a in moved - allowed)} outside D")

    return PingPongCertificate(conds, x0)


def changed_axes(f: Element) -> set[int]:
    """0-based axes on which some piece has different domain and range intervals."""
    out = set()
    for p, q in zip(f.domains, f.ranges):
        for d, (a, b) in enumerate(zip(p, q)):
            if a != b:
                out.add(d)
    return out


@dataclass
class LengthStats:
    length: int
    words: int = 0
    trivial: int = 0
    identity: int = 0
    max_pieces: int = 0
    total_pieces: int = 0
    counterexamples: int = 0

    @property
    def mean_pieces(self) -> float:
        return self.total_pieces / self.words if self.words else 0.0


@dataclass
class FaithfulnessReport:
    max_len: int
    stats: list[LengthStats]
    counterexamples: list[tuple[str, bool, bool]]  # (word, trivial in RAAG, maps to identity)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    @property
    def words(self) -> int:
        return sum(s.words for s in self.stats)

    def to_tsv(self) -> str:
        rows = ["length\twords\ttrivial\tidentity\tcounterexamples\tmax_pieces\tmean_pieces"]
        for s in self.stats:
            rows.append(
                f"{s.length}\t{s.words}\t{s.trivial}\t{s.identity}\t{s.counterexamples}"
                f"\t{s.max_pieces}\t{s.mean_pieces:.3f}"
            )
        return "\n".join(rows) + "\n"


def bounded_faithfulness(
    phi: GeneratorMap, max_len: int, *, max_pieces: int = DEFAULT_PIECE_CEILING
) -> FaithfulnessReport:
    """Compare ``phi`` with the normal-form oracle on every word up to ``max_len``.

    A word must map to the identity exactly when its normal form is empty.
    Words are visited depth-first so each prefix is evaluated once.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    graph = phi.graph
    letters = alphabet(graph.m)
    images = [phi.letter(x) for x in letters]
    stats = [LengthStats(k) for k in range(max_len + 1)]
    bad: list[tuple[tuple, str, bool, bool]] = []

    def visit(w: tuple, f: Element):
        st = stats[len(w)]
        trivial = is_trivial(w, graph)
        ident = is_identity(f)
        st.words += 1
        st.trivial += trivial
        st.identity += ident
        st.total_pieces += len(f)
        st.max_pieces = max(st.max_pieces, len(f))
        if trivial != ident:
            st.counterexamples += 1
            bad.append((w, format_word(w, graph), trivial, ident))
        if len(w) == max_len:
            return
        for x, g in zip(letters, images):
            nxt = reduce(compose(f, g))
            if len(nxt) > max_pieces:
                raise PieceCeilingExceeded(
                    f"{len(nxt)} pieces exceeds the ceiling of {max_pieces} at word length {len(w) + 1}"
                )
            visit(w + (x,), nxt)

    visit((), identity(phi.n))
    bad.sort(key=lambda b: (len(b[0]), [(x.gen, -x.sign) for x in b[0]]))
    return FaithfulnessReport(max_len, stats, [(s, t, i) for _, s, t, i in bad])
