"""Right-angled Artin groups: defining graphs, words and a word-problem oracle.

Generators are indexed by vertex position (0-based).  Subsets ``D_i`` in a
:class:`DAssignment` are subsets of the coordinate labels ``{1, ..., n}``.

The normal form here is deliberately naive and shares no code with the nV
machinery, so it can serve as an independent check on embeddings.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence


class GraphError(ValueError):
    pass


class Letter(NamedTuple):
    gen: int
    sign: int  # +1 or -1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


Word = tuple  # tuple of Letter


def letter_key(x: Letter) -> tuple[int, int]:
    """Letter order: g1 < g1^-1 < g2 < g2^-1 < ..."""
    return (x.gen, 0 if x.sign > 0 else 1)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset  # of frozenset({i, j}) with vertex indices

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex names")
        m = len(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"loop or malformed edge {sorted(e)}")
            if not all(0 <= i < m for i in e):
                raise GraphError(f"edge {sorted(e)} has an endpoint outside the vertex list")

    @classmethod
    def from_edges(cls, vertices: Sequence[str], edges: Iterable[tuple[str, str]]) -> "Graph":
        pos = {v: i for i, v in enumerate(vertices)}
        es = set()
        for a, b in edges:
            if a not in pos or b not in pos:
                raise GraphError(f"unknown vertex in edge {a} {b}")
            if a == b:
                raise GraphError(f"loop at {a}")
            es.add(frozenset((pos[a], pos[b])))
        return cls(tuple(vertices), frozenset(es))

    @classmethod
    def from_index_edges(cls, m: int, edges: Iterable[tuple[int, int]], prefix: str = "g") -> "Graph":
        names = [f"{prefix}{i + 1}" for i in range(m)]
        return cls(tuple(names), frozenset(frozenset(e) for e in edges))

    @property
    def m(self) -> int:
        return len(self.vertices)

    def index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def commute(self, i: int, j: int) -> bool:
        return i == j or self.adjacent(i, j)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def induced(self, keep: Sequence[int]) -> "Graph":
        keep = list(keep)
        pos = {old: new for new, old in enumerate(keep)}
        edges = frozenset(
            frozenset((pos[a], pos[b])) for a, b in map(tuple, self.edges) if a in pos and b in pos
        )
        return Graph(tuple(self.vertices[i] for i in keep), edges)

    def to_text(self) -> str:
        lines = [f"v {v}" for v in self.vertices]
        lines += [f"e {self.vertices[a]} {self.vertices[b]}" for a, b in self.sorted_edges()]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "e" and len(parts) == 3:
            if {parts[1], parts[2]} in [set(e) for e in edges]:
                raise GraphError(f"line {lineno}: repeated edge {parts[1]} {parts[2]}")
            edges.append((parts[1], parts[2]))
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw!r}")
    known = set(vertices)
    for a, b in edges:
        for name in (a, b):
            if name not in known:
                raise GraphError(f"edge mentions unknown vertex {name!r}")
    return Graph.from_edges(vertices, edges)


def parse_word(text: str, graph: Graph) -> Word:
    letters = []
    for tok in text.split():
        if tok.endswith("^-1"):
            letters.append(Letter(graph.index(tok[:-3]), -1))
        else:
            if tok.endswith("^1"):
                tok = tok[:-2]
            letters.append(Letter(graph.index(tok), 1))
    return tuple(letters)


def format_word(w: Word, graph: Graph) -> str:
    return " ".join(graph.vertices[x.gen] + ("" if x.sign > 0 else "^-1") for x in w)


def word_inverse(w: Word) -> Word:
    return tuple(x.inverse() for x in reversed(w))


def commutator(u: Word, v: Word) -> Word:
    """u v u^-1 v^-1"""
    return tuple(u) + tuple(v) + word_inverse(u) + word_inverse(v)


def complementary_edges(graph: Graph) -> list[tuple[int, int]]:
    """Non-adjacent pairs ``(i, j)``, ``i < j``, in lexicographic order."""
    return [
        (i, j) for i, j in itertools.combinations(range(graph.m), 2) if not graph.adjacent(i, j)
    ]


def v0_vertices(graph: Graph) -> list[int]:
    """Vertices joined to every other vertex (they generate a central free abelian factor)."""
    return [i for i in range(graph.m) if all(graph.adjacent(i, j) for j in range(graph.m) if j != i)]


def strip_v0(graph: Graph) -> tuple[Graph, list[int], list[int]]:
    """Split off the cone vertices: returns (reduced graph, kept indices, removed indices)."""
    removed = v0_vertices(graph)
    kept = [i for i in range(graph.m) if i not in removed]
    return graph.induced(kept), kept, removed


@dataclass(frozen=True)
class DAssignment:
    n: int
    subsets: tuple[frozenset, ...]  # subsets[i] is D_i, a subset of {1..n}

    def as_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.subsets]


@dataclass(frozen=True)
class AssignmentReport:
    ok: bool
    message: str = ""
    pair: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def canonical_d_assignment(graph: Graph) -> DAssignment:
    """``D_i`` = labels of the complementary edges that have vertex ``i`` as an endpoint."""
    cedges = complementary_edges(graph)
    subsets = []
    for i in range(graph.m):
        d = frozenset(k + 1 for k, e in enumerate(cedges) if i in e)
        if not d:
            raise GraphError(
                f"vertex {graph.vertices[i]!r} is adjacent to every other vertex; remove it first"
            )
        subsets.append(d)
    return DAssignment(len(cedges), tuple(subsets))


def validate_d_assignment(graph: Graph, assignment: DAssignment) -> AssignmentReport:
    if len(assignment.subsets) != graph.m:
        return AssignmentReport(False, f"{len(assignment.subsets)} subsets for {graph.m} vertices")
    if assignment.n < 1:
        return AssignmentReport(False, "dimension must be at least 1")
    for i, d in enumerate(assignment.subsets):
        if not d:
            return AssignmentReport(False, f"D for {graph.vertices[i]} is empty", (i, i))
        if not all(isinstance(k, int) and 1 <= k <= assignment.n for k in d):
            return AssignmentReport(False, f"D for {graph.vertices[i]} leaves 1..{assignment.n}", (i, i))
    for i, j in itertools.combinations(range(graph.m), 2):
        disjoint = not (assignment.subsets[i] & assignment.subsets[j])
        if disjoint != graph.adjacent(i, j):
            what = "disjoint but not adjacent" if disjoint else "adjacent but not disjoint"
            return AssignmentReport(False, f"{graph.vertices[i]}, {graph.vertices[j]}: {what}", (i, j))
    return AssignmentReport(True)


def free_reduce(w: Word) -> Word:
    out: list[Letter] = []
    for x in w:
        if out and out[-1].gen == x.gen and out[-1].sign == -x.sign:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _commutation_class(w: Word, commute) -> set:
    """All words reachable from ``w`` by swapping adjacent commuting letters."""
    seen = {w}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        for k in range(len(u) - 1):
            a, b = u[k], u[k + 1]
            if a.gen != b.gen and commute(a.gen, b.gen):
                v = u[:k] + (b, a) + u[k + 2:]
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return seen


def _find_cancellation(words) -> tuple | None:
    for u in words:
        for k in range(len(u) - 1):
            if u[k].gen == u[k + 1].gen and u[k].sign == -u[k + 1].sign:
                return u[:k] + u[k + 2:]
    return None


def normal_form(w: Word, graph: Graph) -> Word:
    """Shortlex-least reduced word equal to ``w`` in the RAAG of ``graph``.

    Rewrites by exploring the whole commutation class of the current word and
    cancelling any adjacent inverse pair found in it, until no class member has
    one; the answer is then the lexicographically least class member.
    """
    return _normal_form(tuple(Letter(*x) for x in w), graph)


@lru_cache(maxsize=1 << 16)
def _normal_form(w: Word, graph: Graph) -> Word:
    w = free_reduce(w)
    while True:
        cls = _commutation_class(w, graph.commute)
        shorter = _find_cancellation(cls)
        if shorter is None:
            return min(cls, key=lambda u: [letter_key(x) for x in u])
        w = free_reduce(shorter)


def is_trivial(w: Word, graph: Graph) -> bool:
    return not normal_form(w, graph)


def alphabet(m: int) -> list[Letter]:
    return sorted((Letter(i, s) for i in range(m) for s in (1, -1)), key=letter_key)


def enumerate_words(
    letters: int | Sequence[Letter], max_len: int, *, min_len: int = 0, reduced: bool = False
) -> Iterator[Word]:
    """Words ordered by length, then lexicographically by letter order.

    ``letters`` is either a generator count or an explicit alphabet.  With
    ``reduced=True`` only freely reduced words are produced.
    """
    alpha = alphabet(letters) if isinstance(letters, int) else list(letters)
    for length in range(min_len, max_len + 1):
        for w in itertools.product(alpha, repeat=length):
            if reduced and any(a.gen == b.gen and a.sign == -b.sign for a, b in zip(w, w[1:])):
                continue
            yield tuple(w)
