"""On-disk formats: element files and embedding manifests.

Element file (JSON, one piece per line)::

    {
      "format": "nv-element",
      "dimension": 2,
      "piece_count": 2,
      "pieces": [
        {"domain": [{"num": 0, "depth": 1}, ...], "range": [...]},
        ...
      ]
    }

A manifest is a directory holding ``manifest.json``, a copy of the graph
(``graph.txt``) and one element file per generator under ``elements/``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .dyadic import rect_from_json, rect_to_json
from .embedding import GeneratorMap, SliceSpec
from .nv import Element, InvalidElement
from .raag import DAssignment, Graph, parse_graph

ELEMENT_FORMAT = "nv-element"
MANIFEST_FORMAT = "nv-raag-embedding"
_SAFE_NAME = re.compile(r"^[A-Za-z0-9_.-]+$")


class FormatError(ValueError):
    pass


def element_to_text(f: Element) -> str:
    pieces = [
        json.dumps({"domain": rect_to_json(p), "range": rect_to_json(q)})
        for p, q in zip(f.domains, f.ranges)
    ]
    body = ",\n    ".join(pieces)
    return (
        "{\n"
        f'  "format": "{ELEMENT_FORMAT}",\n'
        f'  "dimension": {f.dim},\n'
        f'  "piece_count": {len(f)},\n'
        f'  "pieces": [\n    {body}\n  ]\n'
        "}\n"
    )


def element_from_text(text: str) -> Element:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"element file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or data.get("format") != ELEMENT_FORMAT:
        raise FormatError(f"not an {ELEMENT_FORMAT} file")
    try:
        n = int(data["dimension"])
        pieces = data["pieces"]
        count = int(data["piece_count"])
        domains = [rect_from_json(p["domain"]) for p in pieces]
        ranges = [rect_from_json(p["range"]) for p in pieces]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed element file: {exc}") from exc
    if count != len(pieces):
        raise FormatError(f"header says {count} pieces, found {len(pieces)}")
    try:
        return Element(domains, ranges, n).validate()
    except InvalidElement as exc:
        raise FormatError(str(exc)) from exc


def write_element(f: Element, path) -> None:
    Path(path).write_text(element_to_text(f), encoding="utf-8")


def read_element(path) -> Element:
    return element_from_text(Path(path).read_text(encoding="utf-8"))


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def _element_filename(i: int, name: str) -> str:
    return f"{name}.json" if _SAFE_NAME.match(name) else f"generator{i}.json"


def _slice_to_json(s: SliceSpec) -> dict:
    return {
        "D": sorted(s.D),
        "S": rect_to_json(s.S),
        "S_plus": rect_to_json(s.S_plus),
        "S_minus": rect_to_json(s.S_minus),
    }


def _slice_from_json(data) -> SliceSpec:
    return SliceSpec(
        frozenset(int(d) for d in data["D"]),
        rect_from_json(data["S"]),
        rect_from_json(data["S_plus"]),
        rect_from_json(data["S_minus"]),
    ).validate()


def write_manifest(phi: GeneratorMap, out_dir, *, complementary_edges: int) -> Path:
    out = Path(out_dir)
    (out / "elements").mkdir(parents=True, exist_ok=True)
    names = phi.graph.vertices
    (out / "graph.txt").write_text(phi.graph.to_text(), encoding="utf-8")
    generators = {}
    for i, (name, h) in enumerate(zip(names, phi.generators)):
        rel = f"elements/{_element_filename(i, name)}"
        write_element(h, out / rel)
        generators[name] = rel
    assignment = None
    if phi.assignment is not None:
        kept = [v for v in range(len(names)) if v not in phi.v0]
        assignment = {
            "n": phi.assignment.n,
            "subsets": {names[v]: sorted(d) for v, d in zip(kept, phi.assignment.subsets)},
        }
    manifest = {
        "format": MANIFEST_FORMAT,
        "graph": "graph.txt",
        "dimension": phi.n,
        "complementary_edges": complementary_edges,
        "vertices": list(names),
        "v0": [names[v] for v in phi.v0],
        "assembled": phi.assembled,
        "assignment": assignment,
        "slices": None
        if phi.slices is None
        else {name: _slice_to_json(s) for name, s in zip(names, phi.slices)},
        "regions": {k: rect_to_json(r) for k, r in sorted(phi.regions.items())},
        "generators": generators,
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_manifest(path) -> GeneratorMap:
    """Load a manifest directory (or the ``manifest.json`` inside it)."""
    path = Path(path)
    if path.is_dir():
        path = path / "manifest.json"
    root = path.parent
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"manifest is not valid JSON: {exc}") from exc
    if data.get("format") != MANIFEST_FORMAT:
        raise FormatError(f"not an {MANIFEST_FORMAT} manifest")
    try:
        graph = read_graph(root / data["graph"])
        n = int(data["dimension"])
        names = graph.vertices
        if list(names) != list(data["vertices"]):
            raise FormatError("manifest vertex list does not match the graph file")
        gens = tuple(read_element(root / data["generators"][name]) for name in names)
        for name, h in zip(names, gens):
            if h.dim != n:
                raise FormatError(f"generator {name} has dimension {h.dim}, expected {n}")
        v0 = tuple(graph.index(v) for v in data.get("v0", []))
        assignment = None
        if data.get("assignment"):
            a = data["assignment"]
            kept = [names[v] for v in range(len(names)) if v not in v0]
            assignment = DAssignment(int(a["n"]), tuple(frozenset(a["subsets"][v]) for v in kept))
        slices = None
        if data.get("slices") is not None:
            slices = tuple(_slice_from_json(data["slices"][name]) for name in names)
        regions = {k: rect_from_json(v) for k, v in data.get("regions", {}).items()}
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed manifest: {exc}") from exc
    return GeneratorMap(graph, n, gens, assignment, slices, v0, regions)
