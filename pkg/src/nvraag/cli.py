"""Command line interface.

Exit codes: 0 success, 1 parse or input error, 2 unsupported graph,
3 verification failure, 4 certificate unavailable, 5 render constraint.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import embedding as emb
from .dyadic import DyadicInterval, Rectangle
from .formats import FormatError, read_element, read_graph, read_manifest, write_element, write_manifest
from .nv import is_identity
from .raag import GraphError, complementary_edges, parse_word
from .render import RenderError, write_svg

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_UNSUPPORTED = 2
EXIT_FAILED = 3
EXIT_UNAVAILABLE = 4
EXIT_RENDER = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_embed(args) -> int:
    try:
        graph = read_graph(args.graph)
    except (OSError, GraphError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    k = len(complementary_edges(graph))
    try:
        phi = emb.build_embedding(graph, allow_complete=args.allow_complete)
    except emb.UnsupportedGraph as exc:
        return _fail(EXIT_UNSUPPORTED, str(exc))
    write_manifest(phi, args.out_dir, complementary_edges=k)
    print(f"vertices={graph.m}")
    print(f"complementary_edges={k}")
    print(f"dimension={phi.n}")
    print(f"assembled={'true' if phi.assembled else 'false'}")
    print(f"manifest={Path(args.out_dir) / 'manifest.json'}")
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        phi = read_manifest(args.manifest)
        word = parse_word(" ".join(args.word), phi.graph)
    except (OSError, FormatError, GraphError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        f = emb.evaluate(phi, word, max_pieces=args.max_pieces)
    except emb.PieceCeilingExceeded as exc:
        return _fail(EXIT_PARSE, str(exc))
    print(f"pieces={len(f)}")
    print("identity" if is_identity(f) else "nontrivial")
    if args.out:
        write_element(f, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    if args.max_len < 1:
        return _fail(EXIT_PARSE, "--max-len must be at least 1")
    try:
        phi = read_manifest(args.manifest)
    except (OSError, FormatError, GraphError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        report = emb.bounded_faithfulness(phi, args.max_len, max_pieces=args.max_pieces)
    except emb.PieceCeilingExceeded as exc:
        return _fail(EXIT_PARSE, str(exc))
    print(f"max_len={args.max_len}")
    print(f"words={report.words}")
    print(f"trivial={sum(s.trivial for s in report.stats)}")
    print(f"counterexamples={len(report.counterexamples)}")
    for word, trivial, ident in report.counterexamples[: args.show]:
        print(f"counterexample: [{word}] trivial_in_raag={trivial} maps_to_identity={ident}")
    if args.report:
        Path(args.report).write_text(report.to_tsv(), encoding="utf-8")
    if args.figure:
        from .plotting import plot_piece_growth

        plot_piece_growth(report, args.figure, title=f"words up to length {args.max_len}")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_verify_pingpong(args) -> int:
    try:
        phi = read_manifest(args.manifest)
    except (OSError, FormatError, GraphError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        cert = emb.verify_pingpong(phi)
    except emb.CertificateUnavailable:
        return _fail(EXIT_UNAVAILABLE, "certificate unavailable; use check")
    text = cert.to_report()
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    return EXIT_OK if cert.valid else EXIT_FAILED


def cmd_render(args) -> int:
    try:
        f = read_element(args.element)
    except (OSError, FormatError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        write_svg(f, args.out, title=args.title)
    except RenderError as exc:
        return _fail(EXIT_RENDER, str(exc))
    print(f"pieces={len(f)}")
    return EXIT_OK


def _parse_slice(text: str) -> Rectangle:
    axes = []
    for part in text.split(","):
        part = part.strip()
        axes.append(DyadicInterval(0, 0) if part in ("", "-") else DyadicInterval.from_address(part))
    return Rectangle(axes)


def cmd_lemma(args) -> int:
    try:
        S = _parse_slice(args.slice)
    except ValueError as exc:
        return _fail(EXIT_PARSE, str(exc))
    D = {d for d, iv in enumerate(S, 1) if iv.depth}
    if not D:
        return _fail(EXIT_PARSE, "the slice must be proper on at least one axis")
    spec = emb.SliceSpec.from_slice(S, D)
    h = emb.lemma_h(spec)
    write_element(h, args.out)
    print(f"D={','.join(map(str, sorted(D)))}")
    print(f"S={spec.S}")
    print(f"S_plus={spec.S_plus}")
    print(f"S_minus={spec.S_minus}")
    print(f"pieces={len(h)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nvraag", description="Right-angled Artin groups inside higher-dimensional Thompson groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("embed", help="build the embedding of a graph's RAAG into nV")
    s.add_argument("graph", help="graph file (lines 'v NAME' and 'e NAME NAME')")
    s.add_argument("out_dir", help="manifest directory to create")
    s.add_argument("--allow-complete", action="store_true",
                   help="embed complete graphs (free abelian groups) into 1V (default: reject)")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("eval", help="evaluate a word in the generators")
    s.add_argument("manifest", help="manifest directory or manifest.json")
    s.add_argument("word", nargs="*", help="tokens NAME or NAME^-1; empty for the identity")
    s.add_argument("--out", help="write the resulting element here")
    s.add_argument("--max-pieces", type=int, default=emb.DEFAULT_PIECE_CEILING,
                   help="abort when an intermediate element exceeds this many pieces (default: %(default)s)")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("check", help="compare every word up to a length with the RAAG normal form")
    s.add_argument("manifest", help="manifest directory or manifest.json")
    s.add_argument("--max-len", type=int, default=4, help="longest word length (default: %(default)s)")
    s.add_argument("--max-pieces", type=int, default=emb.DEFAULT_PIECE_CEILING,
                   help="piece ceiling per word image (default: %(default)s)")
    s.add_argument("--report", help="write per-length counts as TSV")
    s.add_argument("--figure", help="write a PNG of piece counts and word counts")
    s.add_argument("--show", type=int, default=10, help="counterexamples to print (default: %(default)s)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("verify-pingpong", help="certify the ping-pong hypotheses exactly")
    s.add_argument("manifest", help="manifest directory or manifest.json")
    s.add_argument("--out", help="also write the key=value report here")
    s.set_defaults(func=cmd_verify_pingpong)

    s = sub.add_parser("render", help="draw a 2-dimensional element as SVG")
    s.add_argument("element", help="element file")
    s.add_argument("out", help="SVG file to write")
    s.add_argument("--title", help="SVG title element")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("lemma", help="write the slice map for one slice")
    s.add_argument("slice", help="per-axis addresses, comma separated; an empty field means the whole axis (e.g. 0,0 or ,01,)")
    s.add_argument("out", help="element file to write")
    s.set_defaults(func=cmd_lemma)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
