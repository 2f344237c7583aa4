"""Right-angled Artin groups inside the higher-dimensional Thompson groups nV."""

from .dyadic import DyadicInterval, DyadicRational, Rectangle, point
from .embedding import (
    GeneratorMap,
    SliceSpec,
    build_embedding,
    build_embedding_from_assignment,
    build_slices,
    evaluate,
    lemma_h,
    verify_pingpong,
)
from .nv import Element, apply, compose, equals, identity, inverse, reduce
from .raag import DAssignment, Graph, Letter, canonical_d_assignment, normal_form, parse_graph, parse_word

__version__ = "0.1.0"
