"""Face posets of trees, the projections between them, and charts of the associated spaces."""
from __future__ import annotations

from .charts import AmbientPoint, BlendConfig, blend_projection, chart, face_path, identify_stratum, path_limit
from .errors import CapExceeded, InvariantError, ParseError, PolyfacesError, PreconditionError
from .functors import (
    fan_from_word,
    fiber_geq_poset,
    fiber_poset,
    functor_map,
    leveled_iso,
    leveled_iso_inverse,
    parse_word,
    pi,
    pi_double_prime,
    pi_prime,
    trunk_word,
)
from .laurent import Laurent, parse_path
from .posets import FinitePoset, PosetMap, SimplicialComplex, face_poset, order_complex
from .topology import cofinality_report, comma_poset, contractibility, homology_ranks, prism_fiber_complex
from .trees import Fan, LeveledTree, Node, PlanarTree, enumerate_trees, format_tree, parse_tree
from .words import cube_complex, f_embed, levelization_poset, product_decompose, word_poset

__all__ = [
    "AmbientPoint", "BlendConfig", "CapExceeded", "Fan", "FinitePoset", "InvariantError", "Laurent",
    "LeveledTree", "Node", "ParseError", "PlanarTree", "PolyfacesError", "PosetMap", "PreconditionError",
    "SimplicialComplex", "blend_projection", "chart", "cofinality_report", "comma_poset", "contractibility",
    "cube_complex", "enumerate_trees", "f_embed", "face_path", "face_poset", "fan_from_word",
    "fiber_geq_poset", "fiber_poset", "format_tree", "functor_map", "homology_ranks", "identify_stratum",
    "leveled_iso", "leveled_iso_inverse", "levelization_poset", "order_complex", "parse_path", "parse_tree",
    "parse_word", "path_limit", "pi", "pi_double_prime", "pi_prime", "prism_fiber_complex",
    "product_decompose", "trunk_word", "word_poset",
]
