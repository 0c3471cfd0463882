import logging

from .graph_kernel import Graph, PlanarEmbedding, parse_graph, load_graph, load_bundled, validate, planar_embed
from .schoen import build_schoen, dual_complex, stanley_reisner_generators, verify_containment
from .tropical_geometry import build_arrangement, tropicalize_line, tropical_basis_check
from .faithfulness import certify, certify_graph, constructive_pipeline
from .transformations import cubic_census, reduce_to_k4, replay_inverse
from .lifting import check_schoen_deformation, homogenize_weight, load_bundled_quadrics

__all__ = [
    "Graph",
    "PlanarEmbedding",
    "parse_graph",
    "load_graph",
    "load_bundled",
    "validate",
    "planar_embed",
    "build_schoen",
    "dual_complex",
    "stanley_reisner_generators",
    "verify_containment",
    "tropicalize_line",
    "build_arrangement",
    "tropical_basis_check",
    "certify",
    "certify_graph",
    "constructive_pipeline",
    "reduce_to_k4",
    "replay_inverse",
    "cubic_census",
    "homogenize_weight",
    "check_schoen_deformation",
    "load_bundled_quadrics",
]

NOISY_DEPENDENCIES = [
    "matplotlib",
    "PIL",
]

# matplotlib logs font discovery at INFO; keep it quiet unless asked
for dependency in NOISY_DEPENDENCIES:
    logging.getLogger(dependency).setLevel(logging.WARNING)
