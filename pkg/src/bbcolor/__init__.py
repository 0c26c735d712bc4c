"""Lambda-backbone colorings of cliques with tree and forest backbones."""

from .coloring import (
    BackboneColoring,
    ColorInterval,
    ColoringReport,
    DecompositionLayout,
    augment_forest_to_tree,
    color_best,
    color_bipartition_intervals,
    color_direct,
    color_via_decomposition,
    lower_bound,
    verify_backbone_coloring,
)
from .decompose import (
    RbyDecomposition,
    RbyReport,
    exhaustive_rby_search,
    pushdown_yellow,
    rby_decompose_forest,
    rby_decompose_tree,
    validate_rby,
    yellow_budget,
)
from .exact import ExactResult, decide_bbc_le, exact_bbc, exact_bbc_permutation
from .fibonacci import (
    FibTree,
    RepresentationQuery,
    ZeckendorfRep,
    fib,
    fib_order_from_size,
    fib_tree,
    impossibility_check,
    impossibility_k_range,
    lower_bound_certificate,
    recognize_fib_tree,
    representation_search,
    zeckendorf,
    zeckendorf_value,
)
from .generators import DEFAULT_SEED, SplitMix64, enumerate_trees, gen_random_tree, pruefer_to_tree
from .graphs import (
    Forest,
    Tree,
    TwoColoring,
    build_forest,
    build_tree,
    find_balanced_separator,
    format_graph,
    imbalance,
    parse_graph,
    subtree_sizes,
    two_coloring,
)

__version__ = "0.1.0"
