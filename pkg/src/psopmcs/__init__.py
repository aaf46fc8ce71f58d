"""Partial search order problem for maximum cardinality search on chordal graphs."""

from .cliquegraph import CliqueGraph, build_clique_graph, level_graph, min_weight_components, ominus, weight_levels
from .graph import (
    Graph,
    InvalidArgument,
    OrderCycleError,
    StrictPartialOrder,
    connected_components,
    extends,
    minimal_elements,
    order_from_pairs,
    restrict,
    separates,
)
from .layers import LayerStructure, Unit, build_layer_structure, descendants, unit_of_vertex, validate_properties
from .search import (
    NotChordal,
    SearchPolicy,
    chordality_peo,
    enumerate_orderings,
    generic_search,
    maximal_cliques,
    mcs,
    mcs_from_prim,
    prim_search,
    verify_ordering,
)
from .solver import (
    DPTable,
    InternalError,
    PsopAnswer,
    dp_solve,
    end_vertex,
    extract_witness,
    project_order,
    rooted_generic_psop,
    solve,
    verify_solution,
)

__version__ = "0.1.0"
