"""Generalized 3-connectivity of small graphs and constructive tree packings
in Cartesian products."""

from .errors import (
    ArgumentError,
    BoundError,
    BudgetExhausted,
    ConstructionError,
    GraphError,
    InfeasibleError,
    LabelError,
    LookupFailure,
    LoopError,
    ParseError,
    ValidityError,
)
from .graph import (
    EdgeKind,
    Graph,
    Layer,
    ProductVertex,
    cartesian_product,
    edge_kind,
    layer,
    local_connectivity,
    menger_paths,
    parse_graph,
    to_dot,
    vertex_connectivity,
)
from .steiner import (
    Certificate,
    STree,
    Shape,
    check,
    enumerate_minimal_strees,
    kappa3,
    kappa_S,
    minimal_stree,
    rebalance_trees,
    shape,
    validate_certificate,
)
from .families import FamilySpec, generate, parse_family
from .product import (
    CaseTag,
    ConstructionTrace,
    census_edge_kinds,
    construct_path_product,
    construct_tree_product,
    construct_two_factor,
    locate,
)

__version__ = "0.1.0"
