"""Commutative monoids presented by finite directed graphs.

A directed graph presents a commutative monoid: one generator per
vertex, and one relation per non-sink identifying it with the sum of
its edge targets.  This package decides the word problem for such
monoids with replayable proofs, enumerates the lattice of hereditary
saturated vertex sets and the order-ideals it classifies, builds
composition series with classified simple quotients, computes the group
completion by integer Smith normal form, and checks order-theoretic
properties within explicit bounds.
"""

from .errors import (
    CapExceeded,
    ElementFormatError,
    GraphFormatError,
    GraphMonoidError,
)
from .graphs import (
    Graph,
    Path,
    completion,
    format_graph_text,
    graph_from_json,
    graph_to_json,
    has_exit,
    hereditary_closure,
    hsat_closure,
    is_acyclic,
    is_cofinal,
    is_hereditary,
    parse_graph_text,
    saturate,
    simple_loops,
    sink_distribution,
    sinks,
    topological_order,
    tree,
)
from .elements import (
    MonoidElement,
    elements_up_to,
    format_element,
    from_counts,
    parse_element,
    vertex_element,
    zero,
)
from .ktheory import (
    Block,
    FiltrationLevel,
    GroupPresentation,
    RelationMatrix,
    determinant,
    grothendieck_group,
    group_image,
    matricial_filtration,
    path_counts,
    positive_cone_probe,
    relation_matrix,
    smith_normal_form,
    verify_smith,
)
from .certificates import (
    Certificate,
    check_certificate,
    distinctness_certificate,
    leq_obstruction,
    support_closure,
)
from .rewriting import (
    DEFAULT_DEPTH,
    DEFAULT_REDUCT_CAP,
    Distinct,
    Equal,
    Refinement,
    RewriteTrace,
    Unknown,
    apply_rewrite,
    decide_eq,
    exhaustive_reducts,
    normal_form,
    r_of,
    reduct_set,
    refine,
    split,
    successors,
    validate_trace,
    zigzag_budget,
)
from .lattice import (
    DEFAULT_LATTICE_CAP,
    CompositionSeries,
    HSatSet,
    LatticeReport,
    SeriesStep,
    SimpleClass,
    classify_simple,
    composition_series,
    enumerate_hsat,
    join,
    lattice_report,
    meet,
    order_ideal_membership,
    phi_psi_roundtrip,
    quotient_graph,
    restriction_graph,
    validate_series,
)
from .enumeration import (
    DEFAULT_CLASS_CAP,
    ClassModel,
    bounded_class_count,
    class_model,
    ideal_membership,
    quotient_bounded_class_count,
)
from .properties import (
    DEFAULT_N_BOUND,
    DEFAULT_SIZE_BOUND,
    LeqFalse,
    LeqTrue,
    LeqUnknown,
    PropertyReport,
    check_refinement,
    check_separativity,
    check_unperforation,
    is_prime,
    leq,
    primes_up_to,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "CapExceeded",
    "Certificate",
    "ClassModel",
    "CompositionSeries",
    "DEFAULT_CLASS_CAP",
    "DEFAULT_DEPTH",
    "DEFAULT_LATTICE_CAP",
    "DEFAULT_N_BOUND",
    "DEFAULT_REDUCT_CAP",
    "DEFAULT_SIZE_BOUND",
    "Distinct",
    "ElementFormatError",
    "Equal",
    "FiltrationLevel",
    "Graph",
    "GraphFormatError",
    "GraphMonoidError",
    "GroupPresentation",
    "HSatSet",
    "LatticeReport",
    "LeqFalse",
    "LeqTrue",
    "LeqUnknown",
    "MonoidElement",
    "Path",
    "PropertyReport",
    "Refinement",
    "RelationMatrix",
    "RewriteTrace",
    "SeriesStep",
    "SimpleClass",
    "Unknown",
    "apply_rewrite",
    "bounded_class_count",
    "check_certificate",
    "check_refinement",
    "check_separativity",
    "check_unperforation",
    "class_model",
    "classify_simple",
    "completion",
    "composition_series",
    "decide_eq",
    "determinant",
    "distinctness_certificate",
    "elements_up_to",
    "enumerate_hsat",
    "exhaustive_reducts",
    "format_element",
    "format_graph_text",
    "from_counts",
    "graph_from_json",
    "graph_to_json",
    "grothendieck_group",
    "group_image",
    "has_exit",
    "hereditary_closure",
    "hsat_closure",
    "ideal_membership",
    "is_acyclic",
    "is_cofinal",
    "is_hereditary",
    "is_prime",
    "join",
    "lattice_report",
    "leq",
    "leq_obstruction",
    "matricial_filtration",
    "meet",
    "normal_form",
    "order_ideal_membership",
    "parse_element",
    "parse_graph_text",
    "path_counts",
    "phi_psi_roundtrip",
    "positive_cone_probe",
    "primes_up_to",
    "quotient_bounded_class_count",
    "quotient_graph",
    "r_of",
    "reduct_set",
    "refine",
    "relation_matrix",
    "restriction_graph",
    "saturate",
    "simple_loops",
    "sink_distribution",
    "sinks",
    "smith_normal_form",
    "split",
    "successors",
    "support_closure",
    "topological_order",
    "tree",
    "validate_series",
    "validate_trace",
    "verify_smith",
    "vertex_element",
    "zero",
    "zigzag_budget",
]
