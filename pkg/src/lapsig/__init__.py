"""Graph Laplacian difference operators, pseudoinverses and (co)sparse
signal subspaces on undirected and circulant graphs."""

from .graphs import (
    CirculantSpec,
    Cosupport,
    Graph,
    adjacency,
    compile_circulant,
    complete_graph,
    connected_components,
    cycle_graph,
    incidence,
    khop_localization_check,
    laplacian,
)
from .linalg import (
    EigenDecomposition,
    column_space_equal,
    eig_symmetric,
    nullspace_oracle,
    pseudoinverse,
    rank,
)
from .circulant import (
    DecayProfile,
    RepresenterPolynomial,
    cycle_pinv,
    cycle_pinv_entry,
    decay_profile,
    laplacian_representer,
    perturbation_factor,
    pinv_factorization,
    poly_multiply_mod,
)
from .analysis import (
    NullspaceBasis,
    cosparsity,
    max_cosparse_dim,
    nullspace_basis,
    pairwise_difference_basis,
    randomized_uniqueness_check,
    spark_pinv,
    uniqueness_bound,
    zero_sum_basis,
)
from .synthesis import (
    AbsorptionReport,
    DegreeReport,
    PiecewiseProfile,
    absorb_discontinuity,
    complete_graph_identities,
    cyclic_difference,
    edge_knot_residual,
    model_degree_report,
    piecewise_degree_profile,
    structured_sparsity_check,
    synthesize,
    two_hop_knot_check,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "CirculantSpec",
    "Cosupport",
    "adjacency",
    "laplacian",
    "incidence",
    "connected_components",
    "khop_localization_check",
    "compile_circulant",
    "cycle_graph",
    "complete_graph",
    "EigenDecomposition",
    "eig_symmetric",
    "pseudoinverse",
    "rank",
    "nullspace_oracle",
    "column_space_equal",
    "RepresenterPolynomial",
    "laplacian_representer",
    "poly_multiply_mod",
    "cycle_pinv",
    "cycle_pinv_entry",
    "perturbation_factor",
    "pinv_factorization",
    "decay_profile",
    "DecayProfile",
    "NullspaceBasis",
    "zero_sum_basis",
    "nullspace_basis",
    "pairwise_difference_basis",
    "cosparsity",
    "max_cosparse_dim",
    "uniqueness_bound",
    "randomized_uniqueness_check",
    "spark_pinv",
    "synthesize",
    "structured_sparsity_check",
    "edge_knot_residual",
    "two_hop_knot_check",
    "cyclic_difference",
    "PiecewiseProfile",
    "piecewise_degree_profile",
    "DegreeReport",
    "model_degree_report",
    "complete_graph_identities",
    "AbsorptionReport",
    "absorb_discontinuity",
    "__version__",
]
