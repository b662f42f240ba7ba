"""asymlab: executable counting arguments for Latin squares, Steiner triple
systems, and edge-parallelisms (1-factorizations of complete graphs).

The library enumerates the three structure kinds at small orders, computes
exact automorphism group orders through one colored-graph search engine,
computes exact permanents, verifies the fixed-structure inequalities behind
the asymmetry results on every enumerated object, evaluates the displayed
bound formulas in log domain, and reports measured asymmetric proportions.
"""

from .asymmetry import (
    AsymmetryReport,
    FixStats,
    asymmetry_report,
    bound_eval,
    count_fixed_latin,
    count_fixed_one_factors,
    crossover_order,
    ep_fix_stats,
    fixed_cells,
    fixed_subsquare,
    latin_fix_stats,
    latin_paratopy_classes,
    of_isomorphism_classes,
    sts_fix_stats,
    sts_isomorphism_classes,
    verify_ep_bounds,
    verify_latin_fixed_cell_bounds,
    verify_sts_bounds,
)
from .enumeration import (
    count_one_factors,
    enumerate_latin,
    enumerate_one_factorizations,
    enumerate_sts,
    extension_rows,
)
from .errors import AsymlabError
from .logscalar import LogScalar
from .permanent import (
    bang_friedland_lower,
    count_row_extensions,
    extension_matrix,
    latin_lower_bound,
    permanent_exact,
)
from .permgroup import (
    AutReport,
    ColoredGraph,
    TriplePermutation,
    apply_triple_perm,
    aut_order_latin,
    aut_order_of,
    aut_order_sts,
    colored_graph_aut,
    group_elements,
    group_order,
    is_autoparatopism,
    transform_latin,
)
from .srg import (
    AutComparison,
    SrgParams,
    aut_comparison,
    classical_graph,
    complete_multipartite,
    latin_square_graph,
    least_eigenvalue,
    srg_params,
    steiner_graph,
)
from .structures import (
    Cell,
    Graph,
    LatinRectangle,
    LatinSquare,
    OneFactorization,
    PointPermutation,
    Sts,
    ZeroOneMatrix,
    cells_of,
    validate_latin,
    validate_one_factorization,
    validate_sts,
)

__version__ = "0.1.0"
