"""Path-length, path-breadth and parameters coarsely equivalent to them.

Exact oracles for small graphs, constructive witnesses with verifiers, and
an inequality ledger checked over graph corpora.
"""

from .decomposition import (
    PathDecomposition,
    exact_path_breadth,
    exact_path_length,
    from_order,
    metrics,
    validate,
)
from .domination import dpr, exact_dsp, heuristic_dsp, is_k_dominating_pair, path_eccentricity
from .enumeration import enumerate_connected_graphs, random_connected_graph
from .errors import CoarsePathError
from .graph import Graph, disk, load_graph, parse_edgelist, parse_graph6, power, to_graph6
from .harness import Caps, ParameterReport, check_inequalities, compute_all_parameters
from .layering import (
    Caterpillar,
    approx_adc,
    best_extended_layering,
    canonical_caterpillar,
    decomposition_from_caterpillar,
    distortion,
    exact_adc,
    extended_layering,
    layering,
)
from .mccarty import FatMinorWitness, disk_intercepts, extract_fat_minor, mci, verify_fat_minor
from .powers import (
    LinearLayout,
    ccp_from_caterpillar,
    ccp_from_decomposition,
    ccp_from_dominating_path,
    cocomparability_layout,
    find_admissible_vertex,
    find_asteroidal_triple,
    pat,
    pcc,
    verify_ccp,
)
from .quasi_isometry import (
    QuasiIsometryMap,
    WeightedPath,
    decomposition_from_qi,
    quasi_isometry_to_path,
    verify_qi,
)

__version__ = "0.1.0"
