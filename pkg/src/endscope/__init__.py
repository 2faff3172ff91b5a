"""Pseudo-components, radius of compactness, ends and properness of isometry actions."""

__version__ = "0.1.0"

from .catalog import catalog_family, paper_example  # noqa: E402
from .compactness import RhoFunction, check_lipschitz, heine_borel, rho, rho_from_sites, rho_network  # noqa: E402
from .components import (ComponentPartition, ProximityDigraph, proximity_digraph,  # noqa: E402
                         pseudo_components, theorem1_check, to_dot, transitive_closure)
from .ends import count_ends, escaping_components, is_j_space  # noqa: E402
from .isometry import (is_precompact, isometry_group_finite, k_of_f, limit_set_witness,  # noqa: E402
                       properness_report, symbolic_group, transporter)
from .metric import (INF, DistanceMatrix, WeightedGraph, ball, cap_metric,  # noqa: E402
                     shortest_path_metric, validate_metric)
from .spaces import MetricSpace, NetworkSpace, build_finite_space, build_network  # noqa: E402
