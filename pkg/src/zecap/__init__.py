"""zecap: zero-error capacity toolkit.

Confusability-graph algebra (disjoint union, strong products and powers),
an exact branch-and-bound independence solver, subset-intersection channel
constructions whose coalitions provably split into high-capacity and
certificate-capped ones, and explicit rainbow edge colorings of complete
graphs — all with O(n^2) mechanical verification of every finite claim.
"""

from .combin import (binomial, colex_rank, colex_unrank, crt_unique_below,
                     is_prime, ksubsets_colex, next_primes, subset_masks)
from .graphs import (Graph, SizeCapExceeded, complement, complete, cycle,
                     disjoint_union, edgeless, from_bool, from_edges, induced,
                     load_graph, power, save_graph, strong_product)
from .independence import (AlphaResult, CapacityBracket, alpha_of_union,
                           capacity_bracket, is_independent,
                           is_independent_in_power, max_independent_set)
from .polyrep import (CertReport, DimensionBound, RepresentationCertificate,
                      dimension_bound, fw_evaluate, verify_certificate)
from .privileged import (AntichainAssignment, BoundReport, PrivilegedSystem,
                         SubsetFamily, bound_report, build_assignment,
                         build_graph, build_system, coalition_status,
                         diagonal_tuples, load_system, maximal_free_sets,
                         save_system, union_graph, validate_params)
from .ramsey import (EdgeColoring, build_coloring, check_well_defined,
                     color_class, load_coloring, rainbow_threshold,
                     save_coloring, verify_rainbow)

__version__ = "0.1.0"
