"""Exact and asymptotic counting of induced regular subgraphs of G(n, 1/2)."""

from .asymptotics import (ConstrainedProfile, LogEstimate, RatioSpec, bound_pki, estimate_count,
                          estimate_pk, lambda_of, log_central_binomial_offset, prob_induced,
                          ratio_estimate, residual_mean)
from .enumeration import (DegreeCounter, ExactProbability, brute_force_count,
                          count_by_degree_sequence, count_constrained, exact_pk, exact_pki)
from .errors import BudgetExceeded, DomainError, Graph6Error
from .graph import Graph, degree_sequence, induced_subgraph, is_graphical, sample_gnp
from .graph6 import parse_graph6, write_graph6
from .moments import (MomentReport, choose_threshold, log_expected_count, upper_bound_tail,
                      variance_bound_profile)
from .sampling import sample_regular_exact
from .search import SearchResult, max_induced_regular_exact, max_induced_regular_heuristic

__version__ = "0.1.0"
