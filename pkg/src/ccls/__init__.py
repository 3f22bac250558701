"""Coclique level structures and MFPT bounds for unit-interchange reaction networks."""
from .bounds import bound_down, bound_up, birth_death_mfpt, level_rates
from .builtins import example
from .chain import build_projected_chain, level_structure, verify_coclique
from .errors import CclsError, DSLParseError, ModelError, ResourceCapError
from .exact import HittingProblem, exact_mfpt
from .graph import bipartition, build_graph, make_projection, reversible_pairs, wd_cycle_basis
from .levels import enumerate_level_functions, function_from_coefficients
from .network import (combined_rate, conservation_basis, parse_network,
                      stoichiometric_matrix, to_dsl)
from .ssa import estimate_mfpt

__version__ = "0.1.0"
