from __future__ import annotations

from ccls.builtins import TOTAL_PARAMETER, example
from ccls.chain import build_projected_chain, level_structure
from ccls.graph import build_graph, make_projection
from ccls.levels import enumerate_level_functions, function_from_coefficients
from ccls.network import stoichiometric_matrix


def pipeline(net, drop=None):
    matrix = stoichiometric_matrix(net)
    graph = build_graph(matrix)
    projection = make_projection(graph, drop)
    return matrix, graph, projection


def functions_of(net):
    matrix, _, projection = pipeline(net)
    return {f.b for f in enumerate_level_functions(matrix, projection).functions}


def builtin(name, total=None, **params):
    """Built-in network with the total-tracking parameter bound to ``total``."""
    tp = TOTAL_PARAMETER.get(name)
    if tp and total is not None:
        params.setdefault(tp, total)
    return example(name, **params)


def chain_for(net, totals, coeffs):
    chain = build_projected_chain(net, totals)
    fn = function_from_coefficients(chain.matrix, chain.projection, coeffs)
    return chain, fn, level_structure(chain, fn)
