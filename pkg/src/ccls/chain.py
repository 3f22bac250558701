"""Projected Markov chain on a finite lattice, and its level structures.

States are projected count vectors (one coordinate per kept species, in
species order) enumerated lexicographically. Each state lists its outgoing
transitions ``(target index, column k, rate)`` with positive exact rates.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb

from . import expr as ex
from .errors import ModelError, ResourceCapError
from .graph import build_graph, make_projection
from .network import stoichiometric_matrix

DEFAULT_STATE_CAP = 10 ** 6


def state_cap():
    raw = os.environ.get("CCLS_STATE_CAP")
    if raw is None:
        return DEFAULT_STATE_CAP
    try:
        return int(raw)
    except ValueError:
        raise ModelError(f"CCLS_STATE_CAP must be an integer, got {raw!r}") from None


@dataclass
class ProjectedChain:
    matrix: object
    projection: object
    totals: tuple
    params: dict
    states: list
    index: dict
    transitions: list

    @property
    def network(self):
        return self.matrix.network

    def __len__(self):
        return len(self.states)

    def full_state(self, i):
        return self.projection.lift(self.states[i], self.totals)

    def exit_rate(self, i):
        return sum((r for _, _, r in self.transitions[i]), Fraction(0))

    def triplets(self):
        """Off-diagonal generator entries ``(source, target, rate)``."""
        out = []
        for i, row in enumerate(self.transitions):
            merged = {}
            for j, _, r in row:
                merged[j] = merged.get(j, 0) + r
            out.extend((i, j, merged[j]) for j in sorted(merged))
        return out

    def dump(self):
        """Text dump: a header, the states, then one ``i j p/q`` line per entry."""
        lines = [f"# states {len(self.states)} coords {' '.join(self.projection.labels)}",
                 f"# totals {' '.join(str(t) for t in self.totals)}"]
        for i, s in enumerate(self.states):
            lines.append(f"s {i} " + " ".join(str(x) for x in s))
        for i, j, r in self.triplets():
            lines.append(f"q {i} {j} {r}")
        return "\n".join(lines) + "\n"


def normalize_totals(graph, totals):
    """Per-component totals from an int (single component), sequence or mapping."""
    p = graph.p
    if isinstance(totals, int):
        if p != 1:
            raise ModelError(f"network has {p} components; give one total per component")
        out = (totals,)
    elif isinstance(totals, dict):
        out = [None] * p
        for key, value in totals.items():
            q = graph.component_id[graph.species.index(key)] if isinstance(key, str) else int(key)
            out[q] = value
        if None in out:
            raise ModelError("missing total for some component")
        out = tuple(out)
    else:
        out = tuple(totals)
        if len(out) != p:
            raise ModelError(f"expected {p} totals, got {len(out)}")
    if any(int(t) != t or t < 0 for t in out):
        raise ModelError("totals must be non-negative integers")
    return tuple(int(t) for t in out)


def _simplex(dim, total):
    """Non-negative integer vectors of length ``dim`` with sum <= total, lexicographic."""
    if dim == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _simplex(dim - 1, total - first):
            yield (first,) + rest


def chain_size(graph, totals):
    size = 1
    for members, t in zip(graph.components, totals):
        size *= comb(t + len(members) - 1, len(members) - 1)
    return size


class _Rates:
    """Propensity evaluation with mass-action constants bound once."""

    def __init__(self, net, params):
        self.net = net
        self.params = params
        self.kappa = []
        for rxn in net.reactions:
            if rxn.propensity.kind == "mass_action":
                self.kappa.append(Fraction(ex.evaluate(rxn.propensity.tree, params)))
            else:
                self.kappa.append(None)

    def column(self, matrix, k, x):
        total = Fraction(0)
        for j in matrix.column_sources[k]:
            rxn = self.net.reactions[j]
            kappa = self.kappa[j]
            if kappa is not None:
                value = kappa
                for xi, r in zip(x, rxn.reactants):
                    if r:
                        value *= ex.falling_factorial(xi, r)
            else:
                env = dict(self.params)
                env.update(zip(self.net.species, x))
                value = Fraction(ex.evaluate(rxn.propensity.tree, env))
            if value < 0:
                raise ModelError(f"negative propensity {value} for reaction {rxn.label} at state {x}")
            total += value
        return total


def build_projected_chain(net, totals, params=None, projection=None, cap=None):
    """Enumerate the projected state space and its positive-rate transitions."""
    matrix = stoichiometric_matrix(net)
    graph = build_graph(matrix)
    if projection is None:
        projection = make_projection(graph)
    totals = normalize_totals(graph, totals)
    cap = state_cap() if cap is None else cap
    size = chain_size(graph, totals)
    if size > cap:
        raise ResourceCapError(f"state space has {size} states (cap {cap})")
    if size <= 1:
        raise ModelError("state space has a single state")
    params = dict(net.parameters if params is None else params)

    coord_pos = projection.coord_index()
    blocks = []
    for q, members in enumerate(graph.components):
        kept = [coord_pos[v] for v in members if v != projection.dropped[q]]
        blocks.append((kept, list(_simplex(len(kept), totals[q]))))
    ncoord = len(projection.coords)
    states = []
    for combo in product(*(b[1] for b in blocks)):
        s = [0] * ncoord
        for (kept, _), part in zip(blocks, combo):
            for c, x in zip(kept, part):
                s[c] = x
        states.append(tuple(s))
    states.sort()
    index = {s: i for i, s in enumerate(states)}

    rates = _Rates(net, params)
    reduced = [projection.reduced_column(col) for col in matrix.columns]
    transitions = []
    for s in states:
        x = projection.lift(s, totals)
        row = []
        for k, col in enumerate(matrix.columns):
            if any(xi + dv < 0 for xi, dv in zip(x, col)):
                continue
            r = rates.column(matrix, k, x)
            if r > 0:
                target = tuple(a + b for a, b in zip(s, reduced[k]))
                row.append((index[target], k, r))
        transitions.append(row)
    return ProjectedChain(matrix, projection, totals, params, states, index, transitions)


@dataclass
class LevelStructure:
    function: object
    lo: int
    hi: int
    levels: dict
    level_of: list = field(repr=False)

    @property
    def count(self):
        return self.hi - self.lo + 1


def level_structure(chain, fn):
    values = [fn(s) for s in chain.states]
    lo, hi = min(values), max(values)
    levels = {z: [] for z in range(lo, hi + 1)}
    for i, z in enumerate(values):
        levels[z].append(i)
    empty = [z for z, members in levels.items() if not members]
    if empty:
        raise ModelError(f"non-contiguous levels: no state has L = {empty[0]}")
    return LevelStructure(fn, lo, hi, levels, values)


@dataclass
class CocliqueReport:
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def verify_coclique(chain, fn):
    """Every positive-rate transition must change ``L`` by exactly one."""
    violations = []
    for i, row in enumerate(chain.transitions):
        here = fn(chain.states[i])
        for j, k, _ in row:
            delta = fn(chain.states[j]) - here
            if abs(delta) != 1:
                violations.append((chain.states[i], k, delta))
    return CocliqueReport(not violations, violations)
