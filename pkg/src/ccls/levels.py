"""Coclique level functions.

A level function is an integer vector ``b`` over the projected coordinates
with ``b . v_k`` equal to +1 or -1 for every (projected) reaction vector. Per
component, every sign vector ``w`` over the component's columns admits at
most one solution of ``S_q^T b = w``; enumerating the sign vectors therefore
enumerates the functions. Components are then combined by summation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import ModelError, ResourceCapError
from .graph import bipartition, reversible_pairs, spanning_forest
from .linalg import rref

ENUMERATION_CAP = 24


@dataclass(frozen=True)
class LevelFunction:
    """``L(x) = b . x`` on projected coordinates.

    ``signs`` has one entry per stoichiometric column: the value of ``L`` on
    that column (0 for columns of components this function does not cover).
    """

    b: tuple
    signs: tuple
    components: tuple
    parts: tuple = ()

    def __call__(self, state):
        return sum(c * x for c, x in zip(self.b, state))

    def negated(self):
        return LevelFunction(tuple(-c for c in self.b), tuple(-s for s in self.signs),
                             self.components, tuple(p.negated() for p in self.parts))

    def canonical(self):
        lead = next((c for c in self.b if c != 0), 0)
        return self.negated() if lead < 0 else self

    def format(self, labels):
        """Render as e.g. ``x1 + 2*x2`` using ``labels`` for the coordinates."""
        out = ""
        for c, name in zip(self.b, labels):
            if c == 0:
                continue
            mag = abs(c)
            term = name if mag == 1 else f"{mag}*{name}"
            if not out:
                out = term if c > 0 else f"-{term}"
            else:
                out += (" + " if c > 0 else " - ") + term
        return out or "0"


@dataclass
class ComponentEnumeration:
    component: int
    functions: list
    representatives: tuple
    assignments: int
    rejected: int
    obstruction: tuple | None = None


@dataclass
class EnumerationReport:
    functions: list
    components: list = field(default_factory=list)
    rejected: int = 0
    obstruction: tuple | None = None
    notes: list = field(default_factory=list)


def _component_columns(graph, q):
    return [k for k, i, _ in graph.edges if graph.component_id[i] == q]


class ComponentSystem:
    """The equations ``b . v_k = w_k`` of one component, factored once.

    A maximal independent set of equations is inverted exactly; a candidate
    ``w`` is then solved from those and checked against all equations.
    """

    def __init__(self, matrix, projection, q):
        graph = projection.graph
        if len(graph.components[q]) < 2:
            raise ModelError(f"component {q} has a single species")
        self.q = q
        self.n = matrix.n
        self.ncoord = len(projection.coords)
        self.coords = projection.component_coords(q)
        self.columns = _component_columns(graph, q)
        self.rows = []
        for k in self.columns:
            col = projection.reduced_column(matrix.columns[k])
            self.rows.append([col[c] for c in self.coords])
        m = len(self.coords)
        transpose = [[row[c] for row in self.rows] for c in range(m)]
        _, pivots = rref(transpose)
        if len(pivots) < m:
            raise ModelError(f"component {q}: projected reaction vectors do not have full rank")
        self.basis_rows = pivots
        square = [self.rows[i] for i in pivots]
        aug = [list(row) + [1 if i == j else 0 for j in range(m)] for i, row in enumerate(square)]
        reduced, _ = rref(aug)
        self.inverse = [row[m:] for row in reduced]

    def solve(self, signs):
        w = [signs[k] for k in self.columns]
        sub = [w[i] for i in self.basis_rows]
        sol = [sum((a * b for a, b in zip(row, sub)), Fraction(0)) for row in self.inverse]
        for row, target in zip(self.rows, w):
            if sum(a * b for a, b in zip(row, sol)) != target:
                return None
        if any(x.denominator != 1 for x in sol):
            raise ModelError(f"non-integer solution {sol} for component {self.q}")
        b = [0] * self.ncoord
        for c, x in zip(self.coords, sol):
            b[c] = int(x)
        full = [0] * self.n
        for k in self.columns:
            full[k] = signs[k]
        return LevelFunction(tuple(b), tuple(full), (self.q,))


def solve_sign_assignment(matrix, projection, q, signs, system=None):
    """Unique ``b`` with ``b . v_k = signs[k]`` on component ``q``, or ``None``.

    ``signs`` maps every column of the component to +1 or -1.
    """
    if system is None:
        system = ComponentSystem(matrix, projection, q)
    return system.solve(signs)


def cycle_obstruction(signs, basis):
    """Index of the first basis cycle with ``w . theta != 0``, else ``None``.

    ``signs`` is indexable by column (missing columns count as 0).
    """
    for c, theta in enumerate(basis):
        total = sum(t * signs[k] for k, t in enumerate(theta) if t)
        if total != 0:
            return c
    return None


def _expand(reps, rep_signs, pairs, columns):
    signs = dict(zip(reps, rep_signs))
    for a, b in pairs:
        if a in signs:
            signs[b] = -signs[a]
    return {k: signs[k] for k in columns}


def _propagated_assignments(graph, q, reps, pairs):
    """Sign vectors consistent with every fundamental cycle of a spanning tree.

    Tree edges range over all signs (the first representative is fixed to +1
    and is always a tree edge); each remaining edge's sign is then forced by
    the potential difference across it, and assignments where that difference
    is not +1/-1 are skipped.
    """
    tree = spanning_forest(graph, reps)
    members = graph.components[q]
    columns = _component_columns(graph, q)
    for bits in product((1, -1), repeat=len(tree) - 1):
        tree_signs = (1,) + bits
        phi = {members[0]: 0}
        adj = {v: [] for v in members}
        for k, s in zip(tree, tree_signs):
            _, i, j = graph.edges[k]
            adj[i].append((j, s))
            adj[j].append((i, -s))
        stack = [members[0]]
        while stack:
            v = stack.pop()
            for u, s in adj[v]:
                if u not in phi:
                    phi[u] = phi[v] + s
                    stack.append(u)
        signs = {}
        ok = True
        for k in columns:
            _, i, j = graph.edges[k]
            diff = phi[j] - phi[i]
            if diff not in (1, -1):
                ok = False
                break
            signs[k] = diff
        if ok:
            yield signs


def enumerate_component_functions(matrix, projection, q, prefilter=True, cap=ENUMERATION_CAP,
                                  basis=None):
    """All level functions of component ``q`` (canonical sign, assignment order)."""
    graph = projection.graph
    pairs, all_reps = reversible_pairs(matrix)
    columns = _component_columns(graph, q)
    colset = set(columns)
    reps = tuple(k for k in all_reps if k in colset)
    cpairs = tuple(pr for pr in pairs if pr[0] in colset)
    if len(reps) > cap:
        raise ResourceCapError(
            f"component {q} has {len(reps)} representative reaction vectors (cap {cap}); "
            "use the bipartite level function instead")
    total = 2 ** (len(reps) - 1)
    system = ComponentSystem(matrix, projection, q)
    functions = []
    if prefilter:
        candidates = _propagated_assignments(graph, q, reps, cpairs)
    else:
        candidates = (_expand(reps, (1,) + bits, cpairs, columns)
                      for bits in product((1, -1), repeat=len(reps) - 1))
    for signs in candidates:
        if basis is not None and cycle_obstruction(_dense(signs, matrix.n), basis) is not None:
            continue
        fn = system.solve(signs)
        if fn is not None:
            functions.append(fn.canonical())
    obstruction = None
    if not functions:
        part = bipartition(graph, q)
        if not part.bipartite:
            obstruction = part.cycle
    return ComponentEnumeration(q, functions, reps, total, total - len(functions), obstruction)


def _dense(signs, n):
    out = [0] * n
    for k, s in signs.items():
        out[k] = s
    return out


def brute_force_component_functions(matrix, projection, q):
    """Reference enumerator: every full sign vector, no quotient, no filter."""
    graph = projection.graph
    columns = _component_columns(graph, q)
    system = ComponentSystem(matrix, projection, q)
    found = set()
    for w in product((1, -1), repeat=len(columns)):
        fn = system.solve(dict(zip(columns, w)))
        if fn is not None:
            found.add(fn.canonical().b)
    return found


def bipartite_level_function(matrix, projection, q):
    """``L`` = total count over one coclique, written in projected coordinates.

    If the dropped species lies in ``B`` the sum over ``B`` is affine in the
    projected coordinates, and the linear part is minus the sum over ``C``;
    the canonical representative is therefore the indicator of the coclique
    that does not contain the dropped species.
    """
    graph = projection.graph
    part = bipartition(graph, q)
    if not part.bipartite:
        raise ModelError(f"component {q} is not bipartite (odd cycle {part.cycle})")
    if part.degenerate:
        raise ModelError(f"component {q} has a single species")
    side = part.C if projection.dropped[q] in part.B else part.B
    index = projection.coord_index()
    b = [0] * len(projection.coords)
    for v in side:
        b[index[v]] = 1
    signs = [0] * matrix.n
    for k in _component_columns(graph, q):
        col = projection.reduced_column(matrix.columns[k])
        val = sum(x * y for x, y in zip(b, col))
        if val not in (1, -1):
            raise ModelError(f"bipartite function fails on column {k}")
        signs[k] = val
    return LevelFunction(tuple(b), tuple(signs), (q,)).canonical()


def combine_components(per_component):
    """Sum one function per component, each in both signs, modulo global sign."""
    per_component = [list(fs) for fs in per_component]
    if not per_component or any(not fs for fs in per_component):
        return []
    first, rest = per_component[0], per_component[1:]
    options = [[f for g in fs for f in (g, g.negated())] for fs in rest]
    out = []
    for head in first:
        for tail in product(*options):
            parts = (head,) + tail
            b = tuple(sum(col) for col in zip(*(p.b for p in parts)))
            signs = tuple(sum(col) for col in zip(*(p.signs for p in parts)))
            comps = tuple(q for p in parts for q in p.components)
            fn = LevelFunction(b, signs, comps, parts if len(parts) > 1 else ())
            out.append(fn.canonical())
    return out


def enumerate_level_functions(matrix, projection, prefilter=True, cap=ENUMERATION_CAP,
                              fallback=False):
    """Every coclique level function of the projected chain.

    With ``fallback`` a component over the enumeration cap contributes only
    its bipartite function, and a note says so; otherwise the cap error
    propagates.
    """
    graph = projection.graph
    report = EnumerationReport(functions=[])
    lists = []
    for q, members in enumerate(graph.components):
        if len(members) < 2:
            continue
        try:
            comp = enumerate_component_functions(matrix, projection, q, prefilter, cap)
        except ResourceCapError:
            if not fallback:
                raise
            fn = bipartite_level_function(matrix, projection, q)
            comp = ComponentEnumeration(q, [fn], (), 0, 0)
            report.notes.append(
                f"component {q} exceeds the enumeration cap; only its bipartite function is listed")
        report.components.append(comp)
        report.rejected += comp.rejected
        if comp.obstruction is not None and report.obstruction is None:
            report.obstruction = comp.obstruction
        lists.append(comp.functions)
    report.functions = combine_components(lists)
    return report


def is_level_function(matrix, projection, b):
    """True when ``b . v_k`` is +1 or -1 for every projected column."""
    for col in matrix.columns:
        red = projection.reduced_column(col)
        if sum(x * y for x, y in zip(b, red)) not in (1, -1):
            return False
    return True


def function_from_coefficients(matrix, projection, b):
    """Wrap a user-supplied coefficient vector, checking the level property."""
    b = tuple(int(x) for x in b)
    if len(b) != len(projection.coords):
        raise ModelError(f"expected {len(projection.coords)} coefficients, got {len(b)}")
    signs = []
    for k, col in enumerate(matrix.columns):
        val = sum(x * y for x, y in zip(b, projection.reduced_column(col)))
        if val not in (1, -1):
            raise ModelError(f"not a coclique level function: L(v{k + 1}) = {val}")
        signs.append(val)
    comps = tuple(q for q, m in enumerate(projection.graph.components) if len(m) > 1)
    return LevelFunction(b, tuple(signs), comps)
