"""Species graph: components, two-colouring, reversible pairs and cycles.

Vertices are species indices. Column ``k`` of the stoichiometric matrix
becomes the directed edge ``(k, i, j)`` where species ``i`` is consumed and
species ``j`` is produced. Components are numbered from 0 in order of their
smallest vertex.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import ModelError
from .network import check_unit_interchange


@dataclass(frozen=True)
class SpeciesGraph:
    species: tuple
    edges: tuple
    component_id: tuple
    components: tuple

    @property
    def d(self):
        return len(self.species)

    @property
    def n(self):
        return len(self.edges)

    @property
    def p(self):
        return len(self.components)

    @property
    def component_sizes(self):
        return tuple(len(c) for c in self.components)

    def component_edges(self, q):
        return [e for e in self.edges if self.component_id[e[1]] == q]

    def neighbours(self):
        """Undirected adjacency: vertex -> list of (other vertex, edge index)."""
        adj = {v: [] for v in range(self.d)}
        for k, i, j in self.edges:
            adj[i].append((j, k))
            adj[j].append((i, k))
        return adj


@dataclass(frozen=True)
class Cocliques:
    B: tuple
    C: tuple
    degenerate: bool = False

    bipartite = True


@dataclass(frozen=True)
class OddCycleWitness:
    cycle: tuple

    bipartite = False


def build_graph(matrix):
    bad = check_unit_interchange(matrix)
    if bad is not None:
        raise ModelError(f"reaction vector {bad} is not a unit interchange "
                         "(needs exactly one +1, one -1, zeros elsewhere)")
    edges = []
    for k, col in enumerate(matrix.columns):
        edges.append((k, col.index(-1), col.index(1)))
    d = matrix.d
    adj = {v: [] for v in range(d)}
    for _, i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    comp = [-1] * d
    components = []
    for start in range(d):
        if comp[start] >= 0:
            continue
        q = len(components)
        comp[start] = q
        members = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if comp[u] < 0:
                    comp[u] = q
                    members.append(u)
                    queue.append(u)
        components.append(tuple(sorted(members)))
    return SpeciesGraph(matrix.network.species, tuple(edges), tuple(comp), tuple(components))


def bipartition(graph, q):
    """Two-colour component ``q``; ``B`` holds its smallest vertex.

    Returns :class:`Cocliques` or, if an edge joins two equally coloured
    vertices, an :class:`OddCycleWitness` holding a simple odd cycle.
    """
    members = graph.components[q]
    if len(members) == 1:
        return Cocliques(members, (), degenerate=True)
    adj = graph.neighbours()
    root = members[0]
    colour = {root: 0}
    parent = {root: None}
    depth = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u, _ in adj[v]:
            if u not in colour:
                colour[u] = 1 - colour[v]
                parent[u] = v
                depth[u] = depth[v] + 1
                queue.append(u)
            elif colour[u] == colour[v]:
                return OddCycleWitness(_odd_cycle(v, u, parent, depth))
    B = tuple(v for v in members if colour[v] == 0)
    C = tuple(v for v in members if colour[v] == 1)
    return Cocliques(B, C)


def _odd_cycle(a, b, parent, depth):
    left, right = [a], [b]
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at the common ancestor; walk back down the other branch
    return tuple(left + right[-2::-1])


def reversible_pairs(matrix):
    """Pairs ``(k, k')`` with ``v_k = -v_k'`` and ``k < k'``, plus representatives.

    The representative set keeps the lower index of every pair and every
    unpaired column, in ascending order.
    """
    where = {col: k for k, col in enumerate(matrix.columns)}
    pairs = []
    for k, col in enumerate(matrix.columns):
        other = where.get(tuple(-x for x in col))
        if other is not None and k < other:
            pairs.append((k, other))
    dropped = {b for _, b in pairs}
    reps = tuple(k for k in range(matrix.n) if k not in dropped)
    return tuple(pairs), reps


def spanning_forest(graph, order=None):
    """Edge indices of a spanning forest, greedily taking edges in ``order``."""
    parent = list(range(graph.d))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    order = range(graph.n) if order is None else order
    tree = []
    for k in order:
        _, i, j = graph.edges[k]
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            tree.append(k)
    return tree


def wd_cycle_basis(graph):
    """Fundamental cycles of a spanning forest as signed edge-incidence vectors.

    Entry ``+1`` means the cycle traverses the edge along its direction,
    ``-1`` against it. Size is ``n - d + p``.
    """
    tree = set(spanning_forest(graph))
    adj = {v: [] for v in range(graph.d)}
    for k in tree:
        _, i, j = graph.edges[k]
        adj[i].append((j, k))
        adj[j].append((i, k))
    parent = {}
    depth = {}
    for root in range(graph.d):
        if root in depth:
            continue
        depth[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u, k in adj[v]:
                if u not in depth:
                    depth[u] = depth[v] + 1
                    parent[u] = (v, k)
                    queue.append(u)
    basis = []
    for k, i, j in graph.edges:
        if k in tree:
            continue
        theta = [0] * graph.n
        theta[k] = 1
        # close the cycle by walking the tree from j back to i
        a, b = j, i
        while depth[a] > depth[b]:
            a = _step_up(a, parent, graph, theta, along=True)
        while depth[b] > depth[a]:
            b = _step_up(b, parent, graph, theta, along=False)
        while a != b:
            a = _step_up(a, parent, graph, theta, along=True)
            b = _step_up(b, parent, graph, theta, along=False)
        basis.append(theta)
    return basis


def _step_up(v, parent, graph, theta, along):
    # move from v to its tree parent; ``along`` is the walk direction v -> parent
    # (False means the walk goes parent -> v)
    u, k = parent[v]
    _, src, _ = graph.edges[k]
    forward = (src == v) if along else (src == u)
    theta[k] += 1 if forward else -1
    return u


def to_dot(graph, bipartitions=None):
    """Graphviz DOT text; optional bipartitions colour the two cocliques."""
    lines = ["digraph species {"]
    fill = {}
    for part in bipartitions or ():
        if isinstance(part, Cocliques):
            fill.update({v: "lightblue" for v in part.B})
            fill.update({v: "lightyellow" for v in part.C})
    for v, name in enumerate(graph.species):
        attrs = f'label="{name}"'
        if v in fill:
            attrs += f', style=filled, fillcolor="{fill[v]}"'
        lines.append(f"  s{v} [{attrs}];")
    for k, i, j in graph.edges:
        lines.append(f'  s{i} -> s{j} [label="e{k + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Projection:
    """Which species each component drops, and the resulting coordinates.

    ``coords`` lists the kept species indices in species order; a projected
    state is the vector of their counts.
    """

    graph: SpeciesGraph
    dropped: tuple

    @property
    def coords(self):
        gone = set(self.dropped)
        return tuple(v for v in range(self.graph.d) if v not in gone)

    @property
    def labels(self):
        return tuple(self.graph.species[v] for v in self.coords)

    def coord_index(self):
        return {v: c for c, v in enumerate(self.coords)}

    def component_coords(self, q):
        index = self.coord_index()
        return [index[v] for v in self.graph.components[q] if v != self.dropped[q]]

    def project(self, full):
        return tuple(full[v] for v in self.coords)

    def lift(self, state, totals):
        full = [0] * self.graph.d
        for c, v in enumerate(self.coords):
            full[v] = state[c]
        for q, v in enumerate(self.dropped):
            full[v] = totals[q] - sum(full[u] for u in self.graph.components[q] if u != v)
        return tuple(full)

    def reduced_column(self, col):
        return tuple(col[v] for v in self.coords)


def make_projection(graph, drop=None):
    """Projection dropping the highest-index species of each component by default.

    ``drop`` may name (or index) species to drop instead; each must belong to a
    distinct component, and unmentioned components keep the default.
    """
    dropped = [members[-1] for members in graph.components]
    seen = set()
    for s in drop or ():
        v = graph.species.index(s) if isinstance(s, str) else int(s)
        if not 0 <= v < graph.d:
            raise ModelError(f"cannot drop unknown species {s!r}")
        q = graph.component_id[v]
        if q in seen:
            raise ModelError(f"two dropped species in component of {graph.species[v]}")
        seen.add(q)
        dropped[q] = v
    return Projection(graph, tuple(dropped))
