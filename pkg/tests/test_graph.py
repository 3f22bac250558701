import random

import pytest

from ccls.builtins import example
from ccls.errors import ModelError
from ccls.graph import (Cocliques, OddCycleWitness, bipartition, build_graph, make_projection,
                        reversible_pairs, to_dot, wd_cycle_basis)
from ccls.network import parse_network, stoichiometric_matrix

from helpers import pipeline
from oracles import is_bipartite_bruteforce, random_network_source

TRIANGLE = ("species S1 S2 S3\n"
            "reaction a: S1 -> S2 @ mass_action(1)\n"
            "reaction b: S2 -> S3 @ mass_action(1)\n"
            "reaction c: S3 -> S1 @ mass_action(1)\n")


def _graph(net):
    return build_graph(stoichiometric_matrix(net))


def test_cascade_graph():
    g = _graph(example("cascade"))
    # species order (W, Y, Z): Z -> W is (3, 1), W -> Y is (1, 2) one-based
    assert g.edges == ((0, 2, 0), (1, 0, 1))
    assert g.components == ((0, 1, 2),)


def test_components_of_examples():
    assert _graph(example("disconnected")).components == ((0, 1), (2, 3))
    g = _graph(example("crossdep"))
    assert g.components == ((0, 1), (2, 3), (4,))
    assert g.component_sizes == (2, 2, 1)


def test_non_unit_interchange_rejected():
    net = parse_network("species A B\nreaction r: 2 A -> B @ mass_action(1)\n")
    with pytest.raises(ModelError, match=r"\(-2, 1\)"):
        _graph(net)


def test_chromatin2d_bipartition():
    part = bipartition(_graph(example("chromatin2d")), 0)
    assert isinstance(part, Cocliques)
    # species (DR, DA, D): B holds vertex 0
    assert part.B == (0, 1) and part.C == (2,)


def test_triangle_witness():
    part = bipartition(_graph(parse_network(TRIANGLE)), 0)
    assert isinstance(part, OddCycleWitness)
    assert sorted(part.cycle) == [0, 1, 2]


def test_singleton_component_is_degenerate():
    part = bipartition(_graph(example("crossdep")), 2)
    assert part.degenerate and part.B == (4,) and part.C == ()


def test_reversible_pairs():
    pairs, reps = reversible_pairs(stoichiometric_matrix(example("chromatin2d")))
    assert pairs == ((0, 1), (2, 3))
    assert len(reps) == 2
    pairs, reps = reversible_pairs(stoichiometric_matrix(example("cascade")))
    assert pairs == () and reps == (0, 1)
    pairs, reps = reversible_pairs(stoichiometric_matrix(example("biparallel")))
    assert pairs == () and len(reps) == 4


def _check_basis(matrix, graph, basis):
    assert len(basis) == graph.n - graph.d + graph.p
    for theta in basis:
        assert set(theta) <= {-1, 0, 1}
        for i in range(graph.d):
            assert sum(matrix.columns[k][i] * t for k, t in enumerate(theta)) == 0


def test_cycle_basis_examples():
    m, g, _ = pipeline(example("cascade"))
    assert wd_cycle_basis(g) == []
    net = parse_network("species S1 S2\nreaction a: S1 -> S2 @ mass_action(1)\n"
                        "reaction b: S2 -> S1 @ mass_action(1)\n")
    m, g, _ = pipeline(net)
    assert [abs(x) for x in wd_cycle_basis(g)[0]] == [1, 1]
    m, g, _ = pipeline(example("biparallel"))
    basis = wd_cycle_basis(g)
    _check_basis(m, g, basis)
    assert all(x != 0 for x in basis[0])


def test_random_graph_properties():
    rng = random.Random(7)
    for _ in range(150):
        net = parse_network(random_network_source(rng))
        m, g, _ = pipeline(net)
        assert sum(g.component_sizes) == g.d
        for k, i, j in g.edges:
            assert g.component_id[i] == g.component_id[j]
        _check_basis(m, g, wd_cycle_basis(g))
        adj = g.neighbours()
        for q, members in enumerate(g.components):
            part = bipartition(g, q)
            edges = [(i, j) for _, i, j in g.component_edges(q)]
            assert part.bipartite == is_bipartite_bruteforce(members, edges)
            if part.bipartite:
                assert members[0] in part.B
                for i, j in edges:
                    assert (i in part.B) != (j in part.B)
            else:
                cyc = part.cycle
                assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    assert any(u == b for u, _ in adj[a])


def test_bipartition_invariant_under_relabeling():
    rng = random.Random(11)
    for _ in range(40):
        src = random_network_source(rng, max_species=6)
        net = parse_network(src)
        perm = list(net.species)
        rng.shuffle(perm)
        relabeled = parse_network(src.replace(
            "species " + " ".join(net.species), "species " + " ".join(perm)))
        g1, g2 = _graph(net), _graph(relabeled)
        for q, members in enumerate(g1.components):
            names = {net.species[v] for v in members}
            q2 = g2.component_id[relabeled.species.index(next(iter(names)))]
            p1, p2 = bipartition(g1, q), bipartition(g2, q2)
            assert p1.bipartite == p2.bipartite
            if p1.bipartite and not p1.degenerate:
                sides1 = {frozenset(net.species[v] for v in s) for s in (p1.B, p1.C)}
                sides2 = {frozenset(relabeled.species[v] for v in s) for s in (p2.B, p2.C)}
                assert sides1 == sides2


def test_projection_default_and_override():
    _, g, p = pipeline(example("crossdep"))
    assert p.dropped == (1, 3, 4)
    assert p.labels == ("S1", "S3")
    assert p.lift((1, 0), (2, 3, 1)) == (1, 1, 0, 3, 1)
    p2 = make_projection(g, ["S1"])
    assert p2.labels == ("S2", "S3")
    with pytest.raises(ModelError):
        make_projection(g, ["S1", "S2"])


def test_dot_output():
    g = _graph(example("cascade"))
    dot = to_dot(g, [bipartition(g, 0)])
    assert dot.startswith("digraph") and "s2 -> s0" in dot
