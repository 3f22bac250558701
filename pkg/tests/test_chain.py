import pytest
from hypothesis import given, settings, strategies as st

from ccls.builtins import SOURCES, example
from ccls.chain import build_projected_chain, level_structure, verify_coclique
from ccls.errors import ModelError, ResourceCapError
from ccls.levels import LevelFunction, function_from_coefficients
from ccls.network import conservation_basis

from helpers import builtin, chain_for


@pytest.mark.parametrize("name, totals, size", [
    ("cascade", 2, 6),
    ("chromatin2d", 3, 10),
    ("crossdep", (2, 3, 1), 12),
    ("chromatin4d", 2, 15),
])
def test_state_counts(name, totals, size):
    total = totals if isinstance(totals, int) else None
    chain = build_projected_chain(builtin(name, total), totals)
    assert len(chain) == size


def test_states_are_lexicographic():
    chain = build_projected_chain(example("cascade"), 2)
    assert chain.states == sorted(chain.states)
    assert chain.states[0] == (0, 0)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_cascade_levels(n):
    chain, fn, ls = chain_for(example("cascade"), n, (1, 2))
    assert (ls.lo, ls.hi) == (0, 2 * n)
    assert [chain.states[i] for i in ls.levels[ls.lo]] == [(0, 0)]
    assert [chain.states[i] for i in ls.levels[ls.hi]] == [(0, n)]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_chromatin2d_levels(d):
    _, _, ls = chain_for(builtin("chromatin2d", d), d, (1, -1))
    assert (ls.lo, ls.hi) == (-d, d)


def test_chromatin4d_levels():
    chain, _, ls = chain_for(builtin("chromatin4d", 2), 2, (2, -1, 1, 1))
    assert (ls.lo, ls.hi) == (-2, 4)
    assert len(ls.levels[ls.lo]) == 1 and len(ls.levels[ls.hi]) == 1


def test_coclique_check_passes_and_fails():
    chain, fn, _ = chain_for(example("cascade"), 2, (1, 2))
    assert verify_coclique(chain, fn)
    bad = LevelFunction((0, 1), (0, 1), (0,))
    report = verify_coclique(chain, bad)
    assert not report
    # Z -> W leaves x2 (Y) unchanged
    assert all(k == 0 and delta == 0 for _, k, delta in report.violations)


def test_non_contiguous_levels():
    chain = build_projected_chain(example("cascade"), 2)
    with pytest.raises(ModelError, match="non-contiguous"):
        level_structure(chain, LevelFunction((3, 0), (0, 0), (0,)))


def test_state_cap_and_single_state():
    with pytest.raises(ResourceCapError):
        build_projected_chain(example("cascade"), 3, cap=5)
    with pytest.raises(ModelError, match="single state"):
        build_projected_chain(example("cascade"), 0)


def test_state_cap_from_environment(monkeypatch):
    monkeypatch.setenv("CCLS_STATE_CAP", "4")
    with pytest.raises(ResourceCapError):
        build_projected_chain(example("cascade"), 2)


def test_totals_forms():
    net = example("disconnected")
    a = build_projected_chain(net, (2, 1))
    b = build_projected_chain(net, {"S1": 2, "S4": 1})
    assert a.states == b.states
    with pytest.raises(ModelError):
        build_projected_chain(net, 2)


def test_dump_format():
    chain = build_projected_chain(example("cascade"), 1)
    lines = chain.dump().splitlines()
    assert lines[0] == "# states 3 coords W Y"
    assert lines[2:5] == ["s 0 0 0", "s 1 0 1", "s 2 1 0"]
    assert "q 0 2 1" in lines and "q 2 1 1" in lines


def _invariants(chain):
    cons = conservation_basis(chain.matrix)
    expect = [sum(m * x for m, x in zip(vec, chain.full_state(0))) for vec in cons]
    for i, row in enumerate(chain.transitions):
        x = chain.full_state(i)
        assert all(v >= 0 for v in x)
        assert [sum(m * v for m, v in zip(vec, x)) for vec in cons] == expect
        for j, k, r in row:
            assert r > 0 and j != i
            y = chain.full_state(j)
            assert tuple(b - a for a, b in zip(x, y)) == chain.matrix.columns[k]


_TOTALS = {"disconnected": (2, 2), "crossdep": (2, 2, 2)}


@pytest.mark.parametrize("name", sorted(SOURCES))
def test_chain_invariants_builtins(name):
    chain = build_projected_chain(builtin(name, 2), _TOTALS.get(name, 2))
    _invariants(chain)
    # generator rows sum to zero: the diagonal is minus the off-diagonal sum
    off = {}
    for i, _, r in chain.triplets():
        off[i] = off.get(i, 0) + r
    assert all(chain.exit_rate(i) == off.get(i, 0) for i in range(len(chain)))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["cascade", "chromatin2d", "biparallel"]), st.integers(1, 5))
def test_chain_invariants_property(name, total):
    chain = build_projected_chain(builtin(name, total), total)
    _invariants(chain)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_crossdep_invariants_property(totals):
    chain = build_projected_chain(example("crossdep"), tuple(totals))
    _invariants(chain)
    fn = function_from_coefficients(chain.matrix, chain.projection, (1, -1))
    assert verify_coclique(chain, fn)
