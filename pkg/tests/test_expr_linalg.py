from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ccls import expr as ex
from ccls.errors import DSLParseError, ModelError
from ccls.linalg import nullspace, primitive, rank, solve_unique, sparse_solve

from oracles import dense_solve


def test_literals_are_exact():
    assert ex.parse_expr("0.1") == ("num", Fraction(1, 10))
    assert ex.parse_expr("3/2") == ("num", Fraction(3, 2))
    assert ex.parse_expr("1e-3") == ("num", Fraction(1, 1000))


def test_constant_folding_keeps_names():
    t = ex.parse_expr("2 * k / (4 * V)")
    assert ex.names(t) == {"k", "V"}
    assert ex.evaluate(t, {"k": 3, "V": 1}) == Fraction(3, 2)


def test_falling_factorial_call():
    t = ex.parse_expr("ff(x, 2) * c")
    assert ex.evaluate(t, {"x": 3, "c": 1}) == 6
    assert ex.evaluate(t, {"x": 1, "c": 1}) == 0


@pytest.mark.parametrize("text", ["x ** 2", "f(x)", "ff(x, y)", "ff(x, -1)", "'a'", "x <"])
def test_rejected_syntax(text):
    with pytest.raises(DSLParseError):
        ex.parse_expr(text)


def test_divisor_names():
    assert ex.divisor_names(ex.parse_expr("a / (b + c) * d")) == {"b", "c"}


def test_runtime_division_by_zero():
    with pytest.raises(ModelError):
        ex.evaluate(ex.parse_expr("1 / V"), {"V": 0})


_names = st.sampled_from(["a", "b", "x"])
_leaf = st.one_of(
    st.fractions(min_value=-20, max_value=20, max_denominator=9).map(lambda v: ("num", v)),
    _names.map(lambda n: ("var", n)))


def _node(children):
    return st.one_of(
        st.tuples(st.sampled_from(["add", "sub", "mul"]), children, children),
        st.tuples(st.just("div"), children, st.sampled_from(["a", "b"]).map(lambda n: ("var", n))),
        st.tuples(st.just("neg"), children),
        st.tuples(st.just("ff"), children, st.integers(0, 3)))


@given(st.recursive(_leaf, _node, max_leaves=8))
def test_text_round_trip(tree):
    folded = ex._fold(tree)
    assert ex.parse_expr(ex.to_text(folded)) == folded


def test_nullspace_and_primitive():
    assert primitive([Fraction(1, 2), Fraction(-1, 3)]) == [3, -2]
    assert primitive([-2, 4]) == [1, -2]
    basis = nullspace([[-1, 1, 0, 0], [1, -1, 0, 0], [0, 0, -1, 1]], 4)
    assert basis == [[1, 1, 0, 0], [0, 0, 1, 1]]
    assert rank([[1, 2], [2, 4]]) == 1


def test_solve_unique_cases():
    assert solve_unique([[1, 0], [0, 1], [1, 1]], [1, 2, 3]) == [1, 2]
    assert solve_unique([[1, 0], [0, 1], [1, 1]], [1, 2, 4]) is None
    with pytest.raises(ValueError):
        solve_unique([[1, 1]], [1])


@given(st.integers(1, 7), st.randoms(use_true_random=False))
def test_sparse_solve_matches_dense(n, rnd):
    a = [[Fraction(rnd.randint(-3, 3)) if rnd.random() < 0.5 else Fraction(0) for _ in range(n)]
         for _ in range(n)]
    for i in range(n):
        a[i][i] += 10  # diagonally dominant, hence non-singular
    b = [Fraction(rnd.randint(-5, 5), rnd.randint(1, 4)) for _ in range(n)]
    rows = {i: {j: a[i][j] for j in range(n) if a[i][j]} for i in range(n)}
    x = sparse_solve(rows, dict(enumerate(b)))
    assert [x[i] for i in range(n)] == dense_solve(a, b)


def test_sparse_solve_singular():
    with pytest.raises(ValueError):
        sparse_solve({0: {0: 1, 1: 1}, 1: {0: 2, 1: 2}}, {0: 1, 1: 2})
