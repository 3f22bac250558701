"""Exact rate expressions.

Rate laws are small arithmetic expressions over species counts and named
parameters. Supported syntax: numeric literals (integers, decimals, ``p/q``),
names, ``+ - * /``, unary minus, parentheses and the falling factorial
``ff(expr, k)`` with a non-negative integer literal ``k``. Divisors may not
reference species, which keeps every rate law a polynomial in the counts.

Expressions are parsed with :mod:`ast`, reduced to a tiny tuple tree, and
constant-folded. Evaluation is exact (:class:`fractions.Fraction`).
"""
from __future__ import annotations

import ast
from fractions import Fraction

from .errors import DSLParseError, ModelError

_BINOPS = {ast.Add: "add", ast.Sub: "sub", ast.Mult: "mul", ast.Div: "div"}
_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/"}
_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2}


def falling_factorial(m, k):
    out = Fraction(1)
    for i in range(k):
        out *= m - i
    return out


def parse_expr(text, line=None, column=0):
    """Parse ``text`` into a folded expression tree.

    ``line``/``column`` locate ``text`` inside a larger source for error
    messages.
    """
    src = text.strip()
    column += len(text) - len(text.lstrip())
    if not src:
        raise DSLParseError("empty expression", line, column + 1)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        col = column + (exc.offset or 1)
        raise DSLParseError(f"invalid expression {src!r}", line, col) from None
    return _fold(_convert(tree.body, src, line, column))


def _convert(node, src, line, column):
    def fail(msg, at=node):
        raise DSLParseError(msg, line, column + getattr(at, "col_offset", 0) + 1)

    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return (_BINOPS[type(node.op)],
                _convert(node.left, src, line, column),
                _convert(node.right, src, line, column))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _convert(node.operand, src, line, column)
        return ("neg", inner) if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            fail(f"unsupported literal {node.value!r}")
        segment = ast.get_source_segment(src, node)
        try:
            value = Fraction(segment.replace("_", ""))
        except (ValueError, AttributeError):
            value = Fraction(node.value)
        return ("num", value)
    if isinstance(node, ast.Name):
        return ("var", node.id)
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id != "ff":
            fail("only the falling factorial ff(x, k) may be called")
        if node.keywords or len(node.args) != 2:
            fail("ff takes exactly two positional arguments")
        order = node.args[1]
        if not (isinstance(order, ast.Constant) and type(order.value) is int
                and order.value >= 0):
            fail("ff order must be a non-negative integer literal", order)
        return ("ff", _convert(node.args[0], src, line, column), order.value)
    fail(f"unsupported syntax {type(node).__name__}")


def _fold(t):
    kind = t[0]
    if kind in ("num", "var"):
        return t
    if kind == "neg":
        a = _fold(t[1])
        return ("num", -a[1]) if a[0] == "num" else ("neg", a)
    if kind == "ff":
        a = _fold(t[1])
        if a[0] == "num":
            return ("num", falling_factorial(a[1], t[2]))
        return ("ff", a, t[2])
    a, b = _fold(t[1]), _fold(t[2])
    if a[0] == "num" and b[0] == "num":
        if kind == "div" and b[1] == 0:
            raise DSLParseError("division by zero in constant expression")
        return ("num", _apply(kind, a[1], b[1]))
    return (kind, a, b)


def _apply(kind, x, y):
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    return Fraction(x) / y


def names(t):
    """Set of identifiers referenced by a tree."""
    kind = t[0]
    if kind == "var":
        return {t[1]}
    if kind == "num":
        return set()
    if kind in ("neg", "ff"):
        return names(t[1])
    return names(t[1]) | names(t[2])


def divisor_names(t):
    """Identifiers appearing anywhere inside a divisor."""
    kind = t[0]
    if kind in ("num", "var"):
        return set()
    if kind in ("neg", "ff"):
        return divisor_names(t[1])
    out = divisor_names(t[1]) | divisor_names(t[2])
    if kind == "div":
        out |= names(t[2])
    return out


def evaluate(t, env):
    kind = t[0]
    if kind == "num":
        return t[1]
    if kind == "var":
        return env[t[1]]
    if kind == "neg":
        return -evaluate(t[1], env)
    if kind == "ff":
        return falling_factorial(evaluate(t[1], env), t[2])
    x = evaluate(t[1], env)
    y = evaluate(t[2], env)
    if kind == "div" and y == 0:
        raise ModelError(f"division by zero evaluating {to_text(t)}")
    return _apply(kind, x, y)


def _prec(t):
    kind = t[0]
    if kind == "num":
        v = t[1]
        if v.denominator != 1:
            return 2
        return 3 if v < 0 else 4
    if kind in ("var", "ff"):
        return 4
    if kind == "neg":
        return 3
    return _PREC[kind]


def to_text(t):
    """Render a tree; ``parse_expr(to_text(t)) == t`` for folded trees."""
    kind = t[0]
    if kind == "num":
        v = t[1]
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if kind == "var":
        return t[1]
    if kind == "ff":
        return f"ff({to_text(t[1])}, {t[2]})"
    if kind == "neg":
        inner = to_text(t[1])
        return f"-{inner}" if _prec(t[1]) > 3 else f"-({inner})"
    p = _PREC[kind]
    left, right = to_text(t[1]), to_text(t[2])
    if _prec(t[1]) < p:
        left = f"({left})"
    if _prec(t[2]) <= p:
        right = f"({right})"
    return f"{left} {_SYMBOL[kind]} {right}"
