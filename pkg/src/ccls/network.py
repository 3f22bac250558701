"""Reaction networks: data model, text format, stoichiometry and rates.

Network source format (one statement per line, ``#`` starts a comment)::

    species Z W Y
    param alpha = 1
    param beta = 3/2
    reaction r1: Z -> W @ mass_action(alpha)
    reaction r2: W + 2 Z -> Y + 2 Z @ rate(beta * W * ff(Z, 2) / 2)
    init Z = 2, W = 0, Y = 0

``mass_action(k)`` gives ``k * prod_i ff(x_i, reactant_i)``; ``rate(expr)``
is an arbitrary expression in the restricted language of :mod:`ccls.expr`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import expr as ex
from .errors import DSLParseError, ModelError
from .linalg import nullspace, primitive

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_IDENT_RE = re.compile(rf"^{_IDENT}$")
_TERM_RE = re.compile(rf"^\s*(?:(\d+)\s*\*?\s*)?({_IDENT})\s*$")
_REACTION_RE = re.compile(
    rf"^reaction\s+({_IDENT})\s*:(.*?)->(.*?)@\s*(mass_action|rate)\s*\((.*)\)\s*$")
_PARAM_RE = re.compile(rf"^param\s+({_IDENT})\s*=(.*)$")
_RESERVED = {"ff"}


@dataclass(frozen=True)
class Propensity:
    """Rate law of one reaction: ``kind`` is ``"mass_action"`` or ``"rate"``."""

    kind: str
    tree: tuple

    @property
    def text(self):
        return ex.to_text(self.tree)

    def __str__(self):
        return f"{self.kind}({self.text})"


@dataclass(frozen=True)
class Reaction:
    label: str
    reactants: tuple
    products: tuple
    propensity: Propensity

    @property
    def vector(self):
        return tuple(p - r for r, p in zip(self.reactants, self.products))


@dataclass(frozen=True, eq=True)
class ReactionNetwork:
    species: tuple
    reactions: tuple
    parameters: dict = field(default_factory=dict)
    initial_counts: dict | None = None

    __hash__ = None

    def __post_init__(self):
        validate(self)

    @property
    def d(self):
        return len(self.species)

    def index(self, name):
        try:
            return self.species.index(name)
        except ValueError:
            raise KeyError(f"unknown species {name!r}") from None

    def with_parameters(self, **overrides):
        """Copy with some parameter values replaced (values coerced exactly)."""
        unknown = set(overrides) - set(self.parameters)
        if unknown:
            raise ModelError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        params = dict(self.parameters)
        params.update({k: _exact(v) for k, v in overrides.items()})
        return ReactionNetwork(self.species, self.reactions, params, self.initial_counts)

    def propensity(self, j, state, params=None):
        """Exact propensity of reaction ``j`` at full state ``state``."""
        rxn = self.reactions[j]
        params = self.parameters if params is None else params
        if rxn.propensity.kind == "mass_action":
            value = ex.evaluate(rxn.propensity.tree, params)
            for x, r in zip(state, rxn.reactants):
                if r:
                    value *= ex.falling_factorial(x, r)
        else:
            env = dict(params)
            env.update(zip(self.species, state))
            value = ex.evaluate(rxn.propensity.tree, env)
        value = Fraction(value)
        if value < 0:
            raise ModelError(
                f"negative propensity {value} for reaction {rxn.label} at state {tuple(state)}")
        return value

    def __str__(self):
        return to_dsl(self)


def _exact(v):
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


def validate(net):
    """Check the structural invariants; raises :class:`ModelError`."""
    if not net.species:
        raise ModelError("no species declared")
    if len(set(net.species)) != len(net.species):
        raise ModelError("duplicate species name")
    used = [False] * len(net.species)
    known = set(net.species) | set(net.parameters)
    for rxn in net.reactions:
        if len(rxn.reactants) != net.d or len(rxn.products) != net.d:
            raise ModelError(f"reaction {rxn.label}: vector length differs from species count")
        if any(c < 0 for c in rxn.reactants + rxn.products):
            raise ModelError(f"reaction {rxn.label}: negative stoichiometric coefficient")
        if rxn.reactants == rxn.products:
            raise ModelError(f"reaction {rxn.label}: reactant equals product")
        for i, (r, p) in enumerate(zip(rxn.reactants, rxn.products)):
            used[i] = used[i] or r > 0 or p > 0
        refs = ex.names(rxn.propensity.tree)
        missing = refs - known
        if missing:
            raise ModelError(f"reaction {rxn.label}: undeclared name(s) {', '.join(sorted(missing))}")
        if rxn.propensity.kind == "mass_action" and refs & set(net.species):
            raise ModelError(f"reaction {rxn.label}: mass_action constant may not reference species")
        if ex.divisor_names(rxn.propensity.tree) & set(net.species):
            raise ModelError(f"reaction {rxn.label}: divisor may not reference species")
    unused = [s for s, u in zip(net.species, used) if not u]
    if unused:
        raise ModelError(f"species never used: {', '.join(unused)}")
    if net.initial_counts is not None:
        for s, v in net.initial_counts.items():
            if s not in net.species:
                raise ModelError(f"init of undeclared species {s}")
            if v < 0:
                raise ModelError(f"negative initial count for {s}")


# ---------------------------------------------------------------- parsing

def parse_network(text):
    """Parse network source text into a validated :class:`ReactionNetwork`."""
    species = []
    species_line = {}
    params = {}
    pending = []
    init = None
    labels = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        keyword = stripped.split(None, 1)[0].split(":", 1)[0]
        if keyword == "species":
            for m in re.finditer(r"\S+", stripped[len("species"):]):
                name = m.group()
                col = indent + len("species") + m.start() + 1
                if not _IDENT_RE.match(name) or name in _RESERVED:
                    raise DSLParseError(f"invalid species name {name!r}", lineno, col)
                if name in species_line:
                    raise DSLParseError(f"duplicate species {name}", lineno, col)
                species.append(name)
                species_line[name] = (lineno, col)
        elif keyword == "param":
            m = _PARAM_RE.match(stripped)
            if not m:
                raise DSLParseError("expected 'param <name> = <value>'", lineno, indent + 1)
            name = m.group(1)
            if name in params or name in _RESERVED:
                raise DSLParseError(f"duplicate or reserved parameter {name}", lineno, indent + 1)
            tree = ex.parse_expr(m.group(2), lineno, indent + m.start(2))
            if tree[0] != "num":
                raise DSLParseError(f"parameter {name} must be a numeric literal", lineno,
                                    indent + m.start(2) + 1)
            params[name] = tree[1]
        elif keyword == "reaction":
            m = _REACTION_RE.match(stripped)
            if not m:
                raise DSLParseError(
                    "expected 'reaction <label>: <lhs> -> <rhs> @ mass_action(...)|rate(...)'",
                    lineno, indent + 1)
            label = m.group(1)
            if label in labels:
                raise DSLParseError(f"duplicate reaction label {label}", lineno, indent + m.start(1) + 1)
            labels.add(label)
            lhs = _parse_side(m.group(2), lineno, indent + m.start(2))
            rhs = _parse_side(m.group(3), lineno, indent + m.start(3))
            tree = ex.parse_expr(m.group(5), lineno, indent + m.start(5))
            pending.append((lineno, indent, m, label, lhs, rhs, Propensity(m.group(4), tree)))
        elif keyword == "init":
            init = {} if init is None else init
            body = stripped[len("init"):]
            offset = indent + len("init")
            pos = 0
            for part in body.split(","):
                col = offset + pos + 1
                pos += len(part) + 1
                mm = re.match(rf"^\s*({_IDENT})\s*=\s*(\d+)\s*$", part)
                if not mm:
                    raise DSLParseError("expected '<species> = <non-negative integer>'", lineno, col)
                init[mm.group(1)] = int(mm.group(2))
        else:
            raise DSLParseError(f"unknown statement {keyword!r}", lineno, indent + 1)

    if not species:
        raise DSLParseError("no species declared", 1, 1)
    index = {s: i for i, s in enumerate(species)}
    reactions = []
    for lineno, indent, m, label, lhs, rhs, prop in pending:
        vecs = []
        for side, group in ((lhs, 2), (rhs, 3)):
            vec = [0] * len(species)
            for coef, name, col in side:
                if name not in index:
                    raise DSLParseError(f"undeclared species {name}", lineno, col)
                vec[index[name]] += coef
            vecs.append(tuple(vec))
        if vecs[0] == vecs[1]:
            raise DSLParseError(f"reaction {label}: reactant equals product", lineno, indent + 1)
        refs = ex.names(prop.tree)
        col5 = indent + m.start(5) + 1
        for name in sorted(refs):
            if name not in index and name not in params:
                raise DSLParseError(f"undeclared name {name}", lineno, col5)
        if prop.kind == "mass_action" and refs & set(species):
            raise DSLParseError("mass_action constant may not reference species", lineno, col5)
        if ex.divisor_names(prop.tree) & set(species):
            raise DSLParseError("divisor may not reference species", lineno, col5)
        reactions.append(Reaction(label, vecs[0], vecs[1], prop))

    used = set()
    for rxn in reactions:
        used.update(i for i in range(len(species)) if rxn.reactants[i] or rxn.products[i])
    for i, s in enumerate(species):
        if i not in used:
            raise DSLParseError(f"species never used: {s}", *species_line[s])
    if init is not None:
        for s in init:
            if s not in index:
                raise DSLParseError(f"init of undeclared species {s}")
    return ReactionNetwork(tuple(species), tuple(reactions), params, init)


def _parse_side(text, lineno, offset):
    if text.strip() == "0":
        raise DSLParseError("empty reaction side '0' is not allowed", lineno, offset + 1)
    terms = []
    pos = 0
    for part in text.split("+"):
        col = offset + pos + len(part) - len(part.lstrip()) + 1
        pos += len(part) + 1
        m = _TERM_RE.match(part)
        if not m:
            raise DSLParseError(f"invalid reaction term {part.strip()!r}", lineno, col)
        coef = int(m.group(1)) if m.group(1) else 1
        if coef == 0:
            raise DSLParseError("zero stoichiometric coefficient", lineno, col)
        terms.append((coef, m.group(2), col))
    return terms


def _side_text(vec, species):
    parts = []
    for c, s in zip(vec, species):
        if c == 1:
            parts.append(s)
        elif c > 1:
            parts.append(f"{c} {s}")
    return " + ".join(parts)


def _number_text(v):
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def to_dsl(net):
    """Render a network in the source format; ``parse_network`` inverts it."""
    lines = ["species " + " ".join(net.species)]
    for name, value in net.parameters.items():
        lines.append(f"param {name} = {_number_text(value)}")
    for rxn in net.reactions:
        lines.append(f"reaction {rxn.label}: {_side_text(rxn.reactants, net.species)} -> "
                     f"{_side_text(rxn.products, net.species)} @ {rxn.propensity}")
    if net.initial_counts:
        lines.append("init " + ", ".join(f"{s} = {v}" for s, v in net.initial_counts.items()))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------- stoichiometry

@dataclass(frozen=True)
class StoichiometricMatrix:
    """Distinct reaction vectors (columns) with the reactions behind each."""

    network: ReactionNetwork
    columns: tuple
    column_sources: tuple

    @property
    def n(self):
        return len(self.columns)

    @property
    def d(self):
        return self.network.d

    def rows(self):
        """Dense ``d x n`` integer matrix as a list of rows."""
        return [[col[i] for col in self.columns] for i in range(self.d)]


def stoichiometric_matrix(net):
    """Merge reactions with equal net change, ordered by first appearance."""
    columns = []
    sources = []
    where = {}
    for j, rxn in enumerate(net.reactions):
        v = rxn.vector
        if v not in where:
            where[v] = len(columns)
            columns.append(v)
            sources.append([])
        sources[where[v]].append(j)
    return StoichiometricMatrix(net, tuple(columns), tuple(tuple(s) for s in sources))


def combined_rate(matrix, k, state, params=None):
    """Sum of propensities of all reactions sharing column ``k``.

    Zero whenever the jump would leave the non-negative orthant.
    """
    v = matrix.columns[k]
    if any(x + dv < 0 for x, dv in zip(state, v)):
        return Fraction(0)
    net = matrix.network
    return sum((net.propensity(j, state, params) for j in matrix.column_sources[k]),
               Fraction(0))


def conservation_basis(matrix):
    """Integer basis of ``{m : m^T S = 0}``, each vector primitive."""
    st = [list(col) for col in matrix.columns]
    if not st:
        return [primitive([1 if i == j else 0 for i in range(matrix.d)]) for j in range(matrix.d)]
    return nullspace(st, matrix.d)


def check_unit_interchange(matrix):
    """First column that is not one ``+1``, one ``-1`` and zeros; ``None`` if all are."""
    for col in matrix.columns:
        nonzero = sorted(x for x in col if x != 0)
        if nonzero != [-1, 1]:
            return col
    return None
