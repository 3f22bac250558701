"""Level rates and closed-form mean first passage time bounds.

Given a level structure ``L_lo .. L_hi``, the up-rate of a state is the total
rate of its transitions that raise ``L`` and the down-rate the total of those
that lower it. Per-level minima and maxima of these rates define two
birth-death chains whose passage times bracket the true one between the
extreme levels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ModelError


@dataclass(frozen=True)
class Finite:
    value: Fraction

    finite = True

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class Undefined:
    reason: str
    level: int | None = None

    finite = False


@dataclass
class LevelRates:
    lo: int
    hi: int
    lam_min: list
    lam_max: list
    gam_min: list
    gam_max: list
    G_plus: tuple
    G_minus: tuple
    state_lambda: list = field(repr=False)
    state_gamma: list = field(repr=False)
    violations: list = field(default_factory=list)

    def at(self, z):
        i = z - self.lo
        return self.lam_min[i], self.lam_max[i], self.gam_min[i], self.gam_max[i]


def column_signs(chain, fn):
    """Value of ``L`` on every projected column; each must be +1 or -1."""
    signs = []
    for k, col in enumerate(chain.matrix.columns):
        val = fn(chain.projection.reduced_column(col))
        if val not in (1, -1):
            raise ModelError(f"not a coclique level function: L(v{k + 1}) = {val}")
        signs.append(val)
    return signs


def _directions(chain, i, signs):
    """Columns leading from state ``i`` to another state, split by sign of ``L``."""
    x = chain.full_state(i)
    up, down = [], []
    for k, col in enumerate(chain.matrix.columns):
        if all(a + b >= 0 for a, b in zip(x, col)):
            (up if signs[k] > 0 else down).append(k)
    return up, down


def level_rates(chain, structure, strict=False):
    """Per-level extrema of the up-rate ``lambda`` and down-rate ``gamma``.

    A state off the top level with no available up-column while up-columns
    exist at all (and symmetrically for down) is recorded in ``violations``;
    with ``strict`` it raises instead.
    """
    signs = column_signs(chain, structure.function)
    G_plus = tuple(k for k, s in enumerate(signs) if s > 0)
    G_minus = tuple(k for k, s in enumerate(signs) if s < 0)
    lo, hi = structure.lo, structure.hi
    size = hi - lo + 1
    lam = [Fraction(0)] * len(chain.states)
    gam = [Fraction(0)] * len(chain.states)
    for i, row in enumerate(chain.transitions):
        for _, k, r in row:
            if signs[k] > 0:
                lam[i] += r
            else:
                gam[i] += r
    lam_min, lam_max = [None] * size, [None] * size
    gam_min, gam_max = [None] * size, [None] * size
    violations = []
    for z, members in structure.levels.items():
        t = z - lo
        ls = [lam[i] for i in members]
        gs = [gam[i] for i in members]
        lam_min[t], lam_max[t] = min(ls), max(ls)
        gam_min[t], gam_max[t] = min(gs), max(gs)
        for i in members:
            up, down = _directions(chain, i, signs)
            if z < hi and G_plus and not up:
                violations.append((chain.states[i], "up"))
            if z > lo and G_minus and not down:
                violations.append((chain.states[i], "down"))
    if strict and violations:
        state, way = violations[0]
        raise ModelError(f"state {state} has no {way} transition available")
    return LevelRates(lo, hi, lam_min, lam_max, gam_min, gam_max, G_plus, G_minus,
                      lam, gam, violations)


def birth_death_mfpt(lambdas, gammas, start, end):
    """Mean passage time of a birth-death chain on levels ``0..len-1``.

    ``lambdas[i]`` is the rate ``i -> i+1`` and ``gammas[i]`` the rate
    ``i -> i-1``. Built from the mean one-step passage times
    ``t_i = 1/lambda_i + (gamma_i/lambda_i) t_{i-1}`` (upwards) and the
    mirror recursion downwards.
    """
    top = len(lambdas) - 1
    if len(gammas) != top + 1:
        raise ValueError("lambdas and gammas must have the same length")
    if not (0 <= start <= top and 0 <= end <= top):
        raise ValueError("levels out of range")
    if start == end:
        return Finite(Fraction(0))
    if start < end:
        total = Fraction(0)
        prev = Fraction(0)
        for i in range(end):
            lam, gam = Fraction(lambdas[i]), Fraction(gammas[i])
            if lam == 0:
                return Undefined(f"up-rate is zero at level {i}", i)
            prev = (1 + (gam * prev if i > 0 else 0)) / lam
            if i >= start:
                total += prev
        return Finite(total)
    total = Fraction(0)
    prev = Fraction(0)
    for i in range(top, end, -1):
        lam, gam = Fraction(lambdas[i]), Fraction(gammas[i])
        if gam == 0:
            return Undefined(f"down-rate is zero at level {i}", i)
        prev = (1 + (lam * prev if i < top else 0)) / gam
        if i <= start:
            total += prev
    return Finite(total)


def _relabel(result, lo, name):
    if isinstance(result, Undefined):
        z = result.level + lo
        return Undefined(f"{name} is zero at level {z}", z)
    return result


def bound_up(rates):
    """(lower, upper) bounds on the mean passage time from ``L_lo`` to ``L_hi``."""
    top = rates.hi - rates.lo
    if top < 1:
        raise ModelError("need at least two levels")
    lower = birth_death_mfpt(rates.lam_max, rates.gam_min, 0, top)
    upper = birth_death_mfpt(rates.lam_min, rates.gam_max, 0, top)
    return _relabel(lower, rates.lo, "lambda_max"), _relabel(upper, rates.lo, "lambda_min")


def bound_down(rates):
    """(lower, upper) bounds on the mean passage time from ``L_hi`` to ``L_lo``."""
    top = rates.hi - rates.lo
    if top < 1:
        raise ModelError("need at least two levels")
    lower = birth_death_mfpt(rates.lam_min, rates.gam_max, top, 0)
    upper = birth_death_mfpt(rates.lam_max, rates.gam_min, top, 0)
    return _relabel(lower, rates.lo, "gamma_max"), _relabel(upper, rates.lo, "gamma_min")


@dataclass
class ComparisonGenerators:
    """Rows ``[(target, rate), ...]`` of the fast-up and slow-up chains."""

    fast_up: list
    slow_up: list


def comparison_generators(chain, structure, rates):
    """Chains whose level process is the birth-death chain of the bounds.

    Each state at level ``z`` spreads the level extremum uniformly over its
    available up-columns (and likewise down): the fast-up chain uses
    ``(lambda_max, gamma_min)``, the slow-up chain ``(lambda_min, gamma_max)``.
    """
    signs = column_signs(chain, structure.function)
    reduced = [chain.projection.reduced_column(c) for c in chain.matrix.columns]
    fast, slow = [], []
    for i, s in enumerate(chain.states):
        z = structure.level_of[i]
        lmin, lmax, gmin, gmax = rates.at(z)
        up, down = _directions(chain, i, signs)
        if (lmax > 0 and not up) or (gmax > 0 and not down):
            raise ModelError(f"state {s} has no available transition in a direction "
                             "where its level has a positive rate")
        rows = []
        for up_rate, down_rate in ((lmax, gmin), (lmin, gmax)):
            row = {}
            for cols, rate in ((up, up_rate), (down, down_rate)):
                if rate == 0:
                    continue
                share = rate / len(cols)
                for k in cols:
                    target = chain.index[tuple(a + b for a, b in zip(s, reduced[k]))]
                    row[target] = row.get(target, 0) + share
            rows.append(sorted(row.items()))
        fast.append(rows[0])
        slow.append(rows[1])
    return ComparisonGenerators(fast, slow)
