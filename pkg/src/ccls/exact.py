"""Exact mean first passage times by first-step analysis."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import ModelError
from .linalg import sparse_solve


@dataclass(frozen=True)
class HittingProblem:
    chain: object
    target: frozenset
    sources: tuple

    @classmethod
    def between_levels(cls, chain, structure, direction="up"):
        """Passage from the bottom level set to the top one (or the reverse)."""
        lo = structure.levels[structure.lo]
        hi = structure.levels[structure.hi]
        if direction == "up":
            return cls(chain, frozenset(hi), tuple(lo))
        if direction == "down":
            return cls(chain, frozenset(lo), tuple(hi))
        raise ValueError(f"direction must be 'up' or 'down', not {direction!r}")


def _rows(chain):
    """Outgoing rates merged by target: state -> {target: rate}."""
    out = []
    for row in chain.transitions:
        merged = {}
        for j, _, r in row:
            merged[j] = merged.get(j, 0) + r
        out.append(merged)
    return out


def almost_sure_states(rows, target):
    """States from which ``target`` is hit with probability one.

    A state qualifies when it can reach the target and no path avoiding the
    target leads to a state that cannot.
    """
    n = len(rows)
    back = [[] for _ in range(n)]
    for i, row in enumerate(rows):
        for j in row:
            back[j].append(i)
    can_reach = set(target)
    queue = deque(target)
    while queue:
        j = queue.popleft()
        for i in back[j]:
            if i not in can_reach:
                can_reach.add(i)
                queue.append(i)
    doomed = {i for i in range(n) if i not in can_reach}
    queue = deque(doomed)
    while queue:
        j = queue.popleft()
        for i in back[j]:
            if i not in doomed and i not in target:
                doomed.add(i)
                queue.append(i)
    return {i for i in range(n) if i not in doomed}


def exact_mfpt(problem):
    """Map each source (and every state it can visit) to its exact MFPT."""
    chain = problem.chain
    target = set(problem.target)
    if not target:
        raise ModelError("empty target set")
    if len(target) == len(chain.states):
        raise ModelError("target set is the whole state space")
    rows = _rows(chain)
    for s in problem.sources:
        if s not in target and not rows[s]:
            raise ModelError(f"source state {chain.states[s]} is absorbing")
    good = almost_sure_states(rows, target)
    bad = [s for s in problem.sources if s not in good]
    if bad:
        raise ModelError(f"target not reached almost surely from state {chain.states[bad[0]]}")
    # restrict to states visited before hitting the target
    seen = {s for s in problem.sources if s not in target}
    queue = deque(seen)
    while queue:
        i = queue.popleft()
        for j in rows[i]:
            if j not in target and j not in seen:
                seen.add(j)
                queue.append(j)
    system = {}
    rhs = {}
    for i in seen:
        eq = {i: sum(rows[i].values(), Fraction(0))}
        for j, r in rows[i].items():
            if j not in target:
                eq[j] = eq.get(j, 0) - r
        system[i] = eq
        rhs[i] = Fraction(1)
    try:
        sol = sparse_solve(system, rhs) if system else {}
    except ValueError:
        raise ModelError("singular first-step system") from None
    for i in target:
        sol[i] = Fraction(0)
    return sol


def residuals(chain, target, sol):
    """First-step residuals ``q_x h_x - sum_y r_xy h_y - 1`` over solved states."""
    rows = _rows(chain)
    out = {}
    for i, h in sol.items():
        if i in target:
            continue
        q = sum(rows[i].values(), Fraction(0))
        out[i] = q * h - sum((r * sol[j] for j, r in rows[i].items()), Fraction(0)) - 1
    return out
