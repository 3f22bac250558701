"""Stochastic simulation of hitting times on an enumerated chain.

Trajectories run in lock-step on numpy arrays. Event ``e`` of a trajectory
consumes draws ``2e`` (holding time, by inverse CDF) and ``2e + 1`` (jump,
chosen with probability proportional to its rate) from the trajectory's own
stream, so results do not depend on batch size or on which other
trajectories are simulated alongside.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ModelError, ResourceCapError
from .rng import stream_keys, uniform

DEFAULT_MAX_EVENTS = 10 ** 9


@dataclass(frozen=True)
class SimEstimate:
    mean: float
    half_width_95: float
    trajectories: int
    seed: int

    @property
    def std_error(self):
        return self.half_width_95 / 1.96

    def contains(self, value):
        return abs(self.mean - float(value)) <= self.half_width_95


@dataclass
class TransitionTable:
    targets: np.ndarray
    cumulative: np.ndarray
    total: np.ndarray
    width: np.ndarray


def chain_rows(chain):
    """Generator rows ``[(target, rate), ...]`` of a projected chain, merged by target."""
    rows = []
    for row in chain.transitions:
        merged = {}
        for j, _, r in row:
            merged[j] = merged.get(j, 0) + r
        rows.append(sorted(merged.items()))
    return rows


def transition_table(rows):
    n = len(rows)
    width = max((len(r) for r in rows), default=0) or 1
    targets = np.zeros((n, width), dtype=np.int64)
    cumulative = np.full((n, width), np.inf)
    total = np.zeros(n)
    counts = np.zeros(n, dtype=np.int64)
    for i, row in enumerate(rows):
        acc = 0.0
        for c, (j, r) in enumerate(row):
            acc += float(r)
            targets[i, c] = j
            cumulative[i, c] = acc
        total[i] = acc
        counts[i] = len(row)
    return TransitionTable(targets, cumulative, total, counts)


def simulate(table, source, target, n, seed, offset=0, max_events=DEFAULT_MAX_EVENTS):
    """Hitting times of ``target`` (a set of state indices) for ``n`` trajectories.

    Trajectory ``i`` uses stream ``offset + i`` of ``seed``.
    """
    is_target = np.zeros(len(table.total), dtype=bool)
    is_target[list(target)] = True
    times = np.zeros(n)
    if is_target[source]:
        return times
    keys = stream_keys(seed, n, offset)
    live = np.arange(n)
    state = np.full(n, source, dtype=np.int64)
    clock = np.zeros(n)
    events = 0
    while live.size:
        if events >= max_events:
            raise ResourceCapError(f"simulation exceeded {max_events} events")
        st = state
        rate = table.total[st]
        if np.any(rate <= 0):
            bad = int(st[np.argmax(rate <= 0)])
            raise ModelError(f"trajectory reached absorbing non-target state {bad}")
        ctr = np.full(live.size, 2 * events, dtype=np.uint64)
        k = keys[live]
        u_hold = uniform(k, ctr)
        u_jump = uniform(k, ctr + np.uint64(1))
        clock = clock - np.log(u_hold) / rate
        threshold = u_jump * rate
        pick = (table.cumulative[st] <= threshold[:, None]).sum(axis=1)
        pick = np.minimum(pick, table.width[st] - 1)
        state = table.targets[st, pick]
        events += 1
        done = is_target[state]
        if done.any():
            times[live[done]] = clock[done]
            keep = ~done
            live, state, clock = live[keep], state[keep], clock[keep]
    return times


def trajectory(rows, source, target, seed, index=0, max_events=DEFAULT_MAX_EVENTS):
    """One recorded path ``[(time, state), ...]`` using the same draws as :func:`simulate`."""
    table = transition_table(rows)
    key = stream_keys(seed, 1, index)
    path = [(0.0, source)]
    s = source
    t = 0.0
    e = 0
    while s not in target:
        if e >= max_events:
            raise ResourceCapError(f"simulation exceeded {max_events} events")
        rate = table.total[s]
        if rate <= 0:
            raise ModelError(f"trajectory reached absorbing non-target state {s}")
        ctr = np.array([2 * e, 2 * e + 1], dtype=np.uint64)
        u_hold, u_jump = uniform(np.repeat(key, 2), ctr)
        t = t - np.log(u_hold) / rate
        pick = int((table.cumulative[s] <= u_jump * rate).sum())
        pick = min(pick, int(table.width[s]) - 1)
        s = int(table.targets[s, pick])
        e += 1
        path.append((float(t), s))
    return path


def ssa_hitting_time(chain, source, target, seed, index=0, max_events=DEFAULT_MAX_EVENTS):
    """Hitting time of one trajectory (stream ``index`` of ``seed``)."""
    table = transition_table(chain_rows(chain))
    return float(simulate(table, source, target, 1, seed, index, max_events)[0])


def summarize(times, seed):
    n = len(times)
    if n < 2:
        raise ModelError("need at least two trajectories")
    mean = float(np.sum(times)) / n
    var = float(np.sum((times - mean) ** 2)) / (n - 1)
    return SimEstimate(mean, 1.96 * math.sqrt(var / n), n, int(seed))


def estimate_rows(rows, source, target, n, seed, max_events=DEFAULT_MAX_EVENTS):
    if n < 2:
        raise ModelError("need at least two trajectories")
    times = simulate(transition_table(rows), source, target, n, seed, 0, max_events)
    return summarize(times, seed)


def estimate_mfpt(problem, n, seed, source=None, max_events=DEFAULT_MAX_EVENTS):
    """Monte Carlo MFPT from ``source`` (default: the problem's first source)."""
    source = problem.sources[0] if source is None else source
    return estimate_rows(chain_rows(problem.chain), source, problem.target, n, seed, max_events)


@dataclass
class SandwichReport:
    direction: str
    fast: SimEstimate
    original: SimEstimate
    slow: SimEstimate
    ordered: bool


def _not_above(a, b, k=3.0):
    return a.mean - b.mean <= k * math.hypot(a.std_error, b.std_error)


def simulate_comparison_sandwich(chain, structure, generators, n, seed, direction="up"):
    """Simulate the original chain and both comparison chains from the same source.

    Going up, the fast-up chain should be quickest and the slow-up chain
    slowest; going down the roles swap. ``ordered`` checks this within three
    combined standard errors.
    """
    lo = structure.levels[structure.lo]
    hi = structure.levels[structure.hi]
    source, target = (lo[0], set(hi)) if direction == "up" else (hi[0], set(lo))
    original = estimate_rows(chain_rows(chain), source, target, n, seed)
    fast = estimate_rows(generators.fast_up, source, target, n, seed)
    slow = estimate_rows(generators.slow_up, source, target, n, seed)
    if direction == "up":
        ordered = _not_above(fast, original) and _not_above(original, slow)
    else:
        ordered = _not_above(slow, original) and _not_above(original, fast)
    return SandwichReport(direction, fast, original, slow, ordered)
