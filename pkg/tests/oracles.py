"""Reference implementations used only by the tests.

Each oracle takes a different route from the library code it checks: dense
Gauss-Jordan instead of sparse elimination, first-step linear solves instead
of closed forms, floating least squares plus exact verification instead of
the sign-propagating enumerator.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import numpy as np


def dense_solve(a, b):
    """Gauss-Jordan over Fractions for a square non-singular system."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def first_step_mfpt(rates, target):
    """MFPT to ``target`` for every state, by dense first-step analysis.

    ``rates[i]`` maps target state -> rate. All non-target states must reach
    the target almost surely.
    """
    others = [i for i in range(len(rates)) if i not in target]
    pos = {s: c for c, s in enumerate(others)}
    a = [[Fraction(0)] * len(others) for _ in others]
    for s in others:
        row = a[pos[s]]
        row[pos[s]] = sum(rates[s].values(), Fraction(0))
        for t, r in rates[s].items():
            if t not in target:
                row[pos[t]] -= r
    sol = dense_solve(a, [1] * len(others)) if others else []
    out = {s: Fraction(0) for s in target}
    out.update({s: sol[pos[s]] for s in others})
    return out


def chain_rate_dicts(chain):
    out = []
    for row in chain.transitions:
        d = {}
        for j, _, r in row:
            d[j] = d.get(j, 0) + r
        out.append(d)
    return out


def birth_death_first_step(lambdas, gammas, start, end):
    """Passage time on levels 0..top by solving the first-step system densely."""
    top = len(lambdas) - 1
    rates = []
    for i in range(top + 1):
        d = {}
        if i < top and lambdas[i]:
            d[i + 1] = Fraction(lambdas[i])
        if i > 0 and gammas[i]:
            d[i - 1] = Fraction(gammas[i])
        rates.append(d)
    # states beyond the target cannot influence the passage time; cut them off
    if start < end:
        rates = rates[:end + 1]
        return first_step_mfpt(rates, {end})[start]
    shifted = [{t - end: r for t, r in d.items()} for d in rates[end:]]
    return first_step_mfpt(shifted, {0})[start - end]


def lstsq_level_functions(columns, coords):
    """Canonical level functions of one component by least squares.

    ``columns`` are the component's projected reaction vectors restricted to
    ``coords``. Every sign vector is tried; a float solution is rounded and
    then accepted only if it satisfies the system exactly in integers.
    """
    a = np.array([[col[c] for c in coords] for col in columns], dtype=float)
    pinv = np.linalg.pinv(a)
    found = set()
    exact = [[col[c] for c in coords] for col in columns]
    for w in product((1, -1), repeat=len(columns)):
        b = np.rint(pinv @ np.array(w, dtype=float)).astype(int).tolist()
        if all(sum(x * y for x, y in zip(row, b)) == s for row, s in zip(exact, w)):
            lead = next((x for x in b if x), 0)
            found.add(tuple(-x for x in b) if lead < 0 else tuple(b))
    return found


def random_network_source(rng: random.Random, max_species=8, max_columns=10):
    """Random unit-interchange network text (unit mass-action rates)."""
    while True:
        d = rng.randint(2, max_species)
        pairs = [(i, j) for i in range(d) for j in range(d) if i != j]
        m = rng.randint(1, min(max_columns, len(pairs)))
        edges = rng.sample(pairs, m)
        used = sorted({v for e in edges for v in e})
        if len(used) < 2:
            continue
        name = {v: f"S{c + 1}" for c, v in enumerate(used)}
        lines = ["species " + " ".join(name[v] for v in used)]
        for k, (i, j) in enumerate(edges):
            lines.append(f"reaction r{k + 1}: {name[i]} -> {name[j]} @ mass_action(1)")
        return "\n".join(lines) + "\n"


def is_bipartite_bruteforce(vertices, edges):
    """Try every two-colouring (fine for <= 8 vertices)."""
    vertices = list(vertices)
    for colours in product((0, 1), repeat=len(vertices) - 1):
        colour = dict(zip(vertices, (0,) + colours))
        if all(colour[i] != colour[j] for i, j in edges):
            return True
    return False
