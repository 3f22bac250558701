"""Analysis pipeline and report rendering.

Reports are plain JSON-compatible dicts (schema version 1). Exact rationals
appear as ``{"exact": "p/q", "decimal": <float>}``.
"""
from __future__ import annotations

from fractions import Fraction

from .bounds import Finite, bound_down, bound_up, level_rates
from .chain import build_projected_chain, level_structure, verify_coclique
from .errors import ModelError
from .exact import HittingProblem, exact_mfpt
from .graph import bipartition, build_graph, make_projection
from .levels import enumerate_level_functions
from .network import conservation_basis, stoichiometric_matrix
from .ssa import estimate_mfpt

SCHEMA = 1


def rational(x):
    x = Fraction(x)
    return {"exact": str(x), "decimal": float(x)}


def bound_json(b):
    if isinstance(b, Finite):
        return {"finite": True, **rational(b.value)}
    return {"finite": False, "reason": b.reason, "level": b.level}


def function_json(fn, labels):
    return {"coefficients": list(fn.b), "coordinates": list(labels), "text": fn.format(labels)}


class Analysis:
    """Parsed network plus its graph, projection and level functions."""

    def __init__(self, net, drop=None, prefilter=True):
        self.net = net
        self.matrix = stoichiometric_matrix(net)
        self.graph = build_graph(self.matrix)
        self.projection = make_projection(self.graph, drop)
        self.enumeration = enumerate_level_functions(self.matrix, self.projection, prefilter,
                                                     fallback=True)

    @property
    def functions(self):
        return self.enumeration.functions

    def summary(self):
        g = self.graph
        labels = self.projection.labels
        comps = []
        for q, members in enumerate(g.components):
            part = bipartition(g, q)
            entry = {"species": [g.species[v] for v in members],
                     "dropped": g.species[self.projection.dropped[q]],
                     "bipartite": part.bipartite}
            if part.bipartite:
                entry["B"] = [g.species[v] for v in part.B]
                entry["C"] = [g.species[v] for v in part.C]
                entry["degenerate"] = part.degenerate
            else:
                entry["odd_cycle"] = [g.species[v] for v in part.cycle]
            comps.append(entry)
        enum = self.enumeration
        return {
            "schema": SCHEMA,
            "network": {
                "species": list(self.net.species),
                "reactions": len(self.net.reactions),
                "columns": [list(c) for c in self.matrix.columns],
                "column_sources": [[self.net.reactions[j].label for j in src]
                                   for src in self.matrix.column_sources],
                "conservation": conservation_basis(self.matrix),
            },
            "components": comps,
            "projected_coordinates": list(labels),
            "level_functions": [function_json(f, labels) for f in enum.functions],
            "rejected_assignments": enum.rejected,
            "obstruction": ([g.species[v] for v in enum.obstruction]
                            if enum.obstruction is not None else None),
            "notes": list(enum.notes),
        }

    def chain(self, totals, params=None):
        return build_projected_chain(self.net, totals, params, self.projection)


def level_checks(analysis, chain):
    out = []
    for fn in analysis.functions:
        entry = {"text": fn.format(analysis.projection.labels)}
        try:
            ls = level_structure(chain, fn)
            entry.update(lo=ls.lo, hi=ls.hi,
                         level_sizes=[len(ls.levels[z]) for z in range(ls.lo, ls.hi + 1)])
        except ModelError as exc:
            entry["error"] = str(exc)
        check = verify_coclique(chain, fn)
        entry["coclique"] = check.ok
        if not check.ok:
            entry["violations"] = [[list(s), k, d] for s, k, d in check.violations[:10]]
        out.append(entry)
    return out


def bounds_section(analysis, chain, fn, directions=("up", "down"), exact=False,
                   simulate=None, seed=None):
    labels = analysis.projection.labels
    ls = level_structure(chain, fn)
    rates = level_rates(chain, ls)
    levels = []
    for z in range(ls.lo, ls.hi + 1):
        lmin, lmax, gmin, gmax = rates.at(z)
        levels.append({"z": z, "size": len(ls.levels[z]),
                       "lambda_min": rational(lmin), "lambda_max": rational(lmax),
                       "gamma_min": rational(gmin), "gamma_max": rational(gmax)})
    section = {
        "function": function_json(fn, labels),
        "totals": list(chain.totals),
        "states": len(chain),
        "lo": ls.lo,
        "hi": ls.hi,
        "bottom_level": [list(chain.states[i]) for i in ls.levels[ls.lo]],
        "top_level": [list(chain.states[i]) for i in ls.levels[ls.hi]],
        "G_plus": [k + 1 for k in rates.G_plus],
        "G_minus": [k + 1 for k in rates.G_minus],
        "levels": levels,
        "direction_violations": [[list(s), w] for s, w in rates.violations],
        "note": "state space is the full simplex per component; unreachable states are kept",
    }
    for direction in directions:
        lower, upper = bound_up(rates) if direction == "up" else bound_down(rates)
        entry = {"lower": bound_json(lower), "upper": bound_json(upper)}
        problem = HittingProblem.between_levels(chain, ls, direction)
        if exact:
            try:
                sol = exact_mfpt(problem)
                entry["exact"] = [{"source": list(chain.states[s]), **rational(sol[s])}
                                  for s in problem.sources]
            except ModelError as exc:
                entry["exact"] = {"unavailable": str(exc)}
        if simulate:
            est = estimate_mfpt(problem, simulate, seed)
            entry["simulation"] = {"source": list(chain.states[problem.sources[0]]),
                                   "mean": est.mean, "half_width_95": est.half_width_95,
                                   "trajectories": est.trajectories, "seed": est.seed}
        section[direction] = entry
    return section


def _fmt_rational(r):
    return r["exact"] if "/" not in r["exact"] else f"{r['exact']} (~{r['decimal']:.6g})"


def _fmt_bound(b):
    if b["finite"]:
        return _fmt_rational(b)
    return f"undefined ({b['reason']})"


def render_text(report):
    lines = []
    net = report.get("network")
    if net:
        lines.append(f"species: {' '.join(net['species'])}  reactions: {net['reactions']}  "
                     f"distinct reaction vectors: {len(net['columns'])}")
    for q, comp in enumerate(report.get("components", [])):
        desc = f"component {q + 1}: {{{', '.join(comp['species'])}}}"
        if comp["bipartite"]:
            if comp.get("degenerate"):
                desc += " single species"
            else:
                desc += f" bipartite B={{{', '.join(comp['B'])}}} C={{{', '.join(comp['C'])}}}"
        else:
            desc += f" not bipartite, odd cycle {' - '.join(comp['odd_cycle'])}"
        lines.append(desc)
    if "level_functions" in report:
        fns = report["level_functions"]
        lines.append(f"coclique level functions ({len(fns)}) on "
                     f"({', '.join(report['projected_coordinates'])}):")
        for i, f in enumerate(fns, 1):
            lines.append(f"  [{i}] L = {f['text']}")
        if not fns and report.get("obstruction"):
            lines.append(f"  none: odd cycle {' - '.join(report['obstruction'])}")
    for note in report.get("notes", []):
        lines.append(f"note: {note}")
    for chk in report.get("level_checks", []):
        if "error" in chk:
            lines.append(f"  L = {chk['text']}: {chk['error']}")
        else:
            lines.append(f"  L = {chk['text']}: levels {chk['lo']}..{chk['hi']}, "
                         f"coclique {'ok' if chk['coclique'] else 'VIOLATED'}")
    b = report.get("bounds")
    if b:
        lines.append(f"L = {b['function']['text']}, totals {b['totals']}, {b['states']} states, "
                     f"levels {b['lo']}..{b['hi']}")
        lines.append("  z  size  lambda_min  lambda_max  gamma_min  gamma_max")
        for lv in b["levels"]:
            lines.append(f"  {lv['z']}  {lv['size']}  {lv['lambda_min']['exact']}  "
                         f"{lv['lambda_max']['exact']}  {lv['gamma_min']['exact']}  "
                         f"{lv['gamma_max']['exact']}")
        for direction in ("up", "down"):
            if direction not in b:
                continue
            e = b[direction]
            arrow = "bottom -> top" if direction == "up" else "top -> bottom"
            lines.append(f"{direction} ({arrow}): lower {_fmt_bound(e['lower'])}, "
                         f"upper {_fmt_bound(e['upper'])}")
            ex = e.get("exact")
            if isinstance(ex, dict):
                lines.append(f"  exact: unavailable ({ex['unavailable']})")
            elif ex:
                for item in ex:
                    lines.append(f"  exact from {tuple(item['source'])}: {_fmt_rational(item)}")
            sim = e.get("simulation")
            if sim:
                lines.append(f"  simulated from {tuple(sim['source'])}: {sim['mean']:.6g} "
                             f"+/- {sim['half_width_95']:.3g} (n={sim['trajectories']}, "
                             f"seed={sim['seed']})")
        if b["direction_violations"]:
            lines.append(f"note: {len(b['direction_violations'])} state(s) lack a transition "
                         "in a direction their level needs")
    return "\n".join(lines) + "\n"
