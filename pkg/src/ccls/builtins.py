"""Built-in example networks as source text.

The chromatin models fold the degradation and erasure constants into the
dimensionless ``eps``, ``mu``, ``btilde`` (and ``mup``, ``beta``), so the
first-order erasure constants read ``eps * kMA * Dtot / V`` and friends.
``Dtot`` is an ordinary parameter: keep it equal to the conserved total used
when building the chain.
"""
from __future__ import annotations

from .network import parse_network

CASCADE = """\
# two irreversible conversions Z -> W -> Y
species W Y Z
param alpha = 1
param beta = 1
reaction r1: Z -> W @ mass_action(alpha)
reaction r2: W -> Y @ mass_action(beta)
"""

DISCONNECTED = """\
# two independent subsystems
species S1 S2 S3 S4
param kappa1 = 1
param kappa2 = 1
param kappa3 = 1
reaction r1: S1 -> S2 @ mass_action(kappa1)
reaction r2: S2 -> S1 @ mass_action(kappa2)
reaction r3: S3 -> S4 @ mass_action(kappa3)
"""

CROSSDEP = """\
# subsystems coupled through catalysts; S5 is never converted
species S1 S2 S3 S4 S5
param kappa1 = 1
param kappa2 = 1
param kappa3 = 1
param kappa4 = 1
reaction r1: S1 + S4 -> S2 + S4 @ mass_action(kappa1)
reaction r2: S2 + S5 -> S1 + S5 @ mass_action(kappa2)
reaction r3: S3 -> S4 @ mass_action(kappa3)
reaction r4: S4 -> S3 @ mass_action(kappa4)
"""

CHROMATIN2D = """\
# histone modification circuit: repressed DR, active DA, unmodified D
species DR DA D
param kW0A = 1
param kWA = 1
param kMA = 1
param kEA = 1
param kW0R = 1
param kWR = 1
param kMR = 1
param eps = 1
param mu = 1
param btilde = 1
param V = 1
param Dtot = 3
reaction r1: D -> DA @ mass_action(kW0A + kWA)
reaction r2: D + DA -> 2 DA @ mass_action(kMA / V)
reaction r3: DA -> D @ mass_action(eps * kMA * Dtot / V)
reaction r4: DA + DR -> D + DR @ mass_action(kEA / V)
reaction r5: D -> DR @ mass_action(kW0R + kWR)
reaction r6: D + DR -> 2 DR @ mass_action(kMR / V)
reaction r7: DR -> D @ mass_action(eps * kMA * Dtot * mu * btilde / V)
reaction r8: DR + DA -> D + DA @ mass_action(mu * kEA / V)
"""

CHROMATIN4D = """\
# histone modifications plus DNA methylation
# D1: CpG methylation only, D2: H3K9me3 only, D12: both
species D12 DA D1 D2 D
param kW0A = 1
param kWA = 1
param kMA = 1
param kEA = 1
param k1W0 = 1
param k1W = 1
param k2W0 = 1
param k2W = 1
param kM = 1
param kbarM = 1
param kpM = 1
param eps = 1
param mu = 1
param btilde = 1
param mup = 1
param beta = 1
param V = 1
param Dtot = 2
reaction r1: D -> DA @ mass_action(kW0A + kWA)
reaction r2: D + DA -> 2 DA @ mass_action(kMA / V)
reaction r3: DA -> D @ mass_action(eps * kMA * Dtot / V)
reaction r4: DA + D1 -> D + D1 @ mass_action(kEA / V)
reaction r5: DA + D12 -> D + D12 @ mass_action(2 * kEA / V)
reaction r6: DA + D2 -> D + D2 @ mass_action(kEA / V)
reaction r7: D -> D1 @ mass_action(k1W0 + k1W)
reaction r8: D -> D2 @ mass_action(k2W0 + k2W)
reaction r9: D2 -> D12 @ mass_action(k1W0)
reaction r10: D1 -> D12 @ mass_action(k2W0)
reaction r11: D + D2 -> 2 D2 @ mass_action(kM / V)
reaction r12: D + D12 -> D2 + D12 @ mass_action((kM + kbarM) / V)
reaction r13: D1 + D2 -> D12 + D2 @ mass_action(kM / V)
reaction r14: D1 + D12 -> 2 D12 @ mass_action((kM + kbarM) / V)
reaction r15: D + D2 -> D1 + D2 @ mass_action(kpM / V)
reaction r16: D + D12 -> D1 + D12 @ mass_action(kpM / V)
reaction r17: D + D1 -> D2 + D1 @ mass_action(kbarM / V)
# pair reactions: mass action counts ordered pairs, so halve the constant
reaction r18: 2 D2 -> D12 + D2 @ mass_action(kpM / (2 * V))
reaction r19: D2 + D12 -> 2 D12 @ mass_action(kpM / V)
reaction r20: 2 D1 -> D12 + D1 @ mass_action(kbarM / (2 * V))
reaction r21: D2 -> D @ mass_action(eps * kMA * Dtot * mu * btilde / V)
reaction r22: D2 + DA -> D + DA @ mass_action(mu * kEA / V)
reaction r23: D1 -> D @ mass_action(eps * kMA * Dtot * beta * mup / V)
reaction r24: D1 + DA -> D + DA @ mass_action(mup * kEA / V)
reaction r25: D12 -> D2 @ mass_action(eps * kMA * Dtot * beta * mup / V)
reaction r26: D12 + DA -> D2 + DA @ mass_action(mup * kEA / V)
reaction r27: D12 -> D1 @ mass_action(eps * kMA * Dtot * mu * btilde / V)
reaction r28: D12 + DA -> D1 + DA @ mass_action(mu * kEA / V)
"""

BIPARALLEL = """\
# bi-parallel motif J -> {Y, Z} -> W
species Y Z W J
param k1 = 1
param k2 = 1
param k3 = 1
param k4 = 1
reaction r1: J -> Y @ mass_action(k1)
reaction r2: J -> Z @ mass_action(k2)
reaction r3: Y -> W @ mass_action(k3)
reaction r4: Z -> W @ mass_action(k4)
"""

SOURCES = {
    "cascade": CASCADE,
    "disconnected": DISCONNECTED,
    "crossdep": CROSSDEP,
    "chromatin2d": CHROMATIN2D,
    "chromatin4d": CHROMATIN4D,
    "biparallel": BIPARALLEL,
}

# parameters that should track the conserved total of the (single) component
TOTAL_PARAMETER = {"chromatin2d": "Dtot", "chromatin4d": "Dtot"}


def example_source(name):
    try:
        return SOURCES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(SOURCES)}") from None


def example(name, **params):
    """Parsed built-in network, optionally with parameter overrides."""
    net = parse_network(example_source(name))
    return net.with_parameters(**params) if params else net
