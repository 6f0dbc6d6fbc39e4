"""Reported quantities: error ratio, lifetime tables, model comparison, network lifetime."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class MetricsError(ValueError):
    pass


@dataclass(frozen=True)
class ForwardCounters:
    good_counter: int = 0
    bad_counter: int = 0

    def __post_init__(self):
        if self.good_counter < 0 or self.bad_counter < 0:
            raise MetricsError("counters must be non-negative")


def error_ratio(c: ForwardCounters) -> float:
    """Share of unforwarded packets, scaled to a byte: bad / (bad + good) * 255."""
    total = c.bad_counter + c.good_counter
    if total == 0:
        raise MetricsError("no observations")
    return 255 * c.bad_counter / total


def mean_error_rate(series: list[float]) -> float:
    if not series:
        raise MetricsError("mean of an empty error-ratio series")
    return math.fsum(series) / len(series)


def run_error_rate(result: dict, technique: str) -> float | None:
    """Mean error ratio over every (monitor, forwarder) pair a technique watched.

    None when the technique made no observations in this run.
    """
    pairs = result["techniques"][technique]["pairs"]
    ratios = [error_ratio(ForwardCounters(g, b)) for _, _, g, b in pairs if g + b]
    return mean_error_rate(ratios) if ratios else None


def truth_error_rate(result: dict) -> float | None:
    """Error ratio of attackers' relays from the attack log (ground truth)."""
    ratios = []
    for row in result["attack_log"].values():
        c = ForwardCounters(row["forwarded"], row["dropped"] + row["modified"])
        if c.good_counter + c.bad_counter:
            ratios.append(error_ratio(c))
    return mean_error_rate(ratios) if ratios else None


@dataclass(frozen=True)
class LifetimeRow:
    node: int
    distance_m: float
    e_i: float
    e_it: float
    lifetime_s: float


def lifetime_table(result: dict) -> list[LifetimeRow]:
    rows = []
    for n in sorted(result["nodes"], key=lambda r: r["id"]):
        life = n["lifetime_s"]
        rows.append(LifetimeRow(n["id"], n["distance_m"], n["post_install_j"], n["e_it_j_per_s"],
                                math.inf if life is None else life))
    return rows


DEFAULT_EDGES = (20000.0, 40000.0, 60000.0)


def lifetime_histogram(lifetimes: list[float], edges=DEFAULT_EDGES) -> list[tuple[str, float]]:
    """Percentage of lifetimes in each bucket ``(-inf, e0), [e0, e1), ..., [ek, inf)``."""
    if not lifetimes:
        raise MetricsError("histogram of no lifetimes")
    edges = list(edges)
    if any(b <= a for a, b in zip(edges, edges[1:])):
        raise MetricsError("histogram edges must be strictly increasing")
    bounds = [-math.inf] + edges + [math.inf]
    counts = [0] * (len(bounds) - 1)
    for life in lifetimes:
        for i in range(len(counts)):
            if bounds[i] <= life < bounds[i + 1]:
                counts[i] += 1
                break
    labels = [f"<{edges[0]:g}"] + [f"{a:g}-{b:g}" for a, b in zip(edges, edges[1:])] + [f">={edges[-1]:g}"]
    return [(lab, 100.0 * c / len(lifetimes)) for lab, c in zip(labels, counts)]


@dataclass
class ComparisonReport:
    per_node_delta_s: dict[int, float]
    total_delta_s: float
    total_energy_saved_j: float
    max_delta: tuple[int, float]
    unchanged: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "total_delta_s": self.total_delta_s,
            "total_energy_saved_j": self.total_energy_saved_j,
            "max_delta": {"node": self.max_delta[0], "delta_s": self.max_delta[1]},
            "unchanged_nodes": self.unchanged,
        }


def compare_models(hier: dict, flat: dict) -> ComparisonReport:
    """Per-node lifetime gain of the first run over the second, and the IDS energy saved."""
    h = {n["id"]: n for n in hier["nodes"]}
    f = {n["id"]: n for n in flat["nodes"]}
    if set(h) != set(f):
        raise MetricsError("runs cover different node sets")
    deltas = {}
    for i in sorted(h):
        lh, lf = h[i]["lifetime_s"], f[i]["lifetime_s"]
        deltas[i] = 0.0 if lh is None or lf is None else lh - lf
    e_p = hier["config"]["ids_energy_j"]
    saved = e_p * (sum(n["ids_installs"] for n in f.values()) - sum(n["ids_installs"] for n in h.values()))
    best = max(deltas, key=lambda i: (deltas[i], -i))
    return ComparisonReport(
        per_node_delta_s=deltas,
        total_delta_s=math.fsum(deltas.values()),
        total_energy_saved_j=saved,
        max_delta=(best, deltas[best]),
        unchanged=[i for i, d in deltas.items() if d == 0.0],
    )


class LifetimeDefinition(str, Enum):
    SUM_OF_NODE_LIFETIMES = "sum"
    FIRST_CH_DEATH = "first_ch_death"


def network_lifetime(result: dict, definition=LifetimeDefinition.SUM_OF_NODE_LIFETIMES) -> float:
    definition = LifetimeDefinition(definition)
    nodes = result["nodes"]
    if definition is LifetimeDefinition.SUM_OF_NODE_LIFETIMES:
        return math.fsum(math.inf if n["lifetime_s"] is None else n["lifetime_s"] for n in nodes)
    topo = result["topology"]
    heads = {c["cluster_head"] for c in topo["cells_l1"] + topo["cells_l2"]}
    by_id = {n["id"]: n for n in nodes}
    deaths = [by_id[h]["death_time"] for h in heads if by_id[h]["death_time"] is not None]
    if deaths:
        return min(deaths)
    # no head died during the run: project the earliest depletion from the energy model
    lives = [by_id[h]["lifetime_s"] for h in heads if by_id[h]["lifetime_s"] is not None]
    return min(lives) if lives else math.inf
