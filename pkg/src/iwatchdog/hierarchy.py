"""Three-level topology: layer-1 cells, layer-2 cells, regional nodes, base station."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .energy import EnergyState, InsufficientEnergy, debit, residual_after_ids
from .netmodel import NodeId, Position, euclidean_distance


class TopologyError(ValueError):
    pass


class IdsModel(str, Enum):
    HIERARCHICAL = "hierarchical"
    FLAT = "flat"


@dataclass(frozen=True)
class LayeringRule:
    max_per_cell_l1: int = 5
    max_per_cell_l2: int = 4

    def __post_init__(self):
        if self.max_per_cell_l1 < 1 or self.max_per_cell_l2 < 1:
            raise ValueError("cell sizes must be at least 1")


@dataclass
class Cell:
    cell_id: int
    members: list[NodeId]
    cluster_head: NodeId | None = None


@dataclass
class Topology:
    cells_l1: list[Cell]
    cells_l2: list[Cell]
    regional: list[NodeId]
    base_station: NodeId
    # regional[i] supervises cells_l2[i]; None when no spare node was available
    regional_of_l2: list[NodeId | None] = field(default_factory=list)

    def __post_init__(self):
        self._index()

    def _index(self):
        self.l1_of: dict[NodeId, int] = {}
        for c in self.cells_l1:
            for m in c.members:
                self.l1_of[m] = c.cell_id
        self.l2_of: dict[NodeId, int] = {}
        for c in self.cells_l2:
            for m in c.members:
                self.l2_of[m] = c.cell_id

    @property
    def l1_heads(self) -> list[NodeId]:
        return [c.cluster_head for c in self.cells_l1]

    @property
    def l2_heads(self) -> list[NodeId]:
        return [c.cluster_head for c in self.cells_l2]

    @property
    def cluster_head_count(self) -> int:
        """Cluster-head roles; a layer-2 head also heads its layer-1 cell."""
        return len(self.cells_l1) + len(self.cells_l2)

    def head_of(self, node: NodeId) -> NodeId:
        return self.cells_l1[self.l1_of[node]].cluster_head

    def l2_head_of(self, l1_head: NodeId) -> NodeId:
        return self.cells_l2[self.l2_of[l1_head]].cluster_head

    def regional_of(self, l1_head: NodeId) -> NodeId | None:
        return self.regional_of_l2[self.l2_of[l1_head]]

    def role_of(self, node: NodeId) -> str:
        if node == self.base_station:
            return "base_station"
        if node in self.regional:
            return "regional"
        if node in set(self.l2_heads):
            return "cluster_head_l2"
        if node in set(self.l1_heads):
            return "cluster_head_l1"
        return "plain"

    def install_counts(self, model: IdsModel, nodes: list[NodeId]) -> dict[NodeId, int]:
        """How many IDS installs each node pays for under ``model``."""
        if model is IdsModel.FLAT:
            return {n: 1 for n in nodes}
        counts = {n: 0 for n in nodes}
        for h in self.l1_heads:
            counts[h] += 1
        for h in self.l2_heads:
            counts[h] += 1
        for r in self.regional:
            counts[r] += 1
        return counts

    def to_dict(self) -> dict:
        return {
            "cells_l1": [{"cell": c.cell_id, "members": c.members, "cluster_head": c.cluster_head}
                         for c in self.cells_l1],
            "cells_l2": [{"cell": c.cell_id, "members": c.members, "cluster_head": c.cluster_head}
                         for c in self.cells_l2],
            "regional": self.regional,
            "base_station": self.base_station,
            "cluster_heads": self.cluster_head_count,
        }


def _group(items: list[tuple[NodeId, Position]], size: int) -> list[list[NodeId]]:
    """Greedy sweep: seed each group with the first unassigned node in (x, y)
    order and fill it with that seed's nearest unassigned neighbours."""
    order = sorted(items, key=lambda it: (it[1].x, it[1].y, it[0]))
    pos = dict(items)
    remaining = [nid for nid, _ in order]
    groups = []
    while remaining:
        seed = remaining[0]
        rest = remaining[1:]
        rest.sort(key=lambda nid: (euclidean_distance(pos[seed], pos[nid]), nid))
        group = [seed] + rest[: size - 1]
        taken = set(group)
        remaining = [nid for nid in remaining if nid not in taken]
        groups.append(sorted(group))
    return groups


def partition(nodes: list[tuple[NodeId, Position]], rule: LayeringRule) -> list[Cell]:
    """Layer-1 cells: ceil(N / max_per_cell_l1) spatial groups."""
    if not nodes:
        raise TopologyError("empty network")
    groups = _group(nodes, rule.max_per_cell_l1)
    assert len(groups) == math.ceil(len(nodes) / rule.max_per_cell_l1)
    return [Cell(i, g) for i, g in enumerate(groups)]


def partition_l2(heads: list[tuple[NodeId, Position]], rule: LayeringRule) -> list[Cell]:
    groups = _group(heads, rule.max_per_cell_l2)
    return [Cell(i, g) for i, g in enumerate(groups)]


def pick_head(members: list[NodeId], lifetimes: dict[NodeId, float],
              excluded: set[NodeId] = frozenset()) -> NodeId | None:
    best = None
    for m in sorted(members):
        if m in excluded:
            continue
        if best is None or lifetimes[m] > lifetimes[best]:
            best = m
    return best


def select_cluster_heads(cells: list[Cell], lifetimes: dict[NodeId, float],
                         excluded: set[NodeId] = frozenset()) -> list[Cell]:
    """Longest-lived member heads each cell; ties go to the smallest id."""
    for c in cells:
        head = pick_head(c.members, lifetimes, excluded)
        if head is None:
            raise InsufficientEnergy(f"cell {c.cell_id} cannot host IDS")
        c.cluster_head = head
    return cells


def threshold_lifetime(member_lifetimes: list[float]) -> float:
    if not member_lifetimes:
        raise TopologyError("threshold lifetime of an empty cell")
    return max(member_lifetimes)


def place_regional(topology: Topology, positions: dict[NodeId, Position],
                   excluded: set[NodeId] = frozenset()) -> list[NodeId]:
    """One regional node per layer-2 cell, nearest the centroid of its heads."""
    designated = set(topology.l1_heads) | set(topology.l2_heads) | {topology.base_station}
    designated |= set(excluded)
    chosen = []
    for c in topology.cells_l2:
        hs = [positions[h] for h in c.members]
        cx = sum(p.x for p in hs) / len(hs)
        cy = sum(p.y for p in hs) / len(hs)
        centroid = Position(cx, cy)
        best = None
        best_d = math.inf
        for nid in sorted(positions):
            if nid in designated or nid in chosen:
                continue
            d = euclidean_distance(positions[nid], centroid)
            if d < best_d:
                best, best_d = nid, d
        if best is None:
            raise TopologyError("insufficient nodes for regional placement")
        chosen.append(best)
    return chosen


def build_topology(positions: dict[NodeId, Position], lifetimes: dict[NodeId, float],
                   rule: LayeringRule, base_station: NodeId,
                   excluded: set[NodeId] = frozenset(), allow_missing_regional: bool = True) -> Topology:
    """Partition, elect heads top-down by lifetime and place regional nodes.

    ``excluded`` nodes may not head a cell or serve as regional node.
    """
    nodes = sorted((n, p) for n, p in positions.items() if n != base_station)
    cells_l1 = select_cluster_heads(partition(nodes, rule), lifetimes, excluded)
    heads = [(c.cluster_head, positions[c.cluster_head]) for c in cells_l1]
    cells_l2 = select_cluster_heads(partition_l2(heads, rule), lifetimes, excluded)
    topo = Topology(cells_l1, cells_l2, [], base_station)
    sensor_positions = {n: p for n, p in positions.items() if n != base_station}
    try:
        regional = place_regional(topo, sensor_positions, excluded)
    except TopologyError:
        if not allow_missing_regional:
            raise
        regional = []
    if regional:
        topo.regional = regional
        topo.regional_of_l2 = list(regional)
        taken = set(regional)
        for c in topo.cells_l1:
            c.members = [m for m in c.members if m not in taken]
        topo._index()
    else:
        topo.regional_of_l2 = [None] * len(cells_l2)
    return topo


def install_ids(topology: Topology, energies: dict[NodeId, EnergyState], e_p: float,
                model: IdsModel) -> dict[NodeId, EnergyState]:
    """Debit the one-off IDS install energy from every node that runs it.

    Nodes that cannot afford their installs raise ``InsufficientEnergy``; the
    caller re-elects heads without them (see ``build_with_ids``).
    """
    if e_p < 0:
        raise ValueError("install energy must be non-negative")
    nodes = [n for n in energies if n != topology.base_station]
    counts = topology.install_counts(model, nodes)
    for n, k in sorted(counts.items()):
        if k and model is IdsModel.HIERARCHICAL:
            residual_after_ids(energies[n].remaining_j, k * e_p)
    for n, k in sorted(counts.items()):
        if k:
            debit(energies[n], k * e_p)
    return energies


def build_with_ids(positions: dict[NodeId, Position], lifetimes: dict[NodeId, float],
                   initial: dict[NodeId, float], rule: LayeringRule, base_station: NodeId,
                   e_p: float, model: IdsModel) -> tuple[Topology, dict[NodeId, int]]:
    """Build the topology, re-electing away from heads that cannot afford e_p.

    Returns the topology and per-node install counts (not yet debited).
    """
    excluded: set[NodeId] = set()
    while True:
        topo = build_topology(positions, lifetimes, rule, base_station, excluded)
        nodes = [n for n in positions if n != base_station]
        hier = topo.install_counts(IdsModel.HIERARCHICAL, nodes)
        broke = {n for n, k in hier.items() if k and initial[n] < k * e_p}
        if not broke:
            return topo, topo.install_counts(model, nodes)
        excluded |= broke
