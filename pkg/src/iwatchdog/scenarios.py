"""Canned scenarios: the six Watchdog failure modes and experiment presets.

Every failure-mode scenario is a single-cell network with a hand-placed cluster
head M, a spare node R that becomes the regional node, and scripted relay
triads.  Radius is 10 m (-60 dB).  Node ids:

    0 A   origin of the watched triad A -> B -> C
    1 B   relay under observation
    2 C   destination
    3 M   cluster head (largest initial energy)
    4 R   regional node (nearest spare node to M)
    5 D   relay of a second triad C -> D -> B
    6 J   interference source (only used by collision scenarios)
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .config import (
    AttackConfig,
    AttackKind,
    Flow,
    RandomAttackers,
    ScenarioConfig,
    TechniqueChoice,
)
from .hierarchy import LayeringRule
from .netmodel import RadioModel
from .watchdog import Technique


class Outcome(str, Enum):
    RESOLVED = "resolved"
    UNRESOLVED = "unresolved"


A, B, C, M, R, D, J = range(7)

DURATION_S = 20.0


@dataclass
class Table3Row:
    name: str
    config: ScenarioConfig
    expected: dict[Technique, Outcome]


def _base(positions: dict[int, tuple[float, float]], attacks: list[AttackConfig],
          flows: list[Flow], **overrides) -> ScenarioConfig:
    n = max(positions) + 1
    energy = [10.0] * n
    energy[M] = 100.0
    cfg = ScenarioConfig(
        node_count=n,
        positions=[list(positions[i]) for i in range(n)],
        base_station=[6.0, 60.0],
        radio=RadioModel(sense_threshold_db=-60.0),
        layering=LayeringRule(max_per_cell_l1=n, max_per_cell_l2=4),
        technique=TechniqueChoice.BOTH,
        attacks=attacks,
        flows=flows,
        background_traffic=False,
        triad_fraction=0.0,
        duration_s=DURATION_S,
        initial_energy_j=energy,
        ids_energy_j=0.0,
        seed=2012,
    )
    return cfg.replace(**overrides).validate() if overrides else cfg.validate()


def _layout(**moves) -> dict[int, tuple[float, float]]:
    pos = {A: (0.0, 0.0), B: (6.0, 0.0), C: (12.0, 0.0), M: (6.0, 5.0), R: (6.5, 5.5),
           D: (9.0, 8.0), J: (30.0, 30.0)}
    names = {"A": A, "B": B, "C": C, "M": M, "R": R, "D": D, "J": J}
    pos.update({names[k]: v for k, v in moves.items()})
    return pos


def _watched() -> Flow:
    return Flow(route=[A, B, C], interval_s=0.5)


def _dropper_flow() -> Flow:
    return Flow(route=[C, D, B], interval_s=0.5, start=0.25)


def _dropper() -> AttackConfig:
    return AttackConfig(AttackKind.SELECTIVE_FORWARDING, D, rate=1.0)


BOTH_UNRESOLVED = {Technique.CONVENTIONAL: Outcome.UNRESOLVED, Technique.IMPROVED: Outcome.UNRESOLVED}
IMPROVED_FIXES = {Technique.CONVENTIONAL: Outcome.UNRESOLVED, Technique.IMPROVED: Outcome.RESOLVED}


def table3_scenarios() -> list[Table3Row]:
    rows = []

    # interference heard by both the sender and the cluster head garbles B's honest relays
    rows.append(Table3Row(
        "Creating ambiguous Collision",
        _base(_layout(J=(3.0, 3.0)),
              [AttackConfig(AttackKind.COLLISION_AT_MONITOR, B, rate=1.0, source=J)],
              [_watched()]),
        BOTH_UNRESOLVED))

    # B relays audibly but times it to collide at C; every watcher sees a good relay
    rows.append(Table3Row(
        "Creating Collision in the receiver",
        _base(_layout(),
              [AttackConfig(AttackKind.COLLISION_AT_RECEIVER, B, rate=1.0)],
              [_watched()]),
        BOTH_UNRESOLVED))

    # interference near A only: A blames honest B, M still catches the real dropper D
    rows.append(Table3Row(
        "Selecting the incorrect malicious node",
        _base(_layout(J=(-6.0, 0.0)),
              [AttackConfig(AttackKind.COLLISION_AT_MONITOR, B, rate=1.0, source=J), _dropper()],
              [_watched(), _dropper_flow()]),
        IMPROVED_FIXES))

    # B's radio is power-limited to reach C only; A (6 m away) cannot overhear it
    rows.append(Table3Row(
        "Limited power transfer",
        _base(_layout(C=(9.0, 0.0), M=(6.0, 2.5), R=(6.5, 3.0), D=(8.0, 5.0)),
              [_dropper()],
              [_watched(), Flow(route=[C, D, B], interval_s=0.5, start=0.25)],
              tx_offsets_db={str(B): -10.0}),
        IMPROVED_FIXES))

    # B drops and its partner C acknowledges to A on B's behalf
    rows.append(Table3Row(
        "Node conspiracy",
        _base(_layout(),
              [AttackConfig(AttackKind.COLLUSION, B, rate=1.0, partner=C)],
              [_watched()]),
        IMPROVED_FIXES))

    # one short burst of ambiguous collision; a single-warning watchdog evicts honest B
    rows.append(Table3Row(
        "Impartial removal",
        _base(_layout(J=(3.0, 3.0)),
              [AttackConfig(AttackKind.COLLISION_AT_MONITOR, B, rate=1.0, source=J, end=1.0),
               _dropper()],
              [_watched(), _dropper_flow()],
              conventional_threshold=1),
        IMPROVED_FIXES))
    return rows


def resolution(result: dict, technique: Technique) -> Outcome:
    """Resolved iff no honest node is judged malicious and every attacker is."""
    section = result["techniques"][technique.value]
    flagged = {int(k) for k in section["malicious"]}
    attackers = set(result["attackers"])
    cfg = result["config"]
    partners = {a["partner"] for a in cfg["attacks"] if a["kind"] == AttackKind.COLLUSION.value}
    honest_flagged = flagged - attackers - partners
    if honest_flagged or not attackers <= flagged:
        return Outcome.UNRESOLVED
    return Outcome.RESOLVED


SWEEP_THRESHOLDS = (-60.0, -75.0, -78.0)


def radius_config(threshold_db: float, seed: int, **overrides) -> ScenarioConfig:
    """100 nodes, 10% selective forwarders dropping half their relays.

    Channel contention is on: a wider sensing radius lets each monitor hear
    more overlapping frames, which is what drives the error up with radius.
    """
    cfg = ScenarioConfig(
        node_count=100,
        natural_collisions=True,
        radio=RadioModel(sense_threshold_db=threshold_db),
        random_attackers=RandomAttackers(fraction=0.1, drop_rate=0.5),
        seed=seed,
    )
    return cfg.replace(**overrides).validate() if overrides else cfg.validate()


def growth_config(node_count: int, seed: int = 1, **overrides) -> ScenarioConfig:
    cfg = ScenarioConfig(node_count=node_count, seed=seed, duration_s=5.0)
    return cfg.replace(**overrides).validate() if overrides else cfg.validate()
