"""Scenario configuration: dataclasses, validation and JSON round-tripping."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from .energy import EnergyParams, TrafficRates
from .hierarchy import IdsModel, LayeringRule
from .netmodel import RadioModel


class ConfigError(ValueError):
    """Invalid configuration; ``field`` names the offending key."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class AttackKind(str, Enum):
    SELECTIVE_FORWARDING = "selective_forwarding"
    MODIFICATION = "modification"
    COLLUSION = "collusion"
    COLLISION_AT_MONITOR = "collision_at_monitor"
    COLLISION_AT_RECEIVER = "collision_at_receiver"


class TechniqueChoice(str, Enum):
    CONVENTIONAL = "conventional"
    IMPROVED = "improved"
    BOTH = "both"


@dataclass
class AttackConfig:
    kind: AttackKind
    attacker: int
    rate: float = 1.0
    partner: int | None = None
    source: int | None = None  # interference source for collision_at_monitor
    start: float = 0.0
    end: float = float("inf")

    @property
    def malicious(self) -> bool:
        """Collisions at the monitor hit honest relays; every other kind is misbehaviour."""
        return self.kind is not AttackKind.COLLISION_AT_MONITOR


@dataclass
class Flow:
    """Scripted traffic along an explicit route, one packet per ``interval_s``."""

    route: list[int]
    interval_s: float = 0.5
    start: float = 0.0
    end: float = float("inf")


@dataclass
class RandomAttackers:
    """Pick ``fraction`` of plain nodes as selective forwarders."""

    fraction: float = 0.1
    drop_rate: float = 0.5


@dataclass
class ScenarioConfig:
    node_count: int = 100
    positions: list[list[float]] | None = None
    field_side_m: float = 100.0
    base_station: list[float] = field(default_factory=lambda: [0.0, 0.0])
    energy: EnergyParams = field(default_factory=EnergyParams)
    rates: TrafficRates = field(default_factory=TrafficRates)
    radio: RadioModel = field(default_factory=RadioModel)
    layering: LayeringRule = field(default_factory=LayeringRule)
    technique: TechniqueChoice = TechniqueChoice.BOTH
    model: IdsModel = IdsModel.HIERARCHICAL
    attacks: list[AttackConfig] = field(default_factory=list)
    random_attackers: RandomAttackers | None = None
    flows: list[Flow] = field(default_factory=list)
    background_traffic: bool = True
    triad_fraction: float = 0.2
    duration_s: float = 30.0
    seed: int = 1
    payload_bytes: int = 32
    header_bits: int = 0
    hop_latency_s: float = 0.1
    channel_bitrate_bps: float = 250_000.0
    capture_db: float = 6.0
    natural_collisions: bool = False
    timeout_s: float = 2.0
    warning_threshold: int = 5
    conventional_threshold: int | None = None
    buffer_capacity: int = 64
    ids_energy_j: float = 0.025
    boot_time_range_s: list[float] = field(default_factory=lambda: [1000.0, 1_000_000.0])
    initial_energy_j: list[float] | None = None
    tx_offsets_db: dict[str, float] = field(default_factory=dict)
    alert_bits: int = 64

    def validate(self) -> "ScenarioConfig":
        _check(self.node_count >= 1, "node_count", "must be at least 1")
        _check(self.duration_s > 0, "duration_s", "must be positive")
        _check(self.field_side_m > 0, "field_side_m", "must be positive")
        _check(self.payload_bytes >= 1, "payload_bytes", "must be at least 1")
        _check(self.header_bits >= 0, "header_bits", "must be non-negative")
        _check(self.hop_latency_s > 0, "hop_latency_s", "must be positive")
        _check(self.channel_bitrate_bps > 0, "channel_bitrate_bps", "must be positive")
        _check(self.timeout_s >= 0, "timeout_s", "must be non-negative")
        _check(self.warning_threshold >= 1, "warning_threshold", "must be at least 1")
        _check(self.conventional_threshold is None or self.conventional_threshold >= 1,
               "conventional_threshold", "must be at least 1")
        _check(self.buffer_capacity >= 1, "buffer_capacity", "must be at least 1")
        _check(self.ids_energy_j >= 0, "ids_energy_j", "must be non-negative")
        _check(0 <= self.triad_fraction <= 1, "triad_fraction", "must lie in [0, 1]")
        _check(0 <= self.seed < 2**64, "seed", "must be a 64-bit unsigned integer")
        lo, hi = self.boot_time_range_s
        _check(0 <= lo <= hi, "boot_time_range_s", "needs 0 <= low <= high")
        if self.positions is not None:
            _check(len(self.positions) == self.node_count, "positions",
                   f"expected {self.node_count} entries, got {len(self.positions)}")
        if self.initial_energy_j is not None:
            _check(len(self.initial_energy_j) == self.node_count, "initial_energy_j",
                   f"expected {self.node_count} entries")
            _check(all(e >= 0 for e in self.initial_energy_j), "initial_energy_j",
                   "must be non-negative")
        ids = range(self.node_count)
        for i, a in enumerate(self.attacks):
            where = f"attacks[{i}]"
            _check(a.attacker in ids, f"{where}.attacker", "unknown node")
            _check(0 <= a.rate <= 1, f"{where}.rate", "must lie in [0, 1]")
            _check(a.start < a.end, f"{where}.start", "must precede end")
            if a.kind is AttackKind.COLLUSION:
                _check(a.partner in ids and a.partner != a.attacker, f"{where}.partner",
                       "collusion needs a distinct partner node")
            if a.kind is AttackKind.COLLISION_AT_MONITOR:
                _check(a.source in ids, f"{where}.source", "needs an interference source node")
        for i, f in enumerate(self.flows):
            _check(len(f.route) >= 2 and all(n in ids for n in f.route), f"flows[{i}].route",
                   "needs at least two known nodes")
            _check(len(set(f.route)) == len(f.route), f"flows[{i}].route", "repeats a node")
            _check(f.interval_s > 0, f"flows[{i}].interval_s", "must be positive")
        if self.random_attackers is not None:
            _check(0 <= self.random_attackers.fraction <= 1, "random_attackers.fraction",
                   "must lie in [0, 1]")
            _check(0 <= self.random_attackers.drop_rate <= 1, "random_attackers.drop_rate",
                   "must lie in [0, 1]")
        for k in self.tx_offsets_db:
            _check(k.isdigit() and int(k) in ids, "tx_offsets_db", f"unknown node {k!r}")
        return self

    def to_dict(self) -> dict[str, Any]:
        return _plain(dataclasses.asdict(self))

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)


def _check(ok: bool, name: str, message: str) -> None:
    if not ok:
        raise ConfigError(name, message)


def _plain(obj):
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, float) and obj == float("inf"):
        return "inf"
    return obj


def _num(v):
    return float("inf") if v == "inf" else v


_NESTED = {
    "energy": EnergyParams,
    "rates": TrafficRates,
    "radio": RadioModel,
    "layering": LayeringRule,
}


def from_dict(data: dict[str, Any]) -> ScenarioConfig:
    """Build a validated config; accepts a result file (uses its ``config`` key)."""
    if "config" in data and isinstance(data["config"], dict):
        data = data["config"]
    known = {f.name for f in dataclasses.fields(ScenarioConfig)}
    kwargs: dict[str, Any] = {}
    for key, value in data.items():
        if key not in known:
            raise ConfigError(key, "unknown configuration key")
        try:
            if key in _NESTED:
                kwargs[key] = _NESTED[key](**value)
            elif key == "technique":
                kwargs[key] = TechniqueChoice(value)
            elif key == "model":
                kwargs[key] = IdsModel(value)
            elif key == "attacks":
                kwargs[key] = [
                    AttackConfig(**{**a, "kind": AttackKind(a["kind"]),
                                    "end": _num(a.get("end", "inf"))})
                    for a in value
                ]
            elif key == "flows":
                kwargs[key] = [Flow(**{**f, "end": _num(f.get("end", "inf"))}) for f in value]
            elif key == "random_attackers":
                kwargs[key] = None if value is None else RandomAttackers(**value)
            else:
                kwargs[key] = value
        except (TypeError, ValueError, KeyError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(key, str(exc)) from exc
    return ScenarioConfig(**kwargs).validate()


def load(path: str | Path) -> ScenarioConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON: {exc}") from exc
    return from_dict(data)
