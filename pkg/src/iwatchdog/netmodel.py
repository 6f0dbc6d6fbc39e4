"""Shared domain types: positions, packets, node roles and the radio model."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

NodeId = int


@dataclass(frozen=True)
class Position:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite position ({self.x}, {self.y})")


class Role(str, Enum):
    PLAIN = "plain"
    CLUSTER_HEAD = "cluster_head"
    REGIONAL = "regional"
    BASE_STATION = "base_station"


@dataclass(frozen=True)
class NodeRole:
    """Role of a node; ``layer`` is only meaningful for cluster heads (1 or 2)."""

    kind: Role
    layer: int | None = None

    def __post_init__(self):
        if self.kind is Role.CLUSTER_HEAD and self.layer not in (1, 2):
            raise ValueError("cluster head layer must be 1 or 2")


HEADER_BITS = 0


@dataclass
class Packet:
    seq: int
    origin: NodeId
    forwarder: NodeId
    dest: NodeId
    payload: bytes
    header_bits: int = HEADER_BITS
    size_bits: int = field(init=False)

    def __post_init__(self):
        if self.origin == self.dest:
            raise ValueError("packet origin and destination must differ")
        self.size_bits = 8 * len(self.payload) + self.header_bits
        if self.size_bits <= 0:
            raise ValueError("packet must carry at least one bit")


@dataclass(frozen=True)
class RadioModel:
    """Log-distance path loss with a received-level sensing cutoff."""

    ref_loss_db: float = 40.0
    exponent: float = 2.0
    sense_threshold_db: float = -60.0

    def __post_init__(self):
        if self.exponent <= 0 or self.ref_loss_db <= 0:
            raise ValueError("exponent and ref_loss_db must be positive")

    @property
    def radius(self) -> float:
        """Distance at which the received level equals the sensing threshold."""
        return 10 ** ((-self.sense_threshold_db - self.ref_loss_db) / (10 * self.exponent))


def euclidean_distance(a: Position, b: Position) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def received_level_db(model: RadioModel, d: float, tx_offset_db: float = 0.0) -> float:
    """Received level at distance ``d``; co-located nodes see the 0 dB ceiling.

    ``tx_offset_db`` shifts the transmitter's output relative to nominal power
    (negative for a power-limited radio).
    """
    if d < 0:
        raise ValueError("distance must be non-negative")
    if d == 0:
        return 0.0
    return -(model.ref_loss_db + 10 * model.exponent * math.log10(d)) + tx_offset_db


def can_eavesdrop(
    model: RadioModel, monitor: Position, transmitter: Position, tx_offset_db: float = 0.0
) -> bool:
    d = euclidean_distance(monitor, transmitter)
    return received_level_db(model, d, tx_offset_db) >= model.sense_threshold_db
