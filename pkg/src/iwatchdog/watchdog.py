"""Watchdog and I-Watchdog monitoring state machines.

A monitor keeps a FIFO buffer of expectations: "forwarder B should relay this
payload to C before the deadline".  Each expectation ends in exactly one of
match, expiry or overflow eviction.  Mismatches and expiries become warnings;
enough warnings against one node turn into a Malicious verdict.
"""

from __future__ import annotations

from collections import OrderedDict, deque
from dataclasses import dataclass, field
from enum import Enum

from . import kernels
from .netmodel import NodeId, Packet


class Technique(str, Enum):
    CONVENTIONAL = "conventional"
    IMPROVED = "improved"


class WarningKind(str, Enum):
    DROPPED = "dropped"
    MODIFIED = "modified"


class Verdict(str, Enum):
    TRUSTED = "trusted"
    MALICIOUS = "malicious"


@dataclass
class PendingExpectation:
    cell_index: int
    expected_forwarder: NodeId
    expected_dest: NodeId
    payload_copy: bytes
    deadline: float
    created: float
    seq: int = -1
    warned: bool = False

    def __post_init__(self):
        if self.deadline < self.created:
            raise ValueError("deadline precedes creation time")


@dataclass(frozen=True)
class Warning:
    monitor: NodeId
    suspect: NodeId
    kind: WarningKind
    time: float
    seq: int


@dataclass(frozen=True)
class UpstreamAlert:
    monitor: NodeId
    target: NodeId
    suspect: NodeId
    time: float


def compare(expected_payload: bytes, observed_payload: bytes) -> int:
    """0 when the payloads are identical, else 1 + index of the first difference."""
    return kernels.first_mismatch(bytes(expected_payload), bytes(observed_payload))


class WatchdogBuffer:
    """Bounded FIFO of expectations with per-flow lookup."""

    def __init__(self, capacity: int = 64):
        if capacity < 1:
            raise ValueError("buffer capacity must be positive")
        self.capacity = capacity
        self.overflow_count = 0
        self.entries: OrderedDict[int, PendingExpectation] = OrderedDict()
        self._flows: dict[tuple[NodeId, NodeId], deque[int]] = {}
        self._next_index = 0

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())

    def push(self, forwarder: NodeId, dest: NodeId, payload: bytes, created: float,
             deadline: float, seq: int = -1) -> PendingExpectation | None:
        """Append an expectation; returns the evicted oldest entry on overflow."""
        evicted = None
        if len(self.entries) >= self.capacity:
            _, evicted = self.entries.popitem(last=False)
            self.overflow_count += 1
        entry = PendingExpectation(self._next_index, forwarder, dest, bytes(payload),
                                   deadline, created, seq)
        self._next_index += 1
        self.entries[entry.cell_index] = entry
        self._flows.setdefault((forwarder, dest), deque()).append(entry.cell_index)
        return evicted

    def oldest_for(self, forwarder: NodeId, dest: NodeId, seq: int | None = None) -> PendingExpectation | None:
        """Oldest un-warned entry for the flow, optionally restricted to one packet.

        Warned entries only wait to expire.
        """
        ids = self._flows.get((forwarder, dest))
        if not ids:
            return None
        while ids and ids[0] not in self.entries:
            ids.popleft()
        for idx in ids:
            entry = self.entries.get(idx)
            if entry is not None and not entry.warned and (seq is None or entry.seq == seq):
                return entry
        return None

    def find_seq(self, forwarder: NodeId, seq: int) -> PendingExpectation | None:
        for entry in self.entries.values():
            if entry.expected_forwarder == forwarder and entry.seq == seq and not entry.warned:
                return entry
        return None

    def remove(self, entry: PendingExpectation) -> None:
        del self.entries[entry.cell_index]

    def pop_expired(self, now: float) -> list[PendingExpectation]:
        out = [e for e in self.entries.values() if e.deadline <= now]
        for e in out:
            del self.entries[e.cell_index]
        return out


@dataclass
class MonitorState:
    monitor: NodeId
    technique: Technique
    warning_threshold: int = 5
    timeout_s: float = 2.0
    capacity: int = 64
    parent: NodeId | None = None
    buffer: WatchdogBuffer = field(init=False)
    warnings: dict[NodeId, int] = field(default_factory=dict)
    verdicts: dict[NodeId, Verdict] = field(default_factory=dict)
    outbox: list[UpstreamAlert] = field(default_factory=list)
    log: list[Warning] = field(default_factory=list)
    created: int = 0
    matched: int = 0
    expired: int = 0
    expired_after_warning: int = 0
    good: int = 0
    bad: int = 0
    good_by: dict[NodeId, int] = field(default_factory=dict)
    bad_by: dict[NodeId, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.warning_threshold < 1:
            raise ValueError("warning threshold must be at least 1")
        if self.timeout_s < 0:
            raise ValueError("timeout must be non-negative")
        self.buffer = WatchdogBuffer(self.capacity)

    @property
    def evicted(self) -> int:
        return self.buffer.overflow_count

    @property
    def pending(self) -> int:
        return len(self.buffer)

    def is_malicious(self, node: NodeId) -> bool:
        return self.verdicts.get(node) is Verdict.MALICIOUS

    def observe_origin_send(self, pkt: Packet, next_hop: NodeId, next_dest: NodeId | None,
                            now: float) -> "MonitorState":
        """Buffer a copy of a send whose receiver must relay it onward.

        ``next_dest`` is None when the receiver is the final destination, in
        which case there is nothing to watch.
        """
        if next_dest is None:
            return self
        self.buffer.push(next_hop, next_dest, pkt.payload, now, now + self.timeout_s, pkt.seq)
        self.created += 1
        return self

    def observe_forward(self, pkt: Packet, receiver: NodeId, now: float,
                        observed_payload: bytes | None = None) -> Warning | None:
        """Check an overheard relay by ``pkt.forwarder`` against the buffer.

        The relayed packet is paired with its buffered copy by flow and header
        sequence number; the payloads are then compared.  ``observed_payload``
        is what the monitor actually decoded (it differs from ``pkt.payload``
        when the observation was corrupted).
        """
        entry = self.buffer.oldest_for(pkt.forwarder, receiver, pkt.seq)
        if entry is None:
            return None
        seen = pkt.payload if observed_payload is None else observed_payload
        if compare(entry.payload_copy, seen) == 0:
            self.buffer.remove(entry)
            self.matched += 1
            self._credit(pkt.forwarder)
            return None
        entry.warned = True
        w = Warning(self.monitor, pkt.forwarder, WarningKind.MODIFIED, now, entry.seq)
        self.escalate(w)
        return w

    def observe_receipt(self, forwarder: NodeId, seq: int, now: float) -> bool:
        """A relay acknowledgement; only the conventional watchdog trusts these."""
        if self.technique is not Technique.CONVENTIONAL:
            return False
        entry = self.buffer.find_seq(forwarder, seq)
        if entry is None:
            return False
        self.buffer.remove(entry)
        self.matched += 1
        self._credit(forwarder)
        return True

    def expire(self, now: float) -> list[Warning]:
        out = []
        for entry in self.buffer.pop_expired(now):
            if entry.warned:
                self.expired_after_warning += 1
                continue
            self.expired += 1
            w = Warning(self.monitor, entry.expected_forwarder, WarningKind.DROPPED, now, entry.seq)
            self.escalate(w)
            out.append(w)
        return out

    def _credit(self, forwarder: NodeId) -> None:
        self.good += 1
        self.good_by[forwarder] = self.good_by.get(forwarder, 0) + 1

    def escalate(self, w: Warning) -> UpstreamAlert | None:
        self.bad += 1
        self.bad_by[w.suspect] = self.bad_by.get(w.suspect, 0) + 1
        self.log.append(w)
        count = self.warnings.get(w.suspect, 0) + 1
        self.warnings[w.suspect] = count
        if count != self.warning_threshold:
            return None
        self.verdicts[w.suspect] = Verdict.MALICIOUS
        if self.technique is Technique.CONVENTIONAL or self.parent is None:
            return None
        alert = UpstreamAlert(self.monitor, self.parent, w.suspect, w.time)
        self.outbox.append(alert)
        return alert

    def next_deadline(self) -> float | None:
        for entry in self.buffer:
            return entry.deadline
        return None


def observe_origin_send(m, pkt, next_hop, next_dest, now):
    return m.observe_origin_send(pkt, next_hop, next_dest, now)


def observe_forward(m, pkt, receiver, now, observed_payload=None):
    return m, m.observe_forward(pkt, receiver, now, observed_payload)


def expire(m, now):
    return m, m.expire(now)


def escalate(m, w):
    return m, m.escalate(w)


def conventional_observe(sender_state: MonitorState, pkt: Packet, next_hop: NodeId,
                         next_dest: NodeId | None, now: float) -> MonitorState:
    """The conventional watchdog: the sender buffers its own packet for its next hop."""
    if sender_state.technique is not Technique.CONVENTIONAL:
        raise ValueError("conventional_observe needs a conventional monitor")
    if pkt.forwarder != sender_state.monitor:
        raise ValueError("conventional monitor only watches its own sends")
    return sender_state.observe_origin_send(pkt, next_hop, next_dest, now)
