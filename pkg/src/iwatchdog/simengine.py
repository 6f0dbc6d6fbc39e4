"""Deterministic discrete-event engine.

Events are processed in ``(time, seq)`` order from a single heap.  Randomness
comes only from counter-based streams keyed by ``(seed, node, purpose)``, so a
run is a pure function of its configuration.

Radio semantics: delivery between route hops is reliable (the MAC is assumed
to retransmit), but passive eavesdropping is not.  An overheard frame is
corrupted when another transmission audible at the listener overlaps it and is
not at least ``capture_db`` weaker, or when the listener is itself
transmitting.
"""

from __future__ import annotations

import hashlib
import heapq
import math
import struct
from collections import deque
from dataclasses import dataclass, field
from enum import IntEnum

from . import __version__, kernels
from .config import AttackConfig, AttackKind, ScenarioConfig, TechniqueChoice
from .energy import (
    EnergyState,
    debit,
    per_second_consumption,
    receive_power_per_bit,
    transmit_power_per_bit,
    boot_energy,
)
from .hierarchy import build_with_ids
from .netmodel import Packet, Position, euclidean_distance, received_level_db
from .rng import Purpose, node_stream
from .watchdog import MonitorState, Technique, Verdict


class EventKind(IntEnum):
    GENERATE = 0
    FLOW = 1
    TRANSMIT = 2
    OBSERVE_END = 3
    DELIVER = 4
    TIMEOUT_CHECK = 5


class Action(IntEnum):
    FORWARD = 0
    DROP = 1
    MODIFY = 2
    FORWARD_WITH_COLLUSION_RECEIPT = 3
    CORRUPT_RECEIVER = 4
    CORRUPT_MONITORS = 5


def mutate_payload(payload: bytes, seq: int) -> bytes:
    i = seq % len(payload)
    b = bytearray(payload)
    b[i] ^= 0xFF
    return bytes(b)


def apply_attack(cfg: AttackConfig, pkt: Packet, draw: float) -> tuple[Action, bytes | None]:
    """Decide what an attacking forwarder does with ``pkt``.

    Returns the action and, for modifications, the mutated payload.
    """
    hit = draw < cfg.rate
    if cfg.kind is AttackKind.SELECTIVE_FORWARDING:
        return (Action.DROP if hit else Action.FORWARD), None
    if cfg.kind is AttackKind.MODIFICATION:
        if hit:
            return Action.MODIFY, mutate_payload(pkt.payload, pkt.seq)
        return Action.FORWARD, None
    if cfg.kind is AttackKind.COLLUSION:
        return (Action.FORWARD_WITH_COLLUSION_RECEIPT if hit else Action.FORWARD), None
    if cfg.kind is AttackKind.COLLISION_AT_RECEIVER:
        return (Action.CORRUPT_RECEIVER if hit else Action.FORWARD), None
    return (Action.CORRUPT_MONITORS if hit else Action.FORWARD), None


@dataclass
class Flight:
    pkt: Packet
    route: list[int]
    receiver_corrupted: bool = False


@dataclass
class Tx:
    sender: int
    receiver: int
    start: float
    end: float
    payload: bytes
    flight: Flight | None
    hop: int
    observers: list[tuple[int, Technique, str]] = field(default_factory=list)
    jammed: frozenset = frozenset()


@dataclass
class ScenarioResult:
    """Serializable outcome of one run; ``data`` is the JSON document."""

    data: dict

    def __getitem__(self, key):
        return self.data[key]


class Simulation:
    def __init__(self, cfg: ScenarioConfig):
        cfg.validate()
        self.cfg = cfg
        self.n = cfg.node_count
        self.bs = self.n
        self.death_time: dict[int, float] = {}
        self._setup_nodes()
        self._setup_topology()
        self._setup_radio()
        self._setup_attacks()
        self._setup_monitors()
        self.queue: list = []
        self.seq = 0
        self.now = 0.0
        self.packet_seq = 0
        self.recent: deque[Tx] = deque()
        self.counts = {"generated": 0, "delivered": 0, "dropped_by_attack": 0,
                       "lost_to_dead_node": 0}
        self.truth: dict[int, dict[str, int]] = {a: {"forwarded": 0, "dropped": 0, "modified": 0}
                                                 for a in self.attack_of}
        self.alerts: list[dict] = []
        self.received_bits = [0] * self.n
        self.event_log: list[str] = []
        self.log_events = False

    # -- setup -----------------------------------------------------------------

    def _setup_nodes(self):
        cfg = self.cfg
        if cfg.positions is not None:
            pos = [Position(float(x), float(y)) for x, y in cfg.positions]
        else:
            pos = []
            for i in range(self.n):
                s = node_stream(cfg.seed, i, Purpose.POSITION)
                pos.append(Position(s.uniform(0, cfg.field_side_m), s.uniform(0, cfg.field_side_m)))
        self.positions = {i: p for i, p in enumerate(pos)}
        self.positions[self.bs] = Position(*cfg.base_station)
        bs = self.positions[self.bs]
        self.dist_bs = [euclidean_distance(self.positions[i], bs) for i in range(self.n)]
        if cfg.initial_energy_j is not None:
            self.initial = [float(e) for e in cfg.initial_energy_j]
        else:
            lo, hi = cfg.boot_time_range_s
            self.initial = [boot_energy(cfg.energy, node_stream(cfg.seed, i, Purpose.BOOT_TIME).uniform(lo, hi))
                            for i in range(self.n)]
        self.e_it = [per_second_consumption(cfg.energy, cfg.rates, d) for d in self.dist_bs]
        self.model_lifetime = {i: (self.initial[i] / self.e_it[i] if self.e_it[i] > 0 else math.inf)
                               for i in range(self.n)}

    def _setup_topology(self):
        cfg = self.cfg
        sensors = {i: self.positions[i] for i in range(self.n)}
        sensors[self.bs] = self.positions[self.bs]
        self.topo, self.installs = build_with_ids(
            sensors, self.model_lifetime, dict(enumerate(self.initial)), cfg.layering,
            self.bs, cfg.ids_energy_j, cfg.model)
        self.energy = [EnergyState(self.initial[i], per_second_j=self.e_it[i]) for i in range(self.n)]
        for i in range(self.n):
            if self.installs[i]:
                debit(self.energy[i], self.installs[i] * cfg.ids_energy_j)
        self.post_install = [self.energy[i].remaining_j for i in range(self.n)]
        self.role = {i: self.topo.role_of(i) for i in range(self.n)}
        l2 = set(self.topo.l2_heads)
        l1 = set(self.topo.l1_heads)
        regional = set(self.topo.regional)
        self.supervisor: dict[int, int | None] = {}
        for i in range(self.n):
            if i in regional:
                sup = self.bs
            elif i in l2:
                r = self.topo.regional_of(i)
                sup = self.bs if r is None else r
            elif i in l1:
                sup = self.topo.l2_head_of(i)
            else:
                sup = self.topo.head_of(i)
            self.supervisor[i] = None if sup == i else sup
        self.routes = {i: self._uplink(i) for i in range(self.n)}
        for i, d in enumerate(self.energy):
            if not d.alive:
                self.death_time[i] = 0.0

    def _uplink(self, node: int) -> list[int]:
        topo = self.topo
        if node in topo.regional:
            return [node, self.bs]
        route = [node]
        head = topo.head_of(node)
        if head != node:
            route.append(head)
        h2 = topo.l2_head_of(head)
        if h2 != head:
            route.append(h2)
        r = topo.regional_of(head)
        if r is not None:
            route.append(r)
        route.append(self.bs)
        return route

    def _setup_radio(self):
        cfg = self.cfg
        total = self.n + 1
        self.offsets = [float(cfg.tx_offsets_db.get(str(i), 0.0)) for i in range(total)]
        xs = [self.positions[i].x for i in range(total)]
        ys = [self.positions[i].y for i in range(total)]
        r = cfg.radio
        nominal = kernels.audibility(xs, ys, r.ref_loss_db, r.exponent, r.sense_threshold_db, [0.0] * total)
        actual = kernels.audibility(xs, ys, r.ref_loss_db, r.exponent, r.sense_threshold_db, self.offsets)
        self.hears_nominal = [set(row) for row in nominal]
        self.hears = [set(row) for row in actual]
        self.level = [[received_level_db(r, euclidean_distance(self.positions[i], self.positions[j]))
                       + self.offsets[j] for j in range(total)] for i in range(total)]
        self.bits = 8 * cfg.payload_bytes + cfg.header_bits
        self.airtime = self.bits / cfg.channel_bitrate_bps

    def _setup_attacks(self):
        cfg = self.cfg
        attacks = list(cfg.attacks)
        if cfg.random_attackers is not None and cfg.random_attackers.fraction > 0:
            plain = [i for i in range(self.n) if self.role[i] == "plain"]
            k = min(len(plain), round(cfg.random_attackers.fraction * self.n))
            picker = node_stream(cfg.seed, self.bs, Purpose.ATTACKER_PICK)
            for a in sorted(picker.sample(plain, k)):
                attacks.append(AttackConfig(AttackKind.SELECTIVE_FORWARDING, a,
                                            rate=cfg.random_attackers.drop_rate))
        self.attacks = attacks
        self.attack_of: dict[int, AttackConfig] = {a.attacker: a for a in attacks}
        self.attack_rng = {a.attacker: node_stream(cfg.seed, a.attacker, Purpose.ATTACK) for a in attacks}
        self.malicious = {a.attacker for a in attacks if a.malicious}

    def _setup_monitors(self):
        cfg = self.cfg
        self.techniques: list[Technique] = []
        if cfg.technique in (TechniqueChoice.CONVENTIONAL, TechniqueChoice.BOTH):
            self.techniques.append(Technique.CONVENTIONAL)
        if cfg.technique in (TechniqueChoice.IMPROVED, TechniqueChoice.BOTH):
            self.techniques.append(Technique.IMPROVED)
        self.monitors: dict[Technique, dict[int, MonitorState]] = {t: {} for t in self.techniques}

    def monitor(self, tech: Technique, node: int) -> MonitorState:
        mons = self.monitors[tech]
        m = mons.get(node)
        if m is None:
            cfg = self.cfg
            if tech is Technique.CONVENTIONAL:
                threshold = cfg.conventional_threshold or cfg.warning_threshold
                parent = None
            else:
                threshold = cfg.warning_threshold
                parent = None if node == self.bs else self.supervisor.get(node)
            m = MonitorState(node, tech, threshold, cfg.timeout_s, cfg.buffer_capacity, parent)
            mons[node] = m
        return m

    # -- event plumbing ----------------------------------------------------------

    def push(self, time: float, kind: EventKind, *payload):
        heapq.heappush(self.queue, (time, self.seq, kind, payload))
        self.seq += 1

    def alive(self, node: int) -> bool:
        return node == self.bs or self.energy[node].alive

    def spend(self, node: int, joules: float):
        if node == self.bs:
            return
        e = self.energy[node]
        if not e.alive:
            return
        debit(e, joules)
        if not e.alive:
            self.death_time[node] = self.now
            if self.log_events:
                self.event_log.append(f"{self.now:.6f} death {node}")

    def payload_for(self, origin: int, k: int, tag: int) -> bytes:
        data = struct.pack("<QQQQ", self.cfg.seed, origin, k, tag)
        return hashlib.shake_256(data).digest(self.cfg.payload_bytes)

    # -- run ---------------------------------------------------------------------

    def run(self, log_events: bool = False) -> ScenarioResult:
        self.log_events = log_events
        cfg = self.cfg
        self.interval = self.bits / cfg.rates.r_gi if cfg.rates.r_gi > 0 else math.inf
        if cfg.background_traffic and math.isfinite(self.interval):
            for i in range(self.n):
                phase = node_stream(cfg.seed, i, Purpose.PHASE).at(0) * self.interval
                if phase < cfg.duration_s:
                    self.push(phase, EventKind.GENERATE, i, 0)
        for fi, f in enumerate(cfg.flows):
            if f.start < min(cfg.duration_s, f.end):
                self.push(f.start, EventKind.FLOW, fi, 0)
        handlers = {
            EventKind.GENERATE: self._on_generate,
            EventKind.FLOW: self._on_flow,
            EventKind.TRANSMIT: self._on_transmit,
            EventKind.OBSERVE_END: self._on_observe_end,
            EventKind.DELIVER: self._on_deliver,
            EventKind.TIMEOUT_CHECK: self._on_timeout,
        }
        while self.queue:
            time, _, kind, payload = heapq.heappop(self.queue)
            self.now = time
            handlers[kind](*payload)
        return ScenarioResult(self._result())

    def _launch(self, origin: int, route: list[int], k: int, tag: int):
        pkt = Packet(self.packet_seq, origin, origin, route[-1], self.payload_for(origin, k, tag),
                     self.cfg.header_bits)
        self.packet_seq += 1
        self.counts["generated"] += 1
        self._transmit(Flight(pkt, route), 0)

    def _on_generate(self, node: int, k: int):
        if not self.alive(node):
            return
        cfg = self.cfg
        route = self.routes[node]
        if cfg.triad_fraction > 0:
            s = node_stream(cfg.seed, node, Purpose.TRIAD)
            if s.at(3 * k) < cfg.triad_fraction:
                cell = self.topo.cells_l1[self.topo.l1_of[node]] if node in self.topo.l1_of else None
                others = [m for m in cell.members if m != node] if cell else []
                if len(others) >= 2:
                    b = others[min(int(s.at(3 * k + 1) * len(others)), len(others) - 1)]
                    rest = [m for m in others if m != b]
                    c = rest[min(int(s.at(3 * k + 2) * len(rest)), len(rest) - 1)]
                    route = [node, b, c]
        self._launch(node, route, k, 0)
        nxt = k + 1
        t = node_stream(cfg.seed, node, Purpose.PHASE).at(0) * self.interval + nxt * self.interval
        if t < cfg.duration_s:
            self.push(t, EventKind.GENERATE, node, nxt)

    def _on_flow(self, fi: int, k: int):
        f = self.cfg.flows[fi]
        origin = f.route[0]
        if self.alive(origin):
            self._launch(origin, list(f.route), k, fi + 1)
        t = f.start + (k + 1) * f.interval_s
        if t < min(self.cfg.duration_s, f.end):
            self.push(t, EventKind.FLOW, fi, k + 1)

    def _on_transmit(self, flight: Flight, hop: int):
        self._transmit(flight, hop)

    def _transmit(self, flight: Flight, hop: int):
        pkt = flight.pkt
        sender = flight.route[hop]
        receiver = flight.route[hop + 1]
        if not self.alive(sender):
            self.counts["lost_to_dead_node"] += 1
            return
        pkt.forwarder = sender
        payload = pkt.payload
        jammed: frozenset = frozenset()
        attack = self.attack_of.get(sender) if hop > 0 else None
        if attack is not None and attack.start <= self.now < attack.end:
            draw = self.attack_rng[sender].random()
            action, mutated = apply_attack(attack, pkt, draw)
            truth = self.truth[sender]
            if action is Action.DROP:
                truth["dropped"] += 1
                self.counts["dropped_by_attack"] += 1
                self._log("drop", sender, pkt.seq)
                return
            if action is Action.FORWARD_WITH_COLLUSION_RECEIPT:
                truth["dropped"] += 1
                self.counts["dropped_by_attack"] += 1
                self._log("collude", sender, pkt.seq)
                self._fake_receipt(attack.partner, flight.route[hop - 1], sender, pkt.seq)
                return
            if action is Action.MODIFY:
                truth["modified"] += 1
                payload = mutated
                pkt.payload = mutated
            elif action is Action.CORRUPT_RECEIVER:
                truth["dropped"] += 1
                flight.receiver_corrupted = True
            else:
                truth["forwarded"] += 1
                if action is Action.CORRUPT_MONITORS:
                    src = attack.source
                    jammed = frozenset(i for i, row in enumerate(self.hears) if src in row)
        elif attack is not None:
            self.truth[sender]["forwarded"] += 1
        d = euclidean_distance(self.positions[sender], self.positions[receiver])
        self.spend(sender, self.bits * transmit_power_per_bit(self.cfg.energy, d))
        tx = Tx(sender, receiver, self.now, self.now + self.airtime, payload, flight, hop, jammed=jammed)
        self._log("tx", sender, pkt.seq, receiver)
        relays = hop + 2 < len(flight.route)
        # a sender watches its next hop only when it believes that hop is in earshot
        if relays and Technique.CONVENTIONAL in self.monitors and sender != self.bs \
                and receiver in self.hears_nominal[sender]:
            m = self.monitor(Technique.CONVENTIONAL, sender)
            m.observe_origin_send(pkt, receiver, flight.route[hop + 2], self.now)
            self.push(self.now + m.timeout_s, EventKind.TIMEOUT_CHECK, Technique.CONVENTIONAL, sender)
        if relays and Technique.IMPROVED in self.monitors:
            sup = self.supervisor.get(receiver)
            # the supervisor only buffers relays it expects to overhear
            if sup is not None and (receiver in self.hears_nominal[sup]
                                    or flight.route[hop + 2] == sup):
                if sup == sender:
                    m = self.monitor(Technique.IMPROVED, sup)
                    m.observe_origin_send(pkt, receiver, flight.route[hop + 2], self.now)
                    self.push(self.now + m.timeout_s, EventKind.TIMEOUT_CHECK, Technique.IMPROVED, sup)
                else:
                    tx.observers.append((sup, Technique.IMPROVED, "origin"))
        if hop > 0:
            prev = flight.route[hop - 1]
            if self._watching(Technique.CONVENTIONAL, prev, sender, receiver):
                tx.observers.append((prev, Technique.CONVENTIONAL, "forward"))
            sup = self.supervisor.get(sender)
            if sup is not None and self._watching(Technique.IMPROVED, sup, sender, receiver):
                tx.observers.append((sup, Technique.IMPROVED, "forward"))
        self.recent.append(tx)
        self.push(tx.end, EventKind.OBSERVE_END, tx)
        self.push(self.now + self.cfg.hop_latency_s, EventKind.DELIVER, flight, hop)

    def _watching(self, tech: Technique, node: int, forwarder: int, dest: int) -> bool:
        mons = self.monitors.get(tech)
        m = mons.get(node) if mons is not None else None
        return m is not None and m.buffer.oldest_for(forwarder, dest) is not None

    def _fake_receipt(self, partner: int, watcher: int, suspect: int, seq: int):
        if not self.alive(partner):
            return
        d = euclidean_distance(self.positions[partner], self.positions[watcher])
        self.spend(partner, self.cfg.alert_bits * transmit_power_per_bit(self.cfg.energy, d))
        if Technique.CONVENTIONAL in self.monitors and self.alive(watcher):
            self.spend(watcher, self.cfg.alert_bits * receive_power_per_bit(self.cfg.energy))
            if self.monitor(Technique.CONVENTIONAL, watcher).observe_receipt(suspect, seq, self.now):
                self._log("good", Technique.CONVENTIONAL.value, watcher, suspect)

    def _corrupted(self, tx: Tx, listener: int) -> bool:
        if listener in tx.jammed:
            return True
        if not self.cfg.natural_collisions:
            return False
        own = self.level[listener][tx.sender]
        capture = self.cfg.capture_db
        hears = self.hears[listener]
        for other in self.recent:
            if other is tx or other.start >= tx.end or other.end <= tx.start:
                continue
            if other.sender == listener:
                return True
            if other.sender == tx.sender:
                continue
            if other.sender in hears and own - self.level[listener][other.sender] < capture:
                return True
        return False

    def _on_observe_end(self, tx: Tx):
        horizon = self.now - 2 * self.airtime
        while self.recent and self.recent[0].end < horizon:
            self.recent.popleft()
        pkt = tx.flight.pkt
        rx_cost = self.bits * receive_power_per_bit(self.cfg.energy)
        for listener, tech, what in tx.observers:
            if not self.alive(listener):
                continue
            if listener == tx.receiver:
                corrupted = listener in tx.jammed
            else:
                if tx.sender not in self.hears[listener]:
                    continue
                self.spend(listener, rx_cost)
                corrupted = self._corrupted(tx, listener)
            m = self.monitor(tech, listener)
            if what == "origin":
                if corrupted:
                    continue
                nxt = tx.flight.route[tx.hop + 2]
                view = Packet(pkt.seq, pkt.origin, tx.sender, pkt.dest, tx.payload, pkt.header_bits)
                m.observe_origin_send(view, tx.receiver, nxt, tx.start)
                self.push(max(self.now, tx.start + m.timeout_s), EventKind.TIMEOUT_CHECK, tech, listener)
            else:
                seen = mutate_payload(tx.payload, 0) if corrupted else tx.payload
                view = Packet(pkt.seq, pkt.origin, tx.sender, pkt.dest, tx.payload, pkt.header_bits)
                before = m.good
                w = m.observe_forward(view, tx.receiver, self.now, seen)
                if w is not None:
                    self._log("warn", tech.value, listener, w.suspect, w.kind.value)
                elif m.good != before:
                    self._log("good", tech.value, listener, tx.sender)
                self._flush_alerts(m)

    def _on_deliver(self, flight: Flight, hop: int):
        receiver = flight.route[hop + 1]
        if not self.alive(receiver):
            self.counts["lost_to_dead_node"] += 1
            return
        if receiver != self.bs:
            self.spend(receiver, self.bits * receive_power_per_bit(self.cfg.energy))
            self.received_bits[receiver] += self.bits
        if flight.receiver_corrupted:
            self.counts["dropped_by_attack"] += 1
            return
        if hop + 2 >= len(flight.route):
            self.counts["delivered"] += 1
            self._log("deliver", receiver, flight.pkt.seq)
            return
        self._transmit(flight, hop + 1)

    def _on_timeout(self, tech: Technique, node: int):
        m = self.monitors[tech].get(node)
        if m is None or not self.alive(node):
            return
        for w in m.expire(self.now):
            self._log("warn", tech.value, node, w.suspect, w.kind.value)
        self._flush_alerts(m)

    def _flush_alerts(self, m: MonitorState):
        while m.outbox:
            alert = m.outbox.pop(0)
            d = euclidean_distance(self.positions[alert.monitor], self.positions[alert.target])
            self.spend(alert.monitor, self.cfg.alert_bits * transmit_power_per_bit(self.cfg.energy, d))
            if alert.target != self.bs:
                self.spend(alert.target, self.cfg.alert_bits * receive_power_per_bit(self.cfg.energy))
            self.alerts.append({"time": alert.time, "monitor": alert.monitor,
                                "target": alert.target, "suspect": alert.suspect})

    def _log(self, *parts):
        if self.log_events:
            self.event_log.append(f"{self.now:.6f} " + " ".join(str(p) for p in parts))

    # -- result ------------------------------------------------------------------

    def _result(self) -> dict:
        cfg = self.cfg
        nodes = []
        for i in range(self.n):
            e = self.energy[i]
            life = self.post_install[i] / self.e_it[i] if self.e_it[i] > 0 else None
            nodes.append({
                "id": i,
                "x": self.positions[i].x,
                "y": self.positions[i].y,
                "role": self.role[i],
                "distance_m": self.dist_bs[i],
                "initial_j": self.initial[i],
                "ids_installs": self.installs[i],
                "post_install_j": self.post_install[i],
                "e_it_j_per_s": self.e_it[i],
                "lifetime_s": life,
                "consumed_j": e.consumed_j,
                "alive": e.alive,
                "death_time": self.death_time.get(i),
            })
        techniques = {}
        for tech in self.techniques:
            mons = self.monitors[tech]
            tot = {k: 0 for k in ("created", "matched", "expired", "expired_after_warning",
                                  "evicted", "pending", "good", "bad")}
            warnings: dict[int, int] = {}
            flagged: dict[int, list[int]] = {}
            wlog = []
            pairs = []
            for node in sorted(mons):
                m = mons[node]
                for f in sorted(set(m.good_by) | set(m.bad_by)):
                    pairs.append([node, f, m.good_by.get(f, 0), m.bad_by.get(f, 0)])
                for k in tot:
                    tot[k] += getattr(m, k)
                for s, c in m.warnings.items():
                    warnings[s] = warnings.get(s, 0) + c
                for s, v in m.verdicts.items():
                    if v is Verdict.MALICIOUS:
                        flagged.setdefault(s, []).append(node)
                wlog.extend([w.time, w.monitor, w.suspect, w.kind.value] for w in m.log)
            wlog.sort(key=lambda r: (r[0], r[1], r[2]))
            techniques[tech.value] = {
                "counters": tot,
                "warnings_by_suspect": {str(k): warnings[k] for k in sorted(warnings)},
                "malicious": {str(k): sorted(flagged[k]) for k in sorted(flagged)},
                "warnings": wlog,
                "pairs": pairs,
            }
        return {
            "tool": "iwatchdog",
            "version": __version__,
            "seed": cfg.seed,
            "config": cfg.to_dict(),
            "topology": self.topo.to_dict(),
            "nodes": nodes,
            "packets": dict(self.counts),
            "attackers": sorted(self.malicious),
            "attack_log": {str(k): self.truth[k] for k in sorted(self.truth)},
            "techniques": techniques,
            "alerts": self.alerts,
            "end_time": self.now,
        }


def build(cfg: ScenarioConfig) -> Simulation:
    return Simulation(cfg)


def run(cfg: ScenarioConfig, log_events: bool = False) -> ScenarioResult:
    sim = Simulation(cfg)
    result = sim.run(log_events=log_events)
    if log_events:
        result.data["_events"] = sim.event_log
    return result
