"""First-order radio energy model and per-node energy accounting.

All quantities are SI: joules, seconds, metres, bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class InsufficientEnergy(ValueError):
    pass


@dataclass(frozen=True)
class EnergyParams:
    a1: float = 50e-9  # J/bit, transmitter electronics
    a2: float = 100e-12  # J/bit/m^n, transmit amplifier
    n: float = 2.0
    B: float = 50e-9  # J/bit, receiver electronics
    R: float = 1.0  # ohm
    I: float = 8e-3  # A, active-mode current

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("path-loss exponent n must be positive")
        for name in ("a1", "a2", "B", "R", "I"):
            if getattr(self, name) < 0:
                raise ValueError(f"energy parameter {name} must be non-negative")


@dataclass(frozen=True)
class TrafficRates:
    r_ri: float = 512.0  # received bits/s
    r_gi: float = 512.0  # generated bits/s

    def __post_init__(self):
        if self.r_ri < 0 or self.r_gi < 0:
            raise ValueError("traffic rates must be non-negative")


@dataclass
class EnergyState:
    initial_j: float
    consumed_j: float = 0.0
    per_second_j: float = 0.0
    alive: bool = True

    def __post_init__(self):
        if self.initial_j < 0 or self.per_second_j < 0:
            raise ValueError("energies must be non-negative")
        if self.initial_j == 0:
            self.alive = False

    @property
    def remaining_j(self) -> float:
        return self.initial_j - self.consumed_j


def transmit_power_per_bit(p: EnergyParams, d: float) -> float:
    if d < 0:
        raise ValueError("distance must be non-negative")
    return p.a1 + p.a2 * d**p.n


def receive_power_per_bit(p: EnergyParams) -> float:
    return p.B


def per_second_consumption(p: EnergyParams, rates: TrafficRates, d: float) -> float:
    ps = transmit_power_per_bit(p, d)
    return rates.r_ri * receive_power_per_bit(p) + (rates.r_ri + rates.r_gi) * ps


def boot_energy(p: EnergyParams, boot_time_s: float) -> float:
    if boot_time_s < 0:
        raise ValueError("boot time must be non-negative")
    return p.R * p.I**2 * boot_time_s


def lifetime(e: EnergyState) -> float:
    """Seconds until depletion at the cached per-second rate."""
    if e.initial_j == 0:
        return 0.0
    if e.per_second_j == 0:
        return math.inf
    return e.initial_j / e.per_second_j


def residual_after_ids(e_i: float, e_p: float) -> float:
    if e_p < 0:
        raise ValueError("install energy must be non-negative")
    if e_p > e_i:
        raise InsufficientEnergy("insufficient energy to install IDS")
    return e_i - e_p


def debit(e: EnergyState, joules_spent: float) -> EnergyState:
    """Charge ``joules_spent`` against ``e`` in place, clamping at depletion."""
    if joules_spent < 0:
        raise ValueError("cannot debit negative energy")
    if not e.alive:
        return e
    remaining = e.initial_j - e.consumed_j
    if joules_spent >= remaining:
        e.consumed_j = e.initial_j
        e.alive = False
    else:
        e.consumed_j += joules_spent
    return e
