"""Counter-based, splittable random streams.

A stream is identified by ``(seed, stream_id)``; draw ``k`` is a pure function
of those three integers, so streams never perturb one another and draws can be
taken in any order.
"""

from __future__ import annotations

from enum import IntEnum

from . import kernels


class Purpose(IntEnum):
    POSITION = 1
    BOOT_TIME = 2
    PHASE = 3
    TRIAD = 4
    ATTACK = 5
    ATTACKER_PICK = 6
    PAYLOAD = 7


def stream_id(node: int, purpose: int) -> int:
    return (node << 6) | int(purpose)


class RngStream:
    __slots__ = ("seed", "stream", "key", "counter")

    def __init__(self, seed: int, stream: int):
        self.seed = seed
        self.stream = stream
        self.key = kernels.stream_key(seed, stream)
        self.counter = 0

    def at(self, k: int) -> float:
        """Draw number ``k`` of this stream, independent of the cursor."""
        return kernels.uniform(self.key, k)

    def random(self) -> float:
        u = kernels.uniform(self.key, self.counter)
        self.counter += 1
        return u

    def block(self, n: int) -> list[float]:
        out = kernels.uniform_block(self.key, self.counter, n)
        self.counter += n
        return out

    def randrange(self, n: int) -> int:
        return min(int(self.random() * n), n - 1)

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def sample(self, population: list, k: int) -> list:
        """Partial Fisher-Yates draw of ``k`` distinct items."""
        pool = list(population)
        for i in range(k):
            j = i + self.randrange(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def rng(seed: int, stream: int) -> RngStream:
    return RngStream(seed, stream)


def node_stream(seed: int, node: int, purpose: Purpose) -> RngStream:
    return RngStream(seed, stream_id(node, purpose))
