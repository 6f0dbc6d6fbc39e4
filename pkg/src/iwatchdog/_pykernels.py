"""Pure-Python implementations of the hot kernels.

These are the reference versions; ``_ckernels`` must agree with them bit for bit.
"""

import math

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
STREAM_MUL = 0xD1B54A32D192ED03
INV_2_53 = 1.0 / 9007199254740992.0


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_key(seed, stream):
    return mix64((seed * GOLDEN + (stream + 1) * STREAM_MUL) & MASK64)


def counter_u64(key, counter):
    return mix64(mix64((key + (counter + 1) * GOLDEN) & MASK64) ^ key)


def uniform(key, counter):
    return (counter_u64(key, counter) >> 11) * INV_2_53


def uniform_block(key, start, n):
    return [(counter_u64(key, start + i) >> 11) * INV_2_53 for i in range(n)]


def first_mismatch(a, b):
    if a == b:
        return 0
    n = min(len(a), len(b))
    for i in range(n):
        if a[i] != b[i]:
            return i + 1
    return n + 1


def audibility(xs, ys, ref_loss_db, exponent, threshold_db, offsets):
    """Row i lists every j != i whose transmission node i can sense.

    ``offsets[j]`` is transmitter j's power offset in dB.
    """
    n = len(xs)
    out = []
    for i in range(n):
        row = []
        xi = xs[i]
        yi = ys[i]
        for j in range(n):
            if i == j:
                continue
            d = math.hypot(xi - xs[j], yi - ys[j])
            level = 0.0 if d == 0 else -(ref_loss_db + 10.0 * exponent * math.log10(d))
            if level + offsets[j] >= threshold_db:
                row.append(j)
        out.append(row)
    return out
