# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``."""

from libc.math cimport hypot, log10
from libc.stdint cimport uint64_t

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t STREAM_MUL = 0xD1B54A32D192ED03ULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t _counter_u64(uint64_t key, uint64_t counter) nogil:
    return _mix64(_mix64(key + (counter + 1) * GOLDEN) ^ key)


def mix64(z):
    return _mix64(<uint64_t>(z & 0xFFFFFFFFFFFFFFFF))


def stream_key(seed, stream):
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t t = <uint64_t>((stream + 1) & 0xFFFFFFFFFFFFFFFF)
    return _mix64(s * GOLDEN + t * STREAM_MUL)


def counter_u64(uint64_t key, uint64_t counter):
    return _counter_u64(key, counter)


def uniform(uint64_t key, uint64_t counter):
    return (_counter_u64(key, counter) >> 11) * INV_2_53


def uniform_block(uint64_t key, uint64_t start, Py_ssize_t n):
    cdef Py_ssize_t i
    cdef list out = [0.0] * n
    for i in range(n):
        out[i] = (_counter_u64(key, start + i) >> 11) * INV_2_53
    return out


def first_mismatch(const unsigned char[:] a, const unsigned char[:] b):
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    cdef Py_ssize_t n = la if la < lb else lb
    cdef Py_ssize_t i
    for i in range(n):
        if a[i] != b[i]:
            return i + 1
    if la == lb:
        return 0
    return n + 1


def audibility(xs, ys, double ref_loss_db, double exponent, double threshold_db, offsets):
    cdef Py_ssize_t n = len(xs), i, j
    cdef double[:] cx = memoryview_of(xs)
    cdef double[:] cy = memoryview_of(ys)
    cdef double[:] co = memoryview_of(offsets)
    cdef double d, level
    cdef list out = []
    cdef list row
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                continue
            d = hypot(cx[i] - cx[j], cy[i] - cy[j])
            if d == 0:
                level = 0.0
            else:
                level = -(ref_loss_db + 10.0 * exponent * log10(d))
            if level + co[j] >= threshold_db:
                row.append(j)
        out.append(row)
    return out


cdef double[:] memoryview_of(seq):
    import array
    return array.array("d", [float(v) for v in seq])
