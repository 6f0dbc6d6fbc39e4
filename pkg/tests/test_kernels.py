"""Compiled and pure-Python kernels must agree bit for bit."""

import importlib
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iwatchdog import _pykernels as py
from iwatchdog import kernels

try:
    ck = importlib.import_module("iwatchdog._ckernels")
except ImportError:  # pragma: no cover - depends on the build
    ck = None

needs_ext = pytest.mark.skipif(ck is None, reason="compiled extension not built")
u64 = st.integers(0, 2**64 - 1)


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_mix64_known_value():
    # splitmix64 finaliser of 0 is 0; of 1 is a fixed well-mixed word
    assert py.mix64(0) == 0
    assert py.mix64(1) == 0x5692161D100B05E5


@needs_ext
@given(u64)
def test_mix_parity(z):
    assert ck.mix64(z) == py.mix64(z)


@needs_ext
@given(u64, st.integers(0, 2**32), st.integers(0, 2**40))
def test_stream_parity(seed, stream, counter):
    key = py.stream_key(seed, stream)
    assert ck.stream_key(seed, stream) == key
    assert ck.counter_u64(key, counter) == py.counter_u64(key, counter)
    assert ck.uniform(key, counter) == py.uniform(key, counter)


@needs_ext
@given(u64, st.integers(0, 2**40), st.integers(0, 50))
def test_block_parity(key, start, n):
    assert list(ck.uniform_block(key, start, n)) == py.uniform_block(key, start, n)


@given(u64, st.integers(0, 2**40))
def test_uniform_in_unit_interval(key, c):
    u = kernels.uniform(key, c)
    assert 0.0 <= u < 1.0


@pytest.mark.parametrize("a,b,f", [(b"abc", b"abc", 0), (b"abc", b"abd", 3), (b"abc", b"abcd", 4),
                                   (b"", b"", 0), (b"", b"x", 1)])
def test_first_mismatch_examples(a, b, f):
    assert kernels.first_mismatch(a, b) == f
    assert py.first_mismatch(a, b) == f


@given(st.binary(max_size=64), st.binary(max_size=64))
def test_first_mismatch_oracle(a, b):
    f = kernels.first_mismatch(a, b)
    assert (f == 0) == (a == b)
    if f:
        i = f - 1
        assert a[:i] == b[:i]
        assert i == min(len(a), len(b)) or a[i] != b[i]
    if ck is not None:
        assert ck.first_mismatch(a, b) == py.first_mismatch(a, b)


coords = st.lists(st.tuples(st.floats(0, 100), st.floats(0, 100)), min_size=1, max_size=25)


@given(coords, st.floats(-80, -40), st.data())
def test_audibility_matches_brute_force(pts, thr, data):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    offs = data.draw(st.lists(st.sampled_from([0.0, -10.0, 3.0]), min_size=len(pts), max_size=len(pts)))
    rows = kernels.audibility(xs, ys, 40.0, 2.0, thr, offs)
    for i in range(len(pts)):
        want = []
        for j in range(len(pts)):
            if i == j:
                continue
            d = math.dist(pts[i], pts[j])
            level = 0.0 if d == 0 else -(40.0 + 20.0 * math.log10(d))
            if level + offs[j] >= thr:
                want.append(j)
        # the two distance routines may differ by an ulp exactly on the boundary
        assert set(rows[i]) ^ set(want) <= {j for j in range(len(pts)) if j != i and abs(
            -(40.0 + 20.0 * math.log10(max(math.dist(pts[i], pts[j]), 1e-300))) + offs[j] - thr) < 1e-9}


@needs_ext
@given(coords, st.floats(-80, -40))
def test_audibility_parity(pts, thr):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    offs = [0.0] * len(pts)
    assert [list(r) for r in ck.audibility(xs, ys, 40.0, 2.0, thr, offs)] == \
        py.audibility(xs, ys, 40.0, 2.0, thr, offs)


def test_pure_fallback_selected_by_env():
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from iwatchdog import kernels; print(kernels.BACKEND)"],
        env={**__import__("os").environ, "IWATCHDOG_PURE": "1"},
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
