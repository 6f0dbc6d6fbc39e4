from hypothesis import given
from hypothesis import strategies as st

from iwatchdog.rng import Purpose, RngStream, node_stream, rng, stream_id

seeds = st.integers(0, 2**64 - 1)


@given(seeds, st.integers(0, 10**6))
def test_same_seed_and_stream_repeat(seed, stream):
    a, b = rng(seed, stream), rng(seed, stream)
    assert [a.random() for _ in range(20)] == [b.random() for _ in range(20)]


@given(seeds, st.integers(0, 1000), st.lists(st.integers(0, 500), min_size=1, max_size=20))
def test_position_addressable(seed, stream, order):
    s = rng(seed, stream)
    sequential = s.block(501)
    probe = rng(seed, stream)
    for k in order:
        assert probe.at(k) == sequential[k]


def test_block_advances_cursor():
    a, b = rng(3, 9), rng(3, 9)
    first = a.block(5)
    assert [b.random() for _ in range(5)] == first
    assert a.random() == b.random()


def test_stream_ids_distinct():
    ids = {stream_id(n, p) for n in range(300) for p in Purpose}
    assert len(ids) == 300 * len(Purpose)


def test_streams_uncorrelated_chi_square():
    """Pairs (u_a, u_b) from two streams fill a 10x10 grid evenly."""
    n, bins = 20000, 10
    a = node_stream(1, 5, Purpose.ATTACK).block(n)
    b = node_stream(1, 6, Purpose.ATTACK).block(n)
    grid = [[0] * bins for _ in range(bins)]
    for x, y in zip(a, b):
        grid[int(x * bins)][int(y * bins)] += 1
    exp = n / bins**2
    chi2 = sum((c - exp) ** 2 / exp for row in grid for c in row)
    # 99 degrees of freedom; 0.999 quantile is about 148
    assert chi2 < 148.2


def test_uniform_marginal_chi_square():
    n, bins = 20000, 20
    counts = [0] * bins
    for u in rng(42, 1).block(n):
        counts[int(u * bins)] += 1
    exp = n / bins
    assert sum((c - exp) ** 2 / exp for c in counts) < 43.8  # 19 dof, 0.999 quantile


@given(seeds, st.integers(1, 50), st.data())
def test_sample_distinct(seed, size, data):
    k = data.draw(st.integers(0, size))
    got = rng(seed, 0).sample(list(range(size)), k)
    assert len(got) == k == len(set(got))
    assert set(got) <= set(range(size))


@given(seeds, st.integers(1, 1000))
def test_randrange_bounds(seed, n):
    s = RngStream(seed, 2)
    assert all(0 <= s.randrange(n) < n for _ in range(20))


def test_uniform_range():
    s = rng(1, 1)
    assert all(1000 <= s.uniform(1000, 2000) < 2000 for _ in range(100))
