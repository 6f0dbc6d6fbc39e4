import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iwatchdog import simengine
from iwatchdog.config import ScenarioConfig
from iwatchdog.metrics import (
    ForwardCounters,
    MetricsError,
    compare_models,
    error_ratio,
    lifetime_histogram,
    lifetime_table,
    mean_error_rate,
    network_lifetime,
)


@pytest.mark.parametrize("bad,good,ratio", [(0, 10, 0.0), (10, 0, 255.0), (5, 5, 127.5)])
def test_error_ratio_examples(bad, good, ratio):
    assert error_ratio(ForwardCounters(good, bad)) == ratio


def test_error_ratio_needs_observations():
    with pytest.raises(MetricsError, match="no observations"):
        error_ratio(ForwardCounters(0, 0))
    with pytest.raises(MetricsError):
        ForwardCounters(-1, 0)


@given(st.lists(st.booleans(), min_size=1, max_size=500))
def test_error_ratio_matches_event_recount(events):
    bad = sum(1 for dropped in events if dropped)
    c = ForwardCounters(len(events) - bad, bad)
    assert error_ratio(c) == float(Fraction(255 * bad, len(events)))
    assert 0 <= error_ratio(c) <= 255


def test_mean_error_rate():
    assert mean_error_rate([100.0]) == 100.0
    assert mean_error_rate([0.0, 255.0]) == 127.5
    with pytest.raises(MetricsError):
        mean_error_rate([])


def test_histogram_examples():
    assert [p for _, p in lifetime_histogram([10000, 30000, 50000, 70000])] == [25.0] * 4
    assert [p for _, p in lifetime_histogram([1, 2, 3])] == [100.0, 0.0, 0.0, 0.0]
    with pytest.raises(MetricsError):
        lifetime_histogram([])
    with pytest.raises(MetricsError):
        lifetime_histogram([1.0], edges=[5, 5])


@given(st.lists(st.floats(0, 1e6), min_size=1, max_size=200))
def test_histogram_sums_to_hundred(lives):
    assert sum(p for _, p in lifetime_histogram(lives)) == pytest.approx(100.0, abs=1e-9)


def _result(lifetimes, installs=None, e_p=0.025, ch=(0,)):
    installs = installs or [1] * len(lifetimes)
    return {
        "config": {"ids_energy_j": e_p},
        "topology": {"cells_l1": [{"cluster_head": h} for h in ch], "cells_l2": []},
        "nodes": [{"id": i, "lifetime_s": L, "ids_installs": k, "distance_m": 1.0,
                   "post_install_j": L, "e_it_j_per_s": 1.0, "death_time": None}
                  for i, (L, k) in enumerate(zip(lifetimes, installs))],
    }


def test_compare_identical_runs():
    r = _result([1.0, 2.0, 3.0])
    rep = compare_models(r, r)
    assert set(rep.per_node_delta_s.values()) == {0.0} and rep.total_delta_s == 0
    assert rep.unchanged == [0, 1, 2]


def test_compare_counts_saved_installs():
    hier = _result([5.0, 4.0, 3.0], installs=[2, 0, 0])
    flat = _result([4.0, 3.0, 3.0], installs=[1, 1, 1])
    rep = compare_models(hier, flat)
    assert rep.total_energy_saved_j == pytest.approx(0.025)
    assert rep.max_delta == (0, 1.0) and rep.unchanged == [2]


def test_compare_rejects_different_nodes():
    with pytest.raises(MetricsError):
        compare_models(_result([1.0]), _result([1.0, 2.0]))


@given(st.lists(st.tuples(st.floats(0, 1e6), st.floats(0, 1e6)), min_size=1, max_size=30))
def test_compare_antisymmetric(pairs):
    a = _result([p[0] for p in pairs])
    b = _result([p[1] for p in pairs])
    ab, ba = compare_models(a, b), compare_models(b, a)
    assert all(ab.per_node_delta_s[i] == -ba.per_node_delta_s[i] for i in ab.per_node_delta_s)


def test_network_lifetime_examples():
    assert network_lifetime(_result([100.0])) == 100.0
    assert network_lifetime(_result([100.0]), "first_ch_death") == 100.0
    assert network_lifetime(_result([1.0, 2.0, 3.0])) == 6.0
    r = _result([1.0, 2.0, 3.0], ch=(1, 2))
    r["nodes"][2]["death_time"] = 7.5
    assert network_lifetime(r, "first_ch_death") == 7.5


def test_lifetime_table_from_run():
    r = simengine.run(ScenarioConfig(node_count=12, duration_s=1.0,
                                     initial_energy_j=[0.0] + [5.0] * 11, ids_energy_j=0.0)).data
    rows = lifetime_table(r)
    assert [row.node for row in rows] == list(range(12))
    assert rows[0].lifetime_s == 0.0
    for row in rows[1:]:
        assert row.lifetime_s * row.e_it == pytest.approx(row.e_i, rel=1e-12)


def test_sum_lifetime_grows_with_network_size():
    from iwatchdog.scenarios import growth_config
    sums = [network_lifetime(simengine.run(growth_config(n)).data) for n in (50, 100, 200)]
    assert sums[0] < sums[1] < sums[2]
    assert all(math.isfinite(s) for s in sums)
