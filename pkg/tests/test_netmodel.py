import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iwatchdog.netmodel import (
    Packet,
    Position,
    RadioModel,
    can_eavesdrop,
    euclidean_distance,
    received_level_db,
)

coord = st.floats(-1e4, 1e4, allow_nan=False)
points = st.builds(Position, coord, coord)


@pytest.mark.parametrize("a,b,d", [
    ((0, 0), (0, 0), 0.0),
    ((0, 0), (3, 4), 5.0),
    ((0, 0), (54, 0), 54.0),
])
def test_distance_examples(a, b, d):
    assert euclidean_distance(Position(*a), Position(*b)) == pytest.approx(d)


@given(points, points)
def test_distance_symmetric_nonnegative(a, b):
    assert euclidean_distance(a, b) == euclidean_distance(b, a) >= 0


def test_position_rejects_nan():
    with pytest.raises(ValueError):
        Position(math.nan, 0.0)


@pytest.mark.parametrize("d,level", [(10, -60.0), (1, -40.0), (10 ** (38 / 20), -78.0), (0, 0.0)])
def test_received_level(d, level):
    assert received_level_db(RadioModel(), d) == pytest.approx(level)


def test_received_level_negative_distance():
    with pytest.raises(ValueError):
        received_level_db(RadioModel(), -1)


@pytest.mark.parametrize("threshold,d,heard", [(-60, 10, True), (-60, 11, False), (-78, 56, True)])
def test_can_eavesdrop_examples(threshold, d, heard):
    m = RadioModel(sense_threshold_db=threshold)
    assert can_eavesdrop(m, Position(0, 0), Position(d, 0)) is heard


@pytest.mark.parametrize("threshold,radius", [(-60, 10.0), (-75, 56.234), (-78, 79.433)])
def test_radius(threshold, radius):
    assert RadioModel(sense_threshold_db=threshold).radius == pytest.approx(radius, abs=1e-3)


@given(points, points, st.floats(-90, -40), st.floats(0, 30))
def test_lower_threshold_never_shrinks_hearing(a, b, thr, extra):
    loud = RadioModel(sense_threshold_db=thr)
    quiet = RadioModel(sense_threshold_db=thr - extra)
    if can_eavesdrop(loud, a, b):
        assert can_eavesdrop(quiet, a, b)


@given(points, points, st.floats(-90, -40))
def test_eavesdrop_is_the_level_predicate(a, b, thr):
    m = RadioModel(sense_threshold_db=thr)
    level = received_level_db(m, euclidean_distance(a, b))
    assert can_eavesdrop(m, a, b) == (level >= thr)


def test_power_limited_transmitter_reaches_less():
    m = RadioModel()
    assert can_eavesdrop(m, Position(0, 0), Position(6, 0))
    assert not can_eavesdrop(m, Position(0, 0), Position(6, 0), tx_offset_db=-10)


def test_packet_size_and_validation():
    p = Packet(1, 0, 0, 2, b"\x00" * 32, header_bits=16)
    assert p.size_bits == 32 * 8 + 16
    with pytest.raises(ValueError):
        Packet(1, 3, 3, 3, b"x")
