import pytest
from hypothesis import given
from hypothesis import strategies as st

from iwatchdog.netmodel import Packet
from iwatchdog.watchdog import (
    MonitorState,
    Technique,
    Verdict,
    Warning,
    WarningKind,
    WatchdogBuffer,
    compare,
    conventional_observe,
    escalate,
    expire,
    observe_forward,
    observe_origin_send,
)

A, B, C, M, R = 0, 1, 2, 3, 4
PAYLOAD = bytes(range(32))


def send(seq=0, payload=PAYLOAD):
    return Packet(seq, A, A, C, payload)


def relay(seq=0, payload=PAYLOAD):
    return Packet(seq, A, B, C, payload)


def monitor(tech=Technique.IMPROVED, **kw):
    return MonitorState(M, tech, parent=R, **kw)


@pytest.mark.parametrize("a,b,f", [(b"abc", b"abc", 0), (b"abc", b"abd", 3), (b"abc", b"abcd", 4)])
def test_compare(a, b, f):
    assert compare(a, b) == f


@given(st.binary(max_size=40), st.binary(max_size=40))
def test_compare_zero_iff_equal(a, b):
    assert (compare(a, b) == 0) == (a == b)


def test_origin_send_buffers_one_entry():
    m = observe_origin_send(monitor(), send(), B, C, 0.0)
    assert len(m.buffer) == 1 and m.created == 1


def test_direct_send_creates_nothing():
    m = observe_origin_send(monitor(), Packet(0, A, A, B, PAYLOAD), B, None, 0.0)
    assert len(m.buffer) == 0


def test_buffer_overflow_evicts_oldest():
    buf = WatchdogBuffer(64)
    for i in range(64):
        assert buf.push(B, C, PAYLOAD, 0.0, 2.0, seq=i) is None
    evicted = buf.push(B, C, PAYLOAD, 0.0, 2.0, seq=64)
    assert evicted.seq == 0
    assert len(buf) == 64 and buf.overflow_count == 1
    assert buf.oldest_for(B, C).seq == 1


def test_faithful_forward_removes_entry():
    m = observe_origin_send(monitor(), send(), B, C, 0.0)
    m, w = observe_forward(m, relay(), C, 0.1)
    assert w is None and len(m.buffer) == 0 and m.good == 1


def test_modified_forward_warns_and_retains():
    m = observe_origin_send(monitor(), send(), B, C, 0.0)
    bad = bytearray(PAYLOAD)
    bad[3] ^= 1
    m, w = observe_forward(m, relay(payload=bytes(bad)), C, 0.1)
    assert w.kind is WarningKind.MODIFIED and w.suspect == B
    assert len(m.buffer) == 1 and m.warnings[B] == 1


def test_retained_entry_expires_without_second_warning():
    m = observe_origin_send(monitor(), send(), B, C, 0.0)
    observe_forward(m, relay(payload=b"\xff" * 32), C, 0.1)
    m, ws = expire(m, 5.0)
    assert ws == [] and m.warnings[B] == 1 and m.expired_after_warning == 1


def test_unsolicited_forward_is_ignored():
    m = monitor()
    m, w = observe_forward(m, relay(), C, 0.1)
    assert w is None and m.good == 0 and m.warnings == {}


def test_forward_pairs_by_sequence_number():
    m = monitor()
    observe_origin_send(m, send(seq=1, payload=b"a" * 8), B, C, 0.0)
    observe_origin_send(m, send(seq=2, payload=b"b" * 8), B, C, 0.1)
    # B relays the second packet first; it must not be judged against the first copy
    m, w = observe_forward(m, relay(seq=2, payload=b"b" * 8), C, 0.2)
    assert w is None and m.buffer.oldest_for(B, C).seq == 1


def test_expiry_examples():
    m = monitor()
    m, ws = expire(m, 10.0)
    assert ws == []
    observe_origin_send(m, send(), B, C, 0.0)
    m, ws = expire(m, 2.0)
    assert len(ws) == 1 and ws[0].kind is WarningKind.DROPPED and m.warnings[B] == 1


def test_three_drops_reach_threshold_three():
    m = monitor(warning_threshold=3)
    for s in range(3):
        observe_origin_send(m, send(seq=s), B, C, 0.0)
    expire(m, 2.0)
    assert m.verdicts[B] is Verdict.MALICIOUS


def test_threshold_crossing_emits_alert():
    m = monitor()
    m.warnings[B] = 4
    m, alert = escalate(m, Warning(M, B, WarningKind.DROPPED, 1.0, 0))
    assert m.verdicts[B] is Verdict.MALICIOUS
    assert alert.target == R and m.outbox == [alert]


def test_below_threshold_no_verdict():
    m = monitor()
    m.warnings[B] = 1
    m, alert = escalate(m, Warning(M, B, WarningKind.DROPPED, 1.0, 0))
    assert alert is None and B not in m.verdicts


def test_conventional_records_verdict_without_upstream_packet():
    m = MonitorState(A, Technique.CONVENTIONAL, warning_threshold=1)
    conventional_observe(m, send(), B, C, 0.0)
    expire(m, 2.0)
    assert m.is_malicious(B) and m.outbox == []


def test_conventional_observe_rejects_foreign_send():
    with pytest.raises(ValueError):
        conventional_observe(MonitorState(A, Technique.IMPROVED), send(), B, C, 0.0)
    with pytest.raises(ValueError):
        conventional_observe(MonitorState(M, Technique.CONVENTIONAL), send(), B, C, 0.0)


def test_receipt_only_trusted_by_conventional():
    conv = MonitorState(A, Technique.CONVENTIONAL)
    conventional_observe(conv, send(), B, C, 0.0)
    assert conv.observe_receipt(B, 0, 0.2) and len(conv.buffer) == 0
    imp = observe_origin_send(monitor(), send(), B, C, 0.0)
    assert not imp.observe_receipt(B, 0, 0.2) and len(imp.buffer) == 1


def test_invalid_monitor_settings():
    with pytest.raises(ValueError):
        MonitorState(M, Technique.IMPROVED, warning_threshold=0)
    with pytest.raises(ValueError):
        MonitorState(M, Technique.IMPROVED, timeout_s=-1)
    with pytest.raises(ValueError):
        WatchdogBuffer(0)


# a trace step: ("send", seq) | ("relay", seq, tamper) | ("tick", dt)
steps = st.lists(st.one_of(
    st.tuples(st.just("send"), st.integers(0, 30)),
    st.tuples(st.just("relay"), st.integers(0, 30), st.booleans()),
    st.tuples(st.just("tick"), st.floats(0, 1.5)),
), max_size=80)


def replay(trace, capacity=8, threshold=3):
    m = monitor(capacity=capacity, warning_threshold=threshold)
    now = 0.0
    verdict_times = {}
    for step in trace:
        if step[0] == "send":
            observe_origin_send(m, send(seq=step[1]), B, C, now)
        elif step[0] == "relay":
            payload = b"\x00" * 32 if step[2] else PAYLOAD
            observe_forward(m, relay(seq=step[1], payload=payload), C, now)
        else:
            now += step[1]
            expire(m, now)
        for s, v in m.verdicts.items():
            verdict_times.setdefault(s, v)
        # verdicts are never revoked
        assert all(m.verdicts.get(s) is v for s, v in verdict_times.items())
    return m


@given(steps)
def test_buffer_conservation(trace):
    m = replay(trace)
    assert m.created == m.matched + m.expired + m.expired_after_warning + m.evicted + m.pending


@given(steps)
def test_state_machine_is_deterministic(trace):
    a, b = replay(trace), replay(trace)
    assert (a.warnings, a.verdicts, a.good, a.bad, [w for w in a.log]) == \
        (b.warnings, b.verdicts, b.good, b.bad, [w for w in b.log])


@given(st.lists(st.integers(0, 30), max_size=40, unique=True))
def test_honest_trace_is_silent(seqs):
    """Every send relayed faithfully before its deadline yields no warning."""
    m = monitor()
    now = 0.0
    for s in seqs:
        observe_origin_send(m, send(seq=s), B, C, now)
        now += 0.1
        observe_forward(m, relay(seq=s), C, now)
        expire(m, now)
    expire(m, now + 100)
    assert m.warnings == {} and m.bad == 0
