import pytest

from mageto.analysis import (
    BASELINE, AttackReport, first_byte_attack, verify_v2_evolution_identity,
    verify_v3_row_identity,
)
from mageto.ca import mixed_state
from mageto.errors import InsufficientData
from mageto.variants import capture_v2_trace, capture_v3_trace, v1_keystream, v2_init

# Reference run on 20 keys x 64 evolutions: broken5 hit 0.668, secure 0.00388
# (1/256 = 0.00391). Per key, broken5 stays above 0.6 and secure below 0.01.
BROKEN5_FLOOR = 0.5
SECURE_CEILING = 0.01


def observed(pattern, seed=b"attack", evolutions=64):
    st = mixed_state(seed)
    return v1_keystream(st, pattern, evolutions * 128, unlock_analysis=True)


def test_broken5_attack_succeeds():
    r = first_byte_attack(observed("broken5"), "broken5", 64)
    assert r.predictions == 63 * 128 - 1
    assert r.accuracy > BROKEN5_FLOOR


def test_secure_attack_fails():
    r = first_byte_attack(observed("secure"), "secure", 64)
    assert r.accuracy < SECURE_CEILING


def test_two_evolutions_minimum():
    r = first_byte_attack(observed("broken5", evolutions=2), "broken5", 2)
    assert r.predictions == 127
    with pytest.raises(InsufficientData):
        first_byte_attack(observed("broken5", evolutions=1), "broken5", 1)
    with pytest.raises(InsufficientData):
        first_byte_attack(observed("broken5", evolutions=2)[:-1], "broken5")


def test_pairs_pattern_rejected():
    with pytest.raises(ValueError):
        first_byte_attack(bytes(1024), "brokenpairs")


def test_report_text():
    r = AttackReport("broken5", 200, 50)
    assert r.accuracy == 0.25 and r.baseline == BASELINE
    lines = dict(line.split("\t") for line in r.to_text().splitlines())
    assert lines == {"pattern": "broken5", "predictions": "200", "hits": "50",
                     "accuracy": "0.250000", "baseline": "0.003906"}


@pytest.mark.parametrize("width", [32, 64])
def test_v3_row_identity(width):
    from mageto.ca import CaParams
    tr = capture_v3_trace(mixed_state(b"rows", CaParams(b=width)), 8)
    assert verify_v3_row_identity(tr)
    tr.outputs[3, 17] ^= 1
    assert not verify_v3_row_identity(tr)


def test_v3_row_identity_empty():
    tr = capture_v3_trace(mixed_state(b"rows"), 0)
    assert verify_v3_row_identity(tr)


def test_v2_evolution_identity():
    tr = capture_v2_trace(v2_init(b"evo"), 8)
    assert verify_v2_evolution_identity(tr)
    tr.carries[0][5, 9] ^= 1 << 31
    assert not verify_v2_evolution_identity(tr)


def test_v2_evolution_identity_triple_and_short():
    assert verify_v2_evolution_identity(capture_v2_trace(v2_init(b"evo", triple=True), 8))
    assert verify_v2_evolution_identity(capture_v2_trace(v2_init(b"evo"), 1))
