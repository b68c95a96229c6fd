import math
import os

import numpy as np
import pytest

import sympat

SCENARIOS = os.environ["SYMPAT_SCENARIO_DIR"]


def load(name):
    return sympat.parse_scenario(os.path.join(SCENARIOS, name))


def test_parse_and_digest_roundtrip():
    s = load("fn_antisync.json")
    assert s.node_count == 5
    assert s.state_dim == 2
    assert s.group_count == 2
    assert s.coupling_gain == 1.0
    assert len(s.digest) == 16
    again = sympat.parse_scenario_text(s.canonical_json())
    assert again.digest == s.digest
    assert s.digest in repr(s)


def test_simulate_shapes_and_branches():
    s = load("pitchfork_design.json")
    times, states = sympat.simulate(s)
    assert states.shape == (times.shape[0], 5)
    assert times[0] == 0.0 and times[-1] == pytest.approx(10.0)

    finals = states[-1]
    assert np.abs(np.abs(finals) - math.sqrt(5.0)).max() <= 1e-6
    signs = np.sign(finals)
    assert signs[0] == signs[2]  # group G: nodes 1 and 3
    assert signs[1] == signs[3] == signs[4] == -signs[0]


def test_verify_achieves_the_pattern():
    out = sympat.verify(load("pitchfork_design.json"))
    assert out["achieved"] and not out["forced"]
    assert out["audit"]["overall"]
    assert out["pattern"]["within_group_error"] <= 1e-3
    assert out["pattern"]["cross_group_error"] <= 1e-3


def test_h1_failure_raises_unless_forced():
    with pytest.raises(sympat.HypothesisError):
        sympat.verify(load("fn_classic.json"))
    forced = sympat.verify(load("fn_classic.json"), force=True)
    assert forced["forced"] and not forced["achieved"]
    assert forced["audit"]["h1_residual"] == pytest.approx(2 * 0.7 / 3, rel=1e-9)


def test_audit_of_the_uncoupled_network():
    a = sympat.audit(load("fn_k0.json"))
    assert a["h1"] and a["h2"] and not a["h3"] and not a["overall"]
    assert a["h1_per_symmetry"][0]["samples"] == 200


def test_protocol_table():
    table = sympat.protocol_table(load("fn_antisync.json"))
    entries = {(i, j): np.asarray(m) for i, j, m in table}
    assert len(entries) == 8  # four edges, both directions
    assert np.array_equal(entries[(1, 2)], -np.eye(2))
    assert np.array_equal(entries[(2, 1)], -np.eye(2))
    assert np.array_equal(entries[(1, 3)], np.eye(2))
