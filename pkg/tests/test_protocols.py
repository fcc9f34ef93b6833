import pytest

from ontic_toy.errors import BadSharedState
from ontic_toy.joint import ontic_equal
from ontic_toy.measurement import trial_rng
from ontic_toy.model import standard_four_domain, standard_two_domain
from ontic_toy.protocols import (default_shared, dense_coding, derive_correction_table, emit_outcome_table,
                                 replay, teleport, teleport_branches, teleport_channel)

from conftest import value

TWO = standard_two_domain()
FOUR = standard_four_domain()


def test_dense_coding_rows():
    t = dense_coding("01", None, TWO, trial_rng(1, 0))
    assert t.success and t.output == "01"
    assert t.events[1]["label"] == "A+1^xx"
    t = dense_coding("00", None, TWO, trial_rng(1, 0))
    assert t.events[1]["label"] == "C+1^xx"


@pytest.mark.parametrize("config", [TWO, FOUR], ids=["2d", "4d"])
def test_dense_coding_every_message(config):
    for message in ("00", "01", "10", "11"):
        for i in range(20):
            assert dense_coding(message, None, config, trial_rng(2, i)).success


def test_dense_coding_with_other_shared_state():
    t = dense_coding("11", value("A+1^xx", TWO), TWO, trial_rng(3, 0))
    assert t.success


def test_bad_shared_state():
    with pytest.raises(BadSharedState):
        dense_coding("00", value("C+1^xy", TWO), TWO)
    with pytest.raises(ValueError):
        dense_coding("2", None, TWO)


def _branches(text, config):
    # branch states are compared up to sign, like the printed expansions
    return {o.render(): s.render().lstrip("-") for o, s in teleport_branches(value(text, config), config)}


def test_two_domain_branches():
    assert _branches("|0>_x", TWO) == {"C+1^xx": "|0>_x", "C-1^xx": "|0>_x", "A+1^xx": "|1>_x", "A-1^xx": "|1>_x"}
    assert _branches("|0>_y", TWO) == {"C+1^xx": "|0>_y", "A+1^xx": "|0>_y", "C-1^xx": "|1>_y", "A-1^xx": "|1>_y"}
    assert _branches("|1>_y", TWO) == {
        "C-1^xx": "|0>_y", "A-1^xx": "|0>_y", "C+1^xx": "|1>_y", "A+1^xx": "|1>_y"}


def test_corrections():
    assert derive_correction_table(TWO) == {"C+1^xx": "I", "C-1^xx": "Py", "A+1^xx": "Px", "A-1^xx": "PyPx"}
    assert derive_correction_table(FOUR) == {"C+1^xx": "I", "C-1^xx": "Pyt", "A+1^xx": "Pxz", "A-1^xx": "PytPxz"}


def test_teleport_example_runs():
    for i in range(40):
        t = teleport(value("|0>_y", TWO), None, TWO, trial_rng(4, i))
        assert t.success and t.output.lstrip("-") == "|0>_y"
        if t.events[0]["label"] == "C-1^xx":
            assert t.events[2]["state"] == "|1>_y"
            assert t.events[3]["transformation"] == "Py"


@pytest.mark.parametrize("config", [TWO, FOUR], ids=["2d", "4d"])
def test_identity_channel(config):
    rows = teleport_channel(config)
    assert len(rows) == len(config.basis_states()) * 2 * 4
    assert all(r["ok"] for r in rows)


def test_four_domain_outcome_table():
    table = emit_outcome_table(FOUR)
    assert table["columns"] == ["C+1^xx", "C-1^xx", "A+1^xx", "A-1^xx"]
    rows = {k: [v[c].lstrip("-") for c in table["columns"]] for k, v in table["rows"].items()}
    assert rows["|0>_x"] == ["|0>_x", "|0>_x", "|1>_x", "|1>_x"]
    assert rows["|1>_y"] == ["|1>_y", "|0>_y", "|1>_y", "|0>_y"]
    assert rows["|0>_z"] == ["|0>_z", "|0>_z", "|1>_z", "|1>_z"]
    # printed as |1>_z and |0>_z; the receiver's system stays in the t domain
    assert rows["|0>_t"] == ["|0>_t", "|1>_t", "|0>_t", "|1>_t"]
    assert rows["|1>_t"] == ["|1>_t", "|0>_t", "|1>_t", "|0>_t"]


@pytest.mark.parametrize("config", [TWO, FOUR], ids=["2d", "4d"])
def test_replay(config):
    for i, k in enumerate(config.basis_states()):
        t = teleport(value(k.render(), config), None, config, trial_rng(6, i))
        assert replay(t, config) == t.output
        d = dense_coding(format(i % 4, "02b"), None, config, trial_rng(6, i))
        assert replay(d, config) == d.output


def test_transcripts_are_reproducible():
    a = teleport(value("|1>_z", FOUR), None, FOUR, trial_rng(8, 3)).to_dict()
    b = teleport(value("|1>_z", FOUR), None, FOUR, trial_rng(8, 3)).to_dict()
    assert a == b and a["schema"] == 1


def test_default_shared():
    assert default_shared().render() == "C+1^xx"
    assert ontic_equal(default_shared(), value("C+1^yy", TWO), TWO)
