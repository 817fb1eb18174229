import json
from fractions import Fraction

import numpy as np
import pytest

from almost_abelian import catalog
from almost_abelian.catalog import (
    ENTRY_NAMES,
    UnknownEntryError,
    get_entry,
    list_entries,
    nilpotent_almost_kahler_property,
    run_all,
    run_entry,
)
from almost_abelian.cli import dumps
from almost_abelian.core import decompose, is_unimodular
from almost_abelian.gray_hervella import classify_oracle
from almost_abelian.harmonicity import is_harmonic_oracle

GOLDEN = {
    "dim4-W-harmonic": (True, "W", "Z^2"),
    "dim4-aK-harmonic": (True, "W2", "Z^2"),
    "dim4-aK-nonharmonic": (False, "W2", "Z^2"),
    "dim4-integrable-nonharmonic": (False, "W4", "Z^2 + Z_2"),
    "kodaira-thurston": (True, "W2", "Z^3"),
    "nilpotent-3step-W": (True, "W", "Z^2"),
    "W2-harmonic-2n": (True, "W2", "Z^2"),
    "W2W3-harmonic": (True, "W2+W3", "Z^3"),
    "W1W2W3-harmonic": (True, "W1+W2+W3", "Z^2 + Z_2"),
    "W2W4-harmonic": (True, "W2+W4", "Z^2 + Z_5"),
    "W3W4-integrable-harmonic": (True, "W3+W4", "Z^3 + Z_2"),
    "W2W3W4-harmonic": (True, "W2+W3+W4", "Z^2 + Z_2 + Z_2"),
    "W-harmonic-2n": (True, "W", "Z^4 + Z_2 + Z_2 + Z_2"),
    "skt-family": (True, "W3+W4", "Z + Z_2"),
    "skt-case-ii": (True, "W3+W4", "Z^3 + Z_2"),
}


def test_fifteen_entries():
    assert len(ENTRY_NAMES) == 15 == len(set(ENTRY_NAMES))
    assert list_entries() == list(ENTRY_NAMES)
    assert set(GOLDEN) == set(ENTRY_NAMES)


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_entry_passes(name):
    rep = run_entry(name)
    assert rep.passed, rep.to_dict()


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_expected_verdicts_recomputed_independently(name):
    entry = get_entry(name)
    harmonic, cls, group = GOLDEN[name]
    dec = decompose(entry.spec())
    assert entry.expected["harmonic"] is harmonic
    assert is_harmonic_oracle(dec).harmonic is harmonic
    assert entry.expected["genuine_class"] == cls
    assert classify_oracle(dec).genuine == cls
    assert entry.expected["lattice"]["abelianization"] == group
    assert is_unimodular(dec.spec)


@pytest.mark.parametrize("name,params", [
    ("dim4-W-harmonic", {"m": 7}),
    ("W2-harmonic-2n", {"n": 4, "m": 5}),
    ("W2W3-harmonic", {"n": 4}),
    ("W1W2W3-harmonic", {"n": 4, "b": "1/3"}),
    ("W2W4-harmonic", {"n": 5}),
    ("W3W4-integrable-harmonic", {"n": 4, "a": Fraction(2, 3), "b": 1}),
    ("W2W3W4-harmonic", {"n": 4, "m": 4}),
    ("W-harmonic-2n", {"n": 5, "a": 2, "b": Fraction(2, 3)}),
    ("skt-family", {"n": 2}),
    ("skt-family", {"n": 4, "cubic": (-1, -1, -1)}),
    ("skt-case-ii", {"n": 4, "b": 1}),
    ("dim4-integrable-nonharmonic", {"a": Fraction(1, 3)}),
])
def test_parameter_sweeps(name, params):
    rep = run_entry(name, **params)
    assert rep.passed, rep.to_dict()


def test_W2W4_lattice_only_in_dimension_six():
    assert get_entry("W2W4-harmonic", n=4).expected["lattice"] is None
    assert get_entry("W2W4-harmonic", m=4).expected["lattice"]["abelianization"] == "Z^2 + Z_2 + Z_12"


def test_W_example_needs_n_at_least_4():
    with pytest.raises(ValueError):
        get_entry("W-harmonic-2n", n=3)


def test_unknown_entry_lists_names():
    with pytest.raises(UnknownEntryError) as err:
        get_entry("nope")
    assert "kodaira-thurston" in str(err.value)
    assert isinstance(err.value, LookupError)


def test_failure_is_reported(monkeypatch):
    real = catalog._BUILDERS["kodaira-thurston"]

    def wrong():
        data = real()
        data["expected"] = dict(data["expected"], genuine_class="W4")
        return data

    monkeypatch.setitem(catalog._BUILDERS, "kodaira-thurston", wrong)
    rep = run_entry("kodaira-thurston")
    assert not rep.passed
    assert rep.to_dict()["checks"]["genuine_class"]["actual"] == "W2"


def test_nilpotent_property():
    out = nilpotent_almost_kahler_property(samples=50)
    assert out["holds"] and out["symbolic"] and out["samples"] > 0


def test_reports_are_json_serializable():
    text = dumps(run_all())
    data = json.loads(text)
    assert all(d["passed"] for d in data)
    assert dumps(get_entry("skt-family"))


def test_integrable_companion_is_kaehler():
    exp = get_entry("dim4-integrable-nonharmonic").expected
    assert exp["companion"]["genuine_class"] == "Kaehler"
    L = np.array(exp["companion"]["L"])
    assert np.allclose(L, -L.T)
