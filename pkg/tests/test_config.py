"""INI scenario parsing and the bundled scenario files."""

import pytest

from hotelbot import (
    ProbabilityOutOfRange,
    SpecError,
    UnknownPartReference,
    list_bundled,
    load_bundled,
    load_config,
    loads_config,
    resolve_config,
)

MINIMAL = """
[parts]
labels = yellow, red, orange
common = yellow

[hotels]
type-a = red
type-b = orange
"""


def test_minimal_config_defaults():
    spec = loads_config(MINIMAL)
    assert spec.labels == ("yellow", "red", "orange")
    assert spec.worker.p_pause == 0.1 and spec.worker.p_mistake == 0.05
    assert spec.sensor_accuracy == 0.85
    assert spec.horizon == 100 and spec.discount == 0.99
    assert spec.initial_inventory == (0.5, 0.5, 0.5)


def test_inline_comments_and_spacing():
    spec = loads_config(MINIMAL + "\n[run]\ninventory = 0.25  # sparse start\n")
    assert spec.initial_inventory == (0.25, 0.25, 0.25)


def test_inventory_label_list():
    spec = loads_config(MINIMAL + "\n[run]\ninventory = red, orange\n")
    assert spec.initial_inventory == (0.0, 1.0, 1.0)


def test_inventory_label_probs():
    spec = loads_config(MINIMAL + "\n[run]\ninventory = yellow=0.2, red=0.9\n")
    assert spec.initial_inventory == (0.2, 0.9, 0.5)


def test_reward_override():
    spec = loads_config(MINIMAL + "\n[rewards]\nobserve_cost = -1.5\n")
    assert spec.rewards.observe_cost == -1.5
    assert spec.rewards.restock_redundant == -10.0


def test_intent_pin():
    spec = loads_config(MINIMAL + "\n[run]\nintent = type-b\n")
    assert spec.intent_index == 1


def test_unknown_inventory_label_rejected():
    with pytest.raises(UnknownPartReference):
        loads_config(MINIMAL + "\n[run]\ninventory = chartreuse\n")


def test_bad_probability_rejected():
    with pytest.raises(ProbabilityOutOfRange):
        loads_config(MINIMAL + "\n[worker]\np_pause = 1.3\n")


def test_missing_sections_rejected():
    with pytest.raises(SpecError):
        loads_config("[parts]\nlabels = a\ncommon = a\n")  # no [hotels]


def test_bundled_list_and_load():
    names = list_bundled()
    for name in ("bench_small", "bench_large", "bench_xl", "demo_six"):
        assert name in names
        spec = load_bundled(name)
        assert spec.n_parts >= 2


def test_bench_small_shape():
    spec = load_bundled("bench_small")
    assert spec.n_parts == 5 and spec.n_types == 2
    assert len(spec.common_parts) == 3


def test_demo_six_fixed_inventory():
    spec = load_bundled("demo_six")
    got = {lbl for lbl, q in zip(spec.labels, spec.initial_inventory) if q == 1.0}
    assert got == {"red", "purple", "magenta", "orange", "bright-green"}
    missing = {lbl for lbl, q in zip(spec.labels, spec.initial_inventory) if q == 0.0}
    assert missing == {"yellow", "dark-green", "black"}


def test_resolve_config_path_and_name(tmp_path):
    p = tmp_path / "scenario.cfg"
    p.write_text(MINIMAL)
    assert resolve_config(str(p)).labels == ("yellow", "red", "orange")
    assert resolve_config("demo_six").n_parts == 8
    with pytest.raises(SpecError):
        resolve_config("no_such_scenario")


def test_load_config_file(tmp_path):
    p = tmp_path / "scenario.cfg"
    p.write_text(MINIMAL + "\n[run]\nseed = 7\n")
    assert load_config(str(p)).master_seed == 7
