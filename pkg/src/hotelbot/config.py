"""INI scenario files and the bundled example scenarios.

Format (all sections optional except [parts] and [hotels]):

    [parts]
    labels = yellow, purple, red       ; full part universe, order fixes indices
    common = yellow, purple            ; needed by every hotel type

    [hotels]
    type-a = red                       ; one option per type: its specific parts

    [worker]
    p_pause = 0.1
    p_mistake = 0.05

    [rewards]
    observe_cost = -0.5                ; any RewardTable field may be overridden

    [sensor]
    accuracy = 0.85

    [run]
    horizon = 100
    discount = 0.99
    inventory = 0.5                    ; prob | label list | label=prob list
    seed = 0
    intent =                           ; optional: fix the worker's hotel type
"""

from __future__ import annotations

import configparser
from importlib import resources
from typing import Union

from .domain import (
    HotelType,
    RewardTable,
    ScenarioSpec,
    SpecError,
    WorkerParams,
    validate_spec,
)

_REWARD_FIELDS = (
    "observe_cost",
    "restock_redundant",
    "restock_useful",
    "restock_other",
    "worker_blocked",
    "worker_assembled",
    "hotel_completed",
    "wait_cost",
)


def _split_list(value: str) -> list:
    return [item.strip() for item in value.split(",") if item.strip()]


def _parse_inventory(value: str) -> Union[float, dict, list]:
    value = value.strip()
    if not value:
        return 0.5
    try:
        return float(value)
    except ValueError:
        pass
    items = _split_list(value)
    if any("=" in item for item in items):
        mapping = {}
        for item in items:
            if "=" not in item:
                raise SpecError(f"inventory entry {item!r} lacks '=' in a label=prob list")
            lbl, _, prob = item.partition("=")
            try:
                mapping[lbl.strip()] = float(prob)
            except ValueError:
                raise SpecError(f"inventory probability {prob!r} is not a number") from None
        return mapping
    return items


def _new_parser() -> configparser.ConfigParser:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str  # hotel type names and labels keep their case
    return parser


def spec_from_parser(parser: configparser.ConfigParser) -> ScenarioSpec:
    if not parser.has_section("parts"):
        raise SpecError("config is missing the [parts] section")
    if not parser.has_option("parts", "labels"):
        raise SpecError("[parts] must define 'labels'")
    labels = _split_list(parser.get("parts", "labels"))
    common = frozenset(_split_list(parser.get("parts", "common", fallback="")))

    if not parser.has_section("hotels"):
        raise SpecError("config is missing the [hotels] section")
    hotel_types = tuple(
        HotelType(name, frozenset(_split_list(value)))
        for name, value in parser.items("hotels")
    )

    worker = WorkerParams(
        p_pause=parser.getfloat("worker", "p_pause", fallback=0.1),
        p_mistake=parser.getfloat("worker", "p_mistake", fallback=0.05),
    )
    reward_kwargs = {
        f: parser.getfloat("rewards", f)
        for f in _REWARD_FIELDS
        if parser.has_option("rewards", f)
    }
    if parser.has_section("rewards"):
        unknown = set(parser.options("rewards")) - set(_REWARD_FIELDS)
        if unknown:
            raise SpecError(f"unknown reward fields: {sorted(unknown)}")
    intent = parser.get("run", "intent", fallback="").strip() or None

    raw = ScenarioSpec(
        parts=tuple(labels),
        common_parts=common,
        hotel_types=hotel_types,
        worker=worker,
        rewards=RewardTable(**reward_kwargs),
        sensor_accuracy=parser.getfloat("sensor", "accuracy", fallback=0.85),
        horizon=parser.getint("run", "horizon", fallback=100),
        discount=parser.getfloat("run", "discount", fallback=0.99),
        initial_inventory=_parse_inventory(parser.get("run", "inventory", fallback="")),
        master_seed=parser.getint("run", "seed", fallback=0),
        initial_intent=intent,
    )
    return validate_spec(raw)


def loads_config(text: str) -> ScenarioSpec:
    parser = _new_parser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise SpecError(f"malformed config: {exc}") from None
    return spec_from_parser(parser)


def load_config(path: str) -> ScenarioSpec:
    parser = _new_parser()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise SpecError(f"malformed config {path!r}: {exc}") from None
    return spec_from_parser(parser)


def list_bundled() -> list:
    root = resources.files(__package__) / "configs"
    return sorted(p.name[: -len(".cfg")] for p in root.iterdir() if p.name.endswith(".cfg"))


def load_bundled(name: str) -> ScenarioSpec:
    """Load a packaged scenario by name (see list_bundled)."""
    root = resources.files(__package__) / "configs"
    candidate = root / f"{name}.cfg"
    if not candidate.is_file():
        raise SpecError(f"no bundled config {name!r}; available: {list_bundled()}")
    return loads_config(candidate.read_text(encoding="utf-8"))


def resolve_config(name_or_path: str) -> ScenarioSpec:
    """Treat the argument as a file path first, then as a bundled name."""
    import os

    if os.path.exists(name_or_path):
        return load_config(name_or_path)
    return load_bundled(name_or_path)
