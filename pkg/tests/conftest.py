"""Shared scenario fixtures; all tiny and deterministic."""

import pytest

from hotelbot import HotelType, ScenarioSpec, WorkerParams, validate_spec


def build_spec(**overrides):
    """2-part, 2-type micro domain (one common, one specific pair collapsed)."""
    base = dict(
        parts=("yellow", "red"),
        common_parts=("yellow",),
        hotel_types=(
            HotelType("type-a", frozenset(["red"])),
            HotelType("type-b", frozenset()),
        ),
        worker=WorkerParams(0.1, 0.05),
        initial_inventory=0.5,
        master_seed=0,
    )
    base.update(overrides)
    return validate_spec(ScenarioSpec(**base))


@pytest.fixture
def two_part_spec():
    return build_spec()


@pytest.fixture
def one_part_spec():
    """1 part, 1 type, deterministic worker, part certainly absent; horizon 3."""
    return build_spec(
        parts=("yellow",),
        common_parts=("yellow",),
        hotel_types=(HotelType("only", frozenset()),),
        worker=WorkerParams(0.0, 0.0),
        initial_inventory=0.0,
        horizon=3,
    )


@pytest.fixture
def three_part_spec():
    """3 parts, 2 types; roomy enough for mistake/removal branches."""
    return build_spec(
        parts=("yellow", "red", "orange"),
        common_parts=("yellow",),
        hotel_types=(
            HotelType("type-a", frozenset(["red"])),
            HotelType("type-b", frozenset(["orange"])),
        ),
    )
