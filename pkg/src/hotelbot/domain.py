"""Assembly domain: parts, hotel types, states, actions, observations, rewards.

Parts are color-coded and identified by label; internally every part set is a
bitmask over contiguous part indices so the hot kernels can work on plain
integers. A scenario fixes the part universe, the hotel types (each needing
the common parts plus its own specific parts), the worker's stochasticity,
the reward table and the sensing model.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

import numpy as np


class SpecError(ValueError):
    """A scenario configuration violates a structural constraint."""


class DisjointnessViolation(SpecError):
    pass


class ProbabilityOutOfRange(SpecError):
    pass


class EmptyRequiredSet(SpecError):
    pass


class UnknownPartReference(SpecError):
    pass


class UnknownHotelType(SpecError):
    pass


class CalledOnTerminalState(RuntimeError):
    """A transition was requested from a state that is already terminal."""


MAX_PARTS = 30  # part sets live in int64 bitmasks; plenty for desk scale


@dataclass(frozen=True)
class PartId:
    """A color-coded part; index is its bit position within a scenario."""

    label: str
    index: int


@dataclass(frozen=True)
class HotelType:
    """A goal variant: needs the scenario's common parts plus these specifics."""

    name: str
    specific_parts: frozenset = frozenset()


@dataclass(frozen=True)
class RewardTable:
    """Per-event rewards. Defaults follow the benchmark problem."""

    observe_cost: float = -0.5
    restock_redundant: float = -10.0
    restock_useful: float = 2.0
    restock_other: float = -2.0
    worker_blocked: float = -2.0
    worker_assembled: float = 2.0
    hotel_completed: float = 5.0
    wait_cost: float = 0.0


# Reward array layout shared with the kernels.
REW_OBSERVE = 0
REW_RESTOCK_REDUNDANT = 1
REW_RESTOCK_USEFUL = 2
REW_RESTOCK_OTHER = 3
REW_BLOCKED = 4
REW_ASSEMBLED = 5
REW_COMPLETED = 6
REW_WAIT = 7


@dataclass(frozen=True)
class WorkerParams:
    """Stochasticity of the worker policy: pause and mistake probabilities."""

    p_pause: float = 0.1
    p_mistake: float = 0.05


InventorySpec = Union[float, Mapping[str, float], Iterable[str], tuple]

# Flat parameter block handed to the compiled kernels.
SimParams = namedtuple(
    "SimParams",
    "n_parts n_types required p_pause p_mistake alpha horizon rewards r_min r_max",
)


@dataclass(frozen=True)
class ScenarioSpec:
    """Full problem definition. Run through validate_spec before use.

    initial_inventory accepts a single Bernoulli probability, a mapping
    label -> probability (missing labels default to 0.5), or an iterable of
    labels (a fixed map: listed parts start available, the rest absent).
    The canonical form is a tuple of per-part probabilities.
    """

    parts: tuple = ()
    common_parts: frozenset = frozenset()
    hotel_types: tuple = ()
    worker: WorkerParams = field(default_factory=WorkerParams)
    rewards: RewardTable = field(default_factory=RewardTable)
    sensor_accuracy: float = 0.85
    horizon: int = 100
    discount: float = 0.99
    initial_inventory: InventorySpec = 0.5
    master_seed: int = 0
    initial_intent: Optional[str] = None

    # -- derived lookups (assume a validated spec) --

    @cached_property
    def labels(self) -> tuple:
        return tuple(p.label for p in self.parts)

    @cached_property
    def label_index(self) -> dict:
        return {p.label: p.index for p in self.parts}

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    @property
    def n_types(self) -> int:
        return len(self.hotel_types)

    @property
    def n_actions(self) -> int:
        return 3 * self.n_parts + 1

    @cached_property
    def all_parts_mask(self) -> int:
        return (1 << self.n_parts) - 1

    @cached_property
    def common_mask(self) -> int:
        return self.mask_of(self.common_parts)

    @cached_property
    def required_masks(self) -> np.ndarray:
        masks = [self.common_mask | self.mask_of(t.specific_parts) for t in self.hotel_types]
        return np.array(masks, dtype=np.int64)

    @cached_property
    def inventory_probs(self) -> np.ndarray:
        return np.array(self.initial_inventory, dtype=np.float64)

    @cached_property
    def rewards_array(self) -> np.ndarray:
        r = self.rewards
        return np.array(
            [
                r.observe_cost,
                r.restock_redundant,
                r.restock_useful,
                r.restock_other,
                r.worker_blocked,
                r.worker_assembled,
                r.hotel_completed,
                r.wait_cost,
            ],
            dtype=np.float64,
        )

    @cached_property
    def step_reward_bounds(self) -> tuple:
        r = self.rewards
        robot = (r.observe_cost, r.restock_redundant, r.restock_useful, r.restock_other, r.wait_cost)
        worker = (0.0, r.worker_blocked, r.worker_assembled, r.worker_assembled + r.hotel_completed)
        return (min(robot) + min(worker), max(robot) + max(worker))

    @cached_property
    def intent_index(self) -> Optional[int]:
        if self.initial_intent is None:
            return None
        return self.type_index(self.initial_intent)

    @cached_property
    def sim_params(self) -> SimParams:
        r_min, r_max = self.step_reward_bounds
        return SimParams(
            n_parts=self.n_parts,
            n_types=self.n_types,
            required=self.required_masks,
            p_pause=float(self.worker.p_pause),
            p_mistake=float(self.worker.p_mistake),
            alpha=float(self.sensor_accuracy),
            horizon=int(self.horizon),
            rewards=self.rewards_array,
            r_min=float(r_min),
            r_max=float(r_max),
        )

    # -- helpers --

    def part(self, label: str) -> int:
        try:
            return self.label_index[label]
        except KeyError:
            raise UnknownPartReference(f"unknown part label {label!r}") from None

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for lbl in labels:
            mask |= 1 << self.part(lbl)
        return mask

    def labels_of(self, mask: int) -> frozenset:
        return frozenset(p.label for p in self.parts if mask >> p.index & 1)

    def type_index(self, name: str) -> int:
        for i, t in enumerate(self.hotel_types):
            if t.name == name:
                return i
        raise UnknownHotelType(f"unknown hotel type {name!r}")


@dataclass(frozen=True)
class JointState:
    """Ground truth: inventory and workspace bitmasks, hidden intent, step."""

    available: int
    assembled: int
    intent: int
    step: int = 0

    def with_step(self, step: int) -> "JointState":
        return replace(self, step=step)


def check_state(s: JointState, spec: ScenarioSpec) -> None:
    """Assert the JointState invariants; raises ValueError on violation."""
    if s.available & s.assembled:
        raise ValueError("a part cannot be available and assembled at once")
    if (s.available | s.assembled) & ~spec.all_parts_mask:
        raise ValueError("state references parts outside the scenario")
    if not 0 <= s.intent < spec.n_types:
        raise ValueError(f"intent index {s.intent} out of range")
    if not 0 <= s.step <= spec.horizon:
        raise ValueError(f"step {s.step} outside [0, {spec.horizon}]")


class ActionKind(Enum):
    OBSERVE_INVENTORY = "observe_inventory"
    OBSERVE_WORKSPACE = "observe_workspace"
    RESTOCK = "restock"
    WAIT = "wait"


@dataclass(frozen=True)
class RobotAction:
    kind: ActionKind
    part: Optional[int] = None

    def to_index(self, spec: ScenarioSpec) -> int:
        p = spec.n_parts
        if self.kind is ActionKind.OBSERVE_INVENTORY:
            return self.part
        if self.kind is ActionKind.OBSERVE_WORKSPACE:
            return p + self.part
        if self.kind is ActionKind.RESTOCK:
            return 2 * p + self.part
        return 3 * p

    @staticmethod
    def from_index(idx: int, spec: ScenarioSpec) -> "RobotAction":
        p = spec.n_parts
        if not 0 <= idx <= 3 * p:
            raise ValueError(f"action index {idx} outside [0, {3 * p}]")
        if idx < p:
            return RobotAction(ActionKind.OBSERVE_INVENTORY, idx)
        if idx < 2 * p:
            return RobotAction(ActionKind.OBSERVE_WORKSPACE, idx - p)
        if idx < 3 * p:
            return RobotAction(ActionKind.RESTOCK, idx - 2 * p)
        return RobotAction(ActionKind.WAIT)

    def describe(self, spec: ScenarioSpec) -> str:
        if self.kind is ActionKind.WAIT:
            return "wait"
        return f"{self.kind.value}({spec.labels[self.part]})"


def observe_inventory(part: int) -> RobotAction:
    return RobotAction(ActionKind.OBSERVE_INVENTORY, part)


def observe_workspace(part: int) -> RobotAction:
    return RobotAction(ActionKind.OBSERVE_WORKSPACE, part)


def restock(part: int) -> RobotAction:
    return RobotAction(ActionKind.RESTOCK, part)


WAIT = RobotAction(ActionKind.WAIT)


class ObsKind(Enum):
    PART_PRESENT = "part_present"
    PART_ABSENT = "part_absent"
    PART_ASSEMBLED = "part_assembled"
    PART_NOT_ASSEMBLED = "part_not_assembled"
    RESTOCK_ACK = "restock_ack"
    NULL = "null"


@dataclass(frozen=True)
class Observation:
    kind: ObsKind
    part: Optional[int] = None

    @staticmethod
    def from_outcome(action: RobotAction, bit: int) -> "Observation":
        """Decode the kernel-level outcome bit for an action into an Observation."""
        if action.kind is ActionKind.OBSERVE_INVENTORY:
            return Observation(ObsKind.PART_PRESENT if bit else ObsKind.PART_ABSENT, action.part)
        if action.kind is ActionKind.OBSERVE_WORKSPACE:
            return Observation(
                ObsKind.PART_ASSEMBLED if bit else ObsKind.PART_NOT_ASSEMBLED, action.part
            )
        if action.kind is ActionKind.RESTOCK:
            return Observation(ObsKind.RESTOCK_ACK, action.part)
        return Observation(ObsKind.NULL)

    @property
    def outcome_bit(self) -> int:
        return 1 if self.kind in (ObsKind.PART_PRESENT, ObsKind.PART_ASSEMBLED) else 0

    def matches_action(self, action: RobotAction) -> bool:
        """True when this observation kind/part can be emitted by the action."""
        k, ak = self.kind, action.kind
        if ak is ActionKind.OBSERVE_INVENTORY:
            return k in (ObsKind.PART_PRESENT, ObsKind.PART_ABSENT) and self.part == action.part
        if ak is ActionKind.OBSERVE_WORKSPACE:
            return (
                k in (ObsKind.PART_ASSEMBLED, ObsKind.PART_NOT_ASSEMBLED)
                and self.part == action.part
            )
        if ak is ActionKind.RESTOCK:
            return k is ObsKind.RESTOCK_ACK and self.part == action.part
        return k is ObsKind.NULL


class WorkerEventKind(Enum):
    ASSEMBLED = "assembled"
    REMOVED = "removed"
    BLOCKED = "blocked"
    PAUSED = "paused"
    COMPLETED = "completed"


@dataclass(frozen=True)
class WorkerEvent:
    kind: WorkerEventKind
    part: Optional[int] = None


def _as_part_ids(parts: Iterable) -> tuple:
    out = []
    for i, p in enumerate(parts):
        if isinstance(p, PartId):
            out.append(PartId(p.label, i))
        elif isinstance(p, str):
            out.append(PartId(p, i))
        else:
            raise SpecError(f"parts[{i}] must be a label or PartId, got {type(p).__name__}")
    return tuple(out)


def _check_prob(value: float, name: str) -> float:
    v = float(value)
    if not np.isfinite(v) or not 0.0 <= v <= 1.0:
        raise ProbabilityOutOfRange(f"{name} must lie in [0, 1], got {value}")
    return v


def _canonical_inventory(raw: InventorySpec, spec: ScenarioSpec) -> tuple:
    n = spec.n_parts
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        q = _check_prob(raw, "initial_inventory")
        return (q,) * n
    if isinstance(raw, Mapping):
        probs = [0.5] * n
        for lbl, q in raw.items():
            probs[spec.part(lbl)] = _check_prob(q, f"initial_inventory[{lbl}]")
        return tuple(probs)
    items = tuple(raw)
    if items and all(isinstance(x, str) for x in items):
        mask_parts = {spec.part(lbl) for lbl in items}
        return tuple(1.0 if i in mask_parts else 0.0 for i in range(n))
    # already a per-part probability tuple
    if len(items) != n:
        raise SpecError(
            f"initial_inventory has {len(items)} entries for {n} parts"
        )
    return tuple(_check_prob(x, f"initial_inventory[{i}]") for i, x in enumerate(items))


def validate_spec(raw: ScenarioSpec) -> ScenarioSpec:
    """Validate and canonicalize a scenario; idempotent.

    Raises the most specific SpecError subclass naming the offending field.
    """
    parts = _as_part_ids(raw.parts)
    if not parts:
        raise SpecError("parts must be non-empty")
    if len(parts) > MAX_PARTS:
        raise SpecError(f"at most {MAX_PARTS} parts supported, got {len(parts)}")
    labels = [p.label for p in parts]
    if len(set(labels)) != len(labels):
        dupes = sorted({l for l in labels if labels.count(l) > 1})
        raise SpecError(f"duplicate part labels: {dupes}")
    label_set = set(labels)

    common = frozenset(raw.common_parts)
    for lbl in common:
        if lbl not in label_set:
            raise UnknownPartReference(f"common_parts references unknown part {lbl!r}")

    if not raw.hotel_types:
        raise SpecError("hotel_types must be non-empty")
    names = [t.name for t in raw.hotel_types]
    if len(set(names)) != len(names):
        raise SpecError(f"duplicate hotel type names: {names}")
    canon_types = []
    seen_specific: dict = {}
    for t in raw.hotel_types:
        specific = frozenset(t.specific_parts)
        for lbl in specific:
            if lbl not in label_set:
                raise UnknownPartReference(
                    f"hotel_types[{t.name}].specific_parts references unknown part {lbl!r}"
                )
            if lbl in common:
                raise DisjointnessViolation(
                    f"hotel_types[{t.name}].specific_parts overlaps common_parts on {lbl!r}"
                )
            if lbl in seen_specific:
                raise DisjointnessViolation(
                    f"part {lbl!r} is specific to both {seen_specific[lbl]!r} and {t.name!r}"
                )
            seen_specific[lbl] = t.name
        if not (common | specific):
            raise EmptyRequiredSet(f"hotel_types[{t.name}] requires no parts")
        canon_types.append(HotelType(t.name, specific))

    p_pause = _check_prob(raw.worker.p_pause, "worker.p_pause")
    p_mistake = _check_prob(raw.worker.p_mistake, "worker.p_mistake")
    if p_pause + p_mistake > 1.0:
        raise ProbabilityOutOfRange(
            f"worker.p_pause + worker.p_mistake must be <= 1, got {p_pause + p_mistake}"
        )
    alpha = float(raw.sensor_accuracy)
    if not 0.5 <= alpha <= 1.0:
        raise ProbabilityOutOfRange(f"sensor_accuracy must lie in [0.5, 1.0], got {alpha}")
    gamma = float(raw.discount)
    if not 0.0 < gamma <= 1.0:
        raise ProbabilityOutOfRange(f"discount must lie in (0, 1], got {gamma}")
    if int(raw.horizon) < 1:
        raise SpecError(f"horizon must be positive, got {raw.horizon}")
    for f_name in (
        "observe_cost",
        "restock_redundant",
        "restock_useful",
        "restock_other",
        "worker_blocked",
        "worker_assembled",
        "hotel_completed",
        "wait_cost",
    ):
        if not np.isfinite(getattr(raw.rewards, f_name)):
            raise SpecError(f"rewards.{f_name} must be finite")

    spec = replace(
        raw,
        parts=parts,
        common_parts=common,
        hotel_types=tuple(canon_types),
        worker=WorkerParams(p_pause, p_mistake),
        sensor_accuracy=alpha,
        horizon=int(raw.horizon),
        discount=gamma,
        master_seed=int(raw.master_seed),
    )
    inventory = _canonical_inventory(raw.initial_inventory, spec)
    spec = replace(spec, initial_inventory=inventory)
    if spec.initial_intent is not None:
        spec.type_index(spec.initial_intent)  # raises UnknownHotelType
    return spec


def required_parts(t, spec: ScenarioSpec) -> frozenset:
    """Labels of all parts hotel type t (index or name) needs."""
    if isinstance(t, str):
        t = spec.type_index(t)
    if not 0 <= t < spec.n_types:
        raise UnknownHotelType(f"hotel type index {t} out of range")
    return frozenset(spec.common_parts) | spec.hotel_types[t].specific_parts


def is_complete(s: JointState, spec: ScenarioSpec) -> bool:
    """True iff the workspace holds exactly the intended hotel's parts."""
    return s.assembled == int(spec.required_masks[s.intent])


def is_terminal(s: JointState, spec: ScenarioSpec) -> bool:
    """Complete hotel or horizon exhausted (distinguish via is_complete)."""
    return is_complete(s, spec) or s.step >= spec.horizon
