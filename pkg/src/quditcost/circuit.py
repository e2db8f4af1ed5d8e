"""Circuit representation, simulation driver, and quantum-cost accounting.

A :class:`Circuit` is an ordered list of gate applications on 1-based wires
plus an optional terminal measurement event.  Costs are purely syntactic:
every gate contributes its catalog cost (composites count as their basic-gate
decomposition) and a terminal measurement contributes exactly 1 no matter how
many wires it covers.  Steps can be flagged ``counted=False`` to keep them in
the simulation but out of the cost totals (used for channel preparation whose
cost is reported separately).

"Sorts of basic gates" are counted after full decomposition: two cost>0 basic
gates are the same sort iff their matrices agree within tolerance, which makes
H and H-dagger one sort at d=2 and distinct sorts above.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .gates import GateInstance, decompose
from .linalg import IDENTITY_TOL, PureState, embed_apply, measure_project

MEASUREMENT_COST = 1


@dataclass(frozen=True)
class Step:
    gate: GateInstance
    wires: tuple[int, ...]
    counted: bool = True


@dataclass(frozen=True)
class Circuit:
    """Gate applications on ``num_wires`` wires of dimension ``d``."""

    d: int
    num_wires: int
    steps: tuple[Step, ...] = ()
    measure_wires: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        for step in self.steps:
            if step.gate.d != self.d:
                raise ValueError(f"gate {step.gate.label} has d={step.gate.d}, circuit has d={self.d}")
            if len(step.wires) != step.gate.arity:
                raise ValueError(
                    f"gate {step.gate.label} takes {step.gate.arity} wire(s), got {step.wires}"
                )
            self._check_wires(step.wires)
        if self.measure_wires is not None:
            mw = tuple(self.measure_wires)
            if not mw:
                raise ValueError("measurement needs at least one wire")
            self._check_wires(mw)
            object.__setattr__(self, "measure_wires", mw)

    def _check_wires(self, wires):
        if len(set(wires)) != len(wires):
            raise ValueError(f"duplicate wire in {wires}")
        for w in wires:
            if not 1 <= w <= self.num_wires:
                raise ValueError(f"wire {w} out of range 1..{self.num_wires}")


@dataclass(frozen=True)
class PerGateRow:
    label: str
    count: int
    unit_cost: int
    subtotal: int


@dataclass(frozen=True)
class CostReport:
    """Structured cost summary of one circuit."""

    total_cost: int
    per_gate: tuple[PerGateRow, ...]
    measurement_cost: int
    basic_kinds: int
    basic_kind_labels: tuple[str, ...]
    excluded_cost: int = 0

    def to_dict(self) -> dict:
        return {
            "total_cost": self.total_cost,
            "per_gate": [
                {
                    "label": row.label,
                    "count": row.count,
                    "unit_cost": row.unit_cost,
                    "subtotal": row.subtotal,
                }
                for row in self.per_gate
            ],
            "measurement_cost": self.measurement_cost,
            "basic_kinds": self.basic_kinds,
            "basic_kind_labels": list(self.basic_kind_labels),
            "excluded_cost": self.excluded_cost,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


Branches = dict[tuple[int, ...], tuple[float, PureState | None]]


def simulate(circuit: Circuit, input_state: PureState | None = None) -> PureState | Branches:
    """Run the circuit on ``input_state`` (default ``|0...0>``).

    Without a measurement the evolved :class:`PureState` comes back; with one,
    a map ``outcome -> (probability, conditioned state)`` over every basis
    outcome of the measured wires (impossible branches map to ``None``).
    """
    if input_state is None:
        input_state = PureState.zero(circuit.d, circuit.num_wires)
    if (input_state.d, input_state.n) != (circuit.d, circuit.num_wires):
        raise ValueError(
            f"input register (d={input_state.d}, n={input_state.n}) does not match "
            f"circuit (d={circuit.d}, n={circuit.num_wires})"
        )
    state = input_state
    for step in circuit.steps:
        state = embed_apply(state, step.gate.matrix, step.wires)
    if circuit.measure_wires is None:
        return state
    branches: Branches = {}
    for flat in range(circuit.d ** len(circuit.measure_wires)):
        outcome = _flat_to_outcome(flat, circuit.d, len(circuit.measure_wires))
        branches[outcome] = measure_project(state, circuit.measure_wires, outcome)
    return branches


def _flat_to_outcome(flat: int, d: int, k: int) -> tuple[int, ...]:
    digits = []
    for _ in range(k):
        flat, q = divmod(flat, d)
        digits.append(q)
    return tuple(reversed(digits))


def _basic_kind_labels(placed_basics) -> tuple[str, ...]:
    # One representative matrix per sort; first-seen label wins.
    reps: list[tuple[np.ndarray, str]] = []
    for gate in placed_basics:
        if gate.cost == 0:
            continue
        for mat, _label in reps:
            if mat.shape == gate.matrix.shape and np.max(np.abs(mat - gate.matrix)) <= IDENTITY_TOL:
                break
        else:
            reps.append((gate.matrix, gate.label))
    return tuple(label for _mat, label in reps)


def total_cost(circuit: Circuit) -> CostReport:
    """Cost accounting for a circuit under the identity-cost rule."""
    order: list[str] = []
    counts: dict[str, list[int]] = {}
    basics: list[GateInstance] = []
    excluded = 0
    for step in circuit.steps:
        if not step.counted:
            excluded += step.gate.cost
            continue
        label = step.gate.label
        if label not in counts:
            counts[label] = [0, step.gate.cost]
            order.append(label)
        counts[label][0] += 1
        basics.extend(g for g, _wires in decompose(step.gate))
    per_gate = tuple(
        PerGateRow(label, counts[label][0], counts[label][1], counts[label][0] * counts[label][1])
        for label in order
    )
    measurement_cost = MEASUREMENT_COST if circuit.measure_wires is not None else 0
    kind_labels = _basic_kind_labels(basics)
    return CostReport(
        total_cost=sum(row.subtotal for row in per_gate) + measurement_cost,
        per_gate=per_gate,
        measurement_cost=measurement_cost,
        basic_kinds=len(kind_labels),
        basic_kind_labels=kind_labels,
        excluded_cost=excluded,
    )
