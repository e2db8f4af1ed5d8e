import json

import numpy as np
import pytest

from quditcost import gates
from quditcost.circuit import Circuit, Step, simulate, total_cost
from quditcost.dense_coding import bell_state, build_dense_coding_circuit
from quditcost.gates import decompose
from quditcost.linalg import PureState


def bell_prep(d):
    return Circuit(
        d=d,
        num_wires=2,
        steps=(Step(gates.hadamard(d), (1,)), Step(gates.cnot(d), (1, 2))),
    )


def test_simulate_bell_prep():
    for d in (2, 3, 5):
        out = simulate(bell_prep(d))
        np.testing.assert_allclose(out.amplitudes, bell_state(d, 1).amplitudes, atol=1e-12)


def test_simulate_empty_circuit_returns_input():
    state = PureState.from_digits(3, (2, 1))
    out = simulate(Circuit(d=3, num_wires=2), state)
    np.testing.assert_allclose(out.amplitudes, state.amplitudes, atol=1e-12)


def test_simulate_dense_coding_branch_map():
    branches = simulate(build_dense_coding_circuit(3, 1, 2))
    prob, state = branches[(1, 2)]
    assert prob == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(np.abs(state.amplitudes[5]), 1.0, atol=1e-12)
    for outcome, (p, s) in branches.items():
        if outcome != (1, 2):
            assert p < 1e-18 and s is None
    assert sum(p for p, _ in branches.values()) == pytest.approx(1.0, abs=1e-10)


def test_simulate_rejects_mismatched_input():
    with pytest.raises(ValueError):
        simulate(bell_prep(2), PureState.zero(3, 2))
    with pytest.raises(ValueError):
        simulate(bell_prep(2), PureState.zero(2, 3))


def test_circuit_validation():
    with pytest.raises(ValueError):
        Circuit(d=3, num_wires=2, steps=(Step(gates.hadamard(2), (1,)),))  # wrong d
    with pytest.raises(ValueError):
        Circuit(d=2, num_wires=2, steps=(Step(gates.cnot(2), (1,)),))  # wrong arity
    with pytest.raises(ValueError):
        Circuit(d=2, num_wires=2, steps=(Step(gates.cnot(2), (1, 3)),))  # wire range
    with pytest.raises(ValueError):
        Circuit(d=2, num_wires=2, measure_wires=(1, 1))  # duplicate


def test_total_cost_identity_plus_measure():
    circ = Circuit(
        d=4, num_wires=1, steps=(Step(gates.identity(4), (1,)),), measure_wires=(1,)
    )
    report = total_cost(circ)
    assert report.total_cost == 1
    assert report.measurement_cost == 1
    assert report.basic_kinds == 0


def test_total_cost_dense_qubit_base_message():
    report = total_cost(build_dense_coding_circuit(2, 0, 0))
    assert report.total_cost == 5
    assert report.basic_kinds == 2
    assert set(report.basic_kind_labels) == {"H", "CNOT"}


def test_total_cost_per_gate_rows():
    report = total_cost(build_dense_coding_circuit(3, 1, 2))
    by_label = {row.label: row for row in report.per_gate}
    assert by_label["CNOTdag"].unit_cost == 2
    assert by_label["U[1,2]"].subtotal == 1
    assert report.total_cost == sum(r.subtotal for r in report.per_gate) + 1


def test_measurement_costs_one_regardless_of_wires():
    base = bell_prep(3)
    one = Circuit(d=3, num_wires=2, steps=base.steps, measure_wires=(1,))
    two = Circuit(d=3, num_wires=2, steps=base.steps, measure_wires=(1, 2))
    assert total_cost(one).total_cost == total_cost(two).total_cost == 3
    assert total_cost(base).measurement_cost == 0


def test_uncounted_steps_report_separately():
    steps = base_steps = bell_prep(3).steps
    steps = base_steps + (Step(gates.weyl(1, 1, 3), (2,), counted=False),)
    report = total_cost(Circuit(d=3, num_wires=2, steps=steps))
    assert report.total_cost == 2
    assert report.excluded_cost == 1


def test_cost_invariant_under_decomposition():
    # replacing every composite by its placed decomposition keeps the total
    for d in (2, 3, 5):
        circ = Circuit(
            d=d,
            num_wires=2,
            steps=(
                Step(gates.hadamard(d), (1,)),
                Step(gates.cnot_dagger(d), (1, 2)),
                Step(gates.control_z(d), (2, 1)),
                Step(gates.u_mn(1 % d, 1 % d, d), (2,)),
            ),
            measure_wires=(1, 2),
        )
        flat_steps = []
        for step in circ.steps:
            for gate, rel in decompose(step.gate):
                flat_steps.append(Step(gate, tuple(step.wires[i] for i in rel)))
        flat = Circuit(d=d, num_wires=2, steps=tuple(flat_steps), measure_wires=(1, 2))
        assert total_cost(flat).total_cost == total_cost(circ).total_cost
        assert total_cost(flat).basic_kinds == total_cost(circ).basic_kinds
        # and the flattened circuit is the same unitary
        out_a = simulate(Circuit(d=d, num_wires=2, steps=circ.steps))
        out_b = simulate(Circuit(d=d, num_wires=2, steps=flat.steps))
        np.testing.assert_allclose(out_a.amplitudes, out_b.amplitudes, atol=1e-12)


def test_cost_report_json_fields():
    payload = json.loads(total_cost(build_dense_coding_circuit(2, 0, 1)).to_json())
    assert set(payload) == {
        "total_cost",
        "per_gate",
        "measurement_cost",
        "basic_kinds",
        "basic_kind_labels",
        "excluded_cost",
    }
    assert payload["total_cost"] == 6
    assert payload["per_gate"][0] == {"label": "H", "count": 1, "unit_cost": 1, "subtotal": 1}
