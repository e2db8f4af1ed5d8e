"""Acceptance suite: one test per release criterion.

Each test pins the exact integers / tolerances the package must reproduce and
asserts its runtime budget; run with ``pytest tests/test_acceptance.py -v``
(add ``-s`` to see the per-criterion summary lines).
"""

import time

import numpy as np
import pytest
from click.testing import CliRunner

from quditcost import gates
from quditcost.circuit import total_cost
from quditcost.cli import main as cli_main
from quditcost.dense_coding import build_dense_coding_circuit, cost_formula_dense, run_dense_coding
from quditcost.linalg import is_unitary, tensor
from quditcost.noise import NoiseKind, closed_form_fidelity, kraus_set, simulate_noisy_dense_coding
from quditcost.teleport import (
    build_teleport_circuit,
    correction,
    cost_formula_teleport,
    haar_message,
    run_teleport,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


class _Budget:
    def __init__(self, name, seconds):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is None:
            assert elapsed < self.seconds, f"{self.name} took {elapsed:.1f}s (budget {self.seconds}s)"
            print(f"PASS {self.name} ({elapsed:.2f}s)")
        return False


def test_criterion_01_qubit_dense_costs_and_kinds():
    with _Budget("criterion 1: d=2 dense-coding costs (5,6,6,6), kinds (2,3,3,3)", 1.0):
        costs, kinds = [], []
        for m in range(2):
            for n in range(2):
                report = total_cost(build_dense_coding_circuit(2, m, n))
                costs.append(report.total_cost)
                kinds.append(report.basic_kinds)
        assert costs == [5, 6, 6, 6]
        assert kinds == [2, 3, 3, 3]


def test_criterion_02_dense_cost_closed_form():
    with _Budget("criterion 2: dense cost = d+3 / d+4 for d in 2..8, all messages", 5.0):
        for d in range(2, 9):
            for m in range(d):
                for n in range(d):
                    built = total_cost(build_dense_coding_circuit(d, m, n)).total_cost
                    expected = d + 3 if (m, n) == (0, 0) else d + 4
                    assert built == expected == cost_formula_dense(d, m, n)


def test_criterion_03_dense_decoding_exact():
    with _Budget("criterion 3: exact decoding with probability 1 for d in 2..7", 10.0):
        for d in range(2, 8):
            for m in range(d):
                for n in range(d):
                    run = run_dense_coding(d, m, n)
                    assert run.decoded == (m, n)
                    assert abs(run.probability - 1.0) <= 1e-12


def test_criterion_04_qubit_teleport_costs_and_corrections():
    with _Budget("criterion 4: d=2 teleport costs (9,11,11,13) and correction grid", 5.0):
        costs = [
            total_cost(build_teleport_circuit(2, a, b)).total_cost for a in range(2) for b in range(2)
        ]
        assert costs == [9, 11, 11, 13]
        # the recovery grid follows the I / X / Z / ZX pattern of the base channel,
        # permuted by the channel label
        paulis = {(0, 0): np.eye(2), (0, 1): SX, (1, 0): SZ, (1, 1): SZ @ SX}
        for a in range(2):
            for b in range(2):
                for m in range(2):
                    for n in range(2):
                        expected = paulis[((a + m) % 2, (b + n) % 2)]
                        np.testing.assert_allclose(
                            correction(2, a, b, m, n).matrix, expected, atol=1e-12
                        )


def test_criterion_05_teleport_cost_13():
    with _Budget("criterion 5: teleport cost 13 for d in 3..6, all channels", 5.0):
        for d in range(3, 7):
            for a in range(d):
                for b in range(d):
                    assert total_cost(build_teleport_circuit(d, a, b)).total_cost == 13
                    assert cost_formula_teleport(d, a, b) == 13


def test_criterion_06_teleport_round_trip():
    with _Budget("criterion 6: round trip for d in 2..5, all channels/outcomes, 5 messages", 60.0):
        for d in range(2, 6):
            rng = np.random.default_rng(d)
            messages = [haar_message(d, rng) for _ in range(5)]
            for a in range(d):
                for b in range(d):
                    for msg in messages:
                        run = run_teleport(d, a, b, msg)
                        assert len(run.outcomes) == d * d
                        for outcome in run.outcomes.values():
                            assert abs(outcome.probability - 1 / d**2) <= 1e-10
                            assert outcome.overlap >= 1 - 1e-10


def test_criterion_07_gate_identities():
    with _Budget("criterion 7: gate identities and unitarity for d in 2..8", 5.0):
        for d in range(2, 9):
            h = gates.hadamard(d).matrix
            cn = gates.cnot(d).matrix
            eye_h = tensor(np.eye(d), h)
            np.testing.assert_allclose(eye_h @ cn @ eye_h, gates.control_z(d).matrix, atol=1e-12)
            np.testing.assert_allclose(
                np.linalg.matrix_power(cn, d - 1), gates.cnot_dagger(d).matrix, atol=1e-12
            )
            instances = [gates.hadamard(d), gates.hadamard_dagger(d), gates.cnot(d),
                         gates.cnot_dagger(d), gates.control_z(d)]
            for k in range(d):
                np.testing.assert_allclose(
                    h @ gates.x_shift(k, d).matrix @ h, gates.z_phase(k, d).matrix, atol=1e-12
                )
                p = gates.p_gate(k, d).matrix
                np.testing.assert_allclose(p @ p, np.eye(d), atol=1e-12)
                instances += [gates.x_shift(k, d), gates.z_phase(k, d), gates.p_gate(k, d)]
            instances += [gates.u_mn(m, n, d) for m in range(d) for n in range(d)]
            instances += [gates.weyl(m, n, d) for m in range(d) for n in range(d)]
            for gate in instances:
                assert is_unitary(gate.matrix, atol=1e-12), gate.label


def test_criterion_08_kraus_completeness():
    with _Budget("criterion 8: Kraus completeness, 4 kinds, d in 2..8, 5 p values", 5.0):
        for kind in NoiseKind:
            for d in range(2, 9):
                for p in (0.0, 0.25, 0.5, 0.75, 1.0):
                    ops = kraus_set(kind, d, p).operators
                    total = sum(op.conj().T @ op for op in ops)
                    np.testing.assert_allclose(total, np.eye(d), atol=1e-12)


def test_criterion_09_fidelity_formulas():
    with _Budget("criterion 9: sim == closed form on the d x p x kind grid", 120.0):
        for kind in NoiseKind:
            for d in range(2, 7):
                sampled = {(0, 0), (0, 1), (1, 0), (1, 1), (d - 1, d - 1), (d // 2, d - 1)}
                for p in np.linspace(0.0, 1.0, 11):
                    closed = closed_form_fidelity(kind, d, float(p))
                    values = [
                        simulate_noisy_dense_coding(kind, d, float(p), m, n) for m, n in sampled
                    ]
                    for value in values:
                        assert abs(value - closed) <= 1e-10
                    assert max(values) - min(values) <= 1e-10  # message independence


def test_criterion_10_fidelity_dataset(tmp_path):
    with _Budget("criterion 10: CSV grids cover p in [0,1], D in [6,20], decreasing in D", 60.0):
        runner = CliRunner()
        result = runner.invoke(
            cli_main,
            ["fidelity", "--dim-range", "2:16", "--p-steps", "11", "--out", str(tmp_path)],
        )
        assert result.exit_code == 0, result.output
        files = sorted(tmp_path.glob("fidelity_*.csv"))
        assert len(files) == 4
        for path in files:
            lines = path.read_text().splitlines()
            assert lines[0] == "kind,d,D,p,fidelity_sim,fidelity_closed"
            table: dict[float, dict[int, float]] = {}
            for line in lines[1:]:
                _kind, _d, cost, p, fid_sim, _fid_closed = line.split(",")
                table.setdefault(float(p), {})[int(cost)] = float(fid_sim)
            ps = sorted(table)
            assert ps[0] == 0.0 and ps[-1] == 1.0
            for p, by_cost in table.items():
                costs = sorted(by_cost)
                assert costs == list(range(6, 21))
                if p > 0:
                    fids = [by_cost[c] for c in costs]
                    assert all(a > b for a, b in zip(fids, fids[1:])), (path.name, p)
