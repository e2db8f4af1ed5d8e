"""Self-contained invariant checks behind the ``verify`` CLI command.

Each check sweeps dimensions up to ``dmax`` and returns a single pass/fail
result with a short detail string; the CLI prints one line per check and exits
nonzero if anything fails.  The pytest suite covers the same ground (and more)
test-by-test; this module exists so a deployed install can be validated
without the test tree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dense_coding, gates, noise, qcf, teleport
from .circuit import simulate, total_cost
from .linalg import AGGREGATE_TOL, IDENTITY_TOL, PureState, is_unitary, tensor

_MAX = lambda a, b: float(np.max(np.abs(a - b)))  # noqa: E731


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _catalog(d: int):
    yield gates.hadamard(d)
    yield gates.hadamard_dagger(d)
    yield gates.cnot(d)
    yield gates.cnot_dagger(d)
    yield gates.control_z(d)
    yield gates.identity(d)
    for k in range(d):
        yield gates.x_shift(k, d)
        yield gates.z_phase(k, d)
        yield gates.p_gate(k, d)
    for m in range(d):
        for n in range(d):
            yield gates.u_mn(m, n, d)
            yield gates.weyl(m, n, d)


def check_gate_unitarity(dmax: int) -> CheckResult:
    worst = 0.0
    for d in range(2, dmax + 1):
        for gate in _catalog(d):
            delta = gate.matrix @ gate.matrix.conj().T - np.eye(gate.matrix.shape[0])
            worst = max(worst, float(np.max(np.abs(delta))))
            if not is_unitary(gate.matrix):
                return CheckResult("gate unitarity", False, f"{gate.label} at d={d}")
    return CheckResult("gate unitarity", True, f"max |GG^dag - I| = {worst:.2e}")


def check_gate_identities(dmax: int) -> CheckResult:
    worst = 0.0
    for d in range(2, dmax + 1):
        h = gates.hadamard(d).matrix
        cn = gates.cnot(d).matrix
        worst = max(worst, _MAX(h @ gates.hadamard_dagger(d).matrix, np.eye(d)))
        worst = max(worst, _MAX(np.linalg.matrix_power(cn, d - 1), gates.cnot_dagger(d).matrix))
        eye_h = tensor(np.eye(d), h)
        worst = max(worst, _MAX(eye_h @ cn @ eye_h, gates.control_z(d).matrix))
        for k in range(d):
            worst = max(worst, _MAX(h @ gates.x_shift(k, d).matrix @ h, gates.z_phase(k, d).matrix))
            p = gates.p_gate(k, d).matrix
            worst = max(worst, _MAX(p @ p, np.eye(d)))
    ok = worst <= IDENTITY_TOL
    return CheckResult("gate identities (Z=HXH, CZ, CNOT^dag, P^2)", ok, f"max deviation {worst:.2e}")


def check_weyl_orthogonality(dmax: int) -> CheckResult:
    worst = 0.0
    for d in range(2, dmax + 1):
        ws = [gates.weyl(m, n, d).matrix for m in range(d) for n in range(d)]
        gram = np.array([[np.trace(a.conj().T @ b) for b in ws] for a in ws])
        worst = max(worst, _MAX(gram, d * np.eye(d * d)))
    ok = worst <= AGGREGATE_TOL
    return CheckResult("Weyl trace orthogonality", ok, f"max deviation {worst:.2e}")


def check_decompositions(dmax: int) -> CheckResult:
    for d in range(2, dmax + 1):
        for gate in _catalog(d):
            parts = gates.decompose(gate)
            if sum(g.cost for g, _w in parts) != gate.cost:
                return CheckResult("decomposition costs", False, f"{gate.label} at d={d}")
            dim = d**gate.arity
            product = np.eye(dim, dtype=complex)
            for part, wires in parts:
                embedded = part.matrix
                if gate.arity == 2 and part.arity == 1:
                    factors = [np.eye(d), np.eye(d)]
                    factors[wires[0]] = part.matrix
                    embedded = tensor(factors[0], factors[1])
                product = embedded @ product
            if _MAX(product, gate.matrix) > IDENTITY_TOL:
                return CheckResult("decomposition costs", False, f"{gate.label} product mismatch")
    return CheckResult("decomposition costs", True, "ordered products match, costs add up")


def check_dense_coding(dmax: int) -> CheckResult:
    for d in range(2, dmax + 1):
        decoded_set = set()
        for m in range(d):
            for n in range(d):
                run = dense_coding.run_dense_coding(d, m, n)
                if run.decoded != (m, n) or abs(run.probability - 1.0) > 1e-12:
                    return CheckResult("dense coding", False, f"d={d} message {(m, n)} misdecoded")
                if run.report.total_cost != dense_coding.cost_formula_dense(d, m, n):
                    return CheckResult("dense coding", False, f"d={d} {(m, n)} cost mismatch")
                decoded_set.add(run.decoded)
        if len(decoded_set) != d * d:
            return CheckResult("dense coding", False, f"d={d} decoding not a bijection")
    return CheckResult("dense coding", True, f"exact recovery and d+3/d+4 costs, d <= {dmax}")


def check_bell_states(dmax: int) -> CheckResult:
    worst = 0.0
    for d in range(2, dmax + 1):
        vecs = np.array([dense_coding.bell_state(d, u).amplitudes for u in range(1, d * d + 1)])
        gram = vecs.conj() @ vecs.T
        worst = max(worst, _MAX(gram, np.eye(d * d)))
        for m in range(d):
            for n in range(d):
                produced = tensor(gates.u_mn(m, n, d).matrix, np.eye(d)) @ dense_coding.bell_state(d, 1).amplitudes
                worst = max(worst, _MAX(produced, dense_coding.bell_state(d, m * d + n + 1).amplitudes))
    ok = worst <= AGGREGATE_TOL
    return CheckResult("Bell basis", ok, f"orthonormal + encoder map, deviation {worst:.2e}")


def check_teleportation(dmax: int, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    for d in range(2, dmax + 1):
        msg = teleport.haar_message(d, rng)
        for a in range(d):
            for b in range(d):
                run = teleport.run_teleport(d, a, b, msg)
                if run.report.total_cost != teleport.cost_formula_teleport(d, a, b):
                    return CheckResult("teleportation", False, f"d={d} channel {(a, b)} cost")
                for (m, n), out in run.outcomes.items():
                    if abs(out.probability - 1.0 / d**2) > AGGREGATE_TOL:
                        return CheckResult(
                            "teleportation", False, f"d={d} {(a, b)} outcome {(m, n)} prob"
                        )
                    if out.overlap < 1.0 - AGGREGATE_TOL:
                        return CheckResult(
                            "teleportation", False, f"d={d} {(a, b)} outcome {(m, n)} overlap"
                        )
                measured = teleport.measure_then_correct(d, a, b, msg)
                for key, out in measured.items():
                    if run.outcomes[key].receiver_state.overlap(out.receiver_state) < 1.0 - AGGREGATE_TOL:
                        return CheckResult("teleportation", False, f"deferred-measurement gap at d={d}")
    return CheckResult("teleportation", True, f"uniform outcomes, exact round trip, d <= {dmax}")


def check_kraus_completeness(dmax: int) -> CheckResult:
    worst = 0.0
    for d in range(2, dmax + 1):
        for kind in noise.NoiseKind:
            for p in (0.0, 0.25, 0.5, 0.75, 1.0):
                ch = noise.kraus_set(kind, d, p)
                total = sum(op.conj().T @ op for op in ch.operators)
                worst = max(worst, _MAX(total, np.eye(d)))
    ok = worst <= IDENTITY_TOL
    return CheckResult("Kraus completeness", ok, f"max |sum E^dag E - I| = {worst:.2e}")


def check_fidelity_formulas(dmax: int) -> CheckResult:
    worst = 0.0
    for d in range(2, dmax + 1):
        for kind in noise.NoiseKind:
            for p in np.linspace(0.0, 1.0, 6):
                closed = noise.closed_form_fidelity(kind, d, float(p))
                for m, n in ((0, 0), (0, 1), (d - 1, d - 1)):
                    sim = noise.simulate_noisy_dense_coding(kind, d, float(p), m, n)
                    worst = max(worst, abs(sim - closed))
    ok = worst <= AGGREGATE_TOL
    return CheckResult("noise fidelities", ok, f"max |sim - closed| = {worst:.2e}")


def check_qcf_roundtrip(dmax: int) -> CheckResult:
    for d in range(2, min(dmax, 4) + 1):
        circ = dense_coding.build_dense_coding_circuit(d, 1, d - 1)
        again = qcf.parse_qcf(qcf.to_qcf(circ))
        first = simulate(circ)
        second = simulate(again)
        for outcome, (prob, _state) in first.items():
            if abs(prob - second[outcome][0]) > AGGREGATE_TOL:
                return CheckResult("QCF round trip", False, f"d={d} outcome {outcome}")
        if total_cost(circ).total_cost != total_cost(again).total_cost:
            return CheckResult("QCF round trip", False, f"d={d} cost changed")
    return CheckResult("QCF round trip", True, "parse(serialize(c)) simulates identically")


def check_measurement_probabilities(dmax: int) -> CheckResult:
    worst = 0.0
    for d in range(2, dmax + 1):
        circ = dense_coding.build_dense_coding_circuit(d, d - 1, 1)
        branches = simulate(circ)
        worst = max(worst, abs(sum(p for p, _s in branches.values()) - 1.0))
        state = PureState.zero(d, 2)
        bell_branches = simulate(teleport.build_teleport_circuit(d, 0, 0), state.tensor(PureState.zero(d, 1)))
        worst = max(worst, abs(sum(p for p, _s in bell_branches.values()) - 1.0))
    ok = worst <= AGGREGATE_TOL
    return CheckResult("outcome probabilities sum to 1", ok, f"max deviation {worst:.2e}")


def run_all(dmax: int = 6, seed: int = 0) -> list[CheckResult]:
    """Run every invariant suite; teleportation sweeps are capped at d=5."""
    return [
        check_gate_unitarity(dmax),
        check_gate_identities(dmax),
        check_weyl_orthogonality(dmax),
        check_decompositions(dmax),
        check_bell_states(dmax),
        check_dense_coding(dmax),
        check_teleportation(min(dmax, 5), seed),
        check_kraus_completeness(dmax),
        check_fidelity_formulas(dmax),
        check_measurement_probabilities(dmax),
        check_qcf_roundtrip(dmax),
    ]
