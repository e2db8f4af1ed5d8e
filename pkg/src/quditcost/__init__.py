"""Qudit dense-coding/teleportation simulator with gate-cost accounting."""

__version__ = "0.1.0"

from .circuit import Circuit, CostReport, Step, simulate, total_cost
from .dense_coding import (
    bell_index,
    bell_message,
    bell_state,
    build_dense_coding_circuit,
    cost_formula_dense,
    run_dense_coding,
)
from .gates import GateFamily, GateInstance, decompose
from .linalg import DensityMatrix, PureState, embed_apply, evolve_density, fidelity_pure, measure_project, tensor
from .noise import (
    KrausChannel,
    NoiseKind,
    apply_two_qudit_noise,
    closed_form_fidelity,
    fidelity_vs_cost,
    kraus_set,
    simulate_noisy_dense_coding,
    sweep,
)
from .qcf import QcfError, QcfSemanticError, QcfSyntaxError, parse_qcf, to_qcf
from .teleport import (
    build_teleport_circuit,
    correction,
    cost_formula_teleport,
    haar_message,
    run_teleport,
)

__all__ = [
    "Circuit",
    "CostReport",
    "DensityMatrix",
    "GateFamily",
    "GateInstance",
    "KrausChannel",
    "NoiseKind",
    "PureState",
    "Step",
    "apply_two_qudit_noise",
    "bell_index",
    "bell_message",
    "bell_state",
    "build_dense_coding_circuit",
    "build_teleport_circuit",
    "closed_form_fidelity",
    "correction",
    "cost_formula_dense",
    "cost_formula_teleport",
    "decompose",
    "embed_apply",
    "evolve_density",
    "fidelity_pure",
    "fidelity_vs_cost",
    "haar_message",
    "kraus_set",
    "measure_project",
    "parse_qcf",
    "QcfError",
    "QcfSemanticError",
    "QcfSyntaxError",
    "run_dense_coding",
    "run_teleport",
    "simulate",
    "simulate_noisy_dense_coding",
    "sweep",
    "tensor",
    "to_qcf",
    "total_cost",
]
