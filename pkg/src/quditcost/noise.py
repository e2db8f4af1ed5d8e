"""Weyl-operator noise channels and dense-coding fidelity analysis.

Four single-qudit channels, each a set of Kraus operators ``E = c * W`` built
from Weyl operators ``W[m,n] = sum_j w**(j*m) |j+n><j|`` with error
probability ``p``:

    dit flip        E[0,j] ~ sqrt(p/(d-1)),  j = 1..d-1          (d ops)
    d-phase flip    E[j,0] ~ sqrt(p/(d-1)),  j = 1..d-1          (d ops)
    dit-phase flip  E[m,n] ~ sqrt(p)/(d-1),  m,n >= 1            (1+(d-1)**2)
    depolarizing    E[m,n] ~ sqrt(p)/d,      (m,n) != (0,0)      (d**2 ops)

with ``E[0,0] = sqrt(1-p) * I`` (depolarizing: ``sqrt(1-(d**2-1)p/d**2)``).

The channel hits both qudits of the shared pair before encoding; the fidelity
of the decoded two-dit state against the sent message has the closed forms

    F_flip = F_phase = (1-p)**2 + p**2/(d-1)
    F_flip_phase     = (1-p)**2 + p**2/(d-1)**2
    F_depolarizing   = (1 - (d**2-1)/d**2 * p)**2 + (d**2-1) * p**2 / d**4

each independent of the message.  (The depolarizing tail carries d**2-1, not
(d-1)**2: at p=1 the channel is the full Weyl twirl, the pair state becomes
I/d**2, and the fidelity must equal 1/d**2 for trace to survive; the exact
Kraus simulation in the test suite pins this.)  The cost substitution
``d = D - 4`` maps fidelity onto the protocol's quantum cost for any message
other than (0,0).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from . import gates
from .dense_coding import bell_state, check_message
from .linalg import DensityMatrix, basis_index, tensor

_SQ = np.sqrt


class NoiseKind(str, Enum):
    DIT_FLIP = "dit-flip"
    D_PHASE_FLIP = "d-phase-flip"
    DIT_PHASE_FLIP = "dit-phase-flip"
    DEPOLARIZING = "depolarizing"


@dataclass(frozen=True)
class KrausChannel:
    """Single-qudit Kraus set; ``sum E^dag E = I`` by construction."""

    kind: NoiseKind
    d: int
    p: float
    labels: tuple[tuple[int, int], ...]
    operators: tuple[np.ndarray, ...]


def _kraus_parts(kind: NoiseKind, d: int, p: float):
    """(labels, coefficients, unit Weyl matrices) for one channel."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"error probability {p} outside [0, 1]")
    if kind is NoiseKind.DIT_FLIP:
        off = [(0, j) for j in range(1, d)]
        coeffs = [_SQ(1 - p)] + [_SQ(p / (d - 1))] * len(off)
    elif kind is NoiseKind.D_PHASE_FLIP:
        off = [(j, 0) for j in range(1, d)]
        coeffs = [_SQ(1 - p)] + [_SQ(p / (d - 1))] * len(off)
    elif kind is NoiseKind.DIT_PHASE_FLIP:
        off = [(m, n) for m in range(1, d) for n in range(1, d)]
        coeffs = [_SQ(1 - p)] + [_SQ(p) / (d - 1)] * len(off)
    elif kind is NoiseKind.DEPOLARIZING:
        off = [(m, n) for m in range(d) for n in range(d) if (m, n) != (0, 0)]
        coeffs = [_SQ(1 - (d * d - 1) / (d * d) * p)] + [_SQ(p) / d] * len(off)
    else:
        raise ValueError(f"unknown noise kind {kind!r}")
    labels = [(0, 0)] + off
    weyls = [gates.weyl(m, n, d).matrix for m, n in labels]
    return tuple(labels), np.array(coeffs), tuple(weyls)


def kraus_set(kind: NoiseKind, d: int, p: float) -> KrausChannel:
    """Build the channel's Kraus operators with their exact coefficients."""
    labels, coeffs, weyls = _kraus_parts(kind, d, p)
    ops = tuple(c * w for c, w in zip(coeffs, weyls))
    return KrausChannel(kind=kind, d=d, p=float(p), labels=labels, operators=ops)


def apply_channel_to_wire(rho: DensityMatrix, channel: KrausChannel, wire: int) -> DensityMatrix:
    """Apply the single-qudit channel to one wire of a register."""
    if channel.d != rho.d:
        raise ValueError("channel and state dimensions differ")
    if not 1 <= wire <= rho.n:
        raise ValueError(f"wire {wire} out of range 1..{rho.n}")
    d, n = rho.d, rho.n
    axis = wire - 1
    shaped = rho.matrix.reshape([d] * (2 * n))
    acc = np.zeros_like(shaped)
    for op in channel.operators:
        out = np.tensordot(op, shaped, axes=([1], [axis]))
        out = np.moveaxis(out, 0, axis)
        out = np.tensordot(out, op.conj(), axes=([n + axis], [1]))
        acc += np.moveaxis(out, -1, n + axis)
    return DensityMatrix(d, n, acc.reshape(rho.matrix.shape))


def apply_two_qudit_noise(rho: DensityMatrix, channel: KrausChannel) -> DensityMatrix:
    """Hit both qudits of a two-wire state: ``sum_ij (E_i (x) E_j) rho (...)^dag``."""
    if rho.n != 2:
        raise ValueError(f"expected a two-qudit state, got {rho.n} wires")
    return apply_channel_to_wire(apply_channel_to_wire(rho, channel, 1), channel, 2)


def _decode_after_encode(d: int, m: int, n: int) -> np.ndarray:
    """The unitary pipeline (Hdag (x) I) . CNOTdag . (U[m,n] (x) I)."""
    eye = np.eye(d)
    return (
        tensor(gates.hadamard_dagger(d).matrix, eye)
        @ gates.cnot_dagger(d).matrix
        @ tensor(gates.u_mn(m, n, d).matrix, eye)
    )


def noisy_decoded_state(kind: NoiseKind, d: int, p: float, m: int, n: int) -> DensityMatrix:
    """Density-matrix route: noise on the shared pair, then encode and decode."""
    check_message(d, m, n)
    rho = DensityMatrix.from_pure(bell_state(d, 1))
    noisy = apply_two_qudit_noise(rho, kraus_set(kind, d, p))
    pipe = _decode_after_encode(d, m, n)
    return DensityMatrix(d, 2, pipe @ noisy.matrix @ pipe.conj().T)


@lru_cache(maxsize=None)
def _branch_weights(kind: NoiseKind, d: int, m: int, n: int) -> np.ndarray:
    """|amplitude|**2 of each Kraus-pair branch onto |m,n>, at unit coefficients.

    The shared pair is pure, so the decoded state is a sum of branch outer
    products and the fidelity is ``sum_ij (c_i c_j)**2 * weights[i, j]``.
    """
    _labels, _coeffs, weyls = _kraus_parts(kind, d, 0.5)
    stacked = np.array(weyls)
    pipe = _decode_after_encode(d, m, n)
    target = pipe.conj().T[:, basis_index((m, n), d)]
    window = target.conj().reshape(d, d)
    amps = np.einsum("ab,iak,jbk->ij", window, stacked, stacked, optimize=True) / np.sqrt(d)
    weights = np.abs(amps) ** 2
    weights.setflags(write=False)
    return weights


def simulate_noisy_dense_coding(kind: NoiseKind, d: int, p: float, m: int, n: int) -> float:
    """Exact fidelity of the noisy protocol for message ``(m, n)``."""
    check_message(d, m, n)
    _labels, coeffs, _weyls = _kraus_parts(kind, d, p)
    c2 = coeffs**2
    return float(c2 @ _branch_weights(kind, d, m, n) @ c2)


def closed_form_fidelity(kind: NoiseKind, d: int, p: float) -> float:
    """Closed-form fidelity (see module docstring); message-independent."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"error probability {p} outside [0, 1]")
    if kind in (NoiseKind.DIT_FLIP, NoiseKind.D_PHASE_FLIP):
        return (1 - p) ** 2 + p**2 / (d - 1)
    if kind is NoiseKind.DIT_PHASE_FLIP:
        return (1 - p) ** 2 + p**2 / (d - 1) ** 2
    if kind is NoiseKind.DEPOLARIZING:
        return (1 - (d * d - 1) / (d * d) * p) ** 2 + (d * d - 1) * p**2 / d**4
    raise ValueError(f"unknown noise kind {kind!r}")


def fidelity_vs_cost(kind: NoiseKind, quantum_cost: int, p: float) -> float:
    """Fidelity as a function of the protocol cost ``D = d + 4``.

    Valid for messages other than (0,0), whose cost is d+3; requires D >= 6.
    """
    if quantum_cost < 6:
        raise ValueError(f"quantum cost {quantum_cost} below 6 (d = D - 4 must be >= 2)")
    return closed_form_fidelity(kind, quantum_cost - 4, p)


@dataclass(frozen=True)
class FidelityRecord:
    kind: NoiseKind
    d: int
    p: float
    quantum_cost: int
    simulated: float
    closed_form: float

    @property
    def mismatch(self) -> float:
        return abs(self.simulated - self.closed_form)


def sweep(kind: NoiseKind, d_values, p_steps: int, message: tuple[int, int] = (0, 1)) -> list[FidelityRecord]:
    """Fidelity grid over dimensions and an inclusive [0, 1] probability grid.

    Every record carries both the simulated and the closed-form value plus the
    quantum cost ``D = d + 4`` of the (non-(0,0)) message.
    """
    if p_steps < 2:
        raise ValueError("need at least the two endpoint probabilities")
    records = []
    for d in d_values:
        m, n = message
        for p in np.linspace(0.0, 1.0, p_steps):
            records.append(
                FidelityRecord(
                    kind=kind,
                    d=d,
                    p=float(p),
                    quantum_cost=d + 4,
                    simulated=simulate_noisy_dense_coding(kind, d, float(p), m, n),
                    closed_form=closed_form_fidelity(kind, d, float(p)),
                )
            )
    return records


def write_sweep_csv(records, path) -> None:
    """Fixed-schema CSV: kind,d,D,p,fidelity_sim,fidelity_closed."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["kind", "d", "D", "p", "fidelity_sim", "fidelity_closed"])
        for rec in records:
            writer.writerow(
                [
                    rec.kind.value,
                    rec.d,
                    rec.quantum_cost,
                    f"{rec.p:.12g}",
                    f"{rec.simulated:.12g}",
                    f"{rec.closed_form:.12g}",
                ]
            )
