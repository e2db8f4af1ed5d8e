"""Dense complex linear algebra for small registers of qudits.

A register holds ``n`` wires, each a ``d``-level system.  Wire 1 is the most
significant digit of the flat basis index: ``|q1, ..., qn>`` sits at index
``q1*d**(n-1) + ... + qn``.  Every matrix literal in the test suite is written
against this convention, and ``np.kron(A, B)`` composes operators so that ``A``
acts on the more significant wire.

All values are complex128 and dense; the systems of interest stay below a few
thousand amplitudes, so exactness and simplicity win over sparsity.  States and
density matrices are immutable after construction (their arrays are marked
read-only) and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Identity-level comparisons (gate algebra, norms) use IDENTITY_TOL; aggregate
# quantities built from many branches (probability sums, sweeps) use AGGREGATE_TOL.
IDENTITY_TOL = 1e-12
AGGREGATE_TOL = 1e-10
# Below this squared norm a measurement branch is treated as impossible and
# reported as an explicit empty branch instead of a renormalized state.
EMPTY_BRANCH_PROB = 1e-18


def basis_index(digits, d: int) -> int:
    """Flat index of ``|digits>`` with wire 1 (first digit) most significant."""
    idx = 0
    for q in digits:
        if not 0 <= q < d:
            raise ValueError(f"basis digit {q} out of range for d={d}")
        idx = idx * d + q
    return idx


def basis_digits(index: int, d: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`basis_index`."""
    digits = []
    for _ in range(n):
        index, q = divmod(index, d)
        digits.append(q)
    return tuple(reversed(digits))


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class PureState:
    """Exact state vector over ``n`` wires of dimension ``d``."""

    d: int
    n: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"wire dimension must be >= 2, got {self.d}")
        if self.n < 1:
            raise ValueError(f"need at least one wire, got {self.n}")
        amps = _frozen(np.asarray(self.amplitudes).reshape(-1))
        if amps.size != self.d**self.n:
            raise ValueError(
                f"expected {self.d**self.n} amplitudes for d={self.d}, n={self.n}, "
                f"got {amps.size}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > IDENTITY_TOL:
            raise ValueError(f"state not normalized: |amps| = {norm!r}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, d: int, n: int) -> "PureState":
        amps = np.zeros(d**n, dtype=complex)
        amps[0] = 1.0
        return cls(d, n, amps)

    @classmethod
    def from_digits(cls, d: int, digits) -> "PureState":
        digits = tuple(digits)
        amps = np.zeros(d ** len(digits), dtype=complex)
        amps[basis_index(digits, d)] = 1.0
        return cls(d, len(digits), amps)

    def tensor(self, other: "PureState") -> "PureState":
        """Product state ``self (x) other``; ``self`` takes the leading wires."""
        if other.d != self.d:
            raise ValueError("cannot combine registers of different wire dimension")
        return PureState(self.d, self.n + other.n, np.kron(self.amplitudes, other.amplitudes))

    def reshaped(self) -> np.ndarray:
        """Read-only view with one axis per wire (axis 0 = wire 1)."""
        return self.amplitudes.reshape([self.d] * self.n)

    def overlap(self, other: "PureState") -> float:
        """``|<self|other>|`` — the global-phase-invariant overlap."""
        return float(np.abs(np.vdot(self.amplitudes, other.amplitudes)))


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed-state counterpart of :class:`PureState`; Hermitian, trace one."""

    d: int
    n: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.d < 2 or self.n < 1:
            raise ValueError(f"bad register shape d={self.d}, n={self.n}")
        dim = self.d**self.n
        mat = _frozen(np.asarray(self.matrix))
        if mat.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix, got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > IDENTITY_TOL:
            raise ValueError("density matrix not Hermitian")
        if abs(np.trace(mat) - 1.0) > IDENTITY_TOL:
            raise ValueError(f"density matrix trace {np.trace(mat)!r} != 1")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_pure(cls, psi: PureState) -> "DensityMatrix":
        return cls(psi.d, psi.n, np.outer(psi.amplitudes, psi.amplitudes.conj()))

    def min_eigenvalue(self) -> float:
        return float(np.min(np.linalg.eigvalsh(self.matrix)))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the left factor acts on the more significant wires."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def is_unitary(matrix: np.ndarray, atol: float = IDENTITY_TOL) -> bool:
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    delta = matrix @ matrix.conj().T - np.eye(matrix.shape[0])
    return bool(np.max(np.abs(delta)) <= atol)


def _check_wires(wires, n: int) -> tuple[int, ...]:
    wires = tuple(wires)
    if len(set(wires)) != len(wires):
        raise ValueError(f"duplicate wire in {wires}")
    for w in wires:
        if not 1 <= w <= n:
            raise ValueError(f"wire {w} out of range 1..{n}")
    return wires


def embed_apply(state: PureState, gate: np.ndarray, wires) -> PureState:
    """Apply ``gate`` to the named wires (1-based), identity elsewhere.

    ``gate`` must be ``d**k x d**k`` for ``k = len(wires)``; the wires may be
    non-adjacent and in any order (the first gate axis matches the first wire
    listed).
    """
    wires = _check_wires(wires, state.n)
    k = len(wires)
    d, n = state.d, state.n
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (d**k, d**k):
        raise ValueError(f"gate shape {gate.shape} does not match {k} wire(s) of dimension {d}")
    axes = [w - 1 for w in wires]
    tensor_gate = gate.reshape([d] * (2 * k))
    psi = np.tensordot(tensor_gate, state.reshaped(), axes=(range(k, 2 * k), axes))
    psi = np.moveaxis(psi, range(k), axes)
    return PureState(d, n, psi.reshape(-1))


def measure_project(state: PureState, wires, outcome) -> tuple[float, PureState | None]:
    """Project the named wires onto the basis outcome.

    Returns ``(probability, conditioned state)``.  The conditioned state keeps
    all wires, with the measured ones collapsed.  Impossible branches come back
    as ``(probability, None)`` so sweeps over outcomes can skip them uniformly.
    """
    wires = _check_wires(wires, state.n)
    outcome = tuple(outcome)
    if len(outcome) != len(wires):
        raise ValueError(f"outcome {outcome} does not match wires {wires}")
    for q in outcome:
        if not 0 <= q < state.d:
            raise ValueError(f"outcome digit {q} out of range for d={state.d}")
    selector: list = [slice(None)] * state.n
    for w, q in zip(wires, outcome):
        selector[w - 1] = q
    psi = state.reshaped()
    branch = psi[tuple(selector)]
    prob = float(np.sum(np.abs(branch) ** 2))
    if prob < EMPTY_BRANCH_PROB:
        return prob, None
    projected = np.zeros_like(psi)
    projected[tuple(selector)] = branch / np.sqrt(prob)
    return prob, PureState(state.d, state.n, projected.reshape(-1))


def evolve_density(rho: DensityMatrix, ops) -> DensityMatrix:
    """``rho -> sum_k O_k rho O_k^dagger`` for a list of equal-size operators."""
    dim = rho.d**rho.n
    acc = np.zeros((dim, dim), dtype=complex)
    for op in ops:
        op = np.asarray(op, dtype=complex)
        if op.shape != (dim, dim):
            raise ValueError(f"operator shape {op.shape} does not match state dimension {dim}")
        acc += op @ rho.matrix @ op.conj().T
    return DensityMatrix(rho.d, rho.n, acc)


def fidelity_pure(ket: PureState, rho: DensityMatrix) -> float:
    """``<psi|rho|psi>``, clamped into [0, 1] against rounding at the 1e-12 level."""
    if (ket.d, ket.n) != (rho.d, rho.n):
        raise ValueError("state and density matrix live on different registers")
    value = float(np.real(np.vdot(ket.amplitudes, rho.matrix @ ket.amplitudes)))
    return min(max(value, 0.0), 1.0)
