"""Catalog of d-dimensional gates with cost metadata and decompositions.

Each constructor returns an immutable :class:`GateInstance` carrying the exact
matrix, an integer cost, and enough information to decompose composites into
unit-cost basic gates.  Cost follows one rule everywhere: a gate costs 0 iff
its matrix is the identity, basic single-qudit gates and CNOT cost 1, and a
composite costs the length of its basic-gate decomposition (Control-Z -> 3,
CNOT-dagger -> d-1).

Conventions: ``w = exp(2*pi*i/d)``; index arithmetic is mod d, so expressions
like ``d - k`` always land back in ``0..d-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .linalg import IDENTITY_TOL, tensor


class GateFamily(str, Enum):
    H = "H"
    HDAG = "Hdag"
    CNOT = "CNOT"
    CNOTDAG = "CNOTdag"
    XSHIFT = "X"
    ZPHASE = "Z"
    PGATE = "P"
    UMN = "U"
    CZ = "CZ"
    WEYL = "W"
    PAULI_X = "PauliX"
    PAULI_Y = "PauliY"
    PAULI_Z = "PauliZ"
    IDENTITY = "I"
    # Product operators Z_k X_k used as teleportation corrections.
    ZX = "ZX"


@dataclass(frozen=True, eq=False)
class GateInstance:
    """A named, parameterized unitary with its matrix and quantum cost."""

    family: GateFamily
    d: int
    params: tuple[int, ...]
    arity: int
    matrix: np.ndarray = field(repr=False)
    cost: int

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def label(self) -> str:
        if self.params:
            return f"{self.family.value}[{','.join(map(str, self.params))}]"
        return self.family.value

    @property
    def is_identity(self) -> bool:
        return self.cost == 0

    def __repr__(self):
        return f"GateInstance({self.label}, d={self.d})"


def _matrix_is_identity(matrix: np.ndarray) -> bool:
    return bool(np.max(np.abs(matrix - np.eye(matrix.shape[0]))) <= IDENTITY_TOL)


def _instance(family, d, params, arity, matrix, cost_if_nontrivial=1) -> GateInstance:
    cost = 0 if _matrix_is_identity(matrix) else cost_if_nontrivial
    return GateInstance(family, d, tuple(params), arity, matrix, cost)


def _check_dim(d: int):
    if d < 2:
        raise ValueError(f"gate dimension must be >= 2, got {d}")


def _reduce_param(k: int, d: int) -> int:
    if k < 0:
        raise ValueError(f"negative gate parameter {k}")
    return k % d


def _phases(exponents: np.ndarray, d: int) -> np.ndarray:
    """``w**exponents`` evaluated through exact residues for clean unitarity."""
    return np.exp(2j * np.pi * (np.asarray(exponents) % d) / d)


def hadamard(d: int) -> GateInstance:
    """Fourier gate: entries ``w**(x*y) / sqrt(d)``."""
    _check_dim(d)
    r = np.arange(d)
    mat = _phases(np.outer(r, r), d) / np.sqrt(d)
    return _instance(GateFamily.H, d, (), 1, mat)


def hadamard_dagger(d: int) -> GateInstance:
    """Inverse Fourier gate: entries ``w**(x*(d-y)) / sqrt(d)``; equals H at d=2."""
    _check_dim(d)
    r = np.arange(d)
    mat = _phases(np.outer(r, (d - r) % d), d) / np.sqrt(d)
    return _instance(GateFamily.HDAG, d, (), 1, mat)


def cnot(d: int) -> GateInstance:
    """``|x,y> -> |x, x+y mod d>``; the sole two-qudit basic gate."""
    _check_dim(d)
    mat = np.zeros((d * d, d * d), dtype=complex)
    for x in range(d):
        for y in range(d):
            mat[x * d + (x + y) % d, x * d + y] = 1.0
    return _instance(GateFamily.CNOT, d, (), 2, mat)


def cnot_dagger(d: int) -> GateInstance:
    """``|x,y> -> |x, y+(d-1)x mod d>``; equals CNOT**(d-1), hence cost d-1."""
    _check_dim(d)
    mat = np.zeros((d * d, d * d), dtype=complex)
    for x in range(d):
        for y in range(d):
            mat[x * d + (y + (d - 1) * x) % d, x * d + y] = 1.0
    return _instance(GateFamily.CNOTDAG, d, (), 2, mat, cost_if_nontrivial=d - 1)


def x_shift(k: int, d: int) -> GateInstance:
    """Cyclic shift by k: ``|s> -> |s+k mod d>``."""
    _check_dim(d)
    k = _reduce_param(k, d)
    mat = np.zeros((d, d), dtype=complex)
    for s in range(d):
        mat[(s + k) % d, s] = 1.0
    return _instance(GateFamily.XSHIFT, d, (k,), 1, mat)


def z_phase(k: int, d: int) -> GateInstance:
    """``sum_j w**(k*j) |j><d-j|`` — what a Control-Z applies for control value k.

    Equals ``H_d X_{k,d} H_d``; note the built-in index reflection, so Z_0 is
    the identity only at d=2.
    """
    _check_dim(d)
    k = _reduce_param(k, d)
    mat = np.zeros((d, d), dtype=complex)
    for j in range(d):
        mat[j, (d - j) % d] = _phases(np.array(k * j), d)
    return _instance(GateFamily.ZPHASE, d, (k,), 1, mat)


def p_gate(k: int, d: int) -> GateInstance:
    """Involution ``|s> -> |k-s mod d>`` used to retarget controlled gates."""
    _check_dim(d)
    k = _reduce_param(k, d)
    mat = np.zeros((d, d), dtype=complex)
    for s in range(d):
        mat[s, (k - s) % d] = 1.0
    return _instance(GateFamily.PGATE, d, (k,), 1, mat)


def u_mn(m: int, n: int, d: int) -> GateInstance:
    """Dense-coding encoder ``sum_u w**(m*u) |u><u+n|`` (shifts down by n)."""
    _check_dim(d)
    m, n = _reduce_param(m, d), _reduce_param(n, d)
    mat = np.zeros((d, d), dtype=complex)
    for u in range(d):
        mat[u, (n + u) % d] = _phases(np.array(m * u), d)
    return _instance(GateFamily.UMN, d, (m, n), 1, mat)


def weyl(m: int, n: int, d: int) -> GateInstance:
    """Weyl operator ``sum_j w**(j*m) |j+n><j|`` (shifts up by n)."""
    _check_dim(d)
    m, n = _reduce_param(m, d), _reduce_param(n, d)
    mat = np.zeros((d, d), dtype=complex)
    for j in range(d):
        mat[(j + n) % d, j] = _phases(np.array(j * m), d)
    return _instance(GateFamily.WEYL, d, (m, n), 1, mat)


def control_z(d: int) -> GateInstance:
    """``(I (x) H) CNOT (I (x) H)``; applies Z_k to the target for control |k>."""
    _check_dim(d)
    h = hadamard(d).matrix
    eye_h = tensor(np.eye(d), h)
    mat = eye_h @ cnot(d).matrix @ eye_h
    return _instance(GateFamily.CZ, d, (), 2, mat, cost_if_nontrivial=3)


def identity(d: int) -> GateInstance:
    _check_dim(d)
    return GateInstance(GateFamily.IDENTITY, d, (), 1, np.eye(d, dtype=complex), 0)


def pauli_x() -> GateInstance:
    return _instance(GateFamily.PAULI_X, 2, (), 1, np.array([[0, 1], [1, 0]]))


def pauli_y() -> GateInstance:
    return _instance(GateFamily.PAULI_Y, 2, (), 1, np.array([[0, -1j], [1j, 0]]))


def pauli_z() -> GateInstance:
    return _instance(GateFamily.PAULI_Z, 2, (), 1, np.array([[1, 0], [0, -1]]))


def zx_product(zk: int, xk: int, d: int) -> GateInstance:
    """Correction operator ``Z_zk X_xk`` (X applied first)."""
    _check_dim(d)
    zk, xk = _reduce_param(zk, d), _reduce_param(xk, d)
    z, x = z_phase(zk, d), x_shift(xk, d)
    mat = z.matrix @ x.matrix
    cost = 0 if _matrix_is_identity(mat) else z.cost + x.cost
    return GateInstance(GateFamily.ZX, d, (zk, xk), 1, mat, cost)


# Decomposition entries are (basic gate, relative wires) in application order:
# the first entry acts first, so the matrix product runs right to left.
Placed = tuple[GateInstance, tuple[int, ...]]


def decompose(gate: GateInstance) -> list[Placed]:
    """Split a catalog gate into placed unit-cost basic gates.

    Identity instances decompose to nothing; basic gates return themselves.
    The ordered product of the embedded factors reproduces the gate matrix.
    """
    if gate.is_identity:
        return []
    d = gate.d
    if gate.family is GateFamily.CNOTDAG:
        return [(cnot(d), (0, 1))] * (d - 1)
    if gate.family is GateFamily.CZ:
        h = hadamard(d)
        return [(h, (1,)), (cnot(d), (0, 1)), (h, (1,))]
    if gate.family is GateFamily.ZX:
        zk, xk = gate.params
        factors = [x_shift(xk, d), z_phase(zk, d)]
        return [(g, (0,)) for g in factors if not g.is_identity]
    wires = tuple(range(gate.arity))
    return [(gate, wires)]
