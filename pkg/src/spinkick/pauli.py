"""Exact complex 2x2 operator algebra and Bloch-vector representations.

All qubit-side objects are dense 2x2 or 4x4 complex arrays; values are
treated as immutable and every operation is a pure function, so everything
here is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonHermitian, NonUnitTrace, NonUnitVector

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

UNIT_TOL = 1e-12


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def dot_sigma(v) -> np.ndarray:
    """Pauli observable v . sigma for a real 3-vector v."""
    v = np.asarray(v, dtype=float)
    return np.einsum("i,ijk->jk", v, PAULI)


def is_hermitian(m, tol: float = 1e-10) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def bloch_to_density(u) -> np.ndarray:
    """Density matrix (1 + u.sigma)/2 for Bloch vector u.

    Vectors with |u| > 1 are accepted on purpose: transition maps can send
    physical states outside the ball and we need to represent the result.
    """
    return (I2 + dot_sigma(u)) / 2.0


def density_to_bloch(rho, tol: float = 1e-10) -> np.ndarray:
    """Bloch vector u_i = tr(rho sigma_i) of a Hermitian unit-trace matrix."""
    rho = np.asarray(rho, dtype=complex)
    if not is_hermitian(rho, tol):
        raise NonHermitian(f"density matrix not Hermitian within {tol}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise NonUnitTrace(f"trace {tr} differs from 1 by more than {tol}")
    return np.einsum("ijk,kj->i", PAULI, rho).real


def is_physical_bloch(u, tol: float = 1e-12) -> bool:
    """Whether u lies in the closed Bloch ball (up to tol)."""
    return bool(np.linalg.norm(np.asarray(u, dtype=float)) <= 1.0 + tol)


def projector(r, s: int) -> np.ndarray:
    """Eigenprojector (1 + s r.sigma)/2 of the Pauli observable r.sigma.

    r must be a unit vector to within 1e-12; out-of-tolerance input is an
    error rather than being silently normalized.
    """
    r = np.asarray(r, dtype=float)
    if abs(np.linalg.norm(r) - 1.0) > UNIT_TOL:
        raise NonUnitVector(f"|r| = {np.linalg.norm(r)} is not 1 within {UNIT_TOL}")
    if s not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return (I2 + s * dot_sigma(r)) / 2.0


@dataclass(frozen=True)
class AffineBlochMap:
    """Affine action u -> A u + b on Bloch vectors.

    Trace preservation is structural: any affine Bloch map corresponds to a
    trace-preserving linear map on operators.
    """

    matrix: np.ndarray
    shift: np.ndarray

    def __post_init__(self):
        a = _freeze(np.array(self.matrix, dtype=float).reshape(3, 3))
        b = _freeze(np.array(self.shift, dtype=float).reshape(3))
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "shift", b)

    @classmethod
    def identity(cls) -> "AffineBlochMap":
        return cls(np.eye(3), np.zeros(3))

    @property
    def is_unital(self) -> bool:
        return bool(np.linalg.norm(self.shift) <= 1e-12)


def apply_affine(m: AffineBlochMap, u) -> np.ndarray:
    """A u + b."""
    return m.matrix @ np.asarray(u, dtype=float) + m.shift


@dataclass(frozen=True)
class OperatorBasis:
    """Four 2x2 operators orthonormal under <A,B> = tr(B^dag A)."""

    ops: np.ndarray
    tol: float = field(default=1e-12, compare=False)

    def __post_init__(self):
        ops = np.array(self.ops, dtype=complex).reshape(4, 2, 2)
        gram = np.einsum("byx,ayx->ab", ops.conj(), ops)
        if np.max(np.abs(gram - np.eye(4))) > self.tol:
            raise ValueError(
                f"basis not orthonormal: max Gram deviation "
                f"{np.max(np.abs(gram - np.eye(4))):.3e} > {self.tol}"
            )
        object.__setattr__(self, "ops", _freeze(ops))

    def __getitem__(self, a: int) -> np.ndarray:
        return self.ops[a]


def pauli_basis() -> OperatorBasis:
    """The normalized Pauli basis {1, sx, sy, sz}/sqrt(2)."""
    return OperatorBasis(np.stack([I2, SIGMA_X, SIGMA_Y, SIGMA_Z]) / np.sqrt(2.0))
