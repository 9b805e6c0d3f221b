"""Small dense complex linear algebra for operator models.

Variables with r values become r x r Hermitian operators whose spectrum is
the value set; related variables are linked by unitary conjugation; states
are unit vectors or density operators.  The eigensolver is a cyclic Jacobi
iteration on Hermitian matrices: slow in the large but deterministic,
dependency-free and accurate at the dimensions used here (<= 64).

Phase convention: every reported eigenvector and state vector has its
first nonzero amplitude real and positive, so golden tests are bit-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10
PROJECTION_TOL = 1e-10
STATE_NORM_TOL = 1e-12
DENSITY_TRACE_TOL = 1e-10
DENSITY_PSD_TOL = 1e-10
EIGENVALUE_GROUP_RTOL = 1e-8
EIGENVALUE_GROUP_FLOOR = 1e-12
JACOBI_OFFDIAG_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
SPECTRAL_MAX_DIM = 64
PHASE_EPS = 1e-12


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


class ValidationError(ValueError):
    """An input violates its numeric contract (hermiticity, norm, ...)."""


class ConvergenceError(RuntimeError):
    """The Jacobi sweep budget was exhausted; input is ill-conditioned."""


def _as_square_complex(entries) -> np.ndarray:
    a = np.asarray(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def _frozen(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    a.flags.writeable = False
    return a


def fix_phase(amplitudes: np.ndarray) -> np.ndarray:
    """Rotate a vector so its first nonzero amplitude is real positive."""
    for x in amplitudes:
        if abs(x) > PHASE_EPS:
            return amplitudes * (abs(x) / x)
    return amplitudes


@dataclass(frozen=True)
class HermitianOperator:
    """A conjugate-symmetric complex matrix."""

    entries: np.ndarray = field(hash=False)

    def __post_init__(self) -> None:
        a = _as_square_complex(self.entries)
        if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
            raise ValidationError("matrix is not Hermitian within tolerance")
        object.__setattr__(self, "entries", _frozen(a))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True)
class StateVector:
    """A unit complex vector, phase-normalized on construction."""

    amplitudes: np.ndarray = field(hash=False)

    def __post_init__(self) -> None:
        v = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > STATE_NORM_TOL:
            raise ValidationError(f"state vector has norm {norm}, expected 1")
        object.__setattr__(self, "amplitudes", _frozen(fix_phase(v)))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


@dataclass(frozen=True)
class DensityOperator:
    """A positive semidefinite Hermitian matrix with unit trace."""

    entries: np.ndarray = field(hash=False)

    def __post_init__(self) -> None:
        a = _as_square_complex(self.entries)
        if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
            raise ValidationError("density matrix is not Hermitian within tolerance")
        tr = complex(np.trace(a))
        if abs(tr - 1.0) > DENSITY_TRACE_TOL:
            raise ValidationError(f"density matrix has trace {tr}, expected 1")
        eigenvalues, _, _ = _jacobi_eigh(a)
        if eigenvalues.min() < -DENSITY_PSD_TOL:
            raise ValidationError(
                f"density matrix has negative eigenvalue {eigenvalues.min()}"
            )
        object.__setattr__(self, "entries", _frozen(a))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues with multiplicities and orthogonal projections.

    The projections are idempotent, mutually orthogonal and sum to the
    identity; sum(value * projection) reconstructs the operator.
    """

    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    projections: tuple[HermitianOperator, ...]

    @property
    def dim(self) -> int:
        return self.projections[0].dim

    def grouping_tolerance(self) -> float:
        radius = max(abs(v) for v in self.eigenvalues)
        return max(EIGENVALUE_GROUP_RTOL * radius, EIGENVALUE_GROUP_FLOOR)

    def index_of(self, value: float) -> int:
        tol = self.grouping_tolerance()
        for i, v in enumerate(self.eigenvalues):
            if abs(v - value) <= tol:
                return i
        raise ValidationError(f"{value} is not in the spectrum {self.eigenvalues}")

    def projection_for(self, value: float) -> HermitianOperator:
        return self.projections[self.index_of(value)]


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _jacobi_eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Each rotation absorbs the phase of the pivot entry, reducing the 2x2
    block to the real symmetric case.  Returns eigenvalues sorted
    ascending, the matching orthonormal eigenvector columns, and the sweep
    count.  Raises ConvergenceError after the sweep budget.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    sweeps = 0
    if n > 1:
        # A skipped pivot contributes at most tol/(2n) so the final
        # off-diagonal norm stays below the sweep threshold.
        pivot_floor = JACOBI_OFFDIAG_TOL / (2.0 * n)
        while _offdiag_norm(a) >= JACOBI_OFFDIAG_TOL:
            if sweeps >= JACOBI_MAX_SWEEPS:
                raise ConvergenceError(
                    f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps"
                )
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    mag = abs(apq)
                    if mag <= pivot_floor:
                        continue
                    phase = apq / mag
                    angle = 0.5 * math.atan2(2.0 * mag, (a[q, q] - a[p, p]).real)
                    c, s = math.cos(angle), math.sin(angle)
                    cq, rq = s * phase.conjugate(), s * phase
                    colp, colq = a[:, p].copy(), a[:, q].copy()
                    a[:, p] = c * colp - cq * colq
                    a[:, q] = s * colp + c * phase.conjugate() * colq
                    rowp, rowq = a[p, :].copy(), a[q, :].copy()
                    a[p, :] = c * rowp - rq * rowq
                    a[q, :] = s * rowp + c * phase * rowq
                    vp, vq = v[:, p].copy(), v[:, q].copy()
                    v[:, p] = c * vp - cq * vq
                    v[:, q] = s * vp + c * phase.conjugate() * vq
            sweeps += 1
    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = v[:, order]
    for k in range(n):
        vectors[:, k] = fix_phase(vectors[:, k])
    return values, vectors, sweeps


def eigensystem(op: HermitianOperator) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and phase-fixed orthonormal eigenvectors."""
    values, vectors, _ = _jacobi_eigh(op.entries)
    return values, vectors


def spectral_decompose(op: HermitianOperator) -> SpectralDecomposition:
    """Group eigenvalues into distinct values and build eigenprojections.

    The grouping tolerance is relative to the spectral radius with an
    absolute floor, which separates small integer spectra cleanly while
    tolerating rounding.
    """
    if op.dim > SPECTRAL_MAX_DIM:
        raise DimensionError(f"spectral decomposition is limited to dim {SPECTRAL_MAX_DIM}")
    values, vectors, _ = _jacobi_eigh(op.entries)
    radius = float(np.max(np.abs(values))) if values.size else 0.0
    tol = max(EIGENVALUE_GROUP_RTOL * radius, EIGENVALUE_GROUP_FLOOR)
    groups: list[list[int]] = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[groups[-1][0]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    eigenvalues = []
    multiplicities = []
    projections = []
    for idxs in groups:
        eigenvalues.append(float(np.mean(values[idxs])))
        multiplicities.append(len(idxs))
        block = vectors[:, idxs]
        proj = block @ block.conj().T
        proj = (proj + proj.conj().T) / 2.0
        projections.append(HermitianOperator(proj))
    return SpectralDecomposition(
        eigenvalues=tuple(eigenvalues),
        multiplicities=tuple(multiplicities),
        projections=tuple(projections),
    )


def is_maximal_operator(op: HermitianOperator) -> bool:
    """True iff every eigenvalue is simple (all eigenspaces 1-dimensional)."""
    return all(m == 1 for m in spectral_decompose(op).multiplicities)


def operator_from_variable(
    values: Sequence[float], basis: Sequence[StateVector]
) -> HermitianOperator:
    """Build sum(u_i |i><i|) for distinct values on an orthonormal basis.

    The spectrum of the result is exactly the value set.  Duplicate values
    are rejected: they signal a non-maximal encoding, which must be
    expressed through projections with multiplicity instead.
    """
    if len(values) != len(basis):
        raise DimensionError("one basis vector per value required")
    vals = [float(u) for u in values]
    if len(set(vals)) != len(vals):
        raise ValidationError("values must be distinct")
    dim = basis[0].dim
    b = np.column_stack([s.amplitudes for s in basis])
    if b.shape != (dim, len(basis)):
        raise DimensionError("basis vectors have mismatched dimensions")
    gram = b.conj().T @ b
    if np.max(np.abs(gram - np.eye(len(basis)))) > ORTHONORMAL_TOL:
        raise ValidationError("basis is not orthonormal within tolerance")
    a = (b * np.asarray(vals)) @ b.conj().T
    return HermitianOperator((a + a.conj().T) / 2.0)


def conjugate(op: HermitianOperator, w: np.ndarray) -> HermitianOperator:
    """Return W^-1 op W for unitary W; the spectrum is preserved."""
    w = _as_square_complex(w)
    if w.shape[0] != op.dim:
        raise DimensionError("unitary dimension does not match the operator")
    if np.max(np.abs(w.conj().T @ w - np.eye(op.dim))) > UNITARY_TOL:
        raise ValidationError("matrix is not unitary within tolerance")
    out = w.conj().T @ op.entries @ w
    return HermitianOperator((out + out.conj().T) / 2.0)


Tensorable = Union[HermitianOperator, StateVector, DensityOperator]


def tensor(a: Tensorable, b: Tensorable) -> Tensorable:
    """Kronecker product of two objects of the same kind."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, HermitianOperator) and isinstance(b, HermitianOperator):
        return HermitianOperator(np.kron(a.entries, b.entries))
    if isinstance(a, DensityOperator) and isinstance(b, DensityOperator):
        return DensityOperator(np.kron(a.entries, b.entries))
    raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def identity_operator(dim: int) -> HermitianOperator:
    return HermitianOperator(np.eye(dim, dtype=complex))


def projector_from_state(state: StateVector) -> HermitianOperator:
    return HermitianOperator(np.outer(state.amplitudes, state.amplitudes.conj()))


def density_from_state(state: StateVector) -> DensityOperator:
    return DensityOperator(np.outer(state.amplitudes, state.amplitudes.conj()))


def projection_vector(projection: HermitianOperator) -> StateVector:
    """Extract the phase-fixed unit vector of a rank-1 projection."""
    if abs(projection.trace() - 1.0) > PROJECTION_TOL:
        raise ValidationError("projection is not rank one")
    col = int(np.argmax(np.linalg.norm(projection.entries, axis=0)))
    vec = projection.entries[:, col]
    return StateVector(vec / np.linalg.norm(vec))


def pauli_x() -> HermitianOperator:
    return HermitianOperator(np.array([[0, 1], [1, 0]], dtype=complex))


def pauli_y() -> HermitianOperator:
    return HermitianOperator(np.array([[0, -1j], [1j, 0]], dtype=complex))


def pauli_z() -> HermitianOperator:
    return HermitianOperator(np.array([[1, 0], [0, -1]], dtype=complex))


def spin_component(direction: Sequence[float]) -> HermitianOperator:
    """Two-valued spin operator along a unit direction.

    Planar directions (u, v) are embedded as u*sigma_z + v*sigma_x, so the
    angle in the measurement plane is measured from the z spin axis and
    all matrices stay real; 3-vectors (x, y, z) use all three components.
    """
    d = [float(x) for x in direction]
    norm = math.sqrt(sum(x * x for x in d))
    if abs(norm - 1.0) > 1e-12:
        raise ValidationError("direction must be a unit vector")
    if len(d) == 2:
        m = d[0] * pauli_z().entries + d[1] * pauli_x().entries
    elif len(d) == 3:
        m = d[0] * pauli_x().entries + d[1] * pauli_y().entries + d[2] * pauli_z().entries
    else:
        raise DimensionError("direction must have 2 or 3 components")
    return HermitianOperator(m)


def dot_product_operator() -> HermitianOperator:
    """The two-particle spin dot product: sum of sigma_c x sigma_c.

    Hermitian and traceless with spectrum {-3, +1, +1, +1}; the simple
    eigenvalue -3 belongs to the singlet state.
    """
    total = np.zeros((4, 4), dtype=complex)
    for sigma in (pauli_x(), pauli_y(), pauli_z()):
        total += np.kron(sigma.entries, sigma.entries)
    return HermitianOperator(total)


def singlet_state() -> StateVector:
    """(|+-> - |-+>)/sqrt(2) in the standard product basis."""
    amp = np.zeros(4, dtype=complex)
    amp[1] = 1.0 / math.sqrt(2.0)
    amp[2] = -1.0 / math.sqrt(2.0)
    return StateVector(amp)
