"""Transition probabilities, mixed states, trace rules and noisy data.

The probability of finding value v_j for one maximal variable, given the
state of another, is the squared overlap of the two eigenvectors.  The
trace forms generalize this to mixed states, to events, to expectations
and to imperfect measurements described by a likelihood table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

from .hilbert import (
    DensityOperator,
    DimensionError,
    HermitianOperator,
    SpectralDecomposition,
    StateVector,
    ValidationError,
)

Label = Hashable

PROB_SUM_TOL = 1e-12
PROB_CLAMP_TOL = 1e-10
PROJECTION_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10
IMAG_TOL = 1e-10
AMPLITUDE_TOL = 1e-12


class ProbabilityError(ValueError):
    """A computed probability violates [0, 1] beyond rounding tolerance."""


def _clamp_probability(x: float, tol: float = PROB_CLAMP_TOL) -> float:
    """Clamp rounding residue onto [0, 1]; larger violations are bugs."""
    if -tol <= x < 0.0:
        return 0.0
    if 1.0 < x <= 1.0 + tol:
        return 1.0
    if x < 0.0 or x > 1.0:
        raise ProbabilityError(f"probability {x} is outside [0, 1] beyond tolerance")
    return x


@dataclass(frozen=True)
class DiscreteDistribution:
    """A probability table over finitely many value labels."""

    support: tuple[Label, ...]
    probabilities: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.support) != len(self.probabilities):
            raise ValueError("one probability per support value required")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support values must be distinct")
        if any(p < 0.0 for p in self.probabilities):
            raise ValueError("probabilities must be nonnegative")
        total = sum(self.probabilities)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total}, expected 1")

    def probability_of(self, value: Label) -> float:
        return self.probabilities[self.support.index(value)]


@dataclass(frozen=True)
class LikelihoodModel:
    """p(z | value) as a rectangular table: rows are data values z,
    columns are variable values u."""

    data_values: tuple[Label, ...]
    variable_values: tuple[Label, ...]
    table: np.ndarray = field(hash=False)

    def __post_init__(self) -> None:
        t = np.asarray(self.table, dtype=float)
        if t.shape != (len(self.data_values), len(self.variable_values)):
            raise ValueError(
                f"table shape {t.shape} does not match "
                f"{len(self.data_values)} data values x {len(self.variable_values)} variable values"
            )
        if np.any(t < 0.0) or np.any(t > 1.0):
            raise ValueError("likelihood entries must lie in [0, 1]")
        sums = t.sum(axis=0)
        if np.max(np.abs(sums - 1.0)) > PROB_SUM_TOL:
            raise ValueError("each column p(. | u) must sum to 1")
        frozen = t.copy()
        frozen.flags.writeable = False
        object.__setattr__(self, "table", frozen)

    def probability(self, z: Label, u: Label) -> float:
        return float(self.table[self.data_values.index(z), self.variable_values.index(u)])

    def likelihood_row(self, z: Label) -> np.ndarray:
        """The likelihood of each variable value for one observed z."""
        return self.table[self.data_values.index(z), :].copy()

    def conditional_means(self) -> np.ndarray:
        """E(z | u) per variable value; requires real data values."""
        zs = np.asarray([float(z) for z in self.data_values])
        return zs @ self.table

    def distinguishes_values(self) -> bool:
        """True iff no two variable values share an identical likelihood
        column.  Exposed for diagnostics, never enforced."""
        cols = [tuple(self.table[:, j]) for j in range(self.table.shape[1])]
        return len(set(cols)) == len(cols)


def born_simple(prepared: StateVector, outcome: StateVector) -> float:
    """Squared overlap |<prepared|outcome>|^2."""
    if prepared.dim != outcome.dim:
        raise DimensionError("states have different dimensions")
    amp = np.vdot(prepared.amplitudes, outcome.amplitudes)
    return _clamp_probability(float(abs(amp) ** 2))


def mixed_state(
    dist: DiscreteDistribution, decomposition: SpectralDecomposition
) -> DensityOperator:
    """Probability-weighted mixture of normalized eigenprojections.

    Each projection is divided by its rank (uniform conditional weight
    inside a degenerate eigenspace), so the result always has unit trace.
    """
    if len(dist.support) != len(decomposition.eigenvalues):
        raise ValidationError("distribution support does not match the spectrum")
    rho = np.zeros((decomposition.dim, decomposition.dim), dtype=complex)
    used: set[int] = set()
    for value, prob in zip(dist.support, dist.probabilities):
        idx = decomposition.index_of(float(value))
        if idx in used:
            raise ValidationError(f"support value {value} matches an already-used eigenvalue")
        used.add(idx)
        proj = decomposition.projections[idx]
        rho += (prob / decomposition.multiplicities[idx]) * proj.entries
    return DensityOperator(rho)


def _require_projection(projection: HermitianOperator) -> None:
    p = projection.entries
    if np.max(np.abs(p @ p - p)) > PROJECTION_TOL:
        raise ValidationError("operator is not idempotent within tolerance")


def born_trace(rho: DensityOperator, projection: HermitianOperator) -> float:
    """trace(rho . projection): probability of the projected outcome."""
    if rho.dim != projection.dim:
        raise DimensionError("density and projection have different dimensions")
    _require_projection(projection)
    value = complex(np.trace(rho.entries @ projection.entries))
    if abs(value.imag) > IMAG_TOL:
        raise ValidationError(f"trace has imaginary residue {value.imag}")
    return _clamp_probability(value.real)


def expectation(rho: DensityOperator, op: HermitianOperator) -> float:
    """trace(rho . op): the mean of the operator's variable in the state."""
    if rho.dim != op.dim:
        raise DimensionError("density and operator have different dimensions")
    value = complex(np.trace(rho.entries @ op.entries))
    if abs(value.imag) > IMAG_TOL:
        raise ValidationError(f"trace has imaginary residue {value.imag}")
    return value.real


def prob_event(
    rho: DensityOperator, decomposition: SpectralDecomposition, event: Iterable[float]
) -> float:
    """Probability that the variable lands in a set of spectrum values."""
    total = np.zeros((decomposition.dim, decomposition.dim), dtype=complex)
    for value in event:
        total += decomposition.projection_for(float(value)).entries
    return born_trace(rho, HermitianOperator(total))


def _match_variable_values(
    model: LikelihoodModel, decomposition: SpectralDecomposition
) -> list[int]:
    """Map each model variable value to its spectrum index, bijectively."""
    if len(model.variable_values) != len(decomposition.eigenvalues):
        raise ValidationError("likelihood variable values do not match the spectrum size")
    indices = []
    for u in model.variable_values:
        idx = decomposition.index_of(float(u))
        if idx in indices:
            raise ValidationError(f"variable value {u} matches an already-used eigenvalue")
        indices.append(idx)
    return indices


def data_operator(
    model: LikelihoodModel, decomposition: SpectralDecomposition
) -> HermitianOperator:
    """Operator for noisy data: sum over values of E(z | u) times the
    eigenprojection of u.  Its trace rule gives the total data mean."""
    indices = _match_variable_values(model, decomposition)
    means = model.conditional_means()
    total = np.zeros((decomposition.dim, decomposition.dim), dtype=complex)
    for mean, idx in zip(means, indices):
        total += float(mean) * decomposition.projections[idx].entries
    return HermitianOperator(total)


def data_expectation(
    rho: DensityOperator, model: LikelihoodModel, decomposition: SpectralDecomposition
) -> float:
    return expectation(rho, data_operator(model, decomposition))


def likelihood_effect(
    model: LikelihoodModel, z: Label, basis: Sequence[StateVector]
) -> HermitianOperator:
    """The effect operator sum_i p(z|u_i) |i><i| for one observed z.

    The basis must be orthonormal and ordered like the model's variable
    values.  Eigenvalues of the result are the likelihood row, so it
    always satisfies 0 <= F <= I.
    """
    if len(basis) != len(model.variable_values):
        raise ValidationError("one basis vector per variable value required")
    b = np.column_stack([s.amplitudes for s in basis])
    gram = b.conj().T @ b
    if np.max(np.abs(gram - np.eye(len(basis)))) > ORTHONORMAL_TOL:
        raise ValidationError("basis is not orthonormal within tolerance")
    row = model.likelihood_row(z)
    f = (b * row) @ b.conj().T
    return HermitianOperator((f + f.conj().T) / 2.0)


def compose_independent(z1: complex, z2: complex) -> complex:
    """Amplitude of the joint independent event: the plain product.

    |z1*z2|^2 = |z1|^2 * |z2|^2, matching the product rule for
    probabilities of independent events.
    """
    for z in (z1, z2):
        if abs(z) > 1.0 + AMPLITUDE_TOL:
            raise ValidationError(f"amplitude modulus {abs(z)} exceeds 1")
    return complex(z1) * complex(z2)


def effect_within_unit_interval(
    effect: HermitianOperator, tol: float = PROB_CLAMP_TOL
) -> bool:
    """Check 0 <= F <= I through the spectrum."""
    from .hilbert import spectral_decompose

    values = spectral_decompose(effect).eigenvalues
    return min(values) >= -tol and max(values) <= 1.0 + tol


def outcome_distribution(
    rho: DensityOperator, decomposition: SpectralDecomposition
) -> DiscreteDistribution:
    """Full outcome table P(value) = trace(rho . projection(value))."""
    probs = [born_trace(rho, p) for p in decomposition.projections]
    total = sum(probs)
    if abs(total - 1.0) > 1e-10:
        raise ProbabilityError(f"outcome probabilities sum to {total}")
    # Renormalize the rounding residue so the distribution contract holds.
    probs = [p / total for p in probs]
    return DiscreteDistribution(
        support=tuple(decomposition.eigenvalues), probabilities=tuple(probs)
    )
