"""Finite models of accessible variables and their operator description.

Subpackages cover the partial order of variables over a finite point
space (varlattice), validated permutation symmetries (groupaction), the
operator constructions (hilbert), outcome probabilities (born), runnable
experiments (experiments) and a config-driven runner (cli).
"""

from .born import (
    DiscreteDistribution,
    LikelihoodModel,
    born_simple,
    born_trace,
    data_expectation,
    data_operator,
    expectation,
    likelihood_effect,
    mixed_state,
    prob_event,
)
from .experiments import (
    CHSH_OPTIMAL,
    ChshSetting,
    SpinModel,
    chsh_lhv,
    chsh_quantum,
    epr_bohm_report,
    exclusion_demo,
)
from .groupaction import GroupAction, close_generators, counting_measure, is_transitive, orbits, verify_group
from .hilbert import (
    DensityOperator,
    HermitianOperator,
    SpectralDecomposition,
    StateVector,
    conjugate,
    dot_product_operator,
    is_maximal_operator,
    operator_from_variable,
    singlet_state,
    spectral_decompose,
    tensor,
)
from .rng import RngStream
from .varlattice import (
    PhiSpace,
    Variable,
    VariableSystem,
    check_exclusion,
    equivalent,
    is_related,
    less_or_equal,
)

__version__ = "0.1.0"

__all__ = [
    "CHSH_OPTIMAL",
    "ChshSetting",
    "DensityOperator",
    "DiscreteDistribution",
    "GroupAction",
    "HermitianOperator",
    "LikelihoodModel",
    "PhiSpace",
    "RngStream",
    "SpectralDecomposition",
    "SpinModel",
    "StateVector",
    "Variable",
    "VariableSystem",
    "born_simple",
    "born_trace",
    "check_exclusion",
    "chsh_lhv",
    "chsh_quantum",
    "close_generators",
    "conjugate",
    "counting_measure",
    "data_expectation",
    "data_operator",
    "dot_product_operator",
    "epr_bohm_report",
    "equivalent",
    "exclusion_demo",
    "expectation",
    "is_maximal_operator",
    "is_related",
    "is_transitive",
    "less_or_equal",
    "likelihood_effect",
    "mixed_state",
    "operator_from_variable",
    "orbits",
    "prob_event",
    "singlet_state",
    "spectral_decompose",
    "tensor",
    "verify_group",
]
