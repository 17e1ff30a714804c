"""Entanglement of two-qubit states measured by the weight of the maximally
mixed state needed to make them separable."""
from .entanglement import (
    ConcurrenceValue,
    concurrence,
    concurrence_pure,
    concurrence_rank2_closed,
    concurrence_rank4_closed,
    entropy_pure,
    is_separable_ppt,
    spin_flip,
)
from .omega import (
    Branch,
    Method,
    OmegaResult,
    omega_c_bisect,
    omega_c_pure,
    omega_c_rank2,
    omega_c_rank4,
    sweep,
)
from .states import (
    DensityMatrix,
    Ensemble,
    PureState,
    Rank2Member,
    StructuredRank2,
    StructuredRank4,
    Subspace,
    density_of_ensemble,
    density_of_pure,
    max_mixed,
    mix_with_max_mixed,
    rank4_stats,
)

__version__ = "0.1.0"
