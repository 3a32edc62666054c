"""Quantum channels, their time reversals and fluctuation-relation checks."""
from .channel import (
    QuantumChannel,
    apply,
    canonical_kraus,
    channels_equal,
    choi,
    choi_spectra_equal,
    compose,
    dual,
    identity_channel,
    is_bistochastic,
    is_selfdual,
    is_trace_preserving,
    is_unital,
)
from .environment import EnvironmentalRepresentation, environmental_reverse, stinespring
from .errors import (
    InvalidChannel,
    NonUniqueFixedPoint,
    NotUnital,
    QReversalError,
    SingularState,
    UndefinedTransition,
    WrongKrausCount,
)
from .reversal import EssentialDecomposition, ReversalMethod, essential_map, invariant_state, reverse
from .thermo import (
    MeasurementPair,
    crooks_check,
    entropy_production,
    gibbs,
    jarzynski_check,
    transition_table,
    work,
)

__version__ = "0.1.0"
