"""Differential forms: the graded algebra, index and quotient characters, and the heat-trace character."""

from .algebra import (
    DEFAULT_ALGEBRA,
    FB,
    FB_NORM,
    PHI,
    THETA,
    Y,
    AlgebraMismatch,
    Form,
    Generator,
    GradedAlgebra,
    default_algebra,
)
from .character import (
    CharacterClass,
    MarkedCycle,
    UnmarkedCycleError,
    fiber_integrate_theta,
    index_character,
    pairing_mod_n,
    quotient_character,
)
from .theta import (
    ThetaTrace,
    TruncationTooSmall,
    XiData,
    beta_exponential,
    charge_traces,
    periodicity_check,
    profile_csv,
    theta,
    theta_limit_check,
)
