"""Truncated spinor x Fock space: CAR and Clifford operators, currents, shift,
supercharge, and the circle Dirac family."""

from .basis import (
    Basis,
    BasisSizeError,
    BasisState,
    FockBasisState,
    SpinorBasisState,
    Truncation,
    TruncationError,
    build_basis,
    estimate_basis_size,
)
from .operators import (
    SparseOperator,
    annihilation,
    charge_operator,
    clifford,
    creation,
    current,
    identity,
    inverse_shift_operator,
    parse_coordinate_text,
    shift_operator,
    supercharge,
)
from .analysis import (
    IdentityCheck,
    Spectrum,
    UnreliableTruncation,
    bounded_transform,
    check_identity,
    continuity_probe,
    current_adjoint_checks,
    interior_operator_checks,
    kernel_at,
    p_sector_spectrum,
    resolvent,
    shift_covariance_checks,
    spectrum,
    square_decomposition_check,
)
from .dirac import SpectralFlowError, dirac_spectrum, loop_path, spectral_flow
