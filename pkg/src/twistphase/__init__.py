"""Jones differential-matrix propagation and phase extraction for twisted birefringent media."""
from .errors import (
    AmbiguousGeodesicError,
    ConfigError,
    DegeneracyError,
    InvalidInputError,
    SingularBirefringenceError,
    TwistPhaseError,
    UndefinedPhaseError,
    UnsupportedMediumError,
)
from .jones import (
    eigenpairs,
    from_circular,
    hermitian_inner,
    intensity,
    is_lossless,
    mat_exp,
    normalized,
    rotation_matrix,
    to_circular,
)
from .media import (
    MediumSpec,
    SpinorState,
    TwistMode,
    birefringence_generator,
    derive_generator_from_M,
    eigen_ray,
    eta_phi_generator,
    polarization_matrix,
    twist_dependent,
    twist_independent,
    twisted_ray,
)
from .phases import (
    LCP,
    RCP,
    ClosedForm,
    PhaseValue,
    bilinear_phase,
    closed_form,
    conformance_report,
    dynamical_phase,
    geometric_phase,
    net_phase,
    pancharatnam_phase,
    solid_angle,
)
from .propagation import (
    PropagationTrace,
    StokesState,
    medium_transfer,
    precession_axis,
    propagate_constant,
    propagate_varying,
    rotating_frame_transfer,
    to_stokes,
)

__version__ = "0.1.0"
