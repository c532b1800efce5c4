"""Parameter algebra, identities, hypergeometric reductions and numerical
certification for the four-singular-point Fuchsian equation, with four
quantum-mechanics problems as built-in case studies."""

from .core import (
    TOL_EXACT,
    ConditionError,
    DomainError,
    HeunError,
    HeunParams,
    InvalidParameterError,
    LogarithmicCaseError,
    MobiusMap,
    PowerFactor,
    PowerPrefactor,
    UnreachableTargetError,
    make_params,
    validate,
)
from .identities import (
    TransformResult,
    apply_line5,
    apply_line9,
    apply_line17,
    compose,
    d_orbit,
    identity_transform,
    transport_to,
)
from .numerics import (
    SeriesSolution,
    eval_hyp_form,
    gauss_2f1,
    heun_eval,
    heun_series,
    ode_residual,
)
from .reduction import (
    CatalogPair,
    HypergeometricForm,
    QuadratureDescriptor,
    RationalMap,
    ReductionEntry,
    ReductionReport,
    catalog_pairs,
    detect_cases,
    reduce_case1,
    reduce_case2,
    reduce_case3,
    reduce_case4,
    reduce_cubic_d4,
    reduce_harmonic_d_minus1,
    reduce_quartic_d2,
)
from .physics import (
    ChargedParticleInput,
    CoulombSphereInput,
    FeasibilityVerdict,
    InverseSquareInput,
    QuantumWalkInput,
    QuarticMatchingResult,
    charged_particle_offsets,
    charged_particle_params,
    charged_particle_trivial_energy,
    coulomb_ground_state_form,
    coulomb_params,
    coulomb_quartic_matching,
    coulomb_reduc_energy,
    coulomb_spectrum,
    inverse_square_feasibility,
    inverse_square_params,
    quantum_walk_density,
    quantum_walk_form,
    quantum_walk_params,
)
from .verification import (
    GridSpec,
    VerificationReport,
    form_evaluator,
    quadrature_evaluator,
    series_evaluator,
    verify_identity,
    verify_reduction,
    verify_solution,
    verify_values,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
