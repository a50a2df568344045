"""Security-analysis workbench for two-way QKD on non-orthogonal states."""

from .attacks import (
    AncillaOverlaps,
    AttackIsometry,
    BlochDirection,
    PureQubit,
    X_DIR,
    Y_DIR,
    Z_DIR,
    disturbance,
    disturbance_profile,
    equatorial_direction,
    feasible_cross_max,
    identity_attack,
    interference_attack,
    is_depolarizing,
    phase_covariant_attack,
    random_attack,
    realize_isometry,
    symmetric_attack,
    transform_basis,
    validate,
)
from .bounds import (
    BoundCurvePoint,
    NoiseModel,
    ProtocolSpec,
    bound_curve,
    builtin_protocols,
    curve_csv,
    eve_info_bound,
    get_protocol,
    protocol_holevo,
    rate_zero_crossings,
    secret_fraction,
    six_state_attack_info,
)
from .ensembles import (
    Ensemble,
    JointStateLabel,
    explicit_density,
    gram_matrix,
    holevo,
    joint_overlap,
    make_ensemble,
    mixture_entropy,
    named_ensemble,
    spectrum_of,
)
from .linalg import binary_entropy, hermitian_eigenvalues, von_neumann_entropy
from .simulate import SimulationConfig, SimulationReport, estimate_key_rate, run
from .search import (
    AttackParameterization,
    SearchReport,
    search_max_holevo,
    sweep_interference,
)

__all__ = [
    "AncillaOverlaps",
    "AttackIsometry",
    "AttackParameterization",
    "BlochDirection",
    "BoundCurvePoint",
    "Ensemble",
    "JointStateLabel",
    "NoiseModel",
    "ProtocolSpec",
    "PureQubit",
    "SearchReport",
    "SimulationConfig",
    "SimulationReport",
    "X_DIR",
    "Y_DIR",
    "Z_DIR",
    "binary_entropy",
    "bound_curve",
    "builtin_protocols",
    "curve_csv",
    "disturbance",
    "disturbance_profile",
    "equatorial_direction",
    "estimate_key_rate",
    "eve_info_bound",
    "explicit_density",
    "feasible_cross_max",
    "get_protocol",
    "gram_matrix",
    "hermitian_eigenvalues",
    "holevo",
    "identity_attack",
    "interference_attack",
    "is_depolarizing",
    "joint_overlap",
    "make_ensemble",
    "mixture_entropy",
    "named_ensemble",
    "phase_covariant_attack",
    "protocol_holevo",
    "random_attack",
    "rate_zero_crossings",
    "realize_isometry",
    "run",
    "search_max_holevo",
    "secret_fraction",
    "six_state_attack_info",
    "spectrum_of",
    "sweep_interference",
    "symmetric_attack",
    "transform_basis",
    "validate",
    "von_neumann_entropy",
]
