"""toroflux: permeance and reluctance forces of hollow-toroid stray flux tubes."""

from .core import (
    ETA_UNIT_WINDOW,
    MU0,
    BranchCase,
    DerivedQuantities,
    DomainError,
    ExistenceReport,
    FluxTubeKind,
    TorusGeometry,
    UsageError,
    arccot,
    classify_branch,
    derive,
    validate,
)
from .force import (
    GM_FLOOR,
    ActuatorSweepSpec,
    DriveMode,
    ForceResult,
    ForceSweepRow,
    allowed_modes,
    force,
    legacy_gradient,
    permeance_gradient,
    sweep_force,
)
from .oracle import (
    BoundaryError,
    OracleReport,
    QuadratureConfig,
    adaptive_simpson,
    gradient_fd,
    permeance_quadrature,
    slice_permeance_quadrature,
)
from .permeance import (
    LegacyCylinderSpec,
    Permeance,
    legacy_half_hollow_cylinder,
    permeance,
    reluctance,
)

__version__ = "0.1.0"

__all__ = [
    "ETA_UNIT_WINDOW",
    "GM_FLOOR",
    "MU0",
    "ActuatorSweepSpec",
    "BoundaryError",
    "BranchCase",
    "DerivedQuantities",
    "DomainError",
    "DriveMode",
    "ExistenceReport",
    "FluxTubeKind",
    "ForceResult",
    "ForceSweepRow",
    "LegacyCylinderSpec",
    "OracleReport",
    "Permeance",
    "QuadratureConfig",
    "TorusGeometry",
    "UsageError",
    "adaptive_simpson",
    "allowed_modes",
    "arccot",
    "classify_branch",
    "derive",
    "force",
    "gradient_fd",
    "legacy_gradient",
    "legacy_half_hollow_cylinder",
    "permeance",
    "permeance_gradient",
    "permeance_quadrature",
    "reluctance",
    "slice_permeance_quadrature",
    "sweep_force",
    "validate",
]
