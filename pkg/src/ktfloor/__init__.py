"""ktfloor: thermal-noise energy floors for voltage-controlled logic.

Quantifies what one bit actually costs when its voltage rides on Johnson
noise: the C*U1**2 burned per logic cycle by any switched capacitive input,
the kT*ln(1/epsilon) dissipation floor a target error rate enforces, the
extra ln(t_o/tau) price of holding a state, and why inductive energy
recycling cannot dodge the bill once its own switches are paid for.
"""

__version__ = "0.1.0"

from .audit import (
    AuditReport,
    FollowerGate,
    audit_claim,
    run_cycle,
)
from .circuit import (
    CycleLedger,
    RcStage,
    integrated_charge_dissipation,
)
from .floors import (
    ErrorSpec,
    FirstPassageResult,
    FloorResult,
    SwingRequirement,
    first_passage_mc,
    floor_long,
    floor_short,
    instantaneous_error_prob,
    log_tail_probability,
    multi_sample_error,
    observation_count,
    required_swing,
    tail_probability,
    tail_quantile,
)
from .noise import (
    NoisePath,
    OuProcess,
    path_generator,
    sample_path,
    stationary_path,
)
from .quantities import (
    BOLTZMANN_CONSTANT,
    ROOM_TEMPERATURE,
    PhysicalEnvironment,
)
from .sweep import (
    SweepConfigError,
    SweepSpec,
    load_config,
    run_sweep,
)
from .tank import (
    BreakEven,
    TankCircuit,
    TransferReport,
    symmetric_tank_efficiency,
)

__all__ = [
    "__version__",
    "AuditReport",
    "BOLTZMANN_CONSTANT",
    "BreakEven",
    "CycleLedger",
    "ErrorSpec",
    "FirstPassageResult",
    "FloorResult",
    "FollowerGate",
    "NoisePath",
    "OuProcess",
    "PhysicalEnvironment",
    "ROOM_TEMPERATURE",
    "RcStage",
    "SweepConfigError",
    "SweepSpec",
    "SwingRequirement",
    "TankCircuit",
    "TransferReport",
    "audit_claim",
    "first_passage_mc",
    "floor_long",
    "floor_short",
    "instantaneous_error_prob",
    "log_tail_probability",
    "integrated_charge_dissipation",
    "load_config",
    "multi_sample_error",
    "observation_count",
    "path_generator",
    "required_swing",
    "run_cycle",
    "run_sweep",
    "sample_path",
    "stationary_path",
    "symmetric_tank_efficiency",
    "tail_probability",
    "tail_quantile",
]
