"""Full-cycle energy audit of a voltage-follower logic gate.

A follower gate copies its input onto an output node; claims of sub-kT
switching usually price only the internal "friction" of moving the switch and
leave out the energy burned charging and discharging the input capacitance.
This module totals both channels for one 0 -> 1 -> 0 cycle and compares the
result, and any externally claimed per-operation figure, against the error
floor the gate's own noise level implies.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

from .circuit import RcStage
from .floors import ErrorSpec, floor_short, log_tail_probability, tail_probability

VERDICT_SUB_KT = "sub-kT"
VERDICT_AT_OR_ABOVE_KT = "at-or-above-kT"
VERDICT_BELOW_FLOOR = "below-floor"
VERDICT_AT_OR_ABOVE_FLOOR = "at-or-above-floor"
VERDICT_NOT_APPLICABLE = "not-applicable"
CLAIM_NEGLECTS = "neglects-input-charging"
CLAIM_CONSISTENT = "consistent"


@dataclass(frozen=True)
class FollowerGate:
    """A follower stage plus its per-transition internal friction loss.

    ``friction_energy_per_transition`` is the energy (joules) dissipated
    inside the switch mechanism each time the gate toggles, independent of the
    input-charging loss.  ``threshold_fraction`` places the logic decision
    threshold as a fraction of the swing; 0.5 is the symmetric choice.
    """

    stage: RcStage
    friction_energy_per_transition: float = 0.0
    threshold_fraction: float = 0.5

    def __post_init__(self) -> None:
        if not self.friction_energy_per_transition >= 0.0:
            raise ValueError(
                "friction_energy_per_transition must be >= 0 J, got "
                f"{self.friction_energy_per_transition!r}"
            )
        if not 0.0 < self.threshold_fraction < 1.0:
            raise ValueError(
                f"threshold_fraction must lie in (0, 1), got "
                f"{self.threshold_fraction!r}"
            )


@dataclass(frozen=True)
class AuditReport:
    """Cycle energy accounting for one gate, all energies in joules.

    ``floor_short_kt``/``floor_short_joule`` are None when the gate has no
    working threshold (zero swing: epsilon is exactly 0.5 and no floor
    applies); ``verdict_total`` is then ``"not-applicable"``.

    For very large swings ``epsilon_per_observation`` underflows to 0.0
    (the true value is below the smallest positive double); the floor
    fields are then computed in log space and stay finite.
    """

    gate: FollowerGate
    e_friction_cycle: float
    e_input_cycle: float
    e_total_cycle: float
    epsilon_per_observation: float
    floor_short_joule: float | None
    floor_short_kt: float | None
    verdict_friction_only: str
    verdict_total: str

    @property
    def e_friction_cycle_kt(self) -> float:
        return self.gate.stage.env.joules_to_kt(self.e_friction_cycle)

    @property
    def e_input_cycle_kt(self) -> float:
        return self.gate.stage.env.joules_to_kt(self.e_input_cycle)

    @property
    def e_total_cycle_kt(self) -> float:
        return self.gate.stage.env.joules_to_kt(self.e_total_cycle)


def run_cycle(gate: FollowerGate) -> AuditReport:
    """Audit one full 0 -> 1 -> 0 cycle of the gate.

    Friction is charged once per transition (two transitions per cycle);
    input charging costs C*U1**2 per cycle regardless of switch construction.
    The error probability is one observation of the input node against the
    threshold at threshold_fraction*U1 with noise sigma = sqrt(kT/C).
    """
    env = gate.stage.env
    kt = env.thermal_energy()
    if kt == 0.0:
        raise ValueError("gate audit requires a positive-temperature bath")

    ledger = gate.stage.full_cycle_dissipation()
    e_input = ledger.total_dissipated
    e_friction = 2.0 * gate.friction_energy_per_transition
    e_total = e_friction + e_input

    sigma = sqrt(kt / gate.stage.capacitance)
    threshold = gate.threshold_fraction * gate.stage.swing_voltage
    threshold_sigmas = threshold / sigma
    epsilon = float(tail_probability(threshold_sigmas))

    if epsilon == 0.0:
        # The swing is so large (beyond ~38 sigma) that epsilon underflows
        # double precision; the floor is still finite in log space.
        floor_kt: float | None = -log_tail_probability(threshold_sigmas)
        floor_joule: float | None = floor_kt * kt
        verdict_total = (
            VERDICT_BELOW_FLOOR
            if e_total < floor_joule
            else VERDICT_AT_OR_ABOVE_FLOOR
        )
    elif epsilon < 0.5:
        floor = floor_short(ErrorSpec(epsilon=epsilon), env)
        floor_joule = floor.floor_joule
        floor_kt = floor.floor_kt
        verdict_total = (
            VERDICT_BELOW_FLOOR
            if e_total < floor.floor_joule
            else VERDICT_AT_OR_ABOVE_FLOOR
        )
    else:
        # Zero swing: the "gate" is a fair coin and no floor constrains it.
        floor_joule = None
        floor_kt = None
        verdict_total = VERDICT_NOT_APPLICABLE

    verdict_friction = (
        VERDICT_SUB_KT
        if gate.friction_energy_per_transition < kt
        else VERDICT_AT_OR_ABOVE_KT
    )

    return AuditReport(
        gate=gate,
        e_friction_cycle=e_friction,
        e_input_cycle=e_input,
        e_total_cycle=e_total,
        epsilon_per_observation=epsilon,
        floor_short_joule=floor_joule,
        floor_short_kt=floor_kt,
        verdict_friction_only=verdict_friction,
        verdict_total=verdict_total,
    )


def audit_claim(gate: FollowerGate, claimed_energy_per_op: float) -> str:
    """Check a claimed per-operation energy against the full accounting.

    A claim below half the true cycle total (one cycle = two operations)
    while the input-charging channel is nonzero can only be made by leaving
    that channel out of the books: returns ``"neglects-input-charging"``.
    Anything at or above the honest per-operation figure is ``"consistent"``.
    """
    if not claimed_energy_per_op >= 0.0:
        raise ValueError(
            f"claimed_energy_per_op must be >= 0 J, got {claimed_energy_per_op!r}"
        )
    e_input = gate.stage.full_cycle_dissipation().total_dissipated
    e_total = e_input + 2.0 * gate.friction_energy_per_transition
    if claimed_energy_per_op < 0.5 * e_total and e_input > 0.0:
        return CLAIM_NEGLECTS
    return CLAIM_CONSISTENT
