"""Thermal environment and energy-unit conversions.

Everything downstream prices energies in units of kT, so the conversion has to
be exact and boring: one multiplication, one division, no hidden unit systems.
"""

from __future__ import annotations

from dataclasses import dataclass

# Exact SI defining value, J/K.
BOLTZMANN_CONSTANT = 1.380649e-23

# Default bath temperature for the CLI, K.
ROOM_TEMPERATURE = 300.0


@dataclass(frozen=True)
class PhysicalEnvironment:
    """Thermal bath shared by every circuit calculation.

    ``temperature`` is in kelvin.  Zero temperature switches off thermal noise
    entirely and is useful only for deterministic-decay checks, so it must be
    requested explicitly via ``allow_zero_temperature``; negative temperatures
    are always rejected.  Instances are frozen and safe to share across
    threads.
    """

    temperature: float = ROOM_TEMPERATURE
    boltzmann_constant: float = BOLTZMANN_CONSTANT
    allow_zero_temperature: bool = False

    def __post_init__(self) -> None:
        if not self.temperature >= 0.0:
            raise ValueError(
                f"temperature must be >= 0 K, got {self.temperature!r}"
            )
        if self.temperature == 0.0 and not self.allow_zero_temperature:
            raise ValueError(
                "temperature is 0 K; pass allow_zero_temperature=True if a "
                "noiseless bath is intended"
            )
        if not self.boltzmann_constant > 0.0:
            raise ValueError("boltzmann_constant must be positive")

    def thermal_energy(self) -> float:
        """k_B * T in joules."""
        return self.boltzmann_constant * self.temperature

    def kt_to_joules(self, energy_kt: float) -> float:
        """Convert an energy expressed in kT units to joules."""
        return energy_kt * self.thermal_energy()

    def joules_to_kt(self, energy_joule: float) -> float:
        """Convert an energy in joules to kT units.

        Undefined at 0 K (division by zero thermal energy) and raises there.
        """
        scale = self.thermal_energy()
        if scale == 0.0:
            raise ValueError("kT units are undefined at 0 K")
        return energy_joule / scale
