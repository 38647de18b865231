"""Configuration data models for coherent-calculus runs."""

from dataclasses import dataclass, field, fields, replace
from typing import Any

from .functions import is_power_of_two


@dataclass
class SpectrumConfig:
    """Configuration for jet-spectrum computation."""

    tol: float = 1e-6
    cluster_factor: float = 16.0

    def validate(self) -> bool:
        """Validate spectrum configuration."""
        return 0.0 < self.tol < 1.0 and self.cluster_factor >= 1.0


@dataclass
class QuadratureConfig:
    """Node counts for contours, line grids and Heisenberg boxes."""

    contour_nodes: int = 256
    grid: int = 256
    box: int = 64
    admissibility_nodes: int = 32

    def validate(self) -> bool:
        """Validate quadrature configuration."""
        return (
            self.contour_nodes >= 16
            and is_power_of_two(self.contour_nodes)
            and self.grid >= 16
            and is_power_of_two(self.grid)
            and self.box >= 8
            and self.box % 2 == 0
            and self.admissibility_nodes >= 4
        )


@dataclass
class PhysicsConfig:
    """Physical constants."""

    hbar: float = 1.0

    def validate(self) -> bool:
        return self.hbar > 0.0


@dataclass
class RunConfiguration:
    """Complete configuration for a command or demo run."""

    spectrum: SpectrumConfig = field(default_factory=SpectrumConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    physics: PhysicsConfig = field(default_factory=PhysicsConfig)
    threads: int = 1

    def validate(self) -> bool:
        """Validate the complete run configuration."""
        return (
            self.spectrum.validate()
            and self.quadrature.validate()
            and self.physics.validate()
            and self.threads >= 1
        )

    @classmethod
    def create_default(cls) -> "RunConfiguration":
        """Create a RunConfiguration holding the packaged defaults."""
        return cls()

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfiguration":
        """Build from a mapping shaped like the settings document."""
        return cls(
            spectrum=SpectrumConfig(**data.get("spectrum", {})),
            quadrature=QuadratureConfig(**data.get("quadrature", {})),
            physics=PhysicsConfig(**data.get("physics", {})),
            threads=int(data.get("threads", 1)),
        )

    def with_overrides(self, **flags: Any) -> "RunConfiguration":
        """
        Return a copy with flat overrides applied.

        Keys are field names of any section (``tol``, ``contour_nodes``,
        ``hbar``, ...) or ``threads``. ``None`` values are ignored so unset
        CLI flags leave the configuration alone.

        Raises:
            KeyError: If a key names no field.
        """
        sections = {"spectrum": self.spectrum, "quadrature": self.quadrature, "physics": self.physics}
        updates: dict[str, dict[str, Any]] = {name: {} for name in sections}
        threads = self.threads
        for key, value in flags.items():
            if value is None:
                continue
            if key == "threads":
                threads = int(value)
                continue
            owner = next(
                (name for name, section in sections.items() if key in {f.name for f in fields(section)}),
                None,
            )
            if owner is None:
                raise KeyError(f"Unknown configuration key: {key}")
            updates[owner][key] = value
        return RunConfiguration(
            spectrum=replace(self.spectrum, **updates["spectrum"]),
            quadrature=replace(self.quadrature, **updates["quadrature"]),
            physics=replace(self.physics, **updates["physics"]),
            threads=threads,
        )
