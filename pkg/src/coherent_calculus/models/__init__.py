"""Data models for coherent-calculus."""

from .config import (
    PhysicsConfig,
    QuadratureConfig,
    RunConfiguration,
    SpectrumConfig,
)
from .reports import DefectRow, MatrixFile, SpectrumReport

__all__ = [
    "SpectrumConfig",
    "QuadratureConfig",
    "PhysicsConfig",
    "RunConfiguration",
    "MatrixFile",
    "SpectrumReport",
    "DefectRow",
]
