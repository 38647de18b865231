"""Serializable inputs and outputs of the command-line front end."""

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .operators import CMatrix, JetSpectrum

REPORT_DIGITS = 12


@dataclass
class MatrixFile:
    """A matrix as stored on disk: dimension and row-major [re, im] pairs."""

    n: int
    entries: list[tuple[float, float]]

    def validate(self) -> bool:
        """Validate that the entry count is n squared."""
        return self.n >= 1 and len(self.entries) == self.n * self.n

    def to_matrix(self) -> CMatrix:
        return CMatrix.from_entries(self.n, [complex(re, im) for re, im in self.entries])

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "entries": [[re, im] for re, im in self.entries]}

    @classmethod
    def from_matrix(cls, a: CMatrix) -> "MatrixFile":
        return cls(a.n, [(z.real, z.imag) for z in a.entries()])


def _rounded(value: float) -> float:
    # -0.0 and 0.0 must serialize alike
    return round(value, REPORT_DIGITS) + 0.0


@dataclass
class SpectrumReport:
    """
    A jet spectrum ready for JSON output.

    Pairs are kept in the canonical JetSpectrum order and rounded to
    REPORT_DIGITS so identical inputs give identical bytes.
    """

    tol: float
    pairs: list[tuple[complex, int]]
    label: Optional[str] = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def validate(self, n: Optional[int] = None) -> bool:
        """Validate block lengths, and that they sum to n when given."""
        if any(k < 1 for _, k in self.pairs):
            return False
        return n is None or sum(k for _, k in self.pairs) == n

    @property
    def n(self) -> int:
        return sum(k for _, k in self.pairs)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "tol": self.tol,
            "pairs": [
                {"re": _rounded(lam.real), "im": _rounded(lam.imag), "k": k}
                for lam, k in self.pairs
            ],
        }
        if self.label is not None:
            data["label"] = self.label
        if self.metadata:
            data["metadata"] = self.metadata
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_spectrum(
        cls,
        spectrum: JetSpectrum,
        tol: float,
        label: Optional[str] = None,
        metadata: Optional[dict[str, Any]] = None,
    ) -> "SpectrumReport":
        return cls(tol, list(spectrum.pairs), label, dict(metadata or {}))


@dataclass
class DefectRow:
    """One measured defect against its bound."""

    check: str
    value: float
    bound: float
    expect_failure: bool = False

    @property
    def passed(self) -> bool:
        """A row passes when the value is within the bound, or beyond it when failure is expected."""
        within = self.value <= self.bound
        return not within if self.expect_failure else within

    @property
    def status(self) -> str:
        if not self.passed:
            return "FAIL"
        return "expected failure" if self.expect_failure else "ok"
