"""MatrixFile reader and writer."""

import json
import logging
from pathlib import Path
from typing import Any, Optional

import jsonschema
from rich.console import Console

from ..models.operators import CMatrix
from ..models.reports import MatrixFile
from .errors import DomainError

LOGGER = logging.getLogger(__name__)


class MatrixFileError(Exception):
    """Raised when a matrix file cannot be parsed."""

    exit_code = 2


class MatrixFileLoader:
    """Loads and validates MatrixFile JSON documents."""

    MATRIX_SCHEMA = {
        "type": "object",
        "required": ["n", "entries"],
        "additionalProperties": False,
        "properties": {
            "n": {"type": "integer", "minimum": 1},
            "entries": {
                "type": "array",
                "items": {
                    "type": "array",
                    "minItems": 2,
                    "maxItems": 2,
                    "items": {"type": "number"},
                },
            },
        },
    }

    def __init__(self, console: Optional[Console] = None):
        """Initialize the matrix file loader."""
        self.console = console or Console(stderr=True)

    def load_from_file(self, path: Path) -> MatrixFile:
        """
        Load a matrix file.

        Args:
            path: Path to the JSON document.

        Returns:
            The parsed MatrixFile.

        Raises:
            MatrixFileError: If reading, parsing or validation fails.
        """
        if not path.exists():
            raise MatrixFileError(f"Matrix file not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise MatrixFileError(f"Invalid JSON in {path}: {e}")
        except OSError as e:
            raise MatrixFileError(f"Error reading {path}: {e}")
        return self.load_from_dict(data)

    def load_from_dict(self, data: Any) -> MatrixFile:
        """
        Validate a decoded document and build the MatrixFile.

        Raises:
            MatrixFileError: If the schema or the entry count is violated.
        """
        try:
            jsonschema.validate(data, self.MATRIX_SCHEMA)
        except jsonschema.ValidationError as e:
            raise MatrixFileError(f"Schema validation failed: {e.message}")
        matrix_file = MatrixFile(
            int(data["n"]), [(float(re), float(im)) for re, im in data["entries"]]
        )
        if not matrix_file.validate():
            raise MatrixFileError(
                f"Expected {matrix_file.n ** 2} entries for n = {matrix_file.n},"
                f" got {len(matrix_file.entries)}"
            )
        LOGGER.debug("Loaded %d x %d matrix", matrix_file.n, matrix_file.n)
        return matrix_file

    def load_matrix(self, path: Path) -> CMatrix:
        """Load a matrix file straight into a CMatrix."""
        try:
            return self.load_from_file(path).to_matrix()
        except DomainError as e:
            raise MatrixFileError(f"Matrix in {path} is unusable: {e}")


def save_matrix(a: CMatrix, path: Path) -> None:
    """Write a matrix in MatrixFile format."""
    path.write_text(json.dumps(MatrixFile.from_matrix(a).to_dict()), encoding="utf-8")
