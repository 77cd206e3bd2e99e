"""Discriminant repository - coefficient file operations."""

import json
from pathlib import Path

from pydantic import TypeAdapter, ValidationError

from src.preftree.core import DataFileError, InputError
from src.preftree.discriminant.core import ClassFunction, ClassificationModel


_coefficient_file = TypeAdapter(dict[str, ClassFunction])


class CoefficientRepository:
    """Reads and writes ``{class: {coefficients: {feature: real}, constant: real}}`` files."""

    @staticmethod
    def load(path: str | Path) -> ClassificationModel:
        path = Path(path)
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError as e:
            raise DataFileError(f"coefficient file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise InputError(f"coefficient file {path} is not valid JSON: {e}") from e
        except OSError as e:
            raise DataFileError(f"cannot read coefficient file {path}: {e}") from e
        try:
            functions = _coefficient_file.validate_python(document)
            if not functions:
                raise InputError(f"coefficient file {path} lists no classes")
            first = next(iter(functions.values()))
            return ClassificationModel(feature_names=list(first.coefficients), functions=functions)
        except ValidationError as e:
            reasons = "; ".join(err["msg"] for err in e.errors())
            raise InputError(f"invalid coefficient file {path}: {reasons}") from e

    @staticmethod
    def save(model: ClassificationModel, path: str | Path) -> None:
        """Write coefficients and constants only (means and covariance are not part of the format)."""
        document = {
            name: {
                "coefficients": {f: fn.coefficients[f] for f in model.feature_names},
                "constant": fn.constant,
            }
            for name, fn in model.functions.items()
        }
        try:
            Path(path).write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
        except OSError as e:
            raise DataFileError(f"cannot write {path}: {e}") from e
