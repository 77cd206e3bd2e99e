"""Discriminant domain models and schemas."""

import math
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.preftree.survey.core import SurveyTable


# ============== Training Data ==============

class LabeledMatrix(BaseModel):
    """Observations x features with one class label per observation."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    features: np.ndarray
    labels: list[str]
    feature_names: list[str]
    class_names: list[str] = Field(default_factory=list)

    @model_validator(mode="before")
    @classmethod
    def _derive_classes(cls, data: dict) -> dict:
        if isinstance(data, dict):
            data = dict(data)
            data["features"] = np.asarray(data.get("features"), dtype=float)
            if not data.get("class_names"):
                data["class_names"] = sorted(set(data.get("labels", [])))
        return data

    @model_validator(mode="after")
    def _check_degrees_of_freedom(self) -> "LabeledMatrix":
        n, p = self.features.shape if self.features.ndim == 2 else (0, 0)
        if self.features.ndim != 2 or p != len(self.feature_names):
            raise ValueError("features must be an observations x features matrix matching feature_names")
        if len(set(self.feature_names)) != p:
            raise ValueError("feature names must be unique")
        if len(self.labels) != n:
            raise ValueError(f"{len(self.labels)} labels for {n} observations")
        if not np.isfinite(self.features).all():
            raise ValueError("features must be finite")
        if len(set(self.class_names)) != len(self.class_names) or set(self.class_names) != set(self.labels):
            raise ValueError("class names must list each label exactly once")
        k = len(self.class_names)
        if k < 2:
            raise ValueError(f"need at least 2 classes, got {k}")
        for name in self.class_names:
            count = self.labels.count(name)
            if count < 2:
                raise ValueError(f"class '{name}' has {count} observation(s); need at least 2")
        if n <= k + p:
            raise ValueError(
                f"{n} observations leave no degrees of freedom for {k} classes and {p} features"
            )
        return self

    @classmethod
    def from_table(cls, table: SurveyTable) -> "LabeledMatrix":
        """Feature matrix from a labelled table (e.g. group scores)."""
        if table.labels is None:
            raise ValueError("table carries no class labels")
        return cls(
            features=table.frame.to_numpy(dtype=float),
            labels=[str(v) for v in table.labels],
            feature_names=table.attribute_names,
        )

    def class_rows(self, name: str) -> np.ndarray:
        mask = np.array([label == name for label in self.labels])
        return self.features[mask]


# ============== Classification Model ==============

class ClassFunction(BaseModel):
    """Linear classification function C(x) = coefficients . x + constant."""

    coefficients: dict[str, float]
    constant: float
    mean: Optional[list[float]] = None
    prior: Optional[float] = Field(default=None, gt=0, le=1)

    def score(self, x: Sequence[float], feature_names: Sequence[str]) -> float:
        return float(sum(self.coefficients[f] * float(v) for f, v in zip(feature_names, x)) + self.constant)


class ClassificationModel(BaseModel):
    """Per-class linear classification functions over shared features.

    Fitted models also carry class means, priors and the pooled within-class
    covariance; models read from a coefficient file carry coefficients only.
    """

    model_config = ConfigDict(frozen=True)

    feature_names: list[str]
    functions: dict[str, ClassFunction]
    pooled_covariance: Optional[list[list[float]]] = None

    @model_validator(mode="after")
    def _check_functions(self) -> "ClassificationModel":
        if not self.functions:
            raise ValueError("model has no classes")
        expected = set(self.feature_names)
        for name, fn in self.functions.items():
            if set(fn.coefficients) != expected:
                raise ValueError(
                    f"class '{name}' coefficients {sorted(fn.coefficients)} do not match "
                    f"features {self.feature_names}"
                )
            if not all(math.isfinite(c) for c in fn.coefficients.values()) or not math.isfinite(fn.constant):
                raise ValueError(f"class '{name}' has non-finite coefficients")
        priors = [fn.prior for fn in self.functions.values()]
        if all(p is not None for p in priors) and abs(sum(priors) - 1.0) > 1e-12:
            raise ValueError(f"priors sum to {sum(priors)}, not 1")
        return self

    @property
    def class_names(self) -> list[str]:
        return list(self.functions)

    @property
    def is_fitted(self) -> bool:
        return self.pooled_covariance is not None

    def scores(self, x: Sequence[float]) -> dict[str, float]:
        """C_k(x) for every class."""
        return {name: fn.score(x, self.feature_names) for name, fn in self.functions.items()}

    def coefficients_of(self, name: str) -> dict[str, float]:
        return dict(self.functions[name].coefficients)
