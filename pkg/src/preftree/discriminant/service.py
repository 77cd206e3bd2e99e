"""Discriminant service - Fisher linear classification functions and group ranking."""

import math
from typing import Mapping, Optional, Sequence

import numpy as np
from loguru import logger
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from src.preftree.config import settings
from src.preftree.core import DimensionError, InputError, SingularCovarianceError
from src.preftree.discriminant.core import ClassFunction, ClassificationModel, LabeledMatrix


class DiscriminantService:
    """Service for discriminant modeling."""

    @staticmethod
    def _within_scatter(data: LabeledMatrix) -> np.ndarray:
        """Sum over classes of (x - mu_k)(x - mu_k)^T."""
        p = len(data.feature_names)
        scatter = np.zeros((p, p))
        for name in data.class_names:
            rows = data.class_rows(name)
            centered = rows - rows.mean(axis=0)
            scatter += centered.T @ centered
        return scatter

    @staticmethod
    def _check_positive_definite(matrix: np.ndarray, feature_names: Sequence[str]) -> None:
        """Raise SingularCovarianceError naming the features responsible."""
        flat = [f for f, d in zip(feature_names, np.diag(matrix)) if d <= 0]
        if flat:
            raise SingularCovarianceError(
                f"pooled covariance is singular: no within-class variation in {', '.join(flat)}",
                features=flat,
            )
        eigenvalues, eigenvectors = np.linalg.eigh(matrix)
        tolerance = len(feature_names) * np.finfo(float).eps * abs(eigenvalues).max()
        if eigenvalues[0] <= tolerance:
            null = eigenvectors[:, 0]
            involved = [f for f, w in zip(feature_names, null) if abs(w) > 1e-6]
            raise SingularCovarianceError(
                f"pooled covariance is singular: features {', '.join(involved)} are linearly dependent",
                features=involved,
            )
        try:
            cho_factor(matrix)
        except LinAlgError as e:
            raise SingularCovarianceError(f"pooled covariance is not positive-definite: {e}") from e

    @staticmethod
    def pooled_within_covariance(data: LabeledMatrix) -> np.ndarray:
        """Pooled within-class covariance: total within-class scatter / (n - K)."""
        n = data.features.shape[0]
        k = len(data.class_names)
        pooled = DiscriminantService._within_scatter(data) / (n - k)
        pooled = (pooled + pooled.T) / 2
        DiscriminantService._check_positive_definite(pooled, data.feature_names)
        return pooled

    @staticmethod
    def _resolve_priors(
        class_names: Sequence[str], priors: Optional[Mapping[str, float]]
    ) -> dict[str, float]:
        if priors is None:
            return {name: 1.0 / len(class_names) for name in class_names}
        if set(priors) != set(class_names):
            raise InputError(
                f"priors given for {sorted(priors)} but classes are {sorted(class_names)}"
            )
        values = {name: float(priors[name]) for name in class_names}
        bad = [name for name, v in values.items() if not math.isfinite(v) or v <= 0]
        if bad:
            raise InputError(f"priors must be positive: {', '.join(bad)}")
        total = sum(values.values())
        if abs(total - 1.0) > 1e-9:
            raise InputError(f"priors sum to {total:g}, not 1")
        return {name: v / total for name, v in values.items()}

    @staticmethod
    def fit_classification_functions(
        data: LabeledMatrix,
        priors: Optional[Mapping[str, float]] = None,
        ridge: bool = False,
    ) -> ClassificationModel:
        """Fit C_k(x) = c_k.x + c_k0 with c_k = S^-1 mu_k and c_k0 = -1/2 mu_k.S^-1.mu_k + ln pi_k."""
        resolved = DiscriminantService._resolve_priors(data.class_names, priors)
        n = data.features.shape[0]
        k = len(data.class_names)
        pooled = DiscriminantService._within_scatter(data) / (n - k)
        pooled = (pooled + pooled.T) / 2

        if ridge:
            epsilon = settings.ridge_scale * float(np.mean(np.diag(pooled)))
            if epsilon > 0:
                logger.warning(f"ridge repair: adding {epsilon:.3e} to the pooled covariance diagonal")
                pooled = pooled + epsilon * np.eye(len(data.feature_names))
        DiscriminantService._check_positive_definite(pooled, data.feature_names)

        factor = cho_factor(pooled)
        functions: dict[str, ClassFunction] = {}
        for name in data.class_names:
            mu = data.class_rows(name).mean(axis=0)
            c = cho_solve(factor, mu)
            constant = -0.5 * float(mu @ c) + math.log(resolved[name])
            functions[name] = ClassFunction(
                coefficients={f: float(v) for f, v in zip(data.feature_names, c)},
                constant=constant,
                mean=[float(v) for v in mu],
                prior=resolved[name],
            )
        logger.info(f"fitted classification functions for {k} classes over {len(data.feature_names)} features")
        return ClassificationModel(
            feature_names=list(data.feature_names),
            functions=functions,
            pooled_covariance=pooled.tolist(),
        )

    @staticmethod
    def classify(model: ClassificationModel, x: Sequence[float]) -> str:
        """Class with the highest score; ties go to the lexicographically smallest name."""
        if len(x) != len(model.feature_names):
            raise DimensionError(
                f"observation has {len(x)} values; model expects {len(model.feature_names)}"
            )
        scores = model.scores(x)
        return min(scores, key=lambda name: (-scores[name], name))

    @staticmethod
    def rank_by_coefficient(coefficients: Mapping[str, float]) -> list[str]:
        """Names by descending coefficient; ties broken lexicographically."""
        if not coefficients:
            raise InputError("no coefficients to rank")
        bad = [name for name, v in coefficients.items() if not math.isfinite(v)]
        if bad:
            raise InputError(f"non-finite coefficient for {', '.join(sorted(bad))}")
        return sorted(coefficients, key=lambda name: (-coefficients[name], name))
