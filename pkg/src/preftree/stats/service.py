"""Stats service - descriptive statistics and Pearson correlation."""

from typing import Optional, Sequence

import numpy as np
from loguru import logger

from src.preftree.core import DimensionError, InputError
from src.preftree.stats.core import AttributeSummary, CorrelationMatrix, ScoreVector
from src.preftree.survey.core import SurveyTable


Scores = ScoreVector | Sequence[float] | np.ndarray


def _as_array(v: Scores) -> np.ndarray:
    if isinstance(v, ScoreVector):
        return np.asarray(v.values, dtype=float)
    return np.asarray(v, dtype=float)


def _name(v: Scores, fallback: str) -> str:
    if isinstance(v, ScoreVector) and v.name:
        return v.name
    return fallback


class StatsService:
    """Service for descriptive statistics and correlation."""

    @staticmethod
    def mean(v: Scores) -> float:
        """Arithmetic mean."""
        values = _as_array(v)
        if values.size == 0:
            raise InputError(f"mean of empty vector '{_name(v, 'scores')}'")
        return float(values.mean())

    @staticmethod
    def stddev(v: Scores) -> float:
        """Sample standard deviation (divisor N - 1)."""
        values = _as_array(v)
        if values.size < 2:
            raise InputError(
                f"standard deviation of '{_name(v, 'scores')}' needs at least 2 values, got {values.size}"
            )
        return float(values.std(ddof=1))

    @staticmethod
    def pearson(x: Scores, y: Scores) -> Optional[float]:
        """Pearson r in computational form; None when either column is constant.

        r = (N.sum(XY) - sum(X).sum(Y)) / sqrt((N.sum(X^2) - sum(X)^2)(N.sum(Y^2) - sum(Y)^2))
        """
        xs, ys = _as_array(x), _as_array(y)
        if xs.size != ys.size:
            raise DimensionError(
                f"pearson needs equal lengths: '{_name(x, 'X')}' has {xs.size}, "
                f"'{_name(y, 'Y')}' has {ys.size}"
            )
        if xs.size < 2:
            raise DimensionError(f"pearson needs at least 2 observations, got {xs.size}")
        if not (np.isfinite(xs).all() and np.isfinite(ys).all()):
            raise InputError(
                f"pearson needs finite values: '{_name(x, 'X')}' / '{_name(y, 'Y')}'"
            )
        if np.ptp(xs) == 0 or np.ptp(ys) == 0:
            return None

        n = xs.size
        X = xs.astype(np.longdouble)
        Y = ys.astype(np.longdouble)
        sum_x, sum_y = X.sum(), Y.sum()
        sum_xy = (X * Y).sum()
        ss_x = n * (X * X).sum() - sum_x * sum_x
        ss_y = n * (Y * Y).sum() - sum_y * sum_y
        if ss_x <= 0 or ss_y <= 0:
            return None
        r = (n * sum_xy - sum_x * sum_y) / np.sqrt(ss_x * ss_y)
        return float(min(1.0, max(-1.0, float(r))))

    @staticmethod
    def correlation_matrix(table: SurveyTable, columns: Sequence[str]) -> CorrelationMatrix:
        """Pairwise Pearson over the listed columns, in the given order."""
        names = list(columns)
        unknown = [c for c in names if c not in table.attribute_names]
        if unknown:
            raise InputError(f"unknown column(s) for correlation: {', '.join(unknown)}")
        if table.frame[names].isna().to_numpy().any():
            raise InputError("correlation needs complete columns; impute missing values first")

        data = {name: table.column(name) for name in names}
        k = len(names)
        entries: list[list[Optional[float]]] = [[None] * k for _ in range(k)]
        for i in range(k):
            entries[i][i] = 1.0 if np.ptp(data[names[i]]) > 0 else None
            for j in range(i + 1, k):
                r = StatsService.pearson(data[names[i]], data[names[j]])
                entries[i][j] = entries[j][i] = r
        for name in names:
            if entries[names.index(name)][names.index(name)] is None:
                logger.debug(f"'{name}' is constant; its correlations are undefined")
        return CorrelationMatrix(names=names, entries=entries)

    @staticmethod
    def describe(table: SurveyTable) -> list[AttributeSummary]:
        """Per-attribute N, mean, sample standard deviation, min and max over observed values."""
        summaries = []
        for name in table.attribute_names:
            observed = table.frame[name].dropna().to_numpy(dtype=float)
            if observed.size == 0:
                raise InputError(f"column '{name}' has no observed values")
            summaries.append(
                AttributeSummary(
                    name=name,
                    n=int(observed.size),
                    mean=StatsService.mean(observed),
                    stddev=StatsService.stddev(observed) if observed.size > 1 else None,
                    minimum=float(observed.min()),
                    maximum=float(observed.max()),
                )
            )
        return summaries
