"""Stats domain models."""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ScoreVector(BaseModel):
    """Named list of scores (one attribute across respondents)."""

    model_config = ConfigDict(frozen=True)

    name: str = ""
    values: list[float] = Field(default_factory=list)

    def __len__(self) -> int:
        return len(self.values)


class CorrelationMatrix(BaseModel):
    """Symmetric pairwise Pearson matrix; None marks an undefined entry."""

    model_config = ConfigDict(frozen=True)

    names: list[str]
    entries: list[list[Optional[float]]]

    @model_validator(mode="after")
    def _check_square(self) -> "CorrelationMatrix":
        k = len(self.names)
        if len(set(self.names)) != k:
            raise ValueError("correlation matrix names must be unique")
        if len(self.entries) != k or any(len(row) != k for row in self.entries):
            raise ValueError("correlation matrix must be square over its names")
        return self

    def get(self, a: str, b: str) -> Optional[float]:
        return self.entries[self.names.index(a)][self.names.index(b)]

    def pairs(self) -> list[tuple[str, str, Optional[float]]]:
        """Upper-triangle pairs in name order."""
        return [
            (self.names[i], self.names[j], self.entries[i][j])
            for i in range(len(self.names))
            for j in range(i + 1, len(self.names))
        ]


class AttributeSummary(BaseModel):
    """Descriptive statistics of one attribute."""

    name: str
    n: int
    mean: float
    stddev: Optional[float] = None  # undefined for a single observation
    minimum: float
    maximum: float
