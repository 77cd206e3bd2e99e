"""Pipeline domain models and schemas."""

import math
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from src.preftree.config import settings
from src.preftree.graph.core import Edge, SpanningForest, WeightedGraph
from src.preftree.stats.core import AttributeSummary
from src.preftree.survey.core import CompletenessReport


# ============== Enums ==============

class DiscriminantMode(str, Enum):
    """Where the group-ranking coefficients come from."""
    FIT = "fit-discriminant"
    COEFFICIENTS = "coefficients-provided"


# ============== Configuration ==============

class PipelineConfig(BaseModel):
    """Inputs and switches for one pipeline run."""

    data_path: Path
    schema_path: Path
    mode: DiscriminantMode
    coefficients_path: Optional[Path] = None
    labels_column: Optional[str] = None
    target_class: Optional[str] = None
    priors: Optional[dict[str, float]] = None
    bounds: tuple[float, float] = Field(default_factory=lambda: (settings.value_min, settings.value_max))
    ridge: bool = False

    # Outputs
    out_path: Optional[Path] = None
    dot_path: Optional[Path] = None
    report_path: Optional[Path] = None

    @model_validator(mode="after")
    def _check_mode(self) -> "PipelineConfig":
        if self.mode == DiscriminantMode.COEFFICIENTS:
            if self.coefficients_path is None:
                raise ValueError("coefficients-provided mode needs a coefficient file")
            if self.labels_column is not None:
                raise ValueError("a labels column selects fit-discriminant mode; drop it or the coefficient file")
            if self.priors is not None:
                raise ValueError("priors apply only to fit-discriminant mode")
        else:
            if self.labels_column is None:
                raise ValueError("fit-discriminant mode needs a labels column")
            if self.coefficients_path is not None:
                raise ValueError("a coefficient file selects coefficients-provided mode; drop it or the labels column")
        lo, hi = self.bounds
        if not lo < hi:
            raise ValueError(f"value bounds must satisfy lo < hi, got {lo:g},{hi:g}")
        return self


# ============== Model ==============

class RemovedEdge(BaseModel):
    """Composite pair dropped by feature selection (r <= 0 or undefined)."""

    u: str
    v: str
    r: Optional[float] = None


class EdgeSelection(BaseModel):
    """Positive-correlation graph plus the pairs it left out."""

    graph: WeightedGraph
    removed: list[RemovedEdge] = Field(default_factory=list)


class GroupResult(BaseModel):
    """Ranking coefficient, attribute order and spanning forest of one group."""

    coefficient: float
    attribute_order: list[str]
    edges: list[Edge]
    removed_edges: list[RemovedEdge] = Field(default_factory=list)
    component_count: int
    forest: SpanningForest = Field(exclude=True)


class PreferenceModel(BaseModel):
    """Ordered groups, ordered attributes and per-group forests with their total cost."""

    group_order: list[str]
    groups: dict[str, GroupResult]
    total_cost: float

    # Report-only context
    labels: dict[str, str] = Field(default_factory=dict, exclude=True)
    target_class: Optional[str] = Field(default=None, exclude=True)
    completeness: Optional[CompletenessReport] = Field(default=None, exclude=True)
    descriptives: list[AttributeSummary] = Field(default_factory=list, exclude=True)

    @model_validator(mode="after")
    def _check_consistency(self) -> "PreferenceModel":
        if sorted(self.group_order) != sorted(self.groups):
            raise ValueError("group order must be a permutation of the model's groups")
        forest_total = math.fsum(g.forest.total_weight for g in self.groups.values())
        if abs(forest_total - self.total_cost) > 1e-12:
            raise ValueError(f"total cost {self.total_cost} differs from forest sum {forest_total}")
        for name, group in self.groups.items():
            if sorted(group.attribute_order) != sorted(group.forest.nodes):
                raise ValueError(f"attribute order of '{name}' is not a permutation of its composites")
        return self

    @property
    def edge_count(self) -> int:
        return sum(len(g.edges) for g in self.groups.values())

    def label(self, name: str) -> str:
        return self.labels.get(name, name)

    def summary(self, decimals: int = 6) -> str:
        """One-line run summary."""
        return (
            f"groups={'>'.join(self.group_order)} edges={self.edge_count} "
            f"total_cost={self.total_cost:.{decimals}f}"
        )
