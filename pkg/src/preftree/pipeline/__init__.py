"""Pipeline domain module."""

from src.preftree.pipeline.core import (
    DiscriminantMode,
    EdgeSelection,
    GroupResult,
    PipelineConfig,
    PreferenceModel,
    RemovedEdge,
)
from src.preftree.pipeline.repository import ModelRepository
from src.preftree.pipeline.service import PipelineService

__all__ = [
    "DiscriminantMode",
    "EdgeSelection",
    "GroupResult",
    "ModelRepository",
    "PipelineConfig",
    "PipelineService",
    "PreferenceModel",
    "RemovedEdge",
]
