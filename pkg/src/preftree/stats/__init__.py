"""Stats domain module."""

from src.preftree.stats.core import AttributeSummary, CorrelationMatrix, ScoreVector
from src.preftree.stats.service import StatsService

__all__ = ["AttributeSummary", "CorrelationMatrix", "ScoreVector", "StatsService"]
