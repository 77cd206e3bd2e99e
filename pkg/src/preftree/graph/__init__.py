"""Graph domain module."""

from src.preftree.graph.core import Edge, ForestReport, SpanningForest, WeightedGraph
from src.preftree.graph.disjoint_set import DisjointSet
from src.preftree.graph.repository import DotCluster, GraphRepository
from src.preftree.graph.service import GraphService

__all__ = [
    "DisjointSet",
    "DotCluster",
    "Edge",
    "ForestReport",
    "GraphRepository",
    "GraphService",
    "SpanningForest",
    "WeightedGraph",
]
