"""Graph resource - API routes for spanning forests."""

from typing import Optional

from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel, ValidationError

from src.preftree.graph.core import Edge, SpanningForest, WeightedGraph
from src.preftree.graph.service import GraphService

router = APIRouter(prefix="/graph", tags=["Graph"])


class ForestRequest(BaseModel):
    """Edge list; ``nodes`` adds isolated nodes and fixes node order."""
    nodes: Optional[list[str]] = None
    edges: list[Edge]


class ForestResponse(BaseModel):
    forest: SpanningForest
    component_count: int


@router.post("/mst", response_model=ForestResponse)
async def maximum_spanning_forest(data: ForestRequest):
    """Kruskal maximum spanning forest of the posted graph."""
    nodes = list(data.nodes or [])
    for e in data.edges:
        for x in (e.u, e.v):
            if x not in nodes:
                nodes.append(x)
    try:
        graph = WeightedGraph(nodes=nodes, edges=data.edges)
    except ValidationError as e:
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail={"message": "; ".join(err["msg"] for err in e.errors())},
        )
    forest = GraphService.kruskal_max_forest(graph)
    return ForestResponse(forest=forest, component_count=forest.component_count)
