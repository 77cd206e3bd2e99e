"""Graph domain models."""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Edge(BaseModel):
    """Undirected weighted edge."""

    model_config = ConfigDict(frozen=True)

    u: str
    v: str
    w: float

    @property
    def pair(self) -> tuple[str, str]:
        """Endpoints in lexicographic order."""
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)


class WeightedGraph(BaseModel):
    """Simple undirected graph: no self-loops, no repeated pairs."""

    model_config = ConfigDict(frozen=True)

    nodes: list[str]
    edges: list[Edge] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_simple(self) -> "WeightedGraph":
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("graph nodes must be unique")
        known = set(self.nodes)
        seen: set[tuple[str, str]] = set()
        for e in self.edges:
            if e.u == e.v:
                raise ValueError(f"self-loop on '{e.u}'")
            if e.u not in known or e.v not in known:
                raise ValueError(f"edge {e.u}-{e.v} has an endpoint outside the node list")
            if e.pair in seen:
                raise ValueError(f"duplicate edge {e.pair[0]}-{e.pair[1]}")
            if not math.isfinite(e.w):
                raise ValueError(f"edge {e.u}-{e.v} has non-finite weight")
            seen.add(e.pair)
        return self

    @classmethod
    def from_edges(cls, edges: list[tuple[str, str, float]], nodes: list[str] | None = None) -> "WeightedGraph":
        """Graph from (u, v, w) triples; nodes default to first appearance order."""
        if nodes is None:
            nodes = []
            for u, v, _ in edges:
                for x in (u, v):
                    if x not in nodes:
                        nodes.append(x)
        return cls(nodes=list(nodes), edges=[Edge(u=u, v=v, w=w) for u, v, w in edges])

    def edge(self, a: str, b: str) -> Edge | None:
        pair = (a, b) if a <= b else (b, a)
        for e in self.edges:
            if e.pair == pair:
                return e
        return None


class SpanningForest(BaseModel):
    """Maximum spanning forest: one tree per connected component."""

    model_config = ConfigDict(frozen=True)

    nodes: list[str]
    edges: list[Edge] = Field(default_factory=list)  # selection (insertion) order
    components: list[list[str]] = Field(default_factory=list)
    trees: list[list[Edge]] = Field(default_factory=list)
    total_weight: float = 0.0

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1


class ForestReport(BaseModel):
    """Outcome of each spanning-forest check."""

    checks: dict[str, bool]
    violations: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())
